//! Command-line front end: JSON configs in, reports and CSV out.

mod commands;
mod config;

pub use commands::{
    cmd_fig4, cmd_fig5, cmd_resonance, cmd_run, cmd_truth_table, fig5_point, num, resolved_params,
    run_record, run_report, FIG4_HEADER, FIG5_HEADER,
};
pub use config::{
    AutoToken, DetuningValue, RunConfig, Scale, SweepConfig, SweepParameter, TimeGrid,
};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gates::PhaseMode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_ABORTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "multiphoton",
    version,
    about = "Multiphoton cavity gates: runs, truth tables and figure data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file (defaults to the config's `output`, then stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Post-select the atom in level a.
    #[arg(long, global = true)]
    pub measure: bool,

    #[arg(long, global = true, value_enum)]
    pub phase_mode: Option<PhaseArg>,

    /// Worker threads for sweeps and truth tables.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Run one gate on one logical input and write a JSON record.
    Run,
    /// Three-state populations of the Fredkin gate over time (CSV).
    Fig4,
    /// Fredkin gate fidelity against detuning (CSV).
    Fig5,
    /// Every logical input of the gate (CSV).
    TruthTable,
    /// Print the resonance-solved detunings.
    Resonance,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PhaseArg {
    Population,
    Strict,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Sim(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("measurement aborted: atom not found in level a")]
    Aborted,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Sim(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Sim(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
            CliError::Aborted => EXIT_ABORTED,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Loads the config and applies flag overrides.
pub fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut config = RunConfig::from_json(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    config.measure |= cli.measure;
    if let Some(m) = cli.phase_mode {
        config.phase_mode = match m {
            PhaseArg::Population => PhaseMode::Population,
            PhaseArg::Strict => PhaseMode::Strict,
        };
    }
    if let Some(out) = &cli.out {
        config.output = Some(out.clone());
    }
    Ok(config)
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => write_stdout(text),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn write_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let config = load_config(cli)?;
    if cli.dump_config {
        return write_stdout(&(config.to_json() + "\n"));
    }
    let work = || -> Result<(), CliError> {
        match cli.command {
            Command::Run => {
                let run = cmd_run(&config)?;
                eprint!("{}", run_report(&config, &run));
                let record = serde_json::to_string_pretty(&run_record(&config, &run))
                    .expect("record serialises");
                emit(&config, &(record + "\n"))?;
                if run.measurement.as_ref().is_some_and(|m| !m.succeeded) {
                    return Err(CliError::Aborted);
                }
                Ok(())
            }
            Command::Fig4 => emit(&config, &cmd_fig4(&config)?),
            Command::Fig5 => emit(&config, &cmd_fig5(&config)?),
            Command::TruthTable => emit(&config, &cmd_truth_table(&config)?),
            Command::Resonance => emit(&config, &cmd_resonance(&config)?),
        }
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("--threads: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
