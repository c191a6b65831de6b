use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{set_named, RunConfig};
use crate::dynamics::{Propagator, StateVector};
use crate::effective::{closed_form_params, solve_resonance, ClosedForm, ResonanceOptions};
use crate::error::{Error, Result};
use crate::gates::{
    encode, interaction_time, run_gate, truth_table, GateRun, LogicalState, RunOptions,
};
use crate::hamiltonian::{build_hamiltonian, Preset};
use crate::hilbert::{enumerate_basis, BasisState};
use crate::params::{Gate, GateParams};

pub const FIG4_HEADER: &str = "t_g,pop_110a,pop_phi,pop_101a";
pub const FIG5_HEADER: &str = "delta_over_g,fidelity_raw,fidelity_conditional,t_int_g";

/// Round-trip decimal formatting (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn resolve(config: &RunConfig, params: &GateParams) -> Result<GateParams> {
    let opts = ResonanceOptions {
        polish: config.polish,
        ..Default::default()
    };
    Ok(solve_resonance(params, opts)?.params)
}

pub fn resolved_params(config: &RunConfig) -> Result<GateParams> {
    resolve(config, &config.base_params()?)
}

fn run_options(config: &RunConfig) -> RunOptions {
    RunOptions {
        measure: config.measure,
        phase_mode: config.phase_mode,
        ..Default::default()
    }
}

fn seconds(config: &RunConfig, t: f64) -> Option<f64> {
    config.g_hz.map(|g| t / (2.0 * std::f64::consts::PI * g))
}

fn effective_json(params: &GateParams) -> Value {
    match closed_form_params(params) {
        Ok(ClosedForm::FredkinFast {
            g1,
            g2,
            g_prime,
            delta1_eff,
            delta2_eff,
        }) => json!({
            "g1": g1, "g2": g2, "g_prime": g_prime,
            "delta1_eff": delta1_eff, "delta2_eff": delta2_eff,
        }),
        Ok(
            ClosedForm::Iswap { g_eff, delta_eff }
            | ClosedForm::FredkinSlow { g_eff, delta_eff }
            | ClosedForm::Xrot { g_eff, delta_eff },
        ) => json!({ "g_eff": g_eff, "delta_eff": delta_eff }),
        Ok(ClosedForm::Zrot { phase_rate }) => json!({ "phase_rate": phase_rate }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn params_json(p: &GateParams) -> Value {
    let detunings: serde_json::Map<String, Value> = p
        .detunings
        .iter()
        .enumerate()
        .map(|(j, d)| (format!("delta{}", j + 1), json!(d.value())))
        .collect();
    json!({ "gate": p.gate, "couplings": p.couplings, "detunings": detunings, "angle": p.angle })
}

/// Machine-readable record of one gate run.
pub fn run_record(config: &RunConfig, run: &GateRun) -> Value {
    let target: Vec<Value> = run
        .target
        .iter()
        .map(|(l, c)| json!({ "state": l.to_string(), "amplitude": [c.re, c.im] }))
        .collect();
    json!({
        "gate": run.gate,
        "params": params_json(&run.params),
        "closed_form": effective_json(&run.params),
        "input": run.input.to_string(),
        "target": target,
        "t_gate": run.t_gate,
        "t_gate_seconds": seconds(config, run.t_gate),
        "phase_mode": run.phase_mode,
        "fidelity_raw": run.fidelity_raw,
        "fidelity_conditional": run.fidelity_conditional,
        "measurement": run.measurement.as_ref().map(|m| json!({
            "succeeded": m.succeeded,
            "success_probability": m.success_probability,
        })),
        "populations": {
            "valid": run.populations.valid,
            "invalid": run.populations.invalid,
            "excited": run.populations.excited,
        },
        "dominant_output": run.dominant_output().map(|(l, p)| json!({ "state": l.to_string(), "population": p })),
    })
}

pub fn run_report(config: &RunConfig, run: &GateRun) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "gate        {}", run.gate);
    let _ = writeln!(s, "input       {}", run.input);
    for (l, c) in &run.target {
        let _ = writeln!(s, "target      {l}  ({:+.6}{:+.6}i)", c.re, c.im);
    }
    let _ = write!(s, "t_gate      {:.6} /g", run.t_gate);
    if let Some(t) = seconds(config, run.t_gate) {
        let _ = write!(s, "  ({t:.4e} s)");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "fidelity    {:.6}", run.fidelity_raw);
    if let Some(m) = &run.measurement {
        let _ = writeln!(s, "p(atom=a)   {:.6}", m.success_probability);
        match run.fidelity_conditional {
            Some(f) => {
                let _ = writeln!(s, "conditional {f:.6}");
            }
            None => {
                let _ = writeln!(s, "conditional aborted (atom not found in a)");
            }
        }
    }
    let p = run.populations;
    let _ = writeln!(
        s,
        "populations valid {:.6}  invalid {:.6}  excited {:.6}",
        p.valid, p.invalid, p.excited
    );
    s
}

pub fn cmd_run(config: &RunConfig) -> Result<GateRun> {
    let params = resolved_params(config)?;
    run_gate(&params, &config.logical_input()?, &run_options(config))
}

pub fn cmd_resonance(config: &RunConfig) -> Result<String> {
    let opts = ResonanceOptions {
        polish: config.polish,
        ..Default::default()
    };
    let sol = solve_resonance(&config.base_params()?, opts)?;
    let mut s = String::new();
    for (j, d) in sol.params.deltas()?.into_iter().enumerate() {
        let _ = writeln!(s, "delta{} {}", j + 1, num(d));
    }
    for (k, r) in sol.residuals.iter().enumerate() {
        let _ = writeln!(s, "residual{} {}", k + 1, num(*r));
    }
    Ok(s)
}

pub fn cmd_truth_table(config: &RunConfig) -> Result<String> {
    let params = resolved_params(config)?;
    let table = truth_table(&params, &run_options(config))?;
    let mut s =
        String::from("input,output,target,fidelity_raw,fidelity_conditional,success_probability\n");
    for r in &table.rows {
        let output = r
            .dominant_output()
            .map_or("invalid".into(), |(l, _)| l.to_string());
        let target: Vec<String> = r.target.iter().map(|(l, _)| l.to_string()).collect();
        let opt = |x: Option<f64>| x.map_or(String::new(), num);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.input,
            output,
            target.join("+"),
            num(r.fidelity_raw),
            opt(r.fidelity_conditional),
            opt(r.measurement.as_ref().map(|m| m.success_probability)),
        );
    }
    Ok(s)
}

fn require_fredkin(gate: Gate) -> Result<()> {
    if !gate.is_fredkin() {
        return Err(Error::Config(format!(
            "this command needs a Fredkin gate, not {gate}"
        )));
    }
    Ok(())
}

/// Populations of `|110,a⟩`, `|φ⟩` and `|101,a⟩` over the time grid. The
/// default grid spans two gate times.
pub fn cmd_fig4(config: &RunConfig) -> Result<String> {
    require_fredkin(config.gate)?;
    let params = resolved_params(config)?;
    let preset = Preset::new(&params)?;
    let gate = params.gate;
    let seed = encode(gate, &LogicalState::new(vec![1, 1, 0])?)?.state;
    let swapped = encode(gate, &LogicalState::new(vec![1, 0, 1])?)?.state;
    let phi = BasisState::new(vec![0, 1, 0, 1, 0], 3);
    let basis = enumerate_basis(&preset.spec, &seed)?;
    let index = |s: &BasisState| {
        basis.index_of(s).ok_or_else(|| {
            Error::Structural(format!("{} unreachable", preset.spec.format_state(s)))
        })
    };
    let (kp, ks) = (index(&phi)?, index(&swapped)?);
    let propagator = Propagator::new(&build_hamiltonian(&preset.spec, &basis)?)?;
    let psi0 = StateVector::basis_state(basis.clone(), 0)?;
    let times = match &config.time_grid {
        Some(tg) => tg.times()?,
        None => super::config::TimeGrid {
            t_max: 2.0 * interaction_time(&params)?,
            points: 201,
        }
        .times()?,
    };
    let rows = times
        .par_iter()
        .map(|&t| {
            let psi = propagator.apply(&psi0, t)?;
            let p = |k: usize| psi.amplitude(k).norm_sqr();
            Ok(format!(
                "{},{},{},{}\n",
                num(t),
                num(p(0)),
                num(p(kp)),
                num(p(ks))
            ))
        })
        .collect::<Result<Vec<String>>>()?;
    Ok(std::iter::once(format!("{FIG4_HEADER}\n"))
        .chain(rows)
        .collect())
}

/// One point of the fidelity sweep: gate-averaged raw and post-selected
/// fidelities and the gate time.
pub fn fig5_point(config: &RunConfig, params: &GateParams) -> Result<(f64, f64, f64)> {
    let p = resolve(config, params)?;
    let table = truth_table(
        &p,
        &RunOptions {
            measure: true,
            ..run_options(config)
        },
    )?;
    Ok((
        table.mean_raw(),
        table.mean_conditional().unwrap_or(0.0),
        table.t_gate,
    ))
}

/// Gate fidelity against the swept detuning(s); other free detunings are
/// re-solved at every point.
pub fn cmd_fig5(config: &RunConfig) -> Result<String> {
    require_fredkin(config.gate)?;
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("fig5 needs a sweep".into()))?;
    let base = config.base_params()?;
    let rows = sweep
        .values()?
        .par_iter()
        .map(|&x| {
            let mut p = base.clone();
            for name in sweep.parameter.names() {
                p = set_named(p, name, x)?;
            }
            let (raw, cond, t) = fig5_point(config, &p)?;
            Ok(format!(
                "{},{},{},{}\n",
                num(x),
                num(raw),
                num(cond),
                num(t)
            ))
        })
        .collect::<Result<Vec<String>>>()?;
    Ok(std::iter::once(format!("{FIG5_HEADER}\n"))
        .chain(rows)
        .collect())
}
