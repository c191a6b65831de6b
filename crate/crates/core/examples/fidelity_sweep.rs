//! Gate fidelity of the fast Fredkin gate against the common detuning, with
//! and without post-selection on the atom.

use multiphoton::effective::solve_resonance;
use multiphoton::gates::{truth_table, RunOptions};
use multiphoton::params::{Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    let options = RunOptions {
        measure: true,
        ..Default::default()
    };
    println!(
        "{:>6} {:>10} {:>12} {:>10}",
        "delta", "raw", "conditional", "t (1/g)"
    );
    for delta in [5.0, 7.5, 10.0, 15.0, 20.0, 30.0, 40.0] {
        let p = GateParams::with_common_detuning(Gate::FredkinFast, 1.0, delta);
        let p = solve_resonance(&p, Default::default())?.params;
        let table = truth_table(&p, &options)?;
        println!(
            "{delta:>6} {:>10.5} {:>12.6} {:>10.1}",
            table.mean_raw(),
            table.mean_conditional().unwrap_or(0.0),
            table.t_gate
        );
    }
    Ok(())
}
