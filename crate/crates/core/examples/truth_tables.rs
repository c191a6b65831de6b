//! Truth tables of the two-qubit and three-qubit gates, in population and
//! phase-strict mode.

use multiphoton::effective::{solve_resonance, ResonanceOptions};
use multiphoton::gates::{truth_table, PhaseMode, RunOptions};
use multiphoton::params::{Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    let cases = [
        (Gate::Iswap, 100.0, true),
        (Gate::FredkinSlow, 20.0, true),
        (Gate::FredkinFast, 20.0, false),
    ];
    for (gate, delta, polish) in cases {
        let p = GateParams::with_common_detuning(gate, 1.0, delta);
        let p = solve_resonance(
            &p,
            ResonanceOptions {
                polish,
                ..Default::default()
            },
        )?
        .params;
        for phase_mode in [PhaseMode::Population, PhaseMode::Strict] {
            let options = RunOptions {
                measure: true,
                phase_mode,
                ..Default::default()
            };
            let table = truth_table(&p, &options)?;
            println!(
                "{gate} at delta = {delta}, {phase_mode:?}, t = {:.1}",
                table.t_gate
            );
            for row in &table.rows {
                let (out, pop) = row.dominant_output().unwrap();
                println!(
                    "  {} -> {} (p = {:.4})  raw {:.4}  conditional {:.5}",
                    row.input,
                    out,
                    pop,
                    row.fidelity_raw,
                    row.fidelity_conditional.unwrap_or(0.0)
                );
            }
        }
    }
    Ok(())
}
