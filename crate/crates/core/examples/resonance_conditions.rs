//! Solves the free detunings of every gate, with and without the polish step.

use multiphoton::effective::{resonance_conditions, solve_resonance, ResonanceOptions};
use multiphoton::params::{Detuning, Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    for gate in Gate::ALL {
        let p = GateParams::with_common_detuning(gate, 1.0, 20.0);
        let mut probe = p.clone();
        for &j in gate.free_detunings() {
            probe = probe.set_detuning(j, Detuning::Fixed(0.0));
        }
        println!(
            "{gate}: closed-form conditions {:?}",
            resonance_conditions(&probe)?
        );

        for polish in [false, true] {
            let options = ResonanceOptions {
                polish,
                ..Default::default()
            };
            match solve_resonance(&p, options) {
                Ok(s) => {
                    let free: Vec<String> = gate
                        .free_detunings()
                        .iter()
                        .map(|&j| format!("delta{j} = {:.6e}", s.params.delta(j).unwrap()))
                        .collect();
                    println!(
                        "  polish={polish}: {} residuals {:?}",
                        free.join(", "),
                        s.residuals
                    );
                }
                Err(e) => println!("  polish={polish}: {e}"),
            }
        }
    }
    Ok(())
}
