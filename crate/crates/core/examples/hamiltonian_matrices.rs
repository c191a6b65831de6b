//! Prints the interaction-picture Hamiltonian of each gate preset, on the
//! subspace reachable from the gate's swapped (or phased) input.

use multiphoton::effective::canonical_states;
use multiphoton::hamiltonian::{build_hamiltonian, Preset};
use multiphoton::hilbert::enumerate_basis;
use multiphoton::params::{Detuning, Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    for gate in Gate::ALL {
        let mut p = GateParams::with_common_detuning(gate, 1.0, 10.0);
        for &j in gate.free_detunings() {
            p = p.set_detuning(j, Detuning::Fixed(0.0));
        }
        let preset = Preset::new(&p)?;
        let seed = &canonical_states(gate)[0];
        let basis = enumerate_basis(&preset.spec, seed)?;
        let h = build_hamiltonian(&preset.spec, &basis)?;

        println!(
            "{gate}: seed {}, dimension {}",
            preset.spec.format_state(seed),
            h.dim()
        );
        for (i, state) in basis.iter().enumerate() {
            let row: Vec<String> = (0..h.dim())
                .map(|j| format!("{:6.2}", h.entry(i, j).re))
                .collect();
            println!(
                "  {:<16} {}",
                preset.spec.format_state(state),
                row.join(" ")
            );
        }
        println!();
    }
    Ok(())
}
