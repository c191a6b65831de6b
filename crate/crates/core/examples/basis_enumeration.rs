//! Builds a small lambda system by hand and lists the states it can reach.

use multiphoton::hamiltonian::SystemSpec;
use multiphoton::hilbert::{enumerate_basis, total_excitation, transitions, BasisState};

fn main() -> multiphoton::Result<()> {
    let spec = SystemSpec::builder()
        .levels(["a", "b", "c"])
        .mode("1", 2)
        .mode("2", 2)
        .cavity_coupling("b", "a", 0, 1.0)
        .cavity_coupling("b", "c", 1, 0.8)
        .photon_energy(0, -20.0)
        .build()?;

    let seed = BasisState::new(vec![1, 0], 0);
    let basis = enumerate_basis(&spec, &seed)?;
    println!(
        "{} states reachable from {}",
        basis.len(),
        spec.format_state(&seed)
    );
    for state in basis.iter() {
        println!(
            "  {:<12} excitation {} energy {:>6.2}",
            spec.format_state(state),
            total_excitation(&spec, state),
            spec.energy(state) - spec.energy(&seed)
        );
    }

    println!("transitions out of {}:", spec.format_state(&seed));
    for t in transitions(&spec, &seed) {
        println!("  -> {} ({:.3})", spec.format_state(&t.target), t.element);
    }
    Ok(())
}
