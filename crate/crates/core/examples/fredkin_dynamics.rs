//! Population transfer |110,a> -> |phi> -> |101,a> in the full Fredkin model,
//! side by side with the analytic three-state solution.

use multiphoton::dynamics::{analytic_three_level, Propagator, StateVector};
use multiphoton::effective::{closed_form_params, solve_resonance, ClosedForm};
use multiphoton::gates::encode;
use multiphoton::hamiltonian::{build_hamiltonian, Preset};
use multiphoton::hilbert::{enumerate_basis, BasisState};
use multiphoton::params::GateParams;

fn main() -> multiphoton::Result<()> {
    let p = solve_resonance(&GateParams::fredkin_reference(), Default::default())?.params;
    let ClosedForm::FredkinFast {
        g1, g2, g_prime, ..
    } = closed_form_params(&p)?
    else {
        unreachable!()
    };
    let preset = Preset::new(&p)?;
    let seed = encode(p.gate, &"110".parse()?)?.state;
    let target = encode(p.gate, &"101".parse()?)?.state;
    let basis = enumerate_basis(&preset.spec, &seed)?;
    let prop = Propagator::new(&build_hamiltonian(&preset.spec, &basis)?)?;
    let psi0 = StateVector::basis_state(basis.clone(), 0)?;
    let phi = basis
        .index_of(&BasisState::new(vec![0, 1, 0, 1, 0], 3))
        .unwrap();
    let out = basis.index_of(&target).unwrap();

    println!(
        "g1 = {g1:.4e}, g2 = {g2:.4e}, pi/g' = {:.2}",
        std::f64::consts::PI / g_prime
    );
    println!(
        "{:>8} {:>8} {:>8} {:>8} | {:>8} {:>8} {:>8}",
        "g't", "110", "phi", "101", "110", "phi", "101"
    );
    for step in 0..=12 {
        let t = step as f64 / 12.0 * std::f64::consts::PI / g_prime;
        let psi = prop.apply(&psi0, t)?;
        let a = analytic_three_level(g1, g2, 0.0, t)?;
        println!(
            "{:>8.3} {:>8.4} {:>8.4} {:>8.4} | {:>8.4} {:>8.4} {:>8.4}",
            g_prime * t,
            psi.amplitude(0).norm_sqr(),
            psi.amplitude(phi).norm_sqr(),
            psi.amplitude(out).norm_sqr(),
            a[0].norm_sqr(),
            a[1].norm_sqr(),
            a[2].norm_sqr()
        );
    }
    Ok(())
}
