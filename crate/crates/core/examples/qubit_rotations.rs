//! Single-qubit rotations: the Raman-driven x-rotation and the dispersive
//! z-rotation.

use std::f64::consts::PI;

use multiphoton::effective::{canonical_model, solve_resonance};
use multiphoton::gates::{run_gate, zrot_phase, RunOptions};
use multiphoton::params::{Gate, GateParams};

fn main() -> multiphoton::Result<()> {
    let p = solve_resonance(
        &GateParams::with_common_detuning(Gate::Xrot, 1.0, 50.0),
        Default::default(),
    )?
    .params;
    let (_, model) = canonical_model(&p)?;
    println!("x-rotation: g_eff = {:.6e}", model.coupling(0, 1).re);
    for theta in [PI / 4.0, PI / 2.0, PI, 2.0 * PI] {
        let run = run_gate(
            &p.clone().set_angle(theta),
            &"0".parse()?,
            &RunOptions::default(),
        )?;
        let pops = run.final_state.populations();
        println!(
            "  theta = {theta:.4}: t = {:8.1}, P(|0>) = {:.4}, fidelity {:.4}",
            run.t_gate, pops[0], run.fidelity_raw
        );
    }

    println!("z-rotation phase against g^2 t / delta:");
    for (g, delta, t) in [(1.0, 10.0, 10.0), (1.0, 20.0, 100.0), (1.0, 100.0, 100.0)] {
        let phi = zrot_phase(g, delta, t)?;
        println!(
            "  g = {g}, delta = {delta}, t = {t}: {phi:.6} vs {:.6}",
            g * g * t / delta
        );
    }
    Ok(())
}
