use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::C64;

/// Evolution under `H = [[0, g], [g, Δ]]` on (seed, partner), with the
/// transferred amplitude carrying the frame phase `e^{iηt}`.
///
/// Column `j` is the image of input state `j`. The reverse transfer carries
/// `e^{−iηt}` so the map stays unitary.
pub fn analytic_two_level(g_eff: f64, delta_eff: f64, eta: f64, t: f64) -> Matrix2<C64> {
    let omega = g_eff.hypot(delta_eff / 2.0);
    let (cos, sinc) = if omega == 0.0 {
        (1.0, t)
    } else {
        ((omega * t).cos(), (omega * t).sin() / omega)
    };
    let i = C64::i();
    let global = C64::from_polar(1.0, -delta_eff * t / 2.0);
    let m = Matrix2::new(-delta_eff / 2.0, g_eff, g_eff, delta_eff / 2.0).map(C64::from);
    let mut u = (Matrix2::identity() * C64::from(cos) - m * (i * sinc)) * global;
    u[(1, 0)] *= C64::from_polar(1.0, eta * t);
    u[(0, 1)] *= C64::from_polar(1.0, -eta * t);
    u
}

/// Amplitudes on (`|110,a⟩`, `|φ⟩`, `|101,a⟩`) starting from `|110,a⟩`:
///
/// `[ḡ2² + ḡ1² cos g′t,  i ḡ1 sin g′t,  ḡ1 ḡ2 (cos g′t − 1) e^{iηt}]`
///
/// with `g′ = √(g1² + g2²)` and `ḡ = g/g′`.
pub fn analytic_three_level(g1: f64, g2: f64, eta: f64, t: f64) -> Result<[C64; 3]> {
    let gp = g1.hypot(g2);
    if gp == 0.0 {
        return Err(Error::Degenerate(
            "both three-level couplings are zero".into(),
        ));
    }
    let (b1, b2) = (g1 / gp, g2 / gp);
    let (s, c) = (gp * t).sin_cos();
    Ok([
        C64::from(b2 * b2 + b1 * b1 * c),
        C64::new(0.0, b1 * s),
        C64::from_polar(b1 * b2 * (c - 1.0), eta * t),
    ])
}
