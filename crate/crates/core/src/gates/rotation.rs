use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::C64;

/// `R_x = cos(g_eff t) I − i sin(g_eff t) σ_x` on the (|0⟩, |1⟩) rails.
pub fn rx_operator(g_eff: f64, t: f64) -> Matrix2<C64> {
    let (s, c) = (g_eff * t).sin_cos();
    Matrix2::new(
        C64::from(c),
        C64::new(0.0, -s),
        C64::new(0.0, -s),
        C64::from(c),
    )
}

/// Phase of the `|1⟩` rail relative to the `|0⟩` rail after time `t`, from
/// the exact two-level problem `[[0, g], [g, Δ]]`. The `|0⟩` rail does not
/// evolve. The phase is unwrapped along the trajectory, so it is not limited
/// to one turn.
pub fn zrot_phase(g: f64, delta: f64, t: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::Validation(
            "z-rotation needs a nonzero detuning".into(),
        ));
    }
    if !(g.is_finite() && delta.is_finite() && t.is_finite()) {
        return Err(Error::Validation("z-rotation inputs must be finite".into()));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let amplitude = |t: f64| {
        let omega = g.hypot(delta / 2.0);
        let global = C64::from_polar(1.0, -delta * t / 2.0);
        let (s, c) = (omega * t).sin_cos();
        global * C64::new(c, delta / 2.0 * s / omega)
    };
    // Sample finely enough that the phase moves less than π per step.
    let rate = g.hypot(delta) * 2.0;
    let steps = ((rate * t.abs()) / 1.0).ceil().max(1.0) as usize;
    let mut phase = 0.0;
    let mut prev = amplitude(0.0);
    for k in 1..=steps {
        let a = amplitude(t * k as f64 / steps as f64);
        phase += (a / prev).arg();
        prev = a;
    }
    Ok(phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_coupling_no_phase() {
        assert_eq!(zrot_phase(0.0, 3.0, 50.0).unwrap(), 0.0);
    }

    #[test]
    fn resonant_is_rejected() {
        assert!(zrot_phase(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn rx_quarter_turn_is_balanced() {
        let r = rx_operator(0.5, PI / 2.0);
        assert!((r[(0, 0)].norm_sqr() - 0.5).abs() < 1e-15);
        assert!((r[(1, 0)].norm_sqr() - 0.5).abs() < 1e-15);
    }
}
