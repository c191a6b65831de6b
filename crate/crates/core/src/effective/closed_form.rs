//! The approximate effective parameters as printed for each gate. These are
//! cross-checks for the numeric reduction and starting points for resonance
//! solving.

use crate::error::{Error, Result};
use crate::params::{Gate, GateParams};

/// Closed-form effective parameters. Effective detunings need the free
/// detunings and are `None` while those are still `auto`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Iswap {
        g_eff: f64,
        delta_eff: Option<f64>,
    },
    FredkinSlow {
        g_eff: f64,
        delta_eff: Option<f64>,
    },
    FredkinFast {
        g1: f64,
        g2: f64,
        g_prime: f64,
        delta1_eff: Option<f64>,
        delta2_eff: Option<f64>,
    },
    Xrot {
        g_eff: f64,
        delta_eff: Option<f64>,
    },
    /// Dispersive phase rate `g²/Δ` of the `|1⟩` rail.
    Zrot {
        phase_rate: f64,
    },
}

impl ClosedForm {
    /// The coupling that sets the gate time (`g′` for the three-level gate).
    pub fn coupling(&self) -> f64 {
        match *self {
            ClosedForm::Iswap { g_eff, .. }
            | ClosedForm::FredkinSlow { g_eff, .. }
            | ClosedForm::Xrot { g_eff, .. } => g_eff,
            ClosedForm::FredkinFast { g_prime, .. } => g_prime,
            ClosedForm::Zrot { phase_rate } => phase_rate,
        }
    }
}

pub(crate) fn ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Degenerate(format!("zero denominator in {what}")));
    }
    Ok(num / den)
}

fn optional(params: &GateParams, j: usize) -> Option<f64> {
    params.detunings.get(j - 1).and_then(|d| d.value())
}

pub fn closed_form_params(params: &GateParams) -> Result<ClosedForm> {
    params.validate()?;
    let g = |n: &str| params.coupling(n);
    let d = |j: usize| params.delta(j);
    Ok(match params.gate {
        Gate::Iswap => {
            let (d1, d2, d3) = (d(1)?, d(2)?, d(3)?);
            let (gab, gda) = (g("g_ab")?, g("g_da")?);
            let g_eff = ratio(
                -gab * g("g_bc")? * g("g_cd")? * gda,
                d1 * d2 * d3,
                "iSWAP g_eff",
            )?;
            let delta_eff = optional(params, 4).map(|d4| d4 + gab * gab / d1 - gda * gda / d3);
            ClosedForm::Iswap { g_eff, delta_eff }
        }
        Gate::FredkinSlow => {
            let d5 = d(5)?;
            let num = ["g_ab", "g_bc", "g_cd", "g_de", "g_ef", "g_fa"]
                .iter()
                .map(|n| g(n))
                .product::<Result<f64>>()?;
            let den = (1..=5).map(d).product::<Result<f64>>()?;
            let g_eff = ratio(-num, den, "Fredkin g_eff")?;
            let gfa = g("g_fa")?;
            let delta_eff = optional(params, 6).map(|d6| d6 - gfa * gfa / d5);
            ClosedForm::FredkinSlow { g_eff, delta_eff }
        }
        Gate::FredkinFast => {
            let (d1, d2, d4, d5) = (d(1)?, d(2)?, d(4)?, d(5)?);
            let (gab, gcd, gde, gfa) = (g("g_ab")?, g("g_cd")?, g("g_de")?, g("g_fa")?);
            let g1 = ratio(gab * g("g_bc")? * gcd, d1 * d2, "Fredkin g1")?;
            let g2 = ratio(gde * g("g_ef")? * gfa, d4 * d5, "Fredkin g2")?;
            let delta1_eff =
                optional(params, 3).map(|d3| d3 + gab * gab / d1 - gcd * gcd / d2 - gde * gde / d4);
            let delta2_eff = optional(params, 6).map(|d6| d6 - gfa * gfa / d5);
            ClosedForm::FredkinFast {
                g1,
                g2,
                g_prime: g1.hypot(g2),
                delta1_eff,
                delta2_eff,
            }
        }
        Gate::Xrot => {
            let (d1, d2) = (d(1)?, d(2)?);
            let gab = g("g_ab")?;
            let g_eff = ratio(
                gab * g("g_bc")? * g("omega")?,
                2.0 * d1 * d2,
                "x-rotation g_eff",
            )?;
            let delta_eff = optional(params, 3).map(|d3| d3 + gab * gab / d1);
            ClosedForm::Xrot { g_eff, delta_eff }
        }
        Gate::Zrot => {
            let g = g("g")?;
            ClosedForm::Zrot {
                phase_rate: ratio(g * g, d(1)?, "z-rotation phase rate")?,
            }
        }
    })
}

/// Unapproximated iSWAP `(g_eff, Δ_eff)` from eliminating `b`, `c`, `d`
/// exactly.
pub fn iswap_exact(params: &GateParams) -> Result<(f64, f64)> {
    if params.gate != Gate::Iswap {
        return Err(Error::Config(format!(
            "iswap_exact called for {}",
            params.gate
        )));
    }
    params.validate()?;
    let g = |n: &str| params.coupling(n);
    let (gab, gbc, gcd, gda) = (g("g_ab")?, g("g_bc")?, g("g_cd")?, g("g_da")?);
    let d = params.deltas()?;
    let (d1, d2, d3, d4) = (d[0], d[1], d[2], d[3]);
    let den = d1 * d2 * d3 - d3 * gbc * gbc - d1 * gcd * gcd;
    let g_eff = ratio(-gab * gbc * gcd * gda, den, "exact iSWAP g_eff")?;
    let shift = ratio(
        gab * gab * (d2 * d3 - gcd * gcd) - gda * gda * (d1 * d2 - gbc * gbc),
        den,
        "exact iSWAP Δ_eff",
    )?;
    Ok((g_eff, d4 + shift))
}
