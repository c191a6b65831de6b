//! Resonance conditions for the free detunings, plus an optional polish that
//! locates the exact avoided crossing in the full model.

use nalgebra::SymmetricEigen;

use super::closed_form::ratio;
use super::{schur_reduce_with, EffectiveModel, Partition, DEFAULT_MAX_CONDITION};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, OperatorMatrix, Preset};
use crate::hilbert::{enumerate_basis, BasisState};
use crate::params::{Detuning, Gate, GateParams};

/// Kept states of each gate's canonical reduction, seed first.
///
/// * iSWAP, Fredkin slow, x-rotation: the two swapped logical states
/// * Fredkin fast: `|101,a⟩`, the intermediate `|φ⟩`, `|110,a⟩`
/// * z-rotation: the `|1⟩` rail alone
pub fn canonical_states(gate: Gate) -> Vec<BasisState> {
    let s = |photons: &[u32], level: usize| BasisState::new(photons.to_vec(), level);
    match gate {
        Gate::Iswap => vec![s(&[1, 0, 1, 0], 0), s(&[0, 1, 0, 1], 0)],
        Gate::FredkinSlow => vec![s(&[1, 0, 1, 1, 0], 0), s(&[1, 1, 0, 0, 1], 0)],
        Gate::FredkinFast => vec![
            s(&[1, 0, 1, 1, 0], 0),
            s(&[0, 1, 0, 1, 0], 3),
            s(&[1, 1, 0, 0, 1], 0),
        ],
        Gate::Xrot => vec![s(&[1, 0], 0), s(&[0, 1], 0)],
        Gate::Zrot => vec![s(&[1], 0)],
    }
}

/// Full Hamiltonian of the canonical subspace and its Schur reduction onto
/// [`canonical_states`].
pub fn canonical_model(params: &GateParams) -> Result<(OperatorMatrix, EffectiveModel)> {
    canonical_model_with(params, DEFAULT_MAX_CONDITION)
}

fn canonical_model_with(
    params: &GateParams,
    max_condition: f64,
) -> Result<(OperatorMatrix, EffectiveModel)> {
    let preset = Preset::new(params)?;
    let states = canonical_states(params.gate);
    let basis = enumerate_basis(&preset.spec, &states[0])?;
    let p = states
        .iter()
        .map(|s| {
            basis.index_of(s).ok_or_else(|| {
                Error::Structural(format!("{} is not reachable", preset.spec.format_state(s)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let h = build_hamiltonian(&preset.spec, &basis)?;
    let partition = Partition::from_p(p, h.dim())?;
    let model = schur_reduce_with(&h, &partition, max_condition)?;
    Ok((h, model))
}

/// Closed-form values `(j, Δ_j)` of the free detunings. Every other detuning
/// must be fixed.
pub fn resonance_conditions(params: &GateParams) -> Result<Vec<(usize, f64)>> {
    let g = |n: &str| params.coupling(n);
    let d = |j: usize| params.delta(j);
    let sq = |x: f64| x * x;
    Ok(match params.gate {
        Gate::Iswap => vec![(
            4,
            ratio(sq(g("g_da")?), d(3)?, "iSWAP resonance")?
                - ratio(sq(g("g_ab")?), d(1)?, "iSWAP resonance")?,
        )],
        Gate::FredkinSlow => vec![(6, ratio(sq(g("g_fa")?), d(5)?, "Fredkin resonance")?)],
        Gate::FredkinFast => vec![
            (
                3,
                ratio(sq(g("g_cd")?), d(2)?, "Fredkin resonance")?
                    + ratio(sq(g("g_de")?), d(4)?, "Fredkin resonance")?
                    - ratio(sq(g("g_ab")?), d(1)?, "Fredkin resonance")?,
            ),
            (6, ratio(sq(g("g_fa")?), d(5)?, "Fredkin resonance")?),
        ],
        Gate::Xrot => vec![(3, -ratio(sq(g("g_ab")?), d(1)?, "x-rotation resonance")?)],
        Gate::Zrot => vec![],
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonanceOptions {
    /// Refine two-level resonances to the exact avoided crossing of the full
    /// model.
    pub polish: bool,
    pub max_condition: f64,
}

impl Default for ResonanceOptions {
    fn default() -> Self {
        Self {
            polish: false,
            max_condition: DEFAULT_MAX_CONDITION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResonanceSolution {
    /// Input parameters with every `auto` detuning filled in.
    pub params: GateParams,
    /// Residual detunings of the kept states after the verification
    /// reduction (the seed's entry, always 0, is dropped).
    pub residuals: Vec<f64>,
    pub polished: bool,
}

/// Fills in every `auto` detuning. Detunings the caller fixed are kept even
/// if they are free.
pub fn solve_resonance(
    params: &GateParams,
    options: ResonanceOptions,
) -> Result<ResonanceSolution> {
    params.validate()?;
    let free = params.gate.free_detunings();
    for (j, d) in params.detunings.iter().enumerate() {
        if *d == Detuning::Auto && !free.contains(&(j + 1)) {
            return Err(Error::Config(format!(
                "{}: delta{} cannot be auto",
                params.gate,
                j + 1
            )));
        }
    }
    let auto: Vec<usize> = free
        .iter()
        .copied()
        .filter(|&j| params.detunings[j - 1] == Detuning::Auto)
        .collect();

    // The conditions only read fixed detunings, so fill a copy first.
    let mut probe = params.clone();
    for &j in free {
        if probe.detunings[j - 1] == Detuning::Auto {
            probe.detunings[j - 1] = Detuning::Fixed(0.0);
        }
    }
    let mut solved = params.clone();
    for (j, value) in resonance_conditions(&probe)? {
        if auto.contains(&j) {
            solved.detunings[j - 1] = Detuning::Fixed(value);
        }
    }

    let mut polished = false;
    if options.polish && !auto.is_empty() {
        match params.gate {
            Gate::Iswap | Gate::FredkinSlow | Gate::Xrot => {
                let j = auto[0];
                let x = polish_two_level(&solved, j)?;
                solved.detunings[j - 1] = Detuning::Fixed(x);
                polished = true;
            }
            Gate::FredkinFast => {
                return Err(Error::Config(
                    "polish supports the two-level resonances only".into(),
                ))
            }
            Gate::Zrot => {}
        }
    }

    let (_, model) = canonical_model_with(&solved, options.max_condition)?;
    let residuals = model.residual_detunings()[1..].to_vec();
    Ok(ResonanceSolution {
        params: solved,
        residuals,
        polished,
    })
}

/// Bisects on the free detuning `j` until the lower of the two dressed states
/// carried by the seed and its partner is an equal mixture of both.
fn polish_two_level(params: &GateParams, j: usize) -> Result<f64> {
    let x0 = params.delta(j)?;
    let scale = super::closed_form_params(params)?.coupling().abs();
    if scale == 0.0 {
        return Err(Error::Degenerate("zero effective coupling".into()));
    }
    let imbalance = |x: f64| -> Result<f64> {
        let p = params.clone().set_detuning(j, Detuning::Fixed(x));
        let preset = Preset::new(&p)?;
        let states = canonical_states(p.gate);
        let basis = enumerate_basis(&preset.spec, &states[0])?;
        let partner = basis
            .index_of(&states[1])
            .ok_or_else(|| Error::Structural("partner state unreachable".into()))?;
        let h = build_hamiltonian(&preset.spec, &basis)?;
        let eig = SymmetricEigen::new(h.matrix().clone());
        let v = &eig.eigenvectors;
        let weight = |k: usize| v[(0, k)].norm_sqr() + v[(partner, k)].norm_sqr();
        let mut order: Vec<usize> = (0..h.dim()).collect();
        order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)));
        let (k1, k2) = (order[0], order[1]);
        let low = if eig.eigenvalues[k1] <= eig.eigenvalues[k2] {
            k1
        } else {
            k2
        };
        Ok(v[(0, low)].norm_sqr() - v[(partner, low)].norm_sqr())
    };

    let f0 = imbalance(x0)?;
    if f0 == 0.0 {
        return Ok(x0);
    }
    // Below resonance the partner is the lower dressed state (f < 0).
    let dir = if f0 < 0.0 { 1.0 } else { -1.0 };
    let mut step = scale;
    let mut near = x0;
    let mut far = x0 + dir * step;
    let mut found = false;
    for _ in 0..200 {
        if imbalance(far)?.signum() != f0.signum() {
            found = true;
            break;
        }
        near = far;
        step *= 2.0;
        far = x0 + dir * step;
    }
    if !found {
        return Err(Error::Degenerate(
            "no avoided crossing found while polishing".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (near + far);
        if mid == near || mid == far {
            break;
        }
        if imbalance(mid)?.signum() == f0.signum() {
            near = mid;
        } else {
            far = mid;
        }
    }
    Ok(0.5 * (near + far))
}
