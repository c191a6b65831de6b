//! Adiabatic elimination by Schur complement: `H_eff = H0 − B A⁻¹ B†`, where
//! `H0`, `B` and `A` are the P–P, P–Q and Q–Q blocks of the Hamiltonian.

mod closed_form;
mod resonance;

pub use closed_form::{closed_form_params, iswap_exact, ClosedForm};
pub use resonance::{
    canonical_model, canonical_states, resonance_conditions, solve_resonance, ResonanceOptions,
    ResonanceSolution,
};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hamiltonian::OperatorMatrix;
use crate::C64;

/// Default bound on the condition number of the eliminated block.
pub const DEFAULT_MAX_CONDITION: f64 = 1e12;

/// Asymmetry of `H_eff` above which a warning is logged.
pub const ASYMMETRY_WARNING: f64 = 1e-10;

/// Split of basis indices into kept (P) and eliminated (Q) states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    p: Vec<usize>,
    q: Vec<usize>,
}

impl Partition {
    /// Checks that `p` and `q` are disjoint and cover `0..dim`.
    pub fn new(p: Vec<usize>, q: Vec<usize>, dim: usize) -> Result<Self> {
        let mut seen = vec![false; dim];
        for &i in p.iter().chain(&q) {
            if i >= dim {
                return Err(Error::Structural(format!(
                    "partition index {i} out of range"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Structural(format!(
                    "index {i} appears twice in partition"
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Structural(
                "partition does not cover the basis".into(),
            ));
        }
        if p.is_empty() {
            return Err(Error::Structural("P subspace is empty".into()));
        }
        Ok(Self { p, q })
    }

    /// Keeps `p` in the given order; Q is the complement in increasing order.
    pub fn from_p(p: Vec<usize>, dim: usize) -> Result<Self> {
        let q = (0..dim).filter(|i| !p.contains(i)).collect();
        Self::new(p, q, dim)
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }
}

/// Reduced Hamiltonian on the P subspace.
#[derive(Clone, Debug)]
pub struct EffectiveModel {
    pub p_indices: Vec<usize>,
    pub h_eff: DMatrix<C64>,
    /// Largest `|H_ij − conj(H_ji)|` before symmetrisation.
    pub max_asymmetry: f64,
    /// Condition number of the eliminated block (1 when Q is empty).
    pub condition: f64,
}

impl EffectiveModel {
    pub fn dim(&self) -> usize {
        self.p_indices.len()
    }

    /// Effective coupling between kept states `i` and `j` (P-local indices).
    pub fn coupling(&self, i: usize, j: usize) -> C64 {
        self.h_eff[(i, j)]
    }

    /// Diagonal entries: bare energy plus level shift.
    pub fn shifts(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.h_eff[(i, i)].re).collect()
    }

    /// Diagonal relative to the first kept state.
    pub fn residual_detunings(&self) -> Vec<f64> {
        let s = self.shifts();
        s.iter().map(|x| x - s[0]).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.h_eff.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn schur_reduce(h: &OperatorMatrix, partition: &Partition) -> Result<EffectiveModel> {
    schur_reduce_with(h, partition, DEFAULT_MAX_CONDITION)
}

/// Schur reduction with an explicit condition-number bound on `A`.
pub fn schur_reduce_with(
    h: &OperatorMatrix,
    partition: &Partition,
    max_condition: f64,
) -> Result<EffectiveModel> {
    if partition.p.len() + partition.q.len() != h.dim() {
        return Err(Error::Structural(
            "partition does not match operator dimension".into(),
        ));
    }
    let h0 = h.block(&partition.p, &partition.p);
    if partition.q.is_empty() {
        return Ok(finish(partition.p.clone(), h0, 1.0));
    }
    let a = h.block(&partition.q, &partition.q);
    let b = h.block(&partition.p, &partition.q);

    let condition = hermitian_condition(&a);
    if condition.is_nan() || condition > max_condition {
        return Err(Error::IllConditioned {
            condition,
            bound: max_condition,
        });
    }
    let x = a.lu().solve(&b.adjoint()).ok_or(Error::IllConditioned {
        condition: f64::INFINITY,
        bound: max_condition,
    })?;
    Ok(finish(partition.p.clone(), h0 - b * x, condition))
}

fn finish(p_indices: Vec<usize>, raw: DMatrix<C64>, condition: f64) -> EffectiveModel {
    let max_asymmetry = raw
        .iter()
        .zip(raw.adjoint().iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if max_asymmetry > ASYMMETRY_WARNING {
        log::warn!("effective Hamiltonian asymmetry {max_asymmetry:.3e} before symmetrisation");
    }
    let h_eff = (&raw + raw.adjoint()).map(|z| z * 0.5);
    EffectiveModel {
        p_indices,
        h_eff,
        max_asymmetry,
        condition,
    }
}

/// `max|λ| / min|λ|` for a Hermitian matrix.
fn hermitian_condition(a: &DMatrix<C64>) -> f64 {
    let eig = SymmetricEigen::new(a.clone());
    let (lo, hi) = eig
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), l| {
            (lo.min(l.abs()), hi.max(l.abs()))
        });
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}
