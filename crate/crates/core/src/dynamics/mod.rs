//! Exact propagation under time-independent Hamiltonians, the analytic
//! few-level solutions, overlaps and post-selection on the atomic level.

mod analytic;

pub use analytic::{analytic_three_level, analytic_two_level};

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hamiltonian::{OperatorMatrix, HERMITIAN_TOLERANCE};
use crate::hilbert::Basis;
use crate::C64;

/// Tolerance on the norm of a state built with [`StateVector::new`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Post-selection probability below which a measurement counts as failed.
pub const DEFAULT_PROJECTION_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// A normalised state.
    pub fn new(basis: Basis, amplitudes: DVector<C64>) -> Result<Self> {
        let s = Self::unnormalized(basis, amplitudes)?;
        if (s.norm() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Validation(format!(
                "state norm {} is not 1",
                s.norm()
            )));
        }
        Ok(s)
    }

    /// Any vector of the right length, e.g. the remains of a failed
    /// projection.
    pub fn unnormalized(basis: Basis, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::Structural(format!(
                "{} amplitudes for a basis of {} states",
                amplitudes.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, amplitudes })
    }

    /// The `index`-th basis state.
    pub fn basis_state(basis: Basis, index: usize) -> Result<Self> {
        if index >= basis.len() {
            return Err(Error::Structural(format!(
                "basis index {index} out of range"
            )));
        }
        let mut amplitudes = DVector::zeros(basis.len());
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { basis, amplitudes })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        same_basis(&self.basis, &other.basis)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `Σ_k |ψ_k|² values[k]` for an operator diagonal in the basis.
    pub fn expectation_diagonal(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.basis.len() {
            return Err(Error::Structural(
                "diagonal length does not match basis".into(),
            ));
        }
        Ok(self
            .populations()
            .iter()
            .zip(values)
            .map(|(p, v)| p * v)
            .sum())
    }
}

fn same_basis(a: &Basis, b: &Basis) -> Result<()> {
    if a != b {
        return Err(Error::Structural("states live in different bases".into()));
    }
    Ok(())
}

/// Spectral decomposition of a Hamiltonian, reusable for any time.
#[derive(Clone, Debug)]
pub struct Propagator {
    basis: Basis,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<C64>,
}

impl Propagator {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        let asymmetry = h.max_asymmetry();
        let scale = h.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
        if asymmetry > HERMITIAN_TOLERANCE * scale {
            return Err(Error::NonHermitian { asymmetry });
        }
        let eig = SymmetricEigen::new(h.matrix().clone());
        Ok(Self {
            basis: h.basis().clone(),
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Columns are the eigenvectors, in the order of [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// `exp(−i H t)`.
    pub fn unitary(&self, t: f64) -> DMatrix<C64> {
        let v = &self.eigenvectors;
        let phases = self.eigenvalues.map(|l| C64::from_polar(1.0, -l * t));
        let mut vd = v.clone();
        for (j, mut col) in vd.column_iter_mut().enumerate() {
            col *= phases[j];
        }
        vd * v.adjoint()
    }

    pub fn apply(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        same_basis(&self.basis, &psi.basis)?;
        let v = &self.eigenvectors;
        let mut c = v.adjoint() * &psi.amplitudes;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck *= C64::from_polar(1.0, -self.eigenvalues[k] * t);
        }
        Ok(StateVector {
            basis: psi.basis.clone(),
            amplitudes: v * c,
        })
    }
}

/// `ψ(t) = exp(−i h t) ψ0`.
pub fn evolve(h: &OperatorMatrix, psi0: &StateVector, t: f64) -> Result<StateVector> {
    Propagator::new(h)?.apply(psi0, t)
}

/// Fixed-step fourth-order Runge–Kutta integration of the Schrödinger
/// equation. Slow and approximate; kept to cross-check [`evolve`].
pub fn evolve_rk4(
    h: &OperatorMatrix,
    psi0: &StateVector,
    t: f64,
    steps: usize,
) -> Result<StateVector> {
    same_basis(h.basis(), &psi0.basis)?;
    if steps == 0 {
        return Err(Error::Validation("rk4 needs at least one step".into()));
    }
    let minus_i_h = h.matrix().map(|z| z * C64::new(0.0, -1.0));
    let dt = t / steps as f64;
    let mut y = psi0.amplitudes.clone();
    for _ in 0..steps {
        let k1 = &minus_i_h * &y;
        let k2 = &minus_i_h * (&y + &k1 * C64::from(dt / 2.0));
        let k3 = &minus_i_h * (&y + &k2 * C64::from(dt / 2.0));
        let k4 = &minus_i_h * (&y + &k3 * C64::from(dt));
        y += (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(dt / 6.0);
    }
    StateVector::unnormalized(psi0.basis.clone(), y)
}

/// `|⟨target|ψ⟩|²`.
pub fn fidelity(psi: &StateVector, target: &StateVector) -> Result<f64> {
    Ok(target.inner(psi)?.norm_sqr().clamp(0.0, 1.0))
}

/// Result of post-selecting the atom on one level.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    /// Renormalised on success; the raw projection on failure.
    pub projected: StateVector,
    pub success_probability: f64,
    pub target_level: usize,
    pub succeeded: bool,
}

/// Projects onto the states with the atom in `level` and renormalises.
/// Probabilities below `floor` give a failed outcome: the operation has to be
/// aborted.
pub fn project_atom(psi: &StateVector, level: usize, floor: f64) -> Result<MeasurementOutcome> {
    if !psi.basis.iter().any(|s| s.level == level) {
        return Err(Error::Validation(format!(
            "no basis state has the atom in level {level}"
        )));
    }
    let mut amplitudes = psi.amplitudes.clone();
    for (k, s) in psi.basis.iter().enumerate() {
        if s.level != level {
            amplitudes[k] = C64::new(0.0, 0.0);
        }
    }
    let p = amplitudes.norm_squared();
    let succeeded = p >= floor && p > 0.0;
    if succeeded {
        amplitudes /= C64::from(p.sqrt());
    }
    Ok(MeasurementOutcome {
        projected: StateVector {
            basis: psi.basis.clone(),
            amplitudes,
        },
        success_probability: p.min(1.0),
        target_level: level,
        succeeded,
    })
}
