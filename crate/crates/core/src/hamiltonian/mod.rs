//! Interaction-picture Hamiltonians over a reachable basis.

mod detuning;
mod preset;
mod system;

pub use detuning::{detuning_chain, ChainDirection, DetuningChain};
pub use preset::{fredkin_eta, preset_spec, Preset, PRESET_CUTOFF};
pub use system::{Coupling, Diagonal, Drive, LevelLabel, Mode, SystemSpec, SystemSpecBuilder};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{transitions, Basis};
use crate::C64;

/// Absolute tolerance (scaled by the largest entry) for Hermiticity checks.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Dense complex operator on a basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    basis: Basis,
    matrix: DMatrix<C64>,
}

impl OperatorMatrix {
    /// Wraps a matrix, checking its shape and that it is Hermitian.
    pub fn new(basis: Basis, matrix: DMatrix<C64>) -> Result<Self> {
        let op = Self::new_unchecked(basis, matrix)?;
        let asym = op.max_asymmetry();
        if asym > HERMITIAN_TOLERANCE * op.scale() {
            return Err(Error::NonHermitian { asymmetry: asym });
        }
        if op
            .matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Validation("operator has non-finite entries".into()));
        }
        Ok(op)
    }

    /// Wraps a matrix with only a shape check.
    pub fn new_unchecked(basis: Basis, matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != basis.len() || matrix.ncols() != basis.len() {
            return Err(Error::Structural(format!(
                "matrix is {}x{} but basis has {} states",
                matrix.nrows(),
                matrix.ncols(),
                basis.len()
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    /// `max |H_ij − conj(H_ji)|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn scale(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    /// Submatrix on the given row and column index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.matrix[(rows[i], cols[j])]
        })
    }

    /// Max-norm of the commutator with a diagonal operator.
    pub fn commutator_with_diagonal(&self, diagonal: &[f64]) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let c = self.matrix[(i, j)] * (diagonal[j] - diagonal[i]);
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

/// Builds `H` over `basis`, with the diagonal re-zeroed on the first (seed)
/// state.
pub fn build_hamiltonian(spec: &SystemSpec, basis: &Basis) -> Result<OperatorMatrix> {
    if basis.is_empty() {
        return Err(Error::Structural("empty basis".into()));
    }
    let n = basis.len();
    let reference = spec.energy(basis.state(0));
    let mut matrix = DMatrix::<C64>::zeros(n, n);
    for (col, state) in basis.iter().enumerate() {
        spec.check_state(state)?;
        matrix[(col, col)] = C64::new(spec.energy(state) - reference, 0.0);
        for t in transitions(spec, state) {
            let row = basis.index_of(&t.target).ok_or_else(|| {
                Error::Structural(format!(
                    "coupling {} leads out of the basis to {}",
                    t.coupling,
                    spec.format_state(&t.target)
                ))
            })?;
            matrix[(row, col)] += t.element;
        }
    }
    OperatorMatrix::new(basis.clone(), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{enumerate_basis, BasisState};

    #[test]
    fn zero_couplings_give_the_diagonal() {
        let spec = SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", 2)
            .cavity_coupling("b", "a", 0, 0.0)
            .photon_energy(0, -3.0)
            .level_energy("b", 0.25)
            .build()
            .unwrap();
        let basis = enumerate_basis(&spec, &BasisState::new(vec![2], 0)).unwrap();
        let h = build_hamiltonian(&spec, &basis).unwrap();
        assert_eq!(h.dim(), 2);
        for i in 0..2 {
            for j in 0..2 {
                if i != j {
                    assert_eq!(h.entry(i, j), C64::new(0.0, 0.0));
                }
            }
        }
        // |2,a> = -6 is the reference, |1,b> = -3 + 0.25
        assert_eq!(h.entry(0, 0).re, 0.0);
        assert_eq!(h.entry(1, 1).re, 3.25);
    }

    #[test]
    fn phases_make_the_matrix_complex_but_hermitian() {
        let spec = SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", 1)
            .coupling_with_phase("b", "a", Drive::Cavity(0), 0.7, 0.3)
            .build()
            .unwrap();
        let basis = enumerate_basis(&spec, &BasisState::new(vec![1], 0)).unwrap();
        let h = build_hamiltonian(&spec, &basis).unwrap();
        assert!(h.entry(1, 0).im.abs() > 0.1);
        assert!(h.max_asymmetry() < 1e-15);
    }

    #[test]
    fn foreign_basis_is_a_structural_error() {
        let spec = SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", 1)
            .cavity_coupling("b", "a", 0, 1.0)
            .build()
            .unwrap();
        let partial = Basis::from_states(vec![BasisState::new(vec![1], 0)]).unwrap();
        assert!(matches!(
            build_hamiltonian(&spec, &partial),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn non_hermitian_matrix_is_rejected() {
        let basis = Basis::from_states(vec![
            BasisState::new(vec![0], 0),
            BasisState::new(vec![0], 1),
        ])
        .unwrap();
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(2.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!(matches!(
            OperatorMatrix::new(basis, m),
            Err(Error::NonHermitian { .. })
        ));
    }
}
