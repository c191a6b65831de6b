#![allow(dead_code)]

use multiphoton::effective::{solve_resonance, ResonanceOptions};
use multiphoton::hamiltonian::OperatorMatrix;
use multiphoton::hilbert::{Basis, BasisState};
use multiphoton::params::{Gate, GateParams};
use multiphoton::C64;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A basis of `n` unrelated one-mode states, for operator-level tests.
pub fn plain_basis(n: usize) -> Basis {
    Basis::from_states((0..n).map(|i| BasisState::new(vec![i as u32], 0)).collect()).unwrap()
}

pub fn random_hermitian(rng: &mut StdRng, n: usize, scale: f64) -> DMatrix<C64> {
    let m = DMatrix::from_fn(n, n, |_, _| {
        C64::new(
            rng.random_range(-scale..scale),
            rng.random_range(-scale..scale),
        )
    });
    (&m + m.adjoint()).map(|z| z * 0.5)
}

pub fn random_operator(rng: &mut StdRng, n: usize, scale: f64) -> OperatorMatrix {
    OperatorMatrix::new(plain_basis(n), random_hermitian(rng, n, scale)).unwrap()
}

/// Resonance-solved uniform parameters.
pub fn solved(gate: Gate, g: f64, delta: f64, polish: bool) -> GateParams {
    solve_resonance(
        &GateParams::with_common_detuning(gate, g, delta),
        ResonanceOptions {
            polish,
            ..Default::default()
        },
    )
    .unwrap()
    .params
}

/// Gauss–Jordan elimination with partial pivoting, solving `a x = b` for
/// every column of `b`.
pub fn gauss_jordan(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let n = a.nrows();
    let m = b.ncols();
    let mut rows: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a[(i, j)])
                .chain((0..m).map(|j| b[(i, j)]))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| rows[x][col].norm().total_cmp(&rows[y][col].norm()))
            .unwrap();
        rows.swap(col, pivot);
        let p = rows[col][col];
        for v in rows[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = rows[r][col];
                if f != C64::new(0.0, 0.0) {
                    for c in 0..n + m {
                        let delta = f * rows[col][c];
                        rows[r][c] -= delta;
                    }
                }
            }
        }
    }
    DMatrix::from_fn(n, m, |i, j| rows[i][n + j])
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
