mod common;

use common::{plain_basis, random_hermitian, random_operator, rng};
use multiphoton::dynamics::{
    analytic_three_level, analytic_two_level, evolve, evolve_rk4, fidelity, project_atom,
    Propagator, StateVector, DEFAULT_PROJECTION_FLOOR,
};
use multiphoton::hamiltonian::OperatorMatrix;
use multiphoton::hilbert::{Basis, BasisState};
use multiphoton::C64;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

fn random_state(r: &mut StdRng, basis: Basis) -> StateVector {
    let v = DVector::from_fn(basis.len(), |_, _| {
        C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    });
    let v = &v / C64::from(v.norm());
    StateVector::new(basis, v).unwrap()
}

fn real_op(rows: &[&[f64]]) -> OperatorMatrix {
    let n = rows.len();
    OperatorMatrix::new(
        plain_basis(n),
        DMatrix::from_fn(n, n, |i, j| C64::from(rows[i][j])),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagation_is_unitary_and_composes(
        seed in any::<u64>(), n in 1usize..=12, t1 in 0.0f64..5e3, t2 in 0.0f64..5e3,
    ) {
        let mut r = rng(seed);
        let h = random_operator(&mut r, n, 1.0);
        let psi = random_state(&mut r, h.basis().clone());
        let prop = Propagator::new(&h).unwrap();
        let a = prop.apply(&prop.apply(&psi, t1).unwrap(), t2).unwrap();
        let b = prop.apply(&psi, t1 + t2).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-10);
        prop_assert!((b.norm() - 1.0).abs() < 1e-10);
        prop_assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-9);
    }

    #[test]
    fn two_level_map_matches_propagation(
        g in -2.0f64..2.0, delta in -3.0f64..3.0, t in 0.0f64..200.0,
    ) {
        let h = real_op(&[&[0.0, g], &[g, delta]]);
        let u = Propagator::new(&h).unwrap().unitary(t);
        let a = analytic_two_level(g, delta, 0.0, t);
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((u[(i, j)] - a[(i, j)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn three_level_map_matches_propagation(
        g1 in 0.01f64..1.0, g2 in 0.01f64..1.0, eta in -5.0f64..5.0, t in 0.0f64..100.0,
    ) {
        // The cited amplitudes correspond to negative effective couplings.
        let h = real_op(&[&[0.0, -g1, 0.0], &[-g1, 0.0, -g2], &[0.0, -g2, 0.0]]);
        let psi = evolve(&h, &StateVector::basis_state(h.basis().clone(), 0).unwrap(), t).unwrap();
        let a = analytic_three_level(g1, g2, eta, t).unwrap();
        let bookkeeping = [C64::from(1.0), C64::from(1.0), C64::from_polar(1.0, eta * t)];
        for k in 0..3 {
            prop_assert!((psi.amplitude(k) * bookkeeping[k] - a[k]).norm() < 1e-10);
        }
    }

    #[test]
    fn projection_never_lowers_fidelity_to_in_sector_targets(seed in any::<u64>(), n in 2usize..=10) {
        let mut r = rng(seed);
        let basis = Basis::from_states(
            (0..n).map(|i| BasisState::new(vec![i as u32], i % 3)).collect(),
        ).unwrap();
        let psi = random_state(&mut r, basis.clone());
        let target = StateVector::basis_state(basis, 0).unwrap();
        let out = project_atom(&psi, 0, DEFAULT_PROJECTION_FLOOR).unwrap();
        prop_assert!(out.succeeded);
        let after = fidelity(&out.projected, &target).unwrap();
        let before = fidelity(&psi, &target).unwrap();
        prop_assert!(after >= before - 1e-15);
    }
}

#[test]
fn analytic_maps_carry_the_frame_phase() {
    let (g, d, eta, t) = (0.3, 0.1, 1.7, 4.2);
    let plain = analytic_two_level(g, d, 0.0, t);
    let phased = analytic_two_level(g, d, eta, t);
    assert!((phased[(1, 0)] - plain[(1, 0)] * C64::from_polar(1.0, eta * t)).norm() < 1e-15);
    assert!((phased[(0, 0)] - plain[(0, 0)]).norm() < 1e-15);
    let u = phased;
    assert!((u.adjoint() * u - nalgebra::Matrix2::identity()).norm() < 1e-14);
}

#[test]
fn rk4_oracle_tracks_the_propagator() {
    let mut r = rng(7);
    let h = OperatorMatrix::new(plain_basis(6), random_hermitian(&mut r, 6, 1.0)).unwrap();
    let psi = random_state(&mut r, h.basis().clone());
    let exact = evolve(&h, &psi, 20.0).unwrap();
    let approx = evolve_rk4(&h, &psi, 20.0, 20_000).unwrap();
    assert!((exact.amplitudes() - approx.amplitudes()).norm() < 1e-9);
}
