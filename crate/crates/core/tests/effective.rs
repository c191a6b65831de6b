mod common;

use common::{gauss_jordan, max_abs, plain_basis, random_hermitian, rng, solved};
use multiphoton::effective::{
    canonical_model, closed_form_params, iswap_exact, schur_reduce, solve_resonance, ClosedForm,
    Partition, ResonanceOptions,
};
use multiphoton::hamiltonian::OperatorMatrix;
use multiphoton::params::{Detuning, Gate, GateParams};
use multiphoton::C64;
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn oracle(h: &DMatrix<C64>, p: &[usize], q: &[usize]) -> DMatrix<C64> {
    let block =
        |r: &[usize], c: &[usize]| DMatrix::from_fn(r.len(), c.len(), |i, j| h[(r[i], c[j])]);
    let b = block(p, q);
    block(p, p) - &b * gauss_jordan(&block(q, q), &b.adjoint())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_matches_column_solve(seed in any::<u64>(), n in 2usize..=12, kept in 1usize..=4) {
        let mut r = rng(seed);
        let kept = kept.min(n);
        let mut m = random_hermitian(&mut r, n, 1.0);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let (p, q) = order.split_at(kept);
        for &k in q {
            m[(k, k)] += C64::from(8.0);
        }
        let h = OperatorMatrix::new(plain_basis(n), m.clone()).unwrap();
        let model = schur_reduce(&h, &Partition::new(p.to_vec(), q.to_vec(), n).unwrap()).unwrap();
        prop_assert!(max_abs(&(&model.h_eff - oracle(&m, p, q))) < 1e-12);
        prop_assert!(model.max_asymmetry < 1e-12);
    }
}

#[test]
fn iswap_matches_exact_formulas_on_a_grid() {
    for g in [0.5, 0.8, 1.0, 1.3, 2.0] {
        for (d1, d2, d3, d4) in [
            (10.0, 10.0, 10.0, 0.0),
            (8.0, 12.0, 9.0, 0.1),
            (15.0, -11.0, 20.0, -0.3),
            (30.0, 25.0, -28.0, 0.02),
            (6.0, 7.0, 8.0, 1.5),
        ] {
            let p = GateParams::uniform(Gate::Iswap, 1.0)
                .set_coupling("g_ab", g)
                .set_coupling("g_bc", 1.1 * g)
                .set_coupling("g_cd", 0.9 * g)
                .set_coupling("g_da", 1.2 * g);
            let mut p = p;
            p.detunings = [d1, d2, d3, d4].map(Detuning::Fixed).to_vec();
            let (_, m) = canonical_model(&p).unwrap();
            let (g_eff, delta_eff) = iswap_exact(&p).unwrap();
            assert!(
                (m.coupling(0, 1).re - g_eff).abs() < 1e-12,
                "g={g} d=({d1},{d2},{d3})"
            );
            assert!((m.residual_detunings()[1] - delta_eff).abs() < 1e-12);
        }
    }
}

#[test]
fn iswap_reference_value() {
    let p = GateParams::with_common_detuning(Gate::Iswap, 1.0, 10.0)
        .set_detuning(4, Detuning::Fixed(0.0));
    let (_, m) = canonical_model(&p).unwrap();
    assert!((m.coupling(0, 1).re + 1.0 / 980.0).abs() < 1e-15);
}

#[test]
fn closed_form_examples() {
    let ClosedForm::FredkinSlow { g_eff, .. } = closed_form_params(
        &GateParams::with_common_detuning(Gate::FredkinSlow, 1.0, 20.0),
    )
    .unwrap() else {
        unreachable!()
    };
    assert!((g_eff + 3.125e-7).abs() < 1e-21);
    let s = solve_resonance(
        &GateParams::with_common_detuning(Gate::FredkinSlow, 1.0, 20.0),
        ResonanceOptions::default(),
    )
    .unwrap();
    assert!((s.params.delta(6).unwrap() - 0.05).abs() < 1e-16);

    let xrot = GateParams::with_common_detuning(Gate::Xrot, 1.0, 50.0);
    assert!((closed_form_params(&xrot).unwrap().coupling().abs() - 4e-4).abs() < 1e-18);
}

#[test]
fn xrot_numeric_coupling_is_positive() {
    let (_, m) = canonical_model(&solved(Gate::Xrot, 1.0, 50.0, false)).unwrap();
    let closed = closed_form_params(&solved(Gate::Xrot, 1.0, 50.0, false))
        .unwrap()
        .coupling();
    assert!(m.coupling(0, 1).re > 0.0);
    assert!((m.coupling(0, 1).re / closed - 1.0).abs() < 1e-2);
}

fn relative_error(gate: Gate, delta: f64) -> f64 {
    let p = solved(gate, 1.0, delta, false);
    let (_, m) = canonical_model(&p).unwrap();
    let closed = match closed_form_params(&p).unwrap() {
        ClosedForm::FredkinFast { g1, .. } => g1,
        other => other.coupling(),
    };
    (m.coupling(0, 1).re - closed).abs() / closed.abs()
}

#[test]
fn closed_forms_converge_quadratically() {
    for gate in [Gate::FredkinSlow, Gate::FredkinFast, Gate::Iswap] {
        let errs: Vec<f64> = [10.0, 20.0, 40.0, 80.0]
            .iter()
            .map(|&d| relative_error(gate, d))
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((2.0..=8.0).contains(&ratio), "{gate}: {errs:?}");
        }
    }
}

#[test]
fn effective_eigenvalues_approach_the_full_spectrum() {
    for gate in [Gate::FredkinSlow, Gate::FredkinFast, Gate::Iswap] {
        let errors: Vec<f64> = [20.0, 40.0, 80.0]
            .iter()
            .map(|&d| {
                let (h, m) = canonical_model(&solved(gate, 1.0, d, false)).unwrap();
                let mut full: Vec<f64> = SymmetricEigen::new(h.matrix().clone())
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect();
                full.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
                let mut near = full[..m.dim()].to_vec();
                near.sort_by(f64::total_cmp);
                near.iter()
                    .zip(m.eigenvalues())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(
            errors[0] > errors[1] && errors[1] > errors[2],
            "{gate}: {errors:?}"
        );
        assert!(errors[2] < 1e-4, "{gate}: {errors:?}");
    }
}

#[test]
fn resonant_state_left_in_q_is_ill_conditioned() {
    let (h, _) = canonical_model(&solved(Gate::FredkinFast, 1.0, 20.0, false)).unwrap();
    let n = h.dim();
    // Put φ exactly on resonance and decouple it, so the Q block is singular.
    let phi = 3;
    let mut m = h.matrix().clone();
    for k in 0..n {
        m[(phi, k)] = C64::from(0.0);
        m[(k, phi)] = C64::from(0.0);
    }
    let h = OperatorMatrix::new(h.basis().clone(), m).unwrap();
    let err = schur_reduce(&h, &Partition::from_p(vec![0], n).unwrap()).unwrap_err();
    assert!(matches!(err, multiphoton::Error::IllConditioned { .. }));
}
