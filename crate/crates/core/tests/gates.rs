mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::solved;
use multiphoton::dynamics::{Propagator, StateVector};
use multiphoton::effective::canonical_model;
use multiphoton::gates::{
    decode, encode, run_gate, rx_operator, truth_table, zrot_phase, EncodedState, LogicalState,
    PhaseMode, RunOptions,
};
use multiphoton::hamiltonian::{build_hamiltonian, Preset};
use multiphoton::hilbert::enumerate_basis;
use multiphoton::params::Gate;
use proptest::prelude::*;

fn bits(s: &str) -> LogicalState {
    s.parse().unwrap()
}

fn measured() -> RunOptions {
    RunOptions {
        measure: true,
        ..Default::default()
    }
}

proptest! {
    #[test]
    fn encode_decode_round_trip(gate in prop::sample::select(Gate::ALL.to_vec()), v in 0usize..8) {
        let l = LogicalState::from_index(v % (1 << gate.arity()), gate.arity());
        let e = encode(gate, &l).unwrap();
        prop_assert_eq!(decode(gate, &e), Some(l));
    }

    #[test]
    fn extra_photon_is_invalid(gate in prop::sample::select(Gate::ALL.to_vec()), v in 0usize..8, m in 0usize..5) {
        let l = LogicalState::from_index(v % (1 << gate.arity()), gate.arity());
        let mut e = encode(gate, &l).unwrap();
        let m = m % e.state.photons.len();
        e.state.photons[m] += 1;
        prop_assert_eq!(decode(gate, &e), None);
    }
}

#[test]
fn fredkin_reference_truth_table() {
    let p = solved(Gate::FredkinFast, 1.0, 20.0, false);
    let table = truth_table(&p, &measured()).unwrap();
    for row in &table.rows {
        let (out, _) = row.dominant_output().unwrap();
        let swapped = row.input.bits()[0] == 1 && row.input.bits()[1] != row.input.bits()[2];
        let expect = if swapped {
            LogicalState::new(vec![1, row.input.bits()[2], row.input.bits()[1]]).unwrap()
        } else {
            row.input.clone()
        };
        assert_eq!(out, expect, "row {}", row.input);
        assert!(
            row.fidelity_conditional.unwrap() >= 0.98,
            "row {}",
            row.input
        );
        if row.input.bits()[0] == 0 {
            assert!(row.fidelity_conditional.unwrap() >= 0.999);
        }
        let s = row.populations;
        assert!((s.valid + s.invalid + s.excited - 1.0).abs() < 1e-9);
        assert!(row.fidelity_conditional.unwrap() >= row.fidelity_raw);
    }
    let run = run_gate(&p, &bits("110"), &RunOptions::default()).unwrap();
    assert!(run.fidelity_raw >= 0.95);
    let run = run_gate(&p, &bits("100"), &RunOptions::default()).unwrap();
    assert!(run.fidelity_raw >= 0.99);
}

#[test]
fn fredkin_phase_strict_fast_gate() {
    let p = solved(Gate::FredkinFast, 1.0, 20.0, false);
    let strict = RunOptions {
        measure: true,
        phase_mode: PhaseMode::Strict,
        ..Default::default()
    };
    let table = truth_table(&p, &strict).unwrap();
    let t0 = multiphoton::gates::interaction_time(&p).unwrap();
    let eta = multiphoton::hamiltonian::fredkin_eta(&p).unwrap();
    assert!((table.t_gate - t0).abs() < 2.0 * PI / eta);
    assert!(table.worst_conditional().unwrap() > 0.98);
}

#[test]
fn iswap_rows_and_phase() {
    let p = solved(Gate::Iswap, 1.0, 100.0, false);
    let run = run_gate(&p, &bits("10"), &RunOptions::default()).unwrap();
    assert_eq!(run.dominant_output().unwrap().0, bits("01"));
    assert!(run.fidelity_raw >= 0.99);
    let strict = RunOptions {
        phase_mode: PhaseMode::Strict,
        ..Default::default()
    };
    for row in truth_table(&p, &strict).unwrap().rows {
        assert!(row.fidelity_raw >= 0.99, "row {}", row.input);
    }
}

#[test]
fn fidelity_improves_with_detuning() {
    let f: Vec<f64> = [5.0, 10.0, 20.0, 40.0]
        .iter()
        .map(|&d| {
            truth_table(&solved(Gate::FredkinFast, 1.0, d, false), &measured())
                .unwrap()
                .mean_raw()
        })
        .collect();
    assert!(f.windows(2).all(|w| w[1] >= w[0]), "{f:?}");
}

#[test]
fn full_x_rotation_is_identity() {
    let p = solved(Gate::Xrot, 1.0, 50.0, false).set_angle(2.0 * PI);
    for row in truth_table(&p, &RunOptions::default()).unwrap().rows {
        assert_eq!(row.dominant_output().unwrap().0, row.input);
        assert!(row.fidelity_raw > 0.99);
    }
}

#[test]
fn x_rotation_follows_rx() {
    let p = solved(Gate::Xrot, 1.0, 50.0, false);
    let (_, m) = canonical_model(&p).unwrap();
    let g_eff = m.coupling(0, 1).re;
    let preset = Preset::new(&p).unwrap();
    let seed = encode(Gate::Xrot, &bits("0")).unwrap();
    let one = encode(Gate::Xrot, &bits("1")).unwrap().state;
    let basis = enumerate_basis(&preset.spec, &seed.state).unwrap();
    let prop = Propagator::new(&build_hamiltonian(&preset.spec, &basis).unwrap()).unwrap();
    let psi0 = StateVector::basis_state(basis.clone(), 0).unwrap();
    let k1 = basis.index_of(&one).unwrap();
    for step in 0..=20 {
        let t = step as f64 / 20.0 * PI / g_eff;
        let psi = prop.apply(&psi0, t).unwrap();
        let r = rx_operator(g_eff, t);
        assert!((psi.amplitude(0).norm_sqr() - r[(0, 0)].norm_sqr()).abs() < 1e-2);
        assert!((psi.amplitude(k1).norm_sqr() - r[(1, 0)].norm_sqr()).abs() < 1e-2);
    }
}

#[test]
fn z_rotation_phases() {
    assert_eq!(zrot_phase(0.0, 10.0, 10.0).unwrap(), 0.0);
    let phi = zrot_phase(1.0, 100.0, 100.0).unwrap();
    assert!((phi - 1.0).abs() < 1e-4);
    let dressed = |g: f64, d: f64, t: f64| ((d * d + 4.0 * g * g).sqrt() - d) / 2.0 * t;
    let phi = zrot_phase(1.0, 10.0, 10.0).unwrap();
    assert!((phi - dressed(1.0, 10.0, 10.0)).abs() / dressed(1.0, 10.0, 10.0) < 2e-2);
    assert!(zrot_phase(1.0, 0.0, 1.0).is_err());

    let p = solved(Gate::Zrot, 1.0, 100.0, false).set_angle(FRAC_PI_2);
    let strict = RunOptions {
        phase_mode: PhaseMode::Strict,
        ..Default::default()
    };
    for row in truth_table(&p, &strict).unwrap().rows {
        assert!(row.fidelity_raw > 0.999, "row {}", row.input);
    }
}

#[test]
fn spectator_mismatch_decodes_invalid() {
    let e = encode(Gate::FredkinFast, &bits("010")).unwrap();
    let bad = EncodedState {
        spectators: vec![0],
        ..e
    };
    assert_eq!(decode(Gate::FredkinFast, &bad), None);
}
