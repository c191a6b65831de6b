use std::f64::consts::PI;

use nalgebra::DVector;
use rayon::prelude::*;

use super::{decode, encode, EncodedState, LogicalState};
use crate::dynamics::{
    project_atom, MeasurementOutcome, Propagator, StateVector, DEFAULT_PROJECTION_FLOOR,
};
use crate::effective::{canonical_model, closed_form_params, ClosedForm};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, OperatorMatrix, Preset};
use crate::hilbert::{enumerate_basis, Basis};
use crate::params::{Gate, GateParams};
use crate::C64;

/// How a run is compared with its truth-table target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseMode {
    /// Every amplitude is compared by magnitude only: `(Σ |c_k| |ψ_k|)²`.
    #[default]
    Population,
    /// Amplitudes are taken in a frame where the input state is stationary
    /// (its dressed energy and any frame change removed), and the target
    /// must match in phase: `max(0, Re Σ c_k* ψ_k)²`. Fredkin gate times are
    /// nudged by less than `2π/η` so the frame phase lands on the swap.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    /// Post-select the atom in level `a`.
    pub measure: bool,
    pub phase_mode: PhaseMode,
    /// Overrides [`interaction_time`].
    pub time: Option<f64>,
    pub projection_floor: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            measure: false,
            phase_mode: PhaseMode::Population,
            time: None,
            projection_floor: DEFAULT_PROJECTION_FLOOR,
        }
    }
}

/// Where the final population sits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PopulationSplit {
    /// Atom in `a` and every pair holding one photon.
    pub valid: f64,
    /// Atom in `a` but some pair empty or doubly occupied.
    pub invalid: f64,
    /// Atom in any other level.
    pub excited: f64,
}

#[derive(Clone, Debug)]
pub struct GateRun {
    pub gate: Gate,
    pub params: GateParams,
    pub input: LogicalState,
    pub target: Vec<(LogicalState, C64)>,
    pub t_gate: f64,
    pub final_state: StateVector,
    /// Spectator occupations shared by every state of the basis.
    pub spectators: Vec<u32>,
    pub measurement: Option<MeasurementOutcome>,
    pub fidelity_raw: f64,
    /// `None` without measurement or when it failed.
    pub fidelity_conditional: Option<f64>,
    pub populations: PopulationSplit,
    pub phase_mode: PhaseMode,
}

impl GateRun {
    /// Decoded output with the largest population.
    pub fn dominant_output(&self) -> Option<(LogicalState, f64)> {
        let basis = self.final_state.basis();
        self.final_state
            .populations()
            .into_iter()
            .enumerate()
            .filter_map(|(k, p)| {
                let enc = EncodedState {
                    state: basis.state(k).clone(),
                    spectators: self.spectators.clone(),
                };
                decode(self.gate, &enc).map(|l| (l, p))
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

#[derive(Clone, Debug)]
pub struct TruthTable {
    pub gate: Gate,
    pub t_gate: f64,
    /// One run per input, in binary order.
    pub rows: Vec<GateRun>,
}

impl TruthTable {
    pub fn worst_raw(&self) -> f64 {
        self.rows.iter().map(|r| r.fidelity_raw).fold(1.0, f64::min)
    }

    pub fn mean_raw(&self) -> f64 {
        self.rows.iter().map(|r| r.fidelity_raw).sum::<f64>() / self.rows.len() as f64
    }

    /// Failed measurements count as zero.
    pub fn worst_conditional(&self) -> Option<f64> {
        self.conditional()
            .map(|v| v.into_iter().fold(1.0, f64::min))
    }

    pub fn mean_conditional(&self) -> Option<f64> {
        self.conditional()
            .map(|v| v.iter().sum::<f64>() / v.len() as f64)
    }

    fn conditional(&self) -> Option<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                r.measurement
                    .as_ref()
                    .map(|_| r.fidelity_conditional.unwrap_or(0.0))
            })
            .collect()
    }
}

/// Gate time in units of `1/g`:
/// * Fredkin fast: `π/g′` with the closed-form `g1`, `g2`
/// * Fredkin slow and iSWAP: `π/(2|g_eff|)`
/// * x-rotation: `θ/|g_eff|`
/// * z-rotation: `φΔ/g²`
///
/// `g_eff` comes from the numeric reduction.
pub fn interaction_time(params: &GateParams) -> Result<f64> {
    let coupling = |c: f64| {
        if c == 0.0 || !c.is_finite() {
            Err(Error::Degenerate(format!(
                "{}: zero effective coupling",
                params.gate
            )))
        } else {
            Ok(c.abs())
        }
    };
    match params.gate {
        Gate::FredkinFast => {
            let ClosedForm::FredkinFast {
                g1, g2, g_prime, ..
            } = closed_form_params(params)?
            else {
                unreachable!()
            };
            // Both legs are needed to complete the swap.
            coupling(g1)?;
            coupling(g2)?;
            Ok(PI / g_prime)
        }
        Gate::Iswap | Gate::FredkinSlow => Ok(PI / (2.0 * coupling(numeric_g_eff(params)?)?)),
        Gate::Xrot => Ok(params.angle()?.abs() / coupling(numeric_g_eff(params)?)?),
        Gate::Zrot => {
            let ClosedForm::Zrot { phase_rate } = closed_form_params(params)? else {
                unreachable!()
            };
            Ok(params.angle()? / coupling(phase_rate)?)
        }
    }
}

fn numeric_g_eff(params: &GateParams) -> Result<f64> {
    let (_, model) = canonical_model(params)?;
    Ok(model.coupling(0, 1).re)
}

/// Ideal output of the gate for `input`.
pub fn ideal_output(params: &GateParams, input: &LogicalState) -> Result<Vec<(LogicalState, C64)>> {
    let gate = params.gate;
    if input.len() != gate.arity() {
        return Err(Error::Validation(format!(
            "{gate} takes {} qubits",
            gate.arity()
        )));
    }
    let flip = |i: usize| {
        let mut b = input.bits().to_vec();
        b[i] ^= 1;
        LogicalState(b)
    };
    let one = C64::new(1.0, 0.0);
    let b = input.bits();
    Ok(match gate {
        Gate::Iswap if b[0] != b[1] => vec![(LogicalState(vec![b[1], b[0]]), C64::i())],
        Gate::FredkinSlow | Gate::FredkinFast if b[0] == 1 && b[1] != b[2] => {
            vec![(LogicalState(vec![1, b[2], b[1]]), one)]
        }
        Gate::Xrot => {
            let theta = params.angle()? * numeric_g_eff(params)?.signum();
            let (s, c) = theta.sin_cos();
            vec![(input.clone(), C64::from(c)), (flip(0), C64::new(0.0, -s))]
        }
        Gate::Zrot if b[0] == 1 => vec![(input.clone(), C64::from_polar(1.0, params.angle()?))],
        _ => vec![(input.clone(), one)],
    })
}

/// Everything about one input that does not depend on the run time.
struct Prepared {
    preset: Preset,
    encoded: EncodedState,
    basis: Basis,
    h: OperatorMatrix,
    propagator: Propagator,
    /// `(basis index, coefficient)` of reachable target components.
    target: Vec<(usize, C64)>,
    target_logical: Vec<(LogicalState, C64)>,
}

fn prepare(params: &GateParams, preset: &Preset, input: &LogicalState) -> Result<Prepared> {
    let encoded = encode(params.gate, input)?;
    let basis = enumerate_basis(&preset.spec, &encoded.state)?;
    let h = build_hamiltonian(&preset.spec, &basis)?;
    let propagator = Propagator::new(&h)?;
    let target_logical = ideal_output(params, input)?;
    let mut target = Vec::new();
    for (l, c) in &target_logical {
        let e = encode(params.gate, l)?;
        if e.spectators == encoded.spectators {
            if let Some(k) = basis.index_of(&e.state) {
                target.push((k, *c));
            }
        }
    }
    Ok(Prepared {
        preset: preset.clone(),
        encoded,
        basis,
        h,
        propagator,
        target,
        target_logical,
    })
}

impl Prepared {
    /// Energy that the input's phase winds with. For an identity row it is
    /// the eigenvalue of the dressed input state. Otherwise it is the mean
    /// eigenvalue of the dressed states carried by the input, the targets and
    /// anything within one coupling of the input's energy.
    fn reference_energy(&self, gate: Gate) -> Result<f64> {
        if gate == Gate::Zrot {
            // The |0> rail never moves, so the |1> rail's phase is absolute.
            return Ok(0.0);
        }
        let m = self.h.matrix();
        let n = self.h.dim();
        let mut kept = vec![0];
        if self.target.iter().any(|&(k, _)| k != 0) {
            let window = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)].norm())
                .fold(0.0, f64::max);
            for k in 1..n {
                let near = (m[(k, k)].re - m[(0, 0)].re).abs() < window;
                if near || self.target.iter().any(|&(t, _)| t == k) {
                    kept.push(k);
                }
            }
        }
        let v = self.propagator.eigenvectors();
        let weight = |j: usize| kept.iter().map(|&k| v[(k, j)].norm_sqr()).sum::<f64>();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)));
        let e = self.propagator.eigenvalues();
        Ok(order[..kept.len()].iter().map(|&j| e[j]).sum::<f64>() / kept.len() as f64)
    }

    /// Amplitudes in the frame where the input is stationary.
    fn strict_frame(&self, psi: &StateVector, e_ref: f64, t: f64) -> Result<StateVector> {
        let theta0 = self
            .preset
            .frame
            .as_ref()
            .map_or(0.0, |f| f.evaluate(&self.encoded.state));
        let amps = DVector::from_iterator(
            psi.basis().len(),
            psi.amplitudes().iter().enumerate().map(|(k, a)| {
                let theta = self
                    .preset
                    .frame
                    .as_ref()
                    .map_or(0.0, |f| f.evaluate(self.basis.state(k)));
                a * C64::from_polar(1.0, (e_ref - (theta - theta0)) * t)
            }),
        );
        StateVector::unnormalized(psi.basis().clone(), amps)
    }

    fn score(&self, psi: &StateVector, mode: PhaseMode, e_ref: f64, t: f64) -> Result<f64> {
        Ok(match mode {
            PhaseMode::Population => {
                let s: f64 = self
                    .target
                    .iter()
                    .map(|&(k, c)| c.norm() * psi.amplitude(k).norm())
                    .sum();
                (s * s).min(1.0)
            }
            PhaseMode::Strict => {
                let f = self.strict_frame(psi, e_ref, t)?;
                let s: C64 = self
                    .target
                    .iter()
                    .map(|&(k, c)| c.conj() * f.amplitude(k))
                    .sum();
                (s.re.max(0.0).powi(2)).min(1.0)
            }
        })
    }

    fn run(
        &self,
        params: &GateParams,
        input: &LogicalState,
        t: f64,
        options: &RunOptions,
    ) -> Result<GateRun> {
        let psi0 = StateVector::basis_state(self.basis.clone(), 0)?;
        let psi = self.propagator.apply(&psi0, t)?;
        let e_ref = match options.phase_mode {
            PhaseMode::Strict => self.reference_energy(params.gate)?,
            PhaseMode::Population => 0.0,
        };
        let fidelity_raw = self.score(&psi, options.phase_mode, e_ref, t)?;
        let (measurement, fidelity_conditional) = if options.measure {
            let m = project_atom(&psi, 0, options.projection_floor)?;
            let f = if m.succeeded {
                Some(self.score(&m.projected, options.phase_mode, e_ref, t)?)
            } else {
                None
            };
            (Some(m), f)
        } else {
            (None, None)
        };
        let mut split = PopulationSplit {
            valid: 0.0,
            invalid: 0.0,
            excited: 0.0,
        };
        for (k, p) in psi.populations().into_iter().enumerate() {
            let s = self.basis.state(k);
            let enc = EncodedState {
                state: s.clone(),
                spectators: self.encoded.spectators.clone(),
            };
            if s.level != 0 {
                split.excited += p;
            } else if decode(params.gate, &enc).is_some() {
                split.valid += p;
            } else {
                split.invalid += p;
            }
        }
        Ok(GateRun {
            gate: params.gate,
            params: params.clone(),
            input: input.clone(),
            target: self.target_logical.clone(),
            t_gate: t,
            final_state: psi,
            spectators: self.encoded.spectators.clone(),
            measurement,
            fidelity_raw,
            fidelity_conditional,
            populations: split,
            phase_mode: options.phase_mode,
        })
    }
}

fn resolved(params: &GateParams) -> Result<()> {
    params.validate()?;
    if !params.is_resolved() {
        return Err(Error::Config(format!(
            "{}: detunings must be resolved before running",
            params.gate
        )));
    }
    Ok(())
}

/// Gate time for a run: the override or [`interaction_time`], nudged in
/// strict mode for the Fredkin gates.
fn gate_time(params: &GateParams, preset: &Preset, options: &RunOptions) -> Result<f64> {
    let t0 = match options.time {
        Some(t) => t,
        None => interaction_time(params)?,
    };
    if options.phase_mode == PhaseMode::Strict && params.gate.is_fredkin() && options.time.is_none()
    {
        tune_fredkin_time(params, preset, t0)
    } else {
        Ok(t0)
    }
}

/// Shifts `t0` by less than one period of the frame phase so that the
/// `110 → 101` amplitude comes out real and positive.
fn tune_fredkin_time(params: &GateParams, preset: &Preset, t0: f64) -> Result<f64> {
    let input = LogicalState(vec![1, 1, 0]);
    let prep = prepare(params, preset, &input)?;
    let e_ref = prep.reference_energy(params.gate)?;
    let frame = preset
        .frame
        .as_ref()
        .expect("Fredkin presets carry a frame");
    let &(k, c) = prep
        .target
        .first()
        .ok_or_else(|| Error::Structural("swap target unreachable".into()))?;
    let rate = -(frame.evaluate(prep.basis.state(k)) - frame.evaluate(&prep.encoded.state));
    if rate == 0.0 {
        return Ok(t0);
    }
    let mut t = t0;
    for _ in 0..3 {
        let psi = prep
            .propagator
            .apply(&StateVector::basis_state(prep.basis.clone(), 0)?, t)?;
        let a = prep.strict_frame(&psi, e_ref, t)?.amplitude(k) * c.conj();
        t -= a.arg() / rate;
    }
    Ok(t)
}

pub fn run_gate(
    params: &GateParams,
    input: &LogicalState,
    options: &RunOptions,
) -> Result<GateRun> {
    resolved(params)?;
    let preset = Preset::new(params)?;
    let t = gate_time(params, &preset, options)?;
    prepare(params, &preset, input)?.run(params, input, t, options)
}

/// Runs every input in parallel at one common gate time.
pub fn truth_table(params: &GateParams, options: &RunOptions) -> Result<TruthTable> {
    resolved(params)?;
    let preset = Preset::new(params)?;
    let t = gate_time(params, &preset, options)?;
    let rows = LogicalState::all(params.gate.arity())
        .par_iter()
        .map(|input| prepare(params, &preset, input)?.run(params, input, t, options))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruthTable {
        gate: params.gate,
        t_gate: t,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::{solve_resonance, ResonanceOptions};

    fn solved(gate: Gate, delta: f64) -> GateParams {
        solve_resonance(
            &GateParams::with_common_detuning(gate, 1.0, delta),
            ResonanceOptions::default(),
        )
        .unwrap()
        .params
    }

    #[test]
    fn fredkin_fast_time() {
        let t = interaction_time(&solved(Gate::FredkinFast, 20.0)).unwrap();
        assert!((t - 400.0 * PI / 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn iswap_time() {
        let t = interaction_time(&solved(Gate::Iswap, 10.0)).unwrap();
        assert!((t - 490.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn zero_coupling_is_degenerate() {
        let p = solved(Gate::FredkinFast, 20.0).set_coupling("g_bc", 0.0);
        assert!(matches!(interaction_time(&p), Err(Error::Degenerate(_))));
    }

    #[test]
    fn unresolved_params_are_rejected() {
        let p = GateParams::fredkin_reference();
        let input = LogicalState::new(vec![1, 1, 0]).unwrap();
        assert!(matches!(
            run_gate(&p, &input, &RunOptions::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn fredkin_control_blocks_swap() {
        let p = solved(Gate::FredkinFast, 20.0);
        let run = run_gate(
            &p,
            &LogicalState::new(vec![0, 1, 0]).unwrap(),
            &RunOptions::default(),
        )
        .unwrap();
        assert!(run.fidelity_raw > 0.99);
        let s = run.populations;
        assert!((s.valid + s.invalid + s.excited - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ideal_outputs() {
        let p = solved(Gate::Iswap, 10.0);
        let out = ideal_output(&p, &LogicalState::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(
            out,
            vec![(LogicalState::new(vec![1, 0]).unwrap(), C64::i())]
        );
        let p = solved(Gate::FredkinFast, 20.0);
        let out = ideal_output(&p, &LogicalState::new(vec![1, 0, 1]).unwrap()).unwrap();
        assert_eq!(out[0].0, LogicalState::new(vec![1, 1, 0]).unwrap());
    }
}
