//! Dual-rail logical qubits on cavity modes and the gate catalogue.
//!
//! A qubit is one photon shared between two modes; the photon in the first
//! mode of the pair means `1`. Pairs per gate:
//!
//! | gate | pairs |
//! |------|-------|
//! | iSWAP | (n1 n2), (n4 n3) |
//! | Fredkin | (n1 n4), (n2 n3), (n5 n6) |
//! | x-rotation | (n1 n2) |
//! | z-rotation | (n1 n2) |
//!
//! Fredkin mode 4 and z-rotation mode 2 never couple to the atom. They are
//! kept out of the basis and carried as spectator occupations.

mod rotation;
mod run;

pub use rotation::{rx_operator, zrot_phase};
pub use run::{
    ideal_output, interaction_time, run_gate, truth_table, GateRun, PhaseMode, PopulationSplit,
    RunOptions, TruthTable,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::BasisState;
use crate::params::Gate;

/// Bit values of the qubits, first qubit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalState(Vec<u8>);

impl LogicalState {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Validation(format!(
                "bits must be 0 or 1, got {bits:?}"
            )));
        }
        Ok(Self(bits))
    }

    /// The `arity` low bits of `value`, most significant first.
    pub fn from_index(value: usize, arity: usize) -> Self {
        Self((0..arity).rev().map(|k| ((value >> k) & 1) as u8).collect())
    }

    /// All `2^arity` states in binary order.
    pub fn all(arity: usize) -> Vec<Self> {
        (0..1usize << arity)
            .map(|v| Self::from_index(v, arity))
            .collect()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LogicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LogicalState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Config(format!("invalid logical state {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}

/// One side of a dual-rail pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rail {
    /// Index into the preset's active modes.
    Active(usize),
    /// A mode that never couples; index into the spectator list.
    Spectator(usize),
}

/// `(one, zero)` rails of each qubit.
pub fn layout(gate: Gate) -> Vec<(Rail, Rail)> {
    use Rail::{Active as A, Spectator as S};
    match gate {
        Gate::Iswap => vec![(A(0), A(1)), (A(3), A(2))],
        Gate::FredkinSlow | Gate::FredkinFast => vec![(A(0), S(0)), (A(1), A(2)), (A(3), A(4))],
        Gate::Xrot => vec![(A(0), A(1))],
        Gate::Zrot => vec![(A(0), S(0))],
    }
}

fn active_modes(gate: Gate) -> usize {
    match gate {
        Gate::Iswap => 4,
        Gate::FredkinSlow | Gate::FredkinFast => 5,
        Gate::Xrot => 2,
        Gate::Zrot => 1,
    }
}

fn spectator_modes(gate: Gate) -> usize {
    match gate {
        Gate::FredkinSlow | Gate::FredkinFast | Gate::Zrot => 1,
        _ => 0,
    }
}

/// A logical state placed on the cavity: the basis state of the active
/// modes and the occupations of the spectator modes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EncodedState {
    pub state: BasisState,
    pub spectators: Vec<u32>,
}

pub fn encode(gate: Gate, logical: &LogicalState) -> Result<EncodedState> {
    if logical.len() != gate.arity() {
        return Err(Error::Validation(format!(
            "{gate} takes {} qubits, got {}",
            gate.arity(),
            logical.len()
        )));
    }
    let mut photons = vec![0; active_modes(gate)];
    let mut spectators = vec![0; spectator_modes(gate)];
    for (&bit, (one, zero)) in logical.bits().iter().zip(layout(gate)) {
        match if bit == 1 { one } else { zero } {
            Rail::Active(m) => photons[m] += 1,
            Rail::Spectator(m) => spectators[m] += 1,
        }
    }
    Ok(EncodedState {
        state: BasisState::new(photons, 0),
        spectators,
    })
}

/// Inverse of [`encode`]. `None` when the atom is not in level `a` or a
/// pair does not hold exactly one photon.
pub fn decode(gate: Gate, encoded: &EncodedState) -> Option<LogicalState> {
    let state = &encoded.state;
    if state.level != 0
        || state.photons.len() != active_modes(gate)
        || encoded.spectators.len() != spectator_modes(gate)
    {
        return None;
    }
    let occupation = |r: Rail| match r {
        Rail::Active(m) => state.photons[m],
        Rail::Spectator(m) => encoded.spectators[m],
    };
    let bits = layout(gate)
        .into_iter()
        .map(|(one, zero)| match (occupation(one), occupation(zero)) {
            (1, 0) => Some(1),
            (0, 1) => Some(0),
            _ => None,
        })
        .collect::<Option<Vec<u8>>>()?;
    Some(LogicalState(bits))
}
