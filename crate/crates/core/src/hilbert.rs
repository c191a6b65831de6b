//! Product Hilbert space of truncated Fock modes and atomic levels, restricted
//! to the sector reachable from a seed state.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hamiltonian::{Drive, SystemSpec};
use crate::C64;

/// Dimension above which enumeration gives up.
pub const DEFAULT_MAX_DIMENSION: usize = 10_000;

/// A product state: one occupation number per mode and one atomic level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub photons: Vec<u32>,
    pub level: usize,
}

impl BasisState {
    pub fn new(photons: Vec<u32>, level: usize) -> Self {
        Self { photons, level }
    }

    pub fn total_photons(&self) -> u32 {
        self.photons.iter().sum()
    }
}

/// A transition generated by one coupling term acting on a basis state.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub coupling: usize,
    pub target: BasisState,
    /// Matrix element `⟨target|H|source⟩`, including the `√n` ladder factor.
    pub element: C64,
}

/// All states reachable from `state` by applying a single off-diagonal
/// coupling term, in coupling declaration order.
pub fn transitions(spec: &SystemSpec, state: &BasisState) -> Vec<Transition> {
    let mut out = Vec::new();
    for (index, c) in spec.couplings().iter().enumerate() {
        let raising = C64::from_polar(c.strength, c.phase);
        match c.drive {
            Drive::Cavity(m) => {
                let n = state.photons[m];
                if state.level == c.lower && n >= 1 {
                    let mut photons = state.photons.clone();
                    photons[m] -= 1;
                    out.push(Transition {
                        coupling: index,
                        target: BasisState::new(photons, c.upper),
                        element: raising * f64::from(n).sqrt(),
                    });
                } else if state.level == c.upper && n < spec.modes()[m].cutoff {
                    let mut photons = state.photons.clone();
                    photons[m] += 1;
                    out.push(Transition {
                        coupling: index,
                        target: BasisState::new(photons, c.lower),
                        element: raising.conj() * f64::from(n + 1).sqrt(),
                    });
                }
            }
            Drive::Classical => {
                if state.level == c.lower {
                    out.push(Transition {
                        coupling: index,
                        target: BasisState::new(state.photons.clone(), c.upper),
                        element: raising,
                    });
                } else if state.level == c.upper {
                    out.push(Transition {
                        coupling: index,
                        target: BasisState::new(state.photons.clone(), c.lower),
                        element: raising.conj(),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug)]
struct BasisInner {
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

/// An ordered set of basis states with a reverse index. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Basis {
    inner: Arc<BasisInner>,
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.states == other.inner.states
    }
}

impl Basis {
    /// Builds a basis from an explicit list. Fails on duplicates.
    pub fn from_states(states: Vec<BasisState>) -> Result<Self> {
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate basis state {s:?}")));
            }
        }
        Ok(Self {
            inner: Arc::new(BasisInner { states, index }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.inner.states
    }

    pub fn state(&self, i: usize) -> &BasisState {
        &self.inner.states[i]
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.inner.index.get(state).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisState> {
        self.inner.states.iter()
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.iter().enumerate() {
            writeln!(f, "{i:>4}  {:?} level {}", s.photons, s.level)?;
        }
        Ok(())
    }
}

/// Connected component of `seed` under the off-diagonal couplings of `spec`.
pub fn enumerate_basis(spec: &SystemSpec, seed: &BasisState) -> Result<Basis> {
    enumerate_basis_capped(spec, seed, DEFAULT_MAX_DIMENSION)
}

/// Breadth-first enumeration. Each generation is ordered by the declaration
/// index of the coupling that first reached a state, then by photon vector,
/// then by level.
pub fn enumerate_basis_capped(
    spec: &SystemSpec,
    seed: &BasisState,
    max_dimension: usize,
) -> Result<Basis> {
    spec.check_state(seed)?;
    if max_dimension == 0 {
        return Err(Error::DimensionCap { cap: 0 });
    }
    let mut states = vec![seed.clone()];
    let mut seen: HashSet<BasisState> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];

    while !frontier.is_empty() {
        let mut candidates: Vec<(usize, BasisState)> = frontier
            .iter()
            .flat_map(|s| transitions(spec, s))
            .filter(|t| !seen.contains(&t.target))
            .map(|t| (t.coupling, t.target))
            .collect();
        candidates.sort();

        let mut next = Vec::new();
        for (_, state) in candidates {
            if seen.insert(state.clone()) {
                next.push(state);
            }
        }
        if states.len() + next.len() > max_dimension {
            return Err(Error::DimensionCap { cap: max_dimension });
        }
        states.extend(next.iter().cloned());
        frontier = next;
    }
    Basis::from_states(states)
}

/// Photon count plus the excitation weight of the atomic level.
pub fn total_excitation(spec: &SystemSpec, state: &BasisState) -> i64 {
    i64::from(state.total_photons()) + spec.levels()[state.level].excitation_weight
}
