//! Simulation and analysis of multiphoton resonances between multi-level
//! atoms and multi-mode cavities, with dual-rail photonic quantum gates built
//! on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`hilbert`] enumerates the reachable Fock ⊗ atom subspace of a system.
//! * [`hamiltonian`] builds interaction-picture Hamiltonians, including the
//!   iSWAP, Fredkin and single-qubit rotation presets.
//! * [`effective`] performs the P/Q Schur-complement reduction, evaluates the
//!   closed-form effective parameters and solves resonance conditions.
//! * [`dynamics`] propagates state vectors exactly and provides the analytic
//!   two- and three-level solutions, fidelities and atomic post-selection.
//! * [`gates`] maps logical dual-rail qubits onto cavity states and runs the
//!   gate catalogue end to end.
//! * [`cli`] is the configuration and CSV layer behind the `multiphoton`
//!   binary.
//!
//! Energies are measured in units of a reference coupling `g` and times in
//! units of `1/g`.

pub mod cli;
pub mod dynamics;
pub mod effective;
pub mod error;
pub mod gates;
pub mod hamiltonian;
pub mod hilbert;
pub mod params;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
