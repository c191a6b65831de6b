//! Gate identifiers and their parameter sets.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The gate catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    /// Four-photon double-lambda iSWAP on two dual-rail qubits.
    Iswap,
    /// Six-photon Fredkin gate with a two-level effective model.
    #[serde(alias = "fredkin2")]
    FredkinSlow,
    /// Fredkin gate with the intermediate `d` state tuned into resonance.
    #[serde(alias = "fredkin", alias = "fredkin3")]
    FredkinFast,
    /// Lambda-scheme x-rotation with a classical drive.
    Xrot,
    /// Dispersive z-rotation.
    Zrot,
}

impl Gate {
    pub const ALL: [Gate; 5] = [
        Gate::Iswap,
        Gate::FredkinSlow,
        Gate::FredkinFast,
        Gate::Xrot,
        Gate::Zrot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::Iswap => "iswap",
            Gate::FredkinSlow => "fredkin-slow",
            Gate::FredkinFast => "fredkin-fast",
            Gate::Xrot => "xrot",
            Gate::Zrot => "zrot",
        }
    }

    /// Number of logical qubits.
    pub fn arity(self) -> usize {
        match self {
            Gate::Iswap => 2,
            Gate::FredkinSlow | Gate::FredkinFast => 3,
            Gate::Xrot | Gate::Zrot => 1,
        }
    }

    pub fn is_fredkin(self) -> bool {
        matches!(self, Gate::FredkinSlow | Gate::FredkinFast)
    }

    pub fn coupling_names(self) -> &'static [&'static str] {
        match self {
            Gate::Iswap => &["g_ab", "g_bc", "g_cd", "g_da"],
            Gate::FredkinSlow | Gate::FredkinFast => {
                &["g_ab", "g_bc", "g_cd", "g_de", "g_ef", "g_fa"]
            }
            Gate::Xrot => &["g_ab", "g_bc", "omega"],
            Gate::Zrot => &["g"],
        }
    }

    /// Number of cumulative detunings Δ_1..Δ_k.
    pub fn detuning_count(self) -> usize {
        match self {
            Gate::Iswap => 4,
            Gate::FredkinSlow | Gate::FredkinFast => 6,
            Gate::Xrot => 3,
            Gate::Zrot => 1,
        }
    }

    /// 1-based indices of the detunings fixed by resonance conditions.
    pub fn free_detunings(self) -> &'static [usize] {
        match self {
            Gate::Iswap => &[4],
            Gate::FredkinSlow => &[6],
            Gate::FredkinFast => &[3, 6],
            Gate::Xrot => &[3],
            Gate::Zrot => &[],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iswap" => Ok(Gate::Iswap),
            "fredkin-slow" | "fredkin2" => Ok(Gate::FredkinSlow),
            "fredkin" | "fredkin-fast" | "fredkin3" => Ok(Gate::FredkinFast),
            "xrot" => Ok(Gate::Xrot),
            "zrot" => Ok(Gate::Zrot),
            other => Err(Error::Config(format!("unknown gate {other:?}"))),
        }
    }
}

/// A cumulative detuning: either given or left for the resonance solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Detuning {
    Fixed(f64),
    Auto,
}

impl Detuning {
    pub fn value(self) -> Option<f64> {
        match self {
            Detuning::Fixed(v) => Some(v),
            Detuning::Auto => None,
        }
    }
}

/// Coupling strengths (units of g) and cumulative detunings for one gate.
#[derive(Clone, Debug, PartialEq)]
pub struct GateParams {
    pub gate: Gate,
    pub couplings: BTreeMap<String, f64>,
    /// Δ_1..Δ_k, stored 0-based.
    pub detunings: Vec<Detuning>,
    /// Rotation angle: `g_eff t` for the x-rotation, the accumulated phase for
    /// the z-rotation.
    pub angle: Option<f64>,
}

impl GateParams {
    /// All couplings equal to `g`, all detunings left on `Auto`.
    pub fn uniform(gate: Gate, g: f64) -> Self {
        let mut couplings: BTreeMap<String, f64> = gate
            .coupling_names()
            .iter()
            .map(|n| ((*n).to_owned(), g))
            .collect();
        if gate == Gate::Xrot {
            // Ω/2 = g
            couplings.insert("omega".into(), 2.0 * g);
        }
        Self {
            gate,
            couplings,
            detunings: vec![Detuning::Auto; gate.detuning_count()],
            angle: None,
        }
    }

    /// Uniform couplings `g` with every non-free detuning set to `delta`.
    pub fn with_common_detuning(gate: Gate, g: f64, delta: f64) -> Self {
        let mut p = Self::uniform(gate, g);
        for j in 1..=gate.detuning_count() {
            if !gate.free_detunings().contains(&j) {
                p.detunings[j - 1] = Detuning::Fixed(delta);
            }
        }
        if gate == Gate::Xrot {
            p.angle = Some(PI / 2.0);
        }
        if gate == Gate::Zrot {
            p.angle = Some(PI / 2.0);
        }
        p
    }

    /// Parameters of the three-state Fredkin population plot: couplings `g`,
    /// Δ1 = Δ2 = Δ4 = Δ5 = 20g and Δ3, Δ6 left to the resonance solver.
    pub fn fredkin_reference() -> Self {
        Self::with_common_detuning(Gate::FredkinFast, 1.0, 20.0)
    }

    pub fn set_coupling(mut self, name: &str, value: f64) -> Self {
        self.couplings.insert(name.to_owned(), value);
        self
    }

    /// Sets Δ_j (1-based).
    pub fn set_detuning(mut self, j: usize, value: Detuning) -> Self {
        self.detunings[j - 1] = value;
        self
    }

    pub fn set_angle(mut self, angle: f64) -> Self {
        self.angle = Some(angle);
        self
    }

    pub fn coupling(&self, name: &str) -> Result<f64> {
        self.couplings
            .get(name)
            .copied()
            .ok_or_else(|| Error::Config(format!("{}: missing coupling {name:?}", self.gate)))
    }

    /// Δ_j (1-based); fails if it is still `Auto`.
    pub fn delta(&self, j: usize) -> Result<f64> {
        match self.detunings.get(j.wrapping_sub(1)) {
            Some(Detuning::Fixed(v)) => Ok(*v),
            Some(Detuning::Auto) => Err(Error::Config(format!(
                "{}: detuning delta{j} is unresolved (auto)",
                self.gate
            ))),
            None => Err(Error::Config(format!(
                "{}: missing detuning delta{j}",
                self.gate
            ))),
        }
    }

    pub fn deltas(&self) -> Result<Vec<f64>> {
        (1..=self.gate.detuning_count())
            .map(|j| self.delta(j))
            .collect()
    }

    pub fn angle(&self) -> Result<f64> {
        self.angle
            .ok_or_else(|| Error::Config(format!("{}: missing rotation angle", self.gate)))
    }

    pub fn is_resolved(&self) -> bool {
        self.detunings
            .iter()
            .all(|d| matches!(d, Detuning::Fixed(_)))
    }

    /// Checks names, counts and finiteness.
    pub fn validate(&self) -> Result<()> {
        let names = self.gate.coupling_names();
        for (name, v) in &self.couplings {
            if !names.contains(&name.as_str()) {
                return Err(Error::Config(format!(
                    "{}: unknown coupling {name:?} (expected one of {names:?})",
                    self.gate
                )));
            }
            if !v.is_finite() {
                return Err(Error::Config(format!(
                    "{}: coupling {name} is not finite",
                    self.gate
                )));
            }
        }
        for name in names {
            self.coupling(name)?;
        }
        if self.detunings.len() != self.gate.detuning_count() {
            return Err(Error::Config(format!(
                "{}: expected {} detunings, got {}",
                self.gate,
                self.gate.detuning_count(),
                self.detunings.len()
            )));
        }
        for (j, d) in self.detunings.iter().enumerate() {
            match d {
                Detuning::Fixed(v) if !v.is_finite() => {
                    return Err(Error::Config(format!(
                        "{}: delta{} is not finite",
                        self.gate,
                        j + 1
                    )))
                }
                Detuning::Auto if !self.gate.free_detunings().contains(&(j + 1)) => {
                    return Err(Error::Config(format!(
                        "{}: delta{} cannot be resonance-solved (free detunings are {:?})",
                        self.gate,
                        j + 1,
                        self.gate.free_detunings()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_names_round_trip() {
        for g in Gate::ALL {
            assert_eq!(g.name().parse::<Gate>().unwrap(), g);
        }
        assert_eq!("fredkin".parse::<Gate>().unwrap(), Gate::FredkinFast);
        assert!("cnot".parse::<Gate>().is_err());
    }

    #[test]
    fn reference_parameters() {
        let p = GateParams::fredkin_reference();
        p.validate().unwrap();
        assert_eq!(p.delta(1).unwrap(), 20.0);
        assert!(p.delta(3).is_err());
        assert!(!p.is_resolved());
    }

    #[test]
    fn auto_on_a_fixed_detuning_is_a_config_error() {
        let p = GateParams::with_common_detuning(Gate::Iswap, 1.0, 10.0)
            .set_detuning(2, Detuning::Auto);
        assert!(matches!(p.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn missing_and_unknown_couplings() {
        let mut p = GateParams::with_common_detuning(Gate::Iswap, 1.0, 10.0);
        p.couplings.remove("g_cd");
        assert!(matches!(p.validate(), Err(Error::Config(_))));
        let p = GateParams::with_common_detuning(Gate::Iswap, 1.0, 10.0).set_coupling("g_zz", 1.0);
        assert!(matches!(p.validate(), Err(Error::Config(_))));
    }
}
