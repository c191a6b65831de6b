use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hilbert::BasisState;

/// An atomic level together with the excitation number it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLabel {
    pub name: String,
    pub excitation_weight: i64,
}

/// A quantised cavity mode, truncated at `cutoff` photons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mode {
    pub label: String,
    pub cutoff: u32,
}

/// What drives a transition: one of the cavity modes or a classical field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Drive {
    Cavity(usize),
    Classical,
}

/// A single dipole coupling `g (a σ_{upper,lower} + h.c.)`.
///
/// For a cavity drive the atom is promoted from `lower` to `upper` by
/// absorbing a photon from the mode. A classical drive carries no photon and
/// its strength is the half Rabi frequency `Ω/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub upper: usize,
    pub lower: usize,
    pub drive: Drive,
    pub strength: f64,
    pub phase: f64,
}

/// Diagonal energy: a constant plus linear combinations of photon numbers and
/// atomic level projectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonal {
    pub constant: f64,
    pub photon: Vec<f64>,
    pub level: Vec<f64>,
}

impl Diagonal {
    pub fn zeros(modes: usize, levels: usize) -> Self {
        Self {
            constant: 0.0,
            photon: vec![0.0; modes],
            level: vec![0.0; levels],
        }
    }

    pub fn evaluate(&self, state: &BasisState) -> f64 {
        let photons: f64 = self
            .photon
            .iter()
            .zip(&state.photons)
            .map(|(c, &n)| c * f64::from(n))
            .sum();
        self.constant + photons + self.level[state.level]
    }
}

/// Declarative description of an atom-cavity system.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    levels: Vec<LevelLabel>,
    modes: Vec<Mode>,
    couplings: Vec<Coupling>,
    diagonal: Diagonal,
}

impl SystemSpec {
    pub fn builder() -> SystemSpecBuilder {
        SystemSpecBuilder::default()
    }

    pub fn levels(&self) -> &[LevelLabel] {
        &self.levels
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn diagonal(&self) -> &Diagonal {
        &self.diagonal
    }

    pub fn level_index(&self, name: &str) -> Option<usize> {
        self.levels.iter().position(|l| l.name == name)
    }

    pub fn level_name(&self, index: usize) -> &str {
        &self.levels[index].name
    }

    /// Bare diagonal energy of `state`, before any re-zeroing.
    pub fn energy(&self, state: &BasisState) -> f64 {
        self.diagonal.evaluate(state)
    }

    /// Checks that `state` is well formed for this system.
    pub fn check_state(&self, state: &BasisState) -> Result<()> {
        if state.photons.len() != self.modes.len() {
            return Err(Error::Structural(format!(
                "state has {} photon numbers but the system has {} modes",
                state.photons.len(),
                self.modes.len()
            )));
        }
        if state.level >= self.levels.len() {
            return Err(Error::Structural(format!(
                "level index {} out of range",
                state.level
            )));
        }
        for (mode, (&n, m)) in state.photons.iter().zip(&self.modes).enumerate() {
            if n > m.cutoff {
                return Err(Error::Cutoff {
                    mode,
                    occupation: n,
                    cutoff: m.cutoff,
                });
            }
        }
        Ok(())
    }

    /// Renders a state as `|n0,n1,...;level⟩`.
    pub fn format_state(&self, state: &BasisState) -> String {
        let photons: Vec<String> = state.photons.iter().map(u32::to_string).collect();
        format!("|{};{}⟩", photons.join(","), self.level_name(state.level))
    }
}

#[derive(Default, Debug, Clone)]
pub struct SystemSpecBuilder {
    levels: Vec<String>,
    modes: Vec<Mode>,
    couplings: Vec<(String, String, Drive, f64, f64)>,
    constant: f64,
    photon_energy: Vec<(usize, f64)>,
    level_energy: Vec<(String, f64)>,
}

impl SystemSpecBuilder {
    pub fn level(mut self, name: &str) -> Self {
        self.levels.push(name.to_owned());
        self
    }

    pub fn levels<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Self {
        self.levels.extend(names.into_iter().map(str::to_owned));
        self
    }

    pub fn mode(mut self, label: &str, cutoff: u32) -> Self {
        self.modes.push(Mode {
            label: label.to_owned(),
            cutoff,
        });
        self
    }

    pub fn cavity_coupling(self, upper: &str, lower: &str, mode: usize, strength: f64) -> Self {
        self.coupling_with_phase(upper, lower, Drive::Cavity(mode), strength, 0.0)
    }

    /// `half_rabi` is `Ω/2`.
    pub fn classical_coupling(self, upper: &str, lower: &str, half_rabi: f64) -> Self {
        self.coupling_with_phase(upper, lower, Drive::Classical, half_rabi, 0.0)
    }

    pub fn coupling_with_phase(
        mut self,
        upper: &str,
        lower: &str,
        drive: Drive,
        strength: f64,
        phase: f64,
    ) -> Self {
        self.couplings
            .push((upper.to_owned(), lower.to_owned(), drive, strength, phase));
        self
    }

    pub fn constant_energy(mut self, value: f64) -> Self {
        self.constant += value;
        self
    }

    /// Adds `coefficient * n_mode` to the diagonal.
    pub fn photon_energy(mut self, mode: usize, coefficient: f64) -> Self {
        self.photon_energy.push((mode, coefficient));
        self
    }

    /// Adds `coefficient * σ_{level,level}` to the diagonal.
    pub fn level_energy(mut self, level: &str, coefficient: f64) -> Self {
        self.level_energy.push((level.to_owned(), coefficient));
        self
    }

    pub fn build(self) -> Result<SystemSpec> {
        if self.levels.is_empty() {
            return Err(Error::Spec("no atomic levels declared".into()));
        }
        for (i, name) in self.levels.iter().enumerate() {
            if self.levels[..i].contains(name) {
                return Err(Error::Spec(format!("duplicate level name {name:?}")));
            }
        }
        let lookup = |name: &str| {
            self.levels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Spec(format!("unknown level {name:?}")))
        };

        let mut couplings = Vec::with_capacity(self.couplings.len());
        for (upper, lower, drive, strength, phase) in &self.couplings {
            let upper = lookup(upper)?;
            let lower = lookup(lower)?;
            if upper == lower {
                return Err(Error::Spec(
                    "coupling must connect two distinct levels".into(),
                ));
            }
            if !strength.is_finite() || !phase.is_finite() {
                return Err(Error::Spec(
                    "coupling strength and phase must be finite".into(),
                ));
            }
            if let Drive::Cavity(m) = drive {
                if *m >= self.modes.len() {
                    return Err(Error::Spec(format!("coupling references unknown mode {m}")));
                }
            }
            couplings.push(Coupling {
                upper,
                lower,
                drive: *drive,
                strength: *strength,
                phase: *phase,
            });
        }

        let mut diagonal = Diagonal::zeros(self.modes.len(), self.levels.len());
        diagonal.constant = self.constant;
        for (mode, c) in &self.photon_energy {
            if *mode >= self.modes.len() {
                return Err(Error::Spec(format!(
                    "diagonal term references unknown mode {mode}"
                )));
            }
            diagonal.photon[*mode] += c;
        }
        for (level, c) in &self.level_energy {
            diagonal.level[lookup(level)?] += c;
        }
        let finite = diagonal.constant.is_finite()
            && diagonal.photon.iter().all(|c| c.is_finite())
            && diagonal.level.iter().all(|c| c.is_finite());
        if !finite {
            return Err(Error::Spec("diagonal coefficients must be finite".into()));
        }

        let weights = excitation_weights(self.levels.len(), &couplings)?;
        let levels = self
            .levels
            .into_iter()
            .zip(weights)
            .map(|(name, excitation_weight)| LevelLabel {
                name,
                excitation_weight,
            })
            .collect();

        Ok(SystemSpec {
            levels,
            modes: self.modes,
            couplings,
            diagonal,
        })
    }
}

/// Assigns each level the number of excitations it stores so that every
/// coupling conserves photons + atomic excitation. The first level of each
/// connected component gets weight 0.
fn excitation_weights(levels: usize, couplings: &[Coupling]) -> Result<Vec<i64>> {
    let mut weight: Vec<Option<i64>> = vec![None; levels];
    for root in 0..levels {
        if weight[root].is_some() {
            continue;
        }
        weight[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(level) = queue.pop_front() {
            let w = weight[level].expect("visited");
            for c in couplings {
                let step = match c.drive {
                    Drive::Cavity(_) => 1,
                    Drive::Classical => 0,
                };
                let (other, expected) = if c.lower == level {
                    (c.upper, w + step)
                } else if c.upper == level {
                    (c.lower, w - step)
                } else {
                    continue;
                };
                match weight[other] {
                    None => {
                        weight[other] = Some(expected);
                        queue.push_back(other);
                    }
                    Some(existing) if existing != expected => {
                        return Err(Error::Spec(
                            "couplings do not conserve any excitation number (inconsistent cycle)"
                                .into(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(weight
        .into_iter()
        .map(|w| w.expect("all levels visited"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_weights_follow_absorption() {
        let spec = SystemSpec::builder()
            .levels(["a", "b", "c"])
            .mode("1", 2)
            .mode("2", 2)
            .cavity_coupling("b", "a", 0, 1.0)
            .cavity_coupling("b", "c", 1, 1.0)
            .classical_coupling("a", "c", 0.5)
            .build()
            .unwrap();
        let w: Vec<i64> = spec.levels().iter().map(|l| l.excitation_weight).collect();
        assert_eq!(w, vec![0, 1, 0]);
    }

    #[test]
    fn odd_cycle_is_rejected() {
        // a -> b -> c absorbs two photons, but c -> a claims to absorb one more.
        let err = SystemSpec::builder()
            .levels(["a", "b", "c"])
            .mode("1", 2)
            .cavity_coupling("b", "a", 0, 1.0)
            .cavity_coupling("c", "b", 0, 1.0)
            .cavity_coupling("c", "a", 0, 1.0)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Spec(_)));
    }

    #[test]
    fn unknown_names_and_modes_are_rejected() {
        assert!(SystemSpec::builder().build().is_err());
        assert!(SystemSpec::builder().levels(["a", "a"]).build().is_err());
        assert!(SystemSpec::builder()
            .levels(["a", "b"])
            .cavity_coupling("b", "z", 0, 1.0)
            .mode("1", 1)
            .build()
            .is_err());
        assert!(SystemSpec::builder()
            .levels(["a", "b"])
            .cavity_coupling("b", "a", 3, 1.0)
            .build()
            .is_err());
        assert!(SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", 1)
            .cavity_coupling("b", "a", 0, f64::NAN)
            .build()
            .is_err());
    }

    #[test]
    fn diagonal_is_linear_in_occupations() {
        let spec = SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", 3)
            .mode("2", 3)
            .photon_energy(0, -2.0)
            .photon_energy(1, 0.5)
            .level_energy("b", 7.0)
            .constant_energy(1.0)
            .build()
            .unwrap();
        let s = BasisState::new(vec![2, 1], 1);
        assert_eq!(spec.energy(&s), 1.0 - 4.0 + 0.5 + 7.0);
    }
}
