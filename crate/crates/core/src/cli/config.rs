use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{LogicalState, PhaseMode};
use crate::params::{Detuning, Gate, GateParams};

/// A detuning entry: a number or the token `"auto"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DetuningValue {
    Value(f64),
    Token(AutoToken),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutoToken {
    #[serde(rename = "auto")]
    Auto,
}

/// One name or several names swept together.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepParameter {
    One(String),
    Many(Vec<String>),
}

impl SweepParameter {
    pub fn names(&self) -> Vec<&str> {
        match self {
            SweepParameter::One(n) => vec![n.as_str()],
            SweepParameter::Many(v) => v.iter().map(String::as_str).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl SweepConfig {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points < 2 {
            return Err(Error::Config("sweep.points must be at least 2".into()));
        }
        if !(self.from.is_finite() && self.to.is_finite()) {
            return Err(Error::Config("sweep bounds must be finite".into()));
        }
        let n = self.points - 1;
        match self.scale {
            Scale::Linear => Ok((0..=n)
                .map(|k| self.from + (self.to - self.from) * k as f64 / n as f64)
                .collect()),
            Scale::Log => {
                if self.from <= 0.0 || self.to <= 0.0 {
                    return Err(Error::Config("log sweep bounds must be positive".into()));
                }
                let (a, b) = (self.from.ln(), self.to.ln());
                Ok((0..=n)
                    .map(|k| (a + (b - a) * k as f64 / n as f64).exp())
                    .collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Result<Vec<f64>> {
        if self.points < 2 || !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return Err(Error::Config(
                "time_grid needs points >= 2 and a finite, non-negative t_max".into(),
            ));
        }
        let n = (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|k| self.t_max * k as f64 / n)
            .collect())
    }
}

/// Contents of a JSON run configuration. Couplings default to 1 (the
/// x-rotation `omega` to 2), and free detunings default to `"auto"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gate: Gate,
    #[serde(default)]
    pub couplings: BTreeMap<String, f64>,
    #[serde(default)]
    pub detunings: BTreeMap<String, DetuningValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_grid: Option<TimeGrid>,
    #[serde(default)]
    pub measure: bool,
    #[serde(default)]
    pub phase_mode: PhaseMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Logical input for `run`, e.g. `"110"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    /// Rotation angle for the x- and z-rotations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    /// Refine two-level resonances on the full model.
    #[serde(default)]
    pub polish: bool,
    /// `g/2π` in Hz, for reporting times in seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_hz: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.base_params()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Parameters with every configured value applied and the free
    /// detunings possibly still `auto`.
    pub fn base_params(&self) -> Result<GateParams> {
        let gate = self.gate;
        let mut p = GateParams::uniform(gate, 1.0);
        for (name, &v) in &self.couplings {
            p = p.set_coupling(name, v);
        }
        for (name, value) in &self.detunings {
            let j = detuning_index(gate, name)?;
            p.detunings[j - 1] = match value {
                DetuningValue::Value(v) => Detuning::Fixed(*v),
                DetuningValue::Token(AutoToken::Auto) => Detuning::Auto,
            };
        }
        for j in 1..=gate.detuning_count() {
            if p.detunings[j - 1] == Detuning::Auto && !gate.free_detunings().contains(&j) {
                return Err(Error::Config(format!(
                    "detunings.delta{j} is required for {gate} and cannot be auto"
                )));
            }
        }
        p.angle = self.angle.or(match gate {
            Gate::Xrot | Gate::Zrot => Some(std::f64::consts::FRAC_PI_2),
            _ => None,
        });
        if let Some(s) = &self.sweep {
            for name in s.parameter.names() {
                if detuning_index(gate, name).is_err() && !gate.coupling_names().contains(&name) {
                    return Err(Error::Config(format!(
                        "sweep.parameter {name:?} is not a detuning or coupling of {gate}"
                    )));
                }
            }
            s.values()?;
        }
        if let Some(tg) = &self.time_grid {
            tg.times()?;
        }
        if let Some(g) = self.g_hz {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Config("g_hz must be positive".into()));
            }
        }
        p.validate()?;
        Ok(p)
    }

    /// The configured input, or the gate's canonical swapped input.
    pub fn logical_input(&self) -> Result<LogicalState> {
        let text = self.input.as_deref().unwrap_or(match self.gate {
            Gate::Iswap => "10",
            Gate::FredkinSlow | Gate::FredkinFast => "110",
            Gate::Xrot => "0",
            Gate::Zrot => "1",
        });
        let l: LogicalState = text.parse()?;
        if l.len() != self.gate.arity() {
            return Err(Error::Config(format!(
                "input {text:?} has {} bits, {} takes {}",
                l.len(),
                self.gate,
                self.gate.arity()
            )));
        }
        Ok(l)
    }
}

/// Sets a detuning (`deltaN`) or coupling by name.
pub(crate) fn set_named(p: GateParams, name: &str, value: f64) -> Result<GateParams> {
    match detuning_index(p.gate, name) {
        Ok(j) => Ok(p.set_detuning(j, Detuning::Fixed(value))),
        Err(_) if p.gate.coupling_names().contains(&name) => Ok(p.set_coupling(name, value)),
        Err(e) => Err(e),
    }
}

fn detuning_index(gate: Gate, name: &str) -> Result<usize> {
    name.strip_prefix("delta")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|j| (1..=gate.detuning_count()).contains(j))
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown detuning {name:?} for {gate} (expected delta1..delta{})",
                gate.detuning_count()
            ))
        })
}
