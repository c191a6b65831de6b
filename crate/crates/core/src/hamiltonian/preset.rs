use crate::error::Result;
use crate::hamiltonian::{detuning_chain, ChainDirection, Diagonal, SystemSpec};
use crate::params::{Gate, GateParams};

/// Photon cutoff used by every preset. Two photons can share a mode in the
/// Fredkin scheme, so one is not enough.
pub const PRESET_CUTOFF: u32 = 2;

/// A preset system together with the frame operator that was removed to make
/// it time independent (if any).
#[derive(Clone, Debug)]
pub struct Preset {
    pub spec: SystemSpec,
    /// Diagonal generator `Θ` of the last frame change. Undoing it multiplies
    /// each amplitude by `exp(−i Θ_k t)`.
    pub frame: Option<Diagonal>,
}

impl Preset {
    pub fn new(params: &GateParams) -> Result<Self> {
        let spec = preset_spec(params.gate, params)?;
        let frame = match params.gate {
            Gate::FredkinSlow | Gate::FredkinFast => {
                // Θ2 = (n1 + n2 + n3 + n6 − σ_aa − σ_cc)(δ4 − δ1), δ4 − δ1 = −η
                let eta = fredkin_eta(params)?;
                let mut d = Diagonal::zeros(spec.modes().len(), spec.levels().len());
                for m in [0, 1, 2, 4] {
                    d.photon[m] = -eta;
                }
                d.level[0] = eta;
                d.level[2] = eta;
                Some(d)
            }
            _ => None,
        };
        Ok(Self { spec, frame })
    }
}

/// `η = Δ1 − Δ3 + Δ4`.
pub fn fredkin_eta(params: &GateParams) -> Result<f64> {
    Ok(params.delta(1)? - params.delta(3)? + params.delta(4)?)
}

/// Time-independent interaction-picture system for one of the gate presets.
///
/// Level `a` is always level 0. Mode lists:
/// * iSWAP: modes 1, 2, 3, 4 over levels a, b, c, d
/// * Fredkin: modes 1, 2, 3, 5, 6 over levels a..f (mode 4 never couples)
/// * x-rotation: modes 1, 2 over levels a, b, c plus a classical a–c drive
/// * z-rotation: mode 1 over levels a, b
pub fn preset_spec(gate: Gate, params: &GateParams) -> Result<SystemSpec> {
    let p = GateParams {
        gate,
        ..params.clone()
    };
    p.validate()?;
    let g = |name: &str| p.coupling(name);
    let d = p.deltas()?;
    let delta = |j: usize| d[j - 1];

    match gate {
        Gate::Iswap => SystemSpec::builder()
            .levels(["a", "b", "c", "d"])
            .mode("1", PRESET_CUTOFF)
            .mode("2", PRESET_CUTOFF)
            .mode("3", PRESET_CUTOFF)
            .mode("4", PRESET_CUTOFF)
            .cavity_coupling("b", "a", 0, g("g_ab")?)
            .cavity_coupling("b", "c", 1, g("g_bc")?)
            .cavity_coupling("d", "c", 2, g("g_cd")?)
            .cavity_coupling("d", "a", 3, g("g_da")?)
            .photon_energy(0, -delta(1))
            .photon_energy(1, delta(2) - delta(1))
            .photon_energy(2, delta(2) - delta(3))
            .photon_energy(3, delta(4) - delta(3))
            .build(),
        Gate::FredkinSlow | Gate::FredkinFast => {
            let eta = fredkin_eta(&p)?;
            SystemSpec::builder()
                .levels(["a", "b", "c", "d", "e", "f"])
                .mode("1", PRESET_CUTOFF)
                .mode("2", PRESET_CUTOFF)
                .mode("3", PRESET_CUTOFF)
                .mode("5", PRESET_CUTOFF)
                .mode("6", PRESET_CUTOFF)
                .cavity_coupling("b", "a", 0, g("g_ab")?)
                .cavity_coupling("b", "c", 1, g("g_bc")?)
                .cavity_coupling("d", "c", 2, g("g_cd")?)
                .cavity_coupling("d", "e", 0, g("g_de")?)
                .cavity_coupling("f", "e", 3, g("g_ef")?)
                .cavity_coupling("f", "a", 4, g("g_fa")?)
                .photon_energy(0, -delta(1) + eta)
                .photon_energy(1, delta(2) - delta(1) + eta)
                .photon_energy(2, delta(2) - delta(3) + eta)
                .photon_energy(3, delta(4) - delta(5))
                .photon_energy(4, delta(6) - delta(5) + eta)
                .level_energy("a", -eta)
                .level_energy("c", -eta)
                .build()
        }
        Gate::Xrot => {
            let small = detuning_chain(ChainDirection::BigToSmall, &d);
            let (d1, d2, d3) = (small[0], small[1], small[2]);
            // −δ1 n1 − δ2 n2 − (n1 − n2 + σ_cc − σ_aa) δ3 / 2
            SystemSpec::builder()
                .levels(["a", "b", "c"])
                .mode("1", PRESET_CUTOFF)
                .mode("2", PRESET_CUTOFF)
                .cavity_coupling("b", "a", 0, g("g_ab")?)
                .cavity_coupling("b", "c", 1, g("g_bc")?)
                .classical_coupling("a", "c", g("omega")? / 2.0)
                .photon_energy(0, -d1 - d3 / 2.0)
                .photon_energy(1, -d2 + d3 / 2.0)
                .level_energy("c", -d3 / 2.0)
                .level_energy("a", d3 / 2.0)
                .build()
        }
        Gate::Zrot => SystemSpec::builder()
            .levels(["a", "b"])
            .mode("1", PRESET_CUTOFF)
            .cavity_coupling("b", "a", 0, g("g")?)
            .level_energy("b", delta(1))
            .build(),
    }
}
