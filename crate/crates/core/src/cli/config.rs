//! Run configuration read from TOML. Every table rejects unknown keys.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use crate::error::{domain, Result};
use crate::params::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A complex number written as `[re, im]`.
pub type Pair = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    /// Physical constants. Each command fills in its own defaults when the
    /// table is absent, and the filled-in values are echoed in the output.
    pub params: Option<PhysicalParams>,
    pub bound_states: BoundStatesConfig,
    pub scatter: ScatterConfig,
    pub kg_modes: KgModesConfig,
    pub dirac_modes: DiracModesConfig,
    pub momentum: MomentumConfig,
    pub verify: VerifyConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            out: None,
            threads: None,
            seed: 0,
            params: None,
            bound_states: Default::default(),
            scatter: Default::default(),
            kg_modes: Default::default(),
            dirac_modes: Default::default(),
            momentum: Default::default(),
            verify: Default::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct BoundStatesConfig {
    pub scan_points: usize,
    /// Also list the nonrelativistic finite-well energies for comparison.
    pub compare_schrodinger: bool,
}

impl Default for BoundStatesConfig {
    fn default() -> Self {
        Self {
            scan_points: 2000,
            compare_schrodinger: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ScatterConfig {
    pub e_min: f64,
    pub e_max: f64,
    pub n: usize,
}

impl Default for ScatterConfig {
    fn default() -> Self {
        Self {
            e_min: 1.6,
            e_max: 5.0,
            n: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct KgModesConfig {
    pub modes: Vec<u32>,
    pub t_min: f64,
    pub t_max: f64,
    pub nz: usize,
    pub nt: usize,
    pub c_j: Pair,
    pub c_y: Pair,
}

impl Default for KgModesConfig {
    fn default() -> Self {
        Self {
            modes: vec![1, 2, 3],
            t_min: 1.0,
            t_max: 2.0,
            nz: 17,
            nt: 5,
            c_j: [1.0, 0.0],
            c_y: [0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DiracFamily {
    /// `U1 = sin(k_n ln x) J_{i k_n}` in the expanding well.
    #[default]
    Quantized,
    /// The real-integer-order example on `|z| < c t0`.
    Superluminal,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DiracModesConfig {
    pub family: DiracFamily,
    pub modes: Vec<u32>,
    pub t_min: f64,
    pub t_max: f64,
    pub nz: usize,
    pub nt: usize,
    pub c_j: Pair,
    pub c_y: Pair,
    /// Order and amplitude of the real-order example.
    pub nu: u32,
    pub c1: Pair,
}

impl Default for DiracModesConfig {
    fn default() -> Self {
        Self {
            family: DiracFamily::Quantized,
            modes: vec![1, 2],
            t_min: 1.0,
            t_max: 2.0,
            nz: 17,
            nt: 5,
            c_j: [1.0, 0.0],
            c_y: [0.0, 0.0],
            nu: 1,
            c1: [1.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MomentumField {
    #[default]
    Superluminal,
    /// Free plane wave `exp(i k z)`, a control whose `<p>` is real.
    PlaneWave,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MomentumConfig {
    pub field: MomentumField,
    /// Interval as fractions of `c t0` for the example, absolute otherwise.
    pub z_lo: f64,
    pub z_hi: f64,
    pub n_points: usize,
    pub nu: u32,
    pub c1: Pair,
    pub k: f64,
}

impl Default for MomentumConfig {
    fn default() -> Self {
        Self {
            field: MomentumField::Superluminal,
            z_lo: 0.05,
            z_hi: 0.95,
            n_points: crate::observables::MOMENTUM_POINTS,
            nu: 1,
            c1: [1.0, 0.0],
            k: 2.0 * std::f64::consts::PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum VerifyStencil {
    #[default]
    Fourth,
    /// Deliberately low-order stencil; the order check must catch it.
    Second,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub stencil: VerifyStencil,
    /// Random cases per property check.
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            stencil: VerifyStencil::Fourth,
            cases: 32,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn validate(&self) -> Result<()> {
        if self.threads == Some(0) {
            return domain("threads must be at least 1");
        }
        let s = &self.scatter;
        if !(s.e_min <= s.e_max) || s.n == 0 {
            return domain("scatter needs e_min <= e_max and n >= 1");
        }
        for (name, t0, t1, nz, nt) in [
            ("kg_modes", self.kg_modes.t_min, self.kg_modes.t_max, self.kg_modes.nz, self.kg_modes.nt),
            ("dirac_modes", self.dirac_modes.t_min, self.dirac_modes.t_max, self.dirac_modes.nz, self.dirac_modes.nt),
        ] {
            if !(t0 > 0.0 && t0 <= t1) || nz < 3 || nt < 1 {
                return domain(format!("{name} needs 0 < t_min <= t_max, nz >= 3, nt >= 1"));
            }
        }
        if self.kg_modes.modes.iter().chain(&self.dirac_modes.modes).any(|&n| n == 0) {
            return domain("mode indices start at 1");
        }
        if self.verify.cases == 0 {
            return domain("verify.cases must be at least 1");
        }
        if self.bound_states.scan_points < 2 {
            return domain("bound_states.scan_points must be at least 2");
        }
        let m = &self.momentum;
        if !(m.z_lo < m.z_hi) || m.n_points < 17 || m.n_points.is_multiple_of(2) {
            return domain("momentum needs z_lo < z_hi and an odd n_points >= 17");
        }
        Ok(())
    }
}
