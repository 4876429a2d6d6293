//! Physical constants of the well, spacetime points, spinor samples and the
//! natural-unit rescaling used by the numerics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// How the right wall of the moving well is placed in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WallConvention {
    /// `L0 = v t0`, so the free region is `[0, v t]`. Closed-form modes only
    /// exist in this convention.
    #[default]
    LightCone,
    /// Free region `0 < z < L0 + v t - v t0`.
    Shifted,
}

/// Which kinematic regime the wall speed puts the problem in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `0 < v < c`: the expanding well where modes can be quantized.
    Quantizing,
    /// `v = 0`: both walls at rest.
    Static,
    /// `-c <= v < 0` or `v >= c`.
    Other,
    /// `v < -c`: the wall is built or collapses faster than light.
    Superluminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ParamsRepr")]
pub struct PhysicalParams {
    /// Rest mass.
    pub m: f64,
    pub hbar: f64,
    pub c: f64,
    /// Depth of the outer potential (energy).
    #[serde(rename = "V0")]
    pub v0: f64,
    /// Initial width of the well.
    #[serde(rename = "L0")]
    pub l0: f64,
    /// Wall speed.
    pub v: f64,
    /// Moment the wall starts moving.
    pub t0: f64,
    pub convention: WallConvention,
}

/// On-disk form: `V0` may be omitted or null (an infinite well), and an
/// omitted convention is light-cone exactly when `L0 = v t0`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsRepr {
    m: f64,
    hbar: f64,
    c: f64,
    #[serde(rename = "V0", default)]
    v0: Option<f64>,
    #[serde(rename = "L0")]
    l0: f64,
    v: f64,
    t0: f64,
    #[serde(default)]
    convention: Option<WallConvention>,
}

impl From<ParamsRepr> for PhysicalParams {
    fn from(r: ParamsRepr) -> Self {
        let inferred = if r.l0 == r.v * r.t0 {
            WallConvention::LightCone
        } else {
            WallConvention::Shifted
        };
        Self {
            m: r.m,
            hbar: r.hbar,
            c: r.c,
            v0: r.v0.unwrap_or(f64::INFINITY),
            l0: r.l0,
            v: r.v,
            t0: r.t0,
            convention: r.convention.unwrap_or(inferred),
        }
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::natural(0.0, 1.0, 0.6, 1.0)
    }
}

impl PhysicalParams {
    /// Natural units (`m = hbar = c = 1`) with the light-cone convention,
    /// `L0 = v t0`.
    pub fn natural(v0: f64, l0: f64, v: f64, t0: f64) -> Self {
        Self {
            m: 1.0,
            hbar: 1.0,
            c: 1.0,
            v0,
            l0,
            v,
            t0,
            convention: WallConvention::Shifted,
        }
        .with_lightcone_if_consistent()
    }

    /// Static-well parameters in natural units.
    pub fn static_well(v0: f64, l0: f64) -> Self {
        Self {
            m: 1.0,
            hbar: 1.0,
            c: 1.0,
            v0,
            l0,
            v: 0.0,
            t0: 0.0,
            convention: WallConvention::Shifted,
        }
    }

    /// Moving-wall parameters in the light-cone convention; `L0` is set to
    /// `v t0` exactly.
    pub fn moving_wall(m: f64, hbar: f64, c: f64, v: f64, t0: f64) -> Self {
        Self {
            m,
            hbar,
            c,
            v0: f64::INFINITY,
            l0: v * t0,
            v,
            t0,
            convention: WallConvention::LightCone,
        }
    }

    /// Rescaling rounds `L0` and `v t0` differently; the light-cone
    /// convention needs them bit-equal.
    fn with_exact_lightcone(mut self) -> Self {
        if self.convention == WallConvention::LightCone {
            self.l0 = self.v * self.t0;
        }
        self
    }

    fn with_lightcone_if_consistent(mut self) -> Self {
        if self.l0 == self.v * self.t0 {
            self.convention = WallConvention::LightCone;
        }
        self
    }

    pub fn mc2(&self) -> f64 {
        self.m * self.c * self.c
    }

    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }

    pub fn regime(&self) -> Regime {
        let v = self.v;
        if v == 0.0 {
            Regime::Static
        } else if v > 0.0 && v < self.c {
            Regime::Quantizing
        } else if v < -self.c {
            Regime::Superluminal
        } else {
            Regime::Other
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.m, self.hbar, self.c, self.l0, self.v, self.t0]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.v0.is_nan() {
            return domain("physical parameters must be finite");
        }
        if self.m < 0.0 {
            return domain(format!("mass must be non-negative, got {}", self.m));
        }
        if self.hbar <= 0.0 || self.c <= 0.0 {
            return domain("hbar and c must be positive");
        }
        if self.l0 <= 0.0 {
            return domain(format!("initial width L0 must be positive, got {}", self.l0));
        }
        if self.convention == WallConvention::LightCone && self.l0 != self.v * self.t0 {
            return domain(format!(
                "light-cone convention requires L0 = v t0 exactly (L0 = {}, v t0 = {})",
                self.l0,
                self.v * self.t0
            ));
        }
        Ok(())
    }

    /// Validates and additionally requires `0 < v < c`.
    pub fn require_quantizing(&self) -> Result<()> {
        self.validate()?;
        match self.regime() {
            Regime::Quantizing => Ok(()),
            Regime::Static => Err(Error::DegenerateGeometry(
                "v = 0: both walls sit at x = 1 and ln x_wall = 0".into(),
            )),
            _ => domain(format!(
                "mode quantization needs 0 < v < c (v = {}, c = {})",
                self.v, self.c
            )),
        }
    }

    /// Position of the right wall at time `t`.
    pub fn right_wall(&self, t: f64) -> f64 {
        match self.convention {
            WallConvention::LightCone => self.v * t,
            WallConvention::Shifted => self.l0 + self.v * (t - self.t0),
        }
    }
}

/// Scale factors mapping natural-unit quantities back to user units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitScales {
    pub energy: f64,
    pub length: f64,
    pub time: f64,
    pub hbar: f64,
    pub c: f64,
}

impl UnitScales {
    pub fn momentum(&self) -> f64 {
        self.energy / self.c
    }
}

/// Parameters expressed with `hbar = c = 1` and `m` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalUnits {
    pub params: PhysicalParams,
    pub scales: UnitScales,
}

impl NaturalUnits {
    /// Inverse of [`natural_units`].
    pub fn restore(&self) -> PhysicalParams {
        let s = &self.scales;
        let p = &self.params;
        PhysicalParams {
            m: p.m * s.energy / (s.c * s.c),
            hbar: s.hbar,
            c: s.c,
            v0: p.v0 * s.energy,
            l0: p.l0 * s.length,
            v: p.v * s.c,
            t0: p.t0 * s.time,
            convention: p.convention,
        }
        .with_exact_lightcone()
    }
}

/// Rescales to natural units. The energy unit is `m c^2` for massive
/// particles and `hbar c / L0` for massless ones.
pub fn natural_units(params: &PhysicalParams) -> NaturalUnits {
    let energy = if params.m > 0.0 {
        params.mc2()
    } else {
        params.hbar_c() / params.l0
    };
    let length = params.hbar_c() / energy;
    let time = params.hbar / energy;
    let scales = UnitScales {
        energy,
        length,
        time,
        hbar: params.hbar,
        c: params.c,
    };
    let natural = PhysicalParams {
        m: if params.m > 0.0 { 1.0 } else { 0.0 },
        hbar: 1.0,
        c: 1.0,
        v0: params.v0 / energy,
        l0: params.l0 / length,
        v: params.v / params.c,
        t0: params.t0 / time,
        convention: params.convention,
    }
    .with_exact_lightcone();
    NaturalUnits {
        params: natural,
        scales,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimePoint {
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(z: f64, t: f64) -> Self {
        Self { z, t }
    }

    pub fn shifted(&self, dz: f64, dt: f64) -> Self {
        Self {
            z: self.z + dz,
            t: self.t + dt,
        }
    }
}

/// The two non-vanishing components of an up-spin spinor moving along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub phi0: Complex64,
    pub phi2: Complex64,
}

impl SpinorSample {
    pub const ZERO: SpinorSample = SpinorSample {
        phi0: Complex64::new(0.0, 0.0),
        phi2: Complex64::new(0.0, 0.0),
    };

    pub fn new(phi0: Complex64, phi2: Complex64) -> Self {
        Self { phi0, phi2 }
    }

    pub fn is_finite(&self) -> bool {
        self.phi0.is_finite() && self.phi2.is_finite()
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self::new(self.phi0 * a, self.phi2 * a)
    }

    pub fn add(&self, o: &SpinorSample) -> Self {
        Self::new(self.phi0 + o.phi0, self.phi2 + o.phi2)
    }

    /// `(phi0 + phi2, phi0 - phi2)`.
    pub fn to_u_pair(&self) -> (Complex64, Complex64) {
        (self.phi0 + self.phi2, self.phi0 - self.phi2)
    }

    pub fn from_u_pair(u1: Complex64, u2: Complex64) -> Self {
        Self::new((u1 + u2) * 0.5, (u1 - u2) * 0.5)
    }
}
