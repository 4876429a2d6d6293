//! Klein-Gordon modes of the well `0 < z < v t` with walls at `z = 0` and
//! `z = v t`:
//! `phi = sin(k_n ln x) [cJ J_{i k_n}(m c y / hbar) + cY Y_{i k_n}(m c y / hbar)]`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::field::ScalarField;
use crate::lightcone::{log_ratio, wall_rapidity};
use crate::params::{PhysicalParams, SpacetimePoint};
use crate::special_fn::{bessel_j, bessel_y, Order};

/// Relative slack allowed outside `[0, v t]` before a point is rejected.
pub const WALL_PAD: f64 = 1e-9;

/// Largest step whose 5-point stencils around `p` stay inside `0 <= z <= v t`.
pub(crate) fn wall_clearance(p: SpacetimePoint, params: &PhysicalParams) -> f64 {
    // Time stencils move the right wall by 2 v h / c.
    let right = (params.v * p.t - p.z) * (params.c / params.v.abs()).min(1.0);
    0.4 * p.z.min(right).max(0.0)
}

/// `k_n = n pi / ln sqrt((c+v)/(c-v))`.
pub fn kn(n: u32, params: &PhysicalParams) -> Result<f64> {
    if n == 0 {
        return domain("mode index starts at 1");
    }
    params.require_quantizing()?;
    // n * (pi / ln x_wall) keeps k_n = n k_1 exact.
    Ok(n as f64 * (PI / wall_rapidity(params)?))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KgMode {
    pub n: u32,
    pub k_n: f64,
    pub c_j: Complex64,
    pub c_y: Complex64,
    #[serde(skip)]
    pub params: PhysicalParams,
}

impl KgMode {
    /// J-only mode (`cJ = 1`, `cY = 0`).
    pub fn new(n: u32, params: &PhysicalParams) -> Result<Self> {
        Ok(Self {
            n,
            k_n: kn(n, params)?,
            c_j: Complex64::new(1.0, 0.0),
            c_y: Complex64::new(0.0, 0.0),
            params: *params,
        })
    }

    pub fn with_mix(mut self, c_j: Complex64, c_y: Complex64) -> Self {
        self.c_j = c_j;
        self.c_y = c_y;
        self
    }

    pub fn order(&self) -> Order {
        Order::imaginary(self.k_n)
    }

    fn check(&self, p: SpacetimePoint) -> Result<()> {
        let wall = self.params.v * p.t;
        let pad = WALL_PAD * wall.abs();
        if !(p.t > 0.0) || p.z < -pad || p.z > wall + pad {
            return domain(format!(
                "point (z = {}, t = {}) is outside the well 0 <= z <= v t",
                p.z, p.t
            ));
        }
        Ok(())
    }

    /// The separated factor `sin(k_n ln x)`.
    pub fn angular(&self, p: SpacetimePoint) -> Result<f64> {
        self.check(p)?;
        Ok((self.k_n * log_ratio(p, self.params.c)?).sin())
    }

    /// The Bessel factor at interval `y`. For `m = 0` the Bessel equation
    /// degenerates to an Euler equation and the pair becomes `y^{+-i k_n}`.
    pub fn radial(&self, y: f64) -> Result<Complex64> {
        let p = &self.params;
        if p.m == 0.0 {
            let phase = Complex64::new(0.0, self.k_n * y.ln());
            return Ok(self.c_j * phase.exp() + self.c_y * (-phase).exp());
        }
        let arg = p.m * p.c * y / p.hbar;
        let mut out = self.c_j * bessel_j(self.order(), arg)?;
        if self.c_y != Complex64::new(0.0, 0.0) {
            out += self.c_y * bessel_y(self.order(), arg)?;
        }
        Ok(out)
    }

    pub fn value(&self, p: SpacetimePoint) -> Result<Complex64> {
        let s = self.angular(p)?;
        let ct = self.params.c * p.t;
        let y = ((ct - p.z) * (ct + p.z)).sqrt();
        Ok(self.radial(y)? * s)
    }

    /// Spatial step for 4th-order differences: `0.03` over the local
    /// wavenumber of the mode, capped by the default `3e-3` scaling and by
    /// the distance to the nearer wall so the stencil stays in the well.
    pub fn suggested_step(&self, p: SpacetimePoint) -> f64 {
        let pr = &self.params;
        let ct = pr.c * p.t;
        let y = ((ct - p.z) * (ct + p.z)).max(0.0).sqrt();
        let local = (ct + p.z.abs()) / y * (self.k_n / y + pr.m * pr.c / pr.hbar);
        (0.03 / local)
            .min(3e-3 * p.z.abs().max(ct).max(1.0))
            .min(wall_clearance(p, pr))
    }
}

pub fn kg_mode_value(mode: &KgMode, p: SpacetimePoint) -> Result<Complex64> {
    mode.value(p)
}

impl ScalarField for KgMode {
    fn value(&self, p: SpacetimePoint) -> Result<Complex64> {
        KgMode::value(self, p)
    }
}

/// Weighted sum of modes.
#[derive(Debug, Clone, Serialize)]
pub struct KgSuperposition {
    pub terms: Vec<(KgMode, Complex64)>,
}

pub fn kg_superposition(terms: Vec<(KgMode, Complex64)>) -> Result<KgSuperposition> {
    if terms.is_empty() {
        return Err(Error::Domain("superposition needs at least one mode".into()));
    }
    Ok(KgSuperposition { terms })
}

impl KgSuperposition {
    pub fn suggested_step(&self, p: SpacetimePoint) -> f64 {
        self.terms
            .iter()
            .map(|(m, _)| m.suggested_step(p))
            .fold(f64::INFINITY, f64::min)
    }
}

impl ScalarField for KgSuperposition {
    fn value(&self, p: SpacetimePoint) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (mode, w) in &self.terms {
            acc += mode.value(p)? * w;
        }
        Ok(acc)
    }
}
