//! Dirac modes of the moving-wall well through `U1 = phi0 + phi2`,
//! `U2 = phi0 - phi2`:
//!
//! `U1 = x^nu [d1 J_nu + d2 Y_nu] + x^-nu [d3 J_nu + d4 Y_nu]`,
//! `U2 = i x^(nu-1) [d1 J_(nu-1) + d2 Y_(nu-1)] - i x^(-nu-1) [d3 J_(nu+1) + d4 Y_(nu+1)]`,
//!
//! all Bessel functions taken at `m c y / hbar`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::field::{ScalarField, SpinorField};
use crate::kg_moving::{kn, wall_clearance, WALL_PAD};
use crate::lightcone::log_ratio;
use crate::params::{PhysicalParams, SpacetimePoint, SpinorSample};
use crate::special_fn::{bessel_j, bessel_y, Order};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Where a mode may be sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeDomain {
    /// Anywhere strictly inside the forward light cone.
    LightCone,
    /// Inside the well `0 <= z <= v t`.
    Well,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiracMovingMode {
    pub nu: Complex64,
    /// Collapsed coefficients `c1 c2, c1 c3, c4 c5, c4 c6`.
    pub d: [Complex64; 4],
    pub domain: ModeDomain,
    #[serde(skip)]
    pub params: PhysicalParams,
}

fn require_mass(params: &PhysicalParams) -> Result<()> {
    if !(params.m > 0.0 && params.m.is_finite()) {
        return domain("moving-well Dirac modes need m > 0");
    }
    if !(params.hbar > 0.0 && params.c > 0.0) {
        return domain("hbar and c must be positive");
    }
    Ok(())
}

/// Bessel pair `d_a J_order + d_b Y_order`, skipping Y when unused.
fn cylinder(order: Complex64, arg: f64, da: Complex64, db: Complex64) -> Result<Complex64> {
    let mut out = ZERO;
    if da != ZERO {
        out += da * bessel_j(Order(order), arg)?;
    }
    if db != ZERO {
        out += db * bessel_y(Order(order), arg)?;
    }
    Ok(out)
}

impl DiracMovingMode {
    pub fn new(nu: impl Into<Order>, d: [Complex64; 4], params: &PhysicalParams) -> Result<Self> {
        require_mass(params)?;
        let nu = nu.into().0;
        if !nu.is_finite() || d.iter().any(|c| !c.is_finite()) {
            return domain("order and coefficients must be finite");
        }
        Ok(Self {
            nu,
            d,
            domain: ModeDomain::LightCone,
            params: *params,
        })
    }

    fn coords(&self, p: SpacetimePoint) -> Result<(f64, f64)> {
        let lnx = log_ratio(p, self.params.c)?;
        if self.domain == ModeDomain::Well {
            let wall = self.params.v * p.t;
            let pad = WALL_PAD * wall.abs();
            if p.z < -pad || p.z > wall + pad {
                return domain(format!(
                    "point (z = {}, t = {}) is outside the well 0 <= z <= v t",
                    p.z, p.t
                ));
            }
        }
        let ct = self.params.c * p.t;
        let y = ((ct - p.z) * (ct + p.z)).sqrt();
        let pr = &self.params;
        Ok((lnx, pr.m * pr.c * y / pr.hbar))
    }

    pub fn u1(&self, p: SpacetimePoint) -> Result<Complex64> {
        let (lnx, arg) = self.coords(p)?;
        let [d1, d2, d3, d4] = self.d;
        let up = (self.nu * lnx).exp();
        let down = (-self.nu * lnx).exp();
        let mut out = ZERO;
        if d1 != ZERO || d2 != ZERO {
            out += up * cylinder(self.nu, arg, d1, d2)?;
        }
        if d3 != ZERO || d4 != ZERO {
            out += down * cylinder(self.nu, arg, d3, d4)?;
        }
        Ok(out)
    }

    pub fn u2(&self, p: SpacetimePoint) -> Result<Complex64> {
        let (lnx, arg) = self.coords(p)?;
        let [d1, d2, d3, d4] = self.d;
        let mut out = ZERO;
        if d1 != ZERO || d2 != ZERO {
            let up = ((self.nu - 1.0) * lnx).exp();
            out += I * up * cylinder(self.nu - 1.0, arg, d1, d2)?;
        }
        if d3 != ZERO || d4 != ZERO {
            let down = ((-self.nu - 1.0) * lnx).exp();
            out -= I * down * cylinder(self.nu + 1.0, arg, d3, d4)?;
        }
        Ok(out)
    }

    pub fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        Ok(SpinorSample::from_u_pair(self.u1(p)?, self.u2(p)?))
    }

    /// Spatial step for 4th-order differences of this mode; inside the well
    /// it also keeps the stencil off the walls.
    pub fn suggested_step(&self, p: SpacetimePoint) -> f64 {
        let pr = &self.params;
        let ct = pr.c * p.t;
        let y = ((ct - p.z) * (ct + p.z)).max(0.0).sqrt();
        let nu = self.nu.norm() + 1.0;
        let local = (ct + p.z.abs()) / y * (nu / y + pr.m * pr.c / pr.hbar);
        let h = (0.02 / local).min(3e-3 * p.z.abs().max(ct).max(1.0));
        match self.domain {
            ModeDomain::Well => h.min(wall_clearance(p, pr)),
            ModeDomain::LightCone => h,
        }
    }

    /// `U1` as a scalar field.
    pub fn u1_field(&self) -> impl ScalarField + '_ {
        move |p: SpacetimePoint| self.u1(p)
    }
}

pub fn u1_value(mode: &DiracMovingMode, p: SpacetimePoint) -> Result<Complex64> {
    mode.u1(p)
}

pub fn u2_value(mode: &DiracMovingMode, p: SpacetimePoint) -> Result<Complex64> {
    mode.u2(p)
}

pub fn spinor_value(mode: &DiracMovingMode, p: SpacetimePoint) -> Result<SpinorSample> {
    mode.spinor(p)
}

impl SpinorField for DiracMovingMode {
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        DiracMovingMode::spinor(self, p)
    }
}

/// Mode `n` of the well with `U1 = sin(k_n ln x) J_{i k_n}(m c y / hbar)`,
/// which vanishes on `x = 1` and `x = x_wall`.
pub fn quantized_dirac_mode(n: u32, params: &PhysicalParams) -> Result<DiracMovingMode> {
    quantized_dirac_mode_mixed(n, params, Complex64::new(1.0, 0.0), ZERO)
}

/// As [`quantized_dirac_mode`] with the radial factor `cJ J + cY Y`.
pub fn quantized_dirac_mode_mixed(
    n: u32,
    params: &PhysicalParams,
    c_j: Complex64,
    c_y: Complex64,
) -> Result<DiracMovingMode> {
    require_mass(params)?;
    let k = kn(n, params)?;
    let half = Complex64::new(0.0, 0.5);
    let mut mode = DiracMovingMode::new(
        Order::imaginary(k),
        [-half * c_j, -half * c_y, half * c_j, half * c_y],
        params,
    )?;
    mode.domain = ModeDomain::Well;
    Ok(mode)
}

/// The real-integer-order field
/// `phi0 = (c1/2)[x^nu J_nu + i x^(nu-1) J_(nu-1)]`,
/// `phi2 = (c1/2)[x^nu J_nu - i x^(nu-1) J_(nu-1)]`,
/// meant for `t = t0` on `|z| < c t0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuperluminalExample {
    pub mode: DiracMovingMode,
    pub t0: f64,
}

pub fn superluminal_example(params: &PhysicalParams, nu: u32, c1: Complex64) -> Result<SuperluminalExample> {
    if nu == 0 {
        return domain("the example needs a positive integer order");
    }
    if !(params.t0 > 0.0) {
        return domain(format!("t0 must be positive, got {}", params.t0));
    }
    let mode = DiracMovingMode::new(nu as f64, [c1, ZERO, ZERO, ZERO], params)?;
    Ok(SuperluminalExample {
        mode,
        t0: params.t0,
    })
}

impl SuperluminalExample {
    /// The spinor at `(z, t0)`.
    pub fn at(&self, z: f64) -> Result<SpinorSample> {
        let ct0 = self.mode.params.c * self.t0;
        if !(z.abs() < ct0) {
            return domain(format!("|z| = {} must stay below c t0 = {ct0}", z.abs()));
        }
        self.mode.spinor(SpacetimePoint::new(z, self.t0))
    }
}

impl SpinorField for SuperluminalExample {
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        self.mode.spinor(p)
    }
}
