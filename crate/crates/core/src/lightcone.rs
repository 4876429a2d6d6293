//! Light-cone coordinates `x = sqrt((ct+z)/(ct-z))`, `y = sqrt(c^2 t^2 - z^2)`
//! and their inverse.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::params::{PhysicalParams, SpacetimePoint};

/// Points closer than this fraction of `ct` to the light cone are rejected.
pub const CONE_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightConePoint {
    /// Dimensionless ratio coordinate; `ln x` is the rapidity `atanh(z/ct)`.
    pub x: f64,
    /// Invariant interval (length).
    pub y: f64,
}

fn check_inside(p: SpacetimePoint, c: f64) -> Result<f64> {
    let ct = c * p.t;
    if !(ct.is_finite() && p.z.is_finite()) || ct <= 0.0 || ct - p.z.abs() <= CONE_MARGIN * ct {
        return domain(format!(
            "point (z = {}, t = {}) is not strictly inside the forward light cone",
            p.z, p.t
        ));
    }
    Ok(ct)
}

pub fn to_lightcone(p: SpacetimePoint, c: f64) -> Result<LightConePoint> {
    let ct = check_inside(p, c)?;
    let (plus, minus) = (ct + p.z, ct - p.z);
    Ok(LightConePoint {
        x: (plus / minus).sqrt(),
        y: (plus * minus).sqrt(),
    })
}

/// `ln x` computed without forming `x`.
pub fn log_ratio(p: SpacetimePoint, c: f64) -> Result<f64> {
    let ct = check_inside(p, c)?;
    Ok((p.z / ct).atanh())
}

pub fn from_lightcone(q: LightConePoint, c: f64) -> Result<SpacetimePoint> {
    if !(q.x > 0.0 && q.y > 0.0 && q.x.is_finite() && q.y.is_finite()) {
        return domain(format!(
            "light-cone coordinates must be positive (x = {}, y = {})",
            q.x, q.y
        ));
    }
    let inv = q.x.recip();
    let z = 0.5 * q.y * (q.x - inv);
    let ct = 0.5 * q.y * (q.x + inv);
    Ok(SpacetimePoint::new(z, ct / c))
}

/// Image `sqrt((c+v)/(c-v))` of the moving wall `z = v t`.
///
/// `v = 0` returns 1, where both walls coincide; callers that quantize
/// modes reject it through [`PhysicalParams::require_quantizing`].
pub fn wall_image(params: &PhysicalParams) -> Result<f64> {
    let (v, c) = (params.v, params.c);
    if !(v.abs() < c) {
        return domain(format!("wall image needs |v| < c (v = {v}, c = {c})"));
    }
    Ok(((c + v) / (c - v)).sqrt())
}

/// `ln x_wall = atanh(v/c)`, the wall rapidity.
pub fn wall_rapidity(params: &PhysicalParams) -> Result<f64> {
    wall_image(params)?;
    Ok((params.v / params.c).atanh())
}

/// Partial derivatives of the map at `p`:
/// `[[dx/dz, dx/dt], [dy/dz, dy/dt]]`.
pub fn jacobian(p: SpacetimePoint, c: f64) -> Result<[[f64; 2]; 2]> {
    let q = to_lightcone(p, c)?;
    let ct = c * p.t;
    let y2 = q.y * q.y;
    Ok([
        [q.x * ct / y2, -q.x * c * p.z / y2],
        [-p.z / q.y, c * ct / q.y],
    ])
}
