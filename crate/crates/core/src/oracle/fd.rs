//! Finite-difference residuals of the Klein-Gordon and Dirac operators.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{ScalarField, SpinorField};
use crate::params::{PhysicalParams, SpacetimePoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Magnitude floor for the relative residual denominators.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdeKind {
    /// `hbar^2 f_tt - hbar^2 c^2 f_zz + m^2 c^4 f = 0` on a scalar field.
    KleinGordon,
    /// The coupled first-order system for `(phi0, phi2)`, with the potential.
    DiracSystem,
    /// The same system rewritten for `U1 = phi0 + phi2`, `U2 = phi0 - phi2`
    /// (free region only).
    USystem,
    /// Klein-Gordon applied to `U1 = phi0 + phi2` of a spinor field.
    KgOnU1,
}

/// Step-function potential of the static well, or none.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Potential {
    Free,
    /// `V0` for `z <= 0` and `z >= L0`, zero in between.
    Well { v0: f64, l0: f64 },
}

impl Potential {
    pub fn at(&self, z: f64) -> f64 {
        match *self {
            Potential::Free => 0.0,
            Potential::Well { v0, l0 } => {
                if z <= 0.0 || z >= l0 {
                    v0
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pde {
    pub kind: PdeKind,
    pub m: f64,
    pub hbar: f64,
    pub c: f64,
    pub potential: Potential,
}

impl Pde {
    pub fn new(kind: PdeKind, params: &PhysicalParams) -> Self {
        Self {
            kind,
            m: params.m,
            hbar: params.hbar,
            c: params.c,
            potential: Potential::Free,
        }
    }

    pub fn with_potential(mut self, potential: Potential) -> Self {
        self.potential = potential;
        self
    }
}

/// The field handed to [`fd_residual`]; the PDE kind fixes which variant
/// is accepted.
#[derive(Clone, Copy)]
pub enum Sampler<'a> {
    Scalar(&'a dyn ScalarField),
    Pair(&'a dyn SpinorField),
}

/// How the finite-difference step is chosen. The time step is `h / c`.
#[derive(Clone)]
pub enum HPolicy {
    Fixed(f64),
    /// `h = max(|coordinate|, 1) * factor`, per axis.
    Scaled(f64),
    /// Caller-supplied spatial step per point.
    Local(Arc<dyn Fn(SpacetimePoint) -> f64 + Send + Sync>),
}

impl Default for HPolicy {
    fn default() -> Self {
        HPolicy::Scaled(3e-3)
    }
}

impl std::fmt::Debug for HPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HPolicy::Fixed(h) => write!(f, "Fixed({h})"),
            HPolicy::Scaled(s) => write!(f, "Scaled({s})"),
            HPolicy::Local(_) => write!(f, "Local(..)"),
        }
    }
}

impl HPolicy {
    fn steps(&self, p: SpacetimePoint, c: f64) -> (f64, f64) {
        match self {
            HPolicy::Fixed(h) => (*h, *h / c),
            HPolicy::Scaled(s) => (p.z.abs().max(1.0) * s, (c * p.t).abs().max(1.0) * s / c),
            HPolicy::Local(f) => {
                let h = f(p);
                (h, h / c)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StencilOrder {
    Second,
    #[default]
    Fourth,
}

/// A set of `(z, t)` evaluation points.
#[derive(Debug, Clone, Serialize)]
pub struct SpacetimeGrid {
    pub label: String,
    pub points: Vec<SpacetimePoint>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n && n > 1 { hi } else { lo + step * i as f64 })
}

impl SpacetimeGrid {
    pub fn rect(z: (f64, f64), t: (f64, f64), nz: usize, nt: usize) -> Self {
        let points = linspace(t.0, t.1, nt)
            .flat_map(|tt| linspace(z.0, z.1, nz).map(move |zz| SpacetimePoint::new(zz, tt)))
            .collect();
        Self {
            label: format!("rect z=[{}, {}] x {nz}, t=[{}, {}] x {nt}", z.0, z.1, t.0, t.1),
            points,
        }
    }

    /// Points of the slab `margin * v t <= z <= (1 - margin) v t`.
    pub fn well_interior(v: f64, t: (f64, f64), nz: usize, nt: usize, margin: f64) -> Self {
        let points = linspace(t.0, t.1, nt)
            .flat_map(|tt| {
                let w = v * tt;
                linspace(margin * w, (1.0 - margin) * w, nz).map(move |zz| SpacetimePoint::new(zz, tt))
            })
            .collect();
        Self {
            label: format!("well interior v={v}, t=[{}, {}], {nz} x {nt}, margin {margin}", t.0, t.1),
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub kind: PdeKind,
    pub grid: String,
    pub points: usize,
    pub max_rel_residual: f64,
    pub mean_rel_residual: f64,
    /// Up to ten worst points, largest first.
    pub worst: Vec<(SpacetimePoint, f64)>,
}

#[derive(Clone, Copy)]
struct Stencil {
    order: StencilOrder,
}

impl Stencil {
    fn d1(&self, f: &[Complex64; 5], h: f64) -> Complex64 {
        match self.order {
            StencilOrder::Fourth => (f[0] - f[1] * 8.0 + f[3] * 8.0 - f[4]) / (12.0 * h),
            StencilOrder::Second => (f[3] - f[1]) / (2.0 * h),
        }
    }

    fn d2(&self, f: &[Complex64; 5], h: f64) -> Complex64 {
        match self.order {
            StencilOrder::Fourth => {
                (-f[0] + f[1] * 16.0 - f[2] * 30.0 + f[3] * 16.0 - f[4]) / (12.0 * h * h)
            }
            StencilOrder::Second => (f[1] - f[2] * 2.0 + f[3]) / (h * h),
        }
    }
}

fn stencil_error(e: Error, p: SpacetimePoint) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("stencil around (z = {}, t = {}) exits the domain: {msg}", p.z, p.t)),
        other => other,
    }
}

/// Samples along z and t: `[z-2h, z-h, z, z+h, z+2h]` and likewise in t.
fn gather<T: Copy + Default>(
    f: impl Fn(SpacetimePoint) -> Result<T>,
    p: SpacetimePoint,
    hz: f64,
    ht: f64,
) -> Result<([T; 5], [T; 5])> {
    let mut zs = [T::default(); 5];
    let mut ts = [T::default(); 5];
    for (i, o) in [-2.0, -1.0, 0.0, 1.0, 2.0].into_iter().enumerate() {
        zs[i] = f(p.shifted(o * hz, 0.0)).map_err(|e| stencil_error(e, p))?;
        ts[i] = if o == 0.0 { zs[2] } else { f(p.shifted(0.0, o * ht)).map_err(|e| stencil_error(e, p))? };
    }
    Ok((zs, ts))
}

fn rel(value: Complex64, scale: f64) -> f64 {
    value.norm() / scale.max(RESIDUAL_FLOOR)
}

fn kg_residual(pde: &Pde, st: Stencil, zs: &[Complex64; 5], ts: &[Complex64; 5], hz: f64, ht: f64) -> f64 {
    let h2 = pde.hbar * pde.hbar;
    let tt = st.d2(ts, ht) * h2;
    let zz = st.d2(zs, hz) * (h2 * pde.c * pde.c);
    let mass = zs[2] * (pde.m * pde.m * pde.c.powi(4));
    rel(tt - zz + mass, tt.norm() + zz.norm() + mass.norm())
}

fn split(s: &[(Complex64, Complex64); 5]) -> ([Complex64; 5], [Complex64; 5]) {
    (s.map(|x| x.0), s.map(|x| x.1))
}

/// Relative residual of `fd_residual`'s operator at a single point.
pub fn point_residual(
    pde: &Pde,
    field: Sampler<'_>,
    p: SpacetimePoint,
    h: &HPolicy,
    order: StencilOrder,
) -> Result<f64> {
    let (hz, ht) = h.steps(p, pde.c);
    let st = Stencil { order };
    let pair = |f: &dyn SpinorField, q: SpacetimePoint| -> Result<(Complex64, Complex64)> {
        let s = f.spinor(q)?;
        Ok(match pde.kind {
            PdeKind::DiracSystem => (s.phi0, s.phi2),
            _ => s.to_u_pair(),
        })
    };
    match (pde.kind, field) {
        (PdeKind::KleinGordon, Sampler::Scalar(f)) => {
            let (zs, ts) = gather(|q| f.value(q), p, hz, ht)?;
            Ok(kg_residual(pde, st, &zs, &ts, hz, ht))
        }
        (PdeKind::KgOnU1, Sampler::Pair(f)) => {
            let (zs, ts) = gather(|q| pair(f, q).map(|u| u.0), p, hz, ht)?;
            Ok(kg_residual(pde, st, &zs, &ts, hz, ht))
        }
        (PdeKind::KgOnU1, Sampler::Scalar(f)) => {
            let (zs, ts) = gather(|q| f.value(q), p, hz, ht)?;
            Ok(kg_residual(pde, st, &zs, &ts, hz, ht))
        }
        (PdeKind::DiracSystem | PdeKind::USystem, Sampler::Pair(f)) => {
            let (zs, ts) = gather(|q| pair(f, q), p, hz, ht)?;
            let ((az, bz), (at, bt)) = (split(&zs), split(&ts));
            let (a, b) = zs[2];
            let ih = I * pde.hbar;
            let ihc = ih * pde.c;
            let mc2 = pde.m * pde.c * pde.c;
            let (da_t, db_t) = (st.d1(&at, ht) * ih, st.d1(&bt, ht) * ih);
            let (da_z, db_z) = (st.d1(&az, hz) * ihc, st.d1(&bz, hz) * ihc);
            let (l1, l2) = if pde.kind == PdeKind::DiracSystem {
                let v = pde.potential.at(p.z);
                let (m1, m2) = (a * (mc2 + v), b * (v - mc2));
                (
                    rel(da_t + db_z - m1, da_t.norm() + db_z.norm() + m1.norm()),
                    rel(db_t + da_z - m2, db_t.norm() + da_z.norm() + m2.norm()),
                )
            } else {
                let (m1, m2) = (b * mc2, a * mc2);
                (
                    rel(da_t + da_z - m1, da_t.norm() + da_z.norm() + m1.norm()),
                    rel(db_t - db_z - m2, db_t.norm() + db_z.norm() + m2.norm()),
                )
            };
            Ok(l1.max(l2))
        }
        (kind, _) => Err(Error::Domain(format!("{kind:?} residual got the wrong field arity"))),
    }
}

pub fn fd_residual(
    pde: &Pde,
    field: Sampler<'_>,
    grid: &SpacetimeGrid,
    h: &HPolicy,
    order: StencilOrder,
) -> Result<ResidualReport> {
    if grid.is_empty() {
        return Err(Error::Domain("empty residual grid".into()));
    }
    let res: Vec<f64> = grid
        .points
        .par_iter()
        .map(|&p| point_residual(pde, field, p, h, order))
        .collect::<Result<_>>()?;
    let mut idx: Vec<usize> = (0..res.len()).collect();
    idx.sort_by(|&a, &b| res[b].total_cmp(&res[a]));
    let worst = idx.iter().take(10).map(|&i| (grid.points[i], res[i])).collect();
    Ok(ResidualReport {
        kind: pde.kind,
        grid: grid.label.clone(),
        points: res.len(),
        max_rel_residual: res.iter().cloned().fold(0.0, f64::max),
        mean_rel_residual: res.iter().sum::<f64>() / res.len() as f64,
        worst,
    })
}

/// `i hbar (d_t + c d_z) U1 / (m c^2)` by 4th-order differences, the
/// lower component predicted by the first line of the U system.
pub fn u2_from_u1(u1: &dyn ScalarField, p: SpacetimePoint, h: &HPolicy, params: &PhysicalParams) -> Result<Complex64> {
    if !(params.m > 0.0) {
        return Err(Error::Domain("recovering U2 divides by m c^2; m must be positive".into()));
    }
    let (hz, ht) = h.steps(p, params.c);
    let (zs, ts) = gather(|q| u1.value(q), p, hz, ht)?;
    let st = Stencil { order: StencilOrder::Fourth };
    let d = st.d1(&ts, ht) + st.d1(&zs, hz) * params.c;
    Ok(I * params.hbar * d / params.mc2())
}
