//! Density, current, continuity and momentum expectation of spinor fields.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::field::SpinorField;
use crate::oracle::{ResidualReport, SpacetimeGrid, PdeKind, RESIDUAL_FLOOR};
use crate::params::{SpacetimePoint, SpinorSample};

/// `|phi0|^2 + |phi2|^2`.
pub fn density(s: &SpinorSample) -> f64 {
    s.phi0.norm_sqr() + s.phi2.norm_sqr()
}

/// `j_z = 2 c Re(phi0^* phi2)`.
pub fn current(s: &SpinorSample, c: f64) -> f64 {
    2.0 * c * (s.phi0.conj() * s.phi2).re
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalGrid {
    pub z_lo: f64,
    pub z_hi: f64,
    pub n_points: usize,
    pub t: f64,
}

impl IntervalGrid {
    pub fn new(z_lo: f64, z_hi: f64, n_points: usize, t: f64) -> Result<Self> {
        if !(z_lo < z_hi) || !z_lo.is_finite() || !z_hi.is_finite() || !t.is_finite() {
            return domain(format!("interval needs z_lo < z_hi (got [{z_lo}, {z_hi}])"));
        }
        if n_points < 16 {
            return domain(format!("interval needs at least 16 points, got {n_points}"));
        }
        Ok(Self { z_lo, z_hi, n_points, t })
    }

    pub fn step(&self) -> f64 {
        (self.z_hi - self.z_lo) / (self.n_points - 1) as f64
    }

    pub fn z(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.z_hi
        } else {
            self.z_lo + self.step() * i as f64
        }
    }

    /// Same interval with the spacing halved `levels` times.
    pub fn refined(&self, levels: u32) -> Self {
        let n = (self.n_points - 1) * (1usize << levels) + 1;
        Self { n_points: n, ..*self }
    }
}

fn fd4(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

/// `|d_t rho + d_z j|` by 4th-order differences at every grid point,
/// normalized by the larger of `max(|d_t rho| + |d_z j|)` and
/// `c max(rho) / extent`, where `extent` is the grid's span in `z` and `c t`.
pub fn continuity_residual(
    field: &dyn SpinorField,
    grid: &SpacetimeGrid,
    c: f64,
    h: f64,
) -> Result<ResidualReport> {
    if grid.is_empty() {
        return domain("empty grid");
    }
    let terms: Vec<(f64, f64, f64)> = grid
        .points
        .par_iter()
        .map(|&p| {
            let rho = |t: f64| field.spinor(SpacetimePoint::new(p.z, t)).map(|s| density(&s));
            let j = |z: f64| field.spinor(SpacetimePoint::new(z, p.t)).map(|s| current(&s, c));
            let wrap = |e: Error| match e {
                Error::Domain(m) => Error::Domain(format!("stencil around (z = {}, t = {}) exits the domain: {m}", p.z, p.t)),
                other => other,
            };
            let dt = fd4(rho, p.t, h / c).map_err(wrap)?;
            let dz = fd4(j, p.z, h).map_err(wrap)?;
            let rho0 = rho(p.t).map_err(wrap)?;
            Ok((dt + dz, dt.abs() + dz.abs(), rho0))
        })
        .collect::<Result<_>>()?;
    let span = |f: fn(&SpacetimePoint) -> f64| {
        let (lo, hi) = grid.points.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        hi - lo
    };
    let extent = span(|p| p.z).max(c * span(|p| p.t)).max(h);
    let rho_max = terms.iter().map(|t| t.2).fold(0.0, f64::max);
    let scale = terms
        .iter()
        .map(|t| t.1)
        .fold(c * rho_max / extent, f64::max)
        .max(RESIDUAL_FLOOR);
    let res: Vec<f64> = terms.iter().map(|t| t.0.abs() / scale).collect();
    let mut idx: Vec<usize> = (0..res.len()).collect();
    idx.sort_by(|&a, &b| res[b].total_cmp(&res[a]));
    Ok(ResidualReport {
        kind: PdeKind::DiracSystem,
        grid: format!("continuity on {}", grid.label),
        points: res.len(),
        max_rel_residual: res.iter().cloned().fold(0.0, f64::max),
        mean_rel_residual: res.iter().sum::<f64>() / res.len() as f64,
        worst: idx.iter().take(10).map(|&i| (grid.points[i], res[i])).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumLevel {
    pub n_points: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumResult {
    pub value: Complex64,
    pub norm: f64,
    /// One entry per refinement level, coarsest first.
    pub history: Vec<MomentumLevel>,
    /// Largest change between consecutive levels, relative to `|<p>|`.
    pub discrepancy: f64,
}

fn simpson_weights(n: usize, h: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        let w = if i == 0 || i + 1 == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        w * h / 3.0
    })
}

/// `(int psi^dag (-i hbar d_z) psi dz, int psi^dag psi dz)` on one grid.
fn momentum_integrals(field: &dyn SpinorField, g: &IntervalGrid, hbar: f64, fd_h: f64) -> Result<(Complex64, f64)> {
    let at = |z: f64| field.spinor(SpacetimePoint::new(z, g.t));
    let rows: Vec<(Complex64, f64)> = (0..g.n_points)
        .into_par_iter()
        .map(|i| {
            let z = g.z(i);
            let s = at(z)?;
            let f = |o: f64| at(z + o * fd_h);
            let (m2, m1, p1, p2) = (f(-2.0)?, f(-1.0)?, f(1.0)?, f(2.0)?);
            let d = |a: Complex64, b: Complex64, c: Complex64, e: Complex64| (a - b * 8.0 + c * 8.0 - e) / (12.0 * fd_h);
            let d0 = d(m2.phi0, m1.phi0, p1.phi0, p2.phi0);
            let d2 = d(m2.phi2, m1.phi2, p1.phi2, p2.phi2);
            let p = (s.phi0.conj() * d0 + s.phi2.conj() * d2) * Complex64::new(0.0, -hbar);
            Ok((p, density(&s)))
        })
        .collect::<Result<_>>()?;
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for ((p, r), w) in rows.iter().zip(simpson_weights(g.n_points, g.step())) {
        num += p * w;
        den += r * w;
    }
    Ok((num, den))
}

pub const MOMENTUM_POINTS: usize = 513;
/// Largest relative change tolerated between refinement levels.
pub const MOMENTUM_TOL: f64 = 1e-4;

/// `<p> = int psi^dag (-i hbar d_z) psi / int psi^dag psi` by composite
/// Simpson, on the grid and on two successive halvings of its spacing.
/// The finest level is reported.
pub fn momentum_expectation(field: &dyn SpinorField, grid: &IntervalGrid, hbar: f64) -> Result<MomentumResult> {
    if grid.n_points % 2 == 0 {
        return domain("Simpson's rule needs an odd number of points");
    }
    let fd_h = 1e-3 * (grid.z_hi - grid.z_lo).max(grid.z_lo.abs()).max(grid.z_hi.abs());
    let mut history = Vec::with_capacity(3);
    let mut last = None;
    for level in 0..3 {
        let g = grid.refined(level);
        let (num, den) = momentum_integrals(field, &g, hbar, fd_h)?;
        if !(den > 1e-12) {
            return domain(format!("norm {den:e} over the interval is too small"));
        }
        let v = num / den;
        history.push(MomentumLevel { n_points: g.n_points, re: v.re, im: v.im });
        last = Some((v, den));
    }
    let (value, norm) = last.expect("three levels");
    let scale = value.norm().max(RESIDUAL_FLOOR);
    let discrepancy = history
        .windows(2)
        .map(|w| Complex64::new(w[1].re - w[0].re, w[1].im - w[0].im).norm() / scale)
        .fold(0.0, f64::max);
    if discrepancy > MOMENTUM_TOL {
        return Err(Error::Convergence(format!(
            "<p> moved by {discrepancy:e} (relative) under refinement; history {history:?}"
        )));
    }
    Ok(MomentumResult { value, norm, history, discrepancy })
}

/// `Im <p>` from the boundary term alone: `-(hbar/2) (rho(b) - rho(a)) / N`.
pub fn momentum_imaginary_part(field: &dyn SpinorField, grid: &IntervalGrid, norm: f64, hbar: f64) -> Result<f64> {
    let rho = |z: f64| field.spinor(SpacetimePoint::new(z, grid.t)).map(|s| density(&s));
    Ok(-0.5 * hbar * (rho(grid.z_hi)? - rho(grid.z_lo)?) / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac_moving::superluminal_example;
    use crate::params::PhysicalParams;
    use crate::static_well::{scattering_coefficients, spinor_plane_wave, PhaseConvention, Region};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn density_and_current_basics() {
        assert_eq!(density(&SpinorSample::ZERO), 0.0);
        assert_eq!(density(&SpinorSample::new(c(1.0, 0.0), c(0.0, 1.0))), 2.0);
        assert_eq!(current(&SpinorSample::new(c(1.0, 0.0), c(0.0, 1.0)), 1.0), 0.0);
        assert_eq!(current(&SpinorSample::new(c(0.3, 0.2), c(0.0, 0.0)), 3.0), 0.0);
    }

    #[test]
    fn plane_wave_velocity() {
        let p = PhysicalParams::static_well(0.0, 1.0);
        for k in [0.1, 1.0, 7.0] {
            let e = (k * k + 1.0f64).sqrt();
            let w = spinor_plane_wave(c(k, 0.0), e, 1, Region::II, &p, PhaseConvention::Global).unwrap();
            let rho0 = density(&w.sample(SpacetimePoint::new(0.0, 0.0)));
            for z in [-3.0, 0.4, 11.0] {
                let s = w.sample(SpacetimePoint::new(z, 0.6));
                assert!((density(&s) - rho0).abs() < 1e-14 * rho0);
                assert!((current(&s, 1.0) / density(&s) - k / e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn interval_validation() {
        assert!(IntervalGrid::new(1.0, 0.0, 32, 0.0).is_err());
        assert!(IntervalGrid::new(0.0, 1.0, 15, 0.0).is_err());
        let g = IntervalGrid::new(0.0, 1.0, 17, 0.0).unwrap();
        assert_eq!(g.refined(2).n_points, 65);
        assert_eq!(g.refined(2).z(64), 1.0);
    }

    #[test]
    fn continuity_of_scattering_states() {
        let p = PhysicalParams::static_well(1.5, 2.0);
        for e in [3.2, 0.2] {
            let (_, _, sol) = scattering_coefficients(e, &p).unwrap();
            let grid = SpacetimeGrid::rect((0.2, 1.8), (0.0, 1.0), 8, 4);
            let r = continuity_residual(&sol, &grid, 1.0, 1e-2).unwrap();
            assert!(r.max_rel_residual < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn continuity_zero_and_corrupted() {
        let zero = |_: SpacetimePoint| Ok(SpinorSample::ZERO);
        let grid = SpacetimeGrid::rect((0.0, 1.0), (1.0, 2.0), 4, 4);
        assert_eq!(continuity_residual(&zero, &grid, 1.0, 1e-2).unwrap().max_rel_residual, 0.0);
        let p = PhysicalParams::static_well(0.0, 1.0);
        let w1 = spinor_plane_wave(c(1.3, 0.0), 1.3f64.hypot(1.0), 1, Region::II, &p, PhaseConvention::Global).unwrap();
        let w2 = spinor_plane_wave(c(0.4, 0.0), 0.4f64.hypot(1.0), -1, Region::II, &p, PhaseConvention::Global).unwrap();
        let good = move |q: SpacetimePoint| Ok(w1.sample(q).add(&w2.sample(q)));
        let bad = move |q: SpacetimePoint| {
            let s = w1.sample(q).add(&w2.sample(q));
            Ok(SpinorSample::new(s.phi0, s.phi2 * 2.0))
        };
        assert!(continuity_residual(&good, &grid, 1.0, 1e-2).unwrap().max_rel_residual < 1e-6);
        assert!(continuity_residual(&bad, &grid, 1.0, 1e-2).unwrap().max_rel_residual > 1e-3);
    }

    #[test]
    fn plane_wave_momentum_is_real() {
        let p = PhysicalParams::static_well(0.0, 1.0);
        let k = 2.0 * PI;
        let w = spinor_plane_wave(c(k, 0.0), k.hypot(1.0), 1, Region::II, &p, PhaseConvention::Global).unwrap();
        let g = IntervalGrid::new(0.0, 1.0, 129, 0.3).unwrap();
        let m = momentum_expectation(&w, &g, 1.0).unwrap();
        assert!((m.value.re - k).abs() < 1e-9 * k);
        assert!(m.value.im.abs() < 1e-10 * k);
        assert_eq!(m.history.len(), 3);
    }

    #[test]
    fn periodic_superposition_momentum_is_real() {
        let p = PhysicalParams::static_well(0.0, 1.0);
        let wave = |n: f64, dir: i8| {
            let k = 2.0 * PI * n;
            spinor_plane_wave(c(k, 0.0), k.hypot(1.0), dir, Region::II, &p, PhaseConvention::Global).unwrap()
        };
        let (a, b, d) = (wave(1.0, 1), wave(2.0, -1), wave(3.0, 1));
        let f = move |q: SpacetimePoint| {
            Ok(a.sample(q).scale(c(0.6, 0.1)).add(&b.sample(q).scale(c(-0.3, 0.5))).add(&d.sample(q).scale(c(0.2, 0.0))))
        };
        let g = IntervalGrid::new(0.0, 1.0, 257, 0.7).unwrap();
        let m = momentum_expectation(&f, &g, 1.0).unwrap();
        assert!(m.value.im.abs() < 1e-10 * m.value.norm(), "{:?}", m.value);
    }

    #[test]
    fn standing_wave_has_zero_mean_momentum() {
        let f = |q: SpacetimePoint| {
            let s = (3.0 * q.z).sin();
            Ok(SpinorSample::new(c(s, 0.0), c(0.4 * s, 0.0)))
        };
        let g = IntervalGrid::new(0.1, 2.0, 129, 0.0).unwrap();
        let m = momentum_expectation(&f, &g, 1.0).unwrap();
        assert!(m.value.re.abs() < 1e-12);
    }

    #[test]
    fn superluminal_momentum_is_complex() {
        let p = PhysicalParams { t0: 1.0, ..PhysicalParams::moving_wall(1.0, 1.0, 1.0, 0.5, 1.0) };
        let ex = superluminal_example(&p, 1, c(1.0, 0.0)).unwrap();
        let g = IntervalGrid::new(0.05, 0.95, MOMENTUM_POINTS, 1.0).unwrap();
        let m = momentum_expectation(&ex, &g, 1.0).unwrap();
        assert!(m.value.im.abs() > 100.0 * m.discrepancy * m.value.norm());
        let boundary = momentum_imaginary_part(&ex, &g, m.norm, 1.0).unwrap();
        assert!((boundary - m.value.im).abs() < 1e-8 * boundary.abs());
    }

    #[test]
    fn too_small_norm_is_rejected() {
        let f = |_: SpacetimePoint| Ok(SpinorSample::new(c(1e-9, 0.0), c(0.0, 0.0)));
        let g = IntervalGrid::new(0.0, 1.0, 17, 0.0).unwrap();
        assert!(matches!(momentum_expectation(&f, &g, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn unsettled_refinement_is_a_convergence_error() {
        // a kink that Simpson cannot resolve at any of the three levels
        let f = |q: SpacetimePoint| {
            let a = if q.z > 0.5003 { c(0.0, 40.0 * q.z).exp() } else { c(1.0, 0.0) };
            Ok(SpinorSample::new(a, c(0.0, 0.0)))
        };
        let g = IntervalGrid::new(0.0, 1.0, 17, 0.0).unwrap();
        assert!(matches!(momentum_expectation(&f, &g, 1.0), Err(Error::Convergence(_))));
    }
}
