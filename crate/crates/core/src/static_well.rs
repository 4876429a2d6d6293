//! Stationary Dirac solutions of the static finite well: plane-wave spinors,
//! interface matching, bound-state search and scattering.
//!
//! Region I is `z <= 0` and region III is `z >= L0`, both at potential `V0`;
//! region II in between is free.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::field::SpinorField;
use crate::params::{PhysicalParams, SpacetimePoint, SpinorSample};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn csqrt(x: f64) -> Complex64 {
    Complex64::new(x, 0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    I,
    II,
    III,
}

impl Region {
    pub fn of(z: f64, l0: f64) -> Region {
        if z <= 0.0 {
            Region::I
        } else if z < l0 {
            Region::II
        } else {
            Region::III
        }
    }

    pub fn potential(self, params: &PhysicalParams) -> f64 {
        match self {
            Region::II => 0.0,
            _ => params.v0,
        }
    }
}

/// Time dependence attached to the stationary spinors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseConvention {
    /// `exp(-i E t / hbar)` in every region.
    #[default]
    Global,
    /// `exp(-i (E - V0) t / hbar)` outside the well and `exp(-i E t / hbar)`
    /// inside. Interfaces only match at `t = 0`.
    Regional,
}

impl PhaseConvention {
    fn phase(self, e: f64, region: Region, t: f64, params: &PhysicalParams) -> Complex64 {
        let w = match self {
            PhaseConvention::Global => e,
            PhaseConvention::Regional => e - region.potential(params),
        };
        (-I * (w * t / params.hbar)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveNumbers {
    pub e: f64,
    pub k1: Complex64,
    pub k2: Complex64,
}

impl WaveNumbers {
    /// Principal branches: `Re k >= 0`, and `Im k >= 0` when `k` is
    /// imaginary, so `exp(i k2 z)` decays for `z -> +inf` in the bound window.
    pub fn new(e: f64, params: &PhysicalParams) -> Self {
        let mc2 = params.mc2();
        let hc = params.hbar_c();
        let d = e - params.v0;
        Self {
            e,
            k1: csqrt((e - mc2) * (e + mc2)) / hc,
            k2: csqrt((d - mc2) * (d + mc2)) / hc,
        }
    }
}

/// Lower-to-upper component ratio `hbar c k / (E - V + mc^2)` of the spinor
/// `exp(i k z) (1, ratio)`, rewritten as `(E - V - mc^2) / (hbar c k)` when
/// that is better conditioned.
pub fn lower_ratio(k: Complex64, e: f64, v: f64, params: &PhysicalParams) -> Result<Complex64> {
    let mc2 = params.mc2();
    let hck = k * params.hbar_c();
    let plus = e - v + mc2;
    let minus = e - v - mc2;
    let ratio = if plus.abs() >= minus.abs() {
        hck / plus
    } else {
        Complex64::new(minus, 0.0) / hck
    };
    if !ratio.is_finite() || plus == 0.0 && hck == Complex64::new(0.0, 0.0) {
        return domain(format!(
            "spinor normalization pole at E = {e}, V = {v} (k = {k})"
        ));
    }
    Ok(ratio)
}

/// A single plane-wave spinor `exp(i dir k z) (1, dir R)` of one region.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave {
    pub k: Complex64,
    pub e: f64,
    pub direction: f64,
    pub region: Region,
    pub ratio: Complex64,
    pub phase: PhaseConvention,
    pub params: PhysicalParams,
}

pub fn spinor_plane_wave(
    k: Complex64,
    e: f64,
    direction: i8,
    region: Region,
    params: &PhysicalParams,
    phase: PhaseConvention,
) -> Result<PlaneWave> {
    if direction != 1 && direction != -1 {
        return domain(format!("direction must be +1 or -1, got {direction}"));
    }
    let ratio = lower_ratio(k, e, region.potential(params), params)?;
    Ok(PlaneWave {
        k,
        e,
        direction: direction as f64,
        region,
        ratio,
        phase,
        params: *params,
    })
}

impl PlaneWave {
    pub fn sample(&self, p: SpacetimePoint) -> SpinorSample {
        let s = self.direction;
        let amp = (I * self.k * (s * p.z)).exp()
            * self.phase.phase(self.e, self.region, p.t, &self.params);
        SpinorSample::new(amp, amp * self.ratio * s)
    }
}

impl SpinorField for PlaneWave {
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        Ok(self.sample(p))
    }
}

struct Ratios {
    k: WaveNumbers,
    inner: Complex64,
    outer: Complex64,
}

impl Ratios {
    fn new(k: WaveNumbers, params: &PhysicalParams) -> Result<Self> {
        Ok(Self {
            k,
            inner: lower_ratio(k.k1, k.e, 0.0, params)?,
            outer: lower_ratio(k.k2, k.e, params.v0, params)?,
        })
    }

    /// `R_inner / R_outer`, the factor continuity of the lower component puts
    /// on the difference amplitudes.
    fn rho(&self) -> Result<Complex64> {
        let rho = self.inner / self.outer;
        if !rho.is_finite() {
            return domain(format!(
                "matching ratio is singular at E = {} (outer lower component vanishes)",
                self.k.e
            ));
        }
        Ok(rho)
    }
}

/// `(s, b)` with `s + b = h + J` and `R2 (s - b) = R1 (h - J)`.
pub fn match_at_zero(h: Complex64, j: Complex64, e: f64, params: &PhysicalParams) -> Result<(Complex64, Complex64)> {
    let k = WaveNumbers::new(e, params);
    match_zero_with(h, j, &Ratios::new(k, params)?)
}

fn match_zero_with(h: Complex64, j: Complex64, r: &Ratios) -> Result<(Complex64, Complex64)> {
    let rho = r.rho()?;
    let sum = h + j;
    let diff = rho * (h - j);
    Ok(((sum + diff) * 0.5, (sum - diff) * 0.5))
}

/// `(q, r)` continuing the inner solution through `z = L0`.
pub fn match_at_l(h: Complex64, j: Complex64, e: f64, params: &PhysicalParams) -> Result<(Complex64, Complex64)> {
    let k = WaveNumbers::new(e, params);
    match_l_with(h, j, &Ratios::new(k, params)?, params.l0)
}

fn match_l_with(h: Complex64, j: Complex64, r: &Ratios, l0: f64) -> Result<(Complex64, Complex64)> {
    let rho = r.rho()?;
    let a = h * (I * r.k.k1 * l0).exp();
    let b = j * (-I * r.k.k1 * l0).exp();
    let plus = (a + b + rho * (a - b)) * 0.5;
    let minus = (a + b - rho * (a - b)) * 0.5;
    Ok((plus * (-I * r.k.k2 * l0).exp(), minus * (I * r.k.k2 * l0).exp()))
}

/// Six amplitudes of the piecewise solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Amplitudes {
    pub s: Complex64,
    pub b: Complex64,
    pub h: Complex64,
    pub j: Complex64,
    pub q: Complex64,
    pub r: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    Bound,
    Scattering,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StaticSolution {
    pub e: f64,
    pub k: WaveNumbers,
    /// Outer wave number actually used in regions I and III (the sign may be
    /// flipped from the principal branch for scattering in the Klein zone).
    pub k_outer: Complex64,
    pub coeffs: Amplitudes,
    pub kind: SolutionKind,
    #[serde(skip)]
    pub params: PhysicalParams,
    pub phase: PhaseConvention,
}

impl StaticSolution {
    fn ratios(&self) -> Result<(Complex64, Complex64)> {
        Ok((
            lower_ratio(self.k.k1, self.e, 0.0, &self.params)?,
            lower_ratio(self.k_outer, self.e, self.params.v0, &self.params)?,
        ))
    }

    /// Largest relative residual of the four interface equations.
    pub fn plug_back(&self) -> Result<f64> {
        let (r1, r2) = self.ratios()?;
        let c = &self.coeffs;
        let l0 = self.params.l0;
        let (k1, k2) = (self.k.k1, self.k_outer);
        let rel = |lhs: Complex64, rhs: Complex64, scale: f64| (lhs - rhs).norm() / scale.max(1e-300);
        let line1 = rel(c.s + c.b, c.h + c.j, c.s.norm() + c.b.norm() + c.h.norm() + c.j.norm());
        let line2 = rel(
            r2 * (c.s - c.b),
            r1 * (c.h - c.j),
            r2.norm() * (c.s.norm() + c.b.norm()) + r1.norm() * (c.h.norm() + c.j.norm()),
        );
        let (qa, rb) = (c.q * (I * k2 * l0).exp(), c.r * (-I * k2 * l0).exp());
        let (ha, jb) = (c.h * (I * k1 * l0).exp(), c.j * (-I * k1 * l0).exp());
        let line3 = rel(qa + rb, ha + jb, qa.norm() + rb.norm() + ha.norm() + jb.norm());
        let line4 = rel(
            r2 * (qa - rb),
            r1 * (ha - jb),
            r2.norm() * (qa.norm() + rb.norm()) + r1.norm() * (ha.norm() + jb.norm()),
        );
        Ok(line1.max(line2).max(line3).max(line4))
    }

    pub fn sample(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        let region = Region::of(p.z, self.params.l0);
        let (r1, r2) = self.ratios()?;
        let c = &self.coeffs;
        let (k, ratio, plus, minus) = match region {
            Region::I => (self.k_outer, r2, c.s, c.b),
            Region::II => (self.k.k1, r1, c.h, c.j),
            Region::III => (self.k_outer, r2, c.q, c.r),
        };
        let fwd = plus * (I * k * p.z).exp();
        let bwd = minus * (-I * k * p.z).exp();
        let phase = self.phase.phase(self.e, region, p.t, &self.params);
        Ok(SpinorSample::new((fwd + bwd) * phase, (fwd - bwd) * ratio * phase))
    }
}

impl SpinorField for StaticSolution {
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        self.sample(p)
    }
}

fn check_static(params: &PhysicalParams) -> Result<()> {
    params.validate()?;
    if !params.v0.is_finite() {
        return domain("static well needs a finite V0");
    }
    Ok(())
}

/// Closed window `[lo, hi]` of bound energies, or `None` when it is empty.
pub fn bound_window(params: &PhysicalParams) -> Option<(f64, f64)> {
    let mc2 = params.mc2();
    let lo = mc2.max(params.v0 - mc2);
    let hi = params.v0 + mc2;
    (params.v0 > 0.0 && mc2 > 0.0 && lo < hi).then_some((lo, hi))
}

/// Phase `k1 L0 + 2 atan(beta)` whose sine is the bound-state determinant,
/// and its derivative in E.
fn bound_phase(e: f64, params: &PhysicalParams) -> (f64, f64) {
    let mc2 = params.mc2();
    let hc = params.hbar_c();
    // Clamped so that rounding at the window edges cannot produce NaN.
    let a = (e - mc2).max(0.0);
    let b = (e + mc2).max(0.0);
    let c = (mc2 + e - params.v0).max(0.0);
    let d = (mc2 - e + params.v0).max(0.0);
    let k1 = (a * b).sqrt() / hc;
    let phi = k1 * params.l0 + 2.0 * (a * c).sqrt().atan2((b * d).sqrt());
    // d/dE [2 atan beta] = 2 beta'/(1 + beta^2) with
    // beta'/beta = (1/a - 1/b + 1/c + 1/d) / 2
    let beta = ((a * c) / (b * d)).sqrt();
    let dphi_beta = if beta.is_finite() && beta > 0.0 {
        beta * (1.0 / a - 1.0 / b + 1.0 / c + 1.0 / d) / (1.0 + beta * beta)
    } else {
        f64::INFINITY
    };
    let dk1 = if k1 > 0.0 { e / (hc * hc * k1) } else { f64::INFINITY };
    (phi, dk1 * params.l0 + dphi_beta)
}

/// Normalized determinant `sin(k1 L0 + 2 atan beta)` of the decay-selected
/// matching system, `beta = i R1/R2` (real and positive in the window).
/// Its zeros inside the open window are the bound-state energies; the zero at
/// `E = mc^2` is the trivial `k1 = 0` solution and is not a state.
pub fn bound_state_determinant(e: f64, params: &PhysicalParams) -> Result<f64> {
    check_static(params)?;
    match bound_window(params) {
        Some((lo, hi)) if e >= lo && e <= hi => Ok(bound_phase(e, params).0.sin()),
        _ => domain(format!("E = {e} lies outside the bound window")),
    }
}

/// Derivative of [`bound_state_determinant`] in E.
pub fn bound_state_determinant_de(e: f64, params: &PhysicalParams) -> Result<f64> {
    bound_state_determinant(e, params)?;
    let (phi, dphi) = bound_phase(e, params);
    Ok(phi.cos() * dphi)
}

/// Number of bound states; the phase is strictly increasing across the
/// window, so each multiple of pi it crosses is one state.
pub fn bound_state_count(params: &PhysicalParams) -> Result<usize> {
    check_static(params)?;
    let Some((lo, hi)) = bound_window(params) else {
        return Ok(0);
    };
    let (p_lo, p_hi) = (bound_phase(lo, params).0, bound_phase(hi, params).0);
    let first = (p_lo / PI).floor() as i64 + 1;
    let last = (p_hi / PI).ceil() as i64 - 1;
    Ok((last - first + 1).max(0) as usize)
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub points: usize,
    pub bisect_tol: f64,
    pub newton_steps: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            points: 2000,
            bisect_tol: 1e-10,
            newton_steps: 2,
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= tol {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::Convergence(format!(
        "bisection stalled on [{a}, {b}] (width {:e}, tol {tol:e})",
        b - a
    )))
}

/// Decay-selected amplitudes (`s = r = 0`) for a root of the determinant.
pub fn bound_solution(e: f64, params: &PhysicalParams) -> Result<StaticSolution> {
    check_static(params)?;
    let k = WaveNumbers::new(e, params);
    let ratios = Ratios::new(k, params)?;
    let rho = ratios.rho()?;
    let h = Complex64::new(1.0, 0.0) - rho;
    let j = -(Complex64::new(1.0, 0.0) + rho);
    let (_, b) = match_zero_with(h, j, &ratios)?;
    let (q, _) = match_l_with(h, j, &ratios, params.l0)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(StaticSolution {
        e,
        k,
        k_outer: k.k2,
        coeffs: Amplitudes { s: zero, b, h, j, q, r: zero },
        kind: SolutionKind::Bound,
        params: *params,
        phase: PhaseConvention::Global,
    })
}

/// All bound states, by sign-change scan, bisection and Newton polish.
pub fn bound_states(params: &PhysicalParams, opts: &ScanOptions) -> Result<Vec<StaticSolution>> {
    check_static(params)?;
    let Some((lo, hi)) = bound_window(params) else {
        return Ok(Vec::new());
    };
    if opts.points < 2 {
        return domain("scan needs at least two points");
    }
    let f = |e: f64| bound_phase(e, params).0.sin();
    let n = opts.points;
    let grid: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let values: Vec<f64> = grid.par_iter().map(|&e| f(e)).collect();
    let scale = params.mc2().max(params.v0.abs());
    let tol = opts.bisect_tol * scale;
    let brackets: Vec<(f64, f64)> = (0..n)
        .filter_map(|i| {
            let (fa, fb) = (values[i], values[i + 1]);
            let interior_zero = fb == 0.0 && i + 1 < n;
            ((fa < 0.0) != (fb < 0.0) && fa != 0.0 || interior_zero).then_some((grid[i], grid[i + 1]))
        })
        .collect();
    let roots: Vec<f64> = brackets
        .par_iter()
        .map(|&(a, b)| {
            let mut e = bisect(f, a, b, tol)?;
            for _ in 0..opts.newton_steps {
                let (phi, dphi) = bound_phase(e, params);
                let next = e - phi.sin() / (phi.cos() * dphi);
                if next.is_finite() && next > a && next < b {
                    e = next;
                }
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(roots.len());
    for e in roots {
        out.push(bound_solution(e, params)?);
    }
    Ok(out)
}

/// Reflection and transmission probabilities for unit incidence from the
/// left. The outer wave number takes the sign of `E - V0` so that the
/// transmitted wave carries positive current, which covers the Klein zone.
pub fn scattering_coefficients(e: f64, params: &PhysicalParams) -> Result<(f64, f64, StaticSolution)> {
    check_static(params)?;
    let k = WaveNumbers::new(e, params);
    let mc2 = params.mc2();
    let d = e - params.v0;
    if !((d - mc2) * (d + mc2) > 0.0) {
        return domain(format!("outer wave number is not real at E = {e}"));
    }
    if k.k1 == Complex64::new(0.0, 0.0) {
        return domain(format!("E = {e} gives k1 = 0 and a degenerate inner basis"));
    }
    let k_outer = k.k2 * d.signum();
    let ratios = Ratios {
        k: WaveNumbers { k2: k_outer, ..k },
        inner: lower_ratio(k.k1, e, 0.0, params)?,
        outer: lower_ratio(k_outer, e, params.v0, params)?,
    };
    let rho = ratios.rho()?;
    let l0 = params.l0;
    // q = 1, r = 0, run the z = L0 conditions backwards for (h, J)
    let p = (I * k_outer * l0).exp();
    let sum = p;
    let diff = p / rho;
    let h = (sum + diff) * 0.5 * (-I * k.k1 * l0).exp();
    let j = (sum - diff) * 0.5 * (I * k.k1 * l0).exp();
    let (s, b) = match_zero_with(h, j, &ratios)?;
    let sol = StaticSolution {
        e,
        k,
        k_outer,
        coeffs: Amplitudes {
            s,
            b,
            h,
            j,
            q: Complex64::new(1.0, 0.0),
            r: Complex64::new(0.0, 0.0),
        },
        kind: SolutionKind::Scattering,
        params: *params,
        phase: PhaseConvention::Global,
    };
    let t = 1.0 / s.norm_sqr();
    let r = (b / s).norm_sqr();
    if !(t.is_finite() && r.is_finite()) {
        return Err(Error::Accuracy(format!("non-finite R, T at E = {e}")));
    }
    Ok((r, t, sol))
}
