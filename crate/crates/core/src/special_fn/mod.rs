//! Bessel functions of the first and second kind for complex order at
//! positive real argument.
//!
//! `J_nu` is evaluated by the ascending series where rounding is benign, by
//! Hankel's expansion at large argument, and otherwise by Taylor-series
//! continuation of the Bessel equation from a point where the series is
//! certified. `Y_nu` uses the connection formula
//! `Y = J_nu cot(nu pi) - J_{-nu} csc(nu pi)`; within [`NEAR_INTEGER`] of an
//! integer order the value is recovered from a trapezoidal Cauchy integral
//! over a circle of orders around that integer, which is exact for the
//! integer limit up to exponentially small aliasing.

mod asymptotic;
pub mod gamma;
mod series;
mod taylor;

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Orders closer than this to an integer take the contour branch for `Y`.
pub const NEAR_INTEGER: f64 = 0.05;
const CONTOUR_RADIUS: f64 = 0.25;
const CONTOUR_POINTS: usize = 32;
/// Internal certification threshold for a single branch.
const CERTIFY: f64 = 1e-12;
/// Public accuracy contract: at least ten significant digits.
const TARGET: f64 = 1e-10;
const CLASSIFY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order(pub Complex64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Real,
    Imaginary,
    General,
}

impl Order {
    pub fn new(re: f64, im: f64) -> Self {
        Order(Complex64::new(re, im))
    }

    pub fn real(nu: f64) -> Self {
        Order::new(nu, 0.0)
    }

    pub fn imaginary(kappa: f64) -> Self {
        Order::new(0.0, kappa)
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn kind(&self) -> OrderKind {
        let (re, im) = (self.0.re, self.0.im);
        if im.abs() <= CLASSIFY_TOL * re.abs().max(1.0) {
            OrderKind::Real
        } else if re.abs() <= CLASSIFY_TOL * im.abs().max(1.0) {
            OrderKind::Imaginary
        } else {
            OrderKind::General
        }
    }

    pub fn shifted(&self, d: f64) -> Order {
        Order(self.0 + d)
    }
}

impl From<f64> for Order {
    fn from(nu: f64) -> Self {
        Order::real(nu)
    }
}

impl From<Complex64> for Order {
    fn from(nu: Complex64) -> Self {
        Order(nu)
    }
}

/// A value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Approx {
    pub value: Complex64,
    pub deriv: Complex64,
    pub err: f64,
    pub derr: f64,
}

impl Approx {
    /// Magnitude used to judge accuracy; stays meaningful near zeros of the
    /// function because the derivative does not vanish there.
    fn envelope(&self, nu: Complex64, x: f64) -> f64 {
        self.value.norm().hypot(self.deriv.norm() * x / (x + nu.norm()))
    }

    fn certified(&self, nu: Complex64, x: f64, tol: f64) -> bool {
        self.value.is_finite() && self.err <= tol * self.envelope(nu, x)
    }

    fn scale(self, s: f64) -> Approx {
        Approx {
            value: self.value * s,
            deriv: self.deriv * s,
            ..self
        }
    }
}

fn check_args(nu: Complex64, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be positive, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("Bessel order must be finite, got {nu}")));
    }
    Ok(())
}

fn negative_integer(nu: Complex64) -> Option<f64> {
    (nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round()).then_some(-nu.re)
}

fn j_approx(nu: Complex64, x: f64) -> Result<Approx> {
    if let Some(n) = negative_integer(nu) {
        let sign = if n % 2.0 == 0.0 { 1.0 } else { -1.0 };
        return Ok(j_approx(Complex64::new(n, 0.0), x)?.scale(sign));
    }
    if x >= 8.0 {
        if let Some(a) = asymptotic::j_hankel(nu, x) {
            if a.certified(nu, x, CERTIFY) {
                return Ok(a);
            }
        }
    }
    let direct = series::j_series(nu, x);
    if direct.certified(nu, x, CERTIFY) {
        return Ok(direct);
    }
    let backward = if nu.re < 0.0 { continue_backward(nu, x) } else { None };
    let forward = continue_forward(nu, x);
    let mut best = direct;
    for cand in [backward, forward].into_iter().flatten() {
        if cand.certified(nu, x, CERTIFY) {
            return Ok(cand);
        }
        if cand.err / cand.envelope(nu, x) < best.err / best.envelope(nu, x) {
            best = cand;
        }
    }
    if x >= 8.0 {
        if let Some(a) = asymptotic::j_hankel(nu, x) {
            if a.err / a.envelope(nu, x) < best.err / best.envelope(nu, x) {
                best = a;
            }
        }
    }
    if best.certified(nu, x, TARGET) {
        return Ok(best);
    }
    Err(Error::Accuracy(format!(
        "J_{nu}({x}): no evaluation branch reaches the target accuracy"
    )))
}

fn continued(nu: Complex64, x: f64, x0: f64, start: Approx) -> Approx {
    let (w, dw, steps) = taylor::continue_solution(nu, x0, start.value, start.deriv, x);
    let env0 = start.envelope(nu, x0);
    let mut a = Approx {
        value: w,
        deriv: dw,
        err: 0.0,
        derr: 0.0,
    };
    let rel = start.err / env0 + 4.0 * f64::EPSILON * (steps as f64 + 1.0);
    let env = a.envelope(nu, x);
    a.err = rel * env;
    a.derr = rel * env;
    a
}

/// Series at a smaller argument, continued upward. Stable whenever `J_nu`
/// is not the decaying solution (always true for `Re nu >= 0`).
fn continue_forward(nu: Complex64, x: f64) -> Option<Approx> {
    let mut x0 = x;
    while x0 > 1e-3 {
        x0 *= 0.75;
        let start = series::j_series(nu, x0);
        if start.certified(nu, x0, CERTIFY * 0.1) {
            return Some(continued(nu, x, x0, start));
        }
    }
    None
}

/// Hankel expansion at a larger argument, continued downward. Used for
/// `Re nu < 0`, where `J_nu` grows toward small x below the turning point.
fn continue_backward(nu: Complex64, x: f64) -> Option<Approx> {
    let mut x1 = x.max(8.0);
    while x1 < 4.0e3 {
        x1 *= 1.25;
        if let Some(start) = asymptotic::j_hankel(nu, x1) {
            if start.certified(nu, x1, CERTIFY * 0.1) {
                return Some(continued(nu, x, x1, start));
            }
        }
    }
    None
}

fn y_connection(nu: Complex64, x: f64) -> Result<Approx> {
    let j = j_approx(nu, x)?;
    let jm = j_approx(-nu, x)?;
    let (cot, csc) = gamma::cot_csc_pi(nu);
    Ok(Approx {
        value: j.value * cot - jm.value * csc,
        deriv: j.deriv * cot - jm.deriv * csc,
        err: j.err * cot.norm() + jm.err * csc.norm(),
        derr: j.derr * cot.norm() + jm.derr * csc.norm(),
    })
}

fn y_contour(center: f64, nu: Complex64, x: f64) -> Result<Approx> {
    let c = Complex64::new(center, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let (mut err, mut derr) = (0.0, 0.0);
    let m = CONTOUR_POINTS as f64;
    for j in 0..CONTOUR_POINTS {
        let theta = 2.0 * PI * (j as f64 + 0.5) / m;
        let zeta = c + Complex64::from_polar(CONTOUR_RADIUS, theta);
        let w = (zeta - c) / (zeta - nu) / m;
        let y = y_connection(zeta, x)?;
        value += y.value * w;
        deriv += y.deriv * w;
        err += y.err * w.norm();
        derr += y.derr * w.norm();
    }
    let alias = ((nu - c).norm() / CONTOUR_RADIUS).powi(CONTOUR_POINTS as i32);
    Ok(Approx {
        value,
        deriv,
        err: err + alias * value.norm(),
        derr: derr + alias * deriv.norm(),
    })
}

fn y_approx(nu: Complex64, x: f64) -> Result<Approx> {
    let n = nu.re.round();
    if (nu - n).norm() < NEAR_INTEGER {
        y_contour(n, nu, x)
    } else {
        y_connection(nu, x)
    }
}

fn finish(nu: Complex64, x: f64, a: Approx, what: &str) -> Result<Estimate> {
    if !a.value.is_finite() {
        return Err(Error::Accuracy(format!("{what}_{nu}({x}) is not finite")));
    }
    if a.err > TARGET * a.envelope(nu, x) {
        return Err(Error::Accuracy(format!(
            "{what}_{nu}({x}): error estimate {:.2e} exceeds target",
            a.err
        )));
    }
    Ok(Estimate {
        value: a.value,
        abs_error: a.err,
    })
}

pub fn bessel_j_with_error(nu: impl Into<Order>, x: f64) -> Result<Estimate> {
    let nu = nu.into().0;
    check_args(nu, x)?;
    finish(nu, x, j_approx(nu, x)?, "J")
}

pub fn bessel_y_with_error(nu: impl Into<Order>, x: f64) -> Result<Estimate> {
    let nu = nu.into().0;
    check_args(nu, x)?;
    finish(nu, x, y_approx(nu, x)?, "Y")
}

/// `J_nu(x)` for complex order and `x > 0`.
pub fn bessel_j(nu: impl Into<Order>, x: f64) -> Result<Complex64> {
    bessel_j_with_error(nu, x).map(|e| e.value)
}

/// `Y_nu(x)` for complex order and `x > 0`.
pub fn bessel_y(nu: impl Into<Order>, x: f64) -> Result<Complex64> {
    bessel_y_with_error(nu, x).map(|e| e.value)
}

/// `J_nu'(x) = (J_{nu-1}(x) - J_{nu+1}(x)) / 2`.
pub fn bessel_j_dx(nu: impl Into<Order>, x: f64) -> Result<Complex64> {
    let nu = nu.into();
    Ok((bessel_j(nu.shifted(-1.0), x)? - bessel_j(nu.shifted(1.0), x)?) * 0.5)
}

/// `Y_nu'(x) = (Y_{nu-1}(x) - Y_{nu+1}(x)) / 2`.
pub fn bessel_y_dx(nu: impl Into<Order>, x: f64) -> Result<Complex64> {
    let nu = nu.into();
    Ok((bessel_y(nu.shifted(-1.0), x)? - bessel_y(nu.shifted(1.0), x)?) * 0.5)
}

/// Real and imaginary parts of `J_{i kappa}(x)`.
pub fn bessel_j_imaginary_order(kappa: f64, x: f64) -> Result<(f64, f64)> {
    let j = bessel_j(Order::imaginary(kappa), x)?;
    Ok((j.re, j.im))
}
