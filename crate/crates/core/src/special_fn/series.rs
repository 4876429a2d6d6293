//! Ascending power series for J_nu, with a rounding-error estimate.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{ln_gamma, rgamma};
use super::Approx;

const MAX_TERMS: usize = 2000;

/// `(x/2)^nu / Gamma(nu + 1)` and a bound on its relative rounding error.
fn prefactor(nu: Complex64, x: f64) -> (Complex64, f64) {
    let lx = (0.5 * x).ln();
    if nu.im != 0.0 && nu.re.abs() <= 1e-14 * nu.im.abs() {
        return imaginary_prefactor(nu.im, lx);
    }
    let pow = (nu * lx).exp();
    let g = rgamma(nu + 1.0);
    let rel = f64::EPSILON
        * (4.0 + (nu * lx).norm() + ln_gamma(nu + 1.0).norm().min(1e4));
    (pow * g, rel)
}

/// Purely imaginary order `i kappa`: the modulus of `1/Gamma(1 + i kappa)` is
/// `sqrt(sinh(pi kappa) / (pi kappa))`, evaluated in real arithmetic; only the
/// phase comes from the complex log-gamma.
fn imaginary_prefactor(kappa: f64, lx: f64) -> (Complex64, f64) {
    let pk = PI * kappa.abs();
    let modulus = if pk < 1e-8 {
        1.0 + pk * pk / 12.0
    } else if pk < 20.0 {
        (pk.sinh() / pk).sqrt()
    } else {
        (0.5 * pk).exp() * ((1.0 - (-2.0 * pk).exp()) / (2.0 * pk)).sqrt()
    };
    let theta = ln_gamma(Complex64::new(1.0, kappa)).im;
    let phase = kappa * lx - theta;
    let rel = f64::EPSILON * (4.0 + (kappa * lx).abs() + theta.abs());
    (Complex64::from_polar(modulus, phase), rel)
}

/// Sums `J_nu(x) = (x/2)^nu sum_k (-x^2/4)^k / (k! Gamma(nu + k + 1))` and its
/// derivative. `nu` must not be a negative integer.
pub(crate) fn j_series(nu: Complex64, x: f64) -> Approx {
    let (pre, pre_rel) = prefactor(nu, x);
    let q = -0.25 * x * x;
    let mut t = Complex64::new(1.0, 0.0);
    let mut sum = t;
    let mut dsum = t * nu;
    let mut abs_sum = 1.0;
    let mut abs_dsum = nu.norm();
    let mut k = 0usize;
    for kk in 1..MAX_TERMS {
        k = kk;
        let kf = kk as f64;
        let denom = nu + kf;
        t *= q / (denom * kf);
        let dk = nu + 2.0 * kf;
        sum += t;
        dsum += t * dk;
        let mag = t.norm();
        abs_sum += mag;
        abs_dsum += mag * dk.norm();
        let shrinking = 0.25 * x * x < kf * denom.norm();
        if shrinking && mag <= 1e-17 * abs_sum && mag * dk.norm() <= 1e-17 * abs_dsum.max(abs_sum) {
            break;
        }
    }
    let pm = pre.norm();
    let value = pre * sum;
    let deriv = pre * dsum / x;
    let round = f64::EPSILON * (2.0 + (k as f64).sqrt());
    let err = pm * (abs_sum * round + sum.norm() * pre_rel);
    let derr = pm / x * (abs_dsum * round + dsum.norm() * pre_rel);
    Approx {
        value,
        deriv,
        err,
        derr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_small_argument() {
        let a = j_series(Complex64::new(0.0, 0.0), 1e-8);
        assert!((a.value.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn imaginary_prefactor_agrees_with_generic_path() {
        for kappa in [0.5, 3.0, 20.0] {
            let nu = Complex64::new(0.0, kappa);
            let lx = (0.5f64 * 3.0).ln();
            let (a, _) = imaginary_prefactor(kappa, lx);
            let b = (nu * lx).exp() * rgamma(nu + 1.0);
            assert!((a - b).norm() <= 1e-13 * a.norm(), "kappa {kappa}: {a} vs {b}");
        }
    }

    #[test]
    fn error_estimate_grows_with_cancellation() {
        let nu = Complex64::new(0.0, 0.0);
        let small = j_series(nu, 1.0);
        let big = j_series(nu, 40.0);
        assert!(small.err < 1e-14);
        assert!(big.err > 1e-6);
    }
}
