//! Taylor-series continuation of solutions of Bessel's equation
//! `x^2 w'' + x w' + (x^2 - nu^2) w = 0` along the positive real axis.

use num_complex::Complex64;

const MAX_TERMS: usize = 400;

/// One analytic-continuation step from `x0` to `x0 + h`, `|h| < x0`.
fn step(nu2: Complex64, x0: f64, w: Complex64, dw: Complex64, h: f64) -> (Complex64, Complex64) {
    // b_n = a_n h^n, where a_n are the Taylor coefficients at x0
    let x02 = x0 * x0;
    let (h2, h3, h4) = (h * h, h * h * h, h * h * h * h);
    let zero = Complex64::new(0.0, 0.0);
    let (mut bm2, mut bm1, mut b0, mut b1) = (zero, zero, w, dw * h);
    let mut sum = b0 + b1;
    let mut dsum = b1;
    let mut scale = b0.norm().max(b1.norm());
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let b2 = -(b1 * (x0 * (2.0 * nf + 1.0) * (nf + 1.0) * h)
            + b0 * ((nf * nf + x02) * h2)
            - b0 * nu2 * h2
            + bm1 * (2.0 * x0 * h3)
            + bm2 * h4)
            / (x02 * (nf + 1.0) * (nf + 2.0));
        sum += b2;
        dsum += b2 * (nf + 2.0);
        let m = b2.norm();
        scale = scale.max(m);
        if n > 4 && m <= 1e-18 * scale && b1.norm() <= 1e-17 * scale {
            break;
        }
        bm2 = bm1;
        bm1 = b0;
        b0 = b1;
        b1 = b2;
    }
    (sum, dsum / h)
}

/// Continues `(w, w')` from `x_from` to `x_to`; returns the new pair and the
/// number of steps taken.
pub(crate) fn continue_solution(
    nu: Complex64,
    x_from: f64,
    w: Complex64,
    dw: Complex64,
    x_to: f64,
) -> (Complex64, Complex64, usize) {
    let nu2 = nu * nu;
    let nu_abs = nu.norm();
    let (mut x, mut w, mut dw) = (x_from, w, dw);
    let mut steps = 0;
    while x != x_to {
        let local = 1.0 + nu_abs / x;
        let h_max = (0.5 * x).min(1.0 / local);
        let gap = x_to - x;
        let h = if gap.abs() <= h_max { gap } else { h_max.copysign(gap) };
        let (nw, ndw) = step(nu2, x, w, dw, h);
        w = nw;
        dw = ndw;
        x = if gap.abs() <= h_max { x_to } else { x + h };
        steps += 1;
    }
    (w, dw, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continues_half_order_solution() {
        // sqrt(2/(pi x)) sin x solves the nu = 1/2 equation
        let f = |x: f64| (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        let df = |x: f64| {
            (2.0 / (std::f64::consts::PI * x)).sqrt() * (x.cos() - x.sin() / (2.0 * x))
        };
        let nu = Complex64::new(0.5, 0.0);
        let (w, dw, steps) = continue_solution(
            nu,
            2.0,
            Complex64::new(f(2.0), 0.0),
            Complex64::new(df(2.0), 0.0),
            37.0,
        );
        assert!(steps > 10);
        assert!((w.re - f(37.0)).abs() < 1e-13, "{} vs {}", w.re, f(37.0));
        assert!((dw.re - df(37.0)).abs() < 1e-13);
    }

    #[test]
    fn backward_continuation() {
        let f = |x: f64| (2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos();
        let df = |x: f64| {
            -(2.0 / (std::f64::consts::PI * x)).sqrt() * (x.sin() + x.cos() / (2.0 * x))
        };
        let nu = Complex64::new(-0.5, 0.0);
        let (w, _, _) = continue_solution(
            nu,
            20.0,
            Complex64::new(f(20.0), 0.0),
            Complex64::new(df(20.0), 0.0),
            3.0,
        );
        assert!((w.re - f(3.0)).abs() < 1e-13);
    }
}
