//! Complex log-gamma (Stirling series with upward shift and reflection) and
//! the trigonometric helpers with exact argument reduction in units of pi.

use num_complex::Complex64;
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const SHIFT_RADIUS: f64 = 17.0;

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        corr += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + corr
}

/// `ln Gamma(z)`, correct modulo `2 pi i`. Poles give an infinite real part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = sin_pi(z);
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        prod *= w;
        w += 1.0;
    }
    stirling(w) - prod.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let s = sin_pi(z);
        return Complex64::new(PI, 0.0) / (s * ln_gamma(Complex64::new(1.0, 0.0) - z).exp());
    }
    ln_gamma(z).exp()
}

/// `1 / Gamma(z)`, entire; exactly zero at the non-positive integers.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        (-ln_gamma(z)).exp()
    } else {
        sin_pi(z) * ln_gamma(Complex64::new(1.0, 0.0) - z).exp() / PI
    }
}

/// Splits `a` into `(n, f)` with `a = n + f`, `n` an integer and `|f| <= 1/2`.
/// The subtraction is exact.
fn reduce(a: f64) -> (f64, f64) {
    let n = a.round();
    (n, a - n)
}

fn parity(n: f64) -> f64 {
    if (n * 0.5).fract() == 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// `(sin(pi f), cos(pi f))` for `|f| <= 1/2`, exact zeros at `f = 0, 1/2`.
pub(crate) fn sin_cos_pi_reduced(f: f64) -> (f64, f64) {
    ((PI * f).sin(), (PI * (0.5 - f.abs())).sin())
}

pub fn sin_pi(z: Complex64) -> Complex64 {
    let (n, f) = reduce(z.re);
    let b = PI * z.im;
    let (s, c) = sin_cos_pi_reduced(f);
    Complex64::new(s * b.cosh(), c * b.sinh()) * parity(n)
}

pub fn cos_pi(z: Complex64) -> Complex64 {
    let (n, f) = reduce(z.re);
    let b = PI * z.im;
    let (s, c) = sin_cos_pi_reduced(f);
    Complex64::new(c * b.cosh(), -s * b.sinh()) * parity(n)
}

/// `(cot(pi z), csc(pi z))` without overflow for large `|Im z|`.
pub fn cot_csc_pi(z: Complex64) -> (Complex64, Complex64) {
    if z.im.abs() < 1.0 {
        let s = sin_pi(z);
        return (cos_pi(z) / s, s.inv());
    }
    let (n, f) = reduce(z.re);
    let w = Complex64::new(PI * f, PI * z.im);
    let i = Complex64::i();
    let sign = parity(n);
    if z.im > 0.0 {
        // q = e^{2iw} is small
        let q = (i * w * 2.0).exp();
        let half = (i * w).exp();
        let cot = i * (q + 1.0) / (q - 1.0);
        let csc = i * 2.0 * half / (q - 1.0);
        (cot, csc * sign)
    } else {
        let p = (-i * w * 2.0).exp();
        let half = (-i * w).exp();
        let cot = i * (1.0 + p) / (1.0 - p);
        let csc = i * 2.0 * half / (1.0 - p);
        (cot, csc * sign)
    }
}
