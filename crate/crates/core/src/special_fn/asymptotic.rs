//! Hankel's large-argument expansion of J_nu and J_nu' for complex order.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::Approx;

const MAX_TERMS: usize = 600;

/// Returns `None` when the smallest term is still too large to be useful.
pub(crate) fn j_hankel(nu: Complex64, x: f64) -> Option<Approx> {
    let mu = nu * nu * 4.0;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut r = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    // a_k / x^k
    let mut a = Complex64::new(1.0, 0.0);
    let mut last = 1.0f64;
    let mut peak = 1.0f64;
    let turn = mu.norm().sqrt() * 0.5 + 1.0;
    let mut tail = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        // b_k uses a_{k-1}
        let b = a * (mu + 4.0 * kf * kf - 1.0) / (8.0 * kf * x);
        let a_next = a * (mu - odd * odd) / (8.0 * kf * x);
        let mag = a_next.norm().max(b.norm());
        if kf > turn && mag > last {
            tail = last;
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += a_next * sign;
            r += b * sign;
        } else {
            q += a_next * sign;
            s += b * sign;
        }
        a = a_next;
        last = mag;
        peak = peak.max(mag);
        if mag < 1e-17 {
            tail = mag;
            break;
        }
    }
    if !tail.is_finite() || tail > 1e-6 {
        return None;
    }
    // omega = x - theta, theta = (nu/2 + 1/4) pi; expand so that cos x, sin x
    // use the library's exact argument reduction.
    let theta = nu * FRAC_PI_2 + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (ct, st) = (theta.cos(), theta.sin());
    let cos_w = ct * cx + st * sx;
    let sin_w = ct * sx - st * cx;
    let amp = (2.0 / (PI * x)).sqrt();
    let value = (p * cos_w - q * sin_w) * amp;
    let deriv = -(r * sin_w + s * cos_w) * amp;
    let scale = amp * (cos_w.norm() + sin_w.norm());
    let rel = tail + f64::EPSILON * (8.0 * peak + x * 1e-3 + theta.norm());
    Some(Approx {
        value,
        deriv,
        err: scale * rel,
        derr: scale * rel,
    })
}
