//! Nonrelativistic finite square well, used as the reference for the
//! static Dirac well in the small-V0 limit.

use std::f64::consts::{FRAC_PI_2, PI};

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Bound energies (measured from the well floor) of depth `v0`, width `l`,
/// sorted ascending.
///
/// With `xi = k l / 2` and `z0 = (l/2) sqrt(2 m v0) / hbar`, even states solve
/// `xi sin xi = eta cos xi` and odd ones `xi cos xi = -eta sin xi`, where
/// `eta = sqrt(z0^2 - xi^2)`.
pub fn schrodinger_well_oracle(v0: f64, l: f64, m: f64, hbar: f64) -> Vec<f64> {
    if !(v0 > 0.0 && l > 0.0 && m > 0.0 && hbar > 0.0) {
        return Vec::new();
    }
    let z0 = 0.5 * l * (2.0 * m * v0).sqrt() / hbar;
    let eta = |xi: f64| (z0 * z0 - xi * xi).max(0.0).sqrt();
    let even = |xi: f64| xi * xi.sin() - eta(xi) * xi.cos();
    let odd = |xi: f64| xi * xi.cos() + eta(xi) * xi.sin();
    let mut xis = Vec::new();
    let mut n = 0.0;
    loop {
        let lo = n * PI;
        if lo >= z0 {
            break;
        }
        xis.push(bisect(even, lo, (lo + FRAC_PI_2).min(z0)));
        let mid = lo + FRAC_PI_2;
        if mid < z0 {
            xis.push(bisect(odd, mid, (lo + PI).min(z0)));
        }
        n += 1.0;
    }
    xis.iter()
        .map(|xi| 2.0 * hbar * hbar * xi * xi / (m * l * l))
        .collect()
}
