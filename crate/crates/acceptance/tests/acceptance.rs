use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relwell::dirac_moving::{quantized_dirac_mode, quantized_dirac_mode_mixed, superluminal_example, DiracMovingMode, ModeDomain};
use relwell::kg_moving::{kn, KgMode};
use relwell::observables::{continuity_residual, momentum_expectation, momentum_imaginary_part, IntervalGrid, MOMENTUM_POINTS};
use relwell::oracle::{
    fd_residual, schrodinger_well_oracle, u2_from_u1, HPolicy, Pde, PdeKind, Sampler, SpacetimeGrid, StencilOrder,
};
use relwell::special_fn::{bessel_j, bessel_j_dx, bessel_y, bessel_y_dx, Order};
use relwell::static_well::{bound_state_count, bound_states, scattering_coefficients, ScanOptions, StaticSolution};
use relwell::{PhysicalParams, SpacetimePoint, SpinorField, SpinorSample};
use relwell_acceptance::{run_all, Criterion};

const I: Complex64 = Complex64::new(0.0, 1.0);
const VS: [f64; 3] = [0.3, 0.6, 0.9];

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn moving(v: f64) -> PhysicalParams {
    PhysicalParams::moving_wall(1.0, 1.0, 1.0, v, 1.0)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn dirac_step(m: DiracMovingMode) -> HPolicy {
    HPolicy::Local(Arc::new(move |p| m.suggested_step(p)))
}

/// Interior grid of the well with the walls one spacing away.
fn interior(v: f64, n: usize) -> SpacetimeGrid {
    SpacetimeGrid::well_interior(v, (1.0, 2.0), n, n, 1.0 / (n + 1) as f64)
}

fn cone_grid() -> SpacetimeGrid {
    SpacetimeGrid::rect((-0.6, 0.6), (1.0, 2.0), 9, 9)
}

fn bessel_wronskian(c: &mut Criterion) {
    let orders = [
        ("0", Order::real(0.0)),
        ("1/2", Order::real(0.5)),
        ("3", Order::real(3.0)),
        ("0.5i", Order::imaginary(0.5)),
        ("5i", Order::imaginary(5.0)),
        ("20i", Order::imaginary(20.0)),
        ("2+i", Order::new(2.0, 1.0)),
    ];
    let xs: Vec<f64> = (0..40).map(|i| 0.1 * 1000f64.powf(i as f64 / 39.0)).collect();
    for (name, nu) in orders {
        let eval = |x: f64| -> relwell::Result<(f64, f64)> {
            let (j, y) = (bessel_j(nu, x)?, bessel_y(nu, x)?);
            let (dj, dy) = (bessel_j_dx(nu, x)?, bessel_y_dx(nu, x)?);
            let err = (j * dy - dj * y - 2.0 / (PI * x)).norm();
            Ok((err, j.norm() * dy.norm() + dj.norm() * y.norm()))
        };
        match xs.iter().map(|&x| eval(x).map(|r| (x, r))).collect::<relwell::Result<Vec<_>>>() {
            Ok(rows) => {
                let (x, (err, scale)) = rows.into_iter().max_by(|a, b| a.1 .0.total_cmp(&b.1 .0)).unwrap();
                c.check(
                    err < 1e-10,
                    format!("Wronskian nu = {name}: max |W - 2/(pi x)| = {err:.2e} at x = {x:.3} (|J||Y'| + |J'||Y| = {scale:.1e}, tol 1e-10)"),
                );
            }
            Err(e) => c.check(false, format!("Wronskian nu = {name}: {e}")),
        }
    }
    let (mut ej, mut ey): (f64, f64) = (0.0, 0.0);
    for &x in &xs {
        let a = (2.0 / (PI * x)).sqrt();
        ej = ej.max((bessel_j(0.5, x).unwrap() - a * x.sin()).norm());
        ey = ey.max((bessel_y(0.5, x).unwrap() + a * x.cos()).norm());
    }
    c.check(ej < 1e-10, format!("J_1/2 = sqrt(2/(pi x)) sin x: max abs error {ej:.2e} (tol 1e-10)"));
    c.check(ey < 1e-10, format!("Y_1/2 = -sqrt(2/(pi x)) cos x: max abs error {ey:.2e} (tol 1e-10)"));
}

fn kg_modes(c: &mut Criterion) {
    for v in VS {
        let p = moving(v);
        let pde = Pde::new(PdeKind::KleinGordon, &p);
        let grid = interior(v, 64);
        let (mut res, mut wall) = ((0.0f64, 0), (0.0f64, 0));
        for n in 1..=10 {
            let m = KgMode::new(n, &p).unwrap();
            let h = HPolicy::Local(Arc::new(move |q| m.suggested_step(q)));
            let r = fd_residual(&pde, Sampler::Scalar(&m), &grid, &h, StencilOrder::Fourth).unwrap();
            if r.max_rel_residual >= res.0 {
                res = (r.max_rel_residual, n);
            }
            let top = grid.points.iter().map(|&q| m.value(q).unwrap().norm()).fold(0.0, f64::max);
            for t in linspace(1.0, 2.0, 64) {
                for z in [0.0, v * t] {
                    let w = m.value(SpacetimePoint::new(z, t)).unwrap().norm() / top;
                    if w >= wall.0 {
                        wall = (w, n);
                    }
                }
            }
        }
        c.check(res.0 < 1e-6, format!("v = {v}c, n = 1..10, 64x64 grid: max KG residual {:.2e} (n = {}, tol 1e-6)", res.0, res.1));
        c.check(wall.0 < 1e-9, format!("v = {v}c, n = 1..10: max wall |u| / max |u| = {:.2e} (n = {}, tol 1e-9)", wall.0, wall.1));
    }
}

fn quantization(c: &mut Criterion) {
    for cc in [1.0, 3.0] {
        let p = PhysicalParams::moving_wall(1.0, 1.0, cc, cc * PI.tanh(), 1.0);
        let k1 = kn(1, &p).unwrap();
        c.check((k1 - 1.0).abs() < 1e-12, format!("c = {cc}, v = c tanh(pi): k_1 - 1 = {:.2e} (tol 1e-12)", k1 - 1.0));
    }
    let mut worst = 0.0f64;
    for v in [0.05, 0.3, 0.6, 0.9, 0.999, PI.tanh()] {
        let p = moving(v);
        let k1 = kn(1, &p).unwrap();
        for n in 1..=200u32 {
            worst = worst.max((kn(n, &p).unwrap() - n as f64 * k1).abs());
        }
    }
    c.check(worst == 0.0, format!("k_n - n k_1 over n <= 200 and six speeds: max {worst:e} (exact)"));
}

fn random_modes(seed: u64, count: usize) -> Vec<DiracMovingMode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = PhysicalParams { m: 1.3, ..moving(0.5) };
    (0..count)
        .map(|i| {
            let nu = match i % 3 {
                0 => cx(rng.gen_range(0.2..3.5), 0.0),
                1 => cx(0.0, rng.gen_range(0.5..6.0)),
                _ => cx(rng.gen_range(-1.5..1.5), rng.gen_range(-3.0..3.0)),
            };
            let d = [(); 4].map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            DiracMovingMode::new(Order(nu), d, &p).unwrap()
        })
        .collect()
}

fn quantized_family() -> Vec<DiracMovingMode> {
    let mut out = Vec::new();
    for v in VS {
        for n in [1, 2, 5, 10] {
            out.push(quantized_dirac_mode(n, &moving(v)).unwrap());
            out.push(quantized_dirac_mode_mixed(n, &moving(v), cx(1.0, 0.0), cx(0.2, 0.3)).unwrap());
        }
    }
    out
}

fn grid_for(m: &DiracMovingMode, n: usize) -> SpacetimeGrid {
    match m.domain {
        ModeDomain::Well => interior(m.params.v, n),
        ModeDomain::LightCone => cone_grid(),
    }
}

fn dirac_modes(c: &mut Criterion) {
    let random = random_modes(2024, 9);
    let quantized = quantized_family();
    for (label, modes) in [("quantized", &quantized), ("random-order", &random)] {
        let mut worst = (0.0f64, cx(0.0, 0.0));
        for &m in modes.iter() {
            let pde = Pde::new(PdeKind::DiracSystem, &m.params);
            let r = fd_residual(&pde, Sampler::Pair(&m), &grid_for(&m, 16), &dirac_step(m), StencilOrder::Fourth).unwrap();
            if r.max_rel_residual >= worst.0 {
                worst = (r.max_rel_residual, m.nu);
            }
        }
        c.check(
            worst.0 < 1e-6,
            format!("{label} modes ({}): coupled-system residual max {:.2e} (nu = {:.3}, tol 1e-6)", modes.len(), worst.0, worst.1),
        );
    }

    let orders: Vec<String> = random.iter().map(|m| format!("{:.2}", m.nu)).collect();
    let mut worst = (0.0f64, cx(0.0, 0.0));
    for &m in random.iter().chain(&quantized[..4]) {
        let grid = grid_for(&m, 7);
        let u1 = m.u1_field();
        let closed: Vec<Complex64> = grid.points.iter().map(|&p| m.u2(p).unwrap()).collect();
        let top = closed.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (&p, u2) in grid.points.iter().zip(&closed) {
            let oracle = u2_from_u1(&u1, p, &dirac_step(m), &m.params).unwrap();
            let err = (oracle - u2).norm() / u2.norm().max(1e-3 * top);
            if err >= worst.0 {
                worst = (err, m.nu);
            }
        }
    }
    c.check(
        worst.0 < 1e-7,
        format!("U2 closed form vs i hbar (d_t + c d_z) U1 / (m c^2), orders {}: max rel {:.2e} (nu = {:.3}, tol 1e-7)", orders.join(", "), worst.0, worst.1),
    );

    let mut wall = 0.0f64;
    for v in VS {
        for n in 1..=10 {
            let m = quantized_dirac_mode(n, &moving(v)).unwrap();
            let top = interior(v, 16).points.iter().map(|&q| m.u1(q).unwrap().norm()).fold(0.0, f64::max);
            for t in linspace(1.0, 2.0, 16) {
                for z in [0.0, v * t] {
                    wall = wall.max(m.u1(SpacetimePoint::new(z, t)).unwrap().norm() / top);
                }
            }
        }
    }
    c.check(wall < 1e-9, format!("quantized family, v in {{0.3, 0.6, 0.9}}c, n = 1..10: max wall |U1| / max |U1| = {wall:.2e} (tol 1e-9)"));
}

/// Random well and energy in the scattering domain; odd cases sit in the
/// Klein zone `mc^2 < E < V0 - mc^2`.
fn random_scattering(rng: &mut ChaCha8Rng, klein: bool) -> (f64, PhysicalParams) {
    let l0 = rng.gen_range(0.2..5.0);
    if klein {
        let v0 = rng.gen_range(2.2..8.0);
        (rng.gen_range(1.05..v0 - 1.05), PhysicalParams::static_well(v0, l0))
    } else {
        let v0 = rng.gen_range(0.0..6.0);
        (v0 + rng.gen_range(1.0..6.0), PhysicalParams::static_well(v0, l0))
    }
}

fn static_well(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let (e, p) = random_scattering(&mut rng, i % 2 == 1);
        let (_, _, sol) = scattering_coefficients(e, &p).unwrap();
        worst = worst.max(sol.plug_back().unwrap());
    }
    c.check(worst < 1e-10, format!("100 random scattering (E, V0, L0), half in the Klein zone: max plug-back {worst:.2e} (tol 1e-10)"));

    let (mut worst, mut states) = (0.0f64, 0);
    for _ in 0..20 {
        let p = PhysicalParams::static_well(rng.gen_range(0.1..5.0), rng.gen_range(0.2..6.0));
        for s in bound_states(&p, &ScanOptions::default()).unwrap() {
            worst = worst.max(s.plug_back().unwrap());
            states += 1;
        }
    }
    c.check(worst < 1e-10, format!("{states} bound states of 20 random wells: max plug-back {worst:.2e} (tol 1e-10)"));

    let (mut worst, mut klein_points, mut points) = (0.0f64, 0, 0);
    for v0 in [0.0, 0.5, 2.5, 5.0, 10.0] {
        for l0 in [0.5, 2.0] {
            let p = PhysicalParams::static_well(v0, l0);
            for e in linspace(1.0001, v0 + 6.0, 400) {
                if (e - v0).abs() < 1.0 {
                    continue;
                }
                let (r, t, _) = scattering_coefficients(e, &p).unwrap();
                worst = worst.max((r + t - 1.0).abs());
                points += 1;
                klein_points += (e < v0 - 1.0) as usize;
            }
        }
    }
    c.check(
        worst < 1e-10 && klein_points > 0,
        format!("{points} sweep energies ({klein_points} in the Klein zone): max |R + T - 1| = {worst:.2e} (tol 1e-10)"),
    );

    for l0 in [50.0, 150.0, 400.0] {
        let p = PhysicalParams::static_well(1e-3, l0);
        let found = bound_states(&p, &ScanOptions::default()).unwrap();
        let oracle = schrodinger_well_oracle(p.v0, l0, p.m, p.hbar);
        let rel = found
            .iter()
            .zip(&oracle)
            .map(|(s, e)| ((s.e - p.mc2()) - e).abs() / e)
            .fold(0.0, f64::max);
        c.check(
            found.len() == oracle.len() && rel < 0.01,
            format!(
                "V0 = 1e-3 mc^2, L0 = {l0}: {} states vs {} from the Schroedinger oracle, max rel diff {rel:.2e} (tol 1e-2), count formula {}",
                found.len(),
                oracle.len(),
                bound_state_count(&p).unwrap()
            ),
        );
    }
}

fn continuity(c: &mut Criterion) {
    let check = |c: &mut Criterion, label: String, f: &dyn SpinorField, grid: &SpacetimeGrid, cc: f64, h: f64| {
        match continuity_residual(f, grid, cc, h) {
            Ok(r) => c.check(r.max_rel_residual < 1e-6, format!("{label}: {:.2e} (tol 1e-6)", r.max_rel_residual)),
            Err(e) => c.check(false, format!("{label}: {e}")),
        }
    };
    let static_grid = |s: &StaticSolution| SpacetimeGrid::rect((-1.0, s.params.l0 + 1.0), (0.0, 1.0), 24, 4);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = (0.0f64, String::new());
    for i in 0..20 {
        let (e, p) = random_scattering(&mut rng, i % 2 == 1);
        let (_, _, s) = scattering_coefficients(e, &p).unwrap();
        let r = continuity_residual(&s, &static_grid(&s), 1.0, 1e-3).unwrap().max_rel_residual;
        if r >= worst.0 {
            worst = (r, format!("E = {e:.3}, V0 = {:.3}", p.v0));
        }
    }
    c.check(worst.0 < 1e-6, format!("20 static scattering states (10 Klein zone): max {:.2e} at {} (tol 1e-6)", worst.0, worst.1));

    let mut worst = 0.0f64;
    let mut count = 0;
    for (v0, l0) in [(1.5, 4.0), (3.0, 2.0), (0.7, 6.0)] {
        for s in bound_states(&PhysicalParams::static_well(v0, l0), &ScanOptions::default()).unwrap() {
            worst = worst.max(continuity_residual(&s, &static_grid(&s), 1.0, 1e-3).unwrap().max_rel_residual);
            count += 1;
        }
    }
    c.check(worst < 1e-6, format!("{count} static bound states: max {worst:.2e} (tol 1e-6)"));

    let modes: Vec<DiracMovingMode> = quantized_family().into_iter().chain(random_modes(2024, 9)).collect();
    let mut worst = (0.0f64, cx(0.0, 0.0));
    for m in &modes {
        let grid = grid_for(m, 12);
        let h = grid.points.iter().map(|&q| m.suggested_step(q)).fold(f64::INFINITY, f64::min);
        let r = continuity_residual(m, &grid, m.params.c, h).unwrap().max_rel_residual;
        if r >= worst.0 {
            worst = (r, m.nu);
        }
    }
    c.check(worst.0 < 1e-6, format!("{} moving-wall modes: max {:.2e} (nu = {:.3}, tol 1e-6)", modes.len(), worst.0, worst.1));

    let p = PhysicalParams::moving_wall(1.0, 1.0, 1.0, -2.0, 1.0);
    for nu in [1, 2, 4] {
        let ex = superluminal_example(&p, nu, cx(0.7, -0.4)).unwrap();
        let grid = SpacetimeGrid::rect((-0.9, 0.9), (0.95, 1.05), 19, 3);
        let h = grid.points.iter().map(|&q| ex.mode.suggested_step(q)).fold(f64::INFINITY, f64::min);
        check(c, format!("real-order example nu = {nu}"), &ex, &grid, 1.0, h);
    }

    let m = quantized_dirac_mode(2, &moving(0.6)).unwrap();
    let corrupted = move |q: SpacetimePoint| {
        let s = m.spinor(q)?;
        Ok(SpinorSample::new(s.phi0, s.phi2 * 1.5))
    };
    let grid = interior(0.6, 12);
    let h = grid.points.iter().map(|&q| m.suggested_step(q)).fold(f64::INFINITY, f64::min);
    let r = continuity_residual(&corrupted, &grid, 1.0, h).unwrap().max_rel_residual;
    c.check(r > 1e-3, format!("negative control, moving mode with phi2 scaled by 1.5: {r:.2e} (must exceed 1e-3)"));
    let (_, _, s) = scattering_coefficients(3.0, &PhysicalParams::static_well(1.0, 2.0)).unwrap();
    let bent = move |q: SpacetimePoint| {
        let x = s.sample(q)?;
        Ok(SpinorSample::new(x.phi0 * (1.0 + 0.3 * q.z), x.phi2))
    };
    let r = continuity_residual(&bent, &static_grid(&s), 1.0, 1e-3).unwrap().max_rel_residual;
    c.check(r > 1e-3, format!("negative control, scattering state with phi0 bent by (1 + 0.3 z): {r:.2e} (must exceed 1e-3)"));
}

fn complex_momentum(c: &mut Criterion) {
    let p = PhysicalParams::moving_wall(1.0, 1.0, 1.0, -2.0, 1.0);
    let ex = superluminal_example(&p, 1, cx(1.0, 0.0)).unwrap();
    let grid = IntervalGrid::new(0.05, 0.95, MOMENTUM_POINTS, 1.0).unwrap();
    let r = momentum_expectation(&ex, &grid, 1.0).unwrap();
    for l in &r.history {
        c.check(true, format!("{} points: <p> = {:.12} {:+.12} i", l.n_points, l.re, l.im));
    }
    let spread = r.discrepancy * r.value.norm();
    c.check(
        r.value.im.abs() > 100.0 * spread && r.value.im.abs() > 1e-6,
        format!("|Im <p>| = {:.6e} vs 100 x refinement discrepancy = {:.2e}", r.value.im.abs(), 100.0 * spread),
    );
    let boundary = momentum_imaginary_part(&ex, &grid, r.norm, 1.0).unwrap();
    c.check(
        (boundary - r.value.im).abs() < 1e-8 * r.value.im.abs(),
        format!("boundary term -hbar (rho(b) - rho(a)) / (2 N) = {boundary:.12} matches the quadrature"),
    );
}

fn oracle_self_test(c: &mut Criterion) {
    let p = PhysicalParams::static_well(0.0, 1.0);
    let k = 2.5;
    let e = (k * k + 1.0f64).sqrt();
    let kg = move |q: SpacetimePoint| Ok((I * (k * q.z - e * q.t)).exp());
    let ratio = k / (e + 1.0);
    let dirac = move |q: SpacetimePoint| {
        let a = (I * (k * q.z - e * q.t)).exp();
        Ok(SpinorSample::new(a, a * ratio))
    };
    let grid = SpacetimeGrid::rect((-1.0, 1.0), (0.5, 1.5), 9, 7);
    let kg_pde = Pde::new(PdeKind::KleinGordon, &p);
    let r = fd_residual(&kg_pde, Sampler::Scalar(&kg), &grid, &HPolicy::default(), StencilOrder::Fourth).unwrap();
    c.check(r.max_rel_residual < 1e-8, format!("KG plane wave: {:.2e} (tol 1e-8)", r.max_rel_residual));
    for kind in [PdeKind::DiracSystem, PdeKind::USystem, PdeKind::KgOnU1] {
        let r = fd_residual(&Pde::new(kind, &p), Sampler::Pair(&dirac), &grid, &HPolicy::default(), StencilOrder::Fourth).unwrap();
        c.check(r.max_rel_residual < 1e-8, format!("Dirac plane wave, {kind:?}: {:.2e} (tol 1e-8)", r.max_rel_residual));
    }
    let kq = 3.0;
    let eq = (kq * kq + 1.0f64).sqrt();
    let kg3 = move |q: SpacetimePoint| Ok((I * (kq * q.z - eq * q.t)).exp());
    let rq = kq / (eq + 1.0);
    let dirac3 = move |q: SpacetimePoint| {
        let a = (I * (kq * q.z - eq * q.t)).exp();
        Ok(SpinorSample::new(a, a * rq))
    };
    let small = SpacetimeGrid::rect((0.1, 0.4), (1.0, 1.2), 3, 3);
    let slope = |pde: &Pde, f: Sampler<'_>| {
        let r = |h: f64| fd_residual(pde, f, &small, &HPolicy::Fixed(h), StencilOrder::Fourth).unwrap().max_rel_residual;
        (r(0.04) / r(0.02)).log2()
    };
    let s = slope(&kg_pde, Sampler::Scalar(&kg3));
    c.check((s - 4.0).abs() <= 0.3, format!("KG h-halving slope {s:.3} (4 +- 0.3)"));
    let s = slope(&Pde::new(PdeKind::DiracSystem, &p), Sampler::Pair(&dirac3));
    c.check((s - 4.0).abs() <= 0.3, format!("Dirac h-halving slope {s:.3} (4 +- 0.3)"));
}

fn cli_contract(c: &mut Criterion) {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let run = |args: &[&str]| relwell::cli::run_args(std::iter::once("relwell").chain(args.iter().copied()));
    for cmd in ["bound-states", "scatter", "kg-modes", "dirac-modes", "momentum", "verify"] {
        for fmt in ["csv", "json"] {
            let out = path(&format!("{cmd}.{fmt}"));
            let args = [cmd, "--format", fmt, "--out", &out, "--seed", "3"];
            let first = run(&args);
            let a = std::fs::read(&out).unwrap();
            let second = run(&args);
            let b = std::fs::read(&out).unwrap();
            c.check(
                first == 0 && second == 0 && a == b,
                format!("{cmd} --format {fmt}: exit {first}/{second}, {} bytes, identical = {}", a.len(), a == b),
            );
        }
    }
    let write = |name: &str, text: &str| {
        let p = path(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let out = path("err.out");
    let cases: [(&str, Vec<String>, i32); 7] = [
        ("unknown config key", vec!["scatter".into(), "--config".into(), write("a.toml", "colour = 1\n")], 1),
        ("malformed config", vec!["scatter".into(), "--config".into(), write("b.toml", "[scatter\n")], 1),
        ("invalid range", vec!["scatter".into(), "--config".into(), write("c.toml", "[scatter]\ne_min = 3.0\ne_max = 1.0\n")], 1),
        ("unknown flag value", vec!["scatter".into(), "--format".into(), "xml".into()], 1),
        ("static well for kg-modes", vec!["kg-modes".into(), "--config".into(), write("d.toml", "[params]\nm = 1.0\nhbar = 1.0\nc = 1.0\nV0 = 1.0\nL0 = 1.0\nv = 0.0\nt0 = 0.0\n")], 1),
        ("unsettled momentum refinement", vec!["momentum".into(), "--config".into(), write("e.toml", "[momentum]\nn_points = 17\nz_lo = -0.5\nz_hi = 0.99\nnu = 7\n")], 2),
        ("verify with a second-order stencil", vec!["verify".into(), "--stencil".into(), "second".into()], 2),
    ];
    for (label, mut args, want) in cases {
        args.extend(["--out".into(), out.clone()]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&refs);
        c.check(got == want, format!("{label}: exit {got} (expected {want})"));
    }
}

fn main() {
    let failed = run_all(&[
        (1, "special-function Wronskian and half-order closed forms", bessel_wronskian),
        (2, "KG moving-well modes: wall zeros and FD residual", kg_modes),
        (3, "quantization formula", quantization),
        (4, "Dirac moving-well modes: residual, U2 oracle, wall zeros", dirac_modes),
        (5, "static well: plug-back, R + T = 1, nonrelativistic limit", static_well),
        (6, "continuity equation for every Dirac solution", continuity),
        (7, "momentum expectation of the real-order example is complex", complex_momentum),
        (8, "oracle self-test on plane waves", oracle_self_test),
        (9, "CLI determinism and exit codes", cli_contract),
    ]);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
