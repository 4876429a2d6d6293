//! One function per subcommand, each building a [`Table`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::PI;
use std::sync::Arc;

use super::args::Command;
use super::config::{DiracFamily, MomentumField, Pair, RunConfig, VerifyStencil};
use super::output::{Cell, Table};
use crate::dirac_moving::{quantized_dirac_mode_mixed, superluminal_example, DiracMovingMode};
use crate::error::{domain, Error, Result};
use crate::kg_moving::KgMode;
use crate::lightcone::log_ratio;
use crate::observables::{continuity_residual, momentum_expectation, IntervalGrid, MomentumResult, MOMENTUM_TOL};
use crate::oracle::{fd_residual, point_residual, schrodinger_well_oracle, HPolicy, Pde, PdeKind, Sampler, SpacetimeGrid, StencilOrder};
use crate::params::{PhysicalParams, SpacetimePoint, SpinorSample};
use crate::special_fn::{bessel_j, bessel_j_dx, bessel_y, bessel_y_dx, Order};
use crate::static_well::{self, bound_state_count, bound_window, scattering_coefficients, ScanOptions};

/// A command together with its fully resolved configuration.
#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    pub cfg: RunConfig,
    pub params: PhysicalParams,
}

fn moving(v: f64) -> PhysicalParams {
    PhysicalParams::moving_wall(1.0, 1.0, 1.0, v, 1.0)
}

/// Parameters used by `command` when the config has no `[params]` table.
pub fn default_params(command: Command, cfg: &RunConfig) -> PhysicalParams {
    match command {
        Command::BoundStates => PhysicalParams::static_well(1.5, 4.0),
        Command::Scatter => PhysicalParams::static_well(0.5, 2.0),
        Command::DiracModes if cfg.dirac_modes.family == DiracFamily::Superluminal => moving(-2.0),
        Command::Momentum if cfg.momentum.field == MomentumField::Superluminal => moving(-2.0),
        Command::Momentum => PhysicalParams::static_well(0.0, 1.0),
        _ => moving(0.6),
    }
}

impl Job {
    pub fn new(command: Command, mut cfg: RunConfig) -> Self {
        if let Command::Verify { stencil: Some(s) } = command {
            cfg.verify.stencil = s;
        }
        let params = cfg.params.unwrap_or_else(|| default_params(command, &cfg));
        cfg.params = Some(params);
        Self { command, cfg, params }
    }

    pub fn table(&self, columns: Vec<&'static str>) -> Table {
        let config = serde_json::to_value(&self.cfg).unwrap_or_default();
        Table::new(self.command.name(), config, columns)
    }

    pub fn run(&self) -> Result<Table> {
        match self.command {
            Command::BoundStates => bound_states(self),
            Command::Scatter => scatter(self),
            Command::KgModes => kg_modes(self),
            Command::DiracModes => dirac_modes(self),
            Command::Momentum => momentum(self),
            Command::Verify { .. } => verify(self),
        }
    }
}

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    xs.into_iter().fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
}

fn bound_states(job: &Job) -> Result<Table> {
    let p = &job.params;
    if p.v != 0.0 {
        return domain(format!("bound-states needs a static well (v = 0), got v = {}", p.v));
    }
    let opts = ScanOptions {
        points: job.cfg.bound_states.scan_points,
        ..ScanOptions::default()
    };
    let states = static_well::bound_states(p, &opts)?;
    let mc2 = p.mc2();
    let nr = if job.cfg.bound_states.compare_schrodinger {
        schrodinger_well_oracle(p.v0, p.l0, p.m, p.hbar)
    } else {
        Vec::new()
    };
    let mut t = job.table(vec!["n", "e", "e_minus_mc2", "plug_back", "e_schrodinger", "rel_diff_schrodinger"]);
    let mut worst: Option<f64> = None;
    for (i, s) in states.iter().enumerate() {
        let pb = match s.plug_back() {
            Ok(x) => Some(x),
            Err(e) => {
                t.fail(Some(i), &e);
                None
            }
        };
        worst = max_of(worst.into_iter().chain(pb));
        let e_nr = nr.get(i).copied();
        let rel = e_nr.map(|x| ((s.e - mc2) - x).abs() / x.abs());
        t.push(vec![(i + 1).into(), s.e.into(), (s.e - mc2).into(), pb.into(), e_nr.map(|x| x + mc2).into(), rel.into()]);
    }
    t.note("count", states.len());
    t.note("expected_count", bound_state_count(p)?);
    t.note("window", bound_window(p));
    t.note("max_plug_back", worst);
    if job.cfg.bound_states.compare_schrodinger {
        t.note("schrodinger_count", nr.len());
    }
    Ok(t)
}

fn scatter(job: &Job) -> Result<Table> {
    let p = &job.params;
    p.validate()?;
    if p.v != 0.0 {
        return domain(format!("scatter needs a static well (v = 0), got v = {}", p.v));
    }
    let s = &job.cfg.scatter;
    let es = linspace(s.e_min, s.e_max, s.n);
    let results: Vec<Result<(f64, f64, f64)>> = es
        .par_iter()
        .map(|&e| {
            let (r, tr, sol) = scattering_coefficients(e, p)?;
            Ok((r, tr, sol.plug_back()?))
        })
        .collect();
    let mut t = job.table(vec!["e", "r", "t", "r_plus_t", "conservation_error", "plug_back", "klein"]);
    let (mut worst, mut worst_pb, mut klein_rows) = (None, None, 0usize);
    for (i, (&e, res)) in es.iter().zip(results).enumerate() {
        let klein = e < p.v0 - p.mc2();
        klein_rows += klein as usize;
        match res {
            Ok((r, tr, pb)) => {
                let cons = (r + tr - 1.0).abs();
                worst = max_of(worst.into_iter().chain([cons]));
                worst_pb = max_of(worst_pb.into_iter().chain([pb]));
                t.push(vec![e.into(), r.into(), tr.into(), (r + tr).into(), cons.into(), pb.into(), (klein as usize).into()]);
            }
            Err(err) => {
                t.fail(Some(i), &err);
                let mut row = vec![Cell::from(e)];
                row.extend(std::iter::repeat_n(Cell::Empty, 5));
                row.push((klein as usize).into());
                t.push(row);
            }
        }
    }
    t.note("max_conservation_error", worst);
    t.note("max_plug_back", worst_pb);
    t.note("klein_rows", klein_rows);
    t.note("failed_rows", t.errors.len());
    Ok(t)
}

/// Grid over the well `0 <= z <= v t`, walls included; the flag marks walls.
fn well_points(v: f64, t_min: f64, t_max: f64, nz: usize, nt: usize) -> Vec<(SpacetimePoint, bool)> {
    let mut out = Vec::with_capacity(nz * nt);
    for t in linspace(t_min, t_max, nt) {
        for i in 0..nz {
            let z = if i + 1 == nz { v * t } else { v * t * i as f64 / (nz - 1) as f64 };
            out.push((SpacetimePoint::new(z, t), i == 0 || i + 1 == nz));
        }
    }
    out
}

/// Light-cone coordinates `(x, y)` of a point.
fn xy(p: SpacetimePoint, c: f64) -> Result<(f64, f64)> {
    let x = log_ratio(p, c)?.exp();
    let ct = c * p.t;
    Ok((x, ((ct - p.z) * (ct + p.z)).sqrt()))
}

struct ModeStats {
    max_residual: Option<f64>,
    wall_max: f64,
    field_max: f64,
}

impl ModeStats {
    fn new() -> Self {
        Self {
            max_residual: None,
            wall_max: 0.0,
            field_max: 0.0,
        }
    }

    fn add(&mut self, value: f64, wall: bool, residual: Option<f64>) {
        self.field_max = self.field_max.max(value);
        if wall {
            self.wall_max = self.wall_max.max(value);
        }
        self.max_residual = max_of(self.max_residual.into_iter().chain(residual));
    }

    fn wall_rel(&self) -> Option<f64> {
        (self.field_max > 0.0).then(|| self.wall_max / self.field_max)
    }
}

fn kg_modes(job: &Job) -> Result<Table> {
    let p = &job.params;
    let k = &job.cfg.kg_modes;
    let pde = Pde::new(PdeKind::KleinGordon, p);
    let points = well_points(p.v, k.t_min, k.t_max, k.nz, k.nt);
    let mut t = job.table(vec!["n", "z", "t", "x", "y", "wall", "re_u", "im_u", "residual"]);
    let mut per_mode = Vec::new();
    let mut overall = ModeStats::new();
    for &n in &k.modes {
        let mode = KgMode::new(n, p)?.with_mix(complex(k.c_j), complex(k.c_y));
        let h = HPolicy::Local(Arc::new(move |q| mode.suggested_step(q)));
        let rows: Vec<Result<(f64, f64, Complex64, Option<f64>)>> = points
            .par_iter()
            .map(|&(q, wall)| {
                let (x, y) = xy(q, p.c)?;
                let u = mode.value(q)?;
                let r = if wall {
                    None
                } else {
                    Some(point_residual(&pde, Sampler::Scalar(&mode), q, &h, StencilOrder::Fourth)?)
                };
                Ok((x, y, u, r))
            })
            .collect();
        let mut stats = ModeStats::new();
        for (&(q, wall), row) in points.iter().zip(rows) {
            let cells: Vec<Cell> = match row {
                Ok((x, y, u, r)) => {
                    stats.add(u.norm(), wall, r);
                    overall.add(u.norm(), wall, r);
                    vec![x.into(), y.into(), u.re.into(), u.im.into(), r.into()]
                }
                Err(e) => {
                    t.fail(Some(t.rows.len()), &e);
                    vec![Cell::Empty; 5]
                }
            };
            let mut row = vec![n.into(), q.z.into(), q.t.into()];
            row.extend(cells[..2].iter().cloned());
            row.push((wall as usize).into());
            row.extend(cells[2..].iter().cloned());
            t.push(row);
        }
        per_mode.push(json!({
            "n": n,
            "k_n": mode.k_n,
            "max_rel_residual": stats.max_residual,
            "wall_max_rel": stats.wall_rel(),
        }));
    }
    t.note("max_rel_residual", overall.max_residual);
    t.note("wall_max_rel", overall.wall_rel());
    t.note("modes", per_mode);
    Ok(t)
}

type DiracRow = (f64, f64, SpinorSample, Option<f64>);

fn dirac_modes(job: &Job) -> Result<Table> {
    let p = &job.params;
    let d = &job.cfg.dirac_modes;
    let pde = Pde::new(PdeKind::DiracSystem, p);
    let runs: Vec<(u32, DiracMovingMode, Vec<(SpacetimePoint, bool)>)> = match d.family {
        DiracFamily::Quantized => {
            let points = well_points(p.v, d.t_min, d.t_max, d.nz, d.nt);
            d.modes
                .iter()
                .map(|&n| Ok((n, quantized_dirac_mode_mixed(n, p, complex(d.c_j), complex(d.c_y))?, points.clone())))
                .collect::<Result<_>>()?
        }
        DiracFamily::Superluminal => {
            let ex = superluminal_example(p, d.nu, complex(d.c1))?;
            let ct0 = p.c * p.t0;
            let points = (0..d.nz)
                .map(|i| {
                    let z = ct0 * (-1.0 + 2.0 * (i + 1) as f64 / (d.nz + 1) as f64);
                    (SpacetimePoint::new(z, p.t0), false)
                })
                .collect();
            vec![(d.nu, ex.mode, points)]
        }
    };
    let mut t = job.table(vec![
        "n", "z", "t", "x", "y", "wall", "re_phi0", "im_phi0", "re_phi2", "im_phi2", "re_u1", "im_u1", "re_u2", "im_u2",
        "residual",
    ]);
    let mut per_mode = Vec::new();
    let mut overall = ModeStats::new();
    let mut worst_continuity: Option<f64> = None;
    for (n, mode, points) in runs {
        let h = HPolicy::Local(Arc::new(move |q| mode.suggested_step(q)));
        let rows: Vec<Result<DiracRow>> = points
            .par_iter()
            .map(|&(q, wall)| {
                let (x, y) = xy(q, p.c)?;
                let s = mode.spinor(q)?;
                let r = if wall {
                    None
                } else {
                    Some(point_residual(&pde, Sampler::Pair(&mode), q, &h, StencilOrder::Fourth)?)
                };
                Ok((x, y, s, r))
            })
            .collect();
        let mut stats = ModeStats::new();
        for (&(q, wall), row) in points.iter().zip(rows) {
            let cells: Vec<Cell> = match row {
                Ok((x, y, s, r)) => {
                    let (u1, u2) = s.to_u_pair();
                    stats.add(u1.norm(), wall, r);
                    overall.add(u1.norm(), wall, r);
                    [x, y, s.phi0.re, s.phi0.im, s.phi2.re, s.phi2.im, u1.re, u1.im, u2.re, u2.im]
                        .into_iter()
                        .map(Cell::from)
                        .chain([r.into()])
                        .collect()
                }
                Err(e) => {
                    t.fail(Some(t.rows.len()), &e);
                    vec![Cell::Empty; 11]
                }
            };
            let mut row = vec![n.into(), q.z.into(), q.t.into()];
            row.extend(cells[..2].iter().cloned());
            row.push((wall as usize).into());
            row.extend(cells[2..].iter().cloned());
            t.push(row);
        }
        let interior: Vec<SpacetimePoint> = points.iter().filter(|q| !q.1).map(|q| q.0).collect();
        let continuity = if interior.is_empty() {
            None
        } else {
            let hc = interior.iter().map(|&q| mode.suggested_step(q)).fold(f64::INFINITY, f64::min);
            let grid = SpacetimeGrid {
                label: format!("mode {n} interior"),
                points: interior,
            };
            match continuity_residual(&mode, &grid, p.c, hc) {
                Ok(r) => Some(r.max_rel_residual),
                Err(e) => {
                    t.fail(None, &e);
                    None
                }
            }
        };
        worst_continuity = max_of(worst_continuity.into_iter().chain(continuity));
        per_mode.push(json!({
            "n": n,
            "nu": [mode.nu.re, mode.nu.im],
            "max_rel_residual": stats.max_residual,
            "wall_max_rel_u1": stats.wall_rel(),
            "continuity_max_rel": continuity,
        }));
    }
    t.note("max_rel_residual", overall.max_residual);
    if d.family == DiracFamily::Quantized {
        t.note("wall_max_rel_u1", overall.wall_rel());
    }
    t.note("continuity_max_rel", worst_continuity);
    t.note("modes", per_mode);
    Ok(t)
}

fn momentum_result(job: &Job) -> Result<MomentumResult> {
    let p = &job.params;
    let m = &job.cfg.momentum;
    match m.field {
        MomentumField::Superluminal => {
            let ex = superluminal_example(p, m.nu, complex(m.c1))?;
            let ct0 = p.c * p.t0;
            let grid = IntervalGrid::new(m.z_lo * ct0, m.z_hi * ct0, m.n_points, p.t0)?;
            momentum_expectation(&ex, &grid, p.hbar)
        }
        MomentumField::PlaneWave => {
            let k = m.k;
            let wave = move |q: SpacetimePoint| Ok(SpinorSample::new(Complex64::new(0.0, k * q.z).exp(), Complex64::new(0.0, 0.0)));
            let grid = IntervalGrid::new(m.z_lo, m.z_hi, m.n_points, 0.0)?;
            momentum_expectation(&wave, &grid, p.hbar)
        }
    }
}

fn momentum(job: &Job) -> Result<Table> {
    let r = momentum_result(job)?;
    let mut t = job.table(vec!["level", "n_points", "re", "im"]);
    for (i, l) in r.history.iter().enumerate() {
        t.push(vec![i.into(), l.n_points.into(), l.re.into(), l.im.into()]);
    }
    t.note("re", r.value.re);
    t.note("im", r.value.im);
    t.note("norm", r.norm);
    t.note("discrepancy", r.discrepancy);
    t.note("tolerance", MOMENTUM_TOL);
    if job.cfg.momentum.field == MomentumField::PlaneWave {
        t.note("hbar_k", job.params.hbar * job.cfg.momentum.k);
    }
    Ok(t)
}

/// Outcome of one invariant check. `pass` compares `value` with `limit`
/// as `note` describes.
struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
    note: String,
    pass: bool,
}

fn below(name: &'static str, value: Result<f64>, limit: f64) -> Check {
    match value {
        Ok(v) => Check {
            name,
            value: v,
            limit,
            note: "value < limit".into(),
            pass: v < limit,
        },
        Err(e) => failed(name, limit, &e),
    }
}

fn failed(name: &'static str, limit: f64, e: &Error) -> Check {
    Check {
        name,
        value: f64::NAN,
        limit,
        note: e.to_string(),
        pass: false,
    }
}

fn check_wronskian() -> Result<f64> {
    let orders = [Order::real(0.5), Order::real(2.3), Order::new(1.0, 0.5), Order::imaginary(2.0)];
    let mut worst: f64 = 0.0;
    for nu in orders {
        for x in [0.5, 2.0, 7.0] {
            let w = bessel_j(nu, x)? * bessel_y_dx(nu, x)? - bessel_j_dx(nu, x)? * bessel_y(nu, x)?;
            let exact = 2.0 / (PI * x);
            worst = worst.max((w - exact).norm() / exact);
        }
    }
    Ok(worst)
}

/// Observed convergence order of the KG stencil on a plane wave under one
/// halving of the step.
fn stencil_slope(order: StencilOrder) -> Result<f64> {
    let p = PhysicalParams::static_well(0.0, 1.0);
    let pde = Pde::new(PdeKind::KleinGordon, &p);
    let k = 3.0;
    let omega = (k * k + 1.0f64).sqrt();
    let wave = move |q: SpacetimePoint| Ok(Complex64::new(0.0, k * q.z - omega * q.t).exp());
    let g = SpacetimeGrid::rect((0.1, 0.4), (1.0, 1.2), 3, 3);
    let r = |h: f64| fd_residual(&pde, Sampler::Scalar(&wave), &g, &HPolicy::Fixed(h), order).map(|r| r.max_rel_residual);
    Ok((r(0.04)? / r(0.02)?).log2())
}

/// Random static wells and energies, half of them in the Klein zone.
/// Returns the largest `|R + T - 1|` and the largest plug-back residual.
fn check_scattering(seed: u64, cases: usize) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut cons, mut pb): (f64, f64) = (0.0, 0.0);
    for i in 0..cases {
        let klein = i % 2 == 1;
        let v0 = if klein { rng.gen_range(2.5..6.0) } else { rng.gen_range(0.0..3.0) };
        let p = PhysicalParams::static_well(v0, rng.gen_range(0.5..3.0));
        let e = if klein {
            rng.gen_range(1.05..v0 - 1.05)
        } else {
            v0 + rng.gen_range(1.05..4.0)
        };
        let (r, t, sol) = scattering_coefficients(e, &p)?;
        cons = cons.max((r + t - 1.0).abs());
        pb = pb.max(sol.plug_back()?);
    }
    Ok((cons, pb))
}

fn check_kg(p: &PhysicalParams) -> Result<(f64, f64)> {
    let mut wall: f64 = 0.0;
    let mut res: f64 = 0.0;
    for n in 1..=3 {
        let mode = KgMode::new(n, p)?;
        let mut stats = ModeStats::new();
        for (q, is_wall) in well_points(p.v, 1.0, 2.0, 9, 3) {
            stats.add(mode.value(q)?.norm(), is_wall, None);
        }
        wall = wall.max(stats.wall_rel().unwrap_or(0.0));
        let grid = SpacetimeGrid::well_interior(p.v, (1.0, 2.0), 8, 4, 0.05);
        let h = HPolicy::Local(Arc::new(move |q| mode.suggested_step(q)));
        let r = fd_residual(&Pde::new(PdeKind::KleinGordon, p), Sampler::Scalar(&mode), &grid, &h, StencilOrder::Fourth)?;
        res = res.max(r.max_rel_residual);
    }
    Ok((wall, res))
}

fn check_dirac(p: &PhysicalParams) -> Result<(f64, f64)> {
    let mode = quantized_dirac_mode_mixed(2, p, Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.3))?;
    let grid = SpacetimeGrid::well_interior(p.v, (1.0, 2.0), 8, 4, 0.05);
    let h = HPolicy::Local(Arc::new(move |q| mode.suggested_step(q)));
    let r = fd_residual(&Pde::new(PdeKind::DiracSystem, p), Sampler::Pair(&mode), &grid, &h, StencilOrder::Fourth)?;
    let hc = grid.points.iter().map(|&q| mode.suggested_step(q)).fold(f64::INFINITY, f64::min);
    let c = continuity_residual(&mode, &grid, p.c, hc)?;
    Ok((r.max_rel_residual, c.max_rel_residual))
}

fn verify(job: &Job) -> Result<Table> {
    let cfg = &job.cfg.verify;
    let well = moving(0.6);
    let mut checks = vec![below("bessel_wronskian", check_wronskian(), 1e-10)];

    let order = match cfg.stencil {
        VerifyStencil::Fourth => StencilOrder::Fourth,
        VerifyStencil::Second => StencilOrder::Second,
    };
    checks.push(match stencil_slope(order) {
        Ok(s) => Check {
            name: "stencil_order",
            value: s,
            limit: 0.3,
            note: "|value - 4| <= limit".into(),
            pass: (s - 4.0).abs() <= 0.3,
        },
        Err(e) => failed("stencil_order", 0.3, &e),
    });

    match check_scattering(job.cfg.seed, cfg.cases) {
        Ok((cons, pb)) => {
            checks.push(below("scattering_conservation", Ok(cons), 1e-10));
            checks.push(below("scattering_plug_back", Ok(pb), 1e-10));
        }
        Err(e) => checks.push(failed("scattering_conservation", 1e-10, &e)),
    }

    let bw = PhysicalParams::static_well(3.0, 4.0);
    checks.push(below(
        "bound_state_count",
        static_well::bound_states(&bw, &ScanOptions::default())
            .and_then(|s| Ok((s.len() as f64 - bound_state_count(&bw)? as f64).abs())),
        0.5,
    ));

    match check_kg(&well) {
        Ok((wall, res)) => {
            checks.push(below("kg_wall_zeros", Ok(wall), 1e-9));
            checks.push(below("kg_residual", Ok(res), 1e-6));
        }
        Err(e) => checks.push(failed("kg_residual", 1e-6, &e)),
    }
    match check_dirac(&well) {
        Ok((res, cont)) => {
            checks.push(below("dirac_residual", Ok(res), 1e-6));
            checks.push(below("dirac_continuity", Ok(cont), 1e-6));
        }
        Err(e) => checks.push(failed("dirac_residual", 1e-6, &e)),
    }

    let mut plane = Job::new(Command::Momentum, RunConfig::default());
    plane.cfg.momentum.field = MomentumField::PlaneWave;
    plane.params = PhysicalParams::static_well(0.0, 1.0);
    checks.push(below(
        "momentum_plane_wave_real",
        momentum_result(&plane).map(|r| r.value.im.abs() / r.value.norm()),
        1e-8,
    ));
    let example = Job::new(Command::Momentum, RunConfig::default());
    checks.push(match momentum_result(&example) {
        Ok(r) => {
            let limit = 100.0 * r.discrepancy;
            let value = r.value.im.abs() / r.value.norm();
            Check {
                name: "momentum_example_complex",
                value,
                limit,
                note: "value > limit".into(),
                pass: value > limit,
            }
        }
        Err(e) => failed("momentum_example_complex", f64::NAN, &e),
    });

    let mut t = job.table(vec!["check", "status", "value", "limit", "note"]);
    let failures = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        let status = if c.pass { "pass" } else { "fail" };
        t.push(vec![c.name.into(), status.into(), c.value.into(), c.limit.into(), c.note.clone().into()]);
    }
    t.note("checks", checks.len());
    t.note("failed", failures);
    t.failed = failures > 0;
    Ok(t)
}
