use std::f64::consts::PI;

use super::config::KvConfig;
use super::record::{PathSeries, RunRecord, Series, TimingGroup};
use super::scene::{rr_parts, RrField, Scene};
use super::{discrete_frechet, fit_loglog_slope, median, real, Output};
use crate::error::{Error, Result};
use crate::planner::{integrate_path, PathResult, PlanConfig};
use crate::solver::{angle_error, solve_gradient, BoundarySpec, Estimate, Problem, SourceSpec, WalkConfig};

/// Seed of the reference solves; kept away from the small seeds used by runs
/// so the two never share random streams.
pub const ORACLE_SEED: u64 = 0x0AC1_E5EED;

fn walk_config(cfg: &KvConfig) -> Result<WalkConfig> {
    let d = WalkConfig::default();
    Ok(WalkConfig {
        epsilon: cfg.real_or("epsilon", d.epsilon)?,
        n_walks: d.n_walks,
        screening: d.screening,
        max_steps: cfg.usize_or("max_steps", d.max_steps)?,
        seed: 0,
        c_imp: cfg.real_or("c_imp", d.c_imp)?,
        workers: cfg.usize_or("workers", 0)?,
    })
}

/// A point of the ambient space, zero-padded to `dim`.
fn point(cfg: &KvConfig, key: &str, default: &[f64], dim: usize) -> Result<Vec<f64>> {
    let mut p = cfg.reals_or(key, default)?;
    if p.len() > dim {
        return Err(Error::config(format!("`{key}` has {} coordinates, the scene has {dim}", p.len())));
    }
    p.resize(dim, 0.0);
    Ok(p)
}

fn plan_config(cfg: &KvConfig, goal: Vec<f64>, walk: WalkConfig, step: f64) -> Result<PlanConfig> {
    let mut p = PlanConfig::new(goal, cfg.real_or("step", step)?, walk);
    p.goal_tol = cfg.get("goal_tol")?;
    p.max_iters = cfg.usize_or("max_iters", 2000)?;
    Ok(p)
}

fn seeds(cfg: &KvConfig, default: &[u64]) -> Result<Vec<u64>> {
    let s = cfg.ints_or("seeds", default)?;
    if s.is_empty() {
        return Err(Error::config("seed list is empty"));
    }
    Ok(s)
}

fn nonempty<T>(v: Vec<T>, what: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        Err(Error::config(format!("{what} grid is empty")))
    } else {
        Ok(v)
    }
}

/// Angle to the reference, with an all-zero estimate counted as orthogonal.
fn angle_or_orthogonal(g: &[f64], reference: &[f64]) -> Result<f64> {
    match angle_error(g, reference) {
        Err(Error::UndefinedDirection) if reference.iter().any(|c| *c != 0.0) => Ok(0.5 * PI),
        other => other,
    }
}

struct PathLog {
    rows: Vec<Vec<String>>,
    nonpositive: usize,
}

impl PathLog {
    const COLUMNS: [&'static str; 6] = ["label", "step", "x0", "x1", "distance", "step_size"];

    fn new() -> Self {
        Self { rows: Vec::new(), nonpositive: 0 }
    }

    fn add(&mut self, record: &mut RunRecord, label: &str, path: &PathResult) {
        for (k, p) in path.points.iter().enumerate() {
            self.rows.push(vec![
                label.to_string(),
                k.to_string(),
                real(p[0]),
                real(p[1]),
                real(path.distances[k]),
                path.step_sizes.get(k).map_or(String::new(), |s| real(*s)),
            ]);
        }
        self.nonpositive += path.distances.iter().filter(|d| !(**d > 0.0)).count();
        record.paths.push(PathSeries {
            label: label.to_string(),
            points: path.points.iter().map(|p| [p[0], p[1]]).collect(),
            status: path.status.as_str().to_string(),
            length: path.length,
        });
    }

    fn finish(self, name: &str, record: &mut RunRecord, out: &mut Output) -> Result<()> {
        record.scalars.insert("nonpositive_points".into(), self.nonpositive as f64);
        out.csv(
            &format!("{name}_paths.csv"),
            "one row per path point; step_size is the step taken from that point (empty at the end)",
            &Self::COLUMNS,
            &self.rows,
        )
    }
}

fn min_distance(p: &PathResult) -> f64 {
    p.distances.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Mean over the steps of `Var(ĝ)/|ĝ|²`, the relative variance of the
/// per-step gradient estimate.
fn mean_relative_variance(steps: &[Estimate]) -> f64 {
    if steps.is_empty() {
        return 0.0;
    }
    steps
        .iter()
        .map(|g| {
            let n2: f64 = g.mean.iter().map(|c| c * c).sum();
            g.variance_of_mean() / n2
        })
        .sum::<f64>()
        / steps.len() as f64
}

pub(super) fn multistart(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("multistart", cfg.echo());
    let scene = Scene::disk(cfg.real_or("k_r", 0.2)?, 2)?;
    let goal = point(cfg, "goal", &[8.0, 0.0], 2)?;
    let mut walk = walk_config(cfg)?;
    walk.screening = cfg.real_or("screening", 1.0)?;
    walk.n_walks = cfg.usize_or("n_walks", 100_000)?;
    walk.seed = seeds(cfg, &[0])?[0];
    let plan = plan_config(cfg, goal, walk, 0.25)?;

    let starts: Vec<Vec<f64>> = match cfg.reals("starts")? {
        Some(flat) => {
            if flat.len() % 2 != 0 || flat.is_empty() {
                return Err(Error::config("`starts` takes x, y pairs"));
            }
            flat.chunks(2).map(<[f64]>::to_vec).collect()
        }
        None => {
            let count = cfg.usize_or("ring_count", 8)?;
            let radius = cfg.real_or("ring_radius", 8.0)?;
            let offset = cfg.real_or("ring_offset", PI / 8.0)?;
            (0..count)
                .map(|i| {
                    let a = offset + 2.0 * PI * i as f64 / count as f64;
                    vec![radius * a.cos(), radius * a.sin()]
                })
                .collect()
        }
    };
    let starts = nonempty(starts, "start point")?;

    let mut log = PathLog::new();
    let mut rows = Vec::new();
    for (i, s) in starts.iter().enumerate() {
        let path = integrate_path(scene.field.as_ref(), &plan, s)?;
        rows.push(vec![
            i.to_string(),
            real(s[0]),
            real(s[1]),
            path.status.as_str().into(),
            real(path.length),
            path.points.len().to_string(),
            real(min_distance(&path)),
        ]);
        log.add(&mut record, &format!("start {i}"), &path);
    }
    out.csv(
        "multistart.csv",
        "one row per start point of the ring; length is the summed segment length",
        &["start", "x0", "x1", "status", "length", "n_points", "min_distance"],
        &rows,
    )?;
    log.finish("multistart", &mut record, out)?;
    record.decor = scene.decor;
    Ok(record)
}

pub(super) fn screening_sweep(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("screening_sweep", cfg.echo());
    let scene = Scene::disk(cfg.real_or("k_r", 0.4)?, 2)?;
    let goal = point(cfg, "goal", &[8.0, 0.0], 2)?;
    let start = point(cfg, "start", &[-8.0, 0.0], 2)?;
    let screenings = nonempty(cfg.reals_or("screening", &[10.0, 1.0, 0.1])?, "screening")?;
    let seeds = seeds(cfg, &[0])?;
    let mut walk = walk_config(cfg)?;
    walk.n_walks = cfg.usize_or("n_walks", 100_000)?;
    let step = cfg.real_or("step", 0.25)?;

    let mut log = PathLog::new();
    let mut rows = Vec::new();
    for &c in &screenings {
        let mut lengths = Vec::new();
        for &seed in &seeds {
            let w = WalkConfig { screening: c, seed, ..walk.clone() };
            let plan = plan_config(cfg, goal.clone(), w, step)?;
            let path = integrate_path(scene.field.as_ref(), &plan, &start)?;
            rows.push(vec![
                real(c),
                seed.to_string(),
                path.status.as_str().into(),
                real(path.length),
                path.points.len().to_string(),
                real(min_distance(&path)),
            ]);
            lengths.push(path.length);
            log.add(&mut record, &format!("c={c} seed={seed}"), &path);
        }
        let mean = lengths.iter().sum::<f64>() / lengths.len() as f64;
        record.scalars.insert(format!("mean_length_c={c}"), mean);
    }
    out.csv(
        "screening_sweep.csv",
        "one row per (screening, seed) path",
        &["screening", "seed", "status", "length", "n_points", "min_distance"],
        &rows,
    )?;
    log.finish("screening_sweep", &mut record, out)?;
    record.decor = scene.decor;
    Ok(record)
}

pub(super) fn visibility_sweep(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("visibility_sweep", cfg.echo());
    let k_rs = nonempty(cfg.reals_or("k_r", &[0.3, 0.45, 0.6])?, "k_r")?;
    let goal = point(cfg, "goal", &[8.0, 0.0], 2)?;
    let start = point(cfg, "start", &[-8.0, 0.0], 2)?;
    let seeds = seeds(cfg, &[0])?;
    let mut walk = walk_config(cfg)?;
    walk.screening = cfg.real_or("screening", 1.0)?;
    walk.n_walks = cfg.usize_or("n_walks", 100_000)?;
    let step = cfg.real_or("step", 0.25)?;

    let mut log = PathLog::new();
    let mut rows = Vec::new();
    for &k_r in &k_rs {
        let scene = Scene::disk(k_r, 2)?;
        let mut rel = Vec::new();
        for &seed in &seeds {
            let plan = plan_config(cfg, goal.clone(), WalkConfig { seed, ..walk.clone() }, step)?;
            let path = integrate_path(scene.field.as_ref(), &plan, &start)?;
            let v = mean_relative_variance(&path.step_gradients);
            rows.push(vec![
                real(k_r),
                seed.to_string(),
                path.status.as_str().into(),
                real(path.length),
                path.points.len().to_string(),
                real(min_distance(&path)),
                real(v),
            ]);
            rel.push(v);
            log.add(&mut record, &format!("k_r={k_r} seed={seed}"), &path);
        }
        record
            .scalars
            .insert(format!("mean_relative_variance_k_r={k_r}"), rel.iter().sum::<f64>() / rel.len() as f64);
        if record.decor.is_empty() || k_r == k_rs[k_rs.len() - 1] {
            record.decor = scene.decor;
        }
    }
    out.csv(
        "visibility_sweep.csv",
        "one row per (k_r, seed) path; mean_relative_variance averages Var(g)/|g|^2 of the per-step gradient means",
        &["k_r", "seed", "status", "length", "n_points", "min_distance", "mean_relative_variance"],
        &rows,
    )?;
    log.finish("visibility_sweep", &mut record, out)?;
    Ok(record)
}

/// Reference gradient at `x` from `oracle_walks` walks with [`ORACLE_SEED`].
fn oracle(problem: &Problem<'_>, walk: &WalkConfig, x: &[f64], n: usize, seed: u64) -> Result<Estimate> {
    solve_gradient(problem, &WalkConfig { n_walks: n, seed, ..walk.clone() }, x)
}

fn oracle_seed(cfg: &KvConfig, seeds: &[u64]) -> Result<u64> {
    let s = cfg.get_or("oracle_seed", ORACLE_SEED)?;
    if seeds.contains(&s) {
        return Err(Error::config("oracle_seed must differ from every run seed"));
    }
    Ok(s)
}

pub(super) fn nwalks_sweep(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("nwalks_sweep", cfg.echo());
    let scene = Scene::disk(cfg.real_or("k_r", 0.3)?, 2)?;
    let x = point(cfg, "point", &[-8.0, 0.0], 2)?;
    let goal = point(cfg, "goal", &[8.0, 0.0], 2)?;
    let ns = nonempty(cfg.ints_or("n_walks", &[1_000, 10_000, 100_000])?, "n_walks")?;
    let seeds = seeds(cfg, &(0..16).collect::<Vec<_>>())?;
    let mut walk = walk_config(cfg)?;
    walk.screening = cfg.real_or("screening", 1.0)?;
    let oracle_n = cfg.usize_or("oracle_walks", 10_000_000)?;
    let oseed = oracle_seed(cfg, &seeds)?;

    let bc = BoundarySpec::default();
    let src = SourceSpec::dirac(goal, 1.0);
    let problem = Problem::new(scene.field.as_ref(), &bc, &src);
    let reference = oracle(&problem, &walk, &x, oracle_n, oseed)?;
    for (i, g) in reference.mean.iter().enumerate() {
        record.scalars.insert(format!("oracle_g{i}"), *g);
    }

    let mut rows = Vec::new();
    let mut timing_rows = Vec::new();
    let mut series = Series { label: "angle error".into(), x: Vec::new(), y: Vec::new() };
    let mut means = Vec::new();
    for &n in &ns {
        let mut errs = Vec::new();
        let mut times = Vec::new();
        for &seed in &seeds {
            let g = solve_gradient(&problem, &WalkConfig { n_walks: n as usize, seed, ..walk.clone() }, &x)?;
            let e = angle_or_orthogonal(&g.mean, &reference.mean)?;
            rows.push(vec![n.to_string(), seed.to_string(), real(e)]);
            timing_rows.push(vec![n.to_string(), seed.to_string(), real(g.wall_time)]);
            series.x.push(n as f64);
            series.y.push(e);
            errs.push(e);
            times.push(g.wall_time);
        }
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        record.scalars.insert(format!("mean_angle_error_n={n}"), mean);
        record.timing.groups.push(TimingGroup { category: n.to_string(), series: "gradient".into(), values: times });
        means.push(mean);
    }
    let nsf: Vec<f64> = ns.iter().map(|n| *n as f64).collect();
    if ns.len() >= 3 {
        record.scalars.insert("angle_error_slope".into(), fit_loglog_slope(&nsf, &means)?);
    }
    out.csv(
        "nwalks_sweep.csv",
        &format!("angle error [rad] of the gradient at the fixed point against a {oracle_n}-walk reference"),
        &["n_walks", "seed", "angle_error"],
        &rows,
    )?;
    out.csv("nwalks_sweep_timing.csv", "wall time [s] per gradient estimate", &["n_walks", "seed", "wall_time"], &timing_rows)?;
    record.series.push(series);
    record.axis_labels = Some(("n_walks".into(), "angle error [rad]".into()));
    Ok(record)
}

pub(super) fn parallel_sweep(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("parallel_sweep", cfg.echo());
    let scene = Scene::disk(cfg.real_or("k_r", 0.3)?, 2)?;
    let x = point(cfg, "point", &[-8.0, 0.0], 2)?;
    let goal = point(cfg, "goal", &[8.0, 0.0], 2)?;
    let workers = nonempty(cfg.ints_or("worker_counts", &[1, 2, 4, 8])?, "worker_counts")?;
    let ns = nonempty(cfg.ints_or("n_walks", &[10_000, 100_000])?, "n_walks")?;
    let repeats = cfg.usize_or("repeats", 32)?.max(1);
    let seed = seeds(cfg, &[0])?[0];
    let mut walk = walk_config(cfg)?;
    walk.screening = cfg.real_or("screening", 1.0)?;
    walk.seed = seed;

    let bc = BoundarySpec::default();
    let src = SourceSpec::dirac(goal, 1.0);
    let problem = Problem::new(scene.field.as_ref(), &bc, &src);
    let mut rows = Vec::new();
    let mut timing_rows = Vec::new();
    for &n in &ns {
        let mut first: Option<Vec<f64>> = None;
        for &w in &workers {
            if w == 0 {
                return Err(Error::config("worker counts must be at least 1"));
            }
            let cfg_w = WalkConfig { n_walks: n as usize, workers: w as usize, ..walk.clone() };
            let mut times = Vec::with_capacity(repeats);
            let mut est = None;
            for r in 0..repeats {
                let g = solve_gradient(&problem, &cfg_w, &x)?;
                timing_rows.push(vec![w.to_string(), n.to_string(), r.to_string(), real(g.wall_time)]);
                times.push(g.wall_time);
                est = Some(g.mean);
            }
            let est = est.expect("at least one repeat");
            let same = first.get_or_insert_with(|| est.clone()) == &est;
            rows.push(vec![w.to_string(), n.to_string(), real(est[0]), real(est[1]), same.to_string()]);
            record.timing.scalars.insert(format!("median_wall_time_w={w}_n={n}"), median(&times));
            record.timing.groups.push(TimingGroup { category: w.to_string(), series: format!("n={n}"), values: times });
        }
    }
    out.csv(
        "parallel_sweep.csv",
        "gradient estimate per (workers, n_walks); matches_first is true when it equals the first worker count's estimate bit for bit",
        &["workers", "n_walks", "g0", "g1", "matches_first"],
        &rows,
    )?;
    out.csv(
        "parallel_sweep_timing.csv",
        "wall time [s] per gradient estimate",
        &["workers", "n_walks", "repeat", "wall_time"],
        &timing_rows,
    )?;
    record.axis_labels = Some(("workers".into(), "wall time [s]".into()));
    Ok(record)
}

pub(super) fn dim_sweep(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("dim_sweep", cfg.echo());
    let dims = nonempty(cfg.ints_or("dims", &[2, 3, 4, 5])?, "dims")?;
    let ns = nonempty(cfg.ints_or("n_walks", &[1_000, 10_000, 100_000, 1_000_000])?, "n_walks")?;
    let seeds = seeds(cfg, &(0..8).collect::<Vec<_>>())?;
    let k_r = cfg.real_or("k_r", 0.3)?;
    let mut walk = walk_config(cfg)?;
    walk.screening = cfg.real_or("screening", 1.0)?;
    let oracle_n = cfg.usize_or("oracle_walks", 10_000_000)?;
    let oseed = oracle_seed(cfg, &seeds)?;
    let x_in = cfg.reals_or("point", &[-8.0, 0.0])?;
    let goal_in = cfg.reals_or("goal", &[8.0, 0.0])?;

    let mut rows = Vec::new();
    let mut timing_rows = Vec::new();
    let mut slope_rows = Vec::new();
    for &dim in &dims {
        let dim = dim as usize;
        let scene = Scene::disk(k_r, dim)?;
        let pad = |p: &[f64]| {
            let mut v = p.to_vec();
            v.resize(dim.max(v.len()), 0.0);
            v
        };
        let (x, goal) = (pad(&x_in), pad(&goal_in));
        let bc = BoundarySpec::default();
        let src = SourceSpec::dirac(goal, 1.0);
        let problem = Problem::new(scene.field.as_ref(), &bc, &src);
        let reference = oracle(&problem, &walk, &x, oracle_n, oseed)?;
        record.timing.scalars.insert(format!("oracle_wall_time_dim={dim}"), reference.wall_time);
        let mut series = Series { label: format!("n={dim}"), x: Vec::new(), y: Vec::new() };
        let (mut mean_err, mut mean_time) = (Vec::new(), Vec::new());
        for &n in &ns {
            let (mut errs, mut times) = (Vec::new(), Vec::new());
            for &seed in &seeds {
                let g = solve_gradient(&problem, &WalkConfig { n_walks: n as usize, seed, ..walk.clone() }, &x)?;
                let e = angle_or_orthogonal(&g.mean, &reference.mean)?;
                rows.push(vec![dim.to_string(), n.to_string(), seed.to_string(), real(e)]);
                timing_rows.push(vec![dim.to_string(), n.to_string(), seed.to_string(), real(g.wall_time)]);
                series.x.push(n as f64);
                series.y.push(e);
                errs.push(e);
                times.push(g.wall_time);
            }
            mean_err.push(errs.iter().sum::<f64>() / errs.len() as f64);
            mean_time.push(times.iter().sum::<f64>() / times.len() as f64);
        }
        let nsf: Vec<f64> = ns.iter().map(|n| *n as f64).collect();
        if ns.len() >= 3 {
            let es = fit_loglog_slope(&nsf, &mean_err)?;
            let ts = fit_loglog_slope(&nsf, &mean_time)?;
            record.scalars.insert(format!("angle_error_slope_dim={dim}"), es);
            record.timing.scalars.insert(format!("wall_time_slope_dim={dim}"), ts);
            slope_rows.push(vec![dim.to_string(), real(es)]);
        }
        record.series.push(series);
    }
    out.csv(
        "dim_sweep.csv",
        &format!("angle error [rad] at the fixed point against a {oracle_n}-walk reference per dimension"),
        &["dim", "n_walks", "seed", "angle_error"],
        &rows,
    )?;
    out.csv("dim_sweep_slopes.csv", "log-log slope of the mean angle error against n_walks", &["dim", "angle_error_slope"], &slope_rows)?;
    out.csv("dim_sweep_timing.csv", "wall time [s] per gradient estimate", &["dim", "n_walks", "seed", "wall_time"], &timing_rows)?;
    record.axis_labels = Some(("n_walks".into(), "angle error [rad]".into()));
    Ok(record)
}

struct RrSetup {
    start: Vec<f64>,
    goal: Vec<f64>,
    walk: WalkConfig,
    step: f64,
}

fn rr_setup(cfg: &KvConfig) -> Result<RrSetup> {
    let start = point(cfg, "start", &[0.785, 0.8], 2)?;
    let goal = point(cfg, "goal", &[2.042, 0.2], 2)?;
    let mut walk = walk_config(cfg)?;
    walk.epsilon = cfg.real_or("epsilon", 0.02)?;
    walk.n_walks = cfg.usize_or("n_walks", 100_000)?;
    walk.seed = seeds(cfg, &[0])?[0];
    Ok(RrSetup { start, goal, walk, step: cfg.real_or("step", 0.1)? })
}

fn rr_row(field: &str, c: f64, path: &PathResult) -> Vec<String> {
    vec![
        field.to_string(),
        real(c),
        path.status.as_str().into(),
        real(path.length),
        path.points.len().to_string(),
        real(min_distance(path)),
    ]
}

const RR_COLUMNS: [&str; 6] = ["field", "screening", "status", "length", "n_points", "min_distance"];

pub(super) fn rr_ik(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("rr_ik", cfg.echo());
    let (arm, obstacle, n_col) = rr_parts(cfg)?;
    let scene = Scene::rr(arm, obstacle, n_col, RrField::Ik)?;
    let setup = rr_setup(cfg)?;
    let screenings = nonempty(cfg.reals_or("screening", &[0.0, 5.0])?, "screening")?;

    let mut log = PathLog::new();
    let mut rows = Vec::new();
    for &c in &screenings {
        let plan = plan_config(cfg, setup.goal.clone(), WalkConfig { screening: c, ..setup.walk.clone() }, setup.step)?;
        let path = integrate_path(scene.field.as_ref(), &plan, &setup.start)?;
        rows.push(rr_row("ik", c, &path));
        record.scalars.insert(format!("length_c={c}"), path.length);
        log.add(&mut record, &format!("c={c}"), &path);
    }
    out.csv("rr_ik.csv", "one row per screening value; coordinates are joint angles [rad]", &RR_COLUMNS, &rows)?;
    log.finish("rr_ik", &mut record, out)?;
    write_curve(&scene, out)?;
    record.decor = scene.decor;
    record.axis_labels = Some(("q1".into(), "q2".into()));
    Ok(record)
}

fn write_curve(scene: &Scene, out: &mut Output) -> Result<()> {
    let rows: Vec<Vec<String>> = scene
        .decor
        .iter()
        .filter_map(|d| match d {
            super::Decor::Points { points } => Some(points),
            _ => None,
        })
        .flatten()
        .map(|p| vec![real(p[0]), real(p[1])])
        .collect();
    out.csv("collision_curve.csv", "sampled configurations touching the obstacle", &["q1", "q2"], &rows)
}

pub(super) fn rr_lipschitz(cfg: &KvConfig, out: &mut Output) -> Result<RunRecord> {
    let mut record = RunRecord::new("rr_lipschitz", cfg.echo());
    let (arm, obstacle, n_col) = rr_parts(cfg)?;
    let lip = Scene::rr(arm.clone(), obstacle, n_col, RrField::Lipschitz)?;
    let ik = Scene::rr(arm, obstacle, n_col, RrField::Ik)?;
    let setup = rr_setup(cfg)?;
    let c = cfg.real_or("screening", 0.0)?;
    let plan = plan_config(cfg, setup.goal.clone(), WalkConfig { screening: c, ..setup.walk.clone() }, setup.step)?;

    let mut log = PathLog::new();
    let lip_path = integrate_path(lip.field.as_ref(), &plan, &setup.start)?;
    let ik_path = integrate_path(ik.field.as_ref(), &plan, &setup.start)?;
    let frechet = discrete_frechet(&lip_path.points, &ik_path.points)?;
    record.scalars.insert("frechet".into(), frechet);
    record.scalars.insert("frechet_bound".into(), 2.0 * plan.step_upper);
    record.scalars.insert("length_lipschitz".into(), lip_path.length);
    record.scalars.insert("length_ik".into(), ik_path.length);
    let rows = vec![rr_row("lipschitz", c, &lip_path), rr_row("ik", c, &ik_path)];
    log.add(&mut record, "lipschitz", &lip_path);
    log.add(&mut record, "ik", &ik_path);
    out.csv(
        "rr_lipschitz.csv",
        &format!("paths with the Lipschitz and IK distance fields; discrete Frechet distance {}", real(frechet)),
        &RR_COLUMNS,
        &rows,
    )?;
    log.finish("rr_lipschitz", &mut record, out)?;
    write_curve(&ik, out)?;
    record.decor = ik.decor;
    record.axis_labels = Some(("q1".into(), "q2".into()));
    Ok(record)
}
