//! Walk-on-spheres estimators for `Δu − c·u = f` in Ω, `u = g` on ∂Ω.
//!
//! A walk starting at `x₀` repeatedly jumps to a uniform point on the largest
//! empty sphere around its current position, `x_{k+1} = x_k + R_k·v`, with
//! `R_k` the distance to the boundary, and stops inside the ε-shell. Each ball
//! visited contributes
//!
//! ```text
//! û(x_k) = C(R_k)·û(x_{k+1}) + S_k,
//! ```
//!
//! where `C` is the screened mean-value weight and `S_k` the source integral
//! over the ball. Unrolled, the source at step `k` and the final boundary value
//! are weighted by the throughput `T_k = C(R_0)⋯C(R_{k−1})`.
//!
//! Every walk owns an RNG derived from `(seed, walk index)`, and walks are
//! reduced in fixed-size blocks merged in index order, so estimates are
//! bit-identical for any number of worker threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{dist, norm, DistanceField};
use crate::kernels::{ball_volume, mean_value_weight, sample_ball_into, sample_sphere_into, ScreenedBallKernel};

/// Walks per reduction block. Fixed so the reduction tree never depends on the
/// worker count.
const BLOCK: usize = 1024;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Walk budget and screening.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    /// Half-width of the ε-shell in which walks terminate.
    pub epsilon: f64,
    pub n_walks: usize,
    /// Screening coefficient `c ≥ 0`.
    pub screening: f64,
    /// Walks are truncated after this many jumps.
    pub max_steps: usize,
    pub seed: u64,
    /// Weight of the analytic source term in the gradient estimator.
    pub c_imp: f64,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            n_walks: 10_000,
            screening: 0.0,
            max_steps: 10_000,
            seed: 0,
            c_imp: 1.0,
            workers: 0,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.n_walks == 0 {
            return Err(Error::config("n_walks must be at least 1"));
        }
        if self.max_steps == 0 {
            return Err(Error::config("max_steps must be at least 1"));
        }
        if !(self.screening >= 0.0 && self.screening.is_finite()) {
            return Err(Error::config(format!("screening must be ≥ 0, got {}", self.screening)));
        }
        if !(self.c_imp > 0.0 && self.c_imp.is_finite()) {
            return Err(Error::config(format!("c_imp must be positive, got {}", self.c_imp)));
        }
        Ok(())
    }
}

/// Right-hand side `f` of `Δu − c·u = f`.
#[derive(Clone, Default)]
pub enum SourceSpec {
    #[default]
    None,
    /// Point source `f = −magnitude·δ_z`. A positive magnitude raises `u`
    /// around `z`, so the solution peaks at the source.
    Dirac { point: Vec<f64>, magnitude: f64 },
    /// General source, integrated with one uniform ball sample per step.
    Field(ScalarFn),
}

impl fmt::Debug for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSpec::None => f.write_str("None"),
            SourceSpec::Dirac { point, magnitude } => {
                f.debug_struct("Dirac").field("point", point).field("magnitude", magnitude).finish()
            }
            SourceSpec::Field(_) => f.write_str("Field(<fn>)"),
        }
    }
}

impl SourceSpec {
    pub fn dirac(point: Vec<f64>, magnitude: f64) -> Self {
        SourceSpec::Dirac { point, magnitude }
    }

    pub fn field(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        SourceSpec::Field(Arc::new(f))
    }
}

/// Dirichlet data `g`.
#[derive(Clone)]
pub enum BoundarySpec {
    Constant(f64),
    Function(ScalarFn),
}

impl Default for BoundarySpec {
    fn default() -> Self {
        BoundarySpec::Constant(0.0)
    }
}

impl fmt::Debug for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundarySpec::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
            BoundarySpec::Function(_) => f.write_str("Function(<fn>)"),
        }
    }
}

impl BoundarySpec {
    pub fn function(g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        BoundarySpec::Function(Arc::new(g))
    }

    fn eval(&self, field: &dyn DistanceField, x: &[f64]) -> f64 {
        match self {
            BoundarySpec::Constant(v) => *v,
            BoundarySpec::Function(g) => match field.closest_point(x) {
                Some(p) => g(&p),
                None => g(x),
            },
        }
    }
}

/// Domain, boundary data and source of one boundary value problem.
#[derive(Debug, Clone, Copy)]
pub struct Problem<'a> {
    pub field: &'a dyn DistanceField,
    pub boundary: &'a BoundarySpec,
    pub source: &'a SourceSpec,
}

impl<'a> Problem<'a> {
    pub fn new(field: &'a dyn DistanceField, boundary: &'a BoundarySpec, source: &'a SourceSpec) -> Self {
        Self { field, boundary, source }
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    fn validate(&self, x: &[f64]) -> Result<()> {
        check_dim(self.dim(), x.len())?;
        if let SourceSpec::Dirac { point, magnitude } = self.source {
            check_dim(self.dim(), point.len())?;
            if !magnitude.is_finite() {
                return Err(Error::config("point source magnitude must be finite"));
            }
            if !(self.field.distance(point) > 0.0) {
                return Err(Error::Precondition("point source must lie strictly inside the domain".into()));
            }
        }
        if !(self.field.distance(x) > 0.0) {
            return Err(Error::Precondition(format!("query point {x:?} is not inside the domain")));
        }
        Ok(())
    }
}

/// One walk's contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSample<T> {
    pub value: T,
    pub steps: usize,
    pub truncated: bool,
}

/// Mean and spread of `n_samples` one-walk estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    /// One entry for value estimates, `dim` entries for gradients.
    pub mean: Vec<f64>,
    /// Unbiased per-walk sample variance, componentwise.
    pub sample_variance: Vec<f64>,
    pub n_samples: usize,
    pub mean_steps_per_walk: f64,
    pub truncated_walks: usize,
    /// Seconds.
    pub wall_time: f64,
}

impl Estimate {
    /// The mean of a scalar estimate.
    pub fn value(&self) -> f64 {
        self.mean[0]
    }

    /// Standard error of the mean, componentwise.
    pub fn std_error(&self) -> Vec<f64> {
        self.sample_variance
            .iter()
            .map(|v| (v / self.n_samples as f64).sqrt())
            .collect()
    }

    /// Variance of the mean summed over components.
    pub fn variance_of_mean(&self) -> f64 {
        self.sample_variance.iter().sum::<f64>() / self.n_samples as f64
    }
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent 64-bit seed from a parent seed and a stream index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index)
}

fn walk_rng(seed: u64, walk_index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(derive_seed(seed, walk_index))
}

struct Scratch {
    x: Vec<f64>,
    dir: Vec<f64>,
    sample: Vec<f64>,
}

impl Scratch {
    fn new(dim: usize) -> Self {
        Self { x: vec![0.0; dim], dir: vec![0.0; dim], sample: vec![0.0; dim] }
    }
}

/// Runs a value walk from `scratch.x` with unit initial throughput.
fn run_value_walk(
    problem: &Problem<'_>,
    cfg: &WalkConfig,
    scratch: &mut Scratch,
    rng: &mut Xoshiro256PlusPlus,
) -> (f64, usize, bool) {
    let dim = scratch.x.len();
    let nu = 0.5 * dim as f64 - 1.0;
    let field = problem.field;
    let mut throughput = 1.0;
    let mut acc = 0.0;
    let mut steps = 0;
    loop {
        let radius = field.distance(&scratch.x);
        if radius < cfg.epsilon {
            acc += throughput * problem.boundary.eval(field, &scratch.x);
            return (acc, steps, false);
        }
        if steps >= cfg.max_steps {
            acc += throughput * problem.boundary.eval(field, &scratch.x);
            return (acc, steps, true);
        }

        match problem.source {
            SourceSpec::None => {}
            SourceSpec::Dirac { point, magnitude } => {
                let r = dist(point, &scratch.x);
                if r < radius && r > 0.0 {
                    let k = ScreenedBallKernel::new_unchecked(dim, cfg.screening, radius);
                    acc += throughput * magnitude * k.green_at(r);
                }
            }
            SourceSpec::Field(f) => {
                sample_ball_into(&mut scratch.sample, rng);
                let mut r2 = 0.0;
                for (s, xi) in scratch.sample.iter_mut().zip(&scratch.x) {
                    *s *= radius;
                    r2 += *s * *s;
                    *s += xi;
                }
                let r = r2.sqrt();
                if r > 0.0 && r < radius {
                    let k = ScreenedBallKernel::new_unchecked(dim, cfg.screening, radius);
                    acc -= throughput * ball_volume(dim, radius) * f(&scratch.sample) * k.green_at(r);
                }
            }
        }
        if cfg.screening > 0.0 {
            throughput *= mean_value_weight(nu, cfg.screening.sqrt() * radius);
        }

        sample_sphere_into(&mut scratch.dir, rng);
        for (xi, v) in scratch.x.iter_mut().zip(&scratch.dir) {
            *xi += radius * v;
        }
        steps += 1;
    }
}

/// Writes the one-walk gradient estimate into `out`.
fn run_gradient_walk(
    problem: &Problem<'_>,
    cfg: &WalkConfig,
    x0: &[f64],
    scratch: &mut Scratch,
    rng: &mut Xoshiro256PlusPlus,
    out: &mut [f64],
) -> (usize, bool) {
    let dim = x0.len();
    out.iter_mut().for_each(|g| *g = 0.0);
    let radius = problem.field.distance(x0);
    if radius < cfg.epsilon {
        return (0, false);
    }
    let kernel = ScreenedBallKernel::new_unchecked(dim, cfg.screening, radius);

    // Source term first: it consumes the ball sample before the walk moves on.
    match problem.source {
        SourceSpec::None => {}
        SourceSpec::Dirac { point, magnitude } => {
            let r = dist(point, x0);
            if r < radius && r > 0.0 {
                let w = cfg.c_imp * magnitude * kernel.source_gradient_at(r) / r;
                for ((g, z), x) in out.iter_mut().zip(point).zip(x0) {
                    *g += w * (z - x);
                }
            }
        }
        SourceSpec::Field(f) => {
            sample_ball_into(&mut scratch.sample, rng);
            let r = norm(&scratch.sample) * radius;
            for (s, x) in scratch.sample.iter_mut().zip(x0) {
                *s = x + radius * *s;
            }
            if r > 0.0 && r < radius {
                let w = -cfg.c_imp * ball_volume(dim, radius) * f(&scratch.sample) * kernel.source_gradient_at(r) / r;
                for ((g, y), x) in out.iter_mut().zip(&scratch.sample).zip(x0) {
                    *g += w * (y - x);
                }
            }
        }
    }

    sample_sphere_into(&mut scratch.dir, rng);
    let direction = scratch.dir.clone();
    for ((xi, x), v) in scratch.x.iter_mut().zip(x0).zip(&direction) {
        *xi = x + radius * v;
    }
    let (u1, steps, truncated) = run_value_walk(problem, cfg, scratch, rng);
    let w = dim as f64 / radius * kernel.gradient_norm_constant() * u1;
    for (g, v) in out.iter_mut().zip(&direction) {
        *g += w * v;
    }
    (steps + 1, truncated)
}

/// One-walk estimate of `u(x)`.
///
/// Walks starting inside the ε-shell return the boundary value immediately.
pub fn walk_value(problem: &Problem<'_>, cfg: &WalkConfig, x: &[f64], walk_index: u64) -> Result<WalkSample<f64>> {
    cfg.validate()?;
    problem.validate(x)?;
    let mut scratch = Scratch::new(x.len());
    scratch.x.copy_from_slice(x);
    let mut rng = walk_rng(cfg.seed, walk_index);
    let (value, steps, truncated) = run_value_walk(problem, cfg, &mut scratch, &mut rng);
    Ok(WalkSample { value, steps, truncated })
}

/// One-walk estimate of `∇u(x)`:
/// `(n/R)·C₁·û(x₁)·v + c_imp·(source gradient over the first ball)`.
///
/// Walks starting inside the ε-shell return the zero vector.
pub fn walk_gradient(
    problem: &Problem<'_>,
    cfg: &WalkConfig,
    x: &[f64],
    walk_index: u64,
) -> Result<WalkSample<Vec<f64>>> {
    cfg.validate()?;
    problem.validate(x)?;
    let mut scratch = Scratch::new(x.len());
    let mut rng = walk_rng(cfg.seed, walk_index);
    let mut out = vec![0.0; x.len()];
    let (steps, truncated) = run_gradient_walk(problem, cfg, x, &mut scratch, &mut rng, &mut out);
    Ok(WalkSample { value: out, steps, truncated })
}

/// Welford accumulator, merged with Chan's update.
#[derive(Debug, Clone)]
struct Moments {
    n: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
    steps: u64,
    truncated: usize,
}

impl Moments {
    fn new(width: usize) -> Self {
        Self { n: 0, mean: vec![0.0; width], m2: vec![0.0; width], steps: 0, truncated: 0 }
    }

    fn push(&mut self, sample: &[f64], steps: usize, truncated: bool) {
        self.n += 1;
        let n = self.n as f64;
        for ((m, s2), &x) in self.mean.iter_mut().zip(&mut self.m2).zip(sample) {
            let delta = x - *m;
            *m += delta / n;
            *s2 += delta * (x - *m);
        }
        self.steps += steps as u64;
        self.truncated += usize::from(truncated);
    }

    fn merge(mut self, other: &Moments) -> Self {
        if other.n == 0 {
            return self;
        }
        if self.n == 0 {
            return other.clone();
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / n;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / n;
        }
        self.n += other.n;
        self.steps += other.steps;
        self.truncated += other.truncated;
        self
    }

    fn into_estimate(self, wall_time: f64) -> Estimate {
        let denom = (self.n.max(2) - 1) as f64;
        let sample_variance = if self.n > 1 {
            self.m2.iter().map(|m| (m / denom).max(0.0)).collect()
        } else {
            vec![0.0; self.m2.len()]
        };
        Estimate {
            mean: self.mean,
            sample_variance,
            n_samples: self.n,
            mean_steps_per_walk: self.steps as f64 / self.n as f64,
            truncated_walks: self.truncated,
            wall_time,
        }
    }
}

fn pool(workers: usize) -> Result<Arc<rayon::ThreadPool>> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().expect("pool cache poisoned");
    if let Some(p) = pools.get(&workers) {
        return Ok(p.clone());
    }
    let p = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Arc::new)
        .map_err(|e| Error::config(format!("cannot start {workers} worker threads: {e}")))?;
    pools.insert(workers, p.clone());
    Ok(p)
}

fn run_blocks<F>(cfg: &WalkConfig, width: usize, dim: usize, walk: F) -> Result<Estimate>
where
    F: Fn(&mut Scratch, &mut Xoshiro256PlusPlus, &mut [f64]) -> (usize, bool) + Sync,
{
    let start = Instant::now();
    let n_blocks = cfg.n_walks.div_ceil(BLOCK);
    let reduce = || {
        (0..n_blocks)
            .into_par_iter()
            .map(|b| {
                let mut scratch = Scratch::new(dim);
                let mut out = vec![0.0; width];
                let mut acc = Moments::new(width);
                let end = ((b + 1) * BLOCK).min(cfg.n_walks);
                for i in b * BLOCK..end {
                    let mut rng = walk_rng(cfg.seed, i as u64);
                    let (steps, truncated) = walk(&mut scratch, &mut rng, &mut out);
                    acc.push(&out, steps, truncated);
                }
                acc
            })
            .collect::<Vec<_>>()
    };
    let blocks = if cfg.workers == 0 { reduce() } else { pool(cfg.workers)?.install(reduce) };
    let total = blocks.iter().fold(Moments::new(width), |a, b| a.merge(b));
    Ok(total.into_estimate(start.elapsed().as_secs_f64()))
}

/// Mean of `cfg.n_walks` value walks; walk `i` uses the RNG stream `(cfg.seed, i)`.
pub fn solve_value(problem: &Problem<'_>, cfg: &WalkConfig, x: &[f64]) -> Result<Estimate> {
    cfg.validate()?;
    problem.validate(x)?;
    run_blocks(cfg, 1, x.len(), |scratch, rng, out| {
        scratch.x.copy_from_slice(x);
        let (v, steps, truncated) = run_value_walk(problem, cfg, scratch, rng);
        out[0] = v;
        (steps, truncated)
    })
}

/// Mean of `cfg.n_walks` gradient walks.
pub fn solve_gradient(problem: &Problem<'_>, cfg: &WalkConfig, x: &[f64]) -> Result<Estimate> {
    cfg.validate()?;
    problem.validate(x)?;
    run_blocks(cfg, x.len(), x.len(), |scratch, rng, out| {
        run_gradient_walk(problem, cfg, x, scratch, rng, out)
    })
}

/// Angle in radians between two nonzero vectors.
pub fn angle_error(estimate: &[f64], reference: &[f64]) -> Result<f64> {
    check_dim(reference.len(), estimate.len())?;
    let (na, nb) = (norm(estimate), norm(reference));
    if na == 0.0 || nb == 0.0 || !na.is_finite() || !nb.is_finite() {
        return Err(Error::UndefinedDirection);
    }
    let dot: f64 = estimate.iter().zip(reference).map(|(a, b)| a * b).sum();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0).acos())
}
