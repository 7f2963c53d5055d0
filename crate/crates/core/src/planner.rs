//! Screened harmonic paths: normalized gradient ascent on a WoS estimate of the
//! potential generated by a unit point source at the goal.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{dist, norm, DistanceField};
use crate::solver::{derive_seed, solve_gradient, BoundarySpec, Estimate, Problem, SourceSpec, WalkConfig};

/// Gradients with a smaller norm are treated as no direction at all.
pub const STALL_NORM: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanConfig {
    /// Nominal step `s_ub`; the actual step is `min(s_ub, d/2)`.
    pub step_upper: f64,
    /// Stop once within this distance of the goal; `None` means `step_upper`.
    pub goal_tol: Option<f64>,
    pub max_iters: usize,
    pub walk: WalkConfig,
    pub goal: Vec<f64>,
    pub source_magnitude: f64,
}

impl PlanConfig {
    pub fn new(goal: Vec<f64>, step_upper: f64, walk: WalkConfig) -> Self {
        Self { step_upper, goal_tol: None, max_iters: 1000, walk, goal, source_magnitude: 1.0 }
    }

    pub fn goal_tolerance(&self) -> f64 {
        self.goal_tol.unwrap_or(self.step_upper)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step_upper > 0.0 && self.step_upper.is_finite()) {
            return Err(Error::config(format!("step upper bound must be positive, got {}", self.step_upper)));
        }
        if !(self.goal_tolerance() >= 0.0) {
            return Err(Error::config("goal tolerance must be non-negative"));
        }
        if !(self.source_magnitude > 0.0 && self.source_magnitude.is_finite()) {
            return Err(Error::config("source magnitude must be positive"));
        }
        self.walk.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    Reached,
    MaxIters,
    Stalled,
}

impl PathStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PathStatus::Reached => "reached",
            PathStatus::MaxIters => "max_iters",
            PathStatus::Stalled => "stalled",
        }
    }
}

/// `points[k+1] = points[k] + step_sizes[k]·ĝ_k/|ĝ_k|`, with `ĝ_k` the mean of
/// `step_gradients[k]`. `distances[k]` is the field value at `points[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub points: Vec<Vec<f64>>,
    pub distances: Vec<f64>,
    pub step_gradients: Vec<Estimate>,
    pub step_sizes: Vec<f64>,
    pub status: PathStatus,
    pub length: f64,
}

impl PathResult {
    /// One row per point: coordinates, distance to the boundary, then the
    /// gradient estimate and step taken from that point (empty on the last row).
    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        let dim = self.points.first().map_or(0, Vec::len);
        let xs: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
        let gs: Vec<String> = (0..dim).map(|i| format!("g{i}")).collect();
        writeln!(w, "# path: status={} length={:.16e}", self.status.as_str(), self.length)?;
        writeln!(w, "step,{},distance,{},step_size", xs.join(","), gs.join(","))?;
        for (k, p) in self.points.iter().enumerate() {
            write!(w, "{k}")?;
            for c in p {
                write!(w, ",{c:.16e}")?;
            }
            write!(w, ",{:.16e}", self.distances[k])?;
            match (self.step_gradients.get(k), self.step_sizes.get(k)) {
                (Some(g), Some(s)) => {
                    for c in &g.mean {
                        write!(w, ",{c:.16e}")?;
                    }
                    writeln!(w, ",{s:.16e}")?;
                }
                _ => writeln!(w, "{}", ",".repeat(dim + 1))?,
            }
        }
        Ok(())
    }
}

/// Sum of Euclidean segment lengths.
pub fn path_length(points: &[Vec<f64>]) -> f64 {
    points.windows(2).fold(0.0, |acc, w| acc + dist(&w[0], &w[1]))
}

/// `−√t·ln u`, the distance-like transform of a screened potential.
pub fn varadhan_transform(u: f64, t: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::domain(format!("potential must be positive, got {u}")));
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("time parameter must be positive, got {t}")));
    }
    Ok(-t.sqrt() * u.ln())
}

/// Gradient ascent from `start` toward `cfg.goal`.
///
/// Step `k` estimates the gradient with seed `derive_seed(cfg.walk.seed, k)`
/// and moves by `min(s_ub, d(x)/2)`, so a 1-Lipschitz field keeps every
/// iterate inside the domain.
pub fn integrate_path(field: &dyn DistanceField, cfg: &PlanConfig, start: &[f64]) -> Result<PathResult> {
    cfg.validate()?;
    check_dim(field.dim(), start.len())?;
    check_dim(field.dim(), cfg.goal.len())?;
    let d0 = field.distance(start);
    if !(d0 > 0.0) {
        return Err(Error::Precondition(format!("start point has distance {d0} to the boundary")));
    }
    let dg = field.distance(&cfg.goal);
    if !(dg > 0.0) {
        return Err(Error::Precondition(format!("goal has distance {dg} to the boundary")));
    }

    let boundary = BoundarySpec::default();
    let source = SourceSpec::dirac(cfg.goal.clone(), cfg.source_magnitude);
    let problem = Problem::new(field, &boundary, &source);
    let tol = cfg.goal_tolerance();

    let mut x = start.to_vec();
    let mut d = d0;
    let mut points = vec![x.clone()];
    let mut distances = vec![d];
    let mut step_gradients = Vec::new();
    let mut step_sizes = Vec::new();
    let mut status = PathStatus::MaxIters;
    for k in 0..=cfg.max_iters {
        if dist(&x, &cfg.goal) <= tol {
            status = PathStatus::Reached;
            break;
        }
        if k == cfg.max_iters {
            break;
        }
        let walk = WalkConfig { seed: derive_seed(cfg.walk.seed, k as u64), ..cfg.walk.clone() };
        let g = solve_gradient(&problem, &walk, &x)?;
        let gn = norm(&g.mean);
        if !(gn > STALL_NORM && gn.is_finite()) {
            status = PathStatus::Stalled;
            break;
        }
        let s = cfg.step_upper.min(0.5 * d);
        for (xi, gi) in x.iter_mut().zip(&g.mean) {
            *xi += s * gi / gn;
        }
        d = field.distance(&x);
        step_gradients.push(g);
        step_sizes.push(s);
        points.push(x.clone());
        distances.push(d);
    }
    let length = path_length(&points);
    Ok(PathResult { points, distances, step_gradients, step_sizes, status, length })
}
