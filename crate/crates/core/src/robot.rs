//! Planar serial arms in configuration space.
//!
//! Two conservative C-space distance fields are provided for a point obstacle:
//! [`IkField`] measures the distance to a sampled collision curve of an RR arm
//! obtained from its closed-form inverse kinematics, [`LipschitzField`] divides
//! the task-space clearance by the arm's Lipschitz constant and works for any
//! number of links.

use std::f64::consts::PI;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{box_distance_unchecked, DistanceField, PointCloudField};

/// Chain of line-segment links with revolute joints, base at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarArm {
    link_lengths: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl PlanarArm {
    pub fn new(link_lengths: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if link_lengths.is_empty() {
            return Err(Error::config("arm needs at least one link"));
        }
        if link_lengths.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
            return Err(Error::config("link lengths must be positive and finite"));
        }
        check_dim(link_lengths.len(), lower.len())?;
        check_dim(link_lengths.len(), upper.len())?;
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u && l.is_finite() && u.is_finite())) {
            return Err(Error::config("joint bounds must be finite with lower < upper"));
        }
        Ok(Self { link_lengths, lower, upper })
    }

    /// Bounds `[−q_ub, q_ub]` on every joint.
    pub fn symmetric(link_lengths: Vec<f64>, q_ub: Vec<f64>) -> Result<Self> {
        let lower = q_ub.iter().map(|u| -u).collect();
        Self::new(link_lengths, lower, q_ub)
    }

    pub fn link_lengths(&self) -> &[f64] {
        &self.link_lengths
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn n_joints(&self) -> usize {
        self.link_lengths.len()
    }

    /// Joint positions from the base to the tool tip (`n_joints + 1` points).
    pub fn fk(&self, q: &[f64]) -> Result<Vec<[f64; 2]>> {
        check_dim(self.n_joints(), q.len())?;
        Ok(self.fk_unchecked(q))
    }

    fn fk_unchecked(&self, q: &[f64]) -> Vec<[f64; 2]> {
        let mut pts = Vec::with_capacity(q.len() + 1);
        let (mut x, mut y, mut angle) = (0.0, 0.0, 0.0);
        pts.push([x, y]);
        for (l, qi) in self.link_lengths.iter().zip(q) {
            angle += qi;
            x += l * angle.cos();
            y += l * angle.sin();
            pts.push([x, y]);
        }
        pts
    }

    /// Smallest point-to-segment distance between the links and `obstacle`.
    pub fn task_space_distance(&self, q: &[f64], obstacle: [f64; 2]) -> Result<f64> {
        check_dim(self.n_joints(), q.len())?;
        Ok(self.task_space_distance_unchecked(q, obstacle))
    }

    fn task_space_distance_unchecked(&self, q: &[f64], obstacle: [f64; 2]) -> f64 {
        self.fk_unchecked(q)
            .windows(2)
            .map(|w| point_segment_distance(obstacle, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// `K = sqrt(Σ_n (Σ_{i≤n} l_i)²)`, a bound on how fast any point of the
    /// arm moves per unit joint-space displacement.
    pub fn lipschitz_constant(&self) -> f64 {
        let mut reach = 0.0;
        let mut sum = 0.0;
        for l in &self.link_lengths {
            reach += l;
            sum += reach * reach;
        }
        sum.sqrt()
    }

    /// Closed-form inverse kinematics of a two-link arm.
    ///
    /// Returns the elbow-down and elbow-up solutions (one when they coincide,
    /// none when `x` is out of reach). Angles are wrapped to `(−π, π]` and then
    /// shifted by `2π` when that brings them inside the joint bounds.
    pub fn rr_ik(&self, x: [f64; 2]) -> Result<Vec<Vec<f64>>> {
        if self.n_joints() != 2 {
            return Err(Error::config(format!(
                "analytic IK needs a two-link arm, this one has {} links",
                self.n_joints()
            )));
        }
        let (l1, l2) = (self.link_lengths[0], self.link_lengths[1]);
        let r2 = x[0] * x[0] + x[1] * x[1];
        let c2 = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
        let tol = 1e-12;
        if !(c2 <= 1.0 + tol && c2 >= -1.0 - tol) {
            return Ok(Vec::new());
        }
        let c2 = c2.clamp(-1.0, 1.0);
        let s2 = (1.0 - c2 * c2).sqrt();
        let mut out = Vec::with_capacity(2);
        for s in [s2, -s2] {
            let q2 = s.atan2(c2);
            let q1 = x[1].atan2(x[0]) - (l2 * s).atan2(l1 + l2 * c2);
            let q = vec![self.wrap(0, q1), self.wrap(1, q2)];
            if !out.contains(&q) {
                out.push(q);
            }
            if s2 == 0.0 {
                break;
            }
        }
        Ok(out)
    }

    /// Representative of angle `a` (mod 2π) inside the bounds of joint `j`,
    /// or its `(−π, π]` representative when none fits.
    fn wrap(&self, j: usize, a: f64) -> f64 {
        let base = wrap_pi(a);
        self.in_bounds_shift(j, base).unwrap_or(base)
    }

    fn in_bounds_shift(&self, j: usize, a: f64) -> Option<f64> {
        let (lo, hi) = (self.lower[j], self.upper[j]);
        let k_lo = ((lo - a) / (2.0 * PI)).ceil() as i64;
        let k_hi = ((hi - a) / (2.0 * PI)).floor() as i64;
        (k_lo <= k_hi).then(|| {
            let k = if (k_lo..=k_hi).contains(&0) { 0 } else { k_lo };
            a + 2.0 * PI * k as f64
        })
    }
}

fn wrap_pi(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
    (cx * cx + cy * cy).sqrt()
}

/// Configurations of an RR arm that touch a point obstacle, as near
/// equidistant samples.
///
/// The collision set is made of smooth pieces: link 2 passing through the
/// obstacle (one `q₂` per admissible `q₁`) and, when the obstacle is within
/// reach of link 1, the line `q₁ = atan2(obs)`. Every `2π` copy of a piece that
/// meets the joint box is included. The longest piece gets `n_col` points and
/// the others the same spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionCurve {
    points: Vec<Vec<f64>>,
    piece_ends: Vec<usize>,
    min_gap: f64,
    max_gap: f64,
}

const DENSE: usize = 20_000;

enum Piece {
    /// Link 2 through the obstacle, parametrized by `q₁`.
    Link2 { q1: (f64, f64) },
    /// Link 1 through the obstacle at fixed `q₁`, parametrized by `q₂`.
    Link1 { q1: f64, q2: (f64, f64) },
}

impl CollisionCurve {
    pub fn new(arm: &PlanarArm, obstacle: [f64; 2], n_col: usize) -> Result<Self> {
        if arm.n_joints() != 2 {
            return Err(Error::config("collision curve needs a two-link arm"));
        }
        if n_col < 2 {
            return Err(Error::config("collision curve needs at least two points"));
        }
        let (l1, l2) = (arm.link_lengths[0], arm.link_lengths[1]);
        let rho = obstacle[0].hypot(obstacle[1]);
        if rho == 0.0 {
            return Err(Error::config("obstacle at the arm base collides with every configuration"));
        }
        let theta = obstacle[1].atan2(obstacle[0]);
        let (lo, hi) = (arm.lower(), arm.upper());

        let mut pieces = Vec::new();
        let shifts = |a: f64, b: f64| {
            let k_lo = ((lo[0] - b) / (2.0 * PI)).ceil() as i64;
            let k_hi = ((hi[0] - a) / (2.0 * PI)).floor() as i64;
            (k_lo..=k_hi).map(|k| 2.0 * PI * k as f64)
        };
        let kappa = (rho * rho + l1 * l1 - l2 * l2) / (2.0 * l1 * rho);
        if kappa <= 1.0 {
            let alpha = kappa.max(-1.0).acos();
            let (a, b) = (theta - alpha, theta + alpha);
            for s in shifts(a, b) {
                let (a, b) = ((a + s).max(lo[0]), (b + s).min(hi[0]));
                if a < b {
                    pieces.push(Piece::Link2 { q1: (a, b) });
                }
            }
        }
        if rho <= l1 {
            for s in shifts(theta, theta) {
                let q1 = theta + s;
                if q1 >= lo[0] && q1 <= hi[0] {
                    pieces.push(Piece::Link1 { q1, q2: (lo[1], hi[1]) });
                }
            }
        }

        let eval = |piece: &Piece, t: f64| -> Option<Vec<f64>> {
            match *piece {
                Piece::Link2 { .. } => {
                    let (ex, ey) = (l1 * t.cos(), l1 * t.sin());
                    let q2 = (obstacle[1] - ey).atan2(obstacle[0] - ex) - t;
                    let q2 = arm.in_bounds_shift(1, wrap_pi(q2))?;
                    Some(vec![t, q2])
                }
                Piece::Link1 { q1, .. } => Some(vec![q1, t]),
            }
        };
        let range = |piece: &Piece| match *piece {
            Piece::Link2 { q1 } => q1,
            Piece::Link1 { q2, .. } => q2,
        };

        // Dense parametric sampling, split where q₂ leaves its bounds.
        let mut runs: Vec<(Vec<f64>, Vec<f64>, &Piece)> = Vec::new();
        for piece in &pieces {
            let (a, b) = range(piece);
            let mut ts = Vec::new();
            let mut arc = Vec::new();
            let mut prev: Option<Vec<f64>> = None;
            for i in 0..=DENSE {
                let t = a + (b - a) * i as f64 / DENSE as f64;
                match eval(piece, t) {
                    Some(q) => {
                        let step = match &prev {
                            Some(p) => (q[0] - p[0]).hypot(q[1] - p[1]),
                            None => 0.0,
                        };
                        // A jump means q₂ wrapped; start a new run.
                        if step > 0.5 {
                            runs.push((std::mem::take(&mut ts), std::mem::take(&mut arc), piece));
                        }
                        let s = if ts.is_empty() { 0.0 } else { arc.last().copied().unwrap_or(0.0) + step };
                        ts.push(t);
                        arc.push(s);
                        prev = Some(q);
                    }
                    None => {
                        if !ts.is_empty() {
                            runs.push((std::mem::take(&mut ts), std::mem::take(&mut arc), piece));
                        }
                        prev = None;
                    }
                }
            }
            if !ts.is_empty() {
                runs.push((ts, arc, piece));
            }
        }
        runs.retain(|(ts, _, _)| ts.len() >= 2);

        let longest = runs
            .iter()
            .map(|(_, arc, _)| *arc.last().expect("run is non-empty"))
            .fold(0.0, f64::max);
        let spacing = longest / (n_col - 1) as f64;

        let mut points = Vec::new();
        let mut piece_ends = Vec::new();
        let (mut min_gap, mut max_gap) = (f64::INFINITY, 0.0f64);
        for (ts, arc, piece) in &runs {
            let len = *arc.last().expect("run is non-empty");
            let count = if len == longest { n_col } else { ((len / spacing).round() as usize + 1).max(2) };
            let start = points.len();
            let mut j = 0;
            for i in 0..count {
                let target = len * i as f64 / (count - 1) as f64;
                while j + 2 < arc.len() && arc[j + 1] < target {
                    j += 1;
                }
                let span = arc[j + 1] - arc[j];
                let w = if span > 0.0 { ((target - arc[j]) / span).clamp(0.0, 1.0) } else { 0.0 };
                let t = ts[j] + w * (ts[j + 1] - ts[j]);
                let q = eval(piece, t).expect("run parameters are valid");
                if let Some(p) = points[start..].last() {
                    let p: &Vec<f64> = p;
                    let gap = (q[0] - p[0]).hypot(q[1] - p[1]);
                    min_gap = min_gap.min(gap);
                    max_gap = max_gap.max(gap);
                }
                points.push(q);
            }
            piece_ends.push(points.len());
        }
        if points.is_empty() {
            min_gap = 0.0;
        }
        Ok(Self { points, piece_ends, min_gap, max_gap })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Points grouped by connected piece.
    pub fn pieces(&self) -> impl Iterator<Item = &[Vec<f64>]> {
        let mut start = 0;
        self.piece_ends.iter().map(move |&end| {
            let s = &self.points[start..end];
            start = end;
            s
        })
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest distance between consecutive points of a piece.
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    /// Largest distance between consecutive points of a piece.
    pub fn max_gap(&self) -> f64 {
        self.max_gap
    }
}

/// C-space distance from the IK collision curve and the joint box:
/// `min(box_distance(q), min_i |q − p_i|)`.
#[derive(Debug, Clone)]
pub struct IkField {
    lower: Vec<f64>,
    upper: Vec<f64>,
    cloud: Option<PointCloudField>,
}

impl IkField {
    pub fn new(curve: &CollisionCurve, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_dim(2, lower.len())?;
        check_dim(2, upper.len())?;
        let cloud = if curve.is_empty() { None } else { Some(PointCloudField::new(curve.points.clone())?) };
        Ok(Self { lower, upper, cloud })
    }

    pub fn from_arm(arm: &PlanarArm, obstacle: [f64; 2], n_col: usize) -> Result<Self> {
        let curve = CollisionCurve::new(arm, obstacle, n_col)?;
        Self::new(&curve, arm.lower.clone(), arm.upper.clone())
    }
}

impl DistanceField for IkField {
    fn dim(&self) -> usize {
        2
    }

    fn distance(&self, q: &[f64]) -> f64 {
        let b = box_distance_unchecked(q, &self.lower, &self.upper);
        match &self.cloud {
            Some(c) => b.min(c.distance(q)),
            None => b,
        }
    }
}

/// `min(box_distance(q), d_τ(q)/K)` for a point obstacle: within that radius
/// no link can reach the obstacle, so the value never exceeds the true
/// C-space clearance.
#[derive(Debug, Clone)]
pub struct LipschitzField {
    arm: PlanarArm,
    obstacle: [f64; 2],
    inv_k: f64,
}

impl LipschitzField {
    pub fn new(arm: PlanarArm, obstacle: [f64; 2]) -> Self {
        let inv_k = 1.0 / arm.lipschitz_constant();
        Self { arm, obstacle, inv_k }
    }

    pub fn arm(&self) -> &PlanarArm {
        &self.arm
    }

    pub fn obstacle(&self) -> [f64; 2] {
        self.obstacle
    }
}

impl DistanceField for LipschitzField {
    fn dim(&self) -> usize {
        self.arm.n_joints()
    }

    fn distance(&self, q: &[f64]) -> f64 {
        let b = box_distance_unchecked(q, &self.arm.lower, &self.arm.upper);
        b.min(self.arm.task_space_distance_unchecked(q, self.obstacle) * self.inv_k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::sample_sphere;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn rr() -> PlanarArm {
        PlanarArm::symmetric(vec![1.0, 1.0], vec![1.5 * PI, PI]).unwrap()
    }

    fn close(a: [f64; 2], b: [f64; 2]) -> bool {
        (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12
    }

    #[test]
    fn fk_examples() {
        let arm = rr();
        let p = arm.fk(&[0.0, 0.0]).unwrap();
        assert!(close(p[1], [1.0, 0.0]) && close(p[2], [2.0, 0.0]));
        let p = arm.fk(&[PI / 2.0, 0.0]).unwrap();
        assert!(close(p[1], [0.0, 1.0]) && close(p[2], [0.0, 2.0]));
        let p = arm.fk(&[PI / 2.0, -PI / 2.0]).unwrap();
        assert!(close(p[0], [0.0, 0.0]) && close(p[1], [0.0, 1.0]) && close(p[2], [1.0, 1.0]));
        assert!(arm.fk(&[0.0]).is_err());
    }

    #[test]
    fn task_space_distance_examples() {
        let arm = rr();
        assert!((arm.task_space_distance(&[PI / 2.0, 0.0], [1.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(arm.task_space_distance(&[0.0, 0.0], [1.5, 0.0]).unwrap().abs() < 1e-12);
        assert!((arm.task_space_distance(&[0.0, 0.0], [0.0, 1.3]).unwrap() - 1.3).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_constant_examples() {
        assert!((rr().lipschitz_constant() - 5f64.sqrt()).abs() < 1e-15);
        let one = PlanarArm::symmetric(vec![1.0], vec![PI]).unwrap();
        assert_eq!(one.lipschitz_constant(), 1.0);
        let two = PlanarArm::symmetric(vec![2.0, 1.0], vec![PI, PI]).unwrap();
        assert!((two.lipschitz_constant() - 13f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lipschitz_bound_holds_on_random_pairs() {
        let arm = rr();
        let k = arm.lipschitz_constant();
        let obs = [0.0, 1.3];
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for _ in 0..10_000 {
            let a: [f64; 2] = [rng.gen_range(-4.7..4.7), rng.gen_range(-3.1..3.1)];
            let b = [rng.gen_range(-4.7..4.7), rng.gen_range(-3.1..3.1)];
            let dq = (a[0] - b[0]).hypot(a[1] - b[1]);
            let dd = (arm.task_space_distance(&a, obs).unwrap() - arm.task_space_distance(&b, obs).unwrap()).abs();
            assert!(dd <= k * dq + 1e-12);
        }
    }

    #[test]
    fn ik_examples() {
        let arm = rr();
        let s = arm.rr_ik([2.0, 0.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0][0].abs() < 1e-7 && s[0][1].abs() < 1e-7);
        let s = arm.rr_ik([0.0, 2.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0][0] - PI / 2.0).abs() < 1e-7 && s[0][1].abs() < 1e-7);
        let s = arm.rr_ik([1.0, 1.0]).unwrap();
        assert_eq!(s.len(), 2);
        for q in &s {
            let tip = arm.fk(q).unwrap()[2];
            assert!(close(tip, [1.0, 1.0]));
        }
        assert!(arm.rr_ik([2.5, 0.0]).unwrap().is_empty());
        let three = PlanarArm::symmetric(vec![1.0; 3], vec![PI; 3]).unwrap();
        assert!(three.rr_ik([1.0, 0.0]).is_err());
    }

    #[test]
    fn ik_round_trip() {
        let arm = PlanarArm::symmetric(vec![1.0, 0.7], vec![PI, PI]).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(9);
        let mut n = 0;
        while n < 1000 {
            let x: [f64; 2] = [rng.gen_range(-1.7..1.7), rng.gen_range(-1.7..1.7)];
            let r = x[0].hypot(x[1]);
            if !(r > 0.3 && r < 1.7) {
                continue;
            }
            n += 1;
            let sols = arm.rr_ik(x).unwrap();
            assert_eq!(sols.len(), 2);
            for q in sols {
                let tip = arm.fk(&q).unwrap()[2];
                assert!((tip[0] - x[0]).abs() < 1e-10 && (tip[1] - x[1]).abs() < 1e-10);
                assert!(q[0] >= -PI && q[0] <= PI && q[1] >= -PI && q[1] <= PI);
            }
        }
    }

    #[test]
    fn ik_wraps_into_bounds() {
        let arm = PlanarArm::new(vec![1.0, 1.0], vec![0.0, -PI], vec![2.0 * PI, PI]).unwrap();
        let s = arm.rr_ik([0.0, -2.0]).unwrap();
        assert!((s[0][0] - 1.5 * PI).abs() < 1e-7);
    }

    #[test]
    fn table_curve_spacing() {
        let curve = CollisionCurve::new(&rr(), [0.0, 1.3], 200).unwrap();
        let main = curve.pieces().map(<[_]>::len).max().unwrap();
        assert_eq!(main, 200);
        assert!(curve.min_gap() >= 0.017 && curve.max_gap() <= 0.0235, "{} {}", curve.min_gap(), curve.max_gap());
        for p in curve.points() {
            assert!(rr().task_space_distance(p, [0.0, 1.3]).unwrap() < 1e-6);
            assert!(p[0].abs() <= 1.5 * PI && p[1].abs() <= PI);
        }
        // The 2π copy reaching into q₁ < −π.
        assert_eq!(curve.pieces().count(), 2);
    }

    #[test]
    fn link_one_branch_appears_when_obstacle_is_close() {
        let arm = PlanarArm::symmetric(vec![1.0, 1.0], vec![PI, PI]).unwrap();
        let curve = CollisionCurve::new(&arm, [0.5, 0.0], 100).unwrap();
        assert!(curve.points().iter().any(|q| q[0].abs() < 1e-12 && q[1].abs() > 1.0));
        for p in curve.points() {
            assert!(arm.task_space_distance(p, [0.5, 0.0]).unwrap() < 1e-6);
        }
    }

    #[test]
    fn unreachable_obstacle_leaves_box_only() {
        let arm = rr();
        let curve = CollisionCurve::new(&arm, [0.0, 3.0], 50).unwrap();
        assert!(curve.is_empty());
        let f = IkField::new(&curve, arm.lower().to_vec(), arm.upper().to_vec()).unwrap();
        assert!((f.distance(&[0.0, 0.0]) - PI).abs() < 1e-15);
        assert!(CollisionCurve::new(&arm, [0.0, 0.0], 50).is_err());
    }

    #[test]
    fn ik_field_positive_at_table_start() {
        let f = IkField::from_arm(&rr(), [0.0, 1.3], 200).unwrap();
        let d = f.distance(&[0.785, 0.8]);
        assert!(d > 0.05, "{d}");
        assert!(f.distance(&[2.042, 0.2]) > 0.0);
    }

    #[test]
    fn lipschitz_field_underestimates_ik_field() {
        let arm = rr();
        let obs = [0.0, 1.3];
        let curve = CollisionCurve::new(&arm, obs, 200).unwrap();
        let ik = IkField::new(&curve, arm.lower().to_vec(), arm.upper().to_vec()).unwrap();
        let lip = LipschitzField::new(arm, obs);
        let slack = curve.max_gap() / 2.0;
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(2);
        for _ in 0..1000 {
            let q = [rng.gen_range(-4.7..4.7), rng.gen_range(-3.1..3.1)];
            assert!(lip.distance(&q) <= ik.distance(&q) + slack);
        }
    }

    #[test]
    fn lipschitz_field_zero_on_contact_and_scale_invariant() {
        let arm = rr();
        let q = [PI / 2.0, 0.0];
        assert!(LipschitzField::new(arm.clone(), [0.0, 1.3]).distance(&q).abs() < 1e-12);
        let scaled = PlanarArm::symmetric(vec![2.0, 2.0], vec![1.5 * PI, PI]).unwrap();
        let a = LipschitzField::new(arm, [0.3, 1.3]);
        let b = LipschitzField::new(scaled, [0.6, 2.6]);
        for q in [[0.1, 0.2], [1.0, -0.5], [2.0, 1.0]] {
            assert!((a.distance(&q) - b.distance(&q)).abs() < 1e-12);
        }
    }

    #[test]
    fn lipschitz_ball_boundaries_are_collision_free() {
        let arm = rr();
        let k = arm.lipschitz_constant();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        for obs in [[0.0, 1.3], [0.8, 0.9], [-1.5, 0.2], [0.3, -0.6]] {
            let q = [0.4, 0.6];
            let d = arm.task_space_distance(&q, obs).unwrap();
            for _ in 0..500 {
                let v = sample_sphere(2, &mut rng);
                let p = [q[0] + d / k * v[0], q[1] + d / k * v[1]];
                assert!(arm.task_space_distance(&p, obs).unwrap() > 0.0);
            }
        }
    }
}
