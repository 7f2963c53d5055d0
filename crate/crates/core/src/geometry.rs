//! Implicit domains described only by a distance-to-boundary query.
//!
//! A [`DistanceField`] returns a lower bound on the Euclidean distance from a
//! point to ∂Ω. Positive values mean the point is inside, values `≤ 0` mean the
//! point is on the boundary or outside. Walk-on-spheres only ever needs the
//! positive part, so approximate fields are admissible as long as they never
//! overestimate.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};

/// Conservative distance-to-boundary query over `R^dim`.
pub trait DistanceField: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    /// Signed distance to the boundary, never larger than the true distance.
    ///
    /// `x.len()` must equal [`dim`](Self::dim); use [`checked_distance`] at API
    /// boundaries where that is not already guaranteed.
    fn distance(&self, x: &[f64]) -> f64;

    /// Nearest boundary point, when the field can compute one.
    fn closest_point(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

impl<F: DistanceField + ?Sized> DistanceField for Arc<F> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn distance(&self, x: &[f64]) -> f64 {
        (**self).distance(x)
    }
    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        (**self).closest_point(x)
    }
}

impl<F: DistanceField + ?Sized> DistanceField for &F {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn distance(&self, x: &[f64]) -> f64 {
        (**self).distance(x)
    }
    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        (**self).closest_point(x)
    }
}

/// [`DistanceField::distance`] with the dimension contract checked.
pub fn checked_distance(field: &dyn DistanceField, x: &[f64]) -> Result<f64> {
    check_dim(field.dim(), x.len())?;
    Ok(field.distance(x))
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Interior of a ball: `radius − |x − center|`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallField {
    center: Vec<f64>,
    radius: f64,
}

impl BallField {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::config("ball center needs at least one coordinate"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl DistanceField for BallField {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn distance(&self, x: &[f64]) -> f64 {
        self.radius - dist(x, &self.center)
    }

    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        let r = dist(x, &self.center);
        if r == 0.0 {
            let mut p = self.center.clone();
            p[0] += self.radius;
            return Some(p);
        }
        let s = self.radius / r;
        Some(self.center.iter().zip(x).map(|(c, xi)| c + (xi - c) * s).collect())
    }
}

/// Distance to the nearest face of the axis-aligned box `[lower, upper]`.
///
/// Exact in the interior, negative outside.
pub fn box_distance(q: &[f64], lower: &[f64], upper: &[f64]) -> Result<f64> {
    check_dim(lower.len(), q.len())?;
    check_dim(upper.len(), q.len())?;
    Ok(box_distance_unchecked(q, lower, upper))
}

pub(crate) fn box_distance_unchecked(q: &[f64], lower: &[f64], upper: &[f64]) -> f64 {
    q.iter()
        .zip(lower.iter().zip(upper))
        .map(|(x, (l, u))| (x - l).min(u - x))
        .fold(f64::INFINITY, f64::min)
}

/// Axis-aligned box, e.g. joint limits.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxField {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxField {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::config("box needs at least one axis"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u) || !l.is_finite() || !u.is_finite()) {
            return Err(Error::config("box bounds must be finite with lower < upper on every axis"));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }
}

impl DistanceField for BoxField {
    fn dim(&self) -> usize {
        self.lower.len()
    }

    fn distance(&self, x: &[f64]) -> f64 {
        box_distance_unchecked(x, &self.lower, &self.upper)
    }
}

/// Boundary sampled as a finite point set; the distance is to the nearest sample.
///
/// Never negative, so this only makes sense as a member of a [`UnionField`]
/// whose other members bound the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloudField {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloudField {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::config("point cloud is empty"))?;
        for p in &points {
            check_dim(dim, p.len())?;
        }
        Ok(Self { dim, points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

impl DistanceField for PointCloudField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn distance(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|p| p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }

    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.points
            .iter()
            .min_by(|a, b| dist(a, x).total_cmp(&dist(b, x)))
            .cloned()
    }
}

/// Pointwise minimum of member fields: the domain is the intersection of the
/// members' interiors, the boundary the union of their boundaries.
#[derive(Debug, Clone)]
pub struct UnionField {
    dim: usize,
    members: Vec<Arc<dyn DistanceField>>,
}

impl UnionField {
    pub fn new(members: Vec<Arc<dyn DistanceField>>) -> Result<Self> {
        let dim = members
            .first()
            .map(|m| m.dim())
            .ok_or_else(|| Error::config("union of zero distance fields"))?;
        for m in &members {
            check_dim(dim, m.dim())?;
        }
        Ok(Self { dim, members })
    }

    fn nearest_member(&self, x: &[f64]) -> &Arc<dyn DistanceField> {
        self.members
            .iter()
            .min_by(|a, b| a.distance(x).total_cmp(&b.distance(x)))
            .expect("union has at least one member")
    }
}

impl DistanceField for UnionField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn distance(&self, x: &[f64]) -> f64 {
        self.members
            .iter()
            .map(|m| m.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.nearest_member(x).closest_point(x)
    }
}

/// Outer disk of radius 10 with two inner disk obstacles that touch only at the
/// origin, forming one non-convex obstacle.
///
/// The upper obstacle has radius `r_u = k_r·10` and center `(0, r_u)`, the
/// lower one radius `r_l = r_u/2` and center `(0, −r_l)`. For ambient
/// dimensions above two the shape is extruded: only the first two coordinates
/// enter the distance.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskEnvironment {
    k_r: f64,
    ambient_dim: usize,
}

impl DiskEnvironment {
    pub const OUTER_RADIUS: f64 = 10.0;

    pub fn new(k_r: f64, ambient_dim: usize) -> Result<Self> {
        if !(k_r > 0.0 && k_r < 1.0) {
            return Err(Error::config(format!("k_r must lie in (0, 1), got {k_r}")));
        }
        if ambient_dim < 2 {
            return Err(Error::config(format!(
                "disk environment needs at least 2 dimensions, got {ambient_dim}"
            )));
        }
        Ok(Self { k_r, ambient_dim })
    }

    pub fn k_r(&self) -> f64 {
        self.k_r
    }

    pub fn outer_radius(&self) -> f64 {
        Self::OUTER_RADIUS
    }

    pub fn upper_radius(&self) -> f64 {
        self.k_r * Self::OUTER_RADIUS
    }

    pub fn lower_radius(&self) -> f64 {
        0.5 * self.upper_radius()
    }

    pub fn upper_center(&self) -> [f64; 2] {
        [0.0, self.upper_radius()]
    }

    pub fn lower_center(&self) -> [f64; 2] {
        [0.0, -self.lower_radius()]
    }

    /// `(center, radius, is_outer)` for the three circles, in 2-D.
    pub fn circles(&self) -> [([f64; 2], f64, bool); 3] {
        [
            ([0.0, 0.0], Self::OUTER_RADIUS, true),
            (self.upper_center(), self.upper_radius(), false),
            (self.lower_center(), self.lower_radius(), false),
        ]
    }

    fn plane_distances(&self, x: &[f64]) -> [f64; 3] {
        let (px, py) = (x[0], x[1]);
        let [uc, lc] = [self.upper_center(), self.lower_center()];
        [
            Self::OUTER_RADIUS - (px * px + py * py).sqrt(),
            ((px - uc[0]).powi(2) + (py - uc[1]).powi(2)).sqrt() - self.upper_radius(),
            ((px - lc[0]).powi(2) + (py - lc[1]).powi(2)).sqrt() - self.lower_radius(),
        ]
    }
}

impl DistanceField for DiskEnvironment {
    fn dim(&self) -> usize {
        self.ambient_dim
    }

    fn distance(&self, x: &[f64]) -> f64 {
        let [a, b, c] = self.plane_distances(x);
        a.min(b).min(c)
    }

    fn closest_point(&self, x: &[f64]) -> Option<Vec<f64>> {
        let d = self.plane_distances(x);
        let (i, _) = d
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("three circles");
        let (center, radius, _) = self.circles()[i];
        let (dx, dy) = (x[0] - center[0], x[1] - center[1]);
        let r = dx.hypot(dy);
        let (ux, uy) = if r > 0.0 { (dx / r, dy / r) } else { (1.0, 0.0) };
        let mut p = x.to_vec();
        p[0] = center[0] + radius * ux;
        p[1] = center[1] + radius * uy;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;
    use std::f64::consts::PI;

    #[test]
    fn disk_distance_at_minus_eight() {
        let env = DiskEnvironment::new(0.3, 2).unwrap();
        let expected = (10.0f64 - 8.0)
            .min((64.0f64 + 9.0).sqrt() - 3.0)
            .min((64.0f64 + 2.25).sqrt() - 1.5);
        assert_eq!(expected, 2.0);
        assert!((env.distance(&[-8.0, 0.0]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn origin_touches_both_obstacles() {
        for k_r in [0.05, 0.2, 0.3, 0.45, 0.6, 0.95] {
            let env = DiskEnvironment::new(k_r, 2).unwrap();
            assert!(env.distance(&[0.0, 0.0]).abs() < 1e-15, "k_r={k_r}");
        }
    }

    #[test]
    fn trailing_coordinates_are_ignored() {
        let env = DiskEnvironment::new(0.3, 4).unwrap();
        assert!((env.distance(&[-8.0, 0.0, 5.0, -7.0]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn disk_radii_and_centers() {
        let env = DiskEnvironment::new(0.2, 2).unwrap();
        assert!((env.upper_radius() - 2.0).abs() < 1e-15);
        assert!((env.lower_radius() - 1.0).abs() < 1e-15);
        assert_eq!(env.upper_center(), [0.0, 2.0]);
        assert_eq!(env.lower_center(), [0.0, -1.0]);

        let env = DiskEnvironment::new(0.45, 2).unwrap();
        assert!((env.upper_radius() - 4.5).abs() < 1e-15);
        assert!((env.lower_radius() - 2.25).abs() < 1e-15);
    }

    #[test]
    fn tiny_k_r_degenerates_to_outer_ball() {
        let env = DiskEnvironment::new(1e-9, 2).unwrap();
        let ball = BallField::new(vec![0.0, 0.0], 10.0).unwrap();
        // The obstacles shrink to a single boundary point at the origin, which
        // only matters closer to the origin than to the outer circle.
        for x in [[6.0, 5.0], [-9.0, 0.5], [0.1, -6.0]] {
            assert!((env.distance(&x) - ball.distance(&x)).abs() < 1e-8);
        }
    }

    #[test]
    fn disk_rejects_bad_parameters() {
        assert!(matches!(DiskEnvironment::new(0.0, 2), Err(Error::Config(_))));
        assert!(matches!(DiskEnvironment::new(1.0, 2), Err(Error::Config(_))));
        assert!(matches!(DiskEnvironment::new(0.3, 1), Err(Error::Config(_))));
    }

    #[test]
    fn obstacles_stay_clear_of_outer_boundary_below_one_half() {
        // A circle through the origin reaches 2·r; it stays inside r_o = 10 iff k_r < 1/2.
        for k_r in [0.1, 0.3, 0.45, 0.499] {
            let env = DiskEnvironment::new(k_r, 2).unwrap();
            assert!(2.0 * env.upper_radius() < DiskEnvironment::OUTER_RADIUS);
            assert!(2.0 * env.lower_radius() < DiskEnvironment::OUTER_RADIUS);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let env = DiskEnvironment::new(0.3, 3).unwrap();
        assert!(matches!(
            checked_distance(&env, &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn union_takes_minimum() {
        let a: Arc<dyn DistanceField> = Arc::new(BallField::new(vec![0.0, 0.0], 10.0).unwrap());
        let b: Arc<dyn DistanceField> = Arc::new(BallField::new(vec![0.0, 0.0], 5.0).unwrap());
        let u = UnionField::new(vec![a.clone(), b]).unwrap();
        assert_eq!(u.distance(&[0.0, 0.0]), 5.0);

        let single = UnionField::new(vec![a.clone()]).unwrap();
        for x in [[1.0, 2.0], [-3.0, 7.5]] {
            assert_eq!(single.distance(&x), a.distance(&x));
        }
        assert!(matches!(UnionField::new(vec![]), Err(Error::Config(_))));
    }

    #[test]
    fn union_rejects_mixed_dimensions() {
        let a: Arc<dyn DistanceField> = Arc::new(BallField::new(vec![0.0, 0.0], 1.0).unwrap());
        let b: Arc<dyn DistanceField> = Arc::new(BallField::new(vec![0.0; 3], 1.0).unwrap());
        assert!(matches!(UnionField::new(vec![a, b]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn box_distance_joint_limits() {
        let lower = [-1.5 * PI, -PI];
        let upper = [1.5 * PI, PI];
        let d = box_distance(&[0.785, 0.800], &lower, &upper).unwrap();
        assert!((d - (PI - 0.8)).abs() < 1e-12);
        assert!((d - 2.3416).abs() < 1e-4);

        let center = box_distance(&[0.0, 0.0], &lower, &upper).unwrap();
        assert!((center - PI).abs() < 1e-15, "half the smallest side");

        assert_eq!(box_distance(&[1.5 * PI, 0.0], &lower, &upper).unwrap(), 0.0);
        assert!(box_distance(&[5.0, 0.0], &lower, &upper).unwrap() < 0.0);
        assert!(box_distance(&[0.0], &lower, &upper).is_err());
    }

    #[test]
    fn closest_point_lies_on_boundary() {
        let env = DiskEnvironment::new(0.3, 3).unwrap();
        for x in [[-8.0, 0.0, 1.0], [0.5, 6.5, -2.0], [2.0, -1.0, 0.0]] {
            let p = env.closest_point(&x).unwrap();
            assert!(env.distance(&p).abs() < 1e-12);
            assert!((dist(&p, &x) - env.distance(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn safe_ball_property_on_disk_environment() {
        use rand::Rng;
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        let env = DiskEnvironment::new(0.45, 2).unwrap();
        let mut checked = 0;
        while checked < 5000 {
            let x = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
            let r = env.distance(&x);
            if r <= 0.0 {
                continue;
            }
            let v = crate::kernels::sample_sphere(2, &mut rng);
            let y = [x[0] + 0.999 * r * v[0], x[1] + 0.999 * r * v[1]];
            assert!(env.distance(&y) > 0.0, "left the domain from {x:?}");
            checked += 1;
        }
    }

    #[test]
    fn extrusion_is_dimension_independent() {
        use rand::Rng;
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        let base = DiskEnvironment::new(0.3, 2).unwrap();
        for dim in 2..=5 {
            let env = DiskEnvironment::new(0.3, dim).unwrap();
            for _ in 0..200 {
                let mut x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-50.0..50.0)).collect();
                x[0] = rng.gen_range(-10.0..10.0);
                x[1] = rng.gen_range(-10.0..10.0);
                assert_eq!(env.distance(&x), base.distance(&x[..2]));
            }
        }
    }

    #[test]
    fn point_cloud_is_exact_against_brute_force() {
        use rand::Rng;
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let pts: Vec<Vec<f64>> = (0..50)
            .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let cloud = PointCloudField::new(pts.clone()).unwrap();
        for _ in 0..1000 {
            let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let brute = pts.iter().map(|p| dist(p, &x)).fold(f64::INFINITY, f64::min);
            assert!(cloud.distance(&x) <= brute + 1e-15);
        }
    }
}
