//! Walk-on-spheres (WoS) Monte Carlo solver for screened Poisson equations on
//! implicitly defined domains, and a gradient-ascent planner built on top of it.
//!
//! The domain is only ever seen through a [`geometry::DistanceField`], a
//! conservative distance-to-boundary query. [`solver`] estimates the value and
//! gradient of
//!
//! ```text
//! Δu − c·u = f   in Ω,      u = g   on ∂Ω
//! ```
//!
//! at a single point, and [`planner`] integrates normalized gradient ascent on
//! that estimate toward a point source placed at the goal ("screened harmonic
//! paths"). [`robot`] supplies configuration-space distance fields for planar
//! arms, and [`bench`] holds the experiment harness behind the `wos-nav` CLI.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod planner;
pub mod robot;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{
    box_distance, BallField, BoxField, DiskEnvironment, DistanceField, PointCloudField,
    UnionField,
};
pub use kernels::{ball_volume, mean_value_weight, sample_sphere, ScreenedBallKernel};
pub use planner::{integrate_path, path_length, varadhan_transform, PathResult, PathStatus, PlanConfig};
pub use robot::{CollisionCurve, IkField, LipschitzField, PlanarArm};
pub use solver::{
    angle_error, solve_gradient, solve_value, walk_gradient, walk_value, BoundarySpec, Estimate,
    Problem, SourceSpec, WalkConfig,
};
