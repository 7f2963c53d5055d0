//! Ball kernels for the screened operator `Δ − c` in `n` dimensions.
//!
//! For a ball `B(0, R)` with zero Dirichlet data, the Green's function with the
//! source at the center is radial:
//!
//! ```text
//! G(r) = k^ν / (2π)^{n/2} · r^{−ν} · [K_ν(kr) − K_ν(kR)·I_ν(kr)/I_ν(kR)],
//! k = √c,  ν = n/2 − 1,
//! ```
//!
//! normalized so that `ΔG − cG = −δ`. With `c = 0` it reduces to the usual
//! `ln(R/r)/2π` and `(r^{2−n} − R^{2−n}) / ((n−2)|S^{n−1}|)`. Walk-on-spheres
//! also needs the mass of the screened Poisson kernel seen from the center,
//! `C = (kR/2)^ν / (Γ(ν+1) I_ν(kR))`, and for gradients the first-harmonic
//! analogue `C₁ = (kR/2)^{ν+1} / (Γ(ν+2) I_{ν+1}(kR))` together with the
//! center-gradient of the Green's function, `ψ(r)`.

mod bessel;

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

pub use bessel::{bessel_ik_scaled, ScaledIk};

use crate::error::{Error, Result};
use bessel::{ik_unchecked, ln_gamma_half_integer};

/// Volume of the `n`-ball of radius `r`: `π^{n/2} rⁿ / Γ(n/2 + 1)`.
pub fn ball_volume(n: usize, r: f64) -> f64 {
    let n_f = n as f64;
    (0.5 * n_f * PI.ln() + n_f * r.ln() - ln_gamma_half_integer(0.5 * n_f + 1.0)).exp()
}

/// Surface area of the unit sphere `S^{n−1}`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let half = 0.5 * n as f64;
    2.0 * (half * PI.ln() - ln_gamma_half_integer(half)).exp()
}

/// Uniform unit vector on `S^{n−1}`.
pub fn sample_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut v = vec![0.0; n];
    sample_sphere_into(&mut v, rng);
    v
}

/// In-place variant of [`sample_sphere`]; the dimension is `out.len()`.
pub fn sample_sphere_into<R: Rng + ?Sized>(out: &mut [f64], rng: &mut R) {
    loop {
        let mut sq = 0.0;
        for c in out.iter_mut() {
            *c = rng.sample(StandardNormal);
            sq += *c * *c;
        }
        if sq > 1e-300 {
            let inv = 1.0 / sq.sqrt();
            out.iter_mut().for_each(|c| *c *= inv);
            return;
        }
    }
}

/// Uniform point in the unit ball, written to `out`.
pub(crate) fn sample_ball_into<R: Rng + ?Sized>(out: &mut [f64], rng: &mut R) {
    sample_sphere_into(out, rng);
    let u: f64 = rng.gen();
    let s = u.powf(1.0 / out.len() as f64);
    out.iter_mut().for_each(|c| *c *= s);
}

/// `(x/2)^ν / (Γ(ν+1) I_ν(x))`: the screened mean-value weight `C` of an
/// `n`-ball for `ν = n/2 − 1`, `x = √c·R` (and `C₁` for `ν = n/2`).
///
/// Evaluated as the reciprocal of `Σ_j (x²/4)^j / (j! (ν+1)_j)`, which has only
/// positive terms; large arguments go through the scaled Bessel function.
/// `ν` must be a multiple of ½ no smaller than 0, as it is for ball dimensions.
pub fn mean_value_weight(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x > 40.0 {
        let i = ik_unchecked(nu, x).i;
        return (nu * (0.5 * x).ln() - ln_gamma_half_integer(nu + 1.0) - i.ln() - x).exp();
    }
    let t = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut j = 1.0;
    loop {
        term *= t / (j * (nu + j));
        sum += term;
        if term < 1e-17 * sum {
            return 1.0 / sum;
        }
        j += 1.0;
    }
}

/// Radial kernels of `Δ − c` on an `n`-ball of radius `R`, source at the center.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenedBallKernel {
    dim: usize,
    screening: f64,
    radius: f64,
    nu: f64,
    sqrt_c: f64,
    sphere_area: f64,
    screened: Option<ScreenedParts>,
}

#[derive(Debug, Clone, PartialEq)]
struct ScreenedParts {
    /// `k^ν / (2π)^{n/2}`
    amplitude: f64,
    /// `K_ν(kR)/I_ν(kR) · e^{2kR}`
    ratio: f64,
    /// `K_{ν+1}(kR)/I_{ν+1}(kR) · e^{2kR}`
    ratio_next: f64,
    norm: f64,
    grad_norm: f64,
}

impl ScreenedBallKernel {
    pub fn new(dim: usize, screening: f64, radius: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::config(format!("kernel dimension must be at least 2, got {dim}")));
        }
        if !(screening >= 0.0 && screening.is_finite()) {
            return Err(Error::config(format!("screening must be finite and ≥ 0, got {screening}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Self::new_unchecked(dim, screening, radius))
    }

    pub(crate) fn new_unchecked(dim: usize, screening: f64, radius: f64) -> Self {
        let nu = 0.5 * dim as f64 - 1.0;
        let sqrt_c = screening.sqrt();
        let sphere_area = unit_sphere_area(dim);
        let screened = (screening > 0.0).then(|| {
            let kr = sqrt_c * radius;
            let b = ik_unchecked(nu, kr);
            let amplitude = (nu * sqrt_c.ln() - 0.5 * dim as f64 * (2.0 * PI).ln()).exp();
            ScreenedParts {
                amplitude,
                ratio: b.k / b.i,
                ratio_next: b.k_next / b.i_next,
                norm: mean_value_weight(nu, kr),
                grad_norm: mean_value_weight(nu + 1.0, kr),
            }
        });
        Self { dim, screening, radius, nu, sqrt_c, sphere_area, screened }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn screening(&self) -> f64 {
        self.screening
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if r > 0.0 && r < self.radius {
            Ok(())
        } else {
            Err(Error::domain(format!("radius {r} outside (0, {})", self.radius)))
        }
    }

    /// Green's function at distance `r` from the center.
    pub fn green(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        Ok(self.green_at(r))
    }

    /// `dG/dr`, negative on `(0, R)`.
    pub fn green_grad_radial(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        Ok(self.green_grad_radial_at(r))
    }

    /// Magnitude of `∇ₓ G_B(x, z)` at the center `x` for a source at distance `r`.
    ///
    /// The gradient points from the center toward the source. Unlike
    /// [`green_grad_radial`](Self::green_grad_radial) this differentiates the
    /// ball's Green's function in its evaluation point with the ball held fixed,
    /// which is the quantity the mean-value gradient identity needs.
    pub fn source_gradient(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        Ok(self.source_gradient_at(r))
    }

    /// Total mass of the screened Poisson kernel seen from the center. One at `c = 0`.
    pub fn norm_constant(&self) -> f64 {
        self.screened.as_ref().map_or(1.0, |s| s.norm)
    }

    /// First-harmonic counterpart of [`norm_constant`](Self::norm_constant):
    /// `∇u(center) = (n/R)·C₁·E[u(y)·v]` for `y = center + R·v` uniform on the sphere.
    pub fn gradient_norm_constant(&self) -> f64 {
        self.screened.as_ref().map_or(1.0, |s| s.grad_norm)
    }

    pub(crate) fn green_at(&self, r: f64) -> f64 {
        let n = self.dim;
        match &self.screened {
            None if n == 2 => (self.radius / r).ln() / (2.0 * PI),
            None => {
                let p = 2 - n as i32;
                (r.powi(p) - self.radius.powi(p)) / ((n as f64 - 2.0) * self.sphere_area)
            }
            Some(s) => {
                let k = self.sqrt_c;
                let b = ik_unchecked(self.nu, k * r);
                let tail = s.ratio * b.i * (-2.0 * k * (self.radius - r)).exp();
                s.amplitude * r.powf(-self.nu) * (-k * r).exp() * (b.k - tail)
            }
        }
    }

    pub(crate) fn green_grad_radial_at(&self, r: f64) -> f64 {
        match &self.screened {
            None => -r.powi(1 - self.dim as i32) / self.sphere_area,
            Some(s) => {
                let k = self.sqrt_c;
                let b = ik_unchecked(self.nu, k * r);
                let tail = s.ratio * b.i_next * (-2.0 * k * (self.radius - r)).exp();
                -s.amplitude * k * r.powf(-self.nu) * (-k * r).exp() * (b.k_next + tail)
            }
        }
    }

    pub(crate) fn source_gradient_at(&self, r: f64) -> f64 {
        match &self.screened {
            None => {
                let n = self.dim as i32;
                (r.powi(1 - n) - r / self.radius.powi(n)) / self.sphere_area
            }
            Some(s) => {
                let k = self.sqrt_c;
                let b = ik_unchecked(self.nu, k * r);
                let tail = s.ratio_next * b.i_next * (-2.0 * k * (self.radius - r)).exp();
                s.amplitude * k * r.powf(-self.nu) * (-k * r).exp() * (b.k_next - tail)
            }
        }
    }
}
