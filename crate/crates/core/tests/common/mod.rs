#![allow(dead_code)]

use std::f64::consts::PI;

use wos_nav::{solve_value, BallField, BoundarySpec, Problem, SourceSpec, WalkConfig};

/// Surface area of the unit sphere in `n` dimensions, by the recurrence
/// `|S^{n+1}| = 2π/n · |S^{n−1}|`.
pub fn sphere_area(n: usize) -> f64 {
    let even = n.is_multiple_of(2);
    let mut a = if even { 2.0 * PI } else { 4.0 * PI };
    let mut k = if even { 2 } else { 3 };
    while k < n {
        a *= 2.0 * PI / k as f64;
        k += 2;
    }
    a
}

/// Radial kernels from the ODE `w'' + (n−1)/r·w' − (m/r² + c)·w = 0`,
/// integrated with RK4 in `s = ln r`. `m = 0` is the mean-value mode and
/// `m = n − 1` the first harmonic. No special functions involved.
pub struct OdeOracle {
    n: usize,
    c: f64,
    radius: f64,
    h: f64,
}

#[derive(Clone, Copy)]
struct State {
    w: f64,
    /// r·w'
    p: f64,
    /// ∫ t^{1−n} / w(t)² dt from the evaluation radius outward.
    j: f64,
}

impl OdeOracle {
    pub fn new(n: usize, c: f64, radius: f64) -> Self {
        Self { n, c, radius, h: 2e-4 }
    }

    fn deriv(&self, m: f64, s: f64, y: State) -> State {
        let n = self.n as f64;
        let r2 = (2.0 * s).exp();
        State {
            w: y.p,
            p: -(n - 2.0) * y.p + (m + self.c * r2) * y.w,
            j: ((2.0 - n) * s).exp() / (y.w * y.w),
        }
    }

    fn rk4(&self, m: f64, mut y: State, s0: f64, s1: f64) -> State {
        let steps = ((s1 - s0).abs() / self.h).ceil().max(1.0) as usize;
        let h = (s1 - s0) / steps as f64;
        let add = |a: State, b: State, t: f64| State { w: a.w + t * b.w, p: a.p + t * b.p, j: a.j + t * b.j };
        let mut s = s0;
        for _ in 0..steps {
            let k1 = self.deriv(m, s, y);
            let k2 = self.deriv(m, s + 0.5 * h, add(y, k1, 0.5 * h));
            let k3 = self.deriv(m, s + 0.5 * h, add(y, k2, 0.5 * h));
            let k4 = self.deriv(m, s + h, add(y, k3, h));
            y = State {
                w: y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
                p: y.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
                j: y.j + h / 6.0 * (k1.j + 2.0 * k2.j + 2.0 * k3.j + k4.j),
            };
            s += h;
        }
        y
    }

    /// Regular solution at radius `r`, normalized by its behaviour at the
    /// origin: `w ≈ 1` for the mean mode and `w ≈ r` for the first harmonic.
    /// Always integrated outward, where the regular solution dominates.
    fn regular(&self, first_harmonic: bool, r: f64) -> State {
        let n = self.n as f64;
        let r0 = 1e-6 * self.radius;
        let (m, w, p) = if first_harmonic {
            let a = self.c * r0 * r0 / (2.0 * (n + 2.0));
            (n - 1.0, r0 * (1.0 + a), r0 * (1.0 + 3.0 * a))
        } else {
            (0.0, 1.0 + self.c * r0 * r0 / (2.0 * n), self.c * r0 * r0 / n)
        };
        self.rk4(m, State { w, p, j: 0.0 }, r0.ln(), r.ln())
    }

    fn outer(&self, first_harmonic: bool) -> State {
        self.regular(first_harmonic, self.radius)
    }

    /// `w`, `r·w'` at `r` and the integral from `r` to `R`.
    fn inward(&self, first_harmonic: bool, r: f64) -> State {
        let m = if first_harmonic { self.n as f64 - 1.0 } else { 0.0 };
        let at_r = State { j: 0.0, ..self.regular(first_harmonic, r) };
        let j = self.rk4(m, at_r, r.ln(), self.radius.ln()).j;
        State { j, ..at_r }
    }

    pub fn norm_constant(&self) -> f64 {
        1.0 / self.outer(false).w
    }

    pub fn gradient_norm_constant(&self) -> f64 {
        self.radius / self.outer(true).w
    }

    pub fn green(&self, r: f64) -> f64 {
        let y = self.inward(false, r);
        y.w * y.j / sphere_area(self.n)
    }

    pub fn green_grad_radial(&self, r: f64) -> f64 {
        let y = self.inward(false, r);
        let area = sphere_area(self.n);
        (y.p / r) * y.j / area - 1.0 / (area * r.powi(self.n as i32 - 1) * y.w)
    }

    pub fn source_gradient(&self, r: f64) -> f64 {
        let y = self.inward(true, r);
        self.n as f64 / sphere_area(self.n) * y.w * y.j
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// One analytic check: estimates at `x` over `seeds`, and how many land within
/// three standard errors of `exact`.
pub struct Coverage {
    pub hits: usize,
    pub total: usize,
    pub worst_z: f64,
}

fn coverage(problem: &Problem<'_>, screening: f64, x: &[f64], exact: f64, n_walks: usize, seeds: u64) -> Coverage {
    let mut hits = 0;
    let mut worst_z: f64 = 0.0;
    for seed in 0..seeds {
        let cfg = WalkConfig { n_walks, screening, seed, epsilon: 1e-4, ..Default::default() };
        let est = solve_value(problem, &cfg, x).unwrap();
        let z = (est.value() - exact).abs() / est.std_error()[0];
        worst_z = worst_z.max(z);
        if z <= 3.0 {
            hits += 1;
        }
    }
    Coverage { hits, total: seeds as usize, worst_z }
}

/// `u = x₁` on the unit disk, boundary data only.
pub fn harmonic_coverage(n_walks: usize, seeds: u64) -> Coverage {
    let ball = BallField::new(vec![0.0, 0.0], 1.0).unwrap();
    let bc = BoundarySpec::function(|y| y[0]);
    let src = SourceSpec::None;
    let x = [0.3, -0.4];
    coverage(&Problem::new(&ball, &bc, &src), 0.0, &x, x[0], n_walks, seeds)
}

/// `u* = R² − |x|²` on the `n`-ball of radius `R` with `f = −2n − c·u*`.
pub fn manufactured_coverage(n: usize, c: f64, n_walks: usize, seeds: u64) -> Coverage {
    let radius = 1.5;
    let ball = BallField::new(vec![0.0; n], radius).unwrap();
    let exact = move |x: &[f64]| radius * radius - x.iter().map(|v| v * v).sum::<f64>();
    let bc = BoundarySpec::default();
    let src = SourceSpec::field(move |x| -2.0 * n as f64 - c * exact(x));
    let mut x = vec![0.0; n];
    x[0] = 0.4;
    x[1] = 0.7;
    coverage(&Problem::new(&ball, &bc, &src), c, &x, exact(&x), n_walks, seeds)
}
