//! Exponentially scaled modified Bessel functions `I_ν(x)·e^{−x}` and
//! `K_ν(x)·e^{x}` for the half-integer orders `ν ∈ {0, ½, 1, 3/2, …}` that
//! appear as `n/2 − 1` in n-dimensional radial problems.
//!
//! `K` comes from a closed form (`μ = −½`), the Temme series (`μ = 0`, `x < 2`)
//! or Steed's continued fraction (`μ = 0`, `x ≥ 2`), followed by the upward
//! recurrence, which is stable for `K`. `I` is never recurred: the ratio
//! `I_{ν+1}/I_ν` comes from its continued fraction and the pair is fixed by the
//! Wronskian `I_ν K_{ν+1} + I_{ν+1} K_ν = 1/x`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 200_000;

/// Scaled values of `I_ν, I_{ν+1}, K_ν, K_{ν+1}` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledIk {
    /// `I_ν(x)·e^{−x}`
    pub i: f64,
    /// `I_{ν+1}(x)·e^{−x}`
    pub i_next: f64,
    /// `K_ν(x)·e^{x}`
    pub k: f64,
    /// `K_{ν+1}(x)·e^{x}`
    pub k_next: f64,
}

pub(crate) fn is_half_integer_order(nu: f64) -> bool {
    nu >= 0.0 && (2.0 * nu).fract() == 0.0 && nu < 1e6
}

/// `I` and `K` of order `nu` and `nu + 1`, exponentially scaled.
pub fn bessel_ik_scaled(nu: f64, x: f64) -> Result<ScaledIk> {
    if !is_half_integer_order(nu) {
        return Err(Error::domain(format!("Bessel order must be a non-negative multiple of 1/2, got {nu}")));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("Bessel argument must be positive and finite, got {x}")));
    }
    Ok(ik_unchecked(nu, x))
}

pub(crate) fn ik_unchecked(nu: f64, x: f64) -> ScaledIk {
    let steps = (nu + 0.5).floor() as usize;
    let mu = nu - steps as f64;

    let (mut k_lo, mut k_hi) = if mu != 0.0 {
        // K_{-1/2} = K_{1/2} = sqrt(π / 2x) e^{-x}
        let k = (PI / (2.0 * x)).sqrt();
        (k, k)
    } else if x < 2.0 {
        let (k0, k1) = k01_temme(x);
        let s = x.exp();
        (k0 * s, k1 * s)
    } else {
        k01_steed_scaled(x)
    };
    for j in 0..steps {
        let order = mu + 1.0 + j as f64;
        let next = 2.0 * order / x * k_hi + k_lo;
        k_lo = k_hi;
        k_hi = next;
    }

    let ratio = i_ratio(nu, x);
    let i = 1.0 / (x * (ratio * k_lo + k_hi));
    ScaledIk { i, i_next: ratio * i, k: k_lo, k_next: k_hi }
}

/// `I_{ν+1}(x) / I_ν(x)` by modified Lentz on `1/(b₁ + 1/(b₂ + …))`,
/// `b_j = 2(ν + j)/x`.
fn i_ratio(nu: f64, x: f64) -> f64 {
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..=MAX_ITER {
        let b = 2.0 * (nu + j as f64) / x;
        d += b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            return f;
        }
    }
    f
}

/// Unscaled `K_0, K_1` from the Temme series, accurate for small arguments.
fn k01_temme(x: f64) -> (f64, f64) {
    let half = 0.5 * x;
    let mut ff = -(half.ln() + EULER_GAMMA);
    let mut sum = ff;
    let mut p = 0.5;
    let mut q = 0.5;
    let mut c = 1.0;
    let d = half * half;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi);
        c *= d / fi;
        p /= fi;
        q /= fi;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// Scaled `K_0, K_1` from Steed's continued fraction, for `x ≥ 2`.
fn k01_steed_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `ln Γ(a)` for `a` a positive multiple of 1/2.
pub(crate) fn ln_gamma_half_integer(a: f64) -> f64 {
    debug_assert!(a > 0.0 && (2.0 * a).fract() == 0.0);
    let (mut acc, mut z) = if a.fract() == 0.0 { (0.0, 1.0) } else { (0.5 * PI.ln(), 0.5) };
    while z < a {
        acc += z.ln();
        z += 1.0;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    // (ν, x, I_ν(x)e^{-x}, K_ν(x)e^{x}) from an independent library (SciPy ive/kve).
    const REFERENCE: &[(f64, f64, f64, f64)] = &[
        (0.0, 0.001, 0.9990007495835156, 7.030716002378252),
        (0.0, 0.3, 0.7575806251825478, 1.8526273007720147),
        (0.0, 1.9, 0.31824316288914156, 0.8614506167517544),
        (0.0, 2.0, 0.308508322553671, 0.8415682150707713),
        (0.0, 5.0, 0.18354081260932834, 0.547807564313519),
        (0.0, 31.6, 0.07125454767626137, 0.22208784409433338),
        (0.0, 200.0, 0.02822715994911192, 0.08856745833929665),
        (0.5, 0.001, 0.025206110707457836, 39.63327297606011),
        (0.5, 0.3, 0.3286300925912533, 2.288228082159423),
        (0.5, 1.9, 0.2829485303464642, 0.9092496405495135),
        (0.5, 2.0, 0.2769280454353554, 0.886226925452758),
        (0.5, 5.0, 0.17840431170432244, 0.5604991216397929),
        (0.5, 31.6, 0.07096864682394617, 0.2229545794973179),
        (0.5, 200.0, 0.028209479177387815, 0.0886226925452758),
        (1.0, 0.001, 0.0004995003123542212, 1000.9967345590684),
        (1.0, 0.3, 0.11237756063983882, 4.12515776224447),
        (1.0, 1.9, 0.21661191117477044, 1.0674709298145704),
        (1.0, 2.0, 0.21526928924893765, 1.0334768470686888),
        (1.0, 5.0, 0.16397226694454237, 0.6002738587883125),
        (1.0, 31.6, 0.07011788541206687, 0.22557493017373498),
        (1.0, 200.0, 0.02815650339483292, 0.08878860158500367),
        (1.5, 0.001, 8.402036342350211e-06, 39672.906249036176),
        (1.5, 0.3, 0.0326675062273431, 9.915655022690833),
        (1.5, 1.9, 0.14697748971575478, 1.3878020829439943),
        (1.5, 2.0, 0.1487975153947237, 1.329340388179137),
        (1.5, 5.0, 0.1427396491853701, 0.6725989459677515),
        (1.5, 31.6, 0.06872280357002383, 0.23001010416495454),
        (1.5, 200.0, 0.028068431781500876, 0.08906580600800218),
        (2.0, 0.001, 1.248750728854275e-07, 2002000.4998341391),
        (2.0, 0.3, 0.008396887583622534, 29.353679049068482),
        (2.0, 1.9, 0.09023062481043576, 1.985104227082881),
        (2.0, 2.0, 0.09323903330473336, 1.87504506213946),
        (2.0, 5.0, 0.11795190583151141, 0.7879171078288439),
        (2.0, 31.6, 0.06681670682739638, 0.23636473840912672),
        (2.0, 200.0, 0.027945594915163584, 0.08945534435514668),
        (2.5, 0.001, 1.6804072204584039e-09, 119018758.38038151),
        (2.5, 0.3, 0.001955030317822101, 101.44477830906776),
        (2.5, 1.9, 0.05087880974264083, 3.1005160873031885),
        (2.5, 2.0, 0.05373177234326977, 2.8802375077214637),
        (2.5, 5.0, 0.09276052219310035, 0.9640584892204438),
        (2.5, 31.6, 0.06444433002932366, 0.24479098179145914),
        (2.5, 200.0, 0.027788452700665302, 0.08995867963539583),
        (3.0, 0.001, 2.0812511713977277e-11, 8008003000.333291),
        (3.0, 0.3, 0.00041905952487171976, 395.50754508315754),
        (3.0, 1.9, 0.026652701047537322, 5.246637723673267),
        (3.0, 2.0, 0.028791222639470884, 4.783566971347609),
        (3.0, 5.0, 0.06961074227933323, 1.2306075450513876),
        (3.0, 31.6, 0.061660074421257205, 0.25549451731413075),
        (3.0, 200.0, 0.02759759149652965, 0.0905777084721066),
        (3.5, 0.001, 2.400581705407539e-13, 595093831574.8138),
        (3.5, 0.3, 8.366759697474879e-05, 1700.6619601738203),
        (3.5, 1.9, 0.013085885129857845, 9.547054944268174),
        (3.5, 2.0, 0.014468084536549252, 8.529934157482796),
        (3.5, 5.0, 0.049979126992269765, 1.6366574351881953),
        (3.5, 31.6, 0.05852591590715616, 0.2687428544484133),
        (3.5, 200.0, 0.02737372046398424, 0.09131477299888707),
    ];

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn matches_reference_table() {
        for &(nu, x, i_ref, k_ref) in REFERENCE {
            let v = bessel_ik_scaled(nu, x).unwrap();
            assert!(rel(v.i, i_ref) < 1e-13, "I_{nu}({x}): {} vs {i_ref}", v.i);
            assert!(rel(v.k, k_ref) < 1e-13, "K_{nu}({x}): {} vs {k_ref}", v.k);
        }
    }

    #[test]
    fn next_order_is_consistent_with_table() {
        for &(nu, x, i_ref, k_ref) in REFERENCE {
            if nu < 1.0 {
                continue;
            }
            let v = bessel_ik_scaled(nu - 1.0, x).unwrap();
            assert!(rel(v.i_next, i_ref) < 1e-13, "I_{nu}({x})");
            assert!(rel(v.k_next, k_ref) < 1e-13, "K_{nu}({x})");
        }
    }

    #[test]
    fn half_order_closed_forms() {
        for x in [0.01, 0.7, 3.0, 40.0] {
            let v = bessel_ik_scaled(0.5, x).unwrap();
            let i_half = (2.0 / (PI * x)).sqrt() * x.sinh() * (-x).exp();
            let k_half = (PI / (2.0 * x)).sqrt();
            assert!(rel(v.i, i_half) < 1e-14);
            assert!(rel(v.k, k_half) < 1e-15);
        }
    }

    #[test]
    fn wronskian_holds() {
        for nu in [0.0, 0.5, 1.0, 2.5, 4.0] {
            for x in [1e-4, 0.5, 1.999, 2.0, 9.0, 120.0] {
                let v = bessel_ik_scaled(nu, x).unwrap();
                let w = x * (v.i * v.k_next + v.i_next * v.k);
                assert!((w - 1.0).abs() < 1e-13, "ν={nu} x={x}: {w}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_ik_scaled(0.3, 1.0).is_err());
        assert!(bessel_ik_scaled(-1.0, 1.0).is_err());
        assert!(bessel_ik_scaled(1.0, 0.0).is_err());
        assert!(bessel_ik_scaled(1.0, f64::NAN).is_err());
    }

    #[test]
    fn gamma_of_half_integers() {
        assert!((ln_gamma_half_integer(1.0)).abs() < 1e-15);
        assert!((ln_gamma_half_integer(5.0) - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma_half_integer(1.5) - (0.5 * PI.sqrt()).ln()).abs() < 1e-15);
        assert!((ln_gamma_half_integer(3.5) - (15.0 / 8.0 * PI.sqrt()).ln()).abs() < 1e-14);
    }
}
