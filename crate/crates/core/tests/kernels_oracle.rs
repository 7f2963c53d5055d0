mod common;

use common::{rel_err, sphere_area, OdeOracle};
use wos_nav::ScreenedBallKernel;

const FRACTIONS: [f64; 4] = [0.05, 0.3, 0.7, 0.95];

#[test]
fn screened_kernels_match_the_radial_ode() {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for c in [0.1, 1.0, 10.0] {
            for radius in [0.5, 1.0, 5.0] {
                let k = ScreenedBallKernel::new(n, c, radius).unwrap();
                let o = OdeOracle::new(n, c, radius);
                let mut check = |what: &str, got: f64, want: f64| {
                    let e = rel_err(got, want);
                    worst = worst.max(e);
                    assert!(e < 1e-6, "{what} n={n} c={c} R={radius}: {got} vs {want} (rel {e:e})");
                };
                check("C", k.norm_constant(), o.norm_constant());
                check("C1", k.gradient_norm_constant(), o.gradient_norm_constant());
                for f in FRACTIONS {
                    let r = f * radius;
                    check("G", k.green(r).unwrap(), o.green(r));
                    check("G'", k.green_grad_radial(r).unwrap(), o.green_grad_radial(r));
                    check("psi", k.source_gradient(r).unwrap(), o.source_gradient(r));
                }
            }
        }
    }
    eprintln!("worst relative error against the ODE oracle: {worst:e}");
}

#[test]
fn unscreened_closed_forms() {
    for n in 2..=5 {
        let area = sphere_area(n);
        let nf = n as f64;
        for radius in [0.5, 1.0, 5.0] {
            let k = ScreenedBallKernel::new(n, 0.0, radius).unwrap();
            assert_eq!(k.norm_constant(), 1.0);
            assert_eq!(k.gradient_norm_constant(), 1.0);
            for f in FRACTIONS {
                let r = f * radius;
                let (g, dg) = if n == 2 {
                    ((radius / r).ln() / area, -1.0 / (area * r))
                } else {
                    ((r.powf(2.0 - nf) - radius.powf(2.0 - nf)) / ((nf - 2.0) * area), -r.powf(1.0 - nf) / area)
                };
                let psi = (r.powf(1.0 - nf) - r * radius.powf(-nf)) / area;
                assert!(rel_err(k.green(r).unwrap(), g) < 1e-12, "G n={n} R={radius} r={r}");
                assert!(rel_err(k.green_grad_radial(r).unwrap(), dg) < 1e-12, "G' n={n} R={radius} r={r}");
                assert!(rel_err(k.source_gradient(r).unwrap(), psi) < 1e-12, "psi n={n} R={radius} r={r}");
            }
        }
    }
}

#[test]
fn oracle_reproduces_unscreened_forms() {
    let o = OdeOracle::new(3, 0.0, 2.0);
    let area = sphere_area(3);
    assert!(rel_err(o.green(0.5), (1.0 / 0.5 - 0.5) / area) < 1e-9);
    assert!(rel_err(o.source_gradient(0.5), (0.25f64.recip() - 0.5 / 8.0) / area) < 1e-9);
    assert!((o.norm_constant() - 1.0).abs() < 1e-12);
}

#[test]
fn kernel_rejects_radii_outside_the_ball() {
    let k = ScreenedBallKernel::new(2, 1.0, 1.0).unwrap();
    assert!(k.green(0.0).is_err());
    assert!(k.green(1.0).is_err());
    assert!(k.source_gradient(-0.1).is_err());
    assert!(ScreenedBallKernel::new(1, 1.0, 1.0).is_err());
    assert!(ScreenedBallKernel::new(2, -1.0, 1.0).is_err());
}
