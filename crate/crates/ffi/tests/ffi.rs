use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use wos_nav_ffi::*;

fn last_error() -> String {
    let p = wos_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn disk(k_r: f64) -> *mut WosScene {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wos_scene_disk(k_r, 2, &mut s) }, WosStatus::Ok);
    assert!(!s.is_null());
    s
}

fn small_cfg(n_walks: usize) -> WosWalkConfig {
    WosWalkConfig { n_walks, seed: 7, workers: 1, ..wos_walk_config_default() }
}

#[test]
fn default_config_matches_core() {
    let c = wos_walk_config_default();
    let d = wos_nav::WalkConfig::default();
    assert_eq!(c.epsilon, d.epsilon);
    assert_eq!(c.n_walks, d.n_walks);
    assert_eq!(c.screening, d.screening);
    assert_eq!(c.max_steps, d.max_steps);
    assert_eq!(c.seed, d.seed);
    assert_eq!(c.c_imp, d.c_imp);
}

#[test]
fn disk_distance() {
    let s = disk(0.3);
    unsafe {
        assert_eq!(wos_scene_dim(s), 2);
        let mut d = 0.0;
        assert_eq!(wos_scene_distance(s, [-8.0, 0.0].as_ptr(), 2, &mut d), WosStatus::Ok);
        assert!((d - 2.0).abs() < 1e-15);
        assert_eq!(wos_scene_distance(s, [-8.0, 0.0, 1.0].as_ptr(), 3, &mut d), WosStatus::DimensionMismatch);
        assert!(!last_error().is_empty());
        wos_scene_free(s);
    }
}

#[test]
fn bad_arguments_report_codes() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(wos_scene_disk(1.5, 2, &mut s), WosStatus::InvalidArgument);
        assert!(s.is_null());
        assert!(last_error().contains("k_r"), "{}", last_error());
        assert_eq!(wos_scene_disk(0.3, 2, ptr::null_mut()), WosStatus::NullPointer);
        assert_eq!(wos_scene_dim(ptr::null()), 0);
        let mut d = 0.0;
        assert_eq!(wos_scene_distance(ptr::null(), [0.0, 0.0].as_ptr(), 2, &mut d), WosStatus::NullPointer);
        assert!(wos_path_length(ptr::null()).is_nan());
        assert_eq!(wos_path_len(ptr::null()), 0);
        wos_scene_free(ptr::null_mut());
        wos_path_free(ptr::null_mut());
    }
}

#[test]
fn solve_matches_core() {
    let s = disk(0.3);
    let cfg = small_cfg(2000);
    let x = [6.5, 0.0];
    let goal = [8.0, 0.0];
    let (mut mean, mut se, mut free) = (0.0, 0.0, 1.0);
    let (mut g, mut gse) = ([0.0; 2], [0.0; 2]);
    unsafe {
        assert_eq!(wos_solve_value(s, &cfg, goal.as_ptr(), 1.0, x.as_ptr(), 2, &mut mean, &mut se), WosStatus::Ok);
        assert_eq!(
            wos_solve_gradient(s, &cfg, goal.as_ptr(), 1.0, x.as_ptr(), 2, g.as_mut_ptr(), gse.as_mut_ptr()),
            WosStatus::Ok
        );
        assert_eq!(
            wos_solve_value(s, &cfg, ptr::null(), 1.0, x.as_ptr(), 2, &mut free, ptr::null_mut()),
            WosStatus::Ok
        );
        assert_eq!(free, 0.0);
        wos_scene_free(s);
    }

    let env = wos_nav::DiskEnvironment::new(0.3, 2).unwrap();
    let bc = wos_nav::BoundarySpec::default();
    let src = wos_nav::SourceSpec::dirac(goal.to_vec(), 1.0);
    let walk: wos_nav::WalkConfig = cfg.into();
    let est = wos_nav::solve_gradient(&wos_nav::Problem::new(&env, &bc, &src), &walk, &x).unwrap();
    assert_eq!(est.mean, g.to_vec());
    assert_eq!(est.std_error(), gse.to_vec());
    assert!(mean > 0.0 && se > 0.0 && se < mean, "{mean} {se}");
}

#[test]
fn gradient_rejects_null_output() {
    let s = disk(0.3);
    let cfg = small_cfg(10);
    unsafe {
        let st = wos_solve_gradient(s, &cfg, ptr::null(), 1.0, [-8.0, 0.0].as_ptr(), 2, ptr::null_mut(), ptr::null_mut());
        assert_eq!(st, WosStatus::NullPointer);
        let st = wos_solve_gradient(s, ptr::null(), ptr::null(), 1.0, [-8.0, 0.0].as_ptr(), 2, ptr::null_mut(), ptr::null_mut());
        assert_eq!(st, WosStatus::NullPointer);
        wos_scene_free(s);
    }
}

#[test]
fn plan_and_read_back() {
    let s = disk(0.2);
    let cfg = small_cfg(500);
    let start = [7.0, 3.0];
    let goal = [8.0, 0.0];
    let mut p = ptr::null_mut();
    unsafe {
        let st = wos_plan(s, &cfg, start.as_ptr(), goal.as_ptr(), 2, 0.5, 0.0, 200, &mut p);
        assert_eq!(st, WosStatus::Ok, "{}", last_error());
        let n = wos_path_len(p);
        assert!(n >= 2);
        assert_eq!(wos_path_dim(p), 2);
        let mut status = WosPathStatus::Stalled;
        assert_eq!(wos_path_status(p, &mut status), WosStatus::Ok);
        assert_eq!(status, WosPathStatus::Reached);

        let mut buf = vec![0.0; n * 2];
        assert_eq!(wos_path_points(p, buf.as_mut_ptr(), buf.len() - 1), WosStatus::InvalidArgument);
        assert_eq!(wos_path_points(p, buf.as_mut_ptr(), buf.len()), WosStatus::Ok);
        assert_eq!(&buf[..2], &start);
        let last = &buf[2 * n - 2..];
        assert!((last[0] - goal[0]).hypot(last[1] - goal[1]) <= 0.5);
        let len: f64 = buf.chunks(2).zip(buf.chunks(2).skip(1)).map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1])).sum();
        assert!((len - wos_path_length(p)).abs() < 1e-12);
        wos_path_free(p);
        wos_scene_free(s);
    }
}

#[test]
fn rr_scene() {
    let links = [1.0, 1.0];
    let q_ub = [1.5 * std::f64::consts::PI, std::f64::consts::PI];
    for lipschitz in [0, 1] {
        let mut s = ptr::null_mut();
        unsafe {
            let st = wos_scene_rr(links.as_ptr(), q_ub.as_ptr(), 0.0, 1.3, 200, lipschitz, &mut s);
            assert_eq!(st, WosStatus::Ok, "{}", last_error());
            assert_eq!(wos_scene_dim(s), 2);
            let mut d = 0.0;
            assert_eq!(wos_scene_distance(s, [0.0, 0.0].as_ptr(), 2, &mut d), WosStatus::Ok);
            assert!(d > 0.0 && d.is_finite());
            wos_scene_free(s);
        }
    }
    let mut s = ptr::null_mut();
    let st = unsafe { wos_scene_rr(ptr::null(), q_ub.as_ptr(), 0.0, 1.3, 200, 0, &mut s) };
    assert_eq!(st, WosStatus::NullPointer);
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/wos_nav.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "wos_last_error",
        "wos_walk_config_default",
        "wos_scene_disk",
        "wos_scene_rr",
        "wos_scene_distance",
        "wos_scene_free",
        "wos_solve_value",
        "wos_solve_gradient",
        "wos_plan",
        "wos_path_points",
        "wos_path_free",
        "WosWalkConfig",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // Syntax-check with a C compiler when one is around.
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).output() else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
