//! C ABI over `wos-nav`.
//!
//! Scenes and paths are opaque heap handles released with their `*_free`
//! function. Every fallible call returns a [`WosStatus`]; on failure
//! [`wos_last_error`] describes what went wrong on the calling thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use wos_nav::{
    integrate_path, solve_gradient, solve_value, BoundarySpec, DiskEnvironment, DistanceField, Error, IkField,
    LipschitzField, PathResult, PathStatus, PlanConfig, PlanarArm, Problem, SourceSpec, WalkConfig,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WosStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Precondition = 4,
    Domain = 5,
    UndefinedDirection = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WosPathStatus {
    Reached = 0,
    MaxIters = 1,
    Stalled = 2,
}

/// Mirrors the solver's walk configuration. `workers = 0` uses all cores.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WosWalkConfig {
    pub epsilon: f64,
    pub n_walks: usize,
    pub screening: f64,
    pub max_steps: usize,
    pub seed: u64,
    pub c_imp: f64,
    pub workers: usize,
}

impl From<WosWalkConfig> for WalkConfig {
    fn from(c: WosWalkConfig) -> Self {
        WalkConfig {
            epsilon: c.epsilon,
            n_walks: c.n_walks,
            screening: c.screening,
            max_steps: c.max_steps,
            seed: c.seed,
            c_imp: c.c_imp,
            workers: c.workers,
        }
    }
}

/// Opaque distance field.
pub struct WosScene {
    field: Arc<dyn DistanceField>,
}

/// Opaque planned path.
pub struct WosPath {
    inner: PathResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> WosStatus {
    match e {
        Error::DimensionMismatch { .. } => WosStatus::DimensionMismatch,
        Error::Precondition(_) => WosStatus::Precondition,
        Error::Domain(_) => WosStatus::Domain,
        Error::UndefinedDirection => WosStatus::UndefinedDirection,
        Error::Io { .. } => WosStatus::Io,
        _ => WosStatus::InvalidArgument,
    }
}

struct Fail(WosStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WosStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WosStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            WosStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            WosStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller promises `len` readable doubles at `p`.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

unsafe fn scene_ref<'a>(s: *const WosScene) -> Result<&'a WosScene, Fail> {
    // SAFETY: non-null handles come from `wos_scene_*` and are live.
    unsafe { s.as_ref() }.ok_or_else(|| null("scene"))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: checked non-null; the caller provides writable storage.
    unsafe { out.write(v) };
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn wos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn wos_walk_config_default() -> WosWalkConfig {
    let d = WalkConfig::default();
    WosWalkConfig {
        epsilon: d.epsilon,
        n_walks: d.n_walks,
        screening: d.screening,
        max_steps: d.max_steps,
        seed: d.seed,
        c_imp: d.c_imp,
        workers: d.workers,
    }
}

/// Disk environment with radius scale `k_r` in `dim ≥ 2` dimensions.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn wos_scene_disk(k_r: f64, dim: usize, out: *mut *mut WosScene) -> WosStatus {
    guard(|| {
        let env = DiskEnvironment::new(k_r, dim)?;
        let s = Box::into_raw(Box::new(WosScene { field: Arc::new(env) }));
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, s, "out") }
    })
}

/// Configuration space of a two-link arm with joint bounds `[-q_ub, q_ub]`
/// and a point obstacle. `lipschitz != 0` selects the Lipschitz field,
/// otherwise the IK collision curve with `n_col` points is used.
///
/// # Safety
/// `links` and `q_ub` must point to two doubles, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wos_scene_rr(
    links: *const f64,
    q_ub: *const f64,
    obstacle_x: f64,
    obstacle_y: f64,
    n_col: usize,
    lipschitz: i32,
    out: *mut *mut WosScene,
) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (links, q_ub) = unsafe { (slice(links, 2, "links")?, slice(q_ub, 2, "q_ub")?) };
        let arm = PlanarArm::symmetric(links.to_vec(), q_ub.to_vec())?;
        let obs = [obstacle_x, obstacle_y];
        let field: Arc<dyn DistanceField> = if lipschitz != 0 {
            Arc::new(LipschitzField::new(arm, obs))
        } else {
            Arc::new(IkField::from_arm(&arm, obs, n_col)?)
        };
        let s = Box::into_raw(Box::new(WosScene { field }));
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, s, "out") }
    })
}

/// Dimension of the scene, 0 for a null handle.
///
/// # Safety
/// `scene` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wos_scene_dim(scene: *const WosScene) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { scene.as_ref() }.map_or(0, |s| s.field.dim())
}

/// # Safety
/// `x` must hold `len` doubles, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wos_scene_distance(scene: *const WosScene, x: *const f64, len: usize, out: *mut f64) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let s = unsafe { scene_ref(scene)? };
        let x = unsafe { slice(x, len, "x")? };
        let d = wos_nav::geometry::checked_distance(s.field.as_ref(), x)?;
        unsafe { write_out(out, d, "out") }
    })
}

/// # Safety
/// `scene` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn wos_scene_free(scene: *mut WosScene) {
    if !scene.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(scene) });
    }
}

struct SolveArgs<'a> {
    scene: &'a WosScene,
    cfg: WalkConfig,
    source: SourceSpec,
    x: &'a [f64],
}

unsafe fn solve_args<'a>(
    scene: *const WosScene,
    cfg: *const WosWalkConfig,
    goal: *const f64,
    magnitude: f64,
    x: *const f64,
    len: usize,
) -> Result<SolveArgs<'a>, Fail> {
    // SAFETY: forwarded caller contract.
    let scene = unsafe { scene_ref(scene)? };
    let cfg = unsafe { cfg.as_ref() }.ok_or_else(|| null("config"))?;
    let x = unsafe { slice(x, len, "x")? };
    let source = if goal.is_null() {
        SourceSpec::None
    } else {
        SourceSpec::dirac(unsafe { slice(goal, len, "goal")? }.to_vec(), magnitude)
    };
    Ok(SolveArgs { scene, cfg: (*cfg).into(), source, x })
}

/// Estimate of `u(x)` with zero boundary data and, when `goal` is non-null,
/// a point source of strength `magnitude` at `goal` (same length as `x`).
///
/// # Safety
/// Pointers must be valid for `len` doubles; `std_error` may be null.
#[no_mangle]
pub unsafe extern "C" fn wos_solve_value(
    scene: *const WosScene,
    cfg: *const WosWalkConfig,
    goal: *const f64,
    magnitude: f64,
    x: *const f64,
    len: usize,
    mean: *mut f64,
    std_error: *mut f64,
) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let a = unsafe { solve_args(scene, cfg, goal, magnitude, x, len)? };
        let bc = BoundarySpec::default();
        let est = solve_value(&Problem::new(a.scene.field.as_ref(), &bc, &a.source), &a.cfg, a.x)?;
        unsafe { write_out(mean, est.value(), "mean")? };
        if !std_error.is_null() {
            unsafe { std_error.write(est.std_error()[0]) };
        }
        Ok(())
    })
}

/// Gradient estimate at `x`, written to `grad[0..len]`.
///
/// # Safety
/// Pointers must be valid for `len` doubles; `std_error` may be null.
#[no_mangle]
pub unsafe extern "C" fn wos_solve_gradient(
    scene: *const WosScene,
    cfg: *const WosWalkConfig,
    goal: *const f64,
    magnitude: f64,
    x: *const f64,
    len: usize,
    grad: *mut f64,
    std_error: *mut f64,
) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let a = unsafe { solve_args(scene, cfg, goal, magnitude, x, len)? };
        if grad.is_null() {
            return Err(null("grad"));
        }
        let bc = BoundarySpec::default();
        let est = solve_gradient(&Problem::new(a.scene.field.as_ref(), &bc, &a.source), &a.cfg, a.x)?;
        unsafe { ptr::copy_nonoverlapping(est.mean.as_ptr(), grad, len) };
        if !std_error.is_null() {
            unsafe { ptr::copy_nonoverlapping(est.std_error().as_ptr(), std_error, len) };
        }
        Ok(())
    })
}

/// Gradient-ascent path from `start` to `goal` with step `min(step_upper, d/2)`.
/// `goal_tol ≤ 0` means `step_upper`.
///
/// # Safety
/// `start` and `goal` must hold `len` doubles, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wos_plan(
    scene: *const WosScene,
    cfg: *const WosWalkConfig,
    start: *const f64,
    goal: *const f64,
    len: usize,
    step_upper: f64,
    goal_tol: f64,
    max_iters: usize,
    out: *mut *mut WosPath,
) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let scene = unsafe { scene_ref(scene)? };
        let cfg = unsafe { cfg.as_ref() }.ok_or_else(|| null("config"))?;
        let start = unsafe { slice(start, len, "start")? };
        let goal = unsafe { slice(goal, len, "goal")? };
        let mut plan = PlanConfig::new(goal.to_vec(), step_upper, (*cfg).into());
        plan.goal_tol = (goal_tol > 0.0).then_some(goal_tol);
        plan.max_iters = max_iters;
        let inner = integrate_path(scene.field.as_ref(), &plan, start)?;
        let p = Box::into_raw(Box::new(WosPath { inner }));
        unsafe { write_out(out, p, "out") }
    })
}

/// Number of points, 0 for a null handle.
///
/// # Safety
/// `path` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wos_path_len(path: *const WosPath) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { path.as_ref() }.map_or(0, |p| p.inner.points.len())
}

/// Coordinates per point, 0 for a null handle.
///
/// # Safety
/// `path` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wos_path_dim(path: *const WosPath) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { path.as_ref() }.and_then(|p| p.inner.points.first()).map_or(0, Vec::len)
}

/// Summed segment length, NaN for a null handle.
///
/// # Safety
/// `path` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wos_path_length(path: *const WosPath) -> f64 {
    // SAFETY: forwarded caller contract.
    unsafe { path.as_ref() }.map_or(f64::NAN, |p| p.inner.length)
}

/// # Safety
/// `path` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wos_path_status(path: *const WosPath, out: *mut WosPathStatus) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let p = unsafe { path.as_ref() }.ok_or_else(|| null("path"))?;
        let s = match p.inner.status {
            PathStatus::Reached => WosPathStatus::Reached,
            PathStatus::MaxIters => WosPathStatus::MaxIters,
            PathStatus::Stalled => WosPathStatus::Stalled,
        };
        unsafe { write_out(out, s, "out") }
    })
}

/// Copies the points row-major into `buf`, which must hold
/// `wos_path_len · wos_path_dim` doubles (`buf_len` is checked).
///
/// # Safety
/// `buf` must be valid for `buf_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wos_path_points(path: *const WosPath, buf: *mut f64, buf_len: usize) -> WosStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let p = unsafe { path.as_ref() }.ok_or_else(|| null("path"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let flat: Vec<f64> = p.inner.points.iter().flatten().copied().collect();
        if buf_len < flat.len() {
            return Err(Fail(
                WosStatus::InvalidArgument,
                format!("buffer holds {buf_len} doubles, path needs {}", flat.len()),
            ));
        }
        unsafe { ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len()) };
        Ok(())
    })
}

/// # Safety
/// `path` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn wos_path_free(path: *mut WosPath) {
    if !path.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(path) });
    }
}
