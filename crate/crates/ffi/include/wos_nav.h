#ifndef WOS_NAV_H
#define WOS_NAV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum WosPathStatus {
  WOS_PATH_STATUS_REACHED = 0,
  WOS_PATH_STATUS_MAX_ITERS = 1,
  WOS_PATH_STATUS_STALLED = 2,
} WosPathStatus;

typedef enum WosStatus {
  WOS_STATUS_OK = 0,
  WOS_STATUS_NULL_POINTER = 1,
  WOS_STATUS_INVALID_ARGUMENT = 2,
  WOS_STATUS_DIMENSION_MISMATCH = 3,
  WOS_STATUS_PRECONDITION = 4,
  WOS_STATUS_DOMAIN = 5,
  WOS_STATUS_UNDEFINED_DIRECTION = 6,
  WOS_STATUS_IO = 7,
  WOS_STATUS_PANIC = 8,
} WosStatus;

// Opaque planned path.
typedef struct WosPath WosPath;

// Opaque distance field.
typedef struct WosScene WosScene;

// Mirrors the solver's walk configuration. `workers = 0` uses all cores.
typedef struct WosWalkConfig {
  double epsilon;
  size_t n_walks;
  double screening;
  size_t max_steps;
  uint64_t seed;
  double c_imp;
  size_t workers;
} WosWalkConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library.
const char *wos_last_error(void);

struct WosWalkConfig wos_walk_config_default(void);

// Disk environment with radius scale `k_r` in `dim ≥ 2` dimensions.
//
// # Safety
// `out` must be valid for writing a pointer.
enum WosStatus wos_scene_disk(double k_r, size_t dim, struct WosScene **out);

// Configuration space of a two-link arm with joint bounds `[-q_ub, q_ub]`
// and a point obstacle. `lipschitz != 0` selects the Lipschitz field,
// otherwise the IK collision curve with `n_col` points is used.
//
// # Safety
// `links` and `q_ub` must point to two doubles, `out` must be writable.
enum WosStatus wos_scene_rr(const double *links,
                            const double *q_ub,
                            double obstacle_x,
                            double obstacle_y,
                            size_t n_col,
                            int32_t lipschitz,
                            struct WosScene **out);

// Dimension of the scene, 0 for a null handle.
//
// # Safety
// `scene` must be null or a live handle.
size_t wos_scene_dim(const struct WosScene *scene);

// # Safety
// `x` must hold `len` doubles, `out` must be writable.
enum WosStatus wos_scene_distance(const struct WosScene *scene,
                                  const double *x,
                                  size_t len,
                                  double *out);

// # Safety
// `scene` must be null or a handle not freed before.
void wos_scene_free(struct WosScene *scene);

// Estimate of `u(x)` with zero boundary data and, when `goal` is non-null,
// a point source of strength `magnitude` at `goal` (same length as `x`).
//
// # Safety
// Pointers must be valid for `len` doubles; `std_error` may be null.
enum WosStatus wos_solve_value(const struct WosScene *scene,
                               const struct WosWalkConfig *cfg,
                               const double *goal,
                               double magnitude,
                               const double *x,
                               size_t len,
                               double *mean,
                               double *std_error);

// Gradient estimate at `x`, written to `grad[0..len]`.
//
// # Safety
// Pointers must be valid for `len` doubles; `std_error` may be null.
enum WosStatus wos_solve_gradient(const struct WosScene *scene,
                                  const struct WosWalkConfig *cfg,
                                  const double *goal,
                                  double magnitude,
                                  const double *x,
                                  size_t len,
                                  double *grad,
                                  double *std_error);

// Gradient-ascent path from `start` to `goal` with step `min(step_upper, d/2)`.
// `goal_tol ≤ 0` means `step_upper`.
//
// # Safety
// `start` and `goal` must hold `len` doubles, `out` must be writable.
enum WosStatus wos_plan(const struct WosScene *scene,
                        const struct WosWalkConfig *cfg,
                        const double *start,
                        const double *goal,
                        size_t len,
                        double step_upper,
                        double goal_tol,
                        size_t max_iters,
                        struct WosPath **out);

// Number of points, 0 for a null handle.
//
// # Safety
// `path` must be null or a live handle.
size_t wos_path_len(const struct WosPath *path);

// Coordinates per point, 0 for a null handle.
//
// # Safety
// `path` must be null or a live handle.
size_t wos_path_dim(const struct WosPath *path);

// Summed segment length, NaN for a null handle.
//
// # Safety
// `path` must be null or a live handle.
double wos_path_length(const struct WosPath *path);

// # Safety
// `path` must be a live handle, `out` writable.
enum WosStatus wos_path_status(const struct WosPath *path, enum WosPathStatus *out);

// Copies the points row-major into `buf`, which must hold
// `wos_path_len · wos_path_dim` doubles (`buf_len` is checked).
//
// # Safety
// `buf` must be valid for `buf_len` doubles.
enum WosStatus wos_path_points(const struct WosPath *path, double *buf, size_t buf_len);

// # Safety
// `path` must be null or a handle not freed before.
void wos_path_free(struct WosPath *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WOS_NAV_H */
