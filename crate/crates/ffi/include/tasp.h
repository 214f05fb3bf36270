#ifndef TASP_H
#define TASP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TaspStatus {
  TASP_STATUS_OK = 0,
  TASP_STATUS_NULL_ARGUMENT = 1,
  TASP_STATUS_INVALID_PARAMS = 2,
  TASP_STATUS_NUMERICAL = 3,
  TASP_STATUS_ANALYSIS = 4,
  TASP_STATUS_OUT_OF_RANGE = 5,
  TASP_STATUS_PANIC = 6,
} TaspStatus;

typedef enum TaspVariant {
  TASP_VARIANT_STANDARD = 0,
  TASP_VARIANT_HIGH_CHERN = 1,
} TaspVariant;

typedef enum TaspRingKind {
  TASP_RING_KIND_BIS = 0,
  TASP_RING_KIND_FSIS = 1,
  TASP_RING_KIND_ISIS = 2,
} TaspRingKind;

typedef enum TaspProcessLabel {
  TASP_PROCESS_LABEL_TRIVIAL_TO_TOPO = 0,
  TASP_PROCESS_LABEL_TOPO_TO_TRIVIAL = 1,
  TASP_PROCESS_LABEL_TOPO_TO_TOPO = 2,
  TASP_PROCESS_LABEL_TRIVIAL_TO_TRIVIAL = 3,
  TASP_PROCESS_LABEL_UNCLASSIFIABLE = 4,
} TaspProcessLabel;

/**
 * Opaque ring analysis of one grid.
 */
typedef struct TaspAnalysis TaspAnalysis;

/**
 * Opaque TASP grid.
 */
typedef struct TaspGrid TaspGrid;

/**
 * Quench parameters. `t_int_zero_plus != 0` starts at `t = 0+` and ignores
 * `t_int`; `g = 0` is a sudden quench from `m_z_int` (needs `has_m_z_int`).
 */
typedef struct TaspParams {
  double t0;
  double t_so;
  double m_z;
  double g;
  /**
   * +1 for `g/t`, -1 for `-g/t`.
   */
  int32_t protocol_sign;
  enum TaspVariant variant;
  int32_t t_int_zero_plus;
  double t_int;
  double t_f;
  int32_t has_m_z_int;
  double m_z_int;
} TaspParams;

typedef struct TaspRingInfo {
  enum TaspRingKind kind;
  int32_t has_winding;
  int32_t winding;
  int32_t has_enclosed_charge;
  int32_t enclosed_charge;
  int32_t contractible;
  size_t point_count;
  double mean_inplane;
  double centroid_kx;
  double centroid_ky;
} TaspRingInfo;

typedef struct TaspProcessInfo {
  enum TaspProcessLabel label;
  int32_t has_initial;
  int32_t initial_invariant;
  int32_t has_final;
  int32_t final_invariant;
  int32_t ambiguous;
} TaspProcessInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call into the library from the same thread.
 */
const char *tasp_last_error_message(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *tasp_version(void);

/**
 * Checks a parameter set.
 *
 * # Safety
 * `params` must be null or point to a valid `TaspParams`.
 */
enum TaspStatus tasp_params_validate(const struct TaspParams *params);

/**
 * TASP `(sx, sy, sz)` at one momentum.
 *
 * # Safety
 * `params` must point to a valid `TaspParams`; `out` to three writable doubles.
 */
enum TaspStatus tasp_point(const struct TaspParams *params, double kx, double ky, double *out);

/**
 * Computes the TASP on a `grid_n x grid_n` zone grid.
 *
 * # Safety
 * `params` must point to a valid `TaspParams`; `out` to writable storage for
 * a handle, which is set only on success.
 */
enum TaspStatus tasp_grid_new(const struct TaspParams *params,
                              size_t grid_n,
                              struct TaspGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle from `tasp_grid_new` not yet freed.
 */
void tasp_grid_free(struct TaspGrid *grid);

/**
 * Points per axis, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t tasp_grid_size(const struct TaspGrid *grid);

/**
 * TASP at node `(ix, iy)`, i.e. `k = (-pi + ix h, -pi + iy h)` with `h = 2 pi / n`.
 *
 * # Safety
 * `grid` must be a live handle; `out` must point to three writable doubles.
 */
enum TaspStatus tasp_grid_get(const struct TaspGrid *grid, size_t ix, size_t iy, double *out);

/**
 * Extracts and classifies the rings of a grid.
 *
 * # Safety
 * `grid` must be a live handle; `out` writable storage for a handle.
 */
enum TaspStatus tasp_analysis_new(const struct TaspGrid *grid, struct TaspAnalysis **out);

/**
 * # Safety
 * `analysis` must be null or a handle from `tasp_analysis_new` not yet freed.
 */
void tasp_analysis_free(struct TaspAnalysis *analysis);

/**
 * Number of rings, or 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
size_t tasp_analysis_ring_count(const struct TaspAnalysis *analysis);

/**
 * Summary of ring `index`.
 *
 * # Safety
 * `analysis` must be a live handle; `out` must point to a writable `TaspRingInfo`.
 */
enum TaspStatus tasp_analysis_ring(const struct TaspAnalysis *analysis,
                                   size_t index,
                                   struct TaspRingInfo *out);

/**
 * Copies up to `capacity` points of ring `index` as `(kx, ky)` pairs into
 * `xy` (length `2 * capacity`) and stores the number copied in `written`.
 *
 * # Safety
 * `analysis` must be a live handle; `xy` must hold `2 * capacity` doubles;
 * `written` must be writable.
 */
enum TaspStatus tasp_analysis_ring_points(const struct TaspAnalysis *analysis,
                                          size_t index,
                                          double *xy,
                                          size_t capacity,
                                          size_t *written);

/**
 * Process type read from the rings.
 *
 * # Safety
 * `analysis` must be a live handle; `out` must point to a writable `TaspProcessInfo`.
 */
enum TaspStatus tasp_analysis_process(const struct TaspAnalysis *analysis,
                                      struct TaspProcessInfo *out);

/**
 * Critical spin-orbit strength of the sudden spin-inversion locus.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum TaspStatus tasp_critical_tso(double m_z_int, double m_z_f, double t0, double *out);

/**
 * Lattice Chern number of the lower band of the static model at `m_eff`.
 * Only `t0`, `t_so` and `variant` of `params` are used.
 *
 * # Safety
 * `params` must point to a valid `TaspParams`; `out` to a writable int.
 */
enum TaspStatus tasp_chern_number(const struct TaspParams *params,
                                  double m_eff,
                                  size_t grid_n,
                                  int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TASP_H */
