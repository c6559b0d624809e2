#ifndef CORRKIT_H
#define CORRKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CorrkitStatus {
  CORRKIT_STATUS_OK = 0,
  CORRKIT_STATUS_NULL_POINTER = 1,
  CORRKIT_STATUS_INVALID_ARGUMENT = 2,
  CORRKIT_STATUS_SHORT_SAMPLE = 3,
  CORRKIT_STATUS_NON_FINITE = 4,
  CORRKIT_STATUS_DEGENERATE_VARIANCE = 5,
  CORRKIT_STATUS_TOO_FEW_POINTS = 6,
  CORRKIT_STATUS_ALL_TIED = 7,
  CORRKIT_STATUS_CONSTANT_X = 8,
  CORRKIT_STATUS_INVALID_PLAN = 9,
  CORRKIT_STATUS_INTERNAL = 10,
} CorrkitStatus;

/**
 * Opaque paired sample.
 */
typedef struct CorrkitSample CorrkitSample;

/**
 * Result of `corrkit_fit_g`.
 */
typedef struct CorrkitGFit {
  double c;
  double y_median;
  double omega;
  /**
   * 0 for the main diagonal (C1+ with C2-), 1 for the anti diagonal.
   */
  int32_t anti_diagonal;
  size_t c1_plus;
  size_t c1_minus;
  size_t c2_plus;
  size_t c2_minus;
  size_t removed_ties;
} CorrkitGFit;

/**
 * Result of `corrkit_estimate_g`.
 */
typedef struct CorrkitSplitEstimate {
  double omega_mean;
  double omega_stddev;
  size_t degenerate;
} CorrkitSplitEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies `n` values from `xs` and `ys` into a new sample.
 *
 * # Safety
 * `xs` and `ys` must point to `n` readable doubles; `out` must be writable.
 */
enum CorrkitStatus corrkit_sample_new(const double *xs,
                                      const double *ys,
                                      size_t n,
                                      struct CorrkitSample **out);

/**
 * Releases a sample. Null is a no-op.
 *
 * # Safety
 * `sample` must come from `corrkit_sample_new` and not be freed twice.
 */
void corrkit_sample_free(struct CorrkitSample *sample);

/**
 * # Safety
 * `sample` must be a live handle or null.
 */
size_t corrkit_sample_len(const struct CorrkitSample *sample);

/**
 * # Safety
 * `sample` must be a live handle or null; `out` writable or null.
 */
enum CorrkitStatus corrkit_pearson(const struct CorrkitSample *sample, double *out);

/**
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_spearman(const struct CorrkitSample *sample, double *out);

/**
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_kendall(const struct CorrkitSample *sample, double *out);

/**
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_fechner(const struct CorrkitSample *sample, double *out);

/**
 * `bins = 0` selects the default of 10.
 *
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_ncc(const struct CorrkitSample *sample, size_t bins, double *out);

/**
 * Full-data g-correlation fit.
 *
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_fit_g(const struct CorrkitSample *sample, struct CorrkitGFit *out);

/**
 * Repeated train/evaluation split estimate.
 *
 * # Safety
 * As `corrkit_pearson`.
 */
enum CorrkitStatus corrkit_estimate_g(const struct CorrkitSample *sample,
                                      size_t train_size,
                                      size_t eval_size,
                                      size_t iterations,
                                      uint64_t seed,
                                      struct CorrkitSplitEstimate *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *corrkit_status_message(enum CorrkitStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORRKIT_H */
