/* C interface to the trc error-exponent library. */

#ifndef TRC_H
#define TRC_H

/* Generated by cbindgen from trc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Success.
 */
#define TRC_OK 0

/*
 Invalid argument (bad dimensions, non-stochastic input, null pointer).
 */
#define TRC_ERR_INVALID 2

/*
 Work budget exceeded.
 */
#define TRC_ERR_BUDGET 3

/*
 Internal failure.
 */
#define TRC_ERR_INTERNAL 4

/*
 Exponent curves selectable through [`trc_exponent`].
 */
typedef enum TrcExponentKind {
  /*
   Classical random-coding exponent.
   */
  TRC_EXPONENT_RANDOM_CODING = 0,
  /*
   Exponent of the typical random code.
   */
  TRC_EXPONENT_TYPICAL = 1,
  /*
   Likelihood-decoding particularization of the typical-code exponent.
   */
  TRC_EXPONENT_TYPICAL_ML = 2,
  /*
   Expurgated exponent.
   */
  TRC_EXPONENT_EXPURGATED = 3,
  /*
   Companion curve with the unclipped score gap.
   */
  TRC_EXPONENT_TILDE = 4,
  /*
   Phase-transition threshold of the lower tail.
   */
  TRC_EXPONENT_E0_MIN = 5,
} TrcExponentKind;

/*
 Tail rate functions selectable through [`trc_tail`].
 */
typedef enum TrcTailKind {
  /*
   Lower tail, upper bound.
   */
  TRC_TAIL_LOWER_UB = 0,
  /*
   Lower tail, lower bound.
   */
  TRC_TAIL_LOWER_LB = 1,
  /*
   Upper tail, upper bound (double-exponential rate).
   */
  TRC_TAIL_UPPER_UB = 2,
  /*
   Upper tail, lower bound (double-exponential rate).
   */
  TRC_TAIL_UPPER_LB = 3,
} TrcTailKind;

/*
 Opaque model handle.
 */
typedef struct TrcModel TrcModel;

/*
 Summary statistics of a seeded ensemble simulation.
 */
typedef struct TrcSimSummary {
  /*
   Median of the per-codebook error exponents (finite trials).
   */
  double median_exponent;
  /*
   Interquartile range of the finite exponents.
   */
  double iqr;
  /*
   Smallest and largest finite exponents.
   */
  double min_exponent;
  double max_exponent;
  /*
   Trials with zero error probability (exponent +inf), excluded above.
   */
  unsigned int infinite_count;
} TrcSimSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates a model with likelihood decoding and default grid parameters
 when `resolution` is 0. `channel` is row-major `num_inputs x
 num_outputs`. Returns null on invalid input.

 # Safety
 `channel` must point to `num_inputs * num_outputs` doubles and `qx` to
 `num_inputs` doubles.
 */
struct TrcModel *trc_model_new(const double *channel,
                               unsigned int num_inputs,
                               unsigned int num_outputs,
                               const double *qx,
                               unsigned int resolution,
                               unsigned int depth,
                               double shrink);

/*
 Creates a model with an explicit metric coefficient matrix (row-major,
 same shape as the channel; `-INFINITY` entries mark forbidden cells).

 # Safety
 Pointer contracts as in [`trc_model_new`], plus `metric` must point to
 `num_inputs * num_outputs` doubles.
 */
struct TrcModel *trc_model_new_with_metric(const double *channel,
                                           unsigned int num_inputs,
                                           unsigned int num_outputs,
                                           const double *qx,
                                           const double *metric,
                                           unsigned int resolution,
                                           unsigned int depth,
                                           double shrink);

/*
 Frees a model handle. Null is a no-op.

 # Safety
 `model` must have come from a `trc_model_new*` call and not been freed.
 */
void trc_model_free(struct TrcModel *model);

/*
 Evaluates one exponent curve at `rate` (nats). Writes the value (IEEE
 infinity for super-exponential) to `out`.

 # Safety
 `model` must be a live handle; `out` must point to a double.
 */
int trc_exponent(const struct TrcModel *model, enum TrcExponentKind kind, double rate, double *out);

/*
 Evaluates one tail rate function at `(rate, e0)`.

 # Safety
 `model` must be a live handle; `out` must point to a double.
 */
int trc_tail(const struct TrcModel *model,
             enum TrcTailKind kind,
             double rate,
             double e0,
             double *out);

/*
 Runs `trials` seeded codebook draws at blocklength `n` with `codewords`
 messages, computing each exact error probability, and fills `out` with
 summary statistics of the per-codebook exponent.

 # Safety
 `model` must be a live handle; `out` must point to a `TrcSimSummary`.
 */
int trc_simulate_summary(const struct TrcModel *model,
                         unsigned int n,
                         unsigned int codewords,
                         unsigned int trials,
                         uint64_t seed,
                         struct TrcSimSummary *out);

/*
 Library version as a static C string.
 */
const char *trc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRC_H */
