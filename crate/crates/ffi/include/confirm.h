#ifndef CONFIRM_H
#define CONFIRM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConfirmStatus {
  CONFIRM_STATUS_OK = 0,
  CONFIRM_STATUS_NULL_POINTER = 1,
  CONFIRM_STATUS_INVALID_ARGUMENT = 2,
  CONFIRM_STATUS_OUT_OF_RANGE = 3,
  CONFIRM_STATUS_TOTAL_CONFLICT = 4,
  CONFIRM_STATUS_PARSE_ERROR = 5,
  CONFIRM_STATUS_VALIDATION_ERROR = 6,
  CONFIRM_STATUS_UNKNOWN_HYPOTHESIS = 7,
  CONFIRM_STATUS_DOMAIN_ERROR = 8,
  CONFIRM_STATUS_PANIC = 9,
} ConfirmStatus;

/*
 Opaque parsed rule base.
 */
typedef struct ConfirmRuleBase ConfirmRuleBase;

/*
 Calculus selector: one of the `CONFIRM_CALCULUS_*` constants.
 */
typedef uint32_t ConfirmCalculus;

/*
 Mass function on the frame {H, not H}.
 */
typedef struct ConfirmMass {
  double h;
  double not_h;
  double theta;
} ConfirmMass;

/*
 Result of evaluating one hypothesis. The aggregate includes the prior.
 */
typedef struct ConfirmPosterior {
  double prior;
  double posterior;
  double lambda;
  double cf;
  double belief;
  double logl;
} ConfirmPosterior;

typedef struct ConfirmCheckSummary {
  uint64_t models;
  uint64_t failures;
  uint64_t worst_model;
  double worst_error;
  double tolerance;
} ConfirmCheckSummary;

#define CONFIRM_CALCULUS_LAMBDA 0

#define CONFIRM_CALCULUS_CF 1

#define CONFIRM_CALCULUS_BELIEF 2

#define CONFIRM_CALCULUS_LOGL 3

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or an empty string.
 The pointer stays valid until the next call into this library on the
 same thread.
 */
const char *confirm_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *confirm_version(void);

/*
 Converts `value` from one calculus to another.

 # Safety
 `out` must be null or valid for writing one `double`.
 */
enum ConfirmStatus confirm_convert(ConfirmCalculus from,
                                   double value,
                                   ConfirmCalculus to,
                                   double *out);

/*
 Combines `len` values of one calculus. An empty list yields the identity.

 # Safety
 `values` must point to `len` readable doubles (or be null when `len` is 0)
 and `out` must be valid for writing one `double`.
 */
enum ConfirmStatus confirm_combine(ConfirmCalculus calc,
                                   const double *values,
                                   size_t len,
                                   double *out);

/*
 Dempster's rule on the binary frame.

 # Safety
 `a` and `b` must be valid for reads and `out` valid for writes.
 */
enum ConfirmStatus confirm_dempster_combine(const struct ConfirmMass *a,
                                            const struct ConfirmMass *b,
                                            struct ConfirmMass *out);

/*
 Parses and validates rule-file text. On success `*out` owns a new handle
 that must be released with [`confirm_rulebase_free`]. On failure the
 diagnostics, one `line:column: message` per line, are available from
 [`confirm_last_error`].

 # Safety
 `source` must be a NUL-terminated string and `out` valid for writes.
 */
enum ConfirmStatus confirm_rulebase_parse(const char *source, struct ConfirmRuleBase **out);

/*
 Releases a handle from [`confirm_rulebase_parse`]. Null is ignored.

 # Safety
 `rb` must be null or a handle not yet freed.
 */
void confirm_rulebase_free(struct ConfirmRuleBase *rb);

/*
 Canonical text of a rule base. The returned string must be released with
 [`confirm_string_free`]; null is returned for a null handle.

 # Safety
 `rb` must be null or a live handle.
 */
char *confirm_rulebase_to_source(const struct ConfirmRuleBase *rb);

/*
 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void confirm_string_free(char *s);

/*
 Posterior of `hypothesis` given the observed evidence in `rb`.

 # Safety
 `rb` must be a live handle, `hypothesis` a NUL-terminated string and
 `out` valid for writes.
 */
enum ConfirmStatus confirm_rulebase_evaluate(const struct ConfirmRuleBase *rb,
                                             const char *hypothesis,
                                             struct ConfirmPosterior *out);

/*
 Runs the enumeration cross-check on `models` seeded random models with
 up to `max_channels` channels each (1 to 16).

 # Safety
 `out` must be valid for writes.
 */
enum ConfirmStatus confirm_check(uint64_t seed,
                                 uint64_t models,
                                 uint32_t max_channels,
                                 struct ConfirmCheckSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFIRM_H */
