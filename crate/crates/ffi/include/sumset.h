#ifndef SUMSET_H
#define SUMSET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum SumsetStatus {
  SUMSET_STATUS_OK = 0,
  SUMSET_STATUS_NULL_POINTER = 1,
  SUMSET_STATUS_INVALID_ARGUMENT = 2,
  SUMSET_STATUS_INVALID_SET = 3,
  SUMSET_STATUS_INVALID_FOLD = 4,
  SUMSET_STATUS_OVERFLOW = 5,
  SUMSET_STATUS_DOMAIN_VIOLATION = 6,
  SUMSET_STATUS_NOT_APPLICABLE = 7,
  SUMSET_STATUS_THEOREM_VIOLATION = 8,
  SUMSET_STATUS_ENGINE_MISMATCH = 9,
  SUMSET_STATUS_BUFFER_TOO_SMALL = 10,
  SUMSET_STATUS_INTERNAL = 11,
} SumsetStatus;

typedef enum SumsetKindCode {
  SUMSET_KIND_CODE_UNRESTRICTED = 0,
  SUMSET_KIND_CODE_RESTRICTED = 1,
  SUMSET_KIND_CODE_SIGNED = 2,
  SUMSET_KIND_CODE_RESTRICTED_SIGNED = 3,
} SumsetKindCode;

typedef enum SumsetEngineCode {
  SUMSET_ENGINE_CODE_LAYERED = 0,
  SUMSET_ENGINE_CODE_NAIVE = 1,
} SumsetEngineCode;

/**
 * Opaque finite integer set.
 */
typedef struct SumsetSet SumsetSet;

/**
 * Opaque sorted sumset values.
 */
typedef struct SumsetValues SumsetValues;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *sumset_last_error(void);

/**
 * Builds a set from `len` values, sorting and dropping duplicates.
 *
 * # Safety
 * `values` must point to `len` readable integers; `out` must be writable.
 */
enum SumsetStatus sumset_set_new(const int64_t *values, size_t len, struct SumsetSet **out);

/**
 * # Safety
 * `set` must be null or a handle from [`sumset_set_new`] not yet freed.
 */
void sumset_set_free(struct SumsetSet *set);

/**
 * Cardinality of `set`, or 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t sumset_set_len(const struct SumsetSet *set);

/**
 * Copies the sorted elements into `buf`. `written` receives the element
 * count even when `cap` is too small.
 *
 * # Safety
 * `set` must be a live handle; `buf` must hold `cap` integers; `written`
 * may be null.
 */
enum SumsetStatus sumset_set_elements(const struct SumsetSet *set,
                                      int64_t *buf,
                                      size_t cap,
                                      size_t *written);

/**
 * Computes the `h`-fold sumset of `kind`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SumsetStatus sumset_compute(const struct SumsetSet *set,
                                 size_t h,
                                 enum SumsetKindCode kind,
                                 enum SumsetEngineCode engine,
                                 struct SumsetValues **out);

/**
 * # Safety
 * `values` must be null or a handle from [`sumset_compute`] not yet freed.
 */
void sumset_values_free(struct SumsetValues *values);

/**
 * Number of distinct sums, or 0 for null.
 *
 * # Safety
 * `values` must be null or a live handle.
 */
size_t sumset_values_len(const struct SumsetValues *values);

/**
 * Copies the sorted sums into `buf`, as [`sumset_set_elements`] does.
 *
 * # Safety
 * `values` must be a live handle; `buf` must hold `cap` integers;
 * `written` may be null.
 */
enum SumsetStatus sumset_values_copy(const struct SumsetValues *values,
                                     int64_t *buf,
                                     size_t cap,
                                     size_t *written);

/**
 * Evaluates the bound named `id` (for example `"T2_1"`) at `k`, `h`.
 *
 * # Safety
 * `id` must be a nul-terminated string; `out` must be writable.
 */
enum SumsetStatus sumset_bound_value(const char *id, size_t k, size_t h, int64_t *out);

/**
 * Bound audit of `set` at `h` as a JSON string; release with
 * [`sumset_string_free`].
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SumsetStatus sumset_audit_json(const struct SumsetSet *set, size_t h, char **out);

/**
 * Extremal classification of `set` at `h` as a JSON string; release with
 * [`sumset_string_free`].
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SumsetStatus sumset_classify_json(const struct SumsetSet *set, size_t h, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void sumset_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUMSET_H */
