#ifndef MULTHOPF_H
#define MULTHOPF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. One per library error kind, plus the boundary failures.
 */
typedef enum MhStatus {
  MH_STATUS_OK = 0,
  MH_STATUS_NULL_POINTER = 1,
  MH_STATUS_INVALID_UTF8 = 2,
  MH_STATUS_PANIC = 3,
  MH_STATUS_DOMAIN_MISMATCH = 10,
  MH_STATUS_NO_SOLUTION = 11,
  MH_STATUS_POSITION_OUT_OF_RANGE = 12,
  MH_STATUS_UNCOVERED_LEG = 13,
  MH_STATUS_NOT_FOUND = 14,
  MH_STATUS_INFINITE_DIMENSIONAL_NO_ORACLE = 15,
  MH_STATUS_UNDECIDABLE = 16,
  MH_STATUS_SINGULAR = 17,
  MH_STATUS_INFINITE_DIMENSIONAL = 18,
  MH_STATUS_NOT_UNITAL_HOMOMORPHISM = 19,
  MH_STATUS_NOT_HOPF = 20,
  MH_STATUS_UNVERIFIED_ACTION = 21,
  MH_STATUS_COMMUTATION_FAILED = 22,
  MH_STATUS_NOT_INNER = 23,
  MH_STATUS_COCYCLE_INVALID = 24,
  MH_STATUS_NOT_FINITE_DIMENSIONAL = 25,
  MH_STATUS_ALGEBRA_MISMATCH = 26,
  MH_STATUS_COACTION_INVALID = 27,
  MH_STATUS_UNKNOWN_INSTANCE = 28,
  MH_STATUS_MALFORMED_SPEC = 29,
  MH_STATUS_IO = 30,
} MhStatus;

/**
 * Opaque handle to a regular multiplier Hopf algebra.
 */
typedef struct MhInstance MhInstance;

/**
 * Opaque handle to a verification report.
 */
typedef struct MhReport MhReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *mh_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *mh_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mh_string_free(char *s);

/**
 * Resolves an instance id such as `C[S3]` or `dual(K(Z3))`, or a path to
 * an instance JSON file.
 *
 * # Safety
 * `id` must be a nul-terminated string; `out` must be writable.
 */
enum MhStatus mh_instance_new(const char *id, struct MhInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `h` must come from [`mh_instance_new`] and not have been freed.
 */
void mh_instance_free(struct MhInstance *h);

/**
 * Canonical id of the instance; free with [`mh_string_free`].
 *
 * # Safety
 * `h` must be a live instance handle.
 */
char *mh_instance_id(const struct MhInstance *h);

/**
 * Writes the dimension to `dim` and returns `Ok` for finite instances;
 * returns `InfiniteDimensional` otherwise.
 *
 * # Safety
 * `h` must be a live instance handle; `dim` must be writable.
 */
enum MhStatus mh_instance_dim(const struct MhInstance *h, size_t *dim);

/**
 * Checks the multiplier Hopf algebra axioms on the basis, or on the window
 * of the given radius for countable instances.
 *
 * # Safety
 * `h` must be a live instance handle; `out` must be writable.
 */
enum MhStatus mh_instance_verify_axioms(const struct MhInstance *h,
                                        int64_t radius,
                                        struct MhReport **out);

/**
 * Runs a named suite (`axioms`, `integrals`, `actions`, `smash`, `pairing`,
 * `duality` or `all`). `instance` and `group` narrow the selection and may
 * be null; `radius` is the window for countable instances.
 *
 * # Safety
 * String arguments must be nul-terminated or null where allowed; `out`
 * must be writable.
 */
enum MhStatus mh_run_suite(const char *suite,
                           const char *instance,
                           const char *group,
                           int64_t radius,
                           uint64_t seed,
                           struct MhReport **out);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void mh_report_free(struct MhReport *r);

/**
 * Number of entries; 0 for null.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
size_t mh_report_len(const struct MhReport *r);

/**
 * Number of failing entries; 0 for null.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
size_t mh_report_failures(const struct MhReport *r);

/**
 * True when no entry failed.
 *
 * # Safety
 * `r` must be a live report handle.
 */
bool mh_report_all_passed(const struct MhReport *r);

/**
 * The report as JSON lines; free with [`mh_string_free`].
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *mh_report_json(const struct MhReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTHOPF_H */
