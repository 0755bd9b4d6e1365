/*
 * Opaque handles are created by *_new functions and released by the
 * matching *_free function. Strings returned through `char **out` are
 * owned by the caller and must be released with projconn_string_free.
 */

#ifndef PROJCONN_H
#define PROJCONN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ProjconnStatus {
  PROJCONN_STATUS_OK = 0,
  PROJCONN_STATUS_NULL_POINTER = 1,
  PROJCONN_STATUS_INVALID_UTF8 = 2,
  PROJCONN_STATUS_PARSE = 3,
  PROJCONN_STATUS_INVALID_ARGUMENT = 4,
  PROJCONN_STATUS_UNKNOWN_EXAMPLE = 5,
  PROJCONN_STATUS_MATH = 6,
  PROJCONN_STATUS_PANIC = 7,
} ProjconnStatus;

/**
 * A catalog example at fixed parameters.
 */
typedef struct ProjconnExample ProjconnExample;

/**
 * Quotient ring `Q(i)[vars]/(f)`.
 */
typedef struct ProjconnRing ProjconnRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *projconn_last_error(void);

/**
 * Library version, static storage.
 */
const char *projconn_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void projconn_string_free(char *s);

/**
 * Creates the ring with modulus `modulus` over comma-separated `vars`
 * (`"x,y,z"` when `vars` is null).
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum ProjconnStatus projconn_ring_new(const char *modulus,
                                      const char *vars,
                                      struct ProjconnRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`projconn_ring_new`].
 */
void projconn_ring_free(struct ProjconnRing *ring);

/**
 * Canonical normal form of `expression` in the ring.
 *
 * # Safety
 * `ring` must be a live handle; `expression` NUL-terminated; `out` writable.
 */
enum ProjconnStatus projconn_ring_normal_form(const struct ProjconnRing *ring,
                                              const char *expression,
                                              char **out);

/**
 * Sets `*out` to whether `expression` is zero in the ring.
 *
 * # Safety
 * As for [`projconn_ring_normal_form`].
 */
enum ProjconnStatus projconn_ring_is_zero(const struct ProjconnRing *ring,
                                          const char *expression,
                                          bool *out);

/**
 * Builds `example` (`"ellipsoid"` or `"sphere"`) at `(p, q, r)`.
 *
 * # Safety
 * `example` must be NUL-terminated; `out` writable.
 */
enum ProjconnStatus projconn_example_new(const char *example,
                                         uint32_t p,
                                         uint32_t q,
                                         uint32_t r,
                                         struct ProjconnExample **out);

/**
 * # Safety
 * `example` must be null or a handle from [`projconn_example_new`].
 */
void projconn_example_free(struct ProjconnExample *example);

/**
 * Runs the verification suite and returns the JSON report. `*passed` is
 * set to whether no check failed; it may be null.
 *
 * # Safety
 * `example` must be a live handle; `out` writable; `passed` null or writable.
 */
enum ProjconnStatus projconn_example_verify_json(const struct ProjconnExample *example,
                                                 uint32_t parallelism,
                                                 char **out,
                                                 bool *passed);

/**
 * Curvature report for derivations `i` and `j` (0-based, below 3) as JSON.
 * The sphere uses the presentation with idempotent `(P + I)/2`.
 *
 * # Safety
 * `example` must be a live handle; `out` writable.
 */
enum ProjconnStatus projconn_example_curvature_json(const struct ProjconnExample *example,
                                                    size_t i,
                                                    size_t j,
                                                    char **out);

/**
 * Ambient rank of the example's module presentation.
 *
 * # Safety
 * `example` must be a live handle; `out` writable.
 */
enum ProjconnStatus projconn_example_ambient_rank(const struct ProjconnExample *example,
                                                  size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROJCONN_H */
