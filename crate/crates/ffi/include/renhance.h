#ifndef RENHANCE_H
#define RENHANCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. The first four match the command-line exit codes.
 */
typedef enum RenhanceStatus {
  RENHANCE_STATUS_OK = 0,
  /**
   * A mathematical negative: not enhanceable, an axiom fails.
   */
  RENHANCE_STATUS_NEGATIVE = 1,
  /**
   * Malformed input.
   */
  RENHANCE_STATUS_INPUT = 2,
  /**
   * A resource cap was hit.
   */
  RENHANCE_STATUS_RESOURCE_CAP = 3,
  /**
   * A required pointer argument was null.
   */
  RENHANCE_STATUS_NULL_POINTER = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  RENHANCE_STATUS_PANIC = 5,
} RenhanceStatus;

/**
 * An R-matrix file: `R` or `S`, with optional `mu`, `alpha` and `beta`.
 */
typedef struct RenhanceMatrix RenhanceMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a matrix file from JSON text.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum RenhanceStatus renhance_matrix_from_json(const char *json, struct RenhanceMatrix **out);

/**
 * Instantiates catalog fixture `id` exactly. `bindings` is null or a list such as
 * `"p=2,q=1/3"`; unbound parameters stay symbolic.
 *
 * # Safety
 * `id` must be a valid C string, `bindings` null or a valid C string, `out` valid.
 */
enum RenhanceStatus renhance_matrix_from_catalog(const char *id,
                                                 const char *bindings,
                                                 struct RenhanceMatrix **out);

/**
 * Serializes a matrix to JSON. Free the result with [`renhance_string_free`].
 *
 * # Safety
 * `h` must come from this library and `out` must be valid.
 */
enum RenhanceStatus renhance_matrix_to_json(const struct RenhanceMatrix *h, char **out);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 * `h` must be null or come from this library and not be freed twice.
 */
void renhance_matrix_free(struct RenhanceMatrix *h);

/**
 * Checks the matrix as an R-matrix and writes the enhancement verdict. Returns
 * `Ok` when the verdict is positive and the Yang-Baxter equation holds, else
 * `Negative` with the verdict still written.
 *
 * # Safety
 * `h` must come from this library and `verdict` must be valid.
 */
enum RenhanceStatus renhance_check(const struct RenhanceMatrix *h, char **verdict);

/**
 * Enhances an R-matrix. Writes the pair `(αPR, α⁻¹U)`, or the quadruple
 * `(PR, U, α⁻¹, α)` when `quadruple` is nonzero, as a new handle.
 *
 * # Safety
 * `h` must come from this library and `out` must be valid.
 */
enum RenhanceStatus renhance_enhance(const struct RenhanceMatrix *h,
                                     int32_t quadruple,
                                     struct RenhanceMatrix **out);

/**
 * Verifies an enhanced pair, or a quadruple when `alpha` or `beta` is present.
 * Returns `Ok` when every axiom holds and `Negative` otherwise, with the axiom
 * report as the last error.
 *
 * # Safety
 * `h` must come from this library.
 */
enum RenhanceStatus renhance_verify(const struct RenhanceMatrix *h);

/**
 * Evaluates the invariant of the closure of `braid` (e.g. `"strands=2 s1 s1 s1"`).
 * A handle without `mu` is enhanced first. `max_strands` of zero keeps the
 * default cap. Free `value` with [`renhance_string_free`].
 *
 * # Safety
 * `h` must come from this library, `braid` a valid C string, `value` valid.
 */
enum RenhanceStatus renhance_invariant(const struct RenhanceMatrix *h,
                                       const char *braid,
                                       size_t max_strands,
                                       char **value);

/**
 * The message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread; do not free it.
 */
const char *renhance_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or come from this library and not be freed twice.
 */
void renhance_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RENHANCE_H */
