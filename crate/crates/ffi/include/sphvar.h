#ifndef SPHVAR_H
#define SPHVAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SphvarCheck {
  SPHVAR_CHECK_COLORED_CONE = 0,
  SPHVAR_CHECK_AFFINE = 1,
  SPHVAR_CHECK_WAVEFRONT = 2,
  SPHVAR_CHECK_INDUCED = 3,
  SPHVAR_CHECK_NEGLIGIBLE = 4,
} SphvarCheck;

typedef enum SphvarStatus {
  SPHVAR_STATUS_OK = 0,
  SPHVAR_STATUS_NULL_POINTER = 1,
  SPHVAR_STATUS_INVALID_UTF8 = 2,
  SPHVAR_STATUS_INPUT = 3,
  /**
   * A mathematical precondition failed (not a character, not quasi-affine, ...).
   */
  SPHVAR_STATUS_MATH = 4,
  SPHVAR_STATUS_UNSUPPORTED_RANK = 5,
  SPHVAR_STATUS_PRECISION = 6,
  SPHVAR_STATUS_PANIC = 7,
} SphvarStatus;

/**
 * Opaque spherical datum with the document it came from.
 */
typedef struct SphvarDatum SphvarDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *sphvar_last_error(void);

/**
 * Parse a JSON input document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SphvarStatus sphvar_datum_from_json(const char *json, struct SphvarDatum **out);

/**
 * Load a catalog fixture by key.
 *
 * # Safety
 * `key` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SphvarStatus sphvar_datum_from_catalog(const char *key, struct SphvarDatum **out);

/**
 * # Safety
 * `d` must come from this library and not be used afterwards. Null is a no-op.
 */
void sphvar_datum_free(struct SphvarDatum *d);

/**
 * Rank of the weight lattice.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SphvarStatus sphvar_datum_rank(const struct SphvarDatum *d, size_t *out);

/**
 * Run a combinatorial check; `*out` is the verdict. A negligibility check
 * whose hypothesis fails reports `Math`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SphvarStatus sphvar_check(const struct SphvarDatum *d, enum SphvarCheck which, bool *out);

/**
 * Basic-function table up to `height` as a JSON string with symbolic `q`.
 * `kappa` is the grading sign, 1 or -1.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SphvarStatus sphvar_basic_function_json(const struct SphvarDatum *d,
                                             uint32_t height,
                                             int32_t kappa,
                                             char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is a no-op.
 */
void sphvar_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHVAR_H */
