#ifndef RG_LIE_H
#define RG_LIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call. Zero means success.
typedef enum RgStatus {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_INVALID_UTF8 = 2,
  RG_STATUS_CONFIG = 3,
  RG_STATUS_PARSE = 4,
  RG_STATUS_DOMAIN = 5,
  RG_STATUS_TYPE_MISMATCH = 6,
  RG_STATUS_BOUND = 7,
  RG_STATUS_VALIDATION = 8,
  RG_STATUS_UNIFORM = 9,
  RG_STATUS_INTERNAL = 10,
  RG_STATUS_IO = 11,
  RG_STATUS_PANIC = 12,
} RgStatus;

// A built graded model.
typedef struct RgModel RgModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next call on the same thread.
const char *rg_last_error_message(void);

// Library version as a static string.
const char *rg_version(void);

// Number of nonzero roots of the family's root system of rank `n`.
//
// # Safety
// `family` must be a valid C string and `out` a valid pointer.
enum RgStatus rg_root_count(const char *family, size_t n, size_t *out);

// Builds the model of `family` at truncation `n` and level `ell` from a
// preset string or quadruple file path, with 𝒦 = {0}. On success `*out`
// holds a handle to release with [`rg_model_free`].
//
// # Safety
// `family` and `source` must be valid C strings and `out` a valid pointer.
enum RgStatus rg_model_build(const char *family,
                             size_t n,
                             size_t ell,
                             const char *source,
                             bool override_bounds,
                             struct RgModel **out);

// Releases a model. Null is ignored.
//
// # Safety
// `m` must come from [`rg_model_build`] and not be used afterwards.
void rg_model_free(struct RgModel *m);

// Total dimension of the model.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum RgStatus rg_model_dim(const struct RgModel *m, size_t *out);

// Dimensions of the 𝒢⊗𝒜, 𝒮⊗ℬ, 𝒱⊗𝒞 and D summands, written to `out[0..4]`.
//
// # Safety
// `m` must be a live handle and `out` must point to four `size_t`.
enum RgStatus rg_model_component_dims(const struct RgModel *m, size_t *out);

// Bracket of basis elements `i` and `j` as JSON `{"label": "coefficient"}`.
//
// # Safety
// `m` must be a live handle and `out_json` a valid pointer.
enum RgStatus rg_model_bracket_json(const struct RgModel *m, size_t i, size_t j, char **out_json);

// Runs the comma-separated `suites` (null for the default suite) and writes
// the JSON report to `*out_json` and the overall verdict to `*all_pass`.
// `samples = 0` selects exhaustive Jacobi.
//
// # Safety
// `m` must be a live handle, `suites` null or a valid C string, and both
// out-pointers valid.
enum RgStatus rg_model_verify(const struct RgModel *m,
                              const char *suites,
                              size_t samples,
                              uint64_t seed,
                              char **out_json,
                              bool *all_pass);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void rg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RG_LIE_H */
