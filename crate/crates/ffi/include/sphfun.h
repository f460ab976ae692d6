#ifndef SPHFUN_H
#define SPHFUN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SphfunStatus {
  SPHFUN_STATUS_OK = 0,
  SPHFUN_STATUS_NULL_POINTER = 1,
  SPHFUN_STATUS_INVALID_UTF8 = 2,
  SPHFUN_STATUS_INVALID_ARGUMENT = 3,
  SPHFUN_STATUS_COMPUTATION_FAILED = 4,
  // The computation finished but one of its internal checks did not hold.
  SPHFUN_STATUS_CHECK_FAILED = 5,
  SPHFUN_STATUS_PANIC = 6,
} SphfunStatus;

// Opaque handle.
typedef struct SphfunContext SphfunContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a context for SU(n+m) and the K-type `mu` (`"wedge:s,b"` or `"rankone:a,b"`).
//
// # Safety
// `mu` must be a valid NUL-terminated string and `out` a valid pointer.
enum SphfunStatus sphfun_context_new(uintptr_t n,
                                     uintptr_t m,
                                     const char *mu,
                                     uint32_t degree_bound,
                                     struct SphfunContext **out);

// # Safety
// `ctx` must come from [`sphfun_context_new`] and not be used afterwards. Null is ignored.
void sphfun_context_free(struct SphfunContext *ctx);

// Labels, weights and Casimir eigenvalues up to the context's degree bound.
//
// # Safety
// `ctx` must be a live context and `out` a valid pointer.
enum SphfunStatus sphfun_spectrum_json(const struct SphfunContext *ctx, char **out);

// Spherical functions. `label` is `"<bottom index>:<d_1,..,d_n>"`, or null for
// every label within the degree bound.
//
// # Safety
// `ctx` must be a live context, `label` null or a valid string, `out` a valid pointer.
enum SphfunStatus sphfun_spherical_json(const struct SphfunContext *ctx,
                                        const char *label,
                                        char **out);

// Gram matrix of the spherical functions, optionally with quadrature values.
//
// # Safety
// `ctx` must be a live context and `out` a valid pointer.
enum SphfunStatus sphfun_orthogonality_json(const struct SphfunContext *ctx,
                                            bool with_float,
                                            char **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void sphfun_string_free(char *s);

// Message for the last failure on this thread, or null. Valid until the next call.
const char *sphfun_last_error(void);

const char *sphfun_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHFUN_H */
