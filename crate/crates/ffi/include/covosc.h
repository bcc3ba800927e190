#ifndef COVOSC_H
#define COVOSC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum CovStatus {
  COV_STATUS_OK = 0,
  COV_STATUS_NULL_POINTER = 1,
  COV_STATUS_INVALID_ARGUMENT = 2,
  COV_STATUS_OUT_OF_RANGE = 3,
  COV_STATUS_NON_CONVERGENCE = 4,
  COV_STATUS_NUMERICAL_FAILURE = 5,
  COV_STATUS_PANIC = 6,
} CovStatus;

/**
 * Opaque truncated Fock expansion.
 */
typedef struct CovFockExpansion CovFockExpansion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *covosc_last_error(void);

/**
 * Unit-norm oscillator eigenfunction φ_n(z).
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_phi(size_t n, double z, double *out);

/**
 * Boosted wave function ψⁿ_η(z, t).
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_psi_boosted(size_t n, double eta, double z, double t, double *out);

/**
 * Fock coefficient c_k of ψⁿ_η.
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_coefficient(size_t n, size_t k, double eta, double *out);

/**
 * Entropy of the reduced state at rapidity `eta`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_entropy(double eta, double *out);

/**
 * Purity Tr ρ² of the reduced state.
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_purity(double eta, double *out);

/**
 * Reduced density kernel ρ(z, z′).
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum CovStatus covosc_reduced_density(double eta, double z, double zp, double *out);

/**
 * Boost along axis 3 as a row-major 4×4 matrix in (x, y, z, t) order.
 *
 * # Safety
 * `out` must be null or point to 16 writable `double`s.
 */
enum CovStatus covosc_boost_matrix(double eta, double *out);

/**
 * Expands ψⁿ_η until `1 − Σ c_k² < tol` and stores a new handle in `out`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
enum CovStatus covosc_expand(size_t n, double eta, double tol, struct CovFockExpansion **out);

/**
 * Number of retained coefficients (truncation index + 1).
 *
 * # Safety
 * `h` must be null or a live handle from [`covosc_expand`].
 */
enum CovStatus covosc_expansion_len(const struct CovFockExpansion *h, size_t *out);

/**
 * Certified tail `1 − Σ c_k²` of the expansion.
 *
 * # Safety
 * `h` must be null or a live handle from [`covosc_expand`].
 */
enum CovStatus covosc_expansion_tail(const struct CovFockExpansion *h, double *out);

/**
 * Coefficient `k` of the expansion.
 *
 * # Safety
 * `h` must be null or a live handle from [`covosc_expand`].
 */
enum CovStatus covosc_expansion_get(const struct CovFockExpansion *h, size_t k, double *out);

/**
 * Truncated series evaluated at (z, t).
 *
 * # Safety
 * `h` must be null or a live handle from [`covosc_expand`].
 */
enum CovStatus covosc_expansion_reconstruct(const struct CovFockExpansion *h,
                                            double z,
                                            double t,
                                            double *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle from [`covosc_expand`] not yet freed.
 */
void covosc_expansion_free(struct CovFockExpansion *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COVOSC_H */
