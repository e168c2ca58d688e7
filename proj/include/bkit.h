/* C interface to the basis-toolkit shared library.
 *
 * Conventions:
 *  - n is the dimension, 2 or 3.
 *  - Square matrices are row-major double arrays of length n*n; column j
 *    holds the coordinates of basis vector j on the orthonormal frame.
 *  - Angles are radians.  Angle arrays are ordered (1,2), (1,3), (2,3);
 *    2D uses only the first slot.
 *  - Every function returns BKIT_OK (0) on success or a nonzero status.
 *    Output buffers are only written on success.
 */

#ifndef BKIT_H
#define BKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BKIT_API __declspec(dllexport)
#else
#define BKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bkit_status {
    BKIT_OK = 0,
    BKIT_ERR_NONPOSITIVE_LENGTH,
    BKIT_ERR_ANGLE_OUT_OF_RANGE,
    BKIT_ERR_NOT_REALIZABLE,
    BKIT_ERR_COSINE_OUT_OF_RANGE,
    BKIT_ERR_SINGULAR_BASIS,
    BKIT_ERR_SINGULAR_MIXED,
    BKIT_ERR_SINGULAR_MATRIX,
    BKIT_ERR_NOT_POSITIVE_DEFINITE,
    BKIT_ERR_DEGENERATE_ALPHA,
    BKIT_ERR_DIMENSION_MISMATCH,
    BKIT_ERR_FRAME_MISMATCH,
    BKIT_ERR_UNRESOLVABLE,
    BKIT_ERR_MISSING_DUAL_DATA,
    BKIT_ERR_GENERATION_EXHAUSTED,
    BKIT_ERR_BAD_ARGUMENT,
    BKIT_ERR_INTERNAL
} bkit_status;

/* short stable name for a status code, e.g. "NotRealizable" */
BKIT_API const char* bkit_status_name(bkit_status status);

/* ---- construction and factorization ---- */

/* lengths[n], angles as above -> metric[n*n] */
BKIT_API bkit_status bkit_build_metric(int n, const double* lengths, const double* angles,
                                       double* metric);

/* metric[n*n] -> lengths[n], angles[n==2 ? 1 : 3] */
BKIT_API bkit_status bkit_geometry_from_metric(int n, const double* metric,
                                               double* lengths, double* angles);

/* basis[n*n] -> gram[n*n] = A^T A */
BKIT_API bkit_status bkit_gram(int n, const double* basis, double* gram);

/* Q = A^T A* */
BKIT_API bkit_status bkit_mixed(int n, const double* basis, const double* dual_basis,
                                double* mixed);

/* factor[n*n] with factor^T factor = metric, upper-triangular */
BKIT_API bkit_status bkit_cholesky(int n, const double* metric, double* factor);

/* cos_gammas[n*n] from mixed matrix and the two length sets */
BKIT_API bkit_status bkit_gammas_from_mixed(int n, const double* mixed,
                                            const double* primal_lengths,
                                            const double* dual_lengths,
                                            double* cos_gammas);

/* ---- dual metric identities ---- */

/* G* = Q^T G^-1 Q */
BKIT_API bkit_status bkit_dual_metric(int n, const double* metric, const double* mixed,
                                      double* dual_metric);

/* G = Q G*^-1 Q^T */
BKIT_API bkit_status bkit_primal_metric(int n, const double* dual_metric,
                                        const double* mixed, double* metric);

/* ---- coordinate transforms and norms ---- */

/* x (primal coords) -> x* (dual coords) via A and A*; to_dual=0 inverts */
BKIT_API bkit_status bkit_transform_via_bases(int n, const double* basis,
                                              const double* dual_basis, int to_dual,
                                              const double* in, double* out);

/* same via (G, Q): x* = Q^-1 G x */
BKIT_API bkit_status bkit_transform_via_metric(int n, const double* metric,
                                               const double* mixed, int to_dual,
                                               const double* in, double* out);

/* same via (G*, Q): x* = G*^-1 Q^T x */
BKIT_API bkit_status bkit_transform_via_dual_metric(int n, const double* dual_metric,
                                                    const double* mixed, int to_dual,
                                                    const double* in, double* out);

/* the four equal quadratic forms of |r|^2, written to forms[4] */
BKIT_API bkit_status bkit_quadratic_norm(int n, const double* x, const double* xstar,
                                         const double* metric, const double* dual_metric,
                                         const double* mixed, double* forms);

/* ---- volumes and 3D angle combinations ---- */

/* angles[3] -> *delta and omega[3] */
BKIT_API bkit_status bkit_delta_omega(const double* angles, double* delta, double* omega);

/* cell volume of the parallelepiped (n=3) or parallelogram (n=2) */
BKIT_API bkit_status bkit_cell_volume(int n, const double* lengths, const double* angles,
                                      double* volume);

/* ---- angle identities ---- */

/* 2D column identity residual; column is 1 or 2 */
BKIT_API bkit_status bkit_residual_2d(double alpha12, const double* cos_gammas,
                                      int column, double* residual);

/* 3D column identity residual; column is 1..3; angles as above */
BKIT_API bkit_status bkit_residual_3d(const double* angles, const double* cos_gammas,
                                      int column, double* residual);

/* cos(beta_12) from alpha12 and the 2x2 gamma cosines */
BKIT_API bkit_status bkit_beta12_2d(double alpha12, const double* cos_gammas,
                                    double* cos_beta);

/* cos(beta_pq) from the 3D angles and the 3x3 gamma cosines */
BKIT_API bkit_status bkit_beta_3d(const double* angles, const double* cos_gammas,
                                  int first, int second, double* cos_beta);

/* G=I specializations */
BKIT_API bkit_status bkit_orthonormal_residual(int n, const double* cos_gammas,
                                               int column, double* residual);
BKIT_API bkit_status bkit_orthonormal_beta(int n, const double* cos_gammas, int first,
                                           int second, double* cos_beta);

/* 2D alpha solver.  branch: 0 generic, 1 degenerate.  candidates[2] and
 * candidate_residuals[2] are filled on the degenerate branch (zeros
 * otherwise); any output pointer except cos_alpha may be NULL. */
BKIT_API bkit_status bkit_solve_alpha_2d(const double* cos_gammas, double tol,
                                         double* cos_alpha, int* branch,
                                         double* denominator, double* candidates,
                                         double* candidate_residuals);

/* ---- reciprocal (Q = I) bases ---- */

/* A* = (A^-1)^T */
BKIT_API bkit_status bkit_reciprocal_basis(int n, const double* basis,
                                           double* dual_basis);

/* closed-form reciprocal geometry; outputs sized like the inputs;
 * cos_gamma_diag[n] receives cos(gamma_ii) */
BKIT_API bkit_status bkit_reciprocal_geometry(int n, const double* lengths,
                                              const double* angles,
                                              double* dual_lengths, double* dual_angles,
                                              double* cos_gamma_diag);

/* ---- verification harness ---- */

typedef struct bkit_report bkit_report; /* opaque */

/* randomized identity sweep; caller owns *out (bkit_report_free) */
BKIT_API bkit_status bkit_verify(int dimension, uint64_t trials, uint64_t seed,
                                 double tolerance, double condition_limit,
                                 bkit_report** out);

/* matrix-level consistency check of a user-supplied (G, G*, Q) triple */
BKIT_API bkit_status bkit_check(int n, const double* metric, const double* dual_metric,
                                const double* mixed, double tolerance,
                                bkit_report** out);

/* 1 if every identity passed, else 0 */
BKIT_API int bkit_report_pass(const bkit_report* report);

/* JSON rendering of the report; free with bkit_string_free */
BKIT_API bkit_status bkit_report_to_json(const bkit_report* report, char** json);

BKIT_API void bkit_report_free(bkit_report* report);
BKIT_API void bkit_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BKIT_H */
