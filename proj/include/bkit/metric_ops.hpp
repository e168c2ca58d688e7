#pragma once

#include <array>
#include <optional>

#include "bkit/types.hpp"

namespace bkit {

// G_ii = |a_i|^2, G_ij = |a_i||a_j| cos(alpha_ij)
Mat build_metric(const BasisGeometry& g);

// G = A^T A
Mat gram_from_basis(const Mat& a);

// Q = A^T A*
Mat mixed_from_bases(const Mat& a, const Mat& astar);

// Returns B with B^T B = G, B upper-triangular with positive diagonal.
// Columns of B are basis vectors realizing G on the orthonormal frame.
Mat cholesky_factor(const Mat& g);

// G* = Q^T G^-1 Q
Mat dual_metric(const Mat& g, const Mat& q);

// G = Q G*^-1 Q^T
Mat primal_metric(const Mat& gstar, const Mat& q);

// Matrices available for a coordinate transform; any one group suffices.
struct TransformContext {
    std::optional<Mat> basis;         // A
    std::optional<Mat> dual_basis;    // A*
    std::optional<Mat> metric;        // G
    std::optional<Mat> dual_metric_;  // G*
    std::optional<Mat> mixed;         // Q
};

// Re-expresses x on the other basis: primal -> dual uses x* = A*^-1 A x,
// x* = Q^-1 G x, or x* = G*^-1 Q^T x depending on which matrices the
// context supplies; dual -> primal inverts the same route.
CoordinateVector transform_coords(const CoordinateVector& x, const TransformContext& ctx);

// The four equal quadratic forms of |r|^2:
// x.G.x, x*.G*.x*, x.Q.x*, x*.Q^T.x
std::array<double, 4> quadratic_norm(const std::vector<double>& x,
                                     const std::vector<double>& xstar, const Mat& g,
                                     const Mat& gstar, const Mat& q);

// Delta and Omega_1..3 from the three 3D angles (order a12, a13, a23).
DeltaOmega delta_omega(const std::array<double, 3>& angles);

// n=3: |a1||a2||a3| sqrt(Delta); n=2: |a1||a2| sin(alpha_12)
double cell_volume(const BasisGeometry& g);

}  // namespace bkit
