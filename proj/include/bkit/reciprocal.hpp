#pragma once

#include "bkit/types.hpp"

namespace bkit {

// A geometry together with its reciprocal: a_i . a*_j = delta_ij.
struct ReciprocalPair {
    BasisGeometry primal;
    BasisGeometry dual;
    std::array<double, 3> gamma_diag{};  // cos(gamma_ii)
};

// A* = (A^-1)^T
Mat reciprocal_basis(const Mat& a);

// Closed-form 2D reciprocal lengths/angles:
// |a*_i| = 1/(|a_i| sin(a12)), beta_12 = pi - alpha_12, cos(gamma_ii) = sin(a12)
ReciprocalPair reciprocal_geometry_2d(const BasisGeometry& g);

// Closed-form 3D reciprocal lengths/angles:
// |a*_i| = sin(alpha_jk)/(|a_i| sqrt(Delta)) with (j,k) the pair opposite i,
// cos(gamma_ii) = sqrt(Delta)/sin(alpha_jk), beta from the quotient formulas.
ReciprocalPair reciprocal_geometry_3d(const BasisGeometry& g);

}  // namespace bkit
