#include "bkit/reciprocal.hpp"

#include <cmath>
#include <numbers>

#include "bkit/metric_ops.hpp"

namespace bkit {

Mat reciprocal_basis(const Mat& a) {
    if (std::abs(a.det()) < 1e-12)
        throw error(errc::singular_basis, "basis matrix is singular");
    return a.inverse().transposed();
}

ReciprocalPair reciprocal_geometry_2d(const BasisGeometry& g) {
    validate_geometry(g);
    if (g.n != 2) throw error(errc::dimension_mismatch, "expected a 2D geometry");
    const double s = std::sin(g.angles[0]);
    ReciprocalPair out;
    out.primal = g;
    out.dual.n = 2;
    out.dual.lengths = {1.0 / (g.lengths[0] * s), 1.0 / (g.lengths[1] * s), 0.0};
    out.dual.angles[0] = std::numbers::pi - g.angles[0];  // cos(beta12) = -cos(alpha12)
    out.gamma_diag = {s, s, 0.0};
    return out;
}

ReciprocalPair reciprocal_geometry_3d(const BasisGeometry& g) {
    validate_geometry(g);
    if (g.n != 3) throw error(errc::dimension_mismatch, "expected a 3D geometry");
    const DeltaOmega d = delta_omega(g.angles);
    const double sqrt_delta = std::sqrt(d.delta);
    // opposite angle per axis: 1 <-> a23, 2 <-> a13, 3 <-> a12
    const std::array<double, 3> opposite = {g.angles[2], g.angles[1], g.angles[0]};
    ReciprocalPair out;
    out.primal = g;
    out.dual.n = 3;
    for (int i = 0; i < 3; ++i) {
        const double s = std::sin(opposite[i]);
        if (!(s > 1e-12)) throw error(errc::degenerate_alpha, "sin(alpha_jk) vanishes");
        out.dual.lengths[i] = s / (g.lengths[i] * sqrt_delta);
        out.gamma_diag[i] = sqrt_delta / s;
    }
    const double c12 = std::cos(g.angles[0]);
    const double c13 = std::cos(g.angles[1]);
    const double c23 = std::cos(g.angles[2]);
    const double s12 = std::sin(g.angles[0]);
    const double s13 = std::sin(g.angles[1]);
    const double s23 = std::sin(g.angles[2]);
    out.dual.set_angle(1, 2, std::acos(clamp_cosine((c13 * c23 - c12) / (s13 * s23))));
    out.dual.set_angle(1, 3, std::acos(clamp_cosine((c12 * c23 - c13) / (s12 * s23))));
    out.dual.set_angle(2, 3, std::acos(clamp_cosine((c12 * c13 - c23) / (s12 * s13))));
    return out;
}

}  // namespace bkit
