#include "bkit/angle_identities.hpp"

#include <cmath>
#include <numbers>

namespace bkit {

namespace {

constexpr double kDegenerateDenom = 1e-7;

void require_dim(const AngleProblem& p, int n) {
    if (p.n != n) throw error(errc::dimension_mismatch, "angle problem has wrong dimension");
}

void require_column(int column, int n) {
    if (column < 1 || column > n)
        throw error(errc::bad_argument, "column index out of range");
}

double sin2(double angle) {
    const double s = std::sin(angle);
    return s * s;
}

// cosine treating the stored right angle as exact: sin(pi/2 - x) is 0 at
// x == pi/2 (std::cos would give ~6e-17 there) and within ~1 ulp elsewhere
double cos_of(double angle) {
    return std::sin(std::numbers::pi / 2.0 - angle);
}

// residual of the 2D column identity for an explicit cos(alpha12)
double residual_2d_at(double cos_a, const GammaMatrix& gamma, int column) {
    const int c = column - 1;
    const double g1 = gamma.cosines(0, c);
    const double g2 = gamma.cosines(1, c);
    return g1 * g1 + g2 * g2 - 2.0 * cos_a * g1 * g2 - (1.0 - cos_a * cos_a);
}

}  // namespace

double residual_2d(const AngleProblem& p, int column) {
    require_dim(p, 2);
    require_column(column, 2);
    return residual_2d_at(cos_of(p.alpha[0]), p.gamma, column);
}

double beta12_2d(const AngleProblem& p) {
    require_dim(p, 2);
    const double s2 = sin2(p.alpha[0]);
    if (!(s2 > 1e-12))
        throw error(errc::degenerate_alpha, "sin^2(alpha_12) vanishes");
    const double ca = cos_of(p.alpha[0]);
    const Mat& g = p.gamma.cosines;
    const double bracket = g(0, 0) * g(0, 1) + g(1, 0) * g(1, 1) -
                           ca * (g(0, 0) * g(1, 1) + g(0, 1) * g(1, 0));
    return clamp_cosine(bracket / s2);
}

AlphaSolution solve_alpha_2d(const GammaMatrix& gamma, double tol) {
    if (gamma.n != 2)
        throw error(errc::dimension_mismatch, "alpha solver is 2D only");
    const Mat& g = gamma.cosines;
    AlphaSolution out;
    const double num = g(0, 0) * g(0, 0) + g(1, 0) * g(1, 0) - g(0, 1) * g(0, 1) -
                       g(1, 1) * g(1, 1);
    out.denominator = 2.0 * (g(0, 0) * g(1, 0) - g(0, 1) * g(1, 1));
    if (std::abs(out.denominator) > kDegenerateDenom) {
        out.branch = SolveBranch::generic;
        out.cos_alpha = clamp_cosine(num / out.denominator);
        return out;
    }
    // degenerate: both column identities coincide; try cos(g11 +/- g21)
    out.branch = SolveBranch::degenerate;
    const double g11 = std::acos(clamp_cosine(g(0, 0)));
    const double g21 = std::acos(clamp_cosine(g(1, 0)));
    out.candidates = {std::cos(g11 + g21), std::cos(g11 - g21)};
    for (int k = 0; k < 2; ++k) {
        const double r1 = residual_2d_at(out.candidates[k], gamma, 1);
        const double r2 = residual_2d_at(out.candidates[k], gamma, 2);
        out.candidate_residuals[k] = std::max(std::abs(r1), std::abs(r2));
    }
    const int best = out.candidate_residuals[0] <= out.candidate_residuals[1] ? 0 : 1;
    if (!(out.candidate_residuals[best] < tol))
        throw error(errc::unresolvable,
                    "no sign candidate satisfies both column identities");
    out.cos_alpha = out.candidates[best];
    return out;
}

double residual_3d(const AngleProblem& p, int column) {
    require_dim(p, 3);
    require_column(column, 3);
    const DeltaOmega d = [&] {
        const double c12 = cos_of(p.alpha[0]);
        const double c13 = cos_of(p.alpha[1]);
        const double c23 = cos_of(p.alpha[2]);
        DeltaOmega o;
        o.delta = 2.0 * c12 * c13 * c23 - c12 * c12 - c13 * c13 - c23 * c23 + 1.0;
        o.omega = {c12 * c13 - c23, c12 * c23 - c13, c13 * c23 - c12};
        return o;
    }();
    const int c = column - 1;
    const Mat& g = p.gamma.cosines;
    const double g1 = g(0, c), g2 = g(1, c), g3 = g(2, c);
    const double lhs =
        2.0 * (g2 * g3 * d.omega[0] + g1 * g3 * d.omega[1] + g1 * g2 * d.omega[2]) +
        g3 * g3 * sin2(p.alpha[0]) + g2 * g2 * sin2(p.alpha[1]) +
        g1 * g1 * sin2(p.alpha[2]);
    return lhs - d.delta;
}

double beta_3d(const AngleProblem& p, int first, int second) {
    require_dim(p, 3);
    if (first < 1 || second <= first || second > 3)
        throw error(errc::bad_argument, "beta pair must be (1,2), (1,3) or (2,3)");
    const double c12 = cos_of(p.alpha[0]);
    const double c13 = cos_of(p.alpha[1]);
    const double c23 = cos_of(p.alpha[2]);
    const double delta =
        2.0 * c12 * c13 * c23 - c12 * c12 - c13 * c13 - c23 * c23 + 1.0;
    if (!(delta > 1e-12))
        throw error(errc::degenerate_alpha, "Delta vanishes");
    const std::array<double, 3> omega = {c12 * c13 - c23, c12 * c23 - c13,
                                         c13 * c23 - c12};
    const Mat& g = p.gamma.cosines;
    const int cp = first - 1, cq = second - 1;
    // Omega_k pairs the two rows other than k; row k pairs sin^2 of the
    // opposite angle (row 1 <-> a23, row 2 <-> a13, row 3 <-> a12)
    const double bracket =
        (g(1, cp) * g(2, cq) + g(1, cq) * g(2, cp)) * omega[0] +
        (g(0, cp) * g(2, cq) + g(0, cq) * g(2, cp)) * omega[1] +
        (g(0, cp) * g(1, cq) + g(0, cq) * g(1, cp)) * omega[2] +
        g(2, cp) * g(2, cq) * sin2(p.alpha[0]) +
        g(1, cp) * g(1, cq) * sin2(p.alpha[1]) +
        g(0, cp) * g(0, cq) * sin2(p.alpha[2]);
    return clamp_cosine(bracket / delta);
}

double orthonormal_residual(const GammaMatrix& gamma, int column) {
    require_column(column, gamma.n);
    double s = 0.0;
    for (int i = 0; i < gamma.n; ++i) {
        const double c = gamma.cosines(i, column - 1);
        s += c * c;
    }
    return s - 1.0;
}

double orthonormal_beta(const GammaMatrix& gamma, int first, int second) {
    require_column(first, gamma.n);
    require_column(second, gamma.n);
    double s = 0.0;
    for (int i = 0; i < gamma.n; ++i)
        s += gamma.cosines(i, first - 1) * gamma.cosines(i, second - 1);
    return s;
}

AngleProblem swap_inverse(const AngleProblem& p) {
    if (!p.beta || !p.dual_lengths || !p.primal_lengths)
        throw error(errc::missing_dual_data,
                    "swap needs both angle sets and both length sets");
    AngleProblem out(p.n);
    out.alpha = *p.beta;
    out.beta = p.alpha;
    out.primal_lengths = *p.dual_lengths;
    out.dual_lengths = *p.primal_lengths;
    out.gamma = GammaMatrix(p.n, p.gamma.cosines.transposed());
    return out;
}

}  // namespace bkit
