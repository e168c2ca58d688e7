#include "bkit/metric_ops.hpp"

#include <cmath>

namespace bkit {

namespace {

constexpr double kSingularTol = 1e-12;

void require_invertible(const Mat& a, errc code, const char* what) {
    if (std::abs(a.det()) < kSingularTol) throw error(code, what);
}

}  // namespace

Mat build_metric(const BasisGeometry& g) {
    validate_geometry(g);
    Mat m(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) m(i, i) = g.lengths[i] * g.lengths[i];
    for (int i = 1; i <= g.n; ++i)
        for (int j = i + 1; j <= g.n; ++j) {
            const double v =
                g.lengths[i - 1] * g.lengths[j - 1] * std::cos(g.angle(i, j));
            m(i - 1, j - 1) = v;
            m(j - 1, i - 1) = v;
        }
    validate_metric(m);
    return m;
}

Mat gram_from_basis(const Mat& a) {
    require_invertible(a, errc::singular_basis, "basis matrix is singular");
    Mat g = a.transposed() * a;
    // enforce exact symmetry of the stored entries
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) g(j, i) = g(i, j);
    return g;
}

Mat mixed_from_bases(const Mat& a, const Mat& astar) {
    require_invertible(a, errc::singular_basis, "primal basis matrix is singular");
    require_invertible(astar, errc::singular_basis, "dual basis matrix is singular");
    return a.transposed() * astar;
}

Mat cholesky_factor(const Mat& g) {
    if (!g.is_symmetric(0.0))
        throw error(errc::bad_argument, "cholesky input must be symmetric");
    const std::size_t n = g.dim();
    Mat lower(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = g(j, j);
        for (std::size_t k = 0; k < j; ++k) sum -= lower(j, k) * lower(j, k);
        if (!(sum > kSingularTol))
            throw error(errc::not_positive_definite, "cholesky pivot not positive");
        lower(j, j) = std::sqrt(sum);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
            lower(i, j) = s / lower(j, j);
        }
    }
    // B = L^T so that B^T B = G with column j the coordinates of basis vector j
    return lower.transposed();
}

Mat dual_metric(const Mat& g, const Mat& q) {
    validate_metric(g);
    require_invertible(q, errc::singular_mixed, "mixed matrix is singular");
    Mat r = q.transposed() * g.inverse() * q;
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i + 1; j < r.dim(); ++j) {
            const double v = 0.5 * (r(i, j) + r(j, i));
            r(i, j) = v;
            r(j, i) = v;
        }
    return r;
}

Mat primal_metric(const Mat& gstar, const Mat& q) {
    validate_metric(gstar);
    require_invertible(q, errc::singular_mixed, "mixed matrix is singular");
    Mat r = q * gstar.inverse() * q.transposed();
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i + 1; j < r.dim(); ++j) {
            const double v = 0.5 * (r(i, j) + r(j, i));
            r(i, j) = v;
            r(j, i) = v;
        }
    return r;
}

CoordinateVector transform_coords(const CoordinateVector& x, const TransformContext& ctx) {
    if (x.frame == Frame::orthonormal)
        throw error(errc::frame_mismatch, "transform expects primal or dual coordinates");
    const bool to_dual = (x.frame == Frame::primal);
    CoordinateVector out;
    out.n = x.n;
    out.frame = to_dual ? Frame::dual : Frame::primal;
    if (ctx.basis && ctx.dual_basis) {
        const Mat& a = *ctx.basis;
        const Mat& astar = *ctx.dual_basis;
        require_invertible(a, errc::singular_matrix, "basis matrix is singular");
        require_invertible(astar, errc::singular_matrix, "dual basis matrix is singular");
        out.coords = to_dual ? astar.inverse() * (a * x.coords)
                             : a.inverse() * (astar * x.coords);
        return out;
    }
    if (ctx.metric && ctx.mixed) {
        const Mat& g = *ctx.metric;
        const Mat& q = *ctx.mixed;
        require_invertible(q, errc::singular_matrix, "mixed matrix is singular");
        out.coords = to_dual ? q.inverse() * (g * x.coords)
                             : g.inverse() * (q * x.coords);
        return out;
    }
    if (ctx.dual_metric_ && ctx.mixed) {
        const Mat& gstar = *ctx.dual_metric_;
        const Mat& q = *ctx.mixed;
        require_invertible(gstar, errc::singular_matrix, "dual metric is singular");
        out.coords = to_dual ? gstar.inverse() * (q.transposed() * x.coords)
                             : q.transposed().inverse() * (gstar * x.coords);
        return out;
    }
    throw error(errc::bad_argument,
                "transform context needs (A, A*), (G, Q) or (G*, Q)");
}

std::array<double, 4> quadratic_norm(const std::vector<double>& x,
                                     const std::vector<double>& xstar, const Mat& g,
                                     const Mat& gstar, const Mat& q) {
    const std::size_t n = g.dim();
    if (x.size() != n || xstar.size() != n || gstar.dim() != n || q.dim() != n)
        throw error(errc::dimension_mismatch, "quadratic_norm dimension mismatch");
    auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    };
    return {dot(x, g * x), dot(xstar, gstar * xstar), dot(x, q * xstar),
            dot(xstar, q.transposed() * x)};
}

DeltaOmega delta_omega(const std::array<double, 3>& angles) {
    for (double a : angles)
        if (!(a > 0.0 && a < std::acos(-1.0)))
            throw error(errc::angle_out_of_range, "angle must lie in (0, pi)");
    const double c12 = std::cos(angles[0]);
    const double c13 = std::cos(angles[1]);
    const double c23 = std::cos(angles[2]);
    DeltaOmega out;
    out.delta = 2.0 * c12 * c13 * c23 - c12 * c12 - c13 * c13 - c23 * c23 + 1.0;
    out.omega = {c12 * c13 - c23, c12 * c23 - c13, c13 * c23 - c12};
    return out;
}

double cell_volume(const BasisGeometry& g) {
    validate_geometry(g);
    if (g.n == 2) return g.lengths[0] * g.lengths[1] * std::sin(g.angles[0]);
    const DeltaOmega d = delta_omega(g.angles);
    return g.lengths[0] * g.lengths[1] * g.lengths[2] * std::sqrt(d.delta);
}

}  // namespace bkit
