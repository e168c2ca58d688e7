#include "bkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace bkit {

const char* errc_name(errc code) {
    switch (code) {
        case errc::nonpositive_length: return "NonPositiveLength";
        case errc::angle_out_of_range: return "AngleOutOfRange";
        case errc::not_realizable: return "NotRealizable";
        case errc::cosine_out_of_range: return "CosineOutOfRange";
        case errc::singular_basis: return "SingularBasis";
        case errc::singular_mixed: return "SingularMixed";
        case errc::singular_matrix: return "SingularMatrix";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::degenerate_alpha: return "DegenerateAlpha";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::frame_mismatch: return "FrameMismatch";
        case errc::unresolvable: return "Unresolvable";
        case errc::missing_dual_data: return "MissingDualData";
        case errc::generation_exhausted: return "GenerationExhausted";
        case errc::bad_argument: return "BadArgument";
    }
    return "Unknown";
}

Mat::Mat(std::size_t n, std::vector<double> entries) : n_(n), e_(std::move(entries)) {
    if (e_.size() != n * n)
        throw error(errc::dimension_mismatch, "matrix entry count does not match dimension");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::transposed() const {
    Mat t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (rhs.n_ != n_) throw error(errc::dimension_mismatch, "matrix product dimension mismatch");
    Mat r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const double a = (*this)(i, k);
            for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * rhs(k, j);
        }
    return r;
}

std::vector<double> Mat::operator*(const std::vector<double>& v) const {
    if (v.size() != n_) throw error(errc::dimension_mismatch, "matrix-vector dimension mismatch");
    std::vector<double> r(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rhs.n_ != n_) throw error(errc::dimension_mismatch, "matrix difference dimension mismatch");
    Mat r(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i] - rhs.e_[i];
    return r;
}

double Mat::det() const {
    const Mat& m = *this;
    switch (n_) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: break;
    }
    // partial-pivot elimination
    Mat a = m;
    double d = 1.0;
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n_; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n_; ++j) std::swap(a(k, j), a(piv, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n_; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

Mat Mat::inverse() const {
    const Mat& m = *this;
    const double d = det();
    if (n_ <= 3) {
        if (std::abs(d) < 1e-300)
            throw error(errc::singular_matrix, "matrix is singular");
        Mat inv(n_);
        if (n_ == 1) {
            inv(0, 0) = 1.0 / d;
        } else if (n_ == 2) {
            inv(0, 0) = m(1, 1) / d;
            inv(0, 1) = -m(0, 1) / d;
            inv(1, 0) = -m(1, 0) / d;
            inv(1, 1) = m(0, 0) / d;
        } else {
            // adjugate
            inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
            inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
            inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
            inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
            inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
            inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
            inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
            inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
            inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
        }
        return inv;
    }
    // Gauss-Jordan with partial pivoting
    Mat a = m;
    Mat inv = Mat::identity(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n_; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-300)
            throw error(errc::singular_matrix, "matrix is singular");
        if (piv != k)
            for (std::size_t j = 0; j < n_; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        const double p = a(k, k);
        for (std::size_t j = 0; j < n_; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == k) continue;
            const double f = a(i, k);
            for (std::size_t j = 0; j < n_; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

double Mat::max_abs() const {
    double r = 0.0;
    for (double x : e_) r = std::max(r, std::abs(x));
    return r;
}

bool Mat::is_symmetric(double tol) const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

namespace {

int pair_slot(int n, int i, int j) {
    if (i < 1 || j <= i || j > n)
        throw error(errc::bad_argument, "angle pair index out of range");
    if (n == 2) return 0;
    if (i == 1) return j == 2 ? 0 : 1;  // (1,2), (1,3)
    return 2;                           // (2,3)
}

}  // namespace

double BasisGeometry::angle(int i, int j) const { return angles[pair_slot(n, i, j)]; }
void BasisGeometry::set_angle(int i, int j, double a) { angles[pair_slot(n, i, j)] = a; }

GammaMatrix::GammaMatrix(int dim, Mat c) : n(dim), cosines(std::move(c)) {
    if (cosines.dim() != static_cast<std::size_t>(dim))
        throw error(errc::dimension_mismatch, "gamma matrix dimension mismatch");
    for (std::size_t i = 0; i < cosines.dim(); ++i)
        for (std::size_t j = 0; j < cosines.dim(); ++j)
            if (std::abs(cosines(i, j)) > 1.0 + kClampTol)
                throw error(errc::cosine_out_of_range, "gamma cosine outside [-1,1]");
}

double clamp_cosine(double x) {
    if (x > 1.0) {
        if (x > 1.0 + kClampTol)
            throw error(errc::cosine_out_of_range, "cosine argument exceeds 1");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - kClampTol)
            throw error(errc::cosine_out_of_range, "cosine argument below -1");
        return -1.0;
    }
    return x;
}

const BasisGeometry& validate_geometry(const BasisGeometry& g) {
    if (g.n != 2 && g.n != 3)
        throw error(errc::bad_argument, "geometry dimension must be 2 or 3");
    for (int i = 0; i < g.n; ++i)
        if (!(g.lengths[i] > 0.0))
            throw error(errc::nonpositive_length, "basis vector length must be positive");
    for (int k = 0; k < g.angle_count(); ++k)
        if (!(g.angles[k] > 0.0 && g.angles[k] < std::numbers::pi))
            throw error(errc::angle_out_of_range, "angle must lie in (0, pi)");
    if (g.n == 2) {
        if (!(std::abs(std::cos(g.angles[0])) < 1.0))
            throw error(errc::not_realizable, "|cos(alpha_12)| must be < 1");
    } else {
        const double c12 = std::cos(g.angle(1, 2));
        const double c13 = std::cos(g.angle(1, 3));
        const double c23 = std::cos(g.angle(2, 3));
        const double delta =
            2.0 * c12 * c13 * c23 - c12 * c12 - c13 * c13 - c23 * c23 + 1.0;
        if (!(delta > 0.0))
            throw error(errc::not_realizable, "angle set is not realizable (Delta <= 0)");
    }
    return g;
}

const Mat& validate_metric(const Mat& g) {
    if (!g.is_symmetric(0.0))
        throw error(errc::bad_argument, "metric matrix must be symmetric");
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        if (!(g(i, i) > 0.0))
            throw error(errc::not_positive_definite, "metric diagonal must be positive");
    // leading principal minors
    for (std::size_t k = 1; k <= n; ++k) {
        Mat sub(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = g(i, j);
        if (!(sub.det() > 0.0))
            throw error(errc::not_positive_definite,
                        "leading principal minor " + std::to_string(k) + " is not positive");
    }
    return g;
}

BasisGeometry geometry_from_metric(const Mat& g) {
    validate_metric(g);
    const int n = static_cast<int>(g.dim());
    if (n != 2 && n != 3)
        throw error(errc::bad_argument, "geometry extraction supports n = 2 or 3");
    BasisGeometry out;
    out.n = n;
    for (int i = 0; i < n; ++i) out.lengths[i] = std::sqrt(g(i, i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const double c =
                clamp_cosine(g(i - 1, j - 1) / (out.lengths[i - 1] * out.lengths[j - 1]));
            out.set_angle(i, j, std::acos(c));
        }
    return out;
}

GammaMatrix gammas_from_mixed(const Mat& q, const std::vector<double>& primal_lengths,
                              const std::vector<double>& dual_lengths) {
    const std::size_t n = q.dim();
    if (primal_lengths.size() != n || dual_lengths.size() != n)
        throw error(errc::dimension_mismatch, "length vectors must match mixed matrix dimension");
    for (double l : primal_lengths)
        if (!(l > 0.0)) throw error(errc::nonpositive_length, "primal length must be positive");
    for (double l : dual_lengths)
        if (!(l > 0.0)) throw error(errc::nonpositive_length, "dual length must be positive");
    GammaMatrix out(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.cosines(i, j) = clamp_cosine(q(i, j) / (primal_lengths[i] * dual_lengths[j]));
    return out;
}

}  // namespace bkit
