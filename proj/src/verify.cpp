#include "bkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <nlohmann/json.hpp>

#include "bkit/angle_identities.hpp"
#include "bkit/metric_ops.hpp"
#include "bkit/reciprocal.hpp"

namespace bkit {

namespace {

constexpr std::uint64_t kRetryBudget = 10000;

std::uint64_t splitmix64_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// eigenvalues of a symmetric 2x2 or 3x3 matrix, descending
std::vector<double> sym_eigenvalues(const Mat& s) {
    const std::size_t n = s.dim();
    if (n == 2) {
        const double half_tr = 0.5 * (s(0, 0) + s(1, 1));
        const double half_diff = 0.5 * (s(0, 0) - s(1, 1));
        const double r = std::sqrt(half_diff * half_diff + s(0, 1) * s(0, 1));
        return {half_tr + r, half_tr - r};
    }
    if (n != 3) throw error(errc::bad_argument, "eigenvalues support n <= 3");
    const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
    const double q = (s(0, 0) + s(1, 1) + s(2, 2)) / 3.0;
    if (p1 == 0.0) {
        std::vector<double> d = {s(0, 0), s(1, 1), s(2, 2)};
        std::sort(d.rbegin(), d.rend());
        return d;
    }
    const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                      (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat b(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            b(i, j) = (s(i, j) - (i == j ? q : 0.0)) / p;
    const double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

// per-identity max-residual accumulator with lowest-index argmax tie-break
class Accumulator {
public:
    void record(const std::string& name, std::uint64_t trial, double residual) {
        auto& e = entries_[name];
        ++e.trials;
        const double r = std::abs(residual);
        if (r > e.max_residual) {
            e.max_residual = r;
            e.trial_index = trial;
        }
    }

    VerificationReport finish(const TrialConfig& cfg) const {
        VerificationReport rep;
        rep.config = cfg;
        rep.pass = true;
        for (const auto& [name, e] : entries_) {
            IdentityRecord rec;
            rec.name = name;
            rec.trials = e.trials;
            rec.max_residual = e.max_residual;
            rec.trial_index = e.trial_index;
            rec.pass = e.max_residual <= cfg.tolerance;
            rep.pass = rep.pass && rec.pass;
            rep.records.push_back(rec);
        }
        return rep;
    }

private:
    struct Entry {
        std::uint64_t trials = 0;
        double max_residual = 0.0;
        std::uint64_t trial_index = 0;
    };
    std::map<std::string, Entry> entries_;
};

double rel_diff(const Mat& a, const Mat& b) {
    return (a - b).max_abs() / std::max(b.max_abs(), 1e-300);
}

std::array<double, 3> to_array3(const std::vector<double>& v) {
    std::array<double, 3> a{};
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) a[i] = v[i];
    return a;
}

std::vector<double> lengths_of(const BasisGeometry& g) {
    return std::vector<double>(g.lengths.begin(), g.lengths.begin() + g.n);
}

AngleProblem make_problem(const BasisGeometry& primal, const BasisGeometry& dual,
                          const GammaMatrix& gamma) {
    AngleProblem p(primal.n);
    p.alpha = primal.angles;
    p.beta = dual.angles;
    p.primal_lengths = primal.lengths;
    p.dual_lengths = dual.lengths;
    p.gamma = gamma;
    return p;
}

// modified Gram-Schmidt on columns
Mat orthonormalize(const Mat& a) {
    const std::size_t n = a.dim();
    Mat q = a;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        if (!(norm > 1e-12))
            throw error(errc::singular_basis, "orthonormalization hit a null column");
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

std::vector<double> random_vector(int n, std::uint64_t seed, std::uint64_t stream) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = counter_random_unit(seed, stream * 8 + static_cast<std::uint64_t>(k));
    return v;
}

// stream id offsets keeping the general / G=I / Q=I draws disjoint
constexpr std::uint64_t kStreamGeneral = 0x100000000ULL;
constexpr std::uint64_t kStreamOrtho = 0x200000000ULL;
constexpr std::uint64_t kStreamRecip = 0x300000000ULL;
constexpr std::uint64_t kStreamVectors = 0x400000000ULL;

void general_trial(int dim, std::uint64_t seed, double cond_limit, std::uint64_t t,
                   Accumulator& acc) {
    const Mat a = random_basis(dim, seed, kStreamGeneral + 2 * t, cond_limit);
    const Mat astar = random_basis(dim, seed, kStreamGeneral + 2 * t + 1, cond_limit);
    const Mat g = gram_from_basis(a);
    const Mat gstar = gram_from_basis(astar);
    const Mat q = mixed_from_bases(a, astar);

    acc.record("central_gstar", t, rel_diff(dual_metric(g, q), gstar));
    acc.record("central_g_inverse", t, rel_diff(primal_metric(gstar, q), g));

    const BasisGeometry primal = geometry_from_metric(g);
    const BasisGeometry dual = geometry_from_metric(gstar);
    const GammaMatrix gamma = gammas_from_mixed(q, lengths_of(primal), lengths_of(dual));
    const AngleProblem prob = make_problem(primal, dual, gamma);
    const AngleProblem swapped = swap_inverse(prob);

    if (dim == 2) {
        acc.record("residual_2d_col1", t, residual_2d(prob, 1));
        acc.record("residual_2d_col2", t, residual_2d(prob, 2));
        acc.record("beta12_2d", t, beta12_2d(prob) - std::cos(dual.angles[0]));
        acc.record("swap_residual_2d_col1", t, residual_2d(swapped, 1));
        acc.record("swap_residual_2d_col2", t, residual_2d(swapped, 2));
        acc.record("swap_beta12_2d", t, beta12_2d(swapped) - std::cos(primal.angles[0]));
    } else {
        for (int c = 1; c <= 3; ++c)
            acc.record("residual_3d_col" + std::to_string(c), t, residual_3d(prob, c));
        const std::array<std::pair<int, int>, 3> pairs = {{{1, 2}, {1, 3}, {2, 3}}};
        for (const auto& [i, j] : pairs) {
            const std::string tag = std::to_string(i) + std::to_string(j);
            acc.record("beta_3d_" + tag, t,
                       beta_3d(prob, i, j) - std::cos(dual.angle(i, j)));
            acc.record("swap_beta_3d_" + tag, t,
                       beta_3d(swapped, i, j) - std::cos(primal.angle(i, j)));
        }
        for (int c = 1; c <= 3; ++c)
            acc.record("swap_residual_3d_col" + std::to_string(c), t,
                       residual_3d(swapped, c));
    }

    // triple-route coordinate transform agreement
    CoordinateVector x;
    x.n = dim;
    x.frame = Frame::primal;
    x.coords = random_vector(dim, seed, kStreamVectors + t);
    TransformContext via_bases{a, astar, {}, {}, {}};
    TransformContext via_metric{{}, {}, g, {}, q};
    TransformContext via_dual{{}, {}, {}, gstar, q};
    const auto r1 = transform_coords(x, via_bases).coords;
    const auto r2 = transform_coords(x, via_metric).coords;
    const auto r3 = transform_coords(x, via_dual).coords;
    double route_diff = 0.0, route_scale = 0.0;
    for (int i = 0; i < dim; ++i) {
        route_diff = std::max({route_diff, std::abs(r1[i] - r2[i]),
                               std::abs(r1[i] - r3[i]), std::abs(r2[i] - r3[i])});
        route_scale = std::max({route_scale, std::abs(r1[i]), std::abs(r2[i]),
                                std::abs(r3[i])});
    }
    acc.record("transform_routes", t, route_diff / std::max(route_scale, 1e-300));

    // four-way quadratic norm agreement
    const auto forms = quadratic_norm(x.coords, r1, g, gstar, q);
    double fmin = forms[0], fmax = forms[0];
    for (double f : forms) {
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    acc.record("quadratic_norm", t, (fmax - fmin) / std::max(std::abs(fmax), 1e-300));
}

void orthonormal_trial(int dim, std::uint64_t seed, double cond_limit, std::uint64_t t,
                       Accumulator& acc) {
    const Mat a = orthonormalize(random_basis(dim, seed, kStreamOrtho + 2 * t, cond_limit));
    const Mat astar = random_basis(dim, seed, kStreamOrtho + 2 * t + 1, cond_limit);
    const Mat gstar = gram_from_basis(astar);
    const Mat q = mixed_from_bases(a, astar);
    const BasisGeometry dual = geometry_from_metric(gstar);
    std::vector<double> unit(dim, 1.0);
    const GammaMatrix gamma = gammas_from_mixed(q, unit, lengths_of(dual));

    for (int c = 1; c <= dim; ++c)
        acc.record("orthonormal_colsum_col" + std::to_string(c), t,
                   orthonormal_residual(gamma, c));

    AngleProblem prob(dim);
    prob.gamma = gamma;
    for (int k = 0; k < (dim == 2 ? 1 : 3); ++k)
        prob.alpha[k] = std::numbers::pi / 2.0;  // G = I

    if (dim == 2) {
        acc.record("orthonormal_beta_12", t,
                   orthonormal_beta(gamma, 1, 2) - std::cos(dual.angles[0]));
        acc.record("orthonormal_specialization_12", t,
                   orthonormal_beta(gamma, 1, 2) - beta12_2d(prob));
    } else {
        const std::array<std::pair<int, int>, 3> pairs = {{{1, 2}, {1, 3}, {2, 3}}};
        for (const auto& [i, j] : pairs) {
            const std::string tag = std::to_string(i) + std::to_string(j);
            acc.record("orthonormal_beta_" + tag, t,
                       orthonormal_beta(gamma, i, j) - std::cos(dual.angle(i, j)));
            acc.record("orthonormal_specialization_" + tag, t,
                       orthonormal_beta(gamma, i, j) - beta_3d(prob, i, j));
        }
    }
}

void reciprocal_trial(int dim, std::uint64_t seed, double cond_limit, std::uint64_t t,
                      Accumulator& acc) {
    const Mat a = random_basis(dim, seed, kStreamRecip + t, cond_limit);
    const Mat astar = reciprocal_basis(a);
    const Mat g = gram_from_basis(a);
    const BasisGeometry primal = geometry_from_metric(g);
    const BasisGeometry dual_oracle = geometry_from_metric(gram_from_basis(astar));

    const ReciprocalPair rp =
        dim == 2 ? reciprocal_geometry_2d(primal) : reciprocal_geometry_3d(primal);

    double len_diff = 0.0, cos_diff = 0.0, norm_diff = 0.0;
    for (int i = 0; i < dim; ++i) {
        len_diff = std::max(len_diff, std::abs(rp.dual.lengths[i] - dual_oracle.lengths[i]) /
                                          dual_oracle.lengths[i]);
        norm_diff = std::max(
            norm_diff,
            std::abs(primal.lengths[i] * rp.dual.lengths[i] * rp.gamma_diag[i] - 1.0));
    }
    for (int i = 1; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j)
            cos_diff = std::max(cos_diff, std::abs(std::cos(rp.dual.angle(i, j)) -
                                                   std::cos(dual_oracle.angle(i, j))));
    acc.record("reciprocal_lengths", t, len_diff);
    acc.record("reciprocal_angle_cosines", t, cos_diff);
    acc.record("reciprocal_normalization", t, norm_diff);
    if (dim == 2)
        acc.record("reciprocal_beta_negcos", t,
                   std::cos(rp.dual.angles[0]) + std::cos(primal.angles[0]));
    acc.record("reciprocal_volume_product", t,
               cell_volume(primal) * cell_volume(rp.dual) - 1.0);

    // with Q = I the mixed quadratic form is the plain coordinate dot product
    const std::vector<double> x = random_vector(dim, seed, kStreamVectors + kStreamRecip + t);
    const std::vector<double> r = a * x;
    const std::vector<double> xstar = astar.inverse() * r;
    double rr = 0.0, xx = 0.0;
    for (int i = 0; i < dim; ++i) {
        rr += r[i] * r[i];
        xx += x[i] * xstar[i];
    }
    acc.record("reciprocal_norm_form", t, (xx - rr) / std::max(rr, 1e-300));
}

}  // namespace

std::uint64_t counter_random_u64(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64_mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

double counter_random_unit(std::uint64_t seed, std::uint64_t counter) {
    const double u =
        static_cast<double>(counter_random_u64(seed, counter) >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

double condition_2norm(const Mat& a) {
    const auto eig = sym_eigenvalues(a.transposed() * a);
    const double lmax = eig.front();
    const double lmin = eig.back();
    if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(lmax / lmin);
}

Mat random_basis(int dimension, std::uint64_t seed, std::uint64_t index,
                 double condition_limit) {
    if (dimension != 2 && dimension != 3)
        throw error(errc::bad_argument, "basis generator supports dimension 2 or 3");
    const std::size_t n = static_cast<std::size_t>(dimension);
    const std::uint64_t base = index * kRetryBudget * 9;
    for (std::uint64_t attempt = 0; attempt < kRetryBudget; ++attempt) {
        Mat a(n);
        for (std::size_t k = 0; k < n * n; ++k)
            a(k / n, k % n) = counter_random_unit(seed, base + attempt * 9 + k);
        if (std::abs(a.det()) < 1e-3) continue;
        if (condition_2norm(a) > condition_limit) continue;
        return a;
    }
    throw error(errc::generation_exhausted, "random basis rejection budget exhausted");
}

VerificationReport verify_identities(const TrialConfig& cfg) {
    if (cfg.dimension != 2 && cfg.dimension != 3)
        throw error(errc::bad_argument, "dimension must be 2 or 3");
    if (cfg.trials < 1 || !(cfg.tolerance > 0.0) || !(cfg.condition_limit > 1.0))
        throw error(errc::bad_argument, "invalid trial configuration");
    Accumulator acc;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        general_trial(cfg.dimension, cfg.seed, cfg.condition_limit, t, acc);
        orthonormal_trial(cfg.dimension, cfg.seed, cfg.condition_limit, t, acc);
        reciprocal_trial(cfg.dimension, cfg.seed, cfg.condition_limit, t, acc);
    }
    return acc.finish(cfg);
}

VerificationReport check_configuration(const Mat& g, const Mat& gstar, const Mat& q,
                                       double tolerance) {
    if (g.dim() != gstar.dim() || g.dim() != q.dim())
        throw error(errc::dimension_mismatch, "matrix dimensions differ");
    if (std::abs(q.det()) < 1e-12)
        throw error(errc::singular_mixed, "mixed matrix is singular");
    TrialConfig cfg;
    cfg.dimension = static_cast<int>(g.dim());
    cfg.trials = 1;
    cfg.tolerance = tolerance;
    Accumulator acc;
    acc.record("central_gstar", 0, rel_diff(q.transposed() * g.inverse() * q, gstar));
    acc.record("central_g_inverse", 0, rel_diff(q * gstar.inverse() * q.transposed(), g));
    return acc.finish(cfg);
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["config"] = {{"dimension", config.dimension},
                   {"trials", config.trials},
                   {"seed", config.seed},
                   {"tolerance", config.tolerance},
                   {"condition_limit", config.condition_limit}};
    nlohmann::json ids = nlohmann::json::object();
    for (const auto& r : records)
        ids[r.name] = {{"max_residual", r.max_residual},
                       {"trial_index", r.trial_index},
                       {"trials", r.trials},
                       {"pass", r.pass}};
    j["identities"] = ids;
    j["pass"] = pass;
    return j.dump(2);
}

}  // namespace bkit
