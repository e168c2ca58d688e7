// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  All tolerances are pinned here.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "bkit/angle_identities.hpp"
#include "bkit/metric_ops.hpp"
#include "bkit/reciprocal.hpp"
#include "bkit/types.hpp"
#include "bkit/verify.hpp"

using namespace bkit;
using std::numbers::pi;

namespace {

constexpr std::uint64_t kSeed = 20260824;

std::vector<double> lengths_of(const BasisGeometry& g) {
    return std::vector<double>(g.lengths.begin(), g.lengths.begin() + g.n);
}

AngleProblem extract(const Mat& a, const Mat& astar) {
    const auto primal = geometry_from_metric(gram_from_basis(a));
    const auto dual = geometry_from_metric(gram_from_basis(astar));
    const auto gamma = gammas_from_mixed(mixed_from_bases(a, astar), lengths_of(primal),
                                         lengths_of(dual));
    AngleProblem p(primal.n);
    p.alpha = primal.angles;
    p.beta = dual.angles;
    p.primal_lengths = primal.lengths;
    p.dual_lengths = dual.lengths;
    p.gamma = gamma;
    return p;
}

Mat orthonormalize(const Mat& a) {
    Mat q = a;
    const std::size_t n = a.dim();
    for (std::size_t j = 0; j < n; ++j) {
        // two projection passes: one pass leaves orthogonality at the level
        // of eps times the condition number of the input
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

struct Tracker {
    double worst = 0.0;
    bool ok = true;
    void within(double value, double tol) {
        worst = std::max(worst, std::abs(value));
        if (!(std::abs(value) < tol)) ok = false;
    }
    void require(bool cond) {
        if (!cond) ok = false;
    }
};

// 10^4 random (A, A*) pairs per dimension at condition <= 1e3: relative
// max-norm error of both central identities below 1e-9.
bool central_identity_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        for (std::uint64_t i = 0; i < 10000; ++i) {
            const Mat a = random_basis(dim, kSeed + dim, 2 * i, 1e3);
            const Mat astar = random_basis(dim, kSeed + dim, 2 * i + 1, 1e3);
            const Mat g = gram_from_basis(a);
            const Mat gstar = gram_from_basis(astar);
            const Mat q = mixed_from_bases(a, astar);
            t.within((dual_metric(g, q) - gstar).max_abs() / gstar.max_abs(), 1e-9);
            t.within((primal_metric(gstar, q) - g).max_abs() / g.max_abs(), 1e-9);
        }
    }
    return t.ok;
}

// Same trials: column residuals below 1e-10 absolute; beta formulas match
// the angles extracted from gram(A*) to 1e-9 in cosine.
bool angle_identity_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        for (std::uint64_t i = 0; i < 10000; ++i) {
            const Mat a = random_basis(dim, kSeed + dim, 2 * i, 1e3);
            const Mat astar = random_basis(dim, kSeed + dim, 2 * i + 1, 1e3);
            const auto p = extract(a, astar);
            if (dim == 2) {
                t.within(residual_2d(p, 1), 1e-10);
                t.within(residual_2d(p, 2), 1e-10);
                t.within(beta12_2d(p) - std::cos((*p.beta)[0]), 1e-9);
            } else {
                for (int c = 1; c <= 3; ++c) t.within(residual_3d(p, c), 1e-10);
                int k = 0;
                for (auto [f, s] : {std::pair{1, 2}, {1, 3}, {2, 3}})
                    t.within(beta_3d(p, f, s) - std::cos((*p.beta)[k++]), 1e-9);
            }
        }
    }
    return t.ok;
}

// 10^3 generic solver instances (|denominator| >= 0.1) recover cos(alpha12)
// to 1e-9; 10^2 constructed degenerate instances resolve on the fallback
// branch with both column residuals below 1e-8.
bool solver_suite() {
    Tracker t;
    std::uint64_t accepted = 0, draw = 0;
    while (accepted < 1000 && draw < 100000) {
        const Mat a = random_basis(2, kSeed + 5, 2 * draw, 1e3);
        const Mat astar = random_basis(2, kSeed + 5, 2 * draw + 1, 1e3);
        ++draw;
        const auto p = extract(a, astar);
        const auto sol = solve_alpha_2d(p.gamma);
        if (sol.branch != SolveBranch::generic || std::abs(sol.denominator) < 0.1) continue;
        ++accepted;
        t.within(sol.cos_alpha - std::cos(p.alpha[0]), 1e-9);
    }
    t.require(accepted == 1000);

    // degenerate construction: orthonormal primal, dual directions mirrored
    // across the 45-degree line so the closed-form denominator vanishes
    for (std::uint64_t i = 0; i < 100; ++i) {
        const double theta = 0.05 + 0.55 * (counter_random_unit(kSeed + 6, i) + 1.0) / 2.0;
        const double s1 = 0.5 + counter_random_unit(kSeed + 7, i) * 0.4;
        const double s2 = 0.5 + counter_random_unit(kSeed + 8, i) * 0.4;
        Mat astar(2, {s1 * std::cos(theta), s2 * std::sin(theta), s1 * std::sin(theta),
                      s2 * std::cos(theta)});
        const auto p = extract(Mat::identity(2), astar);
        const auto sol = solve_alpha_2d(p.gamma);
        t.require(sol.branch == SolveBranch::degenerate);
        AngleProblem q(2);
        q.alpha[0] = std::acos(clamp_cosine(sol.cos_alpha));
        q.gamma = p.gamma;
        t.within(residual_2d(q, 1), 1e-8);
        t.within(residual_2d(q, 2), 1e-8);
    }
    return t.ok;
}

// 10^3 trials with orthogonalized primal basis: direction-cosine column
// sums equal 1 to 1e-12, orthonormal beta matches extraction to 1e-10, and
// the specialization agrees with the general formulas to 1e-14.
bool orthonormal_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Mat a = orthonormalize(random_basis(dim, kSeed + 9 + dim, 2 * i, 1e3));
            const Mat astar = random_basis(dim, kSeed + 9 + dim, 2 * i + 1, 1e3);
            const auto p = extract(a, astar);
            for (int c = 1; c <= dim; ++c) {
                double colsum = 0;
                for (int r = 0; r < dim; ++r) {
                    const double cg = p.gamma.cosines(r, c - 1);
                    colsum += cg * cg;
                }
                t.within(colsum - 1.0, 1e-12);
                t.within(orthonormal_residual(p.gamma, c), 1e-12);
                const int general =
                    dim == 2 ? static_cast<int>(std::abs(residual_2d(p, c)) < 1e-12)
                             : static_cast<int>(std::abs(residual_3d(p, c)) < 1e-12);
                t.require(general == 1);
            }
            for (int f = 1; f <= dim; ++f)
                for (int s = f + 1; s <= dim; ++s) {
                    const double specialized = orthonormal_beta(p.gamma, f, s);
                    const double general = dim == 2 ? beta12_2d(p) : beta_3d(p, f, s);
                    t.within(specialized - general, 1e-14);
                    const int k = dim == 2 ? 0 : (f == 1 ? s - 2 : 2);
                    t.within(specialized - std::cos((*p.beta)[k]), 1e-10);
                }
        }
    }
    return t.ok;
}

// 10^3 reciprocal (Q = I) trials at condition <= 50 (the volume identity
// loses about cond^3 * eps through the dual-angle formulas): closed forms
// match
// the inverse-transpose oracle to 1e-10 in lengths and angle cosines,
// |a_i||a*_i| cos(gamma_ii) = 1 to 1e-12, 2D cos(beta12) = -cos(alpha12),
// and V V* = 1 to 1e-10.
bool reciprocal_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Mat a = random_basis(dim, kSeed + 20 + dim, i, 50.0);
            const auto primal = geometry_from_metric(gram_from_basis(a));
            const auto rp =
                dim == 2 ? reciprocal_geometry_2d(primal) : reciprocal_geometry_3d(primal);
            const auto oracle = geometry_from_metric(gram_from_basis(reciprocal_basis(a)));
            for (int j = 0; j < dim; ++j) {
                t.within(rp.dual.lengths[j] - oracle.lengths[j], 1e-10);
                t.within(primal.lengths[j] * rp.dual.lengths[j] * rp.gamma_diag[j] - 1.0,
                         1e-12);
            }
            for (int j = 0; j < rp.dual.angle_count(); ++j)
                t.within(std::cos(rp.dual.angles[j]) - std::cos(oracle.angles[j]), 1e-10);
            if (dim == 2)
                t.within(std::cos(rp.dual.angles[0]) + std::cos(primal.angles[0]), 1e-12);
            t.within(cell_volume(primal) * cell_volume(rp.dual) - 1.0, 1e-10);
        }
    }
    return t.ok;
}

// Hexagonal and rhombohedral fixed points against derived oracles, 1e-10.
bool fixed_point_suite() {
    Tracker t;
    BasisGeometry hex;
    hex.n = 2;
    hex.lengths = {1.0, 1.0, 0.0};
    hex.angles[0] = 2 * pi / 3;
    const auto hx = reciprocal_geometry_2d(hex);
    t.within(hx.dual.lengths[0] - 2.0 / std::sqrt(3.0), 1e-10);
    t.within(hx.dual.lengths[1] - 2.0 / std::sqrt(3.0), 1e-10);
    t.within(hx.dual.angles[0] - pi / 3, 1e-10);

    BasisGeometry rh;
    rh.n = 3;
    rh.lengths = {1.0, 1.0, 1.0};
    rh.angles = {pi / 3, pi / 3, pi / 3};
    t.within(delta_omega(rh.angles).delta - 0.5, 1e-10);
    t.within(cell_volume(rh) - std::sqrt(0.5), 1e-10);
    const auto rr = reciprocal_geometry_3d(rh);
    for (int i = 0; i < 3; ++i) t.within(std::cos(rr.dual.angles[i]) + 1.0 / 3.0, 1e-10);
    // determinant oracle for the volume
    const Mat b = cholesky_factor(build_metric(rh));
    t.within(cell_volume(rh) - std::abs(b.det()), 1e-10);
    // inverse-transpose oracle for the dual cosines
    const auto dual = geometry_from_metric(gram_from_basis(reciprocal_basis(b)));
    for (int i = 0; i < 3; ++i) t.within(std::cos(dual.angles[i]) + 1.0 / 3.0, 1e-10);
    return t.ok;
}

// 10^3 swapped problems satisfy the residual and beta identities at the
// criteria-1/2 tolerances; the swap is an exact involution.
bool swap_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Mat a = random_basis(dim, kSeed + 30 + dim, 2 * i, 1e3);
            const Mat astar = random_basis(dim, kSeed + 30 + dim, 2 * i + 1, 1e3);
            const auto p = extract(a, astar);
            const auto sp = swap_inverse(p);
            if (dim == 2) {
                t.within(residual_2d(sp, 1), 1e-10);
                t.within(residual_2d(sp, 2), 1e-10);
                t.within(beta12_2d(sp) - std::cos((*sp.beta)[0]), 1e-9);
            } else {
                for (int c = 1; c <= 3; ++c) t.within(residual_3d(sp, c), 1e-10);
                int k = 0;
                for (auto [f, s] : {std::pair{1, 2}, {1, 3}, {2, 3}})
                    t.within(beta_3d(sp, f, s) - std::cos((*sp.beta)[k++]), 1e-9);
            }
            // exact involution, bit for bit
            const auto back = swap_inverse(sp);
            t.require(back.alpha == p.alpha && *back.beta == *p.beta);
            t.require(*back.primal_lengths == *p.primal_lengths &&
                      *back.dual_lengths == *p.dual_lengths);
            t.require(back.gamma.cosines.data() == p.gamma.cosines.data());
        }
    }
    return t.ok;
}

// Negative controls: the inconsistent (I, I, 2I) triple is flagged, and the
// infeasible 2D configuration has residual exactly 1.
bool negative_control_suite() {
    Tracker t;
    Mat twice(2, {2.0, 0.0, 0.0, 2.0});
    t.require(!check_configuration(Mat::identity(2), Mat::identity(2), twice, 1e-8).pass);
    t.require(check_configuration(Mat::identity(2), Mat::identity(2), Mat::identity(2), 1e-8)
                  .pass);
    AngleProblem p(2);
    p.alpha[0] = pi / 2;
    p.gamma = GammaMatrix(2, Mat(2, {1.0, 0.0, 1.0, 0.0}));
    t.require(residual_2d(p, 1) == 1.0);
    return t.ok;
}

// Two verify runs with identical configuration produce byte-identical JSON.
bool determinism_suite() {
    Tracker t;
    for (int dim : {2, 3}) {
        TrialConfig cfg;
        cfg.dimension = dim;
        cfg.trials = 500;
        cfg.seed = kSeed;
        const auto r1 = verify_identities(cfg);
        const auto r2 = verify_identities(cfg);
        t.require(r1.to_json() == r2.to_json());
        t.require(r1.pass);
    }
    return t.ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)();
    };
    const Criterion criteria[] = {
        {"1 central identity suite", central_identity_suite},
        {"2 angle identity suite", angle_identity_suite},
        {"3 2D alpha solver", solver_suite},
        {"4 orthonormal-primal suite", orthonormal_suite},
        {"5 reciprocal suite", reciprocal_suite},
        {"6 fixed-point spot checks", fixed_point_suite},
        {"7 swap suite", swap_suite},
        {"8 negative controls", negative_control_suite},
        {"9 determinism", determinism_suite},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        bool ok = false;
        std::string note;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            note = std::string(" (exception: ") + e.what() + ")";
        }
        std::printf("criterion %-28s %s%s\n", c.name, ok ? "pass" : "FAIL", note.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
