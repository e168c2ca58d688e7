#include "bkit.h"

#include <cstring>
#include <new>

#include "bkit/angle_identities.hpp"
#include "bkit/metric_ops.hpp"
#include "bkit/reciprocal.hpp"
#include "bkit/types.hpp"
#include "bkit/verify.hpp"

struct bkit_report {
    bkit::VerificationReport report;
};

namespace {

using bkit::Mat;

bkit_status to_status(bkit::errc code) {
    switch (code) {
        case bkit::errc::nonpositive_length: return BKIT_ERR_NONPOSITIVE_LENGTH;
        case bkit::errc::angle_out_of_range: return BKIT_ERR_ANGLE_OUT_OF_RANGE;
        case bkit::errc::not_realizable: return BKIT_ERR_NOT_REALIZABLE;
        case bkit::errc::cosine_out_of_range: return BKIT_ERR_COSINE_OUT_OF_RANGE;
        case bkit::errc::singular_basis: return BKIT_ERR_SINGULAR_BASIS;
        case bkit::errc::singular_mixed: return BKIT_ERR_SINGULAR_MIXED;
        case bkit::errc::singular_matrix: return BKIT_ERR_SINGULAR_MATRIX;
        case bkit::errc::not_positive_definite: return BKIT_ERR_NOT_POSITIVE_DEFINITE;
        case bkit::errc::degenerate_alpha: return BKIT_ERR_DEGENERATE_ALPHA;
        case bkit::errc::dimension_mismatch: return BKIT_ERR_DIMENSION_MISMATCH;
        case bkit::errc::frame_mismatch: return BKIT_ERR_FRAME_MISMATCH;
        case bkit::errc::unresolvable: return BKIT_ERR_UNRESOLVABLE;
        case bkit::errc::missing_dual_data: return BKIT_ERR_MISSING_DUAL_DATA;
        case bkit::errc::generation_exhausted: return BKIT_ERR_GENERATION_EXHAUSTED;
        case bkit::errc::bad_argument: return BKIT_ERR_BAD_ARGUMENT;
    }
    return BKIT_ERR_INTERNAL;
}

template <typename Fn>
bkit_status guarded(Fn&& fn) {
    try {
        fn();
        return BKIT_OK;
    } catch (const bkit::error& e) {
        return to_status(e.code());
    } catch (...) {
        return BKIT_ERR_INTERNAL;
    }
}

bool valid_dim(int n) { return n == 2 || n == 3; }

Mat to_mat(int n, const double* entries) {
    const std::size_t un = static_cast<std::size_t>(n);
    return Mat(un, std::vector<double>(entries, entries + un * un));
}

void from_mat(const Mat& m, double* out) {
    std::memcpy(out, m.data().data(), m.data().size() * sizeof(double));
}

bkit::BasisGeometry to_geometry(int n, const double* lengths, const double* angles) {
    bkit::BasisGeometry g;
    g.n = n;
    for (int i = 0; i < n; ++i) g.lengths[i] = lengths[i];
    for (int k = 0; k < (n == 2 ? 1 : 3); ++k) g.angles[k] = angles[k];
    return g;
}

bkit::GammaMatrix to_gammas(int n, const double* cos_gammas) {
    return bkit::GammaMatrix(n, to_mat(n, cos_gammas));
}

}  // namespace

extern "C" {

const char* bkit_status_name(bkit_status status) {
    switch (status) {
        case BKIT_OK: return "Ok";
        case BKIT_ERR_NONPOSITIVE_LENGTH: return "NonPositiveLength";
        case BKIT_ERR_ANGLE_OUT_OF_RANGE: return "AngleOutOfRange";
        case BKIT_ERR_NOT_REALIZABLE: return "NotRealizable";
        case BKIT_ERR_COSINE_OUT_OF_RANGE: return "CosineOutOfRange";
        case BKIT_ERR_SINGULAR_BASIS: return "SingularBasis";
        case BKIT_ERR_SINGULAR_MIXED: return "SingularMixed";
        case BKIT_ERR_SINGULAR_MATRIX: return "SingularMatrix";
        case BKIT_ERR_NOT_POSITIVE_DEFINITE: return "NotPositiveDefinite";
        case BKIT_ERR_DEGENERATE_ALPHA: return "DegenerateAlpha";
        case BKIT_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case BKIT_ERR_FRAME_MISMATCH: return "FrameMismatch";
        case BKIT_ERR_UNRESOLVABLE: return "Unresolvable";
        case BKIT_ERR_MISSING_DUAL_DATA: return "MissingDualData";
        case BKIT_ERR_GENERATION_EXHAUSTED: return "GenerationExhausted";
        case BKIT_ERR_BAD_ARGUMENT: return "BadArgument";
        case BKIT_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

bkit_status bkit_build_metric(int n, const double* lengths, const double* angles,
                              double* metric) {
    if (!valid_dim(n) || !lengths || !angles || !metric) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] { from_mat(bkit::build_metric(to_geometry(n, lengths, angles)), metric); });
}

bkit_status bkit_geometry_from_metric(int n, const double* metric, double* lengths,
                                      double* angles) {
    if (!valid_dim(n) || !metric || !lengths || !angles) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const bkit::BasisGeometry g = bkit::geometry_from_metric(to_mat(n, metric));
        for (int i = 0; i < n; ++i) lengths[i] = g.lengths[i];
        for (int k = 0; k < g.angle_count(); ++k) angles[k] = g.angles[k];
    });
}

bkit_status bkit_gram(int n, const double* basis, double* gram) {
    if (!valid_dim(n) || !basis || !gram) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] { from_mat(bkit::gram_from_basis(to_mat(n, basis)), gram); });
}

bkit_status bkit_mixed(int n, const double* basis, const double* dual_basis,
                       double* mixed) {
    if (!valid_dim(n) || !basis || !dual_basis || !mixed) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        from_mat(bkit::mixed_from_bases(to_mat(n, basis), to_mat(n, dual_basis)), mixed);
    });
}

bkit_status bkit_cholesky(int n, const double* metric, double* factor) {
    if (!valid_dim(n) || !metric || !factor) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] { from_mat(bkit::cholesky_factor(to_mat(n, metric)), factor); });
}

bkit_status bkit_gammas_from_mixed(int n, const double* mixed,
                                   const double* primal_lengths,
                                   const double* dual_lengths, double* cos_gammas) {
    if (!valid_dim(n) || !mixed || !primal_lengths || !dual_lengths || !cos_gammas)
        return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const bkit::GammaMatrix g = bkit::gammas_from_mixed(
            to_mat(n, mixed), std::vector<double>(primal_lengths, primal_lengths + n),
            std::vector<double>(dual_lengths, dual_lengths + n));
        from_mat(g.cosines, cos_gammas);
    });
}

bkit_status bkit_dual_metric(int n, const double* metric, const double* mixed,
                             double* dual_metric) {
    if (!valid_dim(n) || !metric || !mixed || !dual_metric) return BKIT_ERR_BAD_ARGUMENT;
    return guarded(
        [&] { from_mat(bkit::dual_metric(to_mat(n, metric), to_mat(n, mixed)), dual_metric); });
}

bkit_status bkit_primal_metric(int n, const double* dual_metric, const double* mixed,
                               double* metric) {
    if (!valid_dim(n) || !dual_metric || !mixed || !metric) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        from_mat(bkit::primal_metric(to_mat(n, dual_metric), to_mat(n, mixed)), metric);
    });
}

namespace {

bkit_status transform_common(int n, bkit::TransformContext ctx, int to_dual,
                             const double* in, double* out) {
    return guarded([&] {
        bkit::CoordinateVector x;
        x.n = n;
        x.frame = to_dual ? bkit::Frame::primal : bkit::Frame::dual;
        x.coords.assign(in, in + n);
        const bkit::CoordinateVector r = bkit::transform_coords(x, ctx);
        for (int i = 0; i < n; ++i) out[i] = r.coords[i];
    });
}

}  // namespace

bkit_status bkit_transform_via_bases(int n, const double* basis, const double* dual_basis,
                                     int to_dual, const double* in, double* out) {
    if (!valid_dim(n) || !basis || !dual_basis || !in || !out) return BKIT_ERR_BAD_ARGUMENT;
    bkit::TransformContext ctx;
    ctx.basis = to_mat(n, basis);
    ctx.dual_basis = to_mat(n, dual_basis);
    return transform_common(n, ctx, to_dual, in, out);
}

bkit_status bkit_transform_via_metric(int n, const double* metric, const double* mixed,
                                      int to_dual, const double* in, double* out) {
    if (!valid_dim(n) || !metric || !mixed || !in || !out) return BKIT_ERR_BAD_ARGUMENT;
    bkit::TransformContext ctx;
    ctx.metric = to_mat(n, metric);
    ctx.mixed = to_mat(n, mixed);
    return transform_common(n, ctx, to_dual, in, out);
}

bkit_status bkit_transform_via_dual_metric(int n, const double* dual_metric,
                                           const double* mixed, int to_dual,
                                           const double* in, double* out) {
    if (!valid_dim(n) || !dual_metric || !mixed || !in || !out) return BKIT_ERR_BAD_ARGUMENT;
    bkit::TransformContext ctx;
    ctx.dual_metric_ = to_mat(n, dual_metric);
    ctx.mixed = to_mat(n, mixed);
    return transform_common(n, ctx, to_dual, in, out);
}

bkit_status bkit_quadratic_norm(int n, const double* x, const double* xstar,
                                const double* metric, const double* dual_metric,
                                const double* mixed, double* forms) {
    if (!valid_dim(n) || !x || !xstar || !metric || !dual_metric || !mixed || !forms)
        return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const auto f = bkit::quadratic_norm(
            std::vector<double>(x, x + n), std::vector<double>(xstar, xstar + n),
            to_mat(n, metric), to_mat(n, dual_metric), to_mat(n, mixed));
        for (int i = 0; i < 4; ++i) forms[i] = f[i];
    });
}

bkit_status bkit_delta_omega(const double* angles, double* delta, double* omega) {
    if (!angles || !delta || !omega) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const bkit::DeltaOmega d = bkit::delta_omega({angles[0], angles[1], angles[2]});
        *delta = d.delta;
        for (int i = 0; i < 3; ++i) omega[i] = d.omega[i];
    });
}

bkit_status bkit_cell_volume(int n, const double* lengths, const double* angles,
                             double* volume) {
    if (!valid_dim(n) || !lengths || !angles || !volume) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] { *volume = bkit::cell_volume(to_geometry(n, lengths, angles)); });
}

bkit_status bkit_residual_2d(double alpha12, const double* cos_gammas, int column,
                             double* residual) {
    if (!cos_gammas || !residual) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        bkit::AngleProblem p(2);
        p.alpha[0] = alpha12;
        p.gamma = to_gammas(2, cos_gammas);
        *residual = bkit::residual_2d(p, column);
    });
}

bkit_status bkit_residual_3d(const double* angles, const double* cos_gammas, int column,
                             double* residual) {
    if (!angles || !cos_gammas || !residual) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        bkit::AngleProblem p(3);
        for (int k = 0; k < 3; ++k) p.alpha[k] = angles[k];
        p.gamma = to_gammas(3, cos_gammas);
        *residual = bkit::residual_3d(p, column);
    });
}

bkit_status bkit_beta12_2d(double alpha12, const double* cos_gammas, double* cos_beta) {
    if (!cos_gammas || !cos_beta) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        bkit::AngleProblem p(2);
        p.alpha[0] = alpha12;
        p.gamma = to_gammas(2, cos_gammas);
        *cos_beta = bkit::beta12_2d(p);
    });
}

bkit_status bkit_beta_3d(const double* angles, const double* cos_gammas, int first,
                         int second, double* cos_beta) {
    if (!angles || !cos_gammas || !cos_beta) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        bkit::AngleProblem p(3);
        for (int k = 0; k < 3; ++k) p.alpha[k] = angles[k];
        p.gamma = to_gammas(3, cos_gammas);
        *cos_beta = bkit::beta_3d(p, first, second);
    });
}

bkit_status bkit_orthonormal_residual(int n, const double* cos_gammas, int column,
                                      double* residual) {
    if (!valid_dim(n) || !cos_gammas || !residual) return BKIT_ERR_BAD_ARGUMENT;
    return guarded(
        [&] { *residual = bkit::orthonormal_residual(to_gammas(n, cos_gammas), column); });
}

bkit_status bkit_orthonormal_beta(int n, const double* cos_gammas, int first, int second,
                                  double* cos_beta) {
    if (!valid_dim(n) || !cos_gammas || !cos_beta) return BKIT_ERR_BAD_ARGUMENT;
    return guarded(
        [&] { *cos_beta = bkit::orthonormal_beta(to_gammas(n, cos_gammas), first, second); });
}

bkit_status bkit_solve_alpha_2d(const double* cos_gammas, double tol, double* cos_alpha,
                                int* branch, double* denominator, double* candidates,
                                double* candidate_residuals) {
    if (!cos_gammas || !cos_alpha) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const bkit::AlphaSolution s = bkit::solve_alpha_2d(to_gammas(2, cos_gammas), tol);
        *cos_alpha = s.cos_alpha;
        if (branch) *branch = s.branch == bkit::SolveBranch::degenerate ? 1 : 0;
        if (denominator) *denominator = s.denominator;
        if (candidates) {
            candidates[0] = s.candidates[0];
            candidates[1] = s.candidates[1];
        }
        if (candidate_residuals) {
            candidate_residuals[0] = s.candidate_residuals[0];
            candidate_residuals[1] = s.candidate_residuals[1];
        }
    });
}

bkit_status bkit_reciprocal_basis(int n, const double* basis, double* dual_basis) {
    if (!valid_dim(n) || !basis || !dual_basis) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] { from_mat(bkit::reciprocal_basis(to_mat(n, basis)), dual_basis); });
}

bkit_status bkit_reciprocal_geometry(int n, const double* lengths, const double* angles,
                                     double* dual_lengths, double* dual_angles,
                                     double* cos_gamma_diag) {
    if (!valid_dim(n) || !lengths || !angles || !dual_lengths || !dual_angles ||
        !cos_gamma_diag)
        return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const bkit::BasisGeometry g = to_geometry(n, lengths, angles);
        const bkit::ReciprocalPair rp =
            n == 2 ? bkit::reciprocal_geometry_2d(g) : bkit::reciprocal_geometry_3d(g);
        for (int i = 0; i < n; ++i) {
            dual_lengths[i] = rp.dual.lengths[i];
            cos_gamma_diag[i] = rp.gamma_diag[i];
        }
        for (int k = 0; k < rp.dual.angle_count(); ++k) dual_angles[k] = rp.dual.angles[k];
    });
}

bkit_status bkit_verify(int dimension, uint64_t trials, uint64_t seed, double tolerance,
                        double condition_limit, bkit_report** out) {
    if (!out) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        bkit::TrialConfig cfg;
        cfg.dimension = dimension;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.tolerance = tolerance;
        cfg.condition_limit = condition_limit;
        *out = new bkit_report{bkit::verify_identities(cfg)};
    });
}

bkit_status bkit_check(int n, const double* metric, const double* dual_metric,
                       const double* mixed, double tolerance, bkit_report** out) {
    if (!valid_dim(n) || !metric || !dual_metric || !mixed || !out)
        return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        *out = new bkit_report{bkit::check_configuration(
            to_mat(n, metric), to_mat(n, dual_metric), to_mat(n, mixed), tolerance)};
    });
}

int bkit_report_pass(const bkit_report* report) {
    return report && report->report.pass ? 1 : 0;
}

bkit_status bkit_report_to_json(const bkit_report* report, char** json) {
    if (!report || !json) return BKIT_ERR_BAD_ARGUMENT;
    return guarded([&] {
        const std::string s = report->report.to_json();
        char* buf = new char[s.size() + 1];
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *json = buf;
    });
}

void bkit_report_free(bkit_report* report) { delete report; }

void bkit_string_free(char* s) { delete[] s; }

}  // extern "C"
