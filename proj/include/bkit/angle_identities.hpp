#pragma once

#include <array>
#include <optional>

#include "bkit/types.hpp"

namespace bkit {

// Joint angle data of a two-basis configuration: primal angles alpha,
// inter-set gamma cosines, and optionally the dual angles beta plus the
// two length sets (needed for the primal/dual swap).
struct AngleProblem {
    int n = 0;
    std::array<double, 3> alpha{};  // order a12, a13, a23; n=2 uses slot 0
    GammaMatrix gamma;
    std::optional<std::array<double, 3>> beta;
    std::optional<std::array<double, 3>> primal_lengths;
    std::optional<std::array<double, 3>> dual_lengths;

    explicit AngleProblem(int dim) : n(dim), gamma(dim) {}
};

// LHS - RHS of the 2D column identity
// cos^2(g_1c) + cos^2(g_2c) - 2 cos(a12) cos(g_1c) cos(g_2c) = sin^2(a12)
double residual_2d(const AngleProblem& p, int column);

// cos(beta_12) from alpha_12 and the four gamma cosines
double beta12_2d(const AngleProblem& p);

enum class SolveBranch { generic, degenerate };

struct AlphaSolution {
    double cos_alpha = 0.0;
    SolveBranch branch = SolveBranch::generic;
    double denominator = 0.0;
    // degenerate branch: the cos(g11 +/- g21) candidates and, per candidate,
    // the max |residual| over both columns
    std::array<double, 2> candidates{};
    std::array<double, 2> candidate_residuals{};
};

// Recovers cos(alpha_12) from the four gamma cosines.  Falls back to the
// cos(g11 +/- g21) candidates, picked by residual minimization over both
// columns, when the closed-form denominator vanishes.
AlphaSolution solve_alpha_2d(const GammaMatrix& gamma, double tol = 1e-8);

// LHS - Delta of the 3D column identity (g3 residuals)
double residual_3d(const AngleProblem& p, int column);

// cos(beta_pq) from the 3D alpha set and gamma columns p, q
double beta_3d(const AngleProblem& p, int first, int second);

// G = I specialization: sum_i cos^2(g_i,col) - 1
double orthonormal_residual(const GammaMatrix& gamma, int column);

// G = I specialization: cos(beta_pq) = sum_i cos(g_ip) cos(g_iq)
double orthonormal_beta(const GammaMatrix& gamma, int first, int second);

// Exchanges primal and dual roles: lengths swapped, alpha <-> beta,
// gamma transposed.  An exact involution.
AngleProblem swap_inverse(const AngleProblem& p);

}  // namespace bkit
