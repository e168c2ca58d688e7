#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bkit/types.hpp"

namespace bkit {

struct TrialConfig {
    int dimension = 3;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    double condition_limit = 100.0;
};

struct IdentityRecord {
    std::string name;
    std::uint64_t trials = 0;
    double max_residual = 0.0;
    std::uint64_t trial_index = 0;  // argmax trial (lowest index on ties)
    bool pass = true;
};

struct VerificationReport {
    TrialConfig config;
    std::vector<IdentityRecord> records;
    bool pass = true;

    std::string to_json() const;
};

// Counter-based deterministic generator (SplitMix64 output function over
// seed + counter); the same (seed, counter) always yields the same value.
std::uint64_t counter_random_u64(std::uint64_t seed, std::uint64_t counter);

// Uniform double in [-1, 1), bit-exact for a given (seed, counter).
double counter_random_unit(std::uint64_t seed, std::uint64_t counter);

// 2-norm condition number via closed-form eigenvalues of A^T A (n <= 3).
double condition_2norm(const Mat& a);

// Draws an invertible matrix with entries in [-1, 1), rejecting candidates
// with condition above the limit or |det| < 1e-3.  Deterministic in
// (seed, index); throws GenerationExhausted after 1e4 redraws.
Mat random_basis(int dimension, std::uint64_t seed, std::uint64_t index,
                 double condition_limit);

// Runs the full randomized identity sweep for the configured dimension:
// general (A, A*) trials, orthonormal-primal trials, and reciprocal trials.
VerificationReport verify_identities(const TrialConfig& cfg);

// Evaluates only the matrix-level identities on user-supplied (G, G*, Q).
VerificationReport check_configuration(const Mat& g, const Mat& gstar, const Mat& q,
                                       double tolerance);

}  // namespace bkit
