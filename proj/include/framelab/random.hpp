#pragma once

#include <cstdint>
#include <random>

#include "framelab/fusion.hpp"
#include "framelab/ovframe.hpp"

namespace framelab {

/// Seeded generator for randomized instances. Every suite owns its own Rng.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
    bool coin(double p = 0.5) { return uniform() < p; }
    std::uint64_t next_seed() { return engine_(); }

    Scalar scalar(bool complex) { return {normal(), complex ? normal() : 0.0}; }
    Matrix gaussian(Index rows, Index cols, bool complex);
    Vector gaussian_vector(Index n, bool complex) { return gaussian(n, 1, complex).col(0); }

private:
    std::mt19937_64 engine_;
};

Matrix random_unitary(Rng& rng, Index n, bool complex);
Subspace random_subspace(Rng& rng, Index n, Index r, bool complex);

/// Generic sequence; blocks k x n, rank of the analysis operator capped at `rank`.
OVSequence random_ov_sequence(Rng& rng, Index n, Index k, Index m, Index rank, bool complex);

/// A frame sequence whose lower bound alpha is at least `min_alpha`.
OVSequence random_frame_sequence(Rng& rng, Index n, Index k, Index m, Index rank, bool complex,
                                 double min_alpha = 0.05);

/// Random element of the dual parameter space, normalized to operator norm `norm`.
DualParam random_dual_param(Rng& rng, const OVSequence& a, double norm, const ToleranceConfig& tol = {});

/// Random fusion frame for C^n with m pairs, nondegenerate unless `allow_degenerate`.
FusionSequence random_fusion_frame(Rng& rng, Index n, Index m, bool complex, bool allow_degenerate = false,
                                   double min_alpha = 0.05);

/// Orthonormal basis of C^n grouped into consecutive blocks with unit weights.
FusionSequence random_parseval_fusion_frame(Rng& rng, Index n, bool complex);

/// Unitary exp(K) for a skew-Hermitian K.
Matrix unitary_exp(const Matrix& skew);

/// B with ||T_A - T_B|| = target_mu (to bisection accuracy). With `rotate` the frame
/// subspace is moved as well, so H_B != H_A in general.
OVSequence random_perturbation(Rng& rng, const OVSequence& a, double target_mu, bool rotate,
                               const ToleranceConfig& tol = {});

/// V with ||T_W - T_V|| = target_mu, obtained by rotating every W_i and rescaling its weight.
FusionSequence random_fusion_perturbation(Rng& rng, const FusionSequence& w, double target_mu,
                                          const ToleranceConfig& tol = {});

} // namespace framelab
