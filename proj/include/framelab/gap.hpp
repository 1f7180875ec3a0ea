#pragma once

#include <optional>

#include "framelab/linalg.hpp"

namespace framelab {

struct GapReport {
    double delta_vw = 0.0; ///< gap from V to W
    double delta_wv = 0.0;
    double R_vw = 1.0;     ///< infimum cosine angle from V to W
    double Delta = 0.0;    ///< max of both directions
    bool below_one = true;
    double projector_discrepancy = 0.0; ///< |Delta - ||P_V - P_W|||
};

/// sup { ||v - P_W v|| : v in V, ||v|| = 1 }; 0 when V = {0}.
double gap_delta(const Subspace& v, const Subspace& w);
/// inf { ||P_W v|| : v in V, ||v|| = 1 }, computed directly; 1 when V = {0}.
double infimum_cosine(const Subspace& v, const Subspace& w);
GapReport gap_Delta(const Subspace& v, const Subspace& w);

struct RangeGapBound {
    double bound = 0.0;    ///< ||T - S|| / c
    double measured = 0.0; ///< delta(ran T, ran S)
    bool holds = true;
};

/// Requires ||Tx|| >= c||x|| on (ker T)^perp, i.e. c <= smallest nonzero singular value of T.
RangeGapBound gap_range_bound(const Matrix& t, const Matrix& s, double c, const ToleranceConfig& tol = {});

struct BoundedBelowReport {
    double delta_vw = 0.0;
    double delta_wv = 0.0;
    double Delta = 0.0;
    double min_sv_pw_on_v = 0.0; ///< smallest singular value of P_W|V
    bool first_part_applicable = false;  ///< delta(V,W) < 1
    bool second_part_applicable = false; ///< Delta(V,W) < 1
    // Unset when the corresponding hypothesis fails.
    std::optional<bool> trivial_intersection;
    std::optional<bool> deltas_equal;
    std::optional<bool> isomorphisms;
};

BoundedBelowReport bounded_below_consequences(const Subspace& v, const Subspace& w,
                                              const ToleranceConfig& tol = {});

} // namespace framelab
