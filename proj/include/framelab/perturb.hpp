#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/fusion.hpp"
#include "framelab/ovframe.hpp"

namespace framelab {

/// ||T_A - T_B||.
double mu(const OVSequence& a, const OVSequence& b);

struct PerturbReport {
    double mu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta_HAHB = 0.0; ///< delta(H_A, H_B)
    double Delta_HAHB = 0.0; ///< Delta(H_A, H_B)
    double delta_HB_HAperp = 0.0;
    double predicted_lower = 0.0; ///< (sqrt(alpha) - mu)^2
    double predicted_upper = 0.0; ///< (delta(H_B, H_A^perp) sqrt(beta) + mu)^2
    double measured_lower = 0.0;  ///< bounds of B
    double measured_upper = 0.0;
    double range_gap_bound = 0.0; ///< mu / (sqrt(alpha) - mu)
    double measured_range_gap = 0.0;
    bool applicable = false; ///< mu < sqrt(alpha) and Delta < 1

    // Checked without the extra hypotheses.
    double gap_bound = 0.0;            ///< mu / sqrt(alpha)
    double range_delta = 0.0;          ///< delta(ran T_A, ran T_B)
    double max_block_deviation = 0.0;  ///< max ||A_i - B_i||
    bool a_is_frame = false;
    bool b_is_frame = false;

    std::vector<std::string> violations;
    bool holds() const { return violations.empty(); }
};

PerturbReport perturbation_report(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol = {});

struct DualDeviationReport {
    double mu = 0.0;
    double alpha = 0.0;
    double Delta = 0.0;
    double measured = 0.0; ///< ||T_{dual of B} - T_{dual of A}||
    double bound = 0.0;
    double lambda = 0.0;
    bool is_frame_case = false;
    bool applicable = false;
    std::optional<double> prior_work_bound; ///< frame case only
    bool holds = true; ///< measured <= bound + tol_eq; vacuous when not applicable
};

/// Deviation between the canonical duals of A and B.
DualDeviationReport canonical_dual_deviation(const OVSequence& a, const OVSequence& b,
                                             const ToleranceConfig& tol = {});

/// The frame-case bound 2 mu / (sqrt(alpha) (sqrt(alpha) - mu)) and its older counterpart.
double canonical_frame_bound(double mu, double alpha);
double prior_canonical_frame_bound(double mu, double alpha, double beta);
double canonical_sequence_bound(double mu, double alpha, double delta);
double stable_dual_lambda(double mu, double alpha, double delta, double l_norm);
double stable_dual_lambda_frame(double mu, double alpha, double l_norm);

struct StableDual {
    OVSequence dual;
    DualParam M; ///< parameter of the returned dual in D(B)
    DualDeviationReport report;
    bool is_dual = false;
};

/// The dual B~(P_{ker T_B^*} T_{A~(L)} P_B) of B close to A~(L). Throws NotApplicable
/// unless mu < sqrt(alpha) and Delta(H_A, H_B) < 1.
StableDual stable_dual(const OVSequence& a, const OVSequence& b, const DualParam& l, const ToleranceConfig& tol = {});

struct BestApproxReport {
    int trials = 0;
    double stable_distance = 0.0;    ///< ||T_{B~_L} - T_{A~(L)}||
    double min_other_distance = 0.0; ///< over the sampled M
    int distance_violations = 0;
    int pointwise_violations = 0;
    double hs_projection_residual = 0.0; ///< worst defect of the affine projection formula
    double canonical_excess = 0.0;       ///< ||T_{B~} - T_{A~}||^2 - ||T_{B~_0} - T_{A~}||^2 (L = 0)
    double injectivity_constant = 0.0;   ///< smallest singular value of P_{ker T_B^*} T_A S_A^{-1}
    double excess_identity_residual = 0.0;
    bool canonical_strictly_farther = false;
    bool holds = false;
};

/// Frame case only; throws NotApplicable otherwise.
BestApproxReport best_approx_check(const OVSequence& a, const OVSequence& b, const DualParam& l, int trials,
                                   std::uint64_t seed, const ToleranceConfig& tol = {});

struct DualBijection {
    std::vector<DualParam> basis_a; ///< HS-orthonormal basis of the parameters of A
    std::vector<DualParam> basis_b;
    Matrix forward; ///< coordinates of R on the bases, dim_b x dim_a
    Matrix inverse; ///< coordinates of Q, dim_a x dim_b
    double qr_residual = 0.0; ///< max ||Q R X - X|| over basis_a
    double rq_residual = 0.0;
    bool holds = false;
};

/// X -> P_{ker T_B^*} X P_B, from parameters of A to parameters of B.
Matrix bijection_forward(const OVSequence& a, const OVSequence& b, const Matrix& x, const ToleranceConfig& tol = {});
/// Inverse of bijection_forward.
Matrix bijection_inverse(const OVSequence& a, const OVSequence& b, const Matrix& y, const ToleranceConfig& tol = {});

/// Throws NotApplicable unless mu < sqrt(alpha)/2 and Delta(H_A, H_B) < 1.
DualBijection dual_bijection(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol = {});

/// Norm of the defect of the four-term splitting of T_{B~(M)} - T_{A~(L)}.
double difference_decomposition_check(const OVSequence& a, const OVSequence& b, const DualParam& l,
                                      const DualParam& m, const ToleranceConfig& tol = {});

struct BoundCheck {
    double bound = 0.0;
    double measured = 0.0;
    bool holds = false;
};

/// ||P - Q|| against sqrt(1/c^2 + 1/d^2) ||cP - dQ||.
BoundCheck pq_projection_bound(const Matrix& p, const Matrix& q, double c, double d, const ToleranceConfig& tol = {});

struct RLambdaReport {
    double lambda = 0.0;
    double c = 0.0;
    double d = 0.0;
    bool invertible = false;
    double projector_residual = 0.0; ///< ||P_{AW} - R^{-*} P_W A^*||
    double inverse_lower = 0.0;      ///< d^{-1} min(1, cd/lambda)
    double inverse_upper = 0.0;      ///< c^{-1} max(1, cd/lambda)
    double inverse_min = 0.0;        ///< smallest singular value of R^{-1}
    double inverse_max = 0.0;
    int sandwich_violations = 0;     ///< over sampled x, both for R^{-1} and P_{AW}
    bool holds = false;
};

/// Pass c <= 0 or d <= 0 to use the extreme singular values of A.
RLambdaReport r_lambda_suite(const Matrix& a, const Subspace& w, double lambda, double c, double d,
                             std::uint64_t seed = 0, int samples = 20, const ToleranceConfig& tol = {});

struct TransformedFusionReport {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0; ///< ||A|| ||A^{-1}||
    double predicted_lower = 0.0;
    double predicted_upper = 0.0;
    double measured_lower = 0.0;
    double measured_upper = 0.0;
    bool holds = false;
};

FusionSequence transform_fusion(const FusionSequence& w, const Matrix& a, const ToleranceConfig& tol = {});
TransformedFusionReport transformed_fusion_bounds(const FusionSequence& w, const Matrix& a,
                                                  const ToleranceConfig& tol = {});

struct FusionStabilityReport {
    double mu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double tau = 0.0;
    double c = 0.0;
    double d = 0.0;
    double C = 0.0;
    std::optional<double> measured; ///< ||T of the canonical FF-dual of W - same for V||
    double max_weight_gap = 0.0;    ///< max |c_i - d_i|
    double max_pair_deviation = 0.0; ///< max ||c_i P_{W_i} - d_i P_{V_i}||
    bool weight_consequence_holds = false;
    bool applicable = false;
    bool holds = true;
};

FusionStabilityReport fusion_stability(const FusionSequence& w, const FusionSequence& v,
                                       const ToleranceConfig& tol = {});
double fusion_stability_constant(double mu, double alpha, double beta, double tau);

} // namespace framelab
