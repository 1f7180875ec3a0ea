#pragma once

#include <vector>

#include "framelab/linalg.hpp"

namespace framelab {

/// Finite operator-valued sequence (A_i), each block k x n, i.e. A_i : C^n -> C^k.
/// The block order fixes the stacking order of the analysis operator.
class OVSequence {
public:
    OVSequence(Index domain_dim, Index codomain_dim, std::vector<Matrix> blocks = {});

    /// Splits a (m*k) x n analysis operator into its m blocks.
    static OVSequence from_analysis(const Matrix& analysis, Index codomain_dim);

    Index domain_dim() const noexcept { return n_; }
    Index codomain_dim() const noexcept { return k_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
    const Matrix& block(std::size_t i) const { return blocks_.at(i); }

    bool same_shape(const OVSequence& other) const noexcept {
        return n_ == other.n_ && k_ == other.k_ && blocks_.size() == other.blocks_.size();
    }

private:
    Index n_;
    Index k_;
    std::vector<Matrix> blocks_;
};

struct FrameReport {
    double bessel_bound = 0.0; ///< beta
    double lower_bound = 0.0;  ///< alpha, 0 unless a frame sequence
    Index frame_subspace_dim = 0;
    bool is_frame_sequence = false;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
};

/// Parameter L of an alternate dual, stored as a full (m*k) x n matrix vanishing on H_A^perp.
struct DualParam {
    Matrix L;
};

Matrix analysis_operator(const OVSequence& a);
/// Sum of A_i^* A_i.
Matrix frame_operator(const OVSequence& a);
/// H_A, the closed span of the ranges of the A_i^*.
Subspace frame_subspace(const OVSequence& a, const ToleranceConfig& tol = {});
FrameReport classify(const OVSequence& a, const ToleranceConfig& tol = {});

/// (S_A|H_A)^{-1} P_A.
Matrix frame_operator_pseudo_inverse(const OVSequence& a, const ToleranceConfig& tol = {});

OVSequence canonical_dual(const OVSequence& a, const ToleranceConfig& tol = {});

/// Orthonormal (Hilbert-Schmidt) basis of {L : T_A^* L = 0, L P_A = L}.
std::vector<DualParam> dual_param_space(const OVSequence& a, const ToleranceConfig& tol = {});

/// Throws InvalidDualParam when L is not an admissible parameter for `a`.
void validate_dual_param(const OVSequence& a, const DualParam& l, const ToleranceConfig& tol = {});

/// The dual with analysis operator (T_A (S_A|H_A)^{-1} + L) P_A.
OVSequence make_dual(const OVSequence& a, const DualParam& l, const ToleranceConfig& tol = {});

struct DualCheck {
    bool is_dual = false;
    double reconstruction_residual = 0.0; ///< ||T_D^* T_A - P_A||
    double containment_residual = 0.0;    ///< ||(I - P_A) T_D^*||
    bool ranges_equal = false;            ///< H_D == H_A
};

DualCheck dual_check(const OVSequence& a, const OVSequence& d, const ToleranceConfig& tol = {});
bool is_dual(const OVSequence& a, const OVSequence& d, const ToleranceConfig& tol = {});

/// Vector frame (phi_i) as the 1 x n blocks phi_i^*.
OVSequence from_vectors(const std::vector<Vector>& vectors);
OVSequence from_vectors(const std::vector<Vector>& vectors, Index domain_dim);
/// Inverse of from_vectors for sequences with blocks of rank <= 1. For A_i = e_i phi_i^*
/// the unit vector e_i is the leading left singular vector, rotated so that its first
/// nonzero entry is real positive.
std::vector<Vector> to_vectors(const OVSequence& a, const ToleranceConfig& tol = {});

} // namespace framelab
