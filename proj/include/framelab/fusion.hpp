#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/ovframe.hpp"

namespace framelab {

struct FusionPair {
    Subspace subspace;
    double weight = 0.0;
};

/// Weighted subspaces ((W_i, c_i)) of C^n. A pair is degenerate iff W_i = {0}, and then c_i = 0.
class FusionSequence {
public:
    FusionSequence(Index ambient_dim, std::vector<FusionPair> pairs);

    Index ambient_dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    const std::vector<FusionPair>& pairs() const noexcept { return pairs_; }
    const Subspace& subspace(std::size_t i) const { return pairs_.at(i).subspace; }
    double weight(std::size_t i) const { return pairs_.at(i).weight; }
    bool is_degenerate(std::size_t i) const { return pairs_.at(i).subspace.is_zero(); }

private:
    Index n_;
    std::vector<FusionPair> pairs_;
};

struct QWitness {
    std::vector<Matrix> Q;
};

/// The sequence (c_i P_{W_i}).
OVSequence fusion_to_ov(const FusionSequence& w);

/// Indices where V_i = {0} or W_i = {0}.
std::vector<std::size_t> degenerate_indices(const FusionSequence& v, const FusionSequence& w);

/// S_W^{-1}; throws NotAFrame unless W is a fusion frame for the whole space.
Matrix fusion_frame_operator_inverse(const FusionSequence& w, const ToleranceConfig& tol = {});

/// Sum of c_i d_i P_{V_i} S_W^{-1} P_{W_i}.
Matrix gavruta_sum(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol = {});
bool gavruta_is_dual(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol = {});

struct FFDualCheck {
    bool ok = false;
    double reconstruction_residual = 0.0; ///< ||sum c_i d_i Q_i - I||
    std::vector<std::string> diagnostics;
};

FFDualCheck ffdual_check(const FusionSequence& v, const FusionSequence& w, const QWitness& q,
                         const ToleranceConfig& tol = {});
bool ffdual_verify(const FusionSequence& v, const FusionSequence& w, const QWitness& q,
                   const ToleranceConfig& tol = {});

struct FFDual {
    FusionSequence dual;
    QWitness witness;
};

/// Reweights a Găvruţa dual V of W into a fusion frame dual.
FFDual ffdual_from_gavruta(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol = {});

/// ((S_W^{-1} W_i, c_i ||S_W^{-1} P_{W_i}||)).
FusionSequence canonical_ffdual(const FusionSequence& w, const ToleranceConfig& tol = {});
FFDual canonical_ffdual_with_witness(const FusionSequence& w, const ToleranceConfig& tol = {});

struct FFDualParam {
    std::vector<Matrix> L; ///< n x n blocks L_i with sum L_i^* c_i P_{W_i} = 0
    QWitness witness;
};

/// Searches for blocks L_i such that A_i = (c_i S_W^{-1} + L_i^*) P_{W_i} has range in V_i and
/// norm d_i off the degenerate indices. Returns nullopt when no such family is found.
std::optional<FFDualParam> ffdual_characterize(const FusionSequence& v, const FusionSequence& w,
                                               const ToleranceConfig& tol = {});

/// ((ran A_i, ||A_i||)) with A_i = (c_i S_W^{-1} + L_i^*) P_{W_i}; L is (m*n) x n with T_W^* L = 0.
FFDual alternate_ffdual_with_witness(const FusionSequence& w, const Matrix& l, const ToleranceConfig& tol = {});
FusionSequence alternate_ffdual(const FusionSequence& w, const Matrix& l, const ToleranceConfig& tol = {});

struct TightGroup {
    double lambda = 0.0; ///< S_W acts as lambda on every W_i of the group
    std::vector<std::size_t> indices;
};

struct TightPartition {
    std::vector<TightGroup> groups; ///< ascending lambda
    std::vector<std::size_t> degenerate;
};

/// Splits W into mutually orthogonal tight pieces, or nullopt if some W_i is not inside an
/// eigenspace of S_W.
std::optional<TightPartition> tight_orthogonal_decomposition(const FusionSequence& w,
                                                             const ToleranceConfig& tol = {});

struct DesiderataReport {
    int trials = 0;
    int d1_failures = 0;
    int d2a_failures = 0;
    int d2b_failures = 0;
    int d3_failures = 0;
    int d4_failures = 0;

    bool d1() const { return d1_failures == 0; }
    bool d2a() const { return d2a_failures == 0; }
    bool d2b() const { return d2b_failures == 0; }
    bool d3() const { return d3_failures == 0; }
    bool d4() const { return d4_failures == 0; }
    bool all() const { return d1() && d2a() && d2b() && d3() && d4(); }
};

DesiderataReport desiderata_suite(const ToleranceConfig& tol, std::uint64_t seed, int trials);

} // namespace framelab
