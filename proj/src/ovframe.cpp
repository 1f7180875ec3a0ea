#include "framelab/ovframe.hpp"

#include <cmath>
#include <string>

namespace framelab {

OVSequence::OVSequence(Index domain_dim, Index codomain_dim, std::vector<Matrix> blocks)
    : n_(domain_dim), k_(codomain_dim), blocks_(std::move(blocks)) {
    if (n_ < 0 || k_ < 0)
        fail(ErrorKind::InvalidInput, "negative dimension");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].rows() != k_ || blocks_[i].cols() != n_)
            fail(ErrorKind::InvalidInput, "block " + std::to_string(i) + " has the wrong shape");
        require_finite(blocks_[i], "block");
    }
}

OVSequence OVSequence::from_analysis(const Matrix& analysis, Index codomain_dim) {
    if (codomain_dim <= 0 || analysis.rows() % codomain_dim != 0)
        fail(ErrorKind::InvalidInput, "analysis operator rows are not a multiple of the codomain dimension");
    const Index m = analysis.rows() / codomain_dim;
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i)
        blocks.emplace_back(analysis.middleRows(i * codomain_dim, codomain_dim));
    return OVSequence(analysis.cols(), codomain_dim, std::move(blocks));
}

Matrix analysis_operator(const OVSequence& a) {
    const Index k = a.codomain_dim();
    Matrix t(static_cast<Index>(a.size()) * k, a.domain_dim());
    for (std::size_t i = 0; i < a.size(); ++i)
        t.middleRows(static_cast<Index>(i) * k, k) = a.block(i);
    return t;
}

Matrix frame_operator(const OVSequence& a) {
    Matrix s = zeros(a.domain_dim(), a.domain_dim());
    for (const Matrix& b : a.blocks())
        s += b.adjoint() * b;
    return s;
}

Subspace frame_subspace(const OVSequence& a, const ToleranceConfig& tol) {
    return range_basis(analysis_operator(a).adjoint(), tol);
}

FrameReport classify(const OVSequence& a, const ToleranceConfig& tol) {
    FrameReport r;
    const RealVector sv = singular_values(analysis_operator(a));
    if (sv.size() == 0 || sv(0) == 0.0)
        return r;
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol.tol_rank * sv(0))
        ++rank;
    r.bessel_bound = sv(0) * sv(0);
    r.lower_bound = sv(rank - 1) * sv(rank - 1);
    r.frame_subspace_dim = rank;
    // Finite-dimensional ranges are closed: every nonzero sequence is a frame sequence.
    r.is_frame_sequence = true;
    r.is_frame = rank == a.domain_dim();
    r.is_tight = std::abs(r.bessel_bound - r.lower_bound) <= tol.tol_eq * std::max(1.0, r.bessel_bound);
    r.is_parseval = r.is_tight && std::abs(r.bessel_bound - 1.0) <= tol.tol_eq;
    return r;
}

Matrix frame_operator_pseudo_inverse(const OVSequence& a, const ToleranceConfig& tol) {
    return restricted_inverse(frame_operator(a), frame_subspace(a, tol), tol);
}

OVSequence canonical_dual(const OVSequence& a, const ToleranceConfig& tol) {
    const Matrix g = frame_operator_pseudo_inverse(a, tol);
    std::vector<Matrix> blocks;
    blocks.reserve(a.size());
    for (const Matrix& b : a.blocks())
        blocks.emplace_back(b * g);
    return OVSequence(a.domain_dim(), a.codomain_dim(), std::move(blocks));
}

std::vector<DualParam> dual_param_space(const OVSequence& a, const ToleranceConfig& tol) {
    const Matrix t = analysis_operator(a);
    const Subspace ker = kernel_basis(t.adjoint(), tol);
    const Subspace ha = frame_subspace(a, tol);
    std::vector<DualParam> basis;
    basis.reserve(static_cast<std::size_t>(ker.dim() * ha.dim()));
    for (Index p = 0; p < ker.dim(); ++p)
        for (Index q = 0; q < ha.dim(); ++q)
            basis.push_back({ker.basis().col(p) * ha.basis().col(q).adjoint()});
    return basis;
}

void validate_dual_param(const OVSequence& a, const DualParam& l, const ToleranceConfig& tol) {
    const Matrix t = analysis_operator(a);
    if (l.L.rows() != t.rows() || l.L.cols() != t.cols())
        fail(ErrorKind::InvalidDualParam, "L has the wrong shape");
    if (!l.L.allFinite())
        fail(ErrorKind::InvalidDualParam, "L has non-finite entries");
    const double scale = scale_of(op_norm(t), op_norm(l.L));
    if (op_norm(t.adjoint() * l.L) > tol.tol_eq * scale)
        fail(ErrorKind::InvalidDualParam, "T_A^* L != 0");
    const Matrix pa = proj(frame_subspace(a, tol));
    if (op_norm(l.L * pa - l.L) > tol.tol_eq * scale)
        fail(ErrorKind::InvalidDualParam, "L does not vanish on the orthogonal complement of H_A");
}

OVSequence make_dual(const OVSequence& a, const DualParam& l, const ToleranceConfig& tol) {
    validate_dual_param(a, l, tol);
    const Matrix pa = proj(frame_subspace(a, tol));
    const Matrix t_dual = analysis_operator(a) * frame_operator_pseudo_inverse(a, tol) + l.L * pa;
    return OVSequence::from_analysis(t_dual, a.codomain_dim());
}

DualCheck dual_check(const OVSequence& a, const OVSequence& d, const ToleranceConfig& tol) {
    if (!a.same_shape(d))
        fail(ErrorKind::InvalidInput, "sequences have incompatible shapes");
    const Matrix ta = analysis_operator(a);
    const Matrix td = analysis_operator(d);
    const Subspace ha = frame_subspace(a, tol);
    const Matrix pa = proj(ha);
    DualCheck c;
    c.reconstruction_residual = op_norm(td.adjoint() * ta - pa);
    c.containment_residual = op_norm((identity(a.domain_dim()) - pa) * td.adjoint());
    c.is_dual = c.reconstruction_residual <= tol.tol_eq && c.containment_residual <= tol.tol_eq;
    c.ranges_equal = c.is_dual && frame_subspace(d, tol).dim() == ha.dim();
    return c;
}

bool is_dual(const OVSequence& a, const OVSequence& d, const ToleranceConfig& tol) {
    return dual_check(a, d, tol).is_dual;
}

OVSequence from_vectors(const std::vector<Vector>& vectors, Index domain_dim) {
    std::vector<Matrix> blocks;
    blocks.reserve(vectors.size());
    for (const Vector& v : vectors) {
        if (v.size() != domain_dim)
            fail(ErrorKind::InvalidInput, "vectors do not share a common dimension");
        blocks.emplace_back(v.adjoint());
    }
    return OVSequence(domain_dim, 1, std::move(blocks));
}

OVSequence from_vectors(const std::vector<Vector>& vectors) {
    if (vectors.empty())
        fail(ErrorKind::InvalidInput, "empty vector list has no dimension");
    return from_vectors(vectors, vectors.front().size());
}

std::vector<Vector> to_vectors(const OVSequence& a, const ToleranceConfig& tol) {
    std::vector<Vector> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Matrix& b = a.block(i);
        const Subspace ran = range_basis(b, tol);
        if (ran.dim() == 0) {
            out.emplace_back(Vector::Zero(a.domain_dim()));
            continue;
        }
        if (ran.dim() > 1)
            fail(ErrorKind::RankError, "block " + std::to_string(i) + " has rank " + std::to_string(ran.dim()));
        Vector e = ran.basis().col(0);
        Index lead = 0;
        while (lead < e.size() && std::abs(e(lead)) <= tol.tol_rank)
            ++lead;
        e *= std::conj(e(lead)) / std::abs(e(lead));
        // A_i = e phi^*  =>  phi = A_i^* e.
        out.emplace_back(b.adjoint() * e);
    }
    return out;
}

} // namespace framelab
