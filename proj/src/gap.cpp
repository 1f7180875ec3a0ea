#include "framelab/gap.hpp"

#include <algorithm>
#include <cmath>

namespace framelab {

namespace {

void require_same_ambient(const Subspace& v, const Subspace& w) {
    if (v.ambient_dim() != w.ambient_dim())
        fail(ErrorKind::InvalidInput, "subspaces live in different ambient spaces");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

} // namespace

double gap_delta(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    if (v.is_zero())
        return 0.0;
    const Matrix& bv = v.basis();
    const Matrix& bw = w.basis();
    return clamp01(op_norm(bv - bw * (bw.adjoint() * bv)));
}

double infimum_cosine(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    if (v.is_zero())
        return 1.0;
    if (w.dim() < v.dim())
        return 0.0;
    const RealVector sv = singular_values(w.basis().adjoint() * v.basis());
    return clamp01(sv(v.dim() - 1));
}

GapReport gap_Delta(const Subspace& v, const Subspace& w) {
    GapReport r;
    r.delta_vw = gap_delta(v, w);
    r.delta_wv = gap_delta(w, v);
    r.R_vw = infimum_cosine(v, w);
    r.Delta = std::max(r.delta_vw, r.delta_wv);
    r.below_one = r.Delta < 1.0;
    r.projector_discrepancy = std::abs(r.Delta - op_norm(proj(v) - proj(w)));
    return r;
}

RangeGapBound gap_range_bound(const Matrix& t, const Matrix& s, double c, const ToleranceConfig& tol) {
    if (t.rows() != s.rows() || t.cols() != s.cols())
        fail(ErrorKind::InvalidInput, "operators have different shapes");
    if (!(c > 0.0) || !std::isfinite(c))
        fail(ErrorKind::InvalidInput, "lower bound c must be positive");
    if (numerical_rank(t, tol) > 0 && c > min_nonzero_sv(t, tol) * (1.0 + tol.tol_eq))
        fail(ErrorKind::InvalidInput, "T is not bounded below by c on (ker T)^perp");
    RangeGapBound r;
    r.bound = op_norm(t - s) / c;
    r.measured = gap_delta(range_basis(t, tol), range_basis(s, tol));
    r.holds = r.measured <= r.bound + tol.tol_eq;
    return r;
}

BoundedBelowReport bounded_below_consequences(const Subspace& v, const Subspace& w,
                                              const ToleranceConfig& tol) {
    BoundedBelowReport r;
    r.delta_vw = gap_delta(v, w);
    r.delta_wv = gap_delta(w, v);
    r.Delta = std::max(r.delta_vw, r.delta_wv);
    r.min_sv_pw_on_v = infimum_cosine(v, w);
    r.first_part_applicable = r.delta_vw < 1.0 - tol.tol_eq;
    r.second_part_applicable = r.Delta < 1.0 - tol.tol_eq;
    if (r.first_part_applicable)
        r.trivial_intersection = r.min_sv_pw_on_v > tol.tol_rank;
    if (r.second_part_applicable) {
        r.deltas_equal = std::abs(r.delta_vw - r.delta_wv) <= tol.tol_eq;
        const double reverse = infimum_cosine(w, v);
        r.isomorphisms = v.dim() == w.dim() && r.min_sv_pw_on_v > tol.tol_rank && reverse > tol.tol_rank;
    }
    return r;
}

} // namespace framelab
