#include "framelab/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/gap.hpp"
#include "framelab/random.hpp"

namespace framelab {

namespace {

struct FrameData {
    Matrix t;
    Subspace h;
    Matrix p;
    Matrix g; ///< (S|H)^{-1} P
    FrameReport rep;
};

FrameData frame_data(const OVSequence& a, const ToleranceConfig& tol) {
    FrameData f;
    f.t = analysis_operator(a);
    f.rep = classify(a, tol);
    f.h = frame_subspace(a, tol);
    f.p = proj(f.h);
    f.g = restricted_inverse(frame_operator(a), f.h, tol);
    return f;
}

void require_frame_sequence(const FrameReport& r, const char* what) {
    if (!r.is_frame_sequence)
        fail(ErrorKind::NotAFrameSequence, std::string(what) + " is not a frame sequence");
}

void require_same_shape(const OVSequence& a, const OVSequence& b) {
    if (!a.same_shape(b))
        fail(ErrorKind::InvalidInput, "sequences have incompatible shapes");
}

bool within(double measured, double bound, double tol_eq) {
    return measured <= bound + tol_eq;
}

} // namespace

double mu(const OVSequence& a, const OVSequence& b) {
    require_same_shape(a, b);
    return op_norm(analysis_operator(a) - analysis_operator(b));
}

double canonical_frame_bound(double mu, double alpha) {
    const double sa = std::sqrt(alpha);
    return 2.0 * mu / (sa * (sa - mu));
}

double prior_canonical_frame_bound(double mu, double alpha, double beta) {
    const double sa = std::sqrt(alpha);
    return (alpha + 2.0 * beta + std::sqrt(beta) * mu) * mu / (alpha * (sa - mu) * (sa - mu));
}

double canonical_sequence_bound(double mu, double alpha, double delta) {
    const double sa = std::sqrt(alpha);
    return (2.0 * mu + (2.0 * sa - mu) * delta) / (sa * (sa - mu));
}

double stable_dual_lambda(double mu, double alpha, double delta, double l_norm) {
    const double sa = std::sqrt(alpha);
    return (mu + (2.0 * sa - mu) * delta) / (sa * (sa - mu)) + (mu / (sa - mu) + delta) * l_norm;
}

double stable_dual_lambda_frame(double mu, double alpha, double l_norm) {
    const double sa = std::sqrt(alpha);
    return mu / (sa - mu) * (1.0 / sa + l_norm);
}

PerturbReport perturbation_report(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    const FrameReport ra = classify(a, tol);
    require_frame_sequence(ra, "A");
    const FrameReport rb = classify(b, tol);
    const Matrix ta = analysis_operator(a);
    const Matrix tb = analysis_operator(b);
    const Subspace ha = frame_subspace(a, tol);
    const Subspace hb = frame_subspace(b, tol);

    PerturbReport r;
    r.mu = op_norm(ta - tb);
    r.alpha = ra.lower_bound;
    r.beta = ra.bessel_bound;
    const GapReport g = gap_Delta(ha, hb);
    r.delta_HAHB = g.delta_vw;
    r.Delta_HAHB = g.Delta;
    r.delta_HB_HAperp = gap_delta(hb, ha.complement(tol));
    const double sa = std::sqrt(r.alpha);
    r.predicted_lower = sa > r.mu ? (sa - r.mu) * (sa - r.mu) : 0.0;
    r.predicted_upper = std::pow(r.delta_HB_HAperp * std::sqrt(r.beta) + r.mu, 2);
    r.measured_lower = rb.lower_bound;
    r.measured_upper = rb.bessel_bound;
    r.range_gap_bound = sa > r.mu ? r.mu / (sa - r.mu) : std::numeric_limits<double>::infinity();
    const Subspace ran_a = range_basis(ta, tol);
    const Subspace ran_b = range_basis(tb, tol);
    r.measured_range_gap = gap_Delta(ran_a, ran_b).Delta;
    r.applicable = r.mu < sa && r.Delta_HAHB < 1.0 - tol.tol_eq;

    r.gap_bound = r.mu / sa;
    r.range_delta = gap_delta(ran_a, ran_b);
    for (std::size_t i = 0; i < a.size(); ++i)
        r.max_block_deviation = std::max(r.max_block_deviation, op_norm(a.block(i) - b.block(i)));
    r.a_is_frame = ra.is_frame;
    r.b_is_frame = rb.is_frame;

    if (!within(r.max_block_deviation, r.mu, tol.tol_eq))
        r.violations.push_back("block deviation exceeds mu");
    if (!within(r.delta_HAHB, r.gap_bound, tol.tol_eq))
        r.violations.push_back("delta(H_A, H_B) exceeds mu / sqrt(alpha)");
    if (!within(r.range_delta, r.gap_bound, tol.tol_eq))
        r.violations.push_back("delta(ran T_A, ran T_B) exceeds mu / sqrt(alpha)");
    if (r.applicable) {
        if (!rb.is_frame_sequence)
            r.violations.push_back("B is not a frame sequence");
        if (r.measured_lower < r.predicted_lower - tol.tol_eq)
            r.violations.push_back("lower bound of B below (sqrt(alpha) - mu)^2");
        if (!within(r.measured_upper, r.predicted_upper, tol.tol_eq))
            r.violations.push_back("upper bound of B above the predicted value");
        if (!within(r.measured_range_gap, r.range_gap_bound, tol.tol_eq))
            r.violations.push_back("Delta(ran T_A, ran T_B) exceeds mu / (sqrt(alpha) - mu)");
        if (ra.is_frame && !rb.is_frame)
            r.violations.push_back("A is a frame but B is not");
    }
    return r;
}

DualDeviationReport canonical_dual_deviation(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    const FrameReport ra = classify(a, tol);
    require_frame_sequence(ra, "A");
    const FrameReport rb = classify(b, tol);

    DualDeviationReport r;
    r.mu = mu(a, b);
    r.alpha = ra.lower_bound;
    r.Delta = gap_Delta(frame_subspace(a, tol), frame_subspace(b, tol)).Delta;
    r.is_frame_case = ra.is_frame && rb.is_frame;
    const double sa = std::sqrt(r.alpha);
    r.applicable = r.mu < sa && r.Delta < 1.0 - tol.tol_eq && rb.is_frame_sequence;
    r.measured = mu(canonical_dual(a, tol), canonical_dual(b, tol));
    if (!r.applicable) {
        r.bound = std::numeric_limits<double>::infinity();
        r.lambda = r.bound;
        return r;
    }
    r.bound = r.is_frame_case ? canonical_frame_bound(r.mu, r.alpha) : canonical_sequence_bound(r.mu, r.alpha, r.Delta);
    r.lambda = r.bound;
    if (r.is_frame_case)
        r.prior_work_bound = prior_canonical_frame_bound(r.mu, r.alpha, ra.bessel_bound);
    r.holds = within(r.measured, r.bound, tol.tol_eq);
    return r;
}

StableDual stable_dual(const OVSequence& a, const OVSequence& b, const DualParam& l, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    validate_dual_param(a, l, tol);
    const FrameData fa = frame_data(a, tol);
    require_frame_sequence(fa.rep, "A");
    const FrameReport rb = classify(b, tol);

    DualDeviationReport r;
    r.mu = mu(a, b);
    r.alpha = fa.rep.lower_bound;
    const Subspace hb = frame_subspace(b, tol);
    r.Delta = gap_Delta(fa.h, hb).Delta;
    const double sa = std::sqrt(r.alpha);
    if (!(r.mu < sa) || !(r.Delta < 1.0 - tol.tol_eq) || !rb.is_frame_sequence)
        fail(ErrorKind::NotApplicable, "stable dual needs mu < sqrt(alpha) and Delta(H_A, H_B) < 1");
    r.applicable = true;
    r.is_frame_case = fa.rep.is_frame && rb.is_frame;

    const Matrix tb = analysis_operator(b);
    const Matrix t_dual_a = fa.t * fa.g + l.L * fa.p;
    const Matrix p_ker_b = proj(kernel_basis(tb.adjoint(), tol));
    DualParam m{p_ker_b * t_dual_a * proj(hb)};
    OVSequence dual = make_dual(b, m, tol);

    const double l_norm = op_norm(l.L);
    r.measured = op_norm(analysis_operator(dual) - t_dual_a);
    r.lambda = r.is_frame_case ? stable_dual_lambda_frame(r.mu, r.alpha, l_norm)
                               : stable_dual_lambda(r.mu, r.alpha, r.Delta, l_norm);
    r.bound = r.lambda;
    r.holds = within(r.measured, r.bound, tol.tol_eq);
    const bool dual_ok = is_dual(b, dual, tol);
    return {std::move(dual), std::move(m), r, dual_ok};
}

BestApproxReport best_approx_check(const OVSequence& a, const OVSequence& b, const DualParam& l, int trials,
                                   std::uint64_t seed, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    validate_dual_param(a, l, tol);
    const FrameReport ra = classify(a, tol);
    const FrameReport rb = classify(b, tol);
    const double m = mu(a, b);
    if (!ra.is_frame || !rb.is_frame || !(m < std::sqrt(ra.lower_bound)))
        fail(ErrorKind::NotApplicable, "best approximation check needs frames A, B with mu < sqrt(alpha)");

    Rng rng(seed);
    const Matrix ta = analysis_operator(a);
    const Matrix tb = analysis_operator(b);
    const Index n = a.domain_dim();
    const Matrix sa_inv = checked_inverse(frame_operator(a), tol);
    const Matrix sb_inv = checked_inverse(frame_operator(b), tol);
    const Matrix p_ker_b = proj(kernel_basis(tb.adjoint(), tol));
    const Matrix target = ta * sa_inv + l.L;
    const Matrix stable = tb * sb_inv + p_ker_b * target;
    const Matrix diff_stable = stable - target;
    const std::vector<DualParam> basis_b = dual_param_space(b, tol);

    BestApproxReport r;
    r.trials = trials;
    r.stable_distance = op_norm(diff_stable);
    r.min_other_distance = std::numeric_limits<double>::infinity();
    const double cut = tol.tol_eq;
    for (int t = 0; t < trials; ++t) {
        Matrix mm = zeros(tb.rows(), n);
        for (const DualParam& e : basis_b)
            mm += Scalar(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * e.L;
        const double nrm = op_norm(mm);
        if (nrm > 0.0)
            mm *= rng.uniform(1e-3, 2.0) / nrm;
        const Matrix other = tb * sb_inv + mm;
        const double dist = op_norm(other - target);
        r.min_other_distance = std::min(r.min_other_distance, dist);
        if (dist < r.stable_distance - cut)
            ++r.distance_violations;
        for (int s = 0; s < 3; ++s) {
            const Vector x = rng.gaussian_vector(n, true);
            const double lhs = ((other - target) * x).squaredNorm();
            const double rhs = (diff_stable * x).squaredNorm();
            if (lhs < rhs - tol.tol_eq * scale_of(rhs, x.squaredNorm()))
                ++r.pointwise_violations;
        }
        // Affine projection onto D(B) in the Hilbert-Schmidt inner product.
        const Matrix x = rng.gaussian(tb.rows(), n, true);
        const Matrix px = tb * sb_inv + p_ker_b * x;
        double defect = op_norm(tb.adjoint() * px - identity(n));
        for (const DualParam& e : basis_b)
            defect = std::max(defect, std::abs((e.L.adjoint() * (x - px)).trace()) / scale_of(x.norm()));
        r.hs_projection_residual = std::max(r.hs_projection_residual, defect);
    }
    {
        const Matrix px = tb * sb_inv + p_ker_b * target;
        r.hs_projection_residual = std::max(r.hs_projection_residual, op_norm(px - stable));
    }

    // Canonical dual of B against the stable choice for L = 0.
    const Matrix can_a = ta * sa_inv;
    const Matrix can_b = tb * sb_inv;
    const Matrix stable0 = can_b + p_ker_b * can_a;
    const Matrix gap_op = p_ker_b * can_a;
    r.injectivity_constant = singular_values(gap_op).minCoeff();
    const double far = op_norm(can_b - can_a);
    const double near = op_norm(stable0 - can_a);
    r.canonical_excess = far * far - near * near;
    for (int s = 0; s < 5; ++s) {
        const Vector x = rng.gaussian_vector(n, true);
        const double lhs = ((can_b - can_a) * x).squaredNorm() - ((stable0 - can_a) * x).squaredNorm();
        const double rhs = (gap_op * x).squaredNorm();
        r.excess_identity_residual =
            std::max(r.excess_identity_residual, std::abs(lhs - rhs) / scale_of(x.squaredNorm()));
    }
    const double c2 = r.injectivity_constant * r.injectivity_constant;
    r.canonical_strictly_farther = r.injectivity_constant > tol.tol_eq && r.canonical_excess >= c2 - tol.tol_eq &&
                                   far > near + tol.tol_eq;

    r.holds = r.distance_violations == 0 && r.pointwise_violations == 0 &&
              r.hs_projection_residual <= tol.tol_eq && r.excess_identity_residual <= tol.tol_eq &&
              r.canonical_excess >= -tol.tol_eq;
    return r;
}

namespace {

struct BijectionData {
    Matrix ka, kb; ///< orthonormal bases of ker T_A^*, ker T_B^*
    Matrix ca, cb; ///< orthonormal bases of H_A, H_B
};

BijectionData bijection_data(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol) {
    return {kernel_basis(analysis_operator(a).adjoint(), tol).basis(),
            kernel_basis(analysis_operator(b).adjoint(), tol).basis(), frame_subspace(a, tol).basis(),
            frame_subspace(b, tol).basis()};
}

Matrix apply_forward(const BijectionData& d, const Matrix& x) {
    return d.kb * (d.kb.adjoint() * x) * (d.cb * d.cb.adjoint());
}

Matrix apply_inverse(const BijectionData& d, const Matrix& y, const ToleranceConfig& tol) {
    if (d.ka.cols() != d.kb.cols() || d.ca.cols() != d.cb.cols())
        fail(ErrorKind::NotApplicable, "parameter spaces of A and B have different dimensions");
    const Matrix left = d.ka * checked_inverse(d.kb.adjoint() * d.ka, tol) * d.kb.adjoint();
    const Matrix right = d.cb * checked_inverse(d.ca.adjoint() * d.cb, tol) * d.ca.adjoint();
    return left * y * right;
}

} // namespace

Matrix bijection_forward(const OVSequence& a, const OVSequence& b, const Matrix& x, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    return apply_forward(bijection_data(a, b, tol), x);
}

Matrix bijection_inverse(const OVSequence& a, const OVSequence& b, const Matrix& y, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    return apply_inverse(bijection_data(a, b, tol), y, tol);
}

DualBijection dual_bijection(const OVSequence& a, const OVSequence& b, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    const FrameReport ra = classify(a, tol);
    require_frame_sequence(ra, "A");
    const double m = mu(a, b);
    const double gap = gap_Delta(frame_subspace(a, tol), frame_subspace(b, tol)).Delta;
    if (!(m < std::sqrt(ra.lower_bound) / 2.0) || !(gap < 1.0 - tol.tol_eq))
        fail(ErrorKind::NotApplicable, "bijection needs mu < sqrt(alpha)/2 and Delta(H_A, H_B) < 1");

    const BijectionData d = bijection_data(a, b, tol);
    DualBijection out;
    out.basis_a = dual_param_space(a, tol);
    out.basis_b = dual_param_space(b, tol);
    const Index na = static_cast<Index>(out.basis_a.size());
    const Index nb = static_cast<Index>(out.basis_b.size());
    out.forward = zeros(nb, na);
    out.inverse = zeros(na, nb);
    for (Index i = 0; i < na; ++i) {
        const Matrix& x = out.basis_a[static_cast<std::size_t>(i)].L;
        const Matrix rx = apply_forward(d, x);
        for (Index j = 0; j < nb; ++j)
            out.forward(j, i) = (out.basis_b[static_cast<std::size_t>(j)].L.adjoint() * rx).trace();
        out.qr_residual = std::max(out.qr_residual, op_norm(apply_inverse(d, rx, tol) - x));
    }
    for (Index j = 0; j < nb; ++j) {
        const Matrix& y = out.basis_b[static_cast<std::size_t>(j)].L;
        const Matrix qy = apply_inverse(d, y, tol);
        for (Index i = 0; i < na; ++i)
            out.inverse(i, j) = (out.basis_a[static_cast<std::size_t>(i)].L.adjoint() * qy).trace();
        out.rq_residual = std::max(out.rq_residual, op_norm(apply_forward(d, qy) - y));
    }
    out.holds = na == nb && out.qr_residual <= tol.tol_eq && out.rq_residual <= tol.tol_eq;
    return out;
}

double difference_decomposition_check(const OVSequence& a, const OVSequence& b, const DualParam& l,
                                      const DualParam& m, const ToleranceConfig& tol) {
    require_same_shape(a, b);
    const FrameData fa = frame_data(a, tol);
    const FrameData fb = frame_data(b, tol);
    require_frame_sequence(fa.rep, "A");
    require_frame_sequence(fb.rep, "B");
    validate_dual_param(a, l, tol);
    validate_dual_param(b, m, tol);

    const Index n = a.domain_dim();
    const Matrix id = identity(n);
    const Matrix r = fa.t * fa.g + l.L;
    const Matrix lhs = (fb.t * fb.g + m.L * fb.p) - (fa.t * fa.g + l.L * fa.p);
    const Matrix p_ker_b = proj(kernel_basis(fb.t.adjoint(), tol));
    const Matrix tbg = fb.t * fb.g;
    const Matrix rhs = tbg * fb.p * (fa.t.adjoint() - fb.t.adjoint()) * r * fa.p * fb.p +
                       tbg * fb.p * (id - fa.p) * fb.p - r * fa.p * (id - fb.p) + (m.L - p_ker_b * r * fa.p) * fb.p;
    return op_norm(lhs - rhs);
}

BoundCheck pq_projection_bound(const Matrix& p, const Matrix& q, double c, double d, const ToleranceConfig& tol) {
    if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
        fail(ErrorKind::InvalidInput, "projections must be square matrices of the same size");
    if (!is_orthogonal_projection(p, tol.tol_eq) || !is_orthogonal_projection(q, tol.tol_eq))
        fail(ErrorKind::InvalidInput, "input is not an orthogonal projection");
    if (!(c > 0.0) || !(d > 0.0))
        fail(ErrorKind::InvalidInput, "weights must be positive");
    BoundCheck r;
    r.bound = std::sqrt(1.0 / (c * c) + 1.0 / (d * d)) * op_norm(c * p - d * q);
    r.measured = op_norm(p - q);
    r.holds = within(r.measured, r.bound, tol.tol_eq);
    return r;
}

RLambdaReport r_lambda_suite(const Matrix& a, const Subspace& w, double lambda, double c, double d,
                             std::uint64_t seed, int samples, const ToleranceConfig& tol) {
    const Index n = a.rows();
    if (a.cols() != n || w.ambient_dim() != n)
        fail(ErrorKind::InvalidInput, "A must be square and act on the space of W");
    if (!(lambda > 0.0))
        fail(ErrorKind::InvalidInput, "lambda must be positive");
    require_finite(a, "A");
    const RealVector sv = singular_values(a);
    if (n == 0 || sv(n - 1) <= tol.tol_rank * sv(0))
        fail(ErrorKind::InvalidInput, "A is not invertible");
    const double smin = sv(n - 1), smax = sv(0);
    if (c <= 0.0)
        c = smin;
    if (d <= 0.0)
        d = smax;
    if (c > smin * (1.0 + tol.tol_eq) || d < smax * (1.0 - tol.tol_eq))
        fail(ErrorKind::InvalidInput, "c and d do not bound A from below and above");

    RLambdaReport r;
    r.lambda = lambda;
    r.c = c;
    r.d = d;
    const Matrix pw = w.projector();
    const Matrix id = identity(n);
    const Matrix a_inv = checked_inverse(a, tol);
    const Matrix rl = a * pw + lambda * a_inv.adjoint() * (id - pw);
    const RealVector rsv = singular_values(rl);
    r.invertible = rsv(n - 1) > tol.tol_rank * rsv(0);
    if (!r.invertible)
        return r;
    const Matrix rl_inv = checked_inverse(rl, tol);
    const Matrix p_aw = proj(Subspace::span(a * w.basis(), tol));
    r.projector_residual = op_norm(p_aw - rl_inv.adjoint() * pw * a.adjoint());

    r.inverse_lower = std::min(1.0, c * d / lambda) / d;
    r.inverse_upper = std::max(1.0, c * d / lambda) / c;
    const RealVector isv = singular_values(rl_inv);
    r.inverse_max = isv(0);
    r.inverse_min = isv(n - 1);
    if (r.inverse_min < r.inverse_lower - tol.tol_eq)
        ++r.sandwich_violations;
    if (!within(r.inverse_max, r.inverse_upper, tol.tol_eq))
        ++r.sandwich_violations;

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Vector x = rng.gaussian_vector(n, true);
        const double ratio = (rl_inv * x).norm() / x.norm();
        if (ratio < r.inverse_lower - tol.tol_eq || !within(ratio, r.inverse_upper, tol.tol_eq))
            ++r.sandwich_violations;
        const double paw = (p_aw * x).norm();
        const double pwa = (pw * a.adjoint() * x).norm();
        const double slack = tol.tol_eq * scale_of(pwa / c, x.norm());
        if (paw < pwa / d - slack || paw > pwa / c + slack)
            ++r.sandwich_violations;
    }
    r.holds = r.invertible && r.projector_residual <= tol.tol_eq * scale_of(op_norm(a), op_norm(a_inv)) &&
              r.sandwich_violations == 0;
    return r;
}

FusionSequence transform_fusion(const FusionSequence& w, const Matrix& a, const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    if (a.rows() != n || a.cols() != n)
        fail(ErrorKind::InvalidInput, "transform has the wrong shape");
    std::vector<FusionPair> pairs;
    for (const FusionPair& p : w.pairs()) {
        if (p.subspace.is_zero())
            pairs.push_back(p);
        else
            pairs.push_back({Subspace::span(a * p.subspace.basis(), tol), p.weight});
    }
    return FusionSequence(n, std::move(pairs));
}

TransformedFusionReport transformed_fusion_bounds(const FusionSequence& w, const Matrix& a, const ToleranceConfig& tol) {
    const FrameReport rw = classify(fusion_to_ov(w), tol);
    if (!rw.is_frame)
        fail(ErrorKind::NotAFrame, "fusion sequence is not a fusion frame");
    const Matrix a_inv = checked_inverse(a, tol);
    const FrameReport rt = classify(fusion_to_ov(transform_fusion(w, a, tol)), tol);
    TransformedFusionReport r;
    r.alpha = rw.lower_bound;
    r.beta = rw.bessel_bound;
    r.gamma = op_norm(a) * op_norm(a_inv);
    r.predicted_lower = r.alpha / (r.gamma * r.gamma);
    r.predicted_upper = r.beta * r.gamma * r.gamma;
    r.measured_lower = rt.is_frame ? rt.lower_bound : 0.0;
    r.measured_upper = rt.bessel_bound;
    r.holds = rt.is_frame && r.measured_lower >= r.predicted_lower - tol.tol_eq &&
              within(r.measured_upper, r.predicted_upper, tol.tol_eq);
    return r;
}

double fusion_stability_constant(double mu, double alpha, double beta, double tau) {
    const double c = 2.0 * std::sqrt(beta) + mu;
    const double d = 1.0 / (std::sqrt(alpha) - mu);
    const double inner = 1.0 + std::pow(1.0 / alpha + beta, 2);
    return (c * c + d * d) / alpha *
           (inner / std::sqrt(alpha) * (std::sqrt(2.0) / tau + c * d * d) + d * d * (1.0 + c * c * d * d));
}

FusionStabilityReport fusion_stability(const FusionSequence& w, const FusionSequence& v, const ToleranceConfig& tol) {
    if (w.ambient_dim() != v.ambient_dim() || w.size() != v.size())
        fail(ErrorKind::InvalidInput, "fusion sequences have incompatible shapes");
    const OVSequence ow = fusion_to_ov(w);
    const OVSequence ov = fusion_to_ov(v);
    const FrameReport rw = classify(ow, tol);
    if (!rw.is_frame)
        fail(ErrorKind::NotAFrame, "W is not a fusion frame");

    FusionStabilityReport r;
    r.mu = mu(ow, ov);
    r.alpha = rw.lower_bound;
    r.beta = rw.bessel_bound;
    r.tau = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        r.max_weight_gap = std::max(r.max_weight_gap, std::abs(w.weight(i) - v.weight(i)));
        r.max_pair_deviation = std::max(r.max_pair_deviation, op_norm(ow.block(i) - ov.block(i)));
        if (!w.is_degenerate(i) && !v.is_degenerate(i))
            r.tau = std::min({r.tau, w.weight(i), v.weight(i)});
    }
    if (!std::isfinite(r.tau))
        r.tau = 0.0;
    r.weight_consequence_holds = within(r.max_weight_gap, r.max_pair_deviation, tol.tol_eq) &&
                                 within(r.max_pair_deviation, r.mu, tol.tol_eq);
    const double sa = std::sqrt(r.alpha);
    r.applicable = r.mu < sa && r.tau > 0.0;
    r.c = 2.0 * std::sqrt(r.beta) + r.mu;
    r.d = r.mu < sa ? 1.0 / (sa - r.mu) : std::numeric_limits<double>::infinity();
    r.C = r.applicable ? fusion_stability_constant(r.mu, r.alpha, r.beta, r.tau)
                       : std::numeric_limits<double>::infinity();
    if (classify(ov, tol).is_frame) {
        const OVSequence dw = fusion_to_ov(canonical_ffdual(w, tol));
        const OVSequence dv = fusion_to_ov(canonical_ffdual(v, tol));
        r.measured = mu(dw, dv);
    }
    if (r.applicable)
        r.holds = r.measured.has_value() && within(*r.measured, r.C * r.mu, tol.tol_eq) && r.weight_consequence_holds;
    return r;
}

} // namespace framelab
