#include "framelab/random.hpp"

#include <algorithm>
#include <cmath>

namespace framelab {

Matrix Rng::gaussian(Index rows, Index cols, bool complex) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = scalar(complex);
    return m;
}

Matrix random_unitary(Rng& rng, Index n, bool complex) {
    Eigen::HouseholderQR<Matrix> qr(rng.gaussian(n, n, complex));
    Matrix q = qr.householderQ() * identity(n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Scalar d = r(j, j);
        if (std::abs(d) > 0.0)
            q.col(j) *= d / std::abs(d);
    }
    return q;
}

Subspace random_subspace(Rng& rng, Index n, Index r, bool complex) {
    if (r == 0)
        return Subspace(n);
    return Subspace::from_orthonormal(random_unitary(rng, n, complex).leftCols(r));
}

OVSequence random_ov_sequence(Rng& rng, Index n, Index k, Index m, Index rank, bool complex) {
    rank = std::min({rank, n, m * k});
    const Matrix t = rng.gaussian(m * k, rank, complex) * rng.gaussian(rank, n, complex);
    return OVSequence::from_analysis(t, k);
}

OVSequence random_frame_sequence(Rng& rng, Index n, Index k, Index m, Index rank, bool complex,
                                 double min_alpha) {
    rank = std::min({rank, n, m * k});
    for (;;) {
        const Matrix u = random_unitary(rng, m * k, complex).leftCols(rank);
        const Matrix v = random_unitary(rng, n, complex).leftCols(rank);
        RealVector sv(rank);
        for (Index i = 0; i < rank; ++i)
            sv(i) = rng.uniform(0.3, 2.0);
        const Matrix t = u * sv.cast<Scalar>().asDiagonal() * v.adjoint();
        OVSequence a = OVSequence::from_analysis(t, k);
        if (rank == 0 || classify(a).lower_bound >= min_alpha)
            return a;
    }
}

DualParam random_dual_param(Rng& rng, const OVSequence& a, double norm, const ToleranceConfig& tol) {
    const std::vector<DualParam> basis = dual_param_space(a, tol);
    const Matrix t = analysis_operator(a);
    Matrix l = zeros(t.rows(), t.cols());
    for (const DualParam& b : basis)
        l += rng.scalar(true) * b.L;
    const double current = op_norm(l);
    if (current > 0.0)
        l *= norm / current;
    return {l};
}

FusionSequence random_fusion_frame(Rng& rng, Index n, Index m, bool complex, bool allow_degenerate,
                                   double min_alpha) {
    for (;;) {
        std::vector<FusionPair> pairs;
        pairs.reserve(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i) {
            if (allow_degenerate && m > 1 && rng.coin(0.15)) {
                pairs.push_back({Subspace(n), 0.0});
                continue;
            }
            const Index r = rng.integer(1, n);
            pairs.push_back({random_subspace(rng, n, r, complex), rng.uniform(0.5, 2.0)});
        }
        FusionSequence w(n, std::move(pairs));
        const FrameReport rep = classify(fusion_to_ov(w));
        if (rep.is_frame && rep.lower_bound >= min_alpha)
            return w;
    }
}

FusionSequence random_parseval_fusion_frame(Rng& rng, Index n, bool complex) {
    const Matrix u = random_unitary(rng, n, complex);
    std::vector<FusionPair> pairs;
    Index start = 0;
    while (start < n) {
        const Index r = rng.integer(1, n - start);
        pairs.push_back({Subspace::from_orthonormal(u.middleCols(start, r)), 1.0});
        start += r;
    }
    return FusionSequence(n, std::move(pairs));
}

} // namespace framelab

namespace framelab {

Matrix unitary_exp(const Matrix& skew) {
    // skew = i H with H Hermitian.
    const Matrix h = Scalar(0.0, -1.0) * skew;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    Vector phase(es.eigenvalues().size());
    for (Index j = 0; j < phase.size(); ++j)
        phase(j) = std::exp(Scalar(0.0, es.eigenvalues()(j)));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Matrix random_skew(Rng& rng, Index n, bool complex) {
    const Matrix g = rng.gaussian(n, n, complex);
    const Matrix k = 0.5 * (g - g.adjoint());
    const double nrm = op_norm(k);
    return nrm > 0.0 ? Matrix(k / nrm) : k;
}

// Smallest s in [0, s_hi] found by bisection with f(s) = target, f increasing near 0.
template <class F>
double bisect(F&& f, double target) {
    double hi = 1e-3;
    while (f(hi) < target && hi < 1e6)
        hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

} // namespace

OVSequence random_perturbation(Rng& rng, const OVSequence& a, double target_mu, bool rotate,
                               const ToleranceConfig& tol) {
    const Matrix t = analysis_operator(a);
    const Index n = a.domain_dim();
    const Matrix pa = proj(frame_subspace(a, tol));
    const bool complex = rng.coin();
    Matrix e = rng.gaussian(t.rows(), n, complex) * pa;
    const double en = op_norm(e);
    if (en > 0.0)
        e /= en;
    const Matrix k = rotate ? random_skew(rng, n, complex) : zeros(n, n);
    const double weight = rng.uniform(0.2, 1.0);
    auto make = [&](double s) { return Matrix((t + s * e) * unitary_exp(s * weight * k).adjoint()); };
    if (target_mu <= 0.0)
        return a;
    const double s = bisect([&](double x) { return op_norm(make(x) - t); }, target_mu);
    return OVSequence::from_analysis(make(s), a.codomain_dim());
}

FusionSequence random_fusion_perturbation(Rng& rng, const FusionSequence& w, double target_mu,
                                          const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    const bool complex = rng.coin();
    std::vector<Matrix> skews;
    std::vector<double> growth;
    for (std::size_t i = 0; i < w.size(); ++i) {
        skews.push_back(random_skew(rng, n, complex));
        growth.push_back(rng.uniform(-1.0, 1.0));
    }
    auto make = [&](double s) {
        std::vector<FusionPair> pairs;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w.is_degenerate(i)) {
                pairs.push_back(w.pairs()[i]);
                continue;
            }
            const Matrix u = unitary_exp(s * skews[i]);
            pairs.push_back({Subspace::from_orthonormal(u * w.subspace(i).basis(), tol),
                             w.weight(i) * std::exp(s * growth[i])});
        }
        return FusionSequence(n, std::move(pairs));
    };
    if (target_mu <= 0.0)
        return w;
    const OVSequence ow = fusion_to_ov(w);
    const double s = bisect(
        [&](double x) { return op_norm(analysis_operator(fusion_to_ov(make(x))) - analysis_operator(ow)); },
        target_mu);
    return make(s);
}

} // namespace framelab
