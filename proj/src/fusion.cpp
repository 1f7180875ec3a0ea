#include "framelab/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "framelab/random.hpp"

namespace framelab {

namespace {

void require_compatible(const FusionSequence& v, const FusionSequence& w) {
    if (v.ambient_dim() != w.ambient_dim() || v.size() != w.size())
        fail(ErrorKind::InvalidInput, "fusion sequences have incompatible shapes");
}

double max_weight_product(const FusionSequence& v, const FusionSequence& w) {
    double best = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        best = std::max(best, v.weight(i) * w.weight(i));
    return best;
}

// Blocks of the (m*n) x n matrix `l`, one per pair.
Matrix row_block(const Matrix& l, std::size_t i, Index n) {
    return l.middleRows(static_cast<Index>(i) * n, n);
}

} // namespace

FusionSequence::FusionSequence(Index ambient_dim, std::vector<FusionPair> pairs)
    : n_(ambient_dim), pairs_(std::move(pairs)) {
    if (n_ < 0)
        fail(ErrorKind::InvalidInput, "negative ambient dimension");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const FusionPair& p = pairs_[i];
        const std::string where = "pair " + std::to_string(i);
        if (p.subspace.ambient_dim() != n_)
            fail(ErrorKind::InvalidInput, where + ": subspace lives in the wrong space");
        if (!std::isfinite(p.weight) || p.weight < 0.0)
            fail(ErrorKind::InvalidInput, where + ": weight must be finite and nonnegative");
        if (p.subspace.is_zero() != (p.weight == 0.0))
            fail(ErrorKind::InvalidInput, where + ": zero subspace and zero weight must occur together");
    }
}

OVSequence fusion_to_ov(const FusionSequence& w) {
    std::vector<Matrix> blocks;
    blocks.reserve(w.size());
    for (const FusionPair& p : w.pairs())
        blocks.emplace_back(p.weight * p.subspace.projector());
    return OVSequence(w.ambient_dim(), w.ambient_dim(), std::move(blocks));
}

std::vector<std::size_t> degenerate_indices(const FusionSequence& v, const FusionSequence& w) {
    require_compatible(v, w);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (v.is_degenerate(i) || w.is_degenerate(i))
            out.push_back(i);
    return out;
}

Matrix fusion_frame_operator_inverse(const FusionSequence& w, const ToleranceConfig& tol) {
    const OVSequence a = fusion_to_ov(w);
    if (w.ambient_dim() == 0 || !classify(a, tol).is_frame)
        fail(ErrorKind::NotAFrame, "fusion sequence is not a fusion frame");
    return checked_inverse(frame_operator(a), tol);
}

Matrix gavruta_sum(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol) {
    require_compatible(v, w);
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    Matrix sum = zeros(w.ambient_dim(), w.ambient_dim());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (v.is_degenerate(i) || w.is_degenerate(i))
            continue;
        sum += v.weight(i) * w.weight(i) * (v.subspace(i).projector() * sinv * w.subspace(i).projector());
    }
    return sum;
}

bool gavruta_is_dual(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol) {
    const Matrix sum = gavruta_sum(v, w, tol);
    return op_norm(sum - identity(w.ambient_dim())) <= tol.tol_eq * scale_of(max_weight_product(v, w));
}

FFDualCheck ffdual_check(const FusionSequence& v, const FusionSequence& w, const QWitness& q,
                         const ToleranceConfig& tol) {
    require_compatible(v, w);
    const Index n = w.ambient_dim();
    if (q.Q.size() != w.size())
        fail(ErrorKind::InvalidInput, "witness has the wrong number of operators");
    for (const Matrix& qi : q.Q)
        if (qi.rows() != n || qi.cols() != n)
            fail(ErrorKind::InvalidInput, "witness operator has the wrong shape");
    if (n == 0 || !classify(fusion_to_ov(w), tol).is_frame)
        fail(ErrorKind::NotAFrame, "fusion sequence is not a fusion frame");

    FFDualCheck c;
    Matrix sum = zeros(n, n);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Matrix& qi = q.Q[i];
        const std::string where = "Q_" + std::to_string(i);
        const double qn = op_norm(qi);
        const double cut = tol.tol_eq * scale_of(qn);
        const Matrix pw = w.subspace(i).projector();
        const Matrix pv = v.subspace(i).projector();
        if (op_norm(qi * (identity(n) - pw)) > cut)
            c.diagnostics.push_back(where + " does not vanish on the complement of W_i");
        if (op_norm((identity(n) - pv) * qi) > cut)
            c.diagnostics.push_back(where + " has range outside V_i");
        const bool degenerate = v.is_degenerate(i) || w.is_degenerate(i);
        if (degenerate && qn > tol.tol_eq)
            c.diagnostics.push_back(where + " should vanish on a degenerate index");
        if (!degenerate && std::abs(qn - 1.0) > tol.tol_eq)
            c.diagnostics.push_back(where + " does not have unit norm");
        sum += v.weight(i) * w.weight(i) * qi;
    }
    c.reconstruction_residual = op_norm(sum - identity(n));
    if (c.reconstruction_residual > tol.tol_eq * scale_of(max_weight_product(v, w)))
        c.diagnostics.push_back("sum of c_i d_i Q_i differs from the identity");
    c.ok = c.diagnostics.empty();
    return c;
}

bool ffdual_verify(const FusionSequence& v, const FusionSequence& w, const QWitness& q,
                   const ToleranceConfig& tol) {
    return ffdual_check(v, w, q, tol).ok;
}

FFDual ffdual_from_gavruta(const FusionSequence& v, const FusionSequence& w, const ToleranceConfig& tol) {
    require_compatible(v, w);
    const Index n = w.ambient_dim();
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    if (!gavruta_is_dual(v, w, tol))
        fail(ErrorKind::InvalidInput, "V is not a Găvruţa dual of W");
    const double zero_cut = tol.tol_eq * scale_of(op_norm(sinv));

    std::vector<FusionPair> pairs;
    QWitness q;
    pairs.reserve(w.size());
    q.Q.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (v.is_degenerate(i) || w.is_degenerate(i)) {
            pairs.push_back({Subspace(n), 0.0});
            q.Q.push_back(zeros(n, n));
            continue;
        }
        const Matrix a = v.subspace(i).projector() * sinv * w.subspace(i).projector();
        const double an = op_norm(a);
        if (an <= zero_cut)
            fail(ErrorKind::DegenerateGavrutaDual,
                 "P_{V_i} S^{-1} P_{W_i} vanishes at nondegenerate index " + std::to_string(i));
        pairs.push_back({v.subspace(i), an * v.weight(i)});
        q.Q.push_back(a / an);
    }
    return {FusionSequence(n, std::move(pairs)), std::move(q)};
}

FusionSequence canonical_ffdual(const FusionSequence& w, const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    std::vector<FusionPair> pairs;
    pairs.reserve(w.size());
    for (const FusionPair& p : w.pairs()) {
        if (p.subspace.is_zero()) {
            pairs.push_back({Subspace(n), 0.0});
            continue;
        }
        pairs.push_back({Subspace::span(sinv * p.subspace.basis(), tol),
                         p.weight * op_norm(sinv * p.subspace.projector())});
    }
    return FusionSequence(n, std::move(pairs));
}

FFDual canonical_ffdual_with_witness(const FusionSequence& w, const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    std::vector<FusionPair> images;
    images.reserve(w.size());
    for (const FusionPair& p : w.pairs()) {
        if (p.subspace.is_zero())
            images.push_back({Subspace(n), 0.0});
        else
            images.push_back({Subspace::span(sinv * p.subspace.basis(), tol), p.weight});
    }
    return ffdual_from_gavruta(FusionSequence(n, std::move(images)), w, tol);
}

FFDual alternate_ffdual_with_witness(const FusionSequence& w, const Matrix& l, const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    const Index m = static_cast<Index>(w.size());
    if (l.rows() != m * n || l.cols() != n)
        fail(ErrorKind::InvalidDualParam, "L must be (m*n) x n");
    if (!l.allFinite())
        fail(ErrorKind::InvalidDualParam, "L has non-finite entries");
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    const Matrix t = analysis_operator(fusion_to_ov(w));
    if (op_norm(t.adjoint() * l) > tol.tol_eq * scale_of(op_norm(t), op_norm(l)))
        fail(ErrorKind::InvalidDualParam, "range of L is not inside ker T_W^*");

    const double zero_cut = tol.tol_eq * scale_of(op_norm(sinv), op_norm(l));
    std::vector<FusionPair> pairs;
    QWitness q;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Matrix a = (w.weight(i) * sinv + row_block(l, i, n).adjoint()) * w.subspace(i).projector();
        const double an = op_norm(a);
        if (w.is_degenerate(i) || an <= zero_cut) {
            pairs.push_back({Subspace(n), 0.0});
            q.Q.push_back(zeros(n, n));
            continue;
        }
        pairs.push_back({range_basis(a, tol), an});
        q.Q.push_back(a / an);
    }
    return {FusionSequence(n, std::move(pairs)), std::move(q)};
}

FusionSequence alternate_ffdual(const FusionSequence& w, const Matrix& l, const ToleranceConfig& tol) {
    return alternate_ffdual_with_witness(w, l, tol).dual;
}

std::optional<FFDualParam> ffdual_characterize(const FusionSequence& v, const FusionSequence& w,
                                               const ToleranceConfig& tol) {
    require_compatible(v, w);
    const Index n = w.ambient_dim();
    const std::size_t m = w.size();
    const Matrix sinv = fusion_frame_operator_inverse(w, tol);
    const Matrix t = analysis_operator(fusion_to_ov(w));
    const Matrix k = kernel_basis(t.adjoint(), tol).basis(); // (m*n) x q
    const Index q = k.cols();

    // A_i(Y) = F_i + Y M_i with Y = X^* (n x q), L = K X.
    std::vector<Matrix> f(m), mm(m), pv_perp(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Matrix pw = w.subspace(i).projector();
        f[i] = w.weight(i) * sinv * pw;
        mm[i] = row_block(k, i, n).adjoint() * pw;
        pv_perp[i] = identity(n) - v.subspace(i).projector();
    }

    // Linear part: (I - P_{V_i}) (F_i + Y M_i) = 0, i.e. (M_i^T kron P_i) vec(Y) = -vec(P_i F_i).
    const Index nq = n * q;
    const Index nn = n * n;
    Matrix g = zeros(static_cast<Index>(m) * nn, nq);
    Vector h(static_cast<Index>(m) * nn);
    for (std::size_t i = 0; i < m; ++i) {
        const Index r0 = static_cast<Index>(i) * nn;
        for (Index a = 0; a < q; ++a)
            for (Index b = 0; b < n; ++b)
                g.block(r0 + b * n, a * n, n, n) = mm[i](a, b) * pv_perp[i];
        const Matrix rhs = -pv_perp[i] * f[i];
        h.segment(r0, nn) = Eigen::Map<const Vector>(rhs.data(), nn);
    }

    Vector y0 = Vector::Zero(nq);
    Matrix null = zeros(nq, 0);
    if (nq > 0) {
        // The entries of g are bounded by one, so rank is judged on an absolute scale; a relative
        // cutoff would promote rounding noise in I - P_{V_i} to full rank.
        const Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RealVector& sv = svd.singularValues();
        const double cut = tol.tol_rank * scale_of(sv.size() > 0 ? sv(0) : 0.0);
        Index rank = 0;
        while (rank < sv.size() && sv(rank) > cut)
            ++rank;
        const Vector uh = svd.matrixU().leftCols(rank).adjoint() * h;
        y0 = svd.matrixV().leftCols(rank) * (uh.array() / sv.head(rank).cast<Scalar>().array()).matrix();
        null = svd.matrixV().rightCols(nq - rank);
    }
    const double lin_scale = scale_of(op_norm(sinv) * max_weight_product(w, w), 1.0);
    if (nq > 0 ? (g * y0 - h).norm() > tol.tol_eq * lin_scale : h.norm() > tol.tol_eq * lin_scale)
        return std::nullopt;

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i)
        if (!v.is_degenerate(i) && !w.is_degenerate(i))
            active.push_back(i);

    auto assemble = [&](const Vector& y, std::size_t i) {
        const Matrix ym = Eigen::Map<const Matrix>(y.data(), n, q);
        return Matrix(f[i] + ym * mm[i]);
    };
    auto residuals = [&](const Vector& y) {
        RealVector r(static_cast<Index>(active.size()));
        for (std::size_t j = 0; j < active.size(); ++j)
            r(static_cast<Index>(j)) = op_norm(assemble(y, active[j])) / v.weight(active[j]) - 1.0;
        return r;
    };

    // Levenberg-Marquardt on sigma_1(A_i)^2 / d_i^2 = 1 over the affine solution set y0 + N z.
    // With `cluster`, every singular value within a window of the largest is pinned to d_i as
    // well, through the Hermitian block V_c^* A_i^* A_i V_c / d_i^2 - I. That system stays smooth
    // where the top singular values tie, which is where the plain iteration stalls.
    const Index p = null.cols();
    const double target = 0.1 * tol.tol_eq;
    auto merit = [&](const Vector& y, const std::vector<Index>& ks) {
        double total = 0.0;
        for (std::size_t j = 0; j < active.size(); ++j) {
            const RealVector sv = singular_values(assemble(y, active[j]));
            const double d2 = v.weight(active[j]) * v.weight(active[j]);
            for (Index l = 0; l < ks[j]; ++l)
                total += std::pow(sv(l) * sv(l) / d2 - 1.0, 2);
        }
        return total;
    };
    auto iterate = [&](Vector& y, RealVector& r, bool cluster) {
        double damping = 1e-3;
        for (int iter = 0; iter < 300 && r.cwiseAbs().maxCoeff() > target; ++iter) {
            const double window = cluster ? std::clamp(100.0 * r.cwiseAbs().maxCoeff(), 1e-6, 1e-2) : 0.0;
            std::vector<Index> ks;
            std::vector<Eigen::RowVectorXd> rows;
            std::vector<double> rhs;
            for (const std::size_t i : active) {
                const Matrix a = assemble(y, i);
                const Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
                const RealVector& sv = svd.singularValues();
                Index k = 1;
                while (k < sv.size() && sv(k) >= sv(0) * (1.0 - window))
                    ++k;
                ks.push_back(k);
                const double d2 = v.weight(i) * v.weight(i);
                const Matrix vc = svd.matrixV().leftCols(k);
                const Matrix av = a * vc;
                // H_c = (A V_c)^* dA V_c for the real direction of parameter c; i H_c for the imaginary one.
                std::vector<Matrix> h(static_cast<std::size_t>(p));
                for (Index c = 0; c < p; ++c) {
                    const Matrix dy = Eigen::Map<const Matrix>(null.col(c).data(), n, q);
                    h[static_cast<std::size_t>(c)] = av.adjoint() * dy * mm[i] * vc / d2;
                }
                for (Index e = 0; e < k; ++e)
                    for (Index f2 = e; f2 < k; ++f2) {
                        Eigen::RowVectorXd re(2 * p), im(2 * p);
                        for (Index c = 0; c < p; ++c) {
                            const Matrix& hc = h[static_cast<std::size_t>(c)];
                            const Scalar g_re = hc(e, f2) + std::conj(hc(f2, e));
                            const Scalar g_im = Scalar(0.0, 1.0) * hc(e, f2) - Scalar(0.0, 1.0) * std::conj(hc(f2, e));
                            re(2 * c) = g_re.real();
                            re(2 * c + 1) = g_im.real();
                            im(2 * c) = g_re.imag();
                            im(2 * c + 1) = g_im.imag();
                        }
                        rows.push_back(std::move(re));
                        rhs.push_back(e == f2 ? sv(e) * sv(e) / d2 - 1.0 : 0.0);
                        if (e != f2) {
                            rows.push_back(std::move(im));
                            rhs.push_back(0.0);
                        }
                    }
            }
            Eigen::MatrixXd jac(static_cast<Index>(rows.size()), 2 * p);
            Eigen::VectorXd res(static_cast<Index>(rows.size()));
            for (std::size_t l = 0; l < rows.size(); ++l) {
                jac.row(static_cast<Index>(l)) = rows[l];
                res(static_cast<Index>(l)) = rhs[l];
            }
            const Eigen::MatrixXd jtj = jac.transpose() * jac;
            const Eigen::VectorXd jtr = jac.transpose() * res;
            const double m0 = merit(y, ks);
            bool improved = false;
            for (int tries = 0; tries < 30; ++tries) {
                Eigen::MatrixXd lhs = jtj;
                lhs.diagonal().array() += damping;
                const Eigen::VectorXd step = -lhs.ldlt().solve(jtr);
                Vector dz(p);
                for (Index c = 0; c < p; ++c)
                    dz(c) = Scalar(step(2 * c), step(2 * c + 1));
                const Vector trial = y + null * dz;
                if (merit(trial, ks) < m0) {
                    y = trial;
                    r = residuals(y);
                    damping = std::max(damping * 0.3, 1e-15);
                    improved = true;
                    break;
                }
                damping *= 10.0;
            }
            if (!improved)
                break;
        }
    };
    auto solve_from = [&](Vector y) {
        RealVector r = residuals(y);
        if (p > 0 && r.size() > 0) {
            iterate(y, r, false);
            if (r.cwiseAbs().maxCoeff() > target)
                iterate(y, r, true);
        }
        return std::pair<Vector, RealVector>(std::move(y), std::move(r));
    };

    // The norm conditions are not convex; restart from random points of the affine set.
    auto [y, r] = solve_from(y0);
    Rng rng(0x5eed);
    double spread = 1.0;
    for (const std::size_t i : active)
        spread = std::max(spread, v.weight(i) + op_norm(f[i]));
    for (int start = 0; start < 40 && p > 0 && r.size() > 0 && r.cwiseAbs().maxCoeff() > target; ++start) {
        const Vector z = rng.gaussian(p, 1, true).col(0) * (spread / std::sqrt(static_cast<double>(p)));
        auto [ys, rs] = solve_from(y0 + null * z);
        if (rs.norm() < r.norm()) {
            y = std::move(ys);
            r = std::move(rs);
        }
    }
    if (r.size() > 0 && r.cwiseAbs().maxCoeff() > tol.tol_eq)
        return std::nullopt;

    FFDualParam out;
    const Matrix ym = Eigen::Map<const Matrix>(y.data(), n, q);
    const Matrix l = k * ym.adjoint();
    QWitness wit;
    for (std::size_t i = 0; i < m; ++i) {
        out.L.emplace_back(row_block(l, i, n));
        if (v.is_degenerate(i) || w.is_degenerate(i))
            wit.Q.push_back(zeros(n, n));
        else
            wit.Q.push_back(assemble(y, i) / v.weight(i));
    }
    if (!ffdual_verify(v, w, wit, tol))
        return std::nullopt;
    out.witness = std::move(wit);
    return out;
}

std::optional<TightPartition> tight_orthogonal_decomposition(const FusionSequence& w, const ToleranceConfig& tol) {
    const Matrix s = frame_operator(fusion_to_ov(w));
    const double cut = tol.tol_eq * scale_of(op_norm(s));
    TightPartition out;
    std::vector<std::pair<double, std::size_t>> eig;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.is_degenerate(i)) {
            out.degenerate.push_back(i);
            continue;
        }
        const Matrix& b = w.subspace(i).basis();
        const Matrix sb = s * b;
        const double lambda = (b.adjoint() * sb).trace().real() / static_cast<double>(b.cols());
        if (op_norm(sb - lambda * b) > cut || lambda <= tol.tol_eq)
            return std::nullopt;
        eig.emplace_back(lambda, i);
    }
    std::stable_sort(eig.begin(), eig.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [lambda, i] : eig) {
        if (out.groups.empty() || lambda - out.groups.back().lambda > tol.tol_eq * scale_of(lambda))
            out.groups.push_back({lambda, {}});
        out.groups.back().indices.push_back(i);
    }
    for (TightGroup& g : out.groups)
        std::sort(g.indices.begin(), g.indices.end());
    return out;
}

namespace {

Matrix random_admissible_l(Rng& rng, const FusionSequence& w, double norm, const ToleranceConfig& tol) {
    const Matrix t = analysis_operator(fusion_to_ov(w));
    const Matrix k = kernel_basis(t.adjoint(), tol).basis();
    Matrix l = k * rng.gaussian(k.cols(), t.cols(), true);
    const double ln = op_norm(l);
    if (ln > 0.0)
        l *= norm / ln;
    return l;
}

QWitness adjoint_family(const QWitness& q) {
    QWitness out;
    for (const Matrix& qi : q.Q)
        out.Q.emplace_back(qi.adjoint());
    return out;
}

bool check_d1(Rng& rng, const FusionSequence& w, const FFDual& dual, const ToleranceConfig& tol) {
    const Index n = w.ambient_dim();
    if (!ffdual_verify(dual.dual, w, dual.witness, tol))
        return false;
    const Vector x = rng.gaussian_vector(n, true);
    Vector rec = Vector::Zero(n);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vector local = w.weight(i) * (w.subspace(i).projector() * x);
        rec += dual.dual.weight(i) * (dual.witness.Q[i] * local);
    }
    return (rec - x).norm() <= tol.tol_eq * scale_of(x.norm(), max_weight_product(dual.dual, w));
}

bool check_d3(const FusionSequence& w, const FFDual& dual, const ToleranceConfig& tol) {
    if (!classify(fusion_to_ov(dual.dual), tol).is_frame)
        return false;
    return ffdual_verify(w, dual.dual, adjoint_family(dual.witness), tol);
}

// Vector frame (phi_i) with a dual (psi_i): the lines spanned by them with Q_i = psi^ phi^*.
bool check_d2a(Rng& rng, Index n, bool complex, const ToleranceConfig& tol) {
    const Index m = rng.integer(n, n + 3);
    const OVSequence a = random_frame_sequence(rng, n, 1, m, n, complex, 0.05);
    const OVSequence d = make_dual(a, random_dual_param(rng, a, rng.uniform(0.0, 1.5), tol), tol);
    std::vector<FusionPair> wp, vp;
    QWitness q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vector phi = a.block(i).adjoint();
        const Vector psi = d.block(i).adjoint();
        const double pn = phi.norm(), sn = psi.norm();
        const bool phi_zero = pn <= tol.tol_eq, psi_zero = sn <= tol.tol_eq;
        wp.push_back(phi_zero ? FusionPair{Subspace(n), 0.0} : FusionPair{Subspace::span(phi, tol), pn});
        vp.push_back(psi_zero ? FusionPair{Subspace(n), 0.0} : FusionPair{Subspace::span(psi, tol), sn});
        if (phi_zero || psi_zero)
            q.Q.push_back(zeros(n, n));
        else
            q.Q.push_back((psi / sn) * (phi / pn).adjoint());
    }
    const FusionSequence w(n, std::move(wp)), v(n, std::move(vp));
    return ffdual_verify(v, w, q, tol);
}

// Lines (W_i, c_i) with an FF-dual; extract psi_i = c_i^{-1} d_i Q_i phi_i and check the vector pair.
bool check_d2b(Rng& rng, Index n, bool complex, const ToleranceConfig& tol) {
    const Index m = rng.integer(n, n + 3);
    const OVSequence a = random_frame_sequence(rng, n, 1, m, n, complex, 0.05);
    std::vector<FusionPair> wp;
    for (const Matrix& b : a.blocks()) {
        const Vector phi = b.adjoint();
        if (phi.norm() <= tol.tol_eq)
            wp.push_back({Subspace(n), 0.0});
        else
            wp.push_back({Subspace::span(phi, tol), phi.norm()});
    }
    const FusionSequence w(n, std::move(wp));
    const FFDual dual = alternate_ffdual_with_witness(w, random_admissible_l(rng, w, rng.uniform(0.0, 1.0), tol), tol);
    Matrix sum = zeros(n, n);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.is_degenerate(i))
            continue;
        const Vector phi = w.weight(i) * w.subspace(i).basis().col(0);
        const Vector psi = dual.dual.weight(i) / w.weight(i) * (dual.witness.Q[i] * phi);
        if (std::abs(psi.norm() - dual.dual.weight(i)) > tol.tol_eq * scale_of(dual.dual.weight(i)))
            return false;
        sum += psi * phi.adjoint();
    }
    return op_norm(sum - identity(n)) <= tol.tol_eq * scale_of(max_weight_product(dual.dual, w));
}

} // namespace

DesiderataReport desiderata_suite(const ToleranceConfig& tol, std::uint64_t seed, int trials) {
    tol.validate();
    Rng rng(seed);
    DesiderataReport rep;
    rep.trials = trials;
    auto run = [](int& failures, auto&& body) {
        try {
            if (!body())
                ++failures;
        } catch (const Error&) {
            ++failures;
        }
    };
    for (int t = 0; t < trials; ++t) {
        const Index n = rng.integer(1, 5);
        const bool complex = rng.coin();
        const bool parseval = t % 4 == 0;
        const FusionSequence w = parseval ? random_parseval_fusion_frame(rng, n, complex)
                                          : random_fusion_frame(rng, n, rng.integer(2, 6), complex, true);
        const Matrix l = random_admissible_l(rng, w, parseval ? 0.0 : rng.uniform(0.0, 1.5), tol);
        run(rep.d1_failures, [&] { return check_d1(rng, w, alternate_ffdual_with_witness(w, l, tol), tol); });
        run(rep.d3_failures, [&] { return check_d3(w, alternate_ffdual_with_witness(w, l, tol), tol); });
        run(rep.d4_failures, [&] {
            const FFDual can = canonical_ffdual_with_witness(w, tol);
            return ffdual_verify(can.dual, w, can.witness, tol) && check_d3(w, can, tol);
        });
        run(rep.d2a_failures, [&] { return check_d2a(rng, n, complex, tol); });
        run(rep.d2b_failures, [&] { return check_d2b(rng, n, complex, tol); });
    }
    return rep;
}

} // namespace framelab
