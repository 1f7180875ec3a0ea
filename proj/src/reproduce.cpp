#include "framelab/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framelab/gap.hpp"
#include "framelab/perturb.hpp"

namespace framelab {

namespace {

std::string tagged(const std::string& what, double eps) {
    std::ostringstream os;
    os << what << " (eps=" << eps << ")";
    return os.str();
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void add_flag(Reproduction& r, std::string name, bool ok) { r.add(std::move(name), ok ? 0.0 : 1.0, 0.5); }

} // namespace

bool Reproduction::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

void Reproduction::add(std::string n, double error, double tolerance) {
    checks.push_back({std::move(n), error, tolerance, std::isfinite(error) && error <= tolerance});
}

Matrix mercedes_analysis() {
    const double s3 = std::sqrt(3.0);
    Matrix t(3, 2);
    t << 0.0, 2.0, s3, -1.0, -s3, -1.0;
    return t / std::sqrt(6.0);
}

Matrix mercedes_perturbed_analysis(double eps) {
    Matrix t = mercedes_analysis();
    t(0, 0) = 2.0 * eps / std::sqrt(6.0);
    t(0, 1) = 2.0 * std::sqrt(1.0 - eps * eps) / std::sqrt(6.0);
    return t;
}

double mercedes_mu(double eps) {
    const double delta = 1.0 - std::sqrt(1.0 - eps * eps);
    return 2.0 * std::sqrt(delta / 3.0);
}

Matrix mercedes_stable_dual(double eps, double a, double b) {
    const double d = 9.0 - 4.0 * eps * eps;
    const double t = std::sqrt(1.0 - eps * eps);
    const double s3 = std::sqrt(3.0);
    const double pm = 6.0 * t * t + (3.0 - 2.0 * s3 * eps) * t - s3 * eps;
    const double pp = 6.0 * t * t + (3.0 + 2.0 * s3 * eps) * t + s3 * eps;
    const double r23 = std::sqrt(2.0 / 3.0);
    const double r32 = std::sqrt(1.5);
    Matrix m(3, 2);
    m << 3.0 * (1.0 + 2.0 * t) * a, (std::sqrt(6.0) + 3.0 * b) * (1.0 + 2.0 * t),
        d / std::sqrt(2.0) + pm * a, -r32 * d + (r23 + b) * pm,
        -d / std::sqrt(2.0) + pp * a, -r32 * d + (r23 + b) * pp;
    return m / d;
}

std::pair<double, double> mercedes_canonical_ab(double eps) {
    const double t = std::sqrt(1.0 - eps * eps);
    const double f = std::sqrt(2.0 / 3.0) / (1.0 + 2.0 * t);
    return {f * eps, f * (t - 1.0)};
}

Reproduction reproduce_mercedes(const MercedesInput& in, double tolerance, const ToleranceConfig& tol) {
    Reproduction r{"mercedes", {}};
    const Matrix ta = analysis_operator(in.a);
    if (ta.rows() != 3 || ta.cols() != 2 || in.a.codomain_dim() != 1)
        fail(ErrorKind::InvalidInput, "expected three vectors in dimension two");
    r.add("T_A entries", max_abs(ta - mercedes_analysis()), tolerance);
    const FrameReport ra = classify(in.a, tol);
    r.add("A tight with bound 1", std::max(std::abs(ra.lower_bound - 1.0), std::abs(ra.bessel_bound - 1.0)), tolerance);

    const Matrix& l = in.l.L;
    if (l.rows() != 3 || l.cols() != 2)
        fail(ErrorKind::InvalidInput, "L must be 3 x 2");
    r.add("L has equal rows", std::max(max_abs(l.row(1) - l.row(0)), max_abs(l.row(2) - l.row(0))), tolerance);
    r.add("L is real", l.imag().cwiseAbs().maxCoeff(), tolerance);
    const double a = l(0, 0).real(), b = l(0, 1).real();

    for (const auto& [eps, seq] : in.perturbed) {
        const Matrix tb = analysis_operator(seq);
        r.add(tagged("T_B entries", eps), max_abs(tb - mercedes_perturbed_analysis(eps)), tolerance);
        r.add(tagged("mu", eps), std::abs(mu(in.a, seq) - mercedes_mu(eps)), std::min(tolerance, 1e-10));

        const FrameReport rb = classify(seq, tol);
        const double lo = (1.0 - eps) * (1.0 - eps), hi = (1.0 + eps) * (1.0 + eps);
        add_flag(r, tagged("B is a frame", eps), rb.is_frame);
        r.add(tagged("B bounds inside [(1-eps)^2, (1+eps)^2]", eps),
              std::max({0.0, lo - rb.lower_bound, rb.bessel_bound - hi}), tolerance);

        const StableDual sd = stable_dual(in.a, seq, in.l, tol);
        add_flag(r, tagged("stable dual is a dual of B", eps), sd.is_dual);
        r.add(tagged("stable dual closed form", eps),
              max_abs(analysis_operator(sd.dual) - mercedes_stable_dual(eps, a, b)), tolerance);

        const Matrix sb_inv = checked_inverse(frame_operator(seq), tol);
        const Matrix can_b = tb * sb_inv;
        const double t = std::sqrt(1.0 - eps * eps);
        const double dd = 9.0 - 4.0 * eps * eps;
        Matrix row(1, 2);
        row << std::sqrt(6.0) / dd * eps, std::sqrt(6.0) / dd * 3.0 * t;
        r.add(tagged("first row of the canonical dual of B", eps), max_abs(can_b.row(0) - row), tolerance);

        // Solve for L in the parameter space of A whose stable dual is the canonical dual of B.
        const std::vector<DualParam> basis = dual_param_space(in.a, tol);
        const Matrix pk = proj(kernel_basis(tb.adjoint(), tol));
        const Matrix can_a = ta * checked_inverse(frame_operator(in.a), tol);
        Matrix sys(6, static_cast<Index>(basis.size()));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Matrix col = pk * basis[j].L;
            sys.col(static_cast<Index>(j)) = Eigen::Map<const Vector>(col.data(), 6);
        }
        const Matrix rhs_m = -pk * can_a;
        const Vector rhs = Eigen::Map<const Vector>(rhs_m.data(), 6);
        const Vector coef = sys.completeOrthogonalDecomposition().solve(rhs);
        Matrix found = zeros(3, 2);
        for (std::size_t j = 0; j < basis.size(); ++j)
            found += coef(static_cast<Index>(j)) * basis[j].L;
        const auto [ea, eb] = mercedes_canonical_ab(eps);
        r.add(tagged("(a,b) retrieval", eps),
              std::max({std::abs(found(0, 0) - ea), std::abs(found(0, 1) - eb), max_abs(found.row(1) - found.row(0)),
                        max_abs(found.row(2) - found.row(0))}),
              tolerance);

        const StableDual sd0 = stable_dual(in.a, seq, DualParam{zeros(3, 2)}, tol);
        const double near = op_norm(analysis_operator(sd0.dual) - can_a);
        const double far = op_norm(can_b - can_a);
        add_flag(r, tagged("canonical dual of B farther than the stable dual", eps), far > near + tolerance);
    }
    return r;
}

Reproduction reproduce_gavruta(const FusionSequence& w, const FusionSequence& v, double tolerance,
                               const ToleranceConfig& tol) {
    Reproduction r{"gavruta-counterexample", {}};
    const Index n = w.ambient_dim();
    r.add("S_W = I", op_norm(frame_operator(fusion_to_ov(w)) - identity(n)), tolerance);
    r.add("S_V = 2I", op_norm(frame_operator(fusion_to_ov(v)) - 2.0 * identity(n)), tolerance);
    r.add("sum for V as dual of W = I", op_norm(gavruta_sum(v, w, tol) - identity(n)), tolerance);
    r.add("sum for W as dual of V = I/2", op_norm(gavruta_sum(w, v, tol) - 0.5 * identity(n)), tolerance);
    add_flag(r, "V is a dual of W", gavruta_is_dual(v, w, tol));
    add_flag(r, "W is not a dual of V", !gavruta_is_dual(w, v, tol));
    const FFDual ff = ffdual_from_gavruta(v, w, tol);
    add_flag(r, "reweighted V is an FF-dual of W", ffdual_verify(ff.dual, w, ff.witness, tol));
    double weight_err = 0.0;
    for (std::size_t i = 0; i < ff.dual.size(); ++i)
        weight_err = std::max(weight_err, std::abs(ff.dual.weight(i) - v.weight(i)));
    r.add("reweighting keeps unit weights", weight_err, tolerance);
    return r;
}

Reproduction reproduce_decomposition(const DecompositionInput& in, double tolerance, const ToleranceConfig& tol) {
    Reproduction r{"decomposition", {}};
    const auto lines = tight_orthogonal_decomposition(in.lines, tol);
    add_flag(r, "orthonormal lines decompose into one group",
             lines && lines->groups.size() == 1 && lines->groups[0].indices.size() == in.lines.size());
    if (lines && !lines->groups.empty())
        r.add("orthonormal lines: lambda = 1", std::abs(lines->groups[0].lambda - 1.0), tolerance);

    add_flag(r, "span{e1}, span{e1+e2} does not decompose", !tight_orthogonal_decomposition(in.skewed, tol));
    const FusionSequence can = canonical_ffdual(in.skewed, tol);
    Matrix first(2, 1), second(2, 1);
    first << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    second << 0.0, 1.0;
    r.add("canonical FF-dual subspaces", std::max(gap_Delta(can.subspace(0), Subspace::span(first)).Delta,
                                                  gap_Delta(can.subspace(1), Subspace::span(second)).Delta),
          tolerance);
    r.add("canonical FF-dual weights", std::max(std::abs(can.weight(0) - std::sqrt(2.0)),
                                                std::abs(can.weight(1) - std::sqrt(2.0))),
          tolerance);
    // The operator-valued canonical dual S^{-1} P_{W_i} is not a multiple of a projection.
    const Matrix sinv = fusion_frame_operator_inverse(in.skewed, tol);
    const Matrix block = in.skewed.weight(0) * sinv * in.skewed.subspace(0).projector();
    add_flag(r, "canonical operator-valued dual is not a weighted projection",
             !is_orthogonal_projection(block / op_norm(block), tol.tol_eq));

    const auto stacked = tight_orthogonal_decomposition(in.stacked, tol);
    add_flag(r, "orthogonal union decomposes into two groups", stacked && stacked->groups.size() == 2);
    if (stacked && stacked->groups.size() == 2)
        r.add("orthogonal union: lambda = 1, 4",
              std::max(std::abs(stacked->groups[0].lambda - 1.0), std::abs(stacked->groups[1].lambda - 4.0)),
              tolerance);
    return r;
}

} // namespace framelab
