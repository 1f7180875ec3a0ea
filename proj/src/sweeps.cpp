#include "framelab/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "framelab/fusion.hpp"
#include "framelab/gap.hpp"
#include "framelab/perturb.hpp"
#include "framelab/random.hpp"

namespace framelab {

namespace {

constexpr std::size_t kMaxFailures = 8;

class Recorder {
public:
    Recorder(std::string name, int trials) {
        res_.name = std::move(name);
        res_.trials = trials;
    }

    void check(bool ok, int trial, const std::string& what) {
        if (ok)
            return;
        ++violations_in_trial_;
        if (res_.failures.size() < kMaxFailures)
            res_.failures.push_back("trial " + std::to_string(trial) + ": " + what);
    }
    void residual(double r) { res_.worst = std::max(res_.worst, r); }
    void skip() { ++res_.skipped; }
    void witness() { ++res_.witnesses; }

    // One violation per failing trial.
    void end_trial() {
        if (violations_in_trial_ > 0)
            ++res_.violations;
        violations_in_trial_ = 0;
    }

    template <class F>
    void trial(int t, F&& body) {
        try {
            body();
        } catch (const Error& e) {
            check(false, t, std::string("error: ") + e.what());
        }
        end_trial();
    }

    SweepResult result() { return res_; }

private:
    SweepResult res_;
    int violations_in_trial_ = 0;
};

struct Shape {
    Index n, k, m, rank;
};

Shape random_shape(Rng& rng, Index max_n, Index max_k, Index max_m, bool frame) {
    Shape s;
    s.n = rng.integer(1, max_n);
    s.k = rng.integer(1, max_k);
    s.m = rng.integer(1, max_m);
    if (frame)
        while (s.m * s.k < s.n)
            ++s.m;
    const Index cap = std::min(s.n, s.m * s.k);
    s.rank = frame ? s.n : rng.integer(1, cap);
    return s;
}

OVSequence random_sequence(Rng& rng, const Shape& s) {
    return random_frame_sequence(rng, s.n, s.k, s.m, s.rank, rng.coin(), 0.05);
}

SweepResult sweep_duality(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("duality", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const OVSequence a = random_sequence(rng, random_shape(rng, 6, 6, 8, false));
            const DualParam l = random_dual_param(rng, a, rng.uniform(0.0, 2.0), tol);
            const OVSequence d = make_dual(a, l, tol);
            const Matrix ta = analysis_operator(a);
            const Matrix td = analysis_operator(d);
            const Matrix pa = proj(frame_subspace(a, tol));
            const Matrix g = frame_operator_pseudo_inverse(a, tol);
            const double recon = op_norm(td.adjoint() * ta - pa);
            rec.residual(recon);
            rec.check(recon <= tol.tol_eq, t, "T_D^* T_A != P_A");
            const double fo = op_norm(frame_operator(d) - (g + l.L.adjoint() * l.L) * pa);
            rec.residual(fo);
            rec.check(fo <= tol.tol_eq, t,
                      "dual frame operator differs from (G + L^*L) P_A");
            rec.check(dual_check(a, d, tol).is_dual, t, "make_dual output is not a dual");

            const FrameReport ra = classify(a, tol);
            const FrameReport rc = classify(canonical_dual(a, tol), tol);
            const double e1 = std::abs(rc.lower_bound - 1.0 / ra.bessel_bound);
            const double e2 = std::abs(rc.bessel_bound - 1.0 / ra.lower_bound);
            rec.residual(std::max(e1, e2));
            rec.check(e1 <= tol.tol_eq, t, "canonical dual lower bound != 1/beta");
            rec.check(e2 <= tol.tol_eq, t, "canonical dual upper bound != 1/alpha");
        });
    return rec.result();
}

double swept_fraction(int t, double lo, double hi) {
    constexpr int steps = 30;
    return lo + (hi - lo) * static_cast<double>(t % steps) / (steps - 1);
}

SweepResult sweep_perturbation(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("perturbation", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const bool frame = rng.coin();
            const OVSequence a = random_sequence(rng, random_shape(rng, 6, 4, 6, frame));
            const double alpha = classify(a, tol).lower_bound;
            const double target = swept_fraction(t, 0.01, 0.3) * std::sqrt(alpha);
            const OVSequence b = random_perturbation(rng, a, target, !frame, tol);
            const PerturbReport pr = perturbation_report(a, b, tol);
            if (!pr.applicable) {
                rec.skip();
                return;
            }
            rec.check(pr.holds(), t, pr.holds() ? "" : pr.violations.front());
            rec.residual(pr.delta_HAHB - pr.gap_bound);
            rec.residual(pr.measured_range_gap - pr.range_gap_bound);

            const DualDeviationReport cd = canonical_dual_deviation(a, b, tol);
            rec.check(cd.applicable && cd.holds, t, "canonical dual deviation exceeds its bound");
            rec.residual(cd.measured - cd.bound);

            const DualParam l = random_dual_param(rng, a, rng.uniform(0.0, 2.0), tol);
            const StableDual sd = stable_dual(a, b, l, tol);
            rec.check(sd.is_dual, t, "stable dual is not a dual of B");
            rec.check(sd.report.holds, t, "stable dual deviation exceeds lambda");
            rec.residual(sd.report.measured - sd.report.bound);
            if (sd.report.is_frame_case) {
                const double general = stable_dual_lambda(pr.mu, alpha, 0.0, op_norm(l.L));
                rec.check(std::abs(general - sd.report.lambda) <= tol.tol_eq * scale_of(general), t,
                          "general lambda with Delta = 0 differs from the frame-case lambda");
                const BestApproxReport ba = best_approx_check(a, b, l, 5, rng.next_seed(), tol);
                rec.check(ba.distance_violations == 0 && ba.pointwise_violations == 0, t,
                          "a sampled dual of B is closer than the stable dual");
            }
        });
    return rec.result();
}

SweepResult sweep_best_approximation(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("best-approximation", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            // Every third instance has room for ran T_A and ran T_B to meet only in 0.
            Shape s = random_shape(rng, 4, 3, 6, true);
            if (t % 3 == 0)
                while (s.m * s.k < 2 * s.n)
                    ++s.m;
            const OVSequence a = random_sequence(rng, s);
            const double alpha = classify(a, tol).lower_bound;
            const OVSequence b = random_perturbation(rng, a, rng.uniform(0.01, 0.5) * std::sqrt(alpha), false, tol);
            const DualParam l = random_dual_param(rng, a, rng.uniform(0.0, 2.0), tol);
            const BestApproxReport r = best_approx_check(a, b, l, 20, rng.next_seed(), tol);
            rec.check(r.distance_violations == 0, t, "a sampled dual of B is closer than the stable dual");
            rec.check(r.pointwise_violations == 0, t, "pointwise inequality failed");
            rec.check(r.hs_projection_residual <= tol.tol_eq, t, "affine projection formula failed");
            rec.check(r.excess_identity_residual <= tol.tol_eq, t, "canonical excess identity failed");
            rec.residual(r.hs_projection_residual);
            rec.residual(r.excess_identity_residual);
            rec.residual(r.stable_distance - r.min_other_distance);
            if (r.canonical_strictly_farther)
                rec.witness();
        });
    SweepResult res = rec.result();
    if (res.witnesses == 0) {
        ++res.violations;
        res.failures.push_back("no instance with the canonical dual of B strictly farther than the stable dual");
    }
    return res;
}

SweepResult sweep_bijection(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("bijection", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const bool frame = rng.coin();
            const OVSequence a = random_sequence(rng, random_shape(rng, 5, 3, 6, frame));
            const double alpha = classify(a, tol).lower_bound;
            const OVSequence b =
                random_perturbation(rng, a, swept_fraction(t, 0.01, 0.45) * std::sqrt(alpha), !frame, tol);
            const DualBijection r = dual_bijection(a, b, tol);
            rec.check(r.holds, t, "round trip is not the identity");
            rec.residual(std::max(r.qr_residual, r.rq_residual));
        });
    return rec.result();
}

SweepResult sweep_decomposition(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("decomposition", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const Shape s = random_shape(rng, 5, 3, 6, false);
            const OVSequence a = random_sequence(rng, s);
            OVSequence b = a;
            if (rng.coin()) {
                Shape sb = s;
                sb.rank = rng.integer(1, std::min(s.n, s.m * s.k));
                b = random_sequence(rng, sb);
            } else {
                const double alpha = classify(a, tol).lower_bound;
                b = random_perturbation(rng, a, rng.uniform(0.0, 0.9) * std::sqrt(alpha), true, tol);
            }
            const DualParam l = random_dual_param(rng, a, rng.uniform(0.0, 2.0), tol);
            const DualParam m = random_dual_param(rng, b, rng.uniform(0.0, 2.0), tol);
            const double r = difference_decomposition_check(a, b, l, m, tol);
            rec.residual(r);
            rec.check(r <= tol.tol_eq, t, "four-term splitting residual " + std::to_string(r));
        });
    return rec.result();
}

FusionSequence sweep_fusion_frame(Rng& rng, Index max_n, Index max_m, bool degenerate) {
    const Index n = rng.integer(1, max_n);
    return random_fusion_frame(rng, n, rng.integer(1, max_m), rng.coin(), degenerate);
}

SweepResult sweep_canonical_ffdual(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("canonical-ffdual", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const FusionSequence w = sweep_fusion_frame(rng, 5, 6, true);
            const FFDual can = canonical_ffdual_with_witness(w, tol);
            const FFDualCheck c = ffdual_check(can.dual, w, can.witness, tol);
            rec.check(c.ok, t, c.ok ? "" : c.diagnostics.front());
            rec.residual(c.reconstruction_residual);
            const FusionSequence direct = canonical_ffdual(w, tol);
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double dw = std::abs(direct.weight(i) - can.dual.weight(i));
                const double dg = gap_Delta(direct.subspace(i), can.dual.subspace(i)).Delta;
                rec.check(dw <= tol.tol_eq * scale_of(direct.weight(i)) && dg <= tol.tol_eq, t,
                          "direct and reweighted canonical FF-duals differ");
            }
            rec.check(classify(fusion_to_ov(can.dual), tol).is_frame, t, "canonical FF-dual is not a fusion frame");
        });
    return rec.result();
}

Matrix sweep_admissible_l(Rng& rng, const FusionSequence& w, double norm, const ToleranceConfig& tol) {
    const Matrix t = analysis_operator(fusion_to_ov(w));
    const Matrix k = kernel_basis(t.adjoint(), tol).basis();
    Matrix l = k * rng.gaussian(k.cols(), t.cols(), true);
    const double ln = op_norm(l);
    if (ln > 0.0)
        l *= norm / ln;
    return l;
}

SweepResult sweep_alternate_ffdual(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("alternate-ffdual", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const FusionSequence w = sweep_fusion_frame(rng, 5, 6, true);
            const Matrix l = sweep_admissible_l(rng, w, rng.uniform(0.0, 2.0), tol);
            const FFDual d = alternate_ffdual_with_witness(w, l, tol);
            const FFDualCheck c = ffdual_check(d.dual, w, d.witness, tol);
            rec.check(c.ok, t, c.ok ? "" : c.diagnostics.front());
            rec.residual(c.reconstruction_residual);
            // (d_i Q_i^*) is an operator-valued dual of (c_i P_{W_i}).
            std::vector<Matrix> blocks;
            for (std::size_t i = 0; i < w.size(); ++i)
                blocks.emplace_back(d.dual.weight(i) * d.witness.Q[i].adjoint());
            const OVSequence lifted(w.ambient_dim(), w.ambient_dim(), std::move(blocks));
            rec.check(is_dual(fusion_to_ov(w), lifted, tol), t, "(d_i Q_i^*) is not an operator-valued dual");
        });
    return rec.result();
}

SweepResult sweep_characterize(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("ffdual-characterize", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const FusionSequence w = sweep_fusion_frame(rng, 4, 5, false);
            const Matrix l = sweep_admissible_l(rng, w, rng.uniform(0.0, 1.5), tol);
            const FusionSequence v = alternate_ffdual(w, l, tol);
            const auto found = ffdual_characterize(v, w, tol);
            rec.check(found.has_value(), t, "generated FF-dual was not characterized");
            if (found)
                rec.witness();
        });
    return rec.result();
}

SweepResult sweep_desiderata(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("desiderata", trials);
    const DesiderataReport r = desiderata_suite(tol, rng.next_seed(), trials);
    SweepResult res = rec.result();
    res.violations = r.d1_failures + r.d2a_failures + r.d2b_failures + r.d3_failures + r.d4_failures;
    if (!r.d1()) res.failures.push_back("D1 failed " + std::to_string(r.d1_failures) + " times");
    if (!r.d2a()) res.failures.push_back("D2a failed " + std::to_string(r.d2a_failures) + " times");
    if (!r.d2b()) res.failures.push_back("D2b failed " + std::to_string(r.d2b_failures) + " times");
    if (!r.d3()) res.failures.push_back("D3 failed " + std::to_string(r.d3_failures) + " times");
    if (!r.d4()) res.failures.push_back("D4 failed " + std::to_string(r.d4_failures) + " times");
    return res;
}

SweepResult sweep_pq(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("pq-projection", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const Index n = rng.integer(1, 6);
            const bool complex = rng.coin();
            const Subspace p = random_subspace(rng, n, rng.integer(0, n), complex);
            Subspace q = random_subspace(rng, n, rng.integer(0, n), complex);
            // Nearby pairs, where the bound is tightest.
            if (t % 5 == 0 && !p.is_zero()) {
                const Matrix g = rng.gaussian(n, n, complex);
                q = Subspace::from_orthonormal(unitary_exp(rng.uniform(0.0, 0.1) * 0.5 * (g - g.adjoint())) * p.basis());
            }
            const BoundCheck r = pq_projection_bound(p.projector(), q.projector(), rng.uniform(0.1, 3.0),
                                                     rng.uniform(0.1, 3.0), tol);
            rec.check(r.holds, t, "||P - Q|| exceeds the weighted bound");
            rec.residual(r.measured - r.bound);
        });
    return rec.result();
}

SweepResult sweep_r_lambda(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("r-lambda", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const Index n = rng.integer(1, 6);
            const bool complex = rng.coin();
            const Matrix a = random_unitary(rng, n, complex) *
                             Eigen::VectorXd::NullaryExpr(n, [&](Index) { return rng.uniform(0.2, 3.0); })
                                 .cast<Scalar>()
                                 .asDiagonal() *
                             random_unitary(rng, n, complex);
            const Subspace w = random_subspace(rng, n, rng.integer(0, n), complex);
            const RealVector sv = singular_values(a);
            const double c = sv(n - 1) * rng.uniform(0.5, 1.0);
            const double d = sv(0) * rng.uniform(1.0, 2.0);
            const double lambda = t % 2 == 0 ? c * d : std::exp(rng.uniform(-2.0, 2.0));
            const RLambdaReport r = r_lambda_suite(a, w, lambda, c, d, rng.next_seed(), 10, tol);
            rec.check(r.holds, t, "R(lambda) identities failed");
            rec.residual(r.projector_residual);
        });
    return rec.result();
}

SweepResult sweep_transformed_fusion(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("transformed-fusion", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const FusionSequence w = sweep_fusion_frame(rng, 5, 6, true);
            const Index n = w.ambient_dim();
            Matrix a = rng.gaussian(n, n, rng.coin());
            a += Matrix::Identity(n, n) * Scalar(rng.uniform(0.5, 2.0) * std::sqrt(static_cast<double>(n)), 0.0);
            const TransformedFusionReport r = transformed_fusion_bounds(w, a, tol);
            rec.check(r.holds, t, "transformed fusion frame bounds escape [alpha/gamma^2, beta gamma^2]");
            rec.residual(r.measured_upper - r.predicted_upper);
        });
    return rec.result();
}

SweepResult sweep_fusion_stability(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("fusion-stability", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const FusionSequence w = sweep_fusion_frame(rng, 5, 8, false);
            const double alpha = classify(fusion_to_ov(w), tol).lower_bound;
            const FusionSequence v =
                random_fusion_perturbation(rng, w, swept_fraction(t, 0.005, 0.3) * std::sqrt(alpha), tol);
            const FusionStabilityReport r = fusion_stability(w, v, tol);
            if (!r.applicable) {
                rec.skip();
                return;
            }
            rec.check(r.holds, t, "canonical FF-dual deviation exceeds C mu");
            rec.check(r.weight_consequence_holds, t, "|c_i - d_i| exceeds mu");
            if (r.measured)
                rec.residual(*r.measured - r.C * r.mu);
        });
    return rec.result();
}

SweepResult sweep_sharpness(Rng& rng, int trials, const ToleranceConfig& tol) {
    Recorder rec("sharpness", trials);
    for (int t = 0; t < trials; ++t)
        rec.trial(t, [&] {
            const OVSequence a = random_sequence(rng, random_shape(rng, 6, 4, 6, true));
            const FrameReport ra = classify(a, tol);
            const double target = rng.uniform(0.01, 0.9) * std::sqrt(ra.lower_bound);
            const OVSequence b = random_perturbation(rng, a, target, false, tol);
            const DualDeviationReport r = canonical_dual_deviation(a, b, tol);
            rec.check(r.applicable && r.is_frame_case, t, "frame-case hypotheses not met");
            if (!r.applicable || !r.prior_work_bound)
                return;
            rec.check(r.bound < *r.prior_work_bound, t, "bound is not strictly smaller than the prior bound");
            rec.check(r.holds, t, "measured deviation exceeds the bound");
            rec.residual(r.bound - *r.prior_work_bound);
        });
    return rec.result();
}

using SweepFn = std::function<SweepResult(Rng&, int, const ToleranceConfig&)>;

struct Entry {
    SweepFn fn;
    int default_trials;
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> r = {
        {"duality", {sweep_duality, 500}},
        {"perturbation", {sweep_perturbation, 200}},
        {"best-approximation", {sweep_best_approximation, 100}},
        {"bijection", {sweep_bijection, 100}},
        {"decomposition", {sweep_decomposition, 200}},
        {"canonical-ffdual", {sweep_canonical_ffdual, 200}},
        {"alternate-ffdual", {sweep_alternate_ffdual, 200}},
        {"ffdual-characterize", {sweep_characterize, 50}},
        {"desiderata", {sweep_desiderata, 100}},
        {"pq-projection", {sweep_pq, 500}},
        {"r-lambda", {sweep_r_lambda, 300}},
        {"transformed-fusion", {sweep_transformed_fusion, 200}},
        {"fusion-stability", {sweep_fusion_stability, 200}},
        {"sharpness", {sweep_sharpness, 100}},
    };
    return r;
}

const Entry& lookup(const std::string& name) {
    const auto it = registry().find(name);
    if (it == registry().end())
        fail(ErrorKind::InvalidInput, "unknown sweep: " + name);
    return it->second;
}

} // namespace

std::vector<std::string> sweep_names() {
    std::vector<std::string> names;
    for (const auto& [name, entry] : registry())
        names.push_back(name);
    return names;
}

int sweep_default_trials(const std::string& name) { return lookup(name).default_trials; }

SweepResult run_sweep(const std::string& name, const SweepConfig& cfg) {
    cfg.tol.validate();
    const Entry& e = lookup(name);
    Rng rng(cfg.seed);
    return e.fn(rng, cfg.trials > 0 ? cfg.trials : e.default_trials, cfg.tol);
}

} // namespace framelab
