// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "framelab/io.hpp"
#include "framelab/random.hpp"
#include "framelab/reproduce.hpp"
#include "framelab/sweeps.hpp"

using namespace framelab;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FRAMELAB_DATA_DIR;

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    if (!ok)
        ++failures;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

FusionSequence fixture(const char* name) { return fusion_sequence_from_json(load_json(kData / name)); }

std::string first_failed(const Reproduction& r) {
    for (const Check& c : r.checks)
        if (!c.ok)
            return c.name + " (error " + fmt("%.3g", c.error) + ")";
    return "";
}

SweepResult sweep(const std::string& name, int trials, double tol_eq) {
    SweepConfig cfg;
    cfg.trials = trials;
    cfg.tol.tol_eq = tol_eq;
    return run_sweep(name, cfg);
}

std::string summary(const SweepResult& r) {
    std::string s = r.name + " " + std::to_string(r.trials) + " trials, " + std::to_string(r.violations) +
                    " violations, worst " + fmt("%.3g", r.worst);
    if (!r.failures.empty())
        s += " [" + r.failures.front() + "]";
    return s;
}

void criterion_1() {
    MercedesInput in{ov_sequence_from_json(load_json(kData / "mercedes.json")), {},
                     DualParam{matrix_from_json(load_json(kData / "ab.json"))}};
    for (const char* f : {"mercedes_eps_0.05.json", "mercedes_eps_0.1.json", "mercedes_eps_0.3.json"}) {
        const Json j = load_json(kData / f);
        in.perturbed.emplace_back(j.at("epsilon").get<double>(), ov_sequence_from_json(j));
    }
    const Reproduction r = reproduce_mercedes(in, 1e-9);
    double worst = 0.0;
    for (const Check& c : r.checks)
        worst = std::max(worst, c.error);
    report(1, "Mercedes-Benz reproduction", r.ok(),
           r.ok() ? std::to_string(r.checks.size()) + " checks, largest error " + fmt("%.3g", worst) : first_failed(r));
}

void criterion_2() {
    const FusionSequence w = fixture("gavruta_W.json");
    const FusionSequence v = fixture("gavruta_V.json");
    const Index n = w.ambient_dim();
    const double forward = op_norm(gavruta_sum(v, w) - identity(n));
    const double reversed = op_norm(gavruta_sum(w, v) - 0.5 * identity(n));
    const bool ok = forward <= 1e-12 && reversed <= 1e-12 && gavruta_is_dual(v, w) && !gavruta_is_dual(w, v);
    report(2, "Gavruta asymmetry", ok,
           "sum = I to " + fmt("%.3g", forward) + ", reversed sum = I/2 to " + fmt("%.3g", reversed));
}

void criterion_3() {
    Rng rng(42);
    const ToleranceConfig tol;
    double recon = 0.0, frame_op = 0.0, bounds = 0.0;
    int bad = 0;
    for (int t = 0; t < 500; ++t) {
        const Index n = rng.integer(1, 6), k = rng.integer(1, 6), m = rng.integer(1, 8);
        const OVSequence a = random_frame_sequence(rng, n, k, m, rng.integer(1, std::min(n, m * k)), rng.coin());
        const DualParam l = random_dual_param(rng, a, rng.uniform(0.0, 2.0), tol);
        const OVSequence d = make_dual(a, l, tol);
        const Matrix pa = proj(frame_subspace(a, tol));
        const Matrix g = frame_operator_pseudo_inverse(a, tol);
        const double e1 = op_norm(analysis_operator(d).adjoint() * analysis_operator(a) - pa);
        const double e2 = op_norm(frame_operator(d) - (g + l.L.adjoint() * l.L) * pa);
        const FrameReport ra = classify(a, tol);
        const FrameReport rc = classify(canonical_dual(a, tol), tol);
        const double e3 = std::max(std::abs(rc.lower_bound - 1.0 / ra.bessel_bound),
                                   std::abs(rc.bessel_bound - 1.0 / ra.lower_bound));
        recon = std::max(recon, e1);
        frame_op = std::max(frame_op, e2);
        bounds = std::max(bounds, e3);
        if (e1 > 1e-9 || e2 > 1e-9 || e3 > 1e-8)
            ++bad;
    }
    report(3, "Duality identities", bad == 0,
           "500 sequences, reconstruction " + fmt("%.3g", recon) + ", dual frame operator " + fmt("%.3g", frame_op) +
               ", canonical bounds " + fmt("%.3g", bounds));
}

void criterion_4() {
    const SweepResult r = sweep("perturbation", 200, 1e-8);
    report(4, "Perturbation bounds", r.passed() && r.skipped == 0, summary(r) + ", " + std::to_string(r.skipped) + " skipped");
}

void criterion_5() {
    const SweepResult r = sweep("best-approximation", 100, 1e-9);
    report(5, "Best approximation", r.passed() && r.witnesses > 0,
           summary(r) + ", " + std::to_string(r.witnesses) + " instances with the canonical dual strictly farther");
}

void criterion_6() {
    const SweepResult r = sweep("bijection", 100, 1e-9);
    report(6, "Dual bijection", r.passed() && r.skipped == 0, summary(r));
}

void criterion_7() {
    const SweepResult r = sweep("decomposition", 200, 1e-10);
    report(7, "Four-term decomposition", r.passed() && r.worst < 1e-10, summary(r));
}

void criterion_8() {
    const Reproduction dec = reproduce_decomposition(
        {fixture("decomposition_lines.json"), fixture("decomposition_skewed.json"), fixture("decomposition_stacked.json")});
    bool ok = dec.ok();
    std::string detail = dec.ok() ? "fixtures ok" : "fixtures: " + first_failed(dec);
    const std::vector<std::pair<std::string, int>> suites = {{"canonical-ffdual", 200}, {"desiderata", 100},
                                                             {"pq-projection", 500},   {"r-lambda", 300},
                                                             {"transformed-fusion", 200}, {"fusion-stability", 200}};
    for (const auto& [name, trials] : suites) {
        const SweepResult r = sweep(name, trials, 1e-8);
        ok = ok && r.passed();
        detail += "; " + summary(r);
    }
    report(8, "Fusion suite", ok, detail);
}

void criterion_9() {
    const SweepResult r = sweep("sharpness", 100, 1e-8);
    report(9, "Bound sharpness", r.passed(), summary(r));
}

} // namespace

int main() {
    const std::vector<void (*)()> criteria = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                              criterion_6, criterion_7, criterion_8, criterion_9};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "criterion", false, std::string("error: ") + e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
