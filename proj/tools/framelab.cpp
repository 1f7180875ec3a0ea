// framelab: command-line front end for frame, dual, and perturbation analyses.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelab/io.hpp"
#include "framelab/reproduce.hpp"
#include "framelab/sweeps.hpp"

#ifndef FRAMELAB_DATA_DIR
#define FRAMELAB_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace framelab;

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3, kInvalidL = 4 };

struct Options {
    ToleranceConfig tol;
    std::uint64_t seed = 42;
    int trials = 0;
    std::string out;
    std::string data_dir = FRAMELAB_DATA_DIR;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput:
        return kUsage;
    case ErrorKind::InvalidDualParam:
        return kInvalidL;
    default:
        return kNumerical;
    }
}

void emit(const Options& opt, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f)
        fail(ErrorKind::InvalidInput, "cannot write " + opt.out);
    f << text;
}

int status(bool ok) { return ok ? kOk : kCheckFailed; }

int cmd_analyze(const Options& opt, const std::string& path) {
    const Json in = load_json(path);
    Json out;
    if (is_fusion_json(in)) {
        const FusionSequence w = fusion_sequence_from_json(in, opt.tol);
        const FrameReport r = classify(fusion_to_ov(w), opt.tol);
        out = Json{{"kind", "fusion"}, {"frame_report", to_json(r)}};
        if (r.is_frame_sequence) {
            const auto part = tight_orthogonal_decomposition(w, opt.tol);
            out["tight_decomposition"] = part ? to_json(*part) : Json(nullptr);
        }
        std::cerr << "fusion sequence: alpha=" << r.lower_bound << " beta=" << r.bessel_bound
                  << (r.is_frame ? " (fusion frame)" : "") << "\n";
    } else {
        const OVSequence a = ov_sequence_from_json(in);
        const FrameReport r = classify(a, opt.tol);
        out = Json{{"kind", "operator-valued"}, {"frame_report", to_json(r)}};
        std::cerr << "sequence: alpha=" << r.lower_bound << " beta=" << r.bessel_bound
                  << " dim H_A=" << r.frame_subspace_dim << (r.is_frame ? " (frame)" : "") << "\n";
    }
    emit(opt, out);
    return kOk;
}

int fusion_dual(const Options& opt, const FusionSequence& w, const std::string& l_path, const std::string& v_path,
                const std::string& q_path) {
    Json out{{"kind", "fusion"}};
    bool ok = true;
    if (!v_path.empty()) {
        const FusionSequence v = fusion_sequence_from_json(load_json(v_path), opt.tol);
        if (!q_path.empty()) {
            const FFDualCheck c = ffdual_check(v, w, witness_from_json(load_json(q_path)), opt.tol);
            out["verification"] = to_json(c);
            ok = c.ok;
        }
        const auto found = ffdual_characterize(v, w, opt.tol);
        ok = ok && found.has_value();
        Json ch{{"found", found.has_value()}};
        if (found) {
            Json ls = Json::array();
            for (const Matrix& li : found->L)
                ls.push_back(matrix_to_json(li));
            ch["L"] = std::move(ls);
            ch["witness"] = to_json(found->witness);
        }
        out["characterization"] = std::move(ch);
        std::cerr << "characterization: " << (found ? "found" : "not found") << "\n";
        emit(opt, out);
        return status(ok);
    }
    const FFDual d = l_path.empty() ? canonical_ffdual_with_witness(w, opt.tol)
                                    : alternate_ffdual_with_witness(w, matrix_from_json(load_json(l_path)), opt.tol);
    const FFDualCheck c = ffdual_check(d.dual, w, d.witness, opt.tol);
    out["dual"] = to_json(d.dual);
    out["witness"] = to_json(d.witness);
    out["verification"] = to_json(c);
    std::cerr << (l_path.empty() ? "canonical" : "alternate") << " FF-dual: " << (c.ok ? "verified" : "FAILED") << "\n";
    emit(opt, out);
    return status(c.ok);
}

int cmd_dual(const Options& opt, const std::string& path, const std::string& l_path) {
    const Json in = load_json(path);
    if (is_fusion_json(in))
        return fusion_dual(opt, fusion_sequence_from_json(in, opt.tol), l_path, "", "");
    const OVSequence a = ov_sequence_from_json(in);
    const OVSequence d = l_path.empty() ? canonical_dual(a, opt.tol)
                                        : make_dual(a, DualParam{matrix_from_json(load_json(l_path))}, opt.tol);
    const DualCheck c = dual_check(a, d, opt.tol);
    emit(opt, Json{{"kind", "operator-valued"}, {"dual", to_json(d)}, {"verification", to_json(c)}});
    std::cerr << (l_path.empty() ? "canonical" : "alternate") << " dual: " << (c.is_dual ? "verified" : "FAILED") << "\n";
    return status(c.is_dual);
}

int cmd_fusion_perturb(const Options& opt, const FusionSequence& w, const FusionSequence& v) {
    const FusionStabilityReport r = fusion_stability(w, v, opt.tol);
    emit(opt, Json{{"kind", "fusion"}, {"fusion_stability", to_json(r)}});
    std::cerr << "mu=" << r.mu << " C=" << r.C;
    if (r.measured)
        std::cerr << " measured=" << *r.measured;
    std::cerr << (r.applicable ? (r.holds ? " (bound holds)" : " (BOUND VIOLATED)") : " (not applicable)") << "\n";
    return status(r.holds && (!r.applicable || r.weight_consequence_holds));
}

int cmd_perturb(const Options& opt, const std::string& pa, const std::string& pb, const std::string& l_path) {
    const Json ja = load_json(pa), jb = load_json(pb);
    if (is_fusion_json(ja) != is_fusion_json(jb))
        fail(ErrorKind::InvalidInput, "cannot compare a fusion sequence with an operator-valued sequence");
    if (is_fusion_json(ja))
        return cmd_fusion_perturb(opt, fusion_sequence_from_json(ja, opt.tol), fusion_sequence_from_json(jb, opt.tol));

    const OVSequence a = ov_sequence_from_json(ja);
    const OVSequence b = ov_sequence_from_json(jb);
    if (!a.same_shape(b))
        fail(ErrorKind::InvalidInput, "sequences have incompatible shapes");
    const DualParam l{l_path.empty() ? zeros(static_cast<Index>(a.size()) * a.codomain_dim(), a.domain_dim())
                                     : matrix_from_json(load_json(l_path))};
    validate_dual_param(a, l, opt.tol);

    const PerturbReport pr = perturbation_report(a, b, opt.tol);
    const DualDeviationReport cd = canonical_dual_deviation(a, b, opt.tol);
    Json out{{"kind", "operator-valued"}, {"perturbation", to_json(pr)}, {"canonical_deviation", to_json(cd)}};
    bool ok = pr.holds() && cd.holds;
    std::vector<std::string> failed = pr.violations;
    if (!cd.holds)
        failed.push_back("canonical dual deviation exceeds its bound");
    if (pr.applicable) {
        const StableDual sd = stable_dual(a, b, l, opt.tol);
        out["stable_dual"] = Json{{"dual", to_json(sd.dual)}, {"M", matrix_to_json(sd.M.L)},
                                  {"is_dual", sd.is_dual}, {"deviation", to_json(sd.report)}};
        if (!sd.is_dual || !sd.report.holds) {
            ok = false;
            failed.push_back("stable dual check failed");
        }
        if (sd.report.is_frame_case) {
            const BestApproxReport ba =
                best_approx_check(a, b, l, opt.trials > 0 ? opt.trials : 20, opt.seed, opt.tol);
            out["best_approximation"] = to_json(ba);
            if (!ba.holds) {
                ok = false;
                failed.push_back("best approximation check failed");
            }
        }
    } else {
        out["stable_dual"] = nullptr;
    }
    emit(opt, out);
    std::cerr << "mu=" << pr.mu << " alpha=" << pr.alpha << " Delta=" << pr.Delta_HAHB
              << (pr.applicable ? "" : " (perturbation hypotheses not met)") << "\n";
    for (const std::string& f : failed)
        std::cerr << "violated: " << f << "\n";
    return status(ok);
}

Json reproduction_json(const Reproduction& r) {
    Json checks = Json::array();
    for (const Check& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"error", c.error}, {"tolerance", c.tolerance}, {"ok", c.ok}});
    return Json{{"name", r.name}, {"ok", r.ok()}, {"checks", std::move(checks)}};
}

int cmd_reproduce(const Options& opt, const std::string& name) {
    const fs::path dir(opt.data_dir);
    Reproduction r;
    if (name == "mercedes") {
        MercedesInput in{ov_sequence_from_json(load_json(dir / "mercedes.json")), {},
                         DualParam{matrix_from_json(load_json(dir / "ab.json"))}};
        for (const char* f : {"mercedes_eps_0.05.json", "mercedes_eps_0.1.json", "mercedes_eps_0.3.json"}) {
            const Json j = load_json(dir / f);
            if (!j.contains("epsilon") || !j["epsilon"].is_number())
                fail(ErrorKind::InvalidInput, std::string(f) + ": missing \"epsilon\"");
            in.perturbed.emplace_back(j["epsilon"].get<double>(), ov_sequence_from_json(j));
        }
        r = reproduce_mercedes(in, 1e-9, opt.tol);
    } else if (name == "gavruta-counterexample") {
        r = reproduce_gavruta(fusion_sequence_from_json(load_json(dir / "gavruta_W.json"), opt.tol),
                              fusion_sequence_from_json(load_json(dir / "gavruta_V.json"), opt.tol), 1e-12, opt.tol);
    } else if (name == "decomposition") {
        r = reproduce_decomposition({fusion_sequence_from_json(load_json(dir / "decomposition_lines.json"), opt.tol),
                                     fusion_sequence_from_json(load_json(dir / "decomposition_skewed.json"), opt.tol),
                                     fusion_sequence_from_json(load_json(dir / "decomposition_stacked.json"), opt.tol)},
                                    1e-9, opt.tol);
    } else {
        fail(ErrorKind::InvalidInput, "unknown example: " + name);
    }
    emit(opt, reproduction_json(r));
    for (const Check& c : r.checks)
        std::cerr << (c.ok ? "  ok    " : "  FAIL  ") << c.name << "  (error " << c.error << ")\n";
    return status(r.ok());
}

int cmd_sweep(const Options& opt, std::vector<std::string> names) {
    if (names.empty())
        names = sweep_names();
    Json out = Json::array();
    bool ok = true;
    for (const std::string& name : names) {
        const SweepResult r = run_sweep(name, {opt.seed, opt.trials, opt.tol});
        ok = ok && r.passed();
        out.push_back(Json{{"name", r.name},
                           {"trials", r.trials},
                           {"violations", r.violations},
                           {"skipped", r.skipped},
                           {"worst", r.worst},
                           {"witnesses", r.witnesses},
                           {"failures", r.failures},
                           {"passed", r.passed()}});
        std::cerr << (r.passed() ? "pass  " : "FAIL  ") << r.name << "  " << r.trials << " trials, " << r.violations
                  << " violations, " << r.skipped << " skipped\n";
    }
    emit(opt, out);
    return status(ok);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frames, duals, fusion frames and perturbation bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--tol-rank", opt.tol.tol_rank, "Relative singular value cutoff")->capture_default_str();
    app.add_option("--tol-eq", opt.tol.tol_eq, "Comparison tolerance")->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for randomized checks")->envname("FRAMELAB_SEED")->capture_default_str();
    app.add_option("--trials", opt.trials, "Trial count (0: default per suite)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", opt.out, "Write JSON here instead of stdout");
    app.add_option("--data-dir", opt.data_dir, "Directory with the example fixtures")->capture_default_str();

    std::string path, path_b, l_path, v_path, q_path, example;
    std::vector<std::string> sweeps;
    bool canonical = false;

    auto* analyze = app.add_subcommand("analyze", "Frame bounds and classification");
    analyze->add_option("input", path, "Sequence JSON")->required();

    auto* dual = app.add_subcommand("dual", "Canonical or alternate dual");
    dual->add_option("input", path, "Sequence JSON")->required();
    auto* l_opt = dual->add_option("--L", l_path, "Dual parameter (matrix JSON)");
    dual->add_flag("--canonical", canonical, "Canonical dual (default)")->excludes(l_opt);

    auto* perturb = app.add_subcommand("perturb", "Perturbation report for a pair of sequences");
    perturb->add_option("a", path, "Original sequence JSON")->required();
    perturb->add_option("b", path_b, "Perturbed sequence JSON")->required();
    perturb->add_option("--L", l_path, "Dual parameter of A (matrix JSON)");

    auto* fdual = app.add_subcommand("fusion-dual", "Fusion frame duals");
    fdual->add_option("input", path, "Fusion sequence JSON")->required();
    auto* fl_opt = fdual->add_option("--L", l_path, "Alternate dual parameter (matrix JSON)");
    fdual->add_flag("--canonical", canonical, "Canonical FF-dual (default)")->excludes(fl_opt);
    auto* v_opt = fdual->add_option("--dual", v_path, "Candidate dual fusion sequence to characterize")->excludes(fl_opt);
    fdual->add_option("--witness", q_path, "Witness family for --dual")->needs(v_opt);

    auto* fperturb = app.add_subcommand("fusion-perturb", "Stability of the canonical FF-dual");
    fperturb->add_option("w", path, "Fusion frame JSON")->required();
    fperturb->add_option("v", path_b, "Perturbed fusion sequence JSON")->required();

    auto* reproduce = app.add_subcommand("reproduce", "Re-run a worked example");
    reproduce->add_option("name", example, "Example name")
        ->required()
        ->check(CLI::IsMember({"mercedes", "gavruta-counterexample", "decomposition"}));

    auto* sweep = app.add_subcommand("sweep", "Randomized property sweeps");
    sweep->add_option("names", sweeps, "Suites to run (default: all)")->check(CLI::IsMember(sweep_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        opt.tol.validate();
        if (*analyze)
            return cmd_analyze(opt, path);
        if (*dual)
            return cmd_dual(opt, path, l_path);
        if (*perturb)
            return cmd_perturb(opt, path, path_b, l_path);
        if (*fdual) {
            const Json in = load_json(path);
            if (!is_fusion_json(in))
                fail(ErrorKind::InvalidInput, "fusion-dual expects a fusion sequence");
            return fusion_dual(opt, fusion_sequence_from_json(in, opt.tol), l_path, v_path, q_path);
        }
        if (*fperturb)
            return cmd_fusion_perturb(opt, fusion_sequence_from_json(load_json(path), opt.tol),
                                      fusion_sequence_from_json(load_json(path_b), opt.tol));
        if (*reproduce)
            return cmd_reproduce(opt, example);
        if (*sweep)
            return cmd_sweep(opt, sweeps);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error (invalid JSON): " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
