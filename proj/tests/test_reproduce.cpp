#include <cmath>
#include <filesystem>

#include "framelab/io.hpp"
#include "framelab/reproduce.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace framelab;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FRAMELAB_DATA_DIR;

FusionSequence fixture(const char* name) { return fusion_sequence_from_json(load_json(kData / name)); }

MercedesInput mercedes_input() {
    MercedesInput in{ov_sequence_from_json(load_json(kData / "mercedes.json")), {},
                     DualParam{matrix_from_json(load_json(kData / "ab.json"))}};
    for (const char* f : {"mercedes_eps_0.05.json", "mercedes_eps_0.1.json", "mercedes_eps_0.3.json"}) {
        const Json j = load_json(kData / f);
        in.perturbed.emplace_back(j["epsilon"].get<double>(), ov_sequence_from_json(j));
    }
    return in;
}

std::string failures(const Reproduction& r) {
    std::string s;
    for (const Check& c : r.checks)
        if (!c.ok)
            s += c.name + "; ";
    return s;
}

} // namespace

TEST_SUITE("reproduce") {

TEST_CASE("closed forms agree with direct computation") {
    for (double eps : {0.0, 0.05, 0.2, 0.6}) {
        const Matrix d = mercedes_analysis() - mercedes_perturbed_analysis(eps);
        CHECK(mercedes_mu(eps) == doctest::Approx(oracle::op_norm(d)).epsilon(1e-12));
    }
    // eps = 0 leaves the frame unchanged, and (a, b) = (0, 0) gives its canonical dual.
    CHECK(max_abs(mercedes_stable_dual(0.0, 0.0, 0.0) - mercedes_analysis()) < 1e-14);
    const auto [a, b] = mercedes_canonical_ab(0.0);
    CHECK(a == doctest::Approx(0.0));
    CHECK(b == doctest::Approx(0.0));
}

TEST_CASE("Mercedes reproduction") {
    const Reproduction r = reproduce_mercedes(mercedes_input());
    INFO(failures(r));
    CHECK(r.ok());
    CHECK(r.checks.size() > 10);
}

TEST_CASE("Mercedes reproduction rejects other inputs") {
    MercedesInput in = mercedes_input();
    in.a = OVSequence::from_analysis(Matrix::Identity(2, 2), 1);
    CHECK_THROWS_KIND(reproduce_mercedes(in), ErrorKind::InvalidInput);
}

TEST_CASE("Gavruta counterexample") {
    const Reproduction r = reproduce_gavruta(fixture("gavruta_W.json"), fixture("gavruta_V.json"));
    INFO(failures(r));
    CHECK(r.ok());
}

TEST_CASE("decomposition examples") {
    const Reproduction r = reproduce_decomposition(
        {fixture("decomposition_lines.json"), fixture("decomposition_skewed.json"),
         fixture("decomposition_stacked.json")});
    INFO(failures(r));
    CHECK(r.ok());
}

TEST_CASE("swapped Gavruta fixtures are rejected") {
    CHECK_THROWS_KIND(reproduce_gavruta(fixture("gavruta_V.json"), fixture("gavruta_W.json")), ErrorKind::InvalidInput);
}

} // TEST_SUITE
