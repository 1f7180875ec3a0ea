#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "framelab/io.hpp"
#include "framelab/random.hpp"
#include "helpers.hpp"

using namespace framelab;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FRAMELAB_DATA_DIR;

} // namespace

TEST_SUITE("io") {

TEST_CASE("matrix round trip is exact") {
    Rng rng(1);
    const Matrix c = rng.gaussian(3, 4, true);
    const Matrix back = matrix_from_json(Json::parse(matrix_to_json(c).dump()));
    CHECK((back - c).norm() == 0.0);
    const Matrix r = rng.gaussian(2, 2, false);
    const Json jr = matrix_to_json(r);
    CHECK(jr["data"][0].is_number());
    CHECK((matrix_from_json(jr) - r).norm() == 0.0);
    const Matrix z(0, 3);
    CHECK(matrix_from_json(matrix_to_json(z)).cols() == 3);
}

TEST_CASE("malformed matrices") {
    CHECK_THROWS_KIND(matrix_from_json(Json::parse(R"([1, 2])")), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})")),
                      ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": ["x"]})")),
                      ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(matrix_from_json(Json::parse(R"({"rows": -1, "cols": 1, "data": []})")),
                      ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1, 2, 3]]})")),
                      ErrorKind::InvalidInput);
}

TEST_CASE("sequence round trip and vector shorthand") {
    Rng rng(2);
    const OVSequence a = random_ov_sequence(rng, 3, 2, 4, 3, true);
    const OVSequence back = ov_sequence_from_json(Json::parse(to_json(a).dump()));
    REQUIRE(back.same_shape(a));
    CHECK((analysis_operator(back) - analysis_operator(a)).norm() == 0.0);

    const OVSequence v = ov_sequence_from_json(Json::parse(R"({"vectors": [[1, 0], [0, [0, 1]]]})"));
    CHECK(v.size() == 2);
    CHECK(v.codomain_dim() == 1);
    CHECK(v.domain_dim() == 2);
    // A_i x = <x, f_i>, so the block row is the conjugate of the vector.
    CHECK(v.block(1)(0, 1) == Scalar(0.0, -1.0));
    CHECK_THROWS_KIND(ov_sequence_from_json(Json::parse(R"({"vectors": []})")), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(ov_sequence_from_json(Json::parse(R"({"vectors": [[1, 0], [1]]})")), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(ov_sequence_from_json(Json::parse(R"({"blocks": 3})")), ErrorKind::InvalidInput);
}

TEST_CASE("fusion round trip") {
    Rng rng(3);
    const FusionSequence w = random_fusion_frame(rng, 3, 4, true, true);
    const Json j = Json::parse(to_json(w).dump());
    CHECK(is_fusion_json(j));
    const FusionSequence back = fusion_sequence_from_json(j);
    REQUIRE(back.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(back.weight(i) == w.weight(i));
        CHECK(back.is_degenerate(i) == w.is_degenerate(i));
        CHECK((back.subspace(i).projector() - w.subspace(i).projector()).norm() < 1e-14);
    }
    CHECK_FALSE(is_fusion_json(Json::parse(R"({"vectors": [[1]]})")));
    CHECK_THROWS_KIND(fusion_sequence_from_json(Json::parse(R"({"ambient_dim": 2, "pairs": [{"weight": 1}]})")),
                      ErrorKind::InvalidInput);
}

TEST_CASE("witness round trip") {
    Rng rng(4);
    QWitness q{{rng.gaussian(2, 2, true), rng.gaussian(2, 2, false)}};
    const QWitness back = witness_from_json(Json::parse(to_json(q).dump()));
    REQUIRE(back.Q.size() == 2);
    CHECK((back.Q[0] - q.Q[0]).norm() == 0.0);
    CHECK_THROWS_KIND(witness_from_json(Json::parse("{}")), ErrorKind::InvalidInput);
}

TEST_CASE("reports use null for non-finite numbers") {
    FusionStabilityReport r;
    r.C = std::numeric_limits<double>::infinity();
    const Json j = to_json(r);
    CHECK(j["C"].is_null());
    CHECK(j["bound"].is_null());
    CHECK(j["measured"].is_null());
    const Json f = to_json(FrameReport{});
    CHECK(f.contains("H_A_dim"));
}

TEST_CASE("file loading") {
    const Json j = load_json(kData / "mercedes.json");
    CHECK(classify(ov_sequence_from_json(j)).is_parseval);
    CHECK_THROWS_KIND(load_json(kData / "missing.json"), ErrorKind::InvalidInput);
    const fs::path bad = fs::temp_directory_path() / "framelab_bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_KIND(load_json(bad), ErrorKind::InvalidInput);
    fs::remove(bad);
}

} // TEST_SUITE
