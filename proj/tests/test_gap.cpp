#include <cmath>

#include "framelab/gap.hpp"
#include "framelab/random.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace framelab;

namespace {

Subspace line(double angle) {
    Matrix b(2, 1);
    b << std::cos(angle), std::sin(angle);
    return Subspace::span(b);
}

Subspace coordinate(Index n, std::initializer_list<Index> axes) {
    Matrix b = zeros(n, static_cast<Index>(axes.size()));
    Index c = 0;
    for (Index a : axes)
        b(a, c++) = 1.0;
    return Subspace::span(b);
}

} // namespace

TEST_SUITE("gap") {

TEST_CASE("two lines in the plane") {
    for (double theta : {0.0, 0.1, 0.7, 1.2, M_PI / 2}) {
        const GapReport r = gap_Delta(line(0.3), line(0.3 + theta));
        CHECK(r.delta_vw == doctest::Approx(std::sin(theta)).epsilon(1e-12));
        CHECK(r.delta_wv == doctest::Approx(std::sin(theta)).epsilon(1e-12));
        CHECK(r.R_vw == doctest::Approx(std::cos(theta)).epsilon(1e-12));
        CHECK(r.Delta == doctest::Approx(std::sin(theta)).epsilon(1e-12));
        CHECK(r.below_one == (theta < M_PI / 2));
    }
}

TEST_CASE("nested subspaces are asymmetric") {
    const Subspace l = coordinate(3, {0});
    const Subspace p = coordinate(3, {0, 1});
    CHECK(gap_delta(l, p) == doctest::Approx(0.0));
    CHECK(gap_delta(p, l) == doctest::Approx(1.0));
    CHECK(gap_Delta(l, p).Delta == doctest::Approx(1.0));
    CHECK_FALSE(gap_Delta(l, p).below_one);
}

TEST_CASE("zero subspace conventions") {
    const Subspace z(3);
    const Subspace p = coordinate(3, {0, 1});
    CHECK(gap_delta(z, p) == 0.0);
    CHECK(gap_delta(p, z) == doctest::Approx(1.0));
    CHECK(infimum_cosine(z, p) == 1.0);
    CHECK(gap_Delta(z, z).Delta == 0.0);
}

TEST_CASE("Delta equals the projector distance") {
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const Index n = rng.integer(1, 6);
        const bool complex = rng.coin();
        const Subspace v = random_subspace(rng, n, rng.integer(0, n), complex);
        const Subspace w = random_subspace(rng, n, rng.integer(0, n), complex);
        const GapReport r = gap_Delta(v, w);
        CHECK(r.Delta == doctest::Approx(oracle::op_norm(v.projector() - w.projector())).epsilon(1e-9));
        CHECK(r.projector_discrepancy < 1e-9);
        CHECK(r.delta_vw <= 1.0 + 1e-12);
        // delta(V, W)^2 + R(V, W)^2 = 1 for V != {0}.
        if (!v.is_zero())
            CHECK(r.delta_vw * r.delta_vw + r.R_vw * r.R_vw == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("range gap bound") {
    Rng rng(22);
    for (int t = 0; t < 50; ++t) {
        const Index rows = rng.integer(2, 6), cols = rng.integer(1, 4);
        const Matrix tm = rng.gaussian(rows, cols, true);
        const Matrix s = tm + rng.uniform(0.0, 0.3) * rng.gaussian(rows, cols, true);
        const RealVector sv = singular_values(tm);
        const RangeGapBound r = gap_range_bound(tm, s, sv(sv.size() - 1) * rng.uniform(0.5, 1.0));
        CHECK(r.holds);
        CHECK(r.measured <= r.bound + 1e-12);
    }
}

TEST_CASE("bounded below consequences") {
    const GapReport g = gap_Delta(line(0.0), line(0.4));
    const BoundedBelowReport r = bounded_below_consequences(line(0.0), line(0.4));
    CHECK(r.first_part_applicable);
    CHECK(r.second_part_applicable);
    REQUIRE(r.trivial_intersection.has_value());
    CHECK(*r.trivial_intersection);
    REQUIRE(r.deltas_equal.has_value());
    CHECK(*r.deltas_equal);
    REQUIRE(r.isomorphisms.has_value());
    CHECK(*r.isomorphisms);
    CHECK(r.min_sv_pw_on_v == doctest::Approx(std::cos(0.4)).epsilon(1e-12));
    CHECK(r.Delta == doctest::Approx(g.Delta));

    const BoundedBelowReport nested = bounded_below_consequences(coordinate(3, {0, 1}), coordinate(3, {0}));
    CHECK_FALSE(nested.first_part_applicable);
    CHECK_FALSE(nested.trivial_intersection.has_value());
}

}
