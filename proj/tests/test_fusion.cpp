#include <cmath>

#include "framelab/fusion.hpp"
#include "framelab/gap.hpp"
#include "framelab/random.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace framelab;

namespace {

Matrix col(std::initializer_list<double> xs) {
    Matrix m(static_cast<Index>(xs.size()), 1);
    Index i = 0;
    for (double x : xs)
        m(i++, 0) = x;
    return m;
}

FusionPair pair(const Matrix& spanning, double weight) { return {Subspace::span(spanning), weight}; }

FusionSequence orthonormal_lines() { return FusionSequence(2, {pair(col({1, 0}), 1.0), pair(col({0, 1}), 1.0)}); }

FusionSequence skewed_lines() { return FusionSequence(2, {pair(col({1, 0}), 1.0), pair(col({1, 1}), 1.0)}); }

bool same_subspace(const Subspace& a, const Subspace& b) { return gap_Delta(a, b).Delta < 1e-10; }

} // namespace

TEST_SUITE("fusion") {

TEST_CASE("fusion sequence validation") {
    CHECK_THROWS_KIND(FusionSequence(2, {pair(col({1, 0}), -1.0)}), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(FusionSequence(2, {pair(col({1, 0, 0}), 1.0)}), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(FusionSequence(2, {{Subspace(2), 1.0}}), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(FusionSequence(2, {pair(col({1, 0}), 0.0)}), ErrorKind::InvalidInput);
    const FusionSequence w(2, {pair(col({1, 0}), 2.0), {Subspace(2), 0.0}});
    CHECK(w.is_degenerate(1));
    CHECK_FALSE(w.is_degenerate(0));
    CHECK(max_abs(analysis_operator(fusion_to_ov(w)).topRows(2) - 2.0 * w.subspace(0).projector()) == 0.0);
}

TEST_CASE("not a fusion frame") {
    const FusionSequence w(2, {pair(col({1, 0}), 1.0)});
    CHECK_THROWS_KIND(fusion_frame_operator_inverse(w), ErrorKind::NotAFrame);
    CHECK_THROWS_KIND(canonical_ffdual(w), ErrorKind::NotAFrame);
}

TEST_CASE("Gavruta duality is not symmetric") {
    const FusionSequence w = orthonormal_lines();
    const FusionSequence v(2, {pair(identity(2), 1.0), pair(identity(2), 1.0)});
    CHECK(max_abs(gavruta_sum(v, w) - identity(2)) < 1e-14);
    CHECK(max_abs(gavruta_sum(w, v) - 0.5 * identity(2)) < 1e-14);
    CHECK(gavruta_is_dual(v, w));
    CHECK_FALSE(gavruta_is_dual(w, v));

    const FFDual ff = ffdual_from_gavruta(v, w);
    CHECK(ffdual_verify(ff.dual, w, ff.witness));
    CHECK(same_subspace(ff.dual.subspace(0), v.subspace(0)));
    CHECK_THROWS_KIND(ffdual_from_gavruta(w, v), ErrorKind::InvalidInput);
}

TEST_CASE("Gavruta dual with a vanishing block") {
    // S_W = diag(2, 1); the first pair contributes P_{e2} S^{-1} P_{e1} = 0.
    const FusionSequence w(2, {pair(col({1, 0}), 1.0), pair(col({0, 1}), 1.0), pair(col({1, 0}), 1.0)});
    const FusionSequence v(2, {pair(col({0, 1}), 1.0), pair(col({0, 1}), 1.0), pair(identity(2), 2.0)});
    CHECK(gavruta_is_dual(v, w));
    CHECK_THROWS_KIND(ffdual_from_gavruta(v, w), ErrorKind::DegenerateGavrutaDual);
}

TEST_CASE("canonical FF-dual of span{e1}, span{e1 + e2}") {
    const FusionSequence w = skewed_lines();
    Matrix s(2, 2);
    s << 1.5, 0.5, 0.5, 0.5;
    const Matrix sinv = oracle::inverse2(s);
    CHECK(max_abs(fusion_frame_operator_inverse(w) - sinv) < 1e-12);

    const FusionSequence can = canonical_ffdual(w);
    CHECK(same_subspace(can.subspace(0), Subspace::span(sinv * col({1, 0}))));
    CHECK(same_subspace(can.subspace(1), Subspace::span(sinv * col({1, 1}))));
    CHECK(same_subspace(can.subspace(1), Subspace::span(col({0, 1}))));
    CHECK(can.weight(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(can.weight(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const FFDual with = canonical_ffdual_with_witness(w);
    const FFDualCheck c = ffdual_check(with.dual, w, with.witness);
    CHECK(c.ok);
    CHECK(c.reconstruction_residual < 1e-12);
    CHECK(tight_orthogonal_decomposition(w) == std::nullopt);
}

TEST_CASE("canonical FF-dual of an orthonormal basis is itself") {
    const FusionSequence w = orthonormal_lines();
    const FusionSequence can = canonical_ffdual(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(same_subspace(can.subspace(i), w.subspace(i)));
        CHECK(can.weight(i) == doctest::Approx(1.0));
    }
}

TEST_CASE("witness checks catch bad families") {
    const FusionSequence w = skewed_lines();
    FFDual d = canonical_ffdual_with_witness(w);
    QWitness q = d.witness;
    q.Q[0] *= 2.0;
    const FFDualCheck c = ffdual_check(d.dual, w, q);
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.diagnostics.empty());
    q = d.witness;
    q.Q.pop_back();
    CHECK_THROWS_KIND(ffdual_check(d.dual, w, q), ErrorKind::InvalidInput);
}

TEST_CASE("alternate FF-duals") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const FusionSequence w = random_fusion_frame(rng, rng.integer(1, 4), rng.integer(2, 5), rng.coin(), true);
        const Matrix ta = analysis_operator(fusion_to_ov(w));
        const Matrix k = kernel_basis(ta.adjoint()).basis();
        const Matrix l = k * rng.gaussian(k.cols(), w.ambient_dim(), true) * rng.uniform(0.0, 1.0);
        const FFDual d = alternate_ffdual_with_witness(w, l);
        CHECK(ffdual_verify(d.dual, w, d.witness));
        // L = 0 gives the canonical FF-dual.
        const FusionSequence zero = alternate_ffdual(w, zeros(ta.rows(), w.ambient_dim()));
        const FusionSequence can = canonical_ffdual(w);
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(zero.weight(i) == doctest::Approx(can.weight(i)).epsilon(1e-10));
            CHECK(same_subspace(zero.subspace(i), can.subspace(i)));
        }
    }
    const FusionSequence w = skewed_lines();
    CHECK_THROWS_KIND(alternate_ffdual(w, identity(4).leftCols(2)), ErrorKind::InvalidDualParam);
    CHECK_THROWS_KIND(alternate_ffdual(w, identity(2)), ErrorKind::InvalidDualParam);
}

TEST_CASE("characterization finds generated duals and rejects non-duals") {
    const FusionSequence w = skewed_lines();
    const auto can = ffdual_characterize(canonical_ffdual(w), w);
    REQUIRE(can.has_value());
    CHECK(ffdual_verify(canonical_ffdual(w), w, can->witness));

    // Orthonormal lines with doubled weights cannot reconstruct: sum 2 e^{i t_k} P_k != I.
    const FusionSequence lines = orthonormal_lines();
    const FusionSequence doubled(2, {pair(col({1, 0}), 2.0), pair(col({0, 1}), 2.0)});
    CHECK_FALSE(ffdual_characterize(doubled, lines).has_value());

    Rng rng(32);
    for (int t = 0; t < 20; ++t) {
        const FusionSequence wr = random_fusion_frame(rng, rng.integer(1, 3), rng.integer(2, 4), rng.coin());
        const Matrix k = kernel_basis(analysis_operator(fusion_to_ov(wr)).adjoint()).basis();
        const Matrix l = k * rng.gaussian(k.cols(), wr.ambient_dim(), true) * rng.uniform(0.0, 1.0);
        const FusionSequence v = alternate_ffdual(wr, l);
        const auto found = ffdual_characterize(v, wr);
        REQUIRE(found.has_value());
        CHECK(ffdual_verify(v, wr, found->witness));
    }
}

TEST_CASE("tight orthogonal decomposition") {
    Rng rng(33);
    for (int t = 0; t < 10; ++t) {
        const FusionSequence w = random_parseval_fusion_frame(rng, rng.integer(1, 6), rng.coin());
        const auto p = tight_orthogonal_decomposition(w);
        REQUIRE(p.has_value());
        REQUIRE(p->groups.size() == 1);
        CHECK(p->groups[0].lambda == doctest::Approx(1.0));
        CHECK(p->groups[0].indices.size() == w.size());
    }
    // Weights 1 and 3 on orthogonal planes give eigenvalues 1 and 9.
    Matrix a = zeros(4, 2), b = zeros(4, 2);
    a(0, 0) = a(1, 1) = 1.0;
    b(2, 0) = b(3, 1) = 1.0;
    const FusionSequence stacked(4, {pair(b, 3.0), pair(a, 1.0), {Subspace(4), 0.0}});
    const auto p = tight_orthogonal_decomposition(stacked);
    REQUIRE(p.has_value());
    REQUIRE(p->groups.size() == 2);
    CHECK(p->groups[0].lambda == doctest::Approx(1.0));
    CHECK(p->groups[1].lambda == doctest::Approx(9.0));
    CHECK(p->groups[0].indices == std::vector<std::size_t>{1});
    CHECK(p->degenerate == std::vector<std::size_t>{2});
}

TEST_CASE("desiderata hold on a small batch") {
    const DesiderataReport r = desiderata_suite({}, 5, 12);
    CHECK(r.trials == 12);
    CHECK(r.all());
}

TEST_CASE("degenerate indices") {
    const FusionSequence w(2, {pair(col({1, 0}), 1.0), {Subspace(2), 0.0}, pair(col({0, 1}), 1.0)});
    const FusionSequence v(2, {{Subspace(2), 0.0}, pair(col({0, 1}), 1.0), pair(col({0, 1}), 1.0)});
    CHECK(degenerate_indices(v, w) == std::vector<std::size_t>{0, 1});
}

}
