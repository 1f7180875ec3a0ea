#include <cmath>
#include <limits>

#include "framelab/random.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace framelab;

TEST_SUITE("linalg") {

TEST_CASE("oracle eigen solver recovers a planted spectrum") {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const Index n = rng.integer(1, 6);
        const Matrix u = random_unitary(rng, n, true);
        Eigen::VectorXd d(n);
        for (Index i = 0; i < n; ++i)
            d(i) = rng.uniform(-3.0, 3.0);
        const Matrix h = u * d.cast<Scalar>().asDiagonal() * u.adjoint();
        const auto e = oracle::hermitian_eigen(h);
        std::sort(d.data(), d.data() + n);
        for (Index i = 0; i < n; ++i)
            CHECK(e.values[static_cast<std::size_t>(i)] == doctest::Approx(d(i)).epsilon(1e-10));
        CHECK(max_abs(h * e.vectors - e.vectors * Eigen::Map<const Eigen::VectorXd>(e.values.data(), n)
                                                      .cast<Scalar>()
                                                      .asDiagonal()) < 1e-10);
    }
}

TEST_CASE("operator norm matches the oracle") {
    Rng rng(2);
    for (int t = 0; t < 30; ++t) {
        const Matrix m = rng.gaussian(rng.integer(1, 7), rng.integer(1, 7), rng.coin());
        CHECK(op_norm(m) == doctest::Approx(oracle::op_norm(m)).epsilon(1e-10));
    }
    CHECK(op_norm(Matrix(0, 3)) == 0.0);
}

TEST_CASE("rank, range and kernel") {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const Index rows = rng.integer(1, 7), cols = rng.integer(1, 7);
        const Index r = rng.integer(0, std::min(rows, cols));
        const bool complex = rng.coin();
        const Matrix m = rng.gaussian(rows, r, complex) * rng.gaussian(r, cols, complex);
        CHECK(numerical_rank(m) == r);
        const Subspace ran = range_basis(m);
        const Subspace ker = kernel_basis(m);
        CHECK(ran.dim() == r);
        CHECK(ker.dim() == cols - r);
        CHECK(max_abs(m * ker.basis()) < 1e-9);
        CHECK(max_abs(ran.projector() * m - m) < 1e-9);
        // Same kernel as row reduction.
        const Matrix k = oracle::kernel(m, 1e-8);
        CHECK(k.cols() == ker.dim());
        CHECK(max_abs(oracle::projector(k) - ker.projector()) < 1e-8);
    }
}

TEST_CASE("kernel of the zero matrix is everything") {
    CHECK(kernel_basis(zeros(3, 4)).dim() == 4);
    CHECK(range_basis(zeros(3, 4)).is_zero());
}

TEST_CASE("subspaces") {
    Matrix spanning(3, 3);
    spanning << 1, 2, 0, 0, 0, 0, 1, 2, 1;
    const Subspace s = Subspace::span(spanning);
    CHECK(s.dim() == 2);
    CHECK(s.ambient_dim() == 3);
    CHECK(is_orthogonal_projection(s.projector(), 1e-12));
    CHECK(max_abs(s.projector() - oracle::projector(spanning)) < 1e-12);
    const Subspace c = s.complement();
    CHECK(c.dim() == 1);
    CHECK(max_abs(s.projector() + c.projector() - identity(3)) < 1e-12);
    CHECK(Subspace(3).is_zero());
    CHECK(Subspace(3).complement().dim() == 3);
    CHECK(max_abs(Subspace::full(2).projector() - identity(2)) == 0.0);
    CHECK_THROWS_KIND(Subspace::from_orthonormal(spanning), ErrorKind::InvalidInput);
}

TEST_CASE("restricted inverse") {
    // S = diag(2, 4, 0) on V = span{e1, e2}: (S|V)^{-1} P_V = diag(1/2, 1/4, 0).
    Matrix s = zeros(3, 3);
    s(0, 0) = 2.0;
    s(1, 1) = 4.0;
    Matrix b = zeros(3, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const Matrix g = restricted_inverse(s, Subspace::span(b));
    Matrix expected = zeros(3, 3);
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.25;
    CHECK(max_abs(g - expected) < 1e-14);

    Rng rng(4);
    const Matrix u = random_unitary(rng, 4, true);
    Eigen::VectorXd d(4);
    d << 0.5, 3.0, 0.0, 0.0;
    const Matrix h = u * d.cast<Scalar>().asDiagonal() * u.adjoint();
    const Subspace v = Subspace::from_orthonormal(u.leftCols(2));
    const Matrix gi = restricted_inverse(h, v);
    CHECK(max_abs(gi * h - v.projector()) < 1e-12);
    CHECK(max_abs(h * gi - v.projector()) < 1e-12);
}

TEST_CASE("checked inverse rejects singular input") {
    Matrix a(2, 2);
    a << 1, 2, 2, 4;
    CHECK_THROWS_KIND(checked_inverse(a), ErrorKind::SingularRestriction);
    a << 2, 1, 1, 3;
    CHECK(max_abs(checked_inverse(a) - oracle::inverse2(a)) < 1e-14);
}

TEST_CASE("input validation") {
    Matrix a = identity(2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_KIND(op_norm(a), ErrorKind::InvalidInput);
    ToleranceConfig bad;
    bad.tol_eq = -1.0;
    CHECK_THROWS_KIND(bad.validate(), ErrorKind::InvalidInput);
    bad = {};
    bad.tol_rank = 0.0;
    CHECK_THROWS_KIND(bad.validate(), ErrorKind::InvalidInput);
}

TEST_CASE("scale_of") {
    CHECK(scale_of(0.1) == 1.0);
    CHECK(scale_of(5.0, 2.0) == 5.0);
    CHECK(scale_of(0.5, 7.0) == 7.0);
}

}
