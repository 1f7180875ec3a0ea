#include "framelab/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace framelab {

namespace {

using Svd = Eigen::JacobiSVD<Matrix>;

Svd full_svd(const Matrix& m) { return Svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV); }

Index rank_from(const RealVector& sv, double tol_rank) {
    if (sv.size() == 0 || sv(0) == 0.0)
        return 0;
    const double cutoff = tol_rank * sv(0);
    Index r = 0;
    while (r < sv.size() && sv(r) > cutoff)
        ++r;
    return r;
}

} // namespace

void ToleranceConfig::validate() const {
    if (!(tol_rank > 0.0) || !(tol_rank < 1.0))
        fail(ErrorKind::InvalidInput, "tol_rank must lie in (0, 1)");
    if (!(tol_eq > 0.0) || !std::isfinite(tol_eq))
        fail(ErrorKind::InvalidInput, "tol_eq must be positive");
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite())
        fail(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }
Matrix zeros(Index rows, Index cols) { return Matrix::Zero(rows, cols); }

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {
    if (ambient_dim < 0)
        fail(ErrorKind::InvalidInput, "negative ambient dimension");
}

Subspace Subspace::span(const Matrix& spanning, const ToleranceConfig& tol) {
    return range_basis(spanning, tol);
}

Subspace Subspace::full(Index ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = identity(ambient_dim);
    return s;
}

Subspace Subspace::from_orthonormal(Matrix basis, const ToleranceConfig& tol) {
    require_finite(basis, "subspace basis");
    const Index r = basis.cols();
    if (r > basis.rows())
        fail(ErrorKind::InvalidInput, "more basis vectors than the ambient dimension");
    if (r > 0 && op_norm(basis.adjoint() * basis - identity(r)) > tol.tol_eq)
        fail(ErrorKind::InvalidInput, "basis columns are not orthonormal");
    Subspace s(basis.rows());
    s.basis_ = std::move(basis);
    return s;
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Subspace Subspace::complement(const ToleranceConfig& tol) const {
    if (is_zero())
        return full(ambient_);
    return kernel_basis(basis_.adjoint(), tol);
}

// ---------------------------------------------------------------- kernels

RealVector singular_values(const Matrix& m) {
    require_finite(m, "matrix");
    if (m.size() == 0)
        return RealVector(0);
    return Svd(m).singularValues();
}

double op_norm(const Matrix& m) {
    const RealVector sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(0);
}

double min_nonzero_sv(const Matrix& m, const ToleranceConfig& tol) {
    const RealVector sv = singular_values(m);
    const Index r = rank_from(sv, tol.tol_rank);
    if (r == 0)
        fail(ErrorKind::DegenerateInput, "matrix is numerically zero");
    return sv(r - 1);
}

Index numerical_rank(const Matrix& m, const ToleranceConfig& tol) {
    return rank_from(singular_values(m), tol.tol_rank);
}

Subspace range_basis(const Matrix& m, const ToleranceConfig& tol) {
    require_finite(m, "matrix");
    if (m.size() == 0)
        return Subspace(m.rows());
    const Svd svd = full_svd(m);
    const Index r = rank_from(svd.singularValues(), tol.tol_rank);
    return Subspace::from_orthonormal(svd.matrixU().leftCols(r), tol);
}

Subspace kernel_basis(const Matrix& m, const ToleranceConfig& tol) {
    require_finite(m, "matrix");
    if (m.rows() == 0 || m.cols() == 0)
        return Subspace::full(m.cols());
    const Svd svd = full_svd(m);
    const Index r = rank_from(svd.singularValues(), tol.tol_rank);
    return Subspace::from_orthonormal(svd.matrixV().rightCols(m.cols() - r), tol);
}

Matrix proj(const Subspace& s) { return s.projector(); }

Matrix restricted_inverse(const Matrix& s, const Subspace& v, const ToleranceConfig& tol) {
    require_finite(s, "operator");
    const Index n = v.ambient_dim();
    if (s.rows() != n || s.cols() != n)
        fail(ErrorKind::InvalidInput, "operator and subspace dimensions differ");
    if (v.is_zero())
        return zeros(n, n);
    const double scale = scale_of(op_norm(s));
    if (op_norm(s - s.adjoint()) > tol.tol_eq * scale)
        fail(ErrorKind::InvalidInput, "operator is not self-adjoint");
    const Matrix& b = v.basis();
    const Matrix sb = s * b;
    if (op_norm(sb - b * (b.adjoint() * sb)) > tol.tol_eq * scale)
        fail(ErrorKind::InvalidInput, "subspace is not invariant under the operator");

    Matrix compressed = b.adjoint() * sb;
    compressed = 0.5 * (compressed + compressed.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(compressed);
    const RealVector& ev = eig.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (!(ev(0) > tol.tol_rank * top))
        fail(ErrorKind::SingularRestriction, "restriction to the subspace is not invertible");
    const Matrix inv = eig.eigenvectors() * ev.cwiseInverse().cast<Scalar>().asDiagonal() *
                       eig.eigenvectors().adjoint();
    return b * inv * b.adjoint();
}

Matrix checked_inverse(const Matrix& a, const ToleranceConfig& tol) {
    require_finite(a, "matrix");
    if (a.rows() != a.cols())
        fail(ErrorKind::InvalidInput, "matrix is not square");
    if (a.rows() == 0)
        return a;
    const RealVector sv = singular_values(a);
    if (rank_from(sv, tol.tol_rank) < a.rows())
        fail(ErrorKind::SingularRestriction, "matrix is singular");
    return a.fullPivLu().inverse();
}

bool is_orthogonal_projection(const Matrix& p, double tol_eq) {
    if (p.rows() != p.cols() || !p.allFinite())
        return false;
    return op_norm(p - p.adjoint()) <= tol_eq && op_norm(p * p - p) <= tol_eq;
}

} // namespace framelab
