#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "framelab/error.hpp"

namespace framelab {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct ToleranceConfig {
    double tol_rank = 1e-10; ///< relative singular value cutoff
    double tol_eq = 1e-8;    ///< absolute comparison tolerance

    void validate() const;
};

/// Closed subspace of C^n stored through an orthonormal basis (n x r).
/// The zero subspace is a basis with zero columns.
class Subspace {
public:
    /// {0} in C^n.
    explicit Subspace(Index ambient_dim = 0);

    /// Span of the columns of `spanning`, re-orthonormalized; columns below the
    /// rank cutoff are dropped.
    static Subspace span(const Matrix& spanning, const ToleranceConfig& tol = {});
    static Subspace full(Index ambient_dim);
    /// Trusts that `basis` already has orthonormal columns (checked against tol_eq).
    static Subspace from_orthonormal(Matrix basis, const ToleranceConfig& tol = {});

    Index ambient_dim() const noexcept { return ambient_; }
    Index dim() const noexcept { return basis_.cols(); }
    bool is_zero() const noexcept { return basis_.cols() == 0; }
    const Matrix& basis() const noexcept { return basis_; }

    Matrix projector() const;
    Subspace complement(const ToleranceConfig& tol = {}) const;

private:
    Index ambient_ = 0;
    Matrix basis_;
};

/// Throws InvalidInput on NaN/Inf entries.
void require_finite(const Matrix& m, const char* what);

Matrix identity(Index n);
Matrix zeros(Index rows, Index cols);

/// Largest singular value; 0 for empty matrices.
double op_norm(const Matrix& m);
/// All singular values, descending.
RealVector singular_values(const Matrix& m);
/// Smallest singular value above tol_rank * sigma_max.
double min_nonzero_sv(const Matrix& m, const ToleranceConfig& tol = {});
/// Number of singular values above tol_rank * sigma_max.
Index numerical_rank(const Matrix& m, const ToleranceConfig& tol = {});

Subspace range_basis(const Matrix& m, const ToleranceConfig& tol = {});
Subspace kernel_basis(const Matrix& m, const ToleranceConfig& tol = {});

Matrix proj(const Subspace& s);

/// (S|V)^{-1} P_V for self-adjoint S leaving V invariant.
Matrix restricted_inverse(const Matrix& s, const Subspace& v, const ToleranceConfig& tol = {});

/// Inverse of a square matrix whose smallest singular value clears the rank cutoff.
Matrix checked_inverse(const Matrix& a, const ToleranceConfig& tol = {});

bool is_orthogonal_projection(const Matrix& p, double tol_eq);

inline double scale_of(double a, double b = 0.0) { return std::max({1.0, a, b}); }

} // namespace framelab
