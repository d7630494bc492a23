#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace semirad {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

/// Dense square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  /// Throws DimensionMismatch unless entries.size() == n*n.
  Matrix(std::size_t n, std::vector<cplx> entries);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const cplx> d);
  static Matrix diagonal(std::initializer_list<cplx> d);
  static Matrix outer(const Vector& u, const Vector& v);  // u v*

  std::size_t dim() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const cplx> data() const noexcept { return a_; }
  std::span<cplx> data() noexcept { return a_; }

  Matrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const;
  Vector column(std::size_t j) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Matrix m, cplx s);
Matrix operator*(cplx s, Matrix m);
Matrix operator/(Matrix m, cplx s);
Vector operator*(const Matrix& m, const Vector& x);

/// Integer power, n >= 0.
Matrix power(const Matrix& m, int n);

/// Inner product linear in the first argument: <u, v> = v* u.
cplx inner(const Vector& u, const Vector& v);
double norm(const Vector& v);

/// Hermitian part (M + M*)/2 and skew part (M - M*)/(2i); both Hermitian.
Matrix hermitian_part(const Matrix& m);
Matrix skew_part(const Matrix& m);

struct TolerancePolicy {
  double rank_rtol = 1e-10;
  double check_atol = 1e-7;
  double sweep_tol = 1e-6;
  /// Relative threshold for structural predicates (null-space invariance,
  /// A-selfadjointness, A-normality).
  double compat_rtol = 1e-8;

  /// Throws InvalidArgument when a field is non-positive or rank_rtol >= 1e-2.
  void validate() const;
};

struct HermitianEigen {
  std::vector<double> values;  // non-increasing
  Matrix vectors;              // columns are eigenvectors
  std::size_t source_dim = 0;
};

/// Cyclic complex Jacobi. Throws NotHermitian / NonFinite.
HermitianEigen hermitian_eig(const Matrix& m);

struct PsdFunctions {
  Matrix sqrt;
  Matrix pinv;
  Matrix pinv_sqrt;
  Matrix proj;
  std::size_t rank = 0;
};

/// Functional calculus on a PSD spectrum. Eigenvalues within
/// -rank_rtol * lambda_1 are clamped to zero, below that NotPSD is thrown.
PsdFunctions psd_functions(const HermitianEigen& eig, const TolerancePolicy& tol);

/// Largest singular value.
double op_norm_2(const Matrix& m);

namespace detail {

/// In-place Jacobi on an n x n Hermitian buffer. On return the diagonal of `a`
/// holds the (unsorted) eigenvalues and `q` the eigenvectors as columns.
/// Buffers are caller-owned so hot loops avoid allocation.
void jacobi_inplace(std::span<cplx> a, std::span<cplx> q, std::size_t n);

/// Extreme eigenpairs of a Hermitian matrix held in a reusable workspace.
class EigWorkspace {
 public:
  explicit EigWorkspace(std::size_t n) : n_(n), a_(n * n), q_(n * n), v_(n) {}

  std::size_t dim() const noexcept { return n_; }
  std::span<cplx> input() noexcept { return a_; }

  /// Decomposes the matrix currently stored in input() (destroying it).
  void solve();

  double max_value() const { return v_[imax_]; }
  double min_value() const { return v_[imin_]; }
  Vector max_vector() const { return column(imax_); }
  Vector min_vector() const { return column(imin_); }

 private:
  Vector column(std::size_t j) const;

  std::size_t n_;
  std::vector<cplx> a_, q_;
  std::vector<double> v_;
  std::size_t imax_ = 0, imin_ = 0;
};

}  // namespace detail
}  // namespace semirad
