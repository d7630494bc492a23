#pragma once

#include <memory>
#include <string_view>

#include "semirad/linalg.hpp"

namespace semirad {

/// A Hilbert space C^n carrying the semi-inner product <x|y>_A = <Ax, y>.
///
/// Convention used everywhere in this library: inner products are linear in
/// the first argument and conjugate-linear in the second, <u, v> = v* u.
///
/// In finite dimensions the class of operators admitting an A-adjoint and the
/// class of A-bounded operators coincide; both reduce to T N(A) in N(A).
/// AOperator::compatible() tests exactly that condition.
class SemiHilbertSpace {
 public:
  /// Validates A (Hermitian, PSD, nonzero) and caches its functional calculus.
  /// Throws NotHermitian, NotPSD, ZeroA, NonFinite, InvalidArgument.
  static std::shared_ptr<const SemiHilbertSpace> create(const Matrix& a, TolerancePolicy tol = {});

  std::size_t dim() const noexcept { return a_.dim(); }
  std::size_t rank() const noexcept { return rank_; }
  const Matrix& a() const noexcept { return a_; }
  const HermitianEigen& eig() const noexcept { return eig_; }
  const Matrix& sqrt_a() const noexcept { return sqrt_a_; }
  const Matrix& pinv_a() const noexcept { return pinv_a_; }
  const Matrix& pinv_sqrt_a() const noexcept { return pinv_sqrt_a_; }
  const Matrix& proj_range() const noexcept { return proj_; }
  const TolerancePolicy& tol() const noexcept { return tol_; }

  /// <Ax, y>. Throws DimensionMismatch.
  cplx semi_inner(const Vector& x, const Vector& y) const;
  double seminorm(const Vector& x) const;

  /// The r x r block Q_r* M Q_r in the eigenbasis of range(A).
  Matrix restrict_to_range(const Matrix& m) const;
  /// Maps unit y in range coordinates to an A-unit x with A^{1/2} x = Q_r y.
  Vector from_range_coords(const Vector& y) const;

  bool same_as(const SemiHilbertSpace& other) const noexcept;

 private:
  SemiHilbertSpace() = default;

  Matrix a_;
  HermitianEigen eig_;
  Matrix sqrt_a_, pinv_a_, pinv_sqrt_a_, proj_;
  std::size_t rank_ = 0;
  TolerancePolicy tol_;
};

using SpacePtr = std::shared_ptr<const SemiHilbertSpace>;

/// A matrix interpreted as an operator on a semi-Hilbert space.
class AOperator {
 public:
  AOperator(SpacePtr space, Matrix m);

  const SemiHilbertSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return m_; }
  bool compatible() const noexcept { return compatible_; }
  /// ||(I - P) T* A||_F / max(1, ||T* A||_F).
  double compat_residual() const noexcept { return residual_; }

  /// Throws NotCompatible naming `what` when T N(A) is not contained in N(A).
  void require_compatible(std::string_view what) const;

 private:
  SpacePtr space_;
  Matrix m_;
  bool compatible_ = false;
  double residual_ = 0.0;
};

AOperator operator+(const AOperator& lhs, const AOperator& rhs);
AOperator operator-(const AOperator& lhs, const AOperator& rhs);
AOperator operator*(const AOperator& lhs, const AOperator& rhs);
AOperator operator*(cplx s, const AOperator& t);
AOperator power(const AOperator& t, int n);

/// T# = A^+ T* A. Throws NotCompatible.
AOperator a_adjoint(const AOperator& t);

/// A^{1/2} T A^{+1/2} (n x n). Throws NotCompatible.
Matrix compress(const AOperator& t);
/// The compression restricted to range(A), r x r.
Matrix compress_range(const AOperator& t);

struct ReImA {
  AOperator re;
  AOperator im;
};

/// Re_A(T) = (T + T#)/2, Im_A(T) = (T - T#)/(2i).
ReImA re_im_A(const AOperator& t);

struct Predicates {
  bool is_a_selfadjoint = false;
  bool is_a_positive = false;
  bool is_a_normal = false;
  /// Set when A-normality could not be evaluated because T has no A-adjoint.
  bool normal_undefined = false;
};

/// Never throws.
Predicates predicates(const AOperator& t);

}  // namespace semirad
