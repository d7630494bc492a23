#include "semirad/semihilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semirad/error.hpp"

namespace semirad {

std::shared_ptr<const SemiHilbertSpace> SemiHilbertSpace::create(const Matrix& a, TolerancePolicy tol) {
  tol.validate();
  if (a.empty()) throw Error(ErrorKind::DimensionMismatch, "A must be at least 1x1");
  HermitianEigen eig = hermitian_eig(a);
  PsdFunctions f = psd_functions(eig, tol);
  if (f.rank == 0) throw Error(ErrorKind::ZeroA, "A must be a nonzero positive operator");

  std::shared_ptr<SemiHilbertSpace> sp(new SemiHilbertSpace());
  sp->a_ = hermitian_part(a);
  sp->eig_ = std::move(eig);
  sp->sqrt_a_ = std::move(f.sqrt);
  sp->pinv_a_ = std::move(f.pinv);
  sp->pinv_sqrt_a_ = std::move(f.pinv_sqrt);
  sp->proj_ = std::move(f.proj);
  sp->rank_ = f.rank;
  sp->tol_ = tol;
  return sp;
}

cplx SemiHilbertSpace::semi_inner(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match the space");
  return inner(a_ * x, y);
}

double SemiHilbertSpace::seminorm(const Vector& x) const {
  return std::sqrt(std::max(0.0, semi_inner(x, x).real()));
}

Matrix SemiHilbertSpace::restrict_to_range(const Matrix& m) const {
  if (m.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "restrict_to_range");
  const std::size_t n = dim(), r = rank_;
  const Matrix& q = eig_.vectors;
  // mq = M Q_r (n x r), then Q_r* mq
  std::vector<cplx> mq(n * r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx mik = m(i, k);
      if (mik == cplx{}) continue;
      for (std::size_t j = 0; j < r; ++j) mq[i * r + j] += mik * q(k, j);
    }
  Matrix out(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      const cplx qa = std::conj(q(i, a));
      for (std::size_t j = 0; j < r; ++j) out(a, j) += qa * mq[i * r + j];
    }
  return out;
}

Vector SemiHilbertSpace::from_range_coords(const Vector& y) const {
  if (y.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "from_range_coords");
  Vector x(dim());
  for (std::size_t k = 0; k < rank_; ++k) {
    const cplx c = y[k] / std::sqrt(eig_.values[k]);
    for (std::size_t i = 0; i < dim(); ++i) x[i] += c * eig_.vectors(i, k);
  }
  return x;
}

bool SemiHilbertSpace::same_as(const SemiHilbertSpace& other) const noexcept {
  return this == &other || (a_ == other.a_ && rank_ == other.rank_);
}

AOperator::AOperator(SpacePtr space, Matrix m) : space_(std::move(space)), m_(std::move(m)) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "operator without a space");
  if (m_.dim() != space_->dim())
    throw Error(ErrorKind::DimensionMismatch, "operator dimension " + std::to_string(m_.dim()) +
                                                  " vs space dimension " + std::to_string(space_->dim()));
  if (!m_.all_finite()) throw Error(ErrorKind::NonFinite, "operator has non-finite entries");
  const Matrix tsa = m_.adjoint() * space_->a();
  const Matrix leak = tsa - space_->proj_range() * tsa;
  residual_ = leak.frobenius_norm() / std::max(1.0, tsa.frobenius_norm());
  compatible_ = residual_ <= space_->tol().compat_rtol;
}

void AOperator::require_compatible(std::string_view what) const {
  if (!compatible_)
    throw Error(ErrorKind::NotCompatible,
                std::string(what) + ": operator does not map N(A) into N(A) (residual " +
                    std::to_string(residual_) + "); its A-numerical radius is +infinity");
}

namespace {

const SpacePtr& common_space(const AOperator& l, const AOperator& r) {
  if (!l.space().same_as(r.space())) throw Error(ErrorKind::SpaceMismatch, "operators live on different spaces");
  return l.space_ptr();
}

}  // namespace

AOperator operator+(const AOperator& lhs, const AOperator& rhs) {
  return AOperator(common_space(lhs, rhs), lhs.matrix() + rhs.matrix());
}

AOperator operator-(const AOperator& lhs, const AOperator& rhs) {
  return AOperator(common_space(lhs, rhs), lhs.matrix() - rhs.matrix());
}

AOperator operator*(const AOperator& lhs, const AOperator& rhs) {
  return AOperator(common_space(lhs, rhs), lhs.matrix() * rhs.matrix());
}

AOperator operator*(cplx s, const AOperator& t) { return AOperator(t.space_ptr(), t.matrix() * s); }

AOperator power(const AOperator& t, int n) { return AOperator(t.space_ptr(), power(t.matrix(), n)); }

AOperator a_adjoint(const AOperator& t) {
  t.require_compatible("a_adjoint");
  const auto& sp = t.space();
  return AOperator(t.space_ptr(), sp.pinv_a() * t.matrix().adjoint() * sp.a());
}

Matrix compress(const AOperator& t) {
  t.require_compatible("compress");
  const auto& sp = t.space();
  return sp.sqrt_a() * t.matrix() * sp.pinv_sqrt_a();
}

Matrix compress_range(const AOperator& t) { return t.space().restrict_to_range(compress(t)); }

ReImA re_im_A(const AOperator& t) {
  const AOperator ts = a_adjoint(t);
  return {0.5 * (t + ts), cplx(0.0, -0.5) * (t - ts)};
}

Predicates predicates(const AOperator& t) {
  Predicates p;
  const auto& sp = t.space();
  const double rtol = sp.tol().compat_rtol;
  const Matrix at = sp.a() * t.matrix();
  const double at_norm = at.frobenius_norm();
  p.is_a_selfadjoint = (at - at.adjoint()).frobenius_norm() <= rtol * std::max(1.0, at_norm);
  if (p.is_a_selfadjoint) {
    try {
      const HermitianEigen e = hermitian_eig(at);
      p.is_a_positive = e.values.back() >= -rtol * std::max(1.0, at_norm);
    } catch (const Error&) {
      p.is_a_positive = false;
    }
  }
  if (!t.compatible()) {
    p.normal_undefined = true;
    return p;
  }
  const Matrix ts = sp.pinv_a() * t.matrix().adjoint() * sp.a();
  const Matrix comm = ts * t.matrix() - t.matrix() * ts;
  const double tn = t.matrix().frobenius_norm();
  p.is_a_normal = comm.frobenius_norm() <= rtol * std::max(1.0, tn * tn);
  return p;
}

}  // namespace semirad
