#include "semirad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semirad/error.hpp"

namespace semirad {

Matrix::Matrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(n_ * n_) + " entries, got " + std::to_string(a_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorKind::DimensionMismatch, "matrix literal is not square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<cplx> d) {
  return diagonal(std::span<const cplx>(d.begin(), d.size()));
}

Matrix Matrix::outer(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "outer product of unequal vectors");
  Matrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Vector Matrix::column(std::size_t j) const {
  Vector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator-(Matrix m) { return m *= -1.0; }
Matrix operator*(Matrix m, cplx s) { return m *= s; }
Matrix operator*(cplx s, Matrix m) { return m *= s; }
Matrix operator/(Matrix m, cplx s) { return m *= (1.0 / s); }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  const std::size_t n = lhs.dim();
  if (rhs.dim() != n) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx l = lhs(i, k);
      if (l == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += l * rhs(k, j);
    }
  return r;
}

Vector operator*(const Matrix& m, const Vector& x) {
  const std::size_t n = m.dim();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix power(const Matrix& m, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative matrix power");
  Matrix r = Matrix::identity(m.dim());
  for (int k = 0; k < n; ++k) r = r * m;
  return r;
}

cplx inner(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

Matrix skew_part(const Matrix& m) { return (m - m.adjoint()) * cplx(0.0, -0.5); }

void TolerancePolicy::validate() const {
  if (!(rank_rtol > 0) || !(check_atol > 0) || !(sweep_tol > 0) || !(compat_rtol > 0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  if (!(rank_rtol < 1e-2)) throw Error(ErrorKind::InvalidArgument, "rank_rtol must be below 1e-2");
}

namespace detail {

void jacobi_inplace(std::span<cplx> a, std::span<cplx> q, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };
  auto qt = [&](std::size_t i, std::size_t j) -> cplx& { return q[i * n + j]; };

  std::fill(q.begin(), q.end(), cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    qt(i, i) = 1.0;
    at(i, i) = at(i, i).real();
  }
  if (n < 2) return;

  double total = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) total += std::norm(a[k]);
  const double stop = 1e-32 * total;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += std::norm(at(p, r));
    if (off <= stop || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const cplx beta = at(p, r);
        const double b = std::abs(beta);
        if (b == 0.0 || b < 1e-300) continue;
        const double alpha = at(p, p).real();
        const double gamma = at(r, r).real();
        const cplx e = beta / b;
        const cplx ec = std::conj(e);
        const double tau = (gamma - alpha) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- A V with V = diag(1, conj(e)) * [[c, s], [-s, c]] on (p, r).
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = at(k, p), akr = at(k, r);
          at(k, p) = c * akp - s * ec * akr;
          at(k, r) = s * akp + c * ec * akr;
        }
        // A <- V* A
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = at(p, k), ark = at(r, k);
          at(p, k) = c * apk - s * e * ark;
          at(r, k) = s * apk + c * e * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx qkp = qt(k, p), qkr = qt(k, r);
          qt(k, p) = c * qkp - s * ec * qkr;
          qt(k, r) = s * qkp + c * ec * qkr;
        }
        at(p, r) = 0.0;
        at(r, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(r, r) = at(r, r).real();
      }
    }
  }
}

void EigWorkspace::solve() {
  jacobi_inplace(a_, q_, n_);
  imax_ = imin_ = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    v_[i] = a_[i * n_ + i].real();
    if (v_[i] > v_[imax_]) imax_ = i;
    if (v_[i] < v_[imin_]) imin_ = i;
  }
}

Vector EigWorkspace::column(std::size_t j) const {
  Vector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = q_[i * n_ + j];
  return c;
}

}  // namespace detail

HermitianEigen hermitian_eig(const Matrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  const double fro = m.frobenius_norm();
  const double asym = (m - m.adjoint()).frobenius_norm();
  if (asym > 1e-8 * std::max(1.0, fro))
    throw Error(ErrorKind::NotHermitian, "||M - M*||_F = " + std::to_string(asym));

  const std::size_t n = m.dim();
  Matrix a = hermitian_part(m);
  Matrix q(n);
  detail::jacobi_inplace(a.data(), q.data(), n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigen out;
  out.source_dim = n;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
  }
  return out;
}

namespace {

Matrix spectral(const HermitianEigen& eig, const std::vector<double>& f) {
  const std::size_t n = eig.source_dim;
  Matrix r(n);
  const Matrix& q = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    if (f[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx qi = q(i, k) * f[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += qi * std::conj(q(j, k));
    }
  }
  return r;
}

}  // namespace

PsdFunctions psd_functions(const HermitianEigen& eig, const TolerancePolicy& tol) {
  const std::size_t n = eig.source_dim;
  PsdFunctions out;
  if (n == 0) return out;
  const double top = eig.values.front();
  const double floor = -tol.rank_rtol * top;
  const double cutoff = tol.rank_rtol * top;

  std::vector<double> fsqrt(n), finv(n), finvsqrt(n), fproj(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam < floor)
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lam) + " below -rank_rtol*lambda_1");
    if (lam > cutoff && lam > 0.0) {
      fsqrt[k] = std::sqrt(lam);
      finv[k] = 1.0 / lam;
      finvsqrt[k] = 1.0 / std::sqrt(lam);
      fproj[k] = 1.0;
      ++out.rank;
    }
  }
  out.sqrt = spectral(eig, fsqrt);
  out.pinv = spectral(eig, finv);
  out.pinv_sqrt = spectral(eig, finvsqrt);
  out.proj = spectral(eig, fproj);
  return out;
}

double op_norm_2(const Matrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  if (m.dim() == 0) return 0.0;
  const HermitianEigen e = hermitian_eig(m.adjoint() * m);
  return std::sqrt(std::max(0.0, e.values.front()));
}

}  // namespace semirad
