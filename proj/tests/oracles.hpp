#pragma once

// Brute-force reference computations for the tests. They use only matrix-vector
// products and their own random source, never the library's eigensolver,
// compression or sweeps.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "semirad/linalg.hpp"

namespace oracle {

using semirad::cplx;
using semirad::Matrix;
using semirad::Vector;

inline Vector random_vector(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> nd;
  Vector x(n);
  for (auto& z : x) z = cplx(nd(g), nd(g));
  return x;
}

inline Matrix random_matrix(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> nd;
  Matrix m(n);
  for (auto& z : m.data()) z = cplx(nd(g), nd(g));
  return m;
}

inline Vector apply(const Matrix& m, const Vector& x) {
  Vector y(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

/// v* u
inline cplx dot(const Vector& u, const Vector& v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

/// <x|y>_A = <Ax, y>
inline cplx a_inner(const Matrix& a, const Vector& x, const Vector& y) { return dot(apply(a, x), y); }

inline double max_abs_diff(const Matrix& x, const Matrix& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) m = std::max(m, std::abs(x.data()[i] - y.data()[i]));
  return m;
}

/// Scale-invariant objective of x; NaN marks points to skip.
using Objective = std::function<double(const Vector&)>;

/// Random search followed by shrinking-step hill climbing from the best few
/// points. Returns the best value seen (an attained value, so a lower bound of
/// the supremum). `sign` = -1 minimizes.
inline double optimize(const Objective& f, std::size_t n, long samples, std::uint64_t seed, double sign = 1.0,
                       int climbs = 6, int climb_iters = 3000) {
  std::mt19937_64 g(seed);
  std::vector<std::pair<double, Vector>> best;
  const auto consider = [&](Vector x) {
    const double v = f(x);
    if (std::isnan(v)) return;
    best.emplace_back(sign * v, std::move(x));
    if (best.size() > static_cast<std::size_t>(4 * climbs)) {
      std::partial_sort(best.begin(), best.begin() + climbs, best.end(),
                        [](const auto& a, const auto& b) { return a.first > b.first; });
      best.resize(climbs);
    }
  };
  for (long k = 0; k < samples; ++k) consider(random_vector(g, n));
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (best.size() > static_cast<std::size_t>(climbs)) best.resize(climbs);

  double top = best.empty() ? NAN : best.front().first;
  std::normal_distribution<double> nd;
  for (auto& [val, x] : best) {
    double step = 0.3;
    double nx = 0.0;
    for (const auto& z : x) nx += std::norm(z);
    nx = std::sqrt(nx);
    for (int it = 0; it < climb_iters && step > 1e-12; ++it) {
      Vector y = x;
      for (auto& z : y) z += step * nx * cplx(nd(g), nd(g));
      const double v = f(y);
      if (!std::isnan(v) && sign * v > val) {
        val = sign * v;
        x = std::move(y);
      } else if (it % 20 == 19) {
        step *= 0.7;
      }
    }
    top = std::max(top, val);
  }
  return sign * top;
}

/// Reusable quadratic-form pieces for one (A, T) pair.
struct Forms {
  Matrix a, t;
  double cutoff;  // relative A-length below which a sample is skipped

  Forms(Matrix a_, Matrix t_, double cutoff_ = 1e-6) : a(std::move(a_)), t(std::move(t_)), cutoff(cutoff_) {}

  /// x*Ax if above the cutoff, NaN otherwise.
  double a_len2(const Vector& x) const {
    const double l = a_inner(a, x, x).real();
    double n2 = 0.0;
    for (const auto& z : x) n2 += std::norm(z);
    return l > cutoff * n2 ? l : NAN;
  }
};

inline double omega(const Matrix& a, const Matrix& t, long samples, std::uint64_t seed) {
  const Forms f(a, t);
  return optimize([&](const Vector& x) { return std::abs(a_inner(a, apply(t, x), x)) / f.a_len2(x); }, a.dim(),
                  samples, seed);
}

inline double crawford(const Matrix& a, const Matrix& t, long samples, std::uint64_t seed) {
  const Forms f(a, t);
  return optimize([&](const Vector& x) { return std::abs(a_inner(a, apply(t, x), x)) / f.a_len2(x); }, a.dim(),
                  samples, seed, -1.0);
}

inline double seminorm(const Matrix& a, const Matrix& t, long samples, std::uint64_t seed) {
  const Forms f(a, t);
  return optimize(
      [&](const Vector& x) {
        const Vector tx = apply(t, x);
        return std::sqrt(std::max(0.0, a_inner(a, tx, tx).real()) / f.a_len2(x));
      },
      a.dim(), samples, seed);
}

inline double joint(const Matrix& a, const Matrix& t, const Matrix& s, long samples, std::uint64_t seed) {
  const Forms f(a, t);
  return optimize(
      [&](const Vector& x) {
        const double l = f.a_len2(x);
        return std::hypot(std::abs(a_inner(a, apply(t, x), x)), std::abs(a_inner(a, apply(s, x), x))) / l;
      },
      a.dim(), samples, seed);
}

/// sup over A-unit x of sqrt(|<Tx|x>_A|^2 + ||Tx||_A^4).
inline double davis_wielandt(const Matrix& a, const Matrix& t, long samples, std::uint64_t seed) {
  const Forms f(a, t);
  return optimize(
      [&](const Vector& x) {
        const double l = f.a_len2(x);
        const Vector tx = apply(t, x);
        return std::hypot(std::abs(a_inner(a, tx, x)) / l, a_inner(a, tx, tx).real() / l);
      },
      a.dim(), samples, seed);
}

/// Closed-form 2x2 Hermitian spectrum, used to check the eigensolver on small cases.
inline std::pair<double, double> eig2(const Matrix& h) {
  const double p = h(0, 0).real(), q = h(1, 1).real();
  const double r = std::abs(h(0, 1));
  const double mid = 0.5 * (p + q), rad = std::hypot(0.5 * (p - q), r);
  return {mid + rad, mid - rad};
}

}  // namespace oracle
