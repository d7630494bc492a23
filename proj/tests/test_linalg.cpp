#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semirad/linalg.hpp"
#include "support.hpp"

using namespace semirad;

namespace {

Matrix random_hermitian(std::mt19937_64& g, std::size_t n) { return hermitian_part(oracle::random_matrix(g, n)); }

Matrix random_psd(std::mt19937_64& g, std::size_t n, std::size_t r) {
  Matrix gm(n);
  std::normal_distribution<double> nd;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k) gm(i, k) = cplx(nd(g), nd(g));
  return hermitian_part(gm * gm.adjoint());
}

Matrix reconstruct(const HermitianEigen& e) {
  std::vector<cplx> d(e.values.begin(), e.values.end());
  return e.vectors * Matrix::diagonal(d) * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("matrix basics") {
  const Matrix m{{1.0, cplx(0, 2)}, {3.0, 4.0}};
  CHECK(m.dim() == 2);
  CHECK(m.adjoint()(0, 1) == cplx(3, 0));
  CHECK(m.adjoint()(1, 0) == cplx(0, -2));
  CHECK(m.trace() == cplx(5, 0));
  CHECK(power(m, 0) == Matrix::identity(2));
  CHECK(oracle::max_abs_diff(power(m, 3), m * m * m) < 1e-12);
  CHECK_THROWS_KIND(Matrix(2, std::vector<cplx>(3)), ErrorKind::DimensionMismatch);
  CHECK_THROWS_KIND(m * Matrix::identity(3), ErrorKind::DimensionMismatch);
}

TEST_CASE("inner product convention is linear in the first slot") {
  std::mt19937_64 g(1);
  const Vector u = oracle::random_vector(g, 3), v = oracle::random_vector(g, 3);
  const cplx lam(0.3, -1.7);
  Vector lv = v, lu = u;
  for (auto& z : lv) z *= lam;
  for (auto& z : lu) z *= lam;
  CHECK(std::abs(inner(u, lv) - std::conj(lam) * inner(u, v)) < 1e-12);
  CHECK(std::abs(inner(lu, v) - lam * inner(u, v)) < 1e-12);
  CHECK(std::abs(inner(u, v) - oracle::dot(u, v)) < 1e-12);
}

TEST_CASE("hermitian_eig small examples") {
  const HermitianEigen d = hermitian_eig(Matrix::diagonal({3.0, 1.0}));
  CHECK(d.values[0] == doctest::Approx(3.0));
  CHECK(d.values[1] == doctest::Approx(1.0));
  CHECK(oracle::max_abs_diff(Matrix(2, {std::abs(d.vectors(0, 0)), std::abs(d.vectors(0, 1)),
                                        std::abs(d.vectors(1, 0)), std::abs(d.vectors(1, 1))}),
                             Matrix::identity(2)) < 1e-12);

  const HermitianEigen s = hermitian_eig(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(s.values[0] == doctest::Approx(1.0));
  CHECK(s.values[1] == doctest::Approx(-1.0));

  std::mt19937_64 g(7);
  for (int k = 0; k < 50; ++k) {
    const Matrix h = random_hermitian(g, 2);
    const auto [hi, lo] = oracle::eig2(h);
    const HermitianEigen e = hermitian_eig(h);
    CHECK(e.values[0] == doctest::Approx(hi).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(lo).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  std::mt19937_64 g(2);
  for (std::size_t n : {1u, 3u, 5u, 8u, 16u}) {
    for (int k = 0; k < 10; ++k) {
      const Matrix h = random_hermitian(g, n);
      const HermitianEigen e = hermitian_eig(h);
      CHECK((reconstruct(e) - h).frobenius_norm() <= 1e-10 * std::max(1.0, h.frobenius_norm()));
      CHECK((e.vectors.adjoint() * e.vectors - Matrix::identity(n)).frobenius_norm() <= 1e-10);
      CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
    }
  }
}

TEST_CASE("hermitian_eig errors and determinism") {
  CHECK_THROWS_KIND(hermitian_eig(Matrix{{0.0, 1.0}, {0.0, 0.0}}), ErrorKind::NotHermitian);
  CHECK_THROWS_KIND(hermitian_eig(Matrix{{NAN, 0.0}, {0.0, 1.0}}), ErrorKind::NonFinite);
  std::mt19937_64 g(3);
  const Matrix h = random_hermitian(g, 6);
  CHECK(hermitian_eig(h).values == hermitian_eig(h).values);
}

TEST_CASE("rayleigh quotients lie inside the spectrum") {
  std::mt19937_64 g(4);
  for (int k = 0; k < 20; ++k) {
    const Matrix h = random_hermitian(g, 5);
    const HermitianEigen e = hermitian_eig(h);
    for (int j = 0; j < 20; ++j) {
      const Vector u = oracle::random_vector(g, 5);
      const double q = oracle::dot(oracle::apply(h, u), u).real() / oracle::dot(u, u).real();
      CHECK(q <= e.values.front() + 1e-12);
      CHECK(q >= e.values.back() - 1e-12);
    }
  }
}

TEST_CASE("psd_functions on diagonal input") {
  const TolerancePolicy tol;
  const PsdFunctions f = psd_functions(hermitian_eig(Matrix::diagonal({2.0, 0.0})), tol);
  CHECK(f.rank == 1);
  CHECK(oracle::max_abs_diff(f.pinv, Matrix::diagonal({0.5, 0.0})) < 1e-14);
  CHECK(oracle::max_abs_diff(f.proj, Matrix::diagonal({1.0, 0.0})) < 1e-14);

  const PsdFunctions h = psd_functions(hermitian_eig(Matrix::diagonal({4.0, 1.0})), tol);
  CHECK(oracle::max_abs_diff(h.sqrt, Matrix::diagonal({2.0, 1.0})) < 1e-14);
  CHECK(oracle::max_abs_diff(h.pinv_sqrt, Matrix::diagonal({0.5, 1.0})) < 1e-14);

  CHECK_THROWS_KIND(psd_functions(hermitian_eig(Matrix::diagonal({1.0, -0.5})), tol), ErrorKind::NotPSD);
  // Round-off negatives are clamped.
  const PsdFunctions c = psd_functions(hermitian_eig(Matrix::diagonal({1.0, -1e-13})), tol);
  CHECK(c.rank == 1);
}

TEST_CASE("psd_functions Penrose identities on random rank-deficient input") {
  std::mt19937_64 g(5);
  const TolerancePolicy tol;
  for (int k = 0; k < 20; ++k) {
    const Matrix a = random_psd(g, 4, 2);
    const PsdFunctions f = psd_functions(hermitian_eig(a), tol);
    const double s = 1e-9 * std::max(1.0, a.frobenius_norm());
    CHECK(f.rank == 2);
    CHECK((a * f.pinv * a - a).frobenius_norm() <= s);
    CHECK((f.pinv * a * f.pinv - f.pinv).frobenius_norm() <= s);
    CHECK((f.sqrt * f.sqrt - a).frobenius_norm() <= s);
    CHECK((f.pinv_sqrt * f.pinv_sqrt - f.pinv).frobenius_norm() <= s);
    CHECK((f.proj * f.proj - f.proj).frobenius_norm() <= 1e-10);
    CHECK(std::abs(f.proj.trace() - 2.0) <= 1e-10);
  }
}

TEST_CASE("rank cutoff is scale invariant") {
  std::mt19937_64 g(6);
  const TolerancePolicy tol;
  const Matrix a = random_psd(g, 5, 3);
  for (double c : {1e-6, 1.0, 1e6}) CHECK(psd_functions(hermitian_eig(a * c), tol).rank == 3);
}

TEST_CASE("tolerance policy validation") {
  CHECK_NOTHROW(TolerancePolicy{}.validate());
  TolerancePolicy t;
  t.sweep_tol = 0.0;
  CHECK_THROWS_KIND(t.validate(), ErrorKind::InvalidArgument);
  t = {};
  t.rank_rtol = 0.1;
  CHECK_THROWS_KIND(t.validate(), ErrorKind::InvalidArgument);
}

TEST_CASE("op_norm_2") {
  CHECK(op_norm_2(Matrix::identity(3)) == doctest::Approx(1.0));
  CHECK(op_norm_2(Matrix{{0.0, 2.0}, {0.0, 0.0}}) == doctest::Approx(2.0));
  CHECK(op_norm_2(Matrix(3)) == 0.0);
  CHECK_THROWS_KIND(op_norm_2(Matrix{{INFINITY, 0.0}, {0.0, 0.0}}), ErrorKind::NonFinite);

  std::mt19937_64 g(8);
  for (int k = 0; k < 5; ++k) {
    const Matrix m = oracle::random_matrix(g, 4);
    double best = 0.0;
    for (int j = 0; j < 100000; ++j) {
      const Vector x = oracle::random_vector(g, 4);
      best = std::max(best, std::sqrt(oracle::dot(oracle::apply(m, x), oracle::apply(m, x)).real() /
                                      oracle::dot(x, x).real()));
    }
    const double v = op_norm_2(m);
    CHECK(best <= v + 1e-12);
    CHECK(v - best <= 0.05 * v);
    const double climbed = oracle::seminorm(Matrix::identity(4), m, 2000, 100 + k);
    CHECK(climbed <= v + 1e-12);
    CHECK(v - climbed <= 1e-3);
  }
}

TEST_CASE("op_norm_2 is submultiplicative") {
  std::mt19937_64 g(9);
  for (int k = 0; k < 50; ++k) {
    const Matrix m = oracle::random_matrix(g, 4), n = oracle::random_matrix(g, 4);
    CHECK(op_norm_2(m * n) <= op_norm_2(m) * op_norm_2(n) + 1e-9);
  }
}
