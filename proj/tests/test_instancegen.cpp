#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "semirad/inequalities.hpp"
#include "semirad/instancegen.hpp"
#include "semirad/radii.hpp"
#include "semirad/rng.hpp"
#include "support.hpp"

using namespace semirad;

TEST_CASE("config validation") {
  CHECK_THROWS_KIND((GenConfig{3, 4, 0, 1.0}.validate()), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND((GenConfig{3, 0, 0, 1.0}.validate()), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND((GenConfig{9, 2, 0, 1.0}.validate()), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND((GenConfig{3, 2, 0, -1.0}.validate()), ErrorKind::InvalidArgument);
}

TEST_CASE("rng determinism and moments") {
  CounterRng a(5, 7), b(5, 7), c(5, 8);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng r(1, 1);
  double m = 0.0, m2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const cplx z = r.complex_normal();
    m += z.real();
    m2 += std::norm(z);
  }
  CHECK(std::abs(m / n) < 0.02);
  CHECK(std::abs(m2 / n - 1.0) < 0.02);
}

TEST_CASE("gen_psd") {
  const TolerancePolicy tol;
  const Matrix a = gen_psd({2, 2, 3, 1.0});
  CHECK(hermitian_eig(a).values.back() > 0.0);
  const Matrix b = gen_psd({3, 1, 3, 1.0});
  const HermitianEigen e = hermitian_eig(b);
  CHECK(psd_functions(e, tol).rank == 1);
  int below = 0;
  for (double v : e.values) below += v <= tol.rank_rtol * e.values.front();
  CHECK(below == 2);
  CHECK(gen_psd({4, 2, 11, 1.0}) == gen_psd({4, 2, 11, 1.0}));
  CHECK_FALSE(gen_psd({4, 2, 11, 1.0}) == gen_psd({4, 2, 12, 1.0}));
}

TEST_CASE("generators keep their advertised predicates") {
  const std::size_t grid[][2] = {{2, 1}, {2, 2}, {3, 2}, {4, 2}, {5, 3}};
  for (const auto& g : grid) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const GenConfig cfg{g[0], g[1], seed, 1.0};
      const SpacePtr sp = SemiHilbertSpace::create(gen_psd(cfg));
      REQUIRE(sp->rank() == g[1]);
      const AOperator c = gen_compatible(sp, cfg);
      CHECK(c.compatible());
      const AOperator h = gen_a_selfadjoint(sp, cfg);
      const Matrix ah = sp->a() * h.matrix();
      CHECK((ah - ah.adjoint()).frobenius_norm() <= 1e-10 * std::max(1.0, ah.frobenius_norm()));
      CHECK(predicates(h).is_a_selfadjoint);
      const AOperator p = gen_a_selfadjoint(sp, cfg, true);
      CHECK(predicates(p).is_a_positive);
      const AOperator nrm = gen_a_normal(sp, cfg);
      CHECK(predicates(nrm).is_a_normal);
      const AOperator ns = a_adjoint(nrm);
      CHECK(((ns * nrm).matrix() - (nrm * ns).matrix()).frobenius_norm() <= 1e-8);
    }
  }
}

TEST_CASE("compatible generator structure") {
  const SpacePtr id = SemiHilbertSpace::create(Matrix::identity(3));
  const GenConfig cfg{3, 3, 4, 1.0};
  CounterRng rng(4, 2001);
  CHECK(oracle::max_abs_diff(gen_compatible(id, cfg).matrix(), gaussian_matrix(rng, 3)) < 1e-12);

  const SpacePtr d = SemiHilbertSpace::create(Matrix::diagonal({1.0, 0.0}));
  const AOperator t = gen_compatible(d, {2, 1, 9, 1.0});
  CHECK(std::abs((d->sqrt_a() * t.matrix())(0, 1)) <= 1e-12);
  const Matrix q = Matrix::identity(2) - d->proj_range();
  CHECK((q * t.matrix().adjoint() * d->a()).frobenius_norm() <= 1e-10);

  // The compression only sees the range block of the Gaussian core.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GenConfig c{4, 2, seed, 1.0};
    const SpacePtr sp = SemiHilbertSpace::create(gen_psd(c));
    CounterRng core(seed, 2001);
    const Matrix g = gaussian_matrix(core, 4);
    const Matrix& p = sp->proj_range();
    CHECK(oracle::max_abs_diff(compress(gen_compatible(sp, c)), p * g * p) <= 1e-9);
  }
}

TEST_CASE("full-rank compatible draws are plain Gaussians") {
  const SpacePtr id = SemiHilbertSpace::create(Matrix::identity(2));
  double mean_abs = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) mean_abs += std::abs(gen_compatible(id, {2, 2, std::uint64_t(k), 1.0}).matrix()(0, 1));
  mean_abs /= n;
  const double expected = std::sqrt(std::numbers::pi) / 2.0;  // E|z| for E|z|^2 = 1
  CHECK(std::abs(mean_abs - expected) <= 0.05 * expected);
}

TEST_CASE("A-normal identity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GenConfig cfg{5, 3, seed, 1.0};
    const SpacePtr sp = SemiHilbertSpace::create(gen_psd(cfg));
    const AOperator t = gen_a_normal(sp, cfg);
    const double w = omega_A(t).lo, w2 = omega_A(power(t, 2)).lo, n = op_seminorm_A(t).lo;
    CHECK(std::abs(w2 - w * w) <= 1e-6 * w * w);
    CHECK(std::abs(w - n) <= 1e-6 * n);
  }
}

TEST_CASE("sharpness witnesses") {
  const GenConfig cfg{3, 2, 21, 1.0};
  for (auto id : sharpness_cases()) {
    CAPTURE(id);
    const Witness w = sharpness_witness(id, cfg);
    const Instance inst{w.space, w.t, w.s, 0};
    for (const auto& target : w.targets) {
      const CheckOutcome o = check_entry(find_entry(target.entry), inst);
      REQUIRE(o.error.empty());
      REQUIRE(o.verdict == Verdict::holds);
      for (std::size_t k = 0; k < o.links.size(); ++k)
        if (target.link < 0 || std::size_t(target.link) == k) CHECK(std::abs(o.links[k].slack) <= 1e-5);
    }
  }
  CHECK_THROWS_KIND(sharpness_witness("nope", cfg), ErrorKind::UnknownCase);
  CHECK(witness_group("jordan2_and_normal").size() == 2);
}

TEST_CASE("witness values match their closed forms") {
  const GenConfig cfg{4, 3, 5, 1.0};
  const SpacePtr sp = SemiHilbertSpace::create(gen_psd(cfg));

  const Witness th = sharpness_witness("thnew", sp, cfg);
  const double w = omega_A(th.t).lo;
  CHECK(std::abs(joint_radius_A(th.t, *th.s).lo - std::sqrt(2.0) * w) <= 1e-6);

  const Witness tw = sharpness_witness("twil", sp, cfg);
  const double ns = op_seminorm_A(a_adjoint(tw.t)).lo;  // ||S||_A with T = S#
  CHECK(std::abs(omega_A(tw.t).lo - ns) <= 1e-5);

  const Witness lo = sharpness_witness("fffeki1_lower", sp, cfg);
  CHECK(lo.space->dim() == 2);
  CHECK(std::abs(omega_A(lo.t).lo - 0.5) <= 1e-6);
}
