#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "semirad/inequalities.hpp"
#include "semirad/instancegen.hpp"
#include "support.hpp"

using namespace semirad;

namespace {

Instance on_identity(const Matrix& t, std::optional<Matrix> s = std::nullopt, std::uint64_t seed = 0) {
  const SpacePtr sp = SemiHilbertSpace::create(Matrix::identity(t.dim()));
  Instance inst{sp, AOperator(sp, t), std::nullopt, seed};
  if (s) inst.s = AOperator(sp, *s);
  return inst;
}

const CheckOutcome& by_id(const std::vector<CheckOutcome>& v, const std::string& id) {
  for (const auto& o : v)
    if (o.entry_id == id) return o;
  FAIL("missing outcome " << id);
  return v.front();
}

Instance random_instance(std::size_t n, std::size_t r, std::uint64_t seed) {
  const GenConfig cfg{n, r, seed, 1.0};
  const SpacePtr sp = SemiHilbertSpace::create(gen_psd(cfg));
  return {sp, gen_compatible(sp, cfg, 1), gen_compatible(sp, cfg, 2), seed};
}

}  // namespace

TEST_CASE("registry shape") {
  const auto& reg = registry();
  CHECK(reg.size() >= 40);
  std::set<std::string> ids;
  int ts = 0;
  for (const auto& e : reg) {
    CHECK(ids.insert(e.id).second);
    ts += e.arity == Arity::TS;
    CHECK(e.evaluate);
    CHECK_FALSE(e.statement.empty());
    if (e.status == Status::suspect_printed) CHECK(e.counterexample.has_value());
  }
  // The catalog's eleven two-operator entries plus the printed form of the first result.
  CHECK(ts == 12);
  CHECK(find_entry("M1p").arity == Arity::TS);

  const InequalityEntry& m19 = find_entry("M19");
  CHECK(m19.kind == Kind::bound);
  CHECK(m19.arity == Arity::T);
  CHECK(m19.sharpness == "jordan2_and_normal");
  const InequalityEntry& m4p = find_entry("M4p");
  CHECK(m4p.status == Status::suspect_printed);
  CHECK(m4p.counterexample->a == Matrix::identity(2));
  CHECK(m4p.counterexample->t == Matrix::identity(2));
  CHECK(*m4p.counterexample->s == Matrix::identity(2));
  CHECK_THROWS_KIND(find_entry("M99"), ErrorKind::InvalidArgument);

  // Every sharpness tag resolves to witness cases.
  for (const auto& e : reg)
    if (!e.sharpness.empty()) CHECK_FALSE(witness_group(e.sharpness).empty());
}

TEST_CASE("decide") {
  const TolerancePolicy tol;
  const LinkOutcome ok = decide({"", {1.0, 1.0}, {1.0, 1.0}, false, 0.0, false}, tol);
  CHECK(ok.verdict == Verdict::holds);
  // Overlapping enclosures never produce a violation.
  CHECK(decide({"", {1.0, 1.2}, {0.9, 1.0}, false, 0.0, false}, tol).verdict == Verdict::holds);
  const LinkOutcome bad = decide({"", {1.1, 1.2}, {0.9, 1.0}, false, 0.0, false}, tol);
  CHECK(bad.verdict == Verdict::violated);
  CHECK(bad.slack == doctest::Approx(-0.1));
  CHECK(decide({"", {1.0 + 5e-8, 1.0 + 5e-8}, {1.0, 1.0}, false, 0.0, false}, tol).verdict == Verdict::holds);
  CHECK(decide({"", {1.0 + 5e-7, 1.0 + 5e-7}, {1.0, 1.0}, false, 0.0, false}, tol).verdict == Verdict::violated);

  CHECK(decide({"", {1.0, 1.0}, {1.0 + 1e-7, 1.0 + 1e-7}, true, 1e-6, false}, tol).verdict == Verdict::holds);
  CHECK(decide({"", {1.0, 1.0}, {1.1, 1.1}, true, 1e-6, false}, tol).verdict == Verdict::violated);
  // Relative equality scales with the right side.
  CHECK(decide({"", {1000.0, 1000.0}, {1000.0005, 1000.0005}, true, 1e-6, true}, tol).verdict == Verdict::holds);
  CHECK_THROWS_KIND(decide({"", {NAN, NAN}, {1.0, 1.0}, false, 0.0, false}, tol), ErrorKind::EvaluationFailure);
}

TEST_CASE("M19 on the Jordan block is sharp below") {
  const CheckOutcome o = check_entry(find_entry("M19"), on_identity(Matrix{{0.0, 1.0}, {0.0, 0.0}}));
  REQUIRE(o.verdict == Verdict::holds);
  REQUIRE(o.links.size() == 2);
  CHECK(std::abs(o.links[0].rhs.lo - 0.5) <= 1e-6);  // omega
  CHECK(std::abs(o.links[0].lhs.lo - 0.5) <= 1e-12);
  CHECK(std::abs(o.links[0].slack) <= 1e-6);
  CHECK(std::abs(o.links[1].rhs.lo - std::sqrt(0.5)) <= 1e-9);
}

TEST_CASE("stored counterexamples reproduce") {
  for (const auto& e : registry()) {
    if (!e.counterexample) continue;
    CAPTURE(e.id);
    const Counterexample& c = *e.counterexample;
    const SpacePtr sp = SemiHilbertSpace::create(c.a);
    Instance inst{sp, AOperator(sp, c.t), std::nullopt, 0};
    if (c.s) inst.s = AOperator(sp, *c.s);
    CHECK(check_entry(e, inst).verdict == Verdict::violated);
  }

  const Instance pair = on_identity(Matrix::identity(2), Matrix::identity(2));
  const CheckOutcome m4p = check_entry(find_entry("M4p"), pair);
  CHECK(m4p.verdict == Verdict::violated);
  CHECK(std::abs(m4p.slack - (std::sqrt(0.5) * std::sqrt(3.0) - std::sqrt(2.0))) <= 1e-6);
  CHECK(check_entry(find_entry("M4"), pair).verdict == Verdict::holds);

  const Instance d = on_identity(Matrix::diagonal({1.0, cplx(0, 1)}));
  const CheckOutcome m7p = check_entry(find_entry("M7p"), d);
  CHECK(m7p.verdict == Verdict::violated);
  CHECK(std::abs(m7p.slack - (0.5 * std::sqrt(2.5) - 1.0)) <= 1e-6);
  CHECK(check_entry(find_entry("M7c"), d).verdict == Verdict::holds);
}

TEST_CASE("identity pair evaluates the catalog by hand") {
  const std::vector<CheckOutcome> all = check_suite(on_identity(Matrix::identity(2), Matrix::identity(2)), SuiteSet::all);
  for (const auto& o : all) {
    CAPTURE(o.entry_id);
    CHECK(o.error.empty());
    if (o.status == Status::valid) CHECK(o.verdict == Verdict::holds);
  }
  for (const char* id : {"M2", "M8", "M12", "M16", "M20", "M15"}) {
    CAPTURE(id);
    CHECK(std::abs(by_id(all, id).slack) <= 1e-6);
  }
  CHECK(std::abs(by_id(all, "M2").rhs - std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("suite order, sets and applicability") {
  const Instance t_only = on_identity(Matrix::diagonal({1.0, 2.0}));
  const std::vector<CheckOutcome> main = check_suite(t_only, SuiteSet::main);
  std::size_t k = 0;
  for (const auto& e : registry()) {
    if (!in_set(e, SuiteSet::main)) continue;
    REQUIRE(k < main.size());
    CHECK(main[k].entry_id == e.id);
    if (e.arity == Arity::TS) CHECK(main[k].verdict == Verdict::inapplicable);
    ++k;
  }
  CHECK(k == main.size());
  CHECK(check_suite(t_only, SuiteSet::background).size() == 9);
  CHECK(parse_suite_set("lemmas") == SuiteSet::lemmas);
  CHECK_THROWS_KIND(parse_suite_set("everything"), ErrorKind::InvalidArgument);

  // A-selfadjointness requirement.
  const Instance nonsym = on_identity(Matrix{{0.0, 1.0}, {0.0, 0.0}});
  CHECK(check_entry(find_entry("B4"), nonsym).verdict == Verdict::inapplicable);
  CHECK(check_entry(find_entry("I3"), nonsym).verdict == Verdict::inapplicable);
  CHECK(check_entry(find_entry("I4"), nonsym).verdict == Verdict::inapplicable);
}

TEST_CASE("incompatible input is reported, not approximated") {
  const SpacePtr sp = SemiHilbertSpace::create(Matrix::diagonal({1.0, 0.0}));
  const Instance bad{sp, AOperator(sp, Matrix{{0.0, 1.0}, {0.0, 0.0}}), std::nullopt, 0};
  for (const auto& o : check_suite(bad, SuiteSet::all)) {
    CHECK(o.verdict == Verdict::inapplicable);
  }
}

TEST_CASE("valid entries hold on random instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Instance inst = random_instance(n, seed % 2 ? n - 1 : n, seed);
    for (const auto& o : check_suite(inst, SuiteSet::all)) {
      CAPTURE(seed);
      CAPTURE(o.entry_id);
      CHECK(o.error.empty());
      if (o.status != Status::suspect_printed) CHECK(o.verdict != Verdict::violated);
    }
    CHECK(refinement_check(inst).verdict == Verdict::holds);
  }
}

TEST_CASE("M1 chain is monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CheckOutcome o = check_entry(find_entry("M1"), random_instance(3, 2 + seed % 2, seed));
    REQUIRE(o.links.size() == 3);
    CHECK(o.links[1].verdict == Verdict::holds);
    CHECK(o.links[2].verdict == Verdict::holds);
  }
}

TEST_CASE("pointwise entries are deterministic and report the worst draw") {
  const Instance inst = random_instance(3, 2, 4);
  for (const char* id : {"L1", "L5", "L9"}) {
    const CheckOutcome a = check_entry(find_entry(id), inst), b = check_entry(find_entry(id), inst);
    CHECK(a.slack == b.slack);
    CHECK(a.links.size() == 1);
    CHECK(a.verdict == Verdict::holds);
  }
  Instance other = inst;
  other.seed = 5;
  CHECK(check_entry(find_entry("L1"), other).slack != check_entry(find_entry("L1"), inst).slack);
}

TEST_CASE("L2 scalar identity on a 101 x 100 grid") {
  const CheckOutcome o = check_entry(find_entry("L2"), random_instance(2, 2, 8));
  CHECK(o.verdict == Verdict::holds);
  CHECK(o.slack <= 1e-3 * std::max(1.0, o.rhs));
}

TEST_CASE("refinement check") {
  const CheckOutcome j = refinement_check(on_identity(Matrix{{0.0, 1.0}, {0.0, 0.0}}));
  CHECK(j.verdict == Verdict::holds);
  REQUIRE(j.links.size() == 2);
  CHECK(std::abs(j.links[0].lhs.lo - std::sqrt(0.5)) <= 1e-9);
  CHECK(std::abs(j.links[0].rhs.lo - 1.0) <= 1e-9);
  const CheckOutcome i = refinement_check(on_identity(Matrix::identity(2)));
  CHECK(i.verdict == Verdict::holds);
  CHECK(std::abs(i.links[0].slack) <= 1e-6);
}

TEST_CASE("evaluation context caches and names") {
  const Instance inst = random_instance(3, 2, 1);
  EvalContext c(inst);
  const std::string ts = c.sh("T");
  CHECK(ts == c.sh("T"));
  CHECK(c.mul(ts, "T") == "((T)#)(T)");
  CHECK(c.W("T").lo == c.W("T").lo);
  CHECK(c.residual("T", "T") == 0.0);
  CHECK_THROWS_KIND(c.op("Q"), ErrorKind::InvalidArgument);
  Instance no_s = inst;
  no_s.s.reset();
  EvalContext d(no_s);
  CHECK_THROWS_KIND(d.op("S"), ErrorKind::UnsupportedArity);
  CHECK(d.op("P").matrix() == a_adjoint(inst.t).matrix());
}
