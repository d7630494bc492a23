#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semirad/interval.hpp"
#include "semirad/radii.hpp"
#include "semirad/semihilbert.hpp"

namespace semirad {

enum class Arity { T, TS, vectors };
enum class Kind { bound, equality, pointwise };
enum class Status { valid, suspect_printed, derived_correction };
enum class Verdict { holds, violated, inapplicable };
enum class SuiteSet { background, main, lemmas, identities, all };

std::string_view to_string(Arity a);
std::string_view to_string(Kind k);
std::string_view to_string(Status s);
std::string_view to_string(Verdict v);
std::string_view to_string(SuiteSet s);
/// Throws InvalidArgument on an unknown name.
SuiteSet parse_suite_set(std::string_view name);

/// One problem instance: a space, T, and optionally S.
struct Instance {
  SpacePtr space;
  AOperator t;
  std::optional<AOperator> s;
  std::uint64_t seed = 0;  // drives the pointwise draws
};

/// Memoized evaluation of derived operators and their radii for one instance.
///
/// Operators are addressed by name. "T" and "S" are the inputs, "P" is S when
/// present and T# otherwise. The builders return the canonical name of the
/// derived operator so expressions nest: mul(sh("T"), "T") is T#T.
class EvalContext {
 public:
  explicit EvalContext(const Instance& inst);

  const Instance& instance() const noexcept { return inst_; }
  const TolerancePolicy& tol() const noexcept { return inst_.space->tol(); }
  const AOperator& op(const std::string& name);

  std::string sh(const std::string& a);
  std::string mul(const std::string& a, const std::string& b);
  std::string add(const std::string& a, const std::string& b);
  std::string sub(const std::string& a, const std::string& b);
  std::string scaled(cplx k, const std::string& a);
  std::string pw(const std::string& a, int n);

  Interval N(const std::string& a);  // ||.||_A
  Interval W(const std::string& a);  // omega_A
  Interval C(const std::string& a);  // c_A
  Interval J(const std::string& a, const std::string& b);
  Interval J3(const std::string& a, const std::string& b, const std::string& c);
  Interval D(const std::string& a);  // Davis-Wielandt radius
  Interval G(const std::string& a);  // inf of (||Tx||_A - ||T#x||_A)^2

  /// ||X - Y||_F / max(1, ||X||_F).
  double residual(const std::string& x, const std::string& y);

  const Predicates& predicates_of(const std::string& a);

 private:
  Interval cached(const std::string& key, const std::function<RadiusEstimate()>& f);

  const Instance& inst_;
  std::map<std::string, AOperator> ops_;
  std::map<std::string, Interval> values_;
  std::map<std::string, Predicates> preds_;
};

/// One comparison inside an entry: lhs <= rhs, or lhs == rhs within tol.
struct Link {
  std::string label;
  Interval lhs;
  Interval rhs;
  bool equality = false;
  /// Bound: absolute slack allowance (0 = the policy's check_atol), scaled by max(1, |rhs|).
  /// Equality: allowed |lhs - rhs|, scaled by max(1, |rhs|) when `relative`.
  double tol = 0.0;
  bool relative = false;
};

struct LinkOutcome {
  std::string label;
  Interval lhs;
  Interval rhs;
  bool equality = false;
  double tol = 0.0;    // effective tolerance actually applied
  double slack = 0.0;  // rhs.hi - lhs.lo for bounds, |lhs.lo - rhs.lo| for equalities
  Verdict verdict = Verdict::holds;
};

/// Requirements beyond compatibility.
enum Requirement : unsigned {
  kNone = 0,
  kTSelfAdjoint = 1u << 0,
  kSSelfAdjoint = 1u << 1,
  kTNormal = 1u << 2,
};

struct Counterexample {
  Matrix a;
  Matrix t;
  std::optional<Matrix> s;
};

struct InequalityEntry {
  std::string id;
  Arity arity = Arity::T;
  Kind kind = Kind::bound;
  Status status = Status::valid;
  SuiteSet set = SuiteSet::main;
  unsigned requires_ = kNone;
  std::string statement;
  std::string sharpness;  // witness tag, empty when none
  std::optional<Counterexample> counterexample;
  std::function<std::vector<Link>(EvalContext&)> evaluate;
};

struct CheckOutcome {
  std::string entry_id;
  Status status = Status::valid;
  Kind kind = Kind::bound;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double lhs_width = 0.0;
  double rhs_width = 0.0;
  Verdict verdict = Verdict::inapplicable;
  std::string enclosure_note;
  std::string error;  // non-empty when evaluation failed
  std::vector<LinkOutcome> links;
};

/// All entries in catalog order.
const std::vector<InequalityEntry>& registry();
/// Throws InvalidArgument for an unknown id.
const InequalityEntry& find_entry(std::string_view id);

/// Why an entry does not apply to an instance, or empty when it does.
std::string applicability(const InequalityEntry& e, EvalContext& ctx);

/// Decides one link under the instance's tolerance policy.
LinkOutcome decide(const Link& link, const TolerancePolicy& tol);

CheckOutcome check_entry(const InequalityEntry& e, EvalContext& ctx);
CheckOutcome check_entry(const InequalityEntry& e, const Instance& inst);

/// Runs every entry of the set in catalog order; failures are recorded per entry.
std::vector<CheckOutcome> check_suite(const Instance& inst, SuiteSet set);

/// M9's upper bound against ||T||_A, and M19's lower constant against B7's.
CheckOutcome refinement_check(const Instance& inst);

bool in_set(const InequalityEntry& e, SuiteSet set);

}  // namespace semirad
