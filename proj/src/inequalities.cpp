#include "semirad/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "semirad/error.hpp"
#include "semirad/rng.hpp"

namespace semirad {

std::string_view to_string(Arity a) {
  switch (a) {
    case Arity::T: return "T";
    case Arity::TS: return "TS";
    case Arity::vectors: return "vectors";
  }
  return "unknown";
}

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::bound: return "bound";
    case Kind::equality: return "equality";
    case Kind::pointwise: return "pointwise";
  }
  return "unknown";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::valid: return "valid";
    case Status::suspect_printed: return "suspect_printed";
    case Status::derived_correction: return "derived_correction";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

std::string_view to_string(SuiteSet s) {
  switch (s) {
    case SuiteSet::background: return "background";
    case SuiteSet::main: return "main";
    case SuiteSet::lemmas: return "lemmas";
    case SuiteSet::identities: return "identities";
    case SuiteSet::all: return "all";
  }
  return "unknown";
}

SuiteSet parse_suite_set(std::string_view name) {
  for (SuiteSet s : {SuiteSet::background, SuiteSet::main, SuiteSet::lemmas, SuiteSet::identities, SuiteSet::all})
    if (to_string(s) == name) return s;
  throw Error(ErrorKind::InvalidArgument, "unknown set '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// EvalContext

EvalContext::EvalContext(const Instance& inst) : inst_(inst) {
  if (!inst_.space) throw Error(ErrorKind::InvalidArgument, "instance without a space");
}

const AOperator& EvalContext::op(const std::string& name) {
  if (auto it = ops_.find(name); it != ops_.end()) return it->second;
  if (name == "T") return ops_.emplace(name, inst_.t).first->second;
  if (name == "S") {
    if (!inst_.s) throw Error(ErrorKind::UnsupportedArity, "entry needs S but the instance has none");
    return ops_.emplace(name, *inst_.s).first->second;
  }
  if (name == "P") return ops_.emplace(name, inst_.s ? *inst_.s : a_adjoint(inst_.t)).first->second;
  throw Error(ErrorKind::InvalidArgument, "unknown operator name '" + name + "'");
}

std::string EvalContext::sh(const std::string& a) {
  std::string key = "(" + a + ")#";
  if (!ops_.count(key)) ops_.emplace(key, a_adjoint(op(a)));
  return key;
}

std::string EvalContext::mul(const std::string& a, const std::string& b) {
  std::string key = "(" + a + ")(" + b + ")";
  if (!ops_.count(key)) ops_.emplace(key, op(a) * op(b));
  return key;
}

std::string EvalContext::add(const std::string& a, const std::string& b) {
  std::string key = "(" + a + "+" + b + ")";
  if (!ops_.count(key)) ops_.emplace(key, op(a) + op(b));
  return key;
}

std::string EvalContext::sub(const std::string& a, const std::string& b) {
  std::string key = "(" + a + "-" + b + ")";
  if (!ops_.count(key)) ops_.emplace(key, op(a) - op(b));
  return key;
}

std::string EvalContext::scaled(cplx k, const std::string& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.17g,%.17g]*", k.real(), k.imag());
  std::string key = buf + a;
  if (!ops_.count(key)) ops_.emplace(key, k * op(a));
  return key;
}

std::string EvalContext::pw(const std::string& a, int n) {
  std::string key = "(" + a + ")^" + std::to_string(n);
  if (!ops_.count(key)) ops_.emplace(key, power(op(a), n));
  return key;
}

Interval EvalContext::cached(const std::string& key, const std::function<RadiusEstimate()>& f) {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  const Interval v = f().interval();
  values_.emplace(key, v);
  return v;
}

Interval EvalContext::N(const std::string& a) {
  return cached("N:" + a, [&] { return op_seminorm_A(op(a)); });
}

Interval EvalContext::W(const std::string& a) {
  return cached("W:" + a, [&] { return omega_A(op(a)); });
}

Interval EvalContext::C(const std::string& a) {
  return cached("C:" + a, [&] { return crawford_A(op(a)); });
}

Interval EvalContext::J(const std::string& a, const std::string& b) {
  return cached("J:" + a + "," + b, [&] { return joint_radius_A(op(a), op(b)); });
}

Interval EvalContext::J3(const std::string& a, const std::string& b, const std::string& c) {
  return cached("J3:" + a + "," + b + "," + c, [&] {
    const std::array<AOperator, 3> ops{op(a), op(b), op(c)};
    return joint_radius_tuple(ops, inst_.seed);
  });
}

Interval EvalContext::D(const std::string& a) {
  return cached("D:" + a, [&] { return dw_radius_A(op(a)); });
}

Interval EvalContext::G(const std::string& a) {
  return cached("G:" + a, [&] { return inf_gap_A(op(a)); });
}

double EvalContext::residual(const std::string& x, const std::string& y) {
  const Matrix& mx = op(x).matrix();
  return (mx - op(y).matrix()).frobenius_norm() / std::max(1.0, mx.frobenius_norm());
}

const Predicates& EvalContext::predicates_of(const std::string& a) {
  if (auto it = preds_.find(a); it != preds_.end()) return it->second;
  return preds_.emplace(a, predicates(op(a))).first->second;
}

// ---------------------------------------------------------------------------
// Link decisions

namespace {

double effective_tol(const Link& link, const TolerancePolicy& tol) {
  if (link.equality) return link.relative ? link.tol * std::max(1.0, std::abs(link.rhs.lo)) : link.tol;
  const double base = link.tol > 0.0 ? link.tol : tol.check_atol;
  return base * std::max(1.0, std::abs(link.rhs.hi));
}

// Distance to the decision threshold; smaller is closer to failing.
double margin(const LinkOutcome& o) { return o.equality ? o.tol - o.slack : o.slack + o.tol; }

}  // namespace

LinkOutcome decide(const Link& link, const TolerancePolicy& tol) {
  LinkOutcome o;
  o.label = link.label;
  o.lhs = link.lhs;
  o.rhs = link.rhs;
  o.equality = link.equality;
  o.tol = effective_tol(link, tol);
  const bool finite = std::isfinite(link.lhs.lo) && std::isfinite(link.lhs.hi) && std::isfinite(link.rhs.lo) &&
                      std::isfinite(link.rhs.hi);
  if (!finite) throw Error(ErrorKind::EvaluationFailure, "non-finite side in link '" + link.label + "'");
  if (link.equality) {
    o.slack = std::abs(link.lhs.lo - link.rhs.lo);
    o.verdict = o.slack <= o.tol ? Verdict::holds : Verdict::violated;
  } else {
    o.slack = link.rhs.hi - link.lhs.lo;
    o.verdict = link.lhs.lo > link.rhs.hi + o.tol ? Verdict::violated : Verdict::holds;
  }
  return o;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

Link le(std::string label, Interval lhs, Interval rhs, double tol = 0.0) {
  return {std::move(label), lhs, rhs, false, tol, false};
}

Link eq(std::string label, Interval lhs, Interval rhs, double tol, bool relative = false) {
  return {std::move(label), lhs, rhs, true, tol, relative};
}

Interval sq(Interval x) { return pow(x, 2); }

// Common derived names.
struct Names {
  std::string ts, tst, tts;
  explicit Names(EvalContext& c) : ts(c.sh("T")), tst(c.mul(ts, "T")), tts(c.mul("T", ts)) {}
};

struct NamesTS : Names {
  std::string ss, sss, sst;
  explicit NamesTS(EvalContext& c) : Names(c), ss(c.sh("S")), sss(c.mul(ss, "S")), sst(c.mul(ss, "T")) {}
};

std::uint64_t id_hash(std::string_view id) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char ch : id) h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001B3ULL;
  return h;
}

constexpr int kDraws = 200;

// Random vector with probability 1/2 structured through the operators.
struct VectorDraw {
  Vector a, b, c;
};

VectorDraw draw_vectors(EvalContext& ctx, CounterRng& rng, int k) {
  const std::size_t n = ctx.instance().space->dim();
  VectorDraw d{gaussian_vector(rng, n), gaussian_vector(rng, n), gaussian_vector(rng, n)};
  if (k % 2 == 0) {
    d.b = ctx.op("T").matrix() * d.a;
    d.c = ctx.op("P").matrix() * d.a;
  }
  return d;
}

// Draws an A-unit vector; vectors of tiny A-length are redrawn.
Vector draw_unit(EvalContext& ctx, CounterRng& rng) {
  const auto& sp = *ctx.instance().space;
  const double floor = 1e-6 * std::sqrt(sp.eig().values.front());
  for (;;) {
    Vector x = gaussian_vector(rng, sp.dim());
    const double nx = sp.seminorm(x);
    if (nx > floor * norm(x)) {
      for (auto& z : x) z /= nx;
      return x;
    }
  }
}

template <class F>
std::vector<Link> draws(EvalContext& ctx, std::string_view id, F&& one) {
  CounterRng rng(ctx.instance().seed, id_hash(id));
  std::vector<Link> out;
  out.reserve(kDraws);
  for (int k = 0; k < kDraws; ++k) {
    Link l = one(rng, k);
    l.label = "draw " + std::to_string(k);
    out.push_back(std::move(l));
  }
  return out;
}

Counterexample identity2(Matrix t, std::optional<Matrix> s) {
  return {Matrix::identity(2), std::move(t), std::move(s)};
}

std::vector<InequalityEntry> build_registry() {
  std::vector<InequalityEntry> r;
  auto add = [&](InequalityEntry e) { r.push_back(std::move(e)); };
  using E = EvalContext;

  // Background.
  add({"B1", Arity::T, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "1/2 ||T|| <= w(T) <= ||T||", "", std::nullopt, [](E& c) {
         const Interval n = c.N("T"), w = c.W("T");
         return std::vector<Link>{le("lower", 0.5 * n, w), le("upper", w, n)};
       }});
  add({"B2", Arity::T, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "w(T^n) <= w(T)^n for n = 2, 3, 4", "", std::nullopt, [](E& c) {
         std::vector<Link> out;
         for (int n = 2; n <= 4; ++n)
           out.push_back(le("n=" + std::to_string(n), c.W(c.pw("T", n)), pow(c.W("T"), n)));
         return out;
       }});
  add({"B3", Arity::T, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "||TP|| <= ||T|| ||P|| (P = S, or T# without S)", "", std::nullopt, [](E& c) {
         return std::vector<Link>{le("", c.N(c.mul("T", "P")), c.N("T") * c.N("P"))};
       }});
  add({"B4", Arity::T, Kind::equality, Status::valid, SuiteSet::background, kTSelfAdjoint,
       "||T|| = w(T) for A-selfadjoint T", "", std::nullopt, [](E& c) {
         return std::vector<Link>{eq("", c.N("T"), c.W("T"), 2 * c.tol().sweep_tol)};
       }});
  add({"B5", Arity::T, Kind::equality, Status::valid, SuiteSet::background, kNone,
       "||T#T|| = ||TT#|| = ||T||^2 = ||T#||^2", "", std::nullopt, [](E& c) {
         const Names n(c);
         const double t = 2 * c.tol().sweep_tol;
         return std::vector<Link>{eq("T#T = TT#", c.N(n.tst), c.N(n.tts), t),
                                  eq("TT# = ||T||^2", c.N(n.tts), sq(c.N("T")), t),
                                  eq("||T||^2 = ||T#||^2", sq(c.N("T")), sq(c.N(n.ts)), t)};
       }});
  add({"B6", Arity::TS, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "(2 sqrt d)^-1 ||sum T_k# T_k||^1/2 <= w_e(T_1..T_d) <= ||sum T_k# T_k||^1/2, d = 2 and d = 3 on (T, S, TS)",
       "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const std::string x = c.add(n.tst, n.sss);
         const std::string ts = c.mul("T", "S");
         const std::string y = c.add(x, c.mul(c.sh(ts), ts));
         const Interval j = c.J("T", "S"), j3 = c.J3("T", "S", ts);
         return std::vector<Link>{
             le("lower d=2", (1.0 / (2.0 * std::sqrt(2.0))) * sqrt(c.N(x)), j),
             le("upper d=2", j, sqrt(c.N(x))),
             le("lower d=3 (sampled)", (1.0 / (2.0 * std::sqrt(3.0))) * sqrt(c.N(y)), j3, 1e-2),
             le("upper d=3 (sampled)", j3, sqrt(c.N(y)), 1e-2)};
       }});
  add({"B7", Arity::T, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "1/16 ||T#T+TT#|| <= w(T)^2 <= 1/2 ||T#T+TT#||", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval x = c.N(c.add(n.tst, n.tts)), w2 = sq(c.W("T"));
         return std::vector<Link>{le("lower", (1.0 / 16.0) * x, w2), le("upper", w2, 0.5 * x)};
       }});
  add({"B8", Arity::T, Kind::bound, Status::valid, SuiteSet::background, kNone,
       "max{w(T), ||T||^2} <= dw(T) <= sqrt(w(T)^2 + ||T||^4)", "", std::nullopt, [](E& c) {
         const Interval w = c.W("T"), n = c.N("T"), d = c.D("T");
         return std::vector<Link>{le("lower", max(w, sq(n)), d), le("upper", d, sqrt(sq(w) + pow(n, 4)))};
       }});
  add({"B9", Arity::T, Kind::equality, Status::valid, SuiteSet::background, kNone,
       "dw(T) = w_e(T, T#T)", "", std::nullopt, [](E& c) {
         const Names n(c);
         return std::vector<Link>{eq("", c.D("T"), c.J("T", n.tst), 2 * c.tol().sweep_tol)};
       }});

  // Main results.
  add({"M1", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w_e(T,S) <= (||(T#T)^2+(S#S)^2|| + 2w(S#T)^2)^1/4 <= (||T||^4+||S||^4+2w(S#T)^2)^1/4 <= "
       "sqrt(||T||^2+||S||^2)",
       "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const Interval w2 = sq(c.W(n.sst));
         const Interval t1 = root4(c.N(c.add(c.pw(n.tst, 2), c.pw(n.sss, 2))) + 2.0 * w2);
         const Interval t2 = root4(pow(c.N("T"), 4) + pow(c.N("S"), 4) + 2.0 * w2);
         const Interval t3 = sqrt(sq(c.N("T")) + sq(c.N("S")));
         return std::vector<Link>{le("w_e <= term1", c.J("T", "S"), t1), le("term1 <= term2", t1, t2),
                                  le("term2 <= term3", t2, t3)};
       }});
  add({"M1p", Arity::TS, Kind::bound, Status::suspect_printed, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(||T||^4+||S||^4+2w(S#T)^2) <= ||T||^2+||S||^2", "",
       identity2(Matrix::diagonal({0.5, 0.5}), Matrix::diagonal({0.5, 0.5})), [](E& c) {
         const NamesTS n(c);
         const Interval mid = sqrt(pow(c.N("T"), 4) + pow(c.N("S"), 4) + 2.0 * sq(c.W(n.sst)));
         return std::vector<Link>{le("w_e <= middle", c.J("T", "S"), mid),
                                  le("middle <= right", mid, sq(c.N("T")) + sq(c.N("S")))};
       }});
  add({"M2", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w_e(T,S) <= [w((T#T)^2+(S#S)^2) + 2w(S#T)^2]^1/4", "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const Interval rhs = root4(c.W(c.add(c.pw(n.tst, 2), c.pw(n.sss, 2))) + 2.0 * sq(c.W(n.sst)));
         return std::vector<Link>{le("", c.J("T", "S"), rhs)};
       }});
  add({"M3", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= [w((T#T)^2+(T#T)^4) + 2w(T#T^2)^2]^1/4", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval rhs =
             root4(c.W(c.add(c.pw(n.tst, 2), c.pw(n.tst, 4))) + 2.0 * sq(c.W(c.mul(n.ts, c.pw("T", 2)))));
         return std::vector<Link>{le("", c.D("T"), rhs)};
       }});
  add({"M4", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(1/2(||T#T+S#S|| + ||T#T-S#S||) + w(S#T))", "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const Interval rhs = sqrt(0.5 * (c.N(c.add(n.tst, n.sss)) + c.N(c.sub(n.tst, n.sss))) + c.W(n.sst));
         return std::vector<Link>{le("", c.J("T", "S"), rhs)};
       }});
  add({"M4p", Arity::TS, Kind::bound, Status::suspect_printed, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(2)/2 sqrt(||T#T+S#S|| + ||T#T-S#S|| + w(S#T))", "",
       identity2(Matrix::identity(2), Matrix::identity(2)), [](E& c) {
         const NamesTS n(c);
         const Interval rhs =
             kHalfRoot2 * sqrt(c.N(c.add(n.tst, n.sss)) + c.N(c.sub(n.tst, n.sss)) + c.W(n.sst));
         return std::vector<Link>{le("", c.J("T", "S"), rhs)};
       }});
  add({"M4b", Arity::TS, Kind::bound, Status::derived_correction, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(||T||^2 + ||S||^2 + w(S#T))", "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         return std::vector<Link>{le("", c.J("T", "S"), sqrt(sq(c.N("T")) + sq(c.N("S")) + c.W(n.sst)))};
       }});
  add({"M5", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(1/2[w((T#T)^2+T#T) + w((T#T)^2-T#T)] + w(T#T^2))", "", std::nullopt, [](E& c) {
         const Names n(c);
         const std::string q = c.pw(n.tst, 2);
         const Interval rhs =
             sqrt(0.5 * (c.W(c.add(q, n.tst)) + c.W(c.sub(q, n.tst))) + c.W(c.mul(n.ts, c.pw("T", 2))));
         return std::vector<Link>{le("", c.D("T"), rhs)};
       }});
  add({"M6", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w(T) <= 1/2 sqrt(||T#T+TT#|| + ||T^2+T#^2|| + w((T#+T)(T-T#)))", "twil", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval rhs = 0.5 * sqrt(c.N(c.add(n.tst, n.tts)) + c.N(c.add(c.pw("T", 2), c.pw(n.ts, 2))) +
                                         c.W(c.mul(c.add(n.ts, "T"), c.sub("T", n.ts))));
         return std::vector<Link>{le("", c.W("T"), rhs)};
       }});
  auto nor1 = [](double k) {
    return [k](E& c) {
      const Names n(c);
      const Interval rhs =
          0.5 * sqrt(c.N(c.add(n.tst, n.tts)) + c.N(c.sub(n.tst, n.tts)) + k * c.W(c.pw("T", 2)));
      return std::vector<Link>{le("", c.W("T"), rhs)};
    };
  };
  add({"M7p", Arity::T, Kind::bound, Status::suspect_printed, SuiteSet::main, kNone,
       "w(T) <= 1/2 sqrt(||T#T+TT#|| + ||T#T-TT#|| + 1/2 w(T^2))", "",
       identity2(Matrix::diagonal({1.0, cplx(0.0, 1.0)}), std::nullopt), nor1(0.5)});
  add({"M7c", Arity::T, Kind::bound, Status::derived_correction, SuiteSet::main, kNone,
       "w(T) <= 1/2 sqrt(||T#T+TT#|| + ||T#T-TT#|| + 2 w(T^2))", "nor1", std::nullopt, nor1(2.0)});
  add({"M8", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(max{||T||^2, ||S||^2} + w(S#T))", "mai10", std::nullopt, [](E& c) {
         const NamesTS n(c);
         return std::vector<Link>{le("", c.J("T", "S"), sqrt(max(sq(c.N("T")), sq(c.N("S"))) + c.W(n.sst)))};
       }});
  add({"M9", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w(T) <= sqrt(2)/2 sqrt(||T||^2 + w(T^2))", "sharpmai", std::nullopt, [](E& c) {
         return std::vector<Link>{le("", c.W("T"), kHalfRoot2 * sqrt(sq(c.N("T")) + c.W(c.pw("T", 2))))};
       }});
  add({"M10", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w(T) <= 1/2 sqrt(max{||T+T#||^2, ||T-T#||^2} + w((T#+T)(T-T#)))", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval m = max(sq(c.N(c.add("T", n.ts))), sq(c.N(c.sub("T", n.ts))));
         const Interval rhs = 0.5 * sqrt(m + c.W(c.mul(c.add(n.ts, "T"), c.sub("T", n.ts))));
         return std::vector<Link>{le("", c.W("T"), rhs)};
       }});
  add({"M11", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(max{||T||^2, ||T||^4} + w(T#T^2))", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval nt = c.N("T");
         return std::vector<Link>{
             le("", c.D("T"), sqrt(max(sq(nt), pow(nt, 4)) + c.W(c.mul(n.ts, c.pw("T", 2)))))};
       }});
  add({"M12", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w_e(T,S) <= sqrt(max{w(T), w(S)} sqrt(||T#T+S#S|| + 2w(S#T)))", "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const Interval rhs = sqrt(max(c.W("T"), c.W("S")) * sqrt(c.N(c.add(n.tst, n.sss)) + 2.0 * c.W(n.sst)));
         return std::vector<Link>{le("", c.J("T", "S"), rhs)};
       }});
  add({"M13", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "w(T) <= sqrt(2)/2 sqrt(||T|| sqrt(||T#T+TT#|| + 2w(T^2))) <= ||T||", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval nt = c.N("T");
         const Interval mid = kHalfRoot2 * sqrt(nt * sqrt(c.N(c.add(n.tst, n.tts)) + 2.0 * c.W(c.pw("T", 2))));
         return std::vector<Link>{le("w <= middle", c.W("T"), mid), le("middle <= ||T||", mid, nt)};
       }});
  add({"M14", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(max{w(T), w(T#T)} sqrt(w((T#T)^2+T#T) + 2w(T#T^2)))", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval inner_ =
             sqrt(c.W(c.add(c.pw(n.tst, 2), n.tst)) + 2.0 * c.W(c.mul(n.ts, c.pw("T", 2))));
         return std::vector<Link>{le("", c.D("T"), sqrt(max(c.W("T"), c.W(n.tst)) * inner_))};
       }});
  add({"M15", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(||T|| max{w(T), w(T#T)} sqrt(1 + ||T||^2 + 2w(T)))", "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval nt = c.N("T"), w = c.W("T");
         const Interval rhs = sqrt(nt * max(w, c.W(n.tst)) * sqrt(1.0 + sq(nt) + 2.0 * w));
         return std::vector<Link>{le("", c.D("T"), rhs)};
       }});
  add({"M16", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "sqrt(2)/2 max{w(T+S), w(T-S)} <= w_e(T,S) <= sqrt(2)/2 sqrt(w(T+S)^2 + w(T-S)^2)", "thnew",
       std::nullopt, [](E& c) {
         const Interval p = c.W(c.add("T", "S")), m = c.W(c.sub("T", "S")), j = c.J("T", "S");
         return std::vector<Link>{le("lower", kHalfRoot2 * max(p, m), j),
                                  le("upper", j, kHalfRoot2 * sqrt(sq(p) + sq(m)))};
       }});
  add({"M17", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kTSelfAdjoint | kSSelfAdjoint,
       "sqrt(2)/2 max{||T+S||, ||T-S||} <= w_e(T,S) <= sqrt(2)/2 sqrt(||T+S||^2 + ||T-S||^2), A-selfadjoint T, S",
       "", std::nullopt, [](E& c) {
         const Interval p = c.N(c.add("T", "S")), m = c.N(c.sub("T", "S")), j = c.J("T", "S");
         return std::vector<Link>{le("lower", kHalfRoot2 * max(p, m), j),
                                  le("upper", j, kHalfRoot2 * sqrt(sq(p) + sq(m)))};
       }});
  add({"M18", Arity::TS, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "sqrt(2)/2 sqrt(w(T^2+S^2)) <= w_e(T,S) <= sqrt(||T#T+S#S||)", "", std::nullopt, [](E& c) {
         const NamesTS n(c);
         const Interval j = c.J("T", "S");
         return std::vector<Link>{le("lower", kHalfRoot2 * sqrt(c.W(c.add(c.pw("T", 2), c.pw("S", 2)))), j),
                                  le("upper", j, sqrt(c.N(c.add(n.tst, n.sss))))};
       }});
  add({"M19", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "1/2 sqrt(||T#T+TT#||) <= w(T) <= sqrt(2)/2 sqrt(||T#T+TT#||)", "jordan2_and_normal", std::nullopt,
       [](E& c) {
         const Names n(c);
         const Interval x = sqrt(c.N(c.add(n.tst, n.tts))), w = c.W("T");
         return std::vector<Link>{le("lower", 0.5 * x, w), le("upper", w, kHalfRoot2 * x)};
       }});
  add({"M20", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= 1/2 sqrt(w((T#T+T)^2) + w((T#T-T)^2) + w(T#T + 2(T#T)^2 + TT#))", "", std::nullopt,
       [](E& c) {
         const Names n(c);
         const std::string mix = c.add(c.add(n.tst, c.scaled(2.0, c.pw(n.tst, 2))), n.tts);
         const Interval rhs = 0.5 * sqrt(c.W(c.pw(c.add(n.tst, "T"), 2)) + c.W(c.pw(c.sub(n.tst, "T"), 2)) + c.W(mix));
         return std::vector<Link>{le("", c.D("T"), rhs)};
       }});
  add({"M21", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(1/2 w(T#T + 2(T#T)^2 + TT#) - 1/2 inf (||Tx|| - ||T#x||)^2)", "", std::nullopt,
       [](E& c) {
         const Names n(c);
         const std::string mix = c.add(c.add(n.tst, c.scaled(2.0, c.pw(n.tst, 2))), n.tts);
         return std::vector<Link>{le("", c.D("T"), sqrt(0.5 * c.W(mix) - 0.5 * c.G("T")))};
       }});
  add({"M22", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(w(T#T-T)^2 + 2||T||^2 w(T))", "", std::nullopt, [](E& c) {
         const Names n(c);
         return std::vector<Link>{
             le("", c.D("T"), sqrt(sq(c.W(c.sub(n.tst, "T"))) + 2.0 * sq(c.N("T")) * c.W("T")))};
       }});
  add({"M23", Arity::T, Kind::bound, Status::valid, SuiteSet::main, kNone,
       "dw(T) <= sqrt(2)/2 sqrt(w(T^2) + 1/2 w(T#T+TT#) + 8mu), "
       "mu = w^2 (2w^2 - c^2 + 2w sqrt(w^2 - c^2))",
       "", std::nullopt, [](E& c) {
         const Names n(c);
         const Interval w = c.W("T"), cr = c.C("T");
         const Interval d2 = sq(w) - sq(cr);
         const Interval mu = sq(w) * (2.0 * sq(w) - sq(cr) + 2.0 * w * sqrt(d2));
         const Interval rhs = kHalfRoot2 * sqrt(c.W(c.pw("T", 2)) + 0.5 * c.W(c.add(n.tst, n.tts)) + 8.0 * mu);
         return std::vector<Link>{le("", c.D("T"), rhs)};
       }});

  // Pointwise lemmas. Inner products are the semi-inner product of the instance.
  add({"L1", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<a|b>|^2 + |<a|c>|^2 <= ||a||^2 sqrt(<b|b>^2 + 2|<b|c>|^2 + <c|c>^2)", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         return draws(c, "L1", [&](CounterRng& rng, int k) {
           const VectorDraw d = draw_vectors(c, rng, k);
           const double ab = std::abs(sp.semi_inner(d.a, d.b)), ac = std::abs(sp.semi_inner(d.a, d.c));
           const double bb = sp.semi_inner(d.b, d.b).real(), cc = sp.semi_inner(d.c, d.c).real();
           const double bc = std::abs(sp.semi_inner(d.b, d.c));
           const double aa = sp.semi_inner(d.a, d.a).real();
           return le("", ab * ab + ac * ac, aa * std::sqrt(bb * bb + 2 * bc * bc + cc * cc));
         });
       }});
  add({"L2", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "sup over |a|^2+|b|^2 <= 1 of |a z1 + b z2|^2 = |z1|^2 + |z2|^2 (101 x 100 grid, relative 1e-3)", "",
       std::nullopt, [](E& c) {
         return draws(c, "L2", [&](CounterRng& rng, int) {
           const cplx z1 = rng.complex_normal(), z2 = rng.complex_normal();
           double best = 0.0;
           for (int i = 0; i <= 100; ++i) {
             const double tau = 0.5 * std::numbers::pi * i / 100.0;
             for (int j = 0; j < 100; ++j) {
               const double phi = 2.0 * std::numbers::pi * j / 100.0;
               best = std::max(best, std::norm(std::cos(tau) * z1 + std::polar(std::sin(tau), phi) * z2));
             }
           }
           return eq("", best, std::norm(z1) + std::norm(z2), 1e-3, true);
         });
       }});
  add({"L3", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "||aT + bP||^2 <= (|a|^2 + |b|^2) ||T#T + P#P|| (P = S, or T# without S)", "", std::nullopt, [](E& c) {
         const std::string ts = c.sh("T"), ps = c.sh("P");
         const Interval bound = c.N(c.add(c.mul(ts, "T"), c.mul(ps, "P")));
         return draws(c, "L3", [&](CounterRng& rng, int) {
           const cplx a = rng.complex_normal(), b = rng.complex_normal();
           const AOperator m = a * c.op("T") + b * c.op("P");
           return le("", sq(op_seminorm_A(m).interval()), (std::norm(a) + std::norm(b)) * bound);
         });
       }});
  add({"L4", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<a|b>|^2 + |<a|c>|^2 <= ||a||^2 (max{||b||^2, ||c||^2} + |<b|c>|)", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         return draws(c, "L4", [&](CounterRng& rng, int k) {
           const VectorDraw d = draw_vectors(c, rng, k);
           const double ab = std::abs(sp.semi_inner(d.a, d.b)), ac = std::abs(sp.semi_inner(d.a, d.c));
           const double bb = sp.semi_inner(d.b, d.b).real(), cc = sp.semi_inner(d.c, d.c).real();
           const double bc = std::abs(sp.semi_inner(d.b, d.c));
           const double aa = sp.semi_inner(d.a, d.a).real();
           return le("", ab * ab + ac * ac, aa * (std::max(bb, cc) + bc));
         });
       }});
  add({"L5", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<a|b>|^2 + |<a|c>|^2 <= ||a|| max{|<a|b>|, |<a|c>|} sqrt(||b||^2 + ||c||^2 + 2|<b|c>|)", "",
       std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         return draws(c, "L5", [&](CounterRng& rng, int k) {
           const VectorDraw d = draw_vectors(c, rng, k);
           const double ab = std::abs(sp.semi_inner(d.a, d.b)), ac = std::abs(sp.semi_inner(d.a, d.c));
           const double bb = sp.semi_inner(d.b, d.b).real(), cc = sp.semi_inner(d.c, d.c).real();
           const double bc = std::abs(sp.semi_inner(d.b, d.c));
           return le("", ab * ab + ac * ac,
                     sp.seminorm(d.a) * std::max(ab, ac) * std::sqrt(bb + cc + 2 * bc));
         });
       }});
  add({"L6", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<x|z><z|y>| <= 1/2 (|<x|y>| + ||x|| ||y||) for ||z|| = 1", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         return draws(c, "L6", [&](CounterRng& rng, int k) {
           const VectorDraw d = draw_vectors(c, rng, k);
           const Vector z = draw_unit(c, rng);
           const double lhs = std::abs(sp.semi_inner(d.b, z) * sp.semi_inner(z, d.c));
           return le("", lhs, 0.5 * (std::abs(sp.semi_inner(d.b, d.c)) + sp.seminorm(d.b) * sp.seminorm(d.c)));
         });
       }});
  add({"L7", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<Ta|a>|^2 <= 1/2 |<T^2 a|a>| + 1/4 <(T#T + TT#)a|a> for ||a|| = 1", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         const Names n(c);
         const Matrix& t = c.op("T").matrix();
         const Matrix& t2 = c.op(c.pw("T", 2)).matrix();
         const Matrix& m = c.op(c.add(n.tst, n.tts)).matrix();
         return draws(c, "L7", [&](CounterRng& rng, int) {
           const Vector a = draw_unit(c, rng);
           const double lhs = std::norm(sp.semi_inner(t * a, a));
           const double rhs = 0.5 * std::abs(sp.semi_inner(t2 * a, a)) + 0.25 * sp.semi_inner(m * a, a).real();
           return le("", lhs, rhs);
         });
       }});
  add({"L8", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "|<Tx|x>|^2 <= sqrt(<T#Tx|x>) sqrt(<TT#x|x>) for ||x|| = 1", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         const Names n(c);
         const Matrix& t = c.op("T").matrix();
         const Matrix& p = c.op(n.tst).matrix();
         const Matrix& q = c.op(n.tts).matrix();
         return draws(c, "L8", [&](CounterRng& rng, int) {
           const Vector x = draw_unit(c, rng);
           const double lhs = std::norm(sp.semi_inner(t * x, x));
           const double rhs = std::sqrt(std::max(0.0, sp.semi_inner(p * x, x).real())) *
                              std::sqrt(std::max(0.0, sp.semi_inner(q * x, x).real()));
           return le("", lhs, rhs);
         });
       }});
  add({"L9", Arity::vectors, Kind::pointwise, Status::valid, SuiteSet::lemmas, kNone,
       "1/2 ||Tx|| <= sqrt(w^2/2 + w/2 sqrt(w^2 - |<Tx|x>|^2)) for ||x|| = 1", "", std::nullopt, [](E& c) {
         const auto& sp = *c.instance().space;
         const Matrix& t = c.op("T").matrix();
         const Interval w = c.W("T");
         return draws(c, "L9", [&](CounterRng& rng, int) {
           const Vector x = draw_unit(c, rng);
           const Vector tx = t * x;
           const double v2 = std::norm(sp.semi_inner(tx, x));
           const Interval rhs = sqrt(0.5 * sq(w) + 0.5 * w * sqrt(sq(w) - Interval(v2)));
           return le("", 0.5 * sp.seminorm(tx), rhs);
         });
       }});

  // Identities.
  add({"I1", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kNone, "(T#T)# = T#T", "",
       std::nullopt, [](E& c) {
         const Names n(c);
         return std::vector<Link>{eq("relative residual", c.residual(c.sh(n.tst), n.tst), 0.0, 1e-9)};
       }});
  add({"I2", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kTSelfAdjoint,
       "(T#)# = T# for A-selfadjoint T", "", std::nullopt, [](E& c) {
         const std::string ts = c.sh("T");
         return std::vector<Link>{eq("relative residual", c.residual(c.sh(ts), ts), 0.0, 1e-9)};
       }});
  add({"I3", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kTSelfAdjoint,
       "||T^n|| = ||T||^n for A-selfadjoint T, n = 2, 3", "", std::nullopt, [](E& c) {
         std::vector<Link> out;
         for (int n = 2; n <= 3; ++n)
           out.push_back(eq("n=" + std::to_string(n), c.N(c.pw("T", n)), pow(c.N("T"), n), 1e-6, true));
         return out;
       }});
  add({"I4", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kTNormal,
       "w(T^2) = w(T)^2 = ||T||^2 for A-normal T", "nor1", std::nullopt, [](E& c) {
         const Interval w2 = sq(c.W("T"));
         return std::vector<Link>{eq("w(T^2) = w(T)^2", c.W(c.pw("T", 2)), w2, 1e-6, true),
                                  eq("w(T)^2 = ||T||^2", w2, sq(c.N("T")), 1e-6, true)};
       }});
  add({"I5", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kNone,
       "w(T) = w_e(Re_A(T)#, Im_A(T)#)", "", std::nullopt, [](E& c) {
         const std::string ts = c.sh("T");
         const std::string re = c.scaled(0.5, c.add("T", ts));
         const std::string im = c.scaled(cplx(0.0, -0.5), c.sub("T", ts));
         return std::vector<Link>{eq("", c.W("T"), c.J(c.sh(re), c.sh(im)), 2 * c.tol().sweep_tol)};
       }});
  add({"I6", Arity::T, Kind::equality, Status::valid, SuiteSet::identities, kNone,
       "(TP)# = P# T# (P = S, or T# without S)", "", std::nullopt, [](E& c) {
         const std::string lhs = c.sh(c.mul("T", "P"));
         const std::string rhs = c.mul(c.sh("P"), c.sh("T"));
         return std::vector<Link>{eq("relative residual", c.residual(lhs, rhs), 0.0, 1e-9)};
       }});
  return r;
}

}  // namespace

const std::vector<InequalityEntry>& registry() {
  static const std::vector<InequalityEntry> entries = build_registry();
  return entries;
}

const InequalityEntry& find_entry(std::string_view id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw Error(ErrorKind::InvalidArgument, "unknown entry '" + std::string(id) + "'");
}

bool in_set(const InequalityEntry& e, SuiteSet set) { return set == SuiteSet::all || e.set == set; }

std::string applicability(const InequalityEntry& e, EvalContext& ctx) {
  const Instance& inst = ctx.instance();
  if (e.arity == Arity::TS && !inst.s) return "requires S";
  if (!inst.t.compatible()) return "T does not map N(A) into N(A)";
  if (inst.s && !inst.s->compatible()) return "S does not map N(A) into N(A)";
  if ((e.requires_ & kTSelfAdjoint) && !ctx.predicates_of("T").is_a_selfadjoint) return "requires A-selfadjoint T";
  if ((e.requires_ & kSSelfAdjoint) && !ctx.predicates_of("S").is_a_selfadjoint) return "requires A-selfadjoint S";
  if ((e.requires_ & kTNormal) && !ctx.predicates_of("T").is_a_normal) return "requires A-normal T";
  return {};
}

CheckOutcome check_entry(const InequalityEntry& e, EvalContext& ctx) {
  CheckOutcome out;
  out.entry_id = e.id;
  out.status = e.status;
  out.kind = e.kind;
  try {
    if (std::string why = applicability(e, ctx); !why.empty()) {
      out.verdict = Verdict::inapplicable;
      out.enclosure_note = why;
      return out;
    }
    const std::vector<Link> links = e.evaluate(ctx);
    if (links.empty()) throw Error(ErrorKind::EvaluationFailure, "entry produced no comparisons");
    std::vector<LinkOutcome> decided;
    decided.reserve(links.size());
    for (const auto& l : links) decided.push_back(decide(l, ctx.tol()));
    const auto worst = std::min_element(decided.begin(), decided.end(),
                                        [](const LinkOutcome& a, const LinkOutcome& b) { return margin(a) < margin(b); });
    out.verdict = std::any_of(decided.begin(), decided.end(),
                              [](const LinkOutcome& o) { return o.verdict == Verdict::violated; })
                      ? Verdict::violated
                      : Verdict::holds;
    out.lhs = worst->lhs.lo;
    out.rhs = worst->equality ? worst->rhs.lo : worst->rhs.hi;
    out.slack = worst->slack;
    out.lhs_width = worst->lhs.width();
    out.rhs_width = worst->rhs.width();
    out.enclosure_note = worst->equality ? "|lhs.lo - rhs.lo| <= tol" : "violated iff lhs.lo > rhs.hi + tol";
    if (e.kind == Kind::pointwise) {
      out.enclosure_note += "; worst of " + std::to_string(decided.size()) + " draws";
      out.links = {*worst};
    } else {
      out.links = std::move(decided);
    }
  } catch (const Error& err) {
    out.verdict = Verdict::inapplicable;
    out.error = err.what();
    out.links.clear();
  }
  return out;
}

CheckOutcome check_entry(const InequalityEntry& e, const Instance& inst) {
  EvalContext ctx(inst);
  return check_entry(e, ctx);
}

std::vector<CheckOutcome> check_suite(const Instance& inst, SuiteSet set) {
  EvalContext ctx(inst);
  std::vector<CheckOutcome> out;
  for (const auto& e : registry())
    if (in_set(e, set)) out.push_back(check_entry(e, ctx));
  return out;
}

CheckOutcome refinement_check(const Instance& inst) {
  InequalityEntry e;
  e.id = "refinement";
  e.kind = Kind::bound;
  e.evaluate = [](EvalContext& c) {
    const Names n(c);
    const Interval nt = c.N("T");
    const Interval m9 = kHalfRoot2 * sqrt(sq(nt) + c.W(c.pw("T", 2)));
    const Interval x = c.N(c.add(n.tst, n.tts));
    return std::vector<Link>{le("M9 rhs <= ||T||", m9, nt), le("1/16 X <= 1/4 X", (1.0 / 16.0) * x, 0.25 * x)};
  };
  return check_entry(e, inst);
}

}  // namespace semirad
