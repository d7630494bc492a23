#include "semirad/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "semirad/error.hpp"
#include "semirad/instancegen.hpp"
#include "semirad/radii.hpp"
#include "semirad/rng.hpp"

namespace semirad::cli {

using io::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string str(std::string_view s) { return std::string(s); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool runs_refinement(SuiteSet set) { return set == SuiteSet::main || set == SuiteSet::all; }

/// Outcomes of a suite plus the refinement check when the set covers the main results.
std::vector<CheckOutcome> evaluate(const Instance& inst, SuiteSet set) {
  std::vector<CheckOutcome> out = check_suite(inst, set);
  if (runs_refinement(set)) out.push_back(refinement_check(inst));
  return out;
}

struct Tally {
  long holds = 0, violated = 0, inapplicable = 0, errors = 0;
  long valid_violations = 0, suspect_violations = 0;

  void add(const CheckOutcome& o) {
    if (!o.error.empty()) ++errors;
    switch (o.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::inapplicable: ++inapplicable; break;
      case Verdict::violated:
        ++violated;
        (o.status == Status::valid ? valid_violations : suspect_violations)++;
        break;
    }
  }

  json to_json() const {
    return {{"holds", holds},
            {"violated", violated},
            {"inapplicable", inapplicable},
            {"errors", errors},
            {"valid_violations", valid_violations},
            {"suspect_violations", suspect_violations}};
  }

  int exit_code(bool strict) const {
    if (errors > 0) return kInputError;
    if (valid_violations > 0 || (strict && suspect_violations > 0)) return kViolation;
    return kOk;
  }
};

json args_echo(int argc, const char* const* argv) {
  json a = json::array();
  for (int i = 1; i < argc; ++i) a.push_back(argv[i]);
  return a;
}

// --- compute -------------------------------------------------------------

json estimate_json(const RadiusEstimate& e) {
  return {{"lo", e.lo}, {"hi", e.hi}, {"method", str(to_string(e.method))}, {"evals", e.evals}};
}

int cmd_compute(const std::string& file, const std::string& quantity, bool as_json, const json& echo,
                std::ostream& out) {
  const auto t0 = Clock::now();
  const io::InstanceFile f = io::read_instance(file);
  const Instance inst = io::make_instance(f);

  static const std::vector<std::string> known{"norm_a", "omega_a", "crawford_a", "joint", "dw", "all"};
  if (std::find(known.begin(), known.end(), quantity) == known.end())
    throw Error(ErrorKind::InvalidArgument, "unknown quantity '" + quantity + "'");
  if (quantity == "joint" && !inst.s) throw Error(ErrorKind::UnsupportedArity, "joint needs S in the instance");

  json values;
  const bool all = quantity == "all";
  if (all || quantity == "norm_a") values["norm_a"] = estimate_json(op_seminorm_A(inst.t));
  if (all || quantity == "omega_a") values["omega_a"] = estimate_json(omega_A(inst.t));
  if (all || quantity == "crawford_a") values["crawford_a"] = estimate_json(crawford_A(inst.t));
  if (all || quantity == "dw") values["dw"] = estimate_json(dw_radius_A(inst.t));
  if ((all || quantity == "joint") && inst.s) values["joint"] = estimate_json(joint_radius_A(inst.t, *inst.s));

  json report = {{"command", "compute"},
                 {"args", echo},
                 {"instance_digest", io::digest(f)},
                 {"seed", f.seed},
                 {"quantities", values},
                 {"wall_time_s", seconds_since(t0)},
                 {"exit_code", int(kOk)}};
  if (as_json) {
    out << io::serialize(report) << '\n';
  } else {
    for (const auto& [name, v] : values.items())
      out << name << "  [" << fmt(v["lo"].get<double>()) << ", " << fmt(v["hi"].get<double>()) << "]  "
          << v["method"].get<std::string>() << "  evals " << v["evals"].get<long>() << '\n';
  }
  return kOk;
}

// --- check ---------------------------------------------------------------

void print_outcomes(const std::vector<CheckOutcome>& outcomes, std::ostream& out) {
  char line[256];
  for (const auto& o : outcomes) {
    if (o.verdict == Verdict::inapplicable) {
      std::snprintf(line, sizeof line, "%-10s %-18s %-12s %s", o.entry_id.c_str(), str(to_string(o.status)).c_str(),
                    "inapplicable", (o.error.empty() ? o.enclosure_note : o.error).c_str());
    } else {
      std::snprintf(line, sizeof line, "%-10s %-18s %-12s slack %-14.6g lhs %-14.9g rhs %.9g", o.entry_id.c_str(),
                    str(to_string(o.status)).c_str(), str(to_string(o.verdict)).c_str(), o.slack, o.lhs, o.rhs);
    }
    out << line << '\n';
  }
}

int cmd_check(const std::string& file, const std::string& set_name, double tol, bool as_json, bool strict,
              const json& echo, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const SuiteSet set = parse_suite_set(set_name);
  io::InstanceFile f = io::read_instance(file);
  if (tol > 0.0) f.tol.check_atol = tol;
  const Instance inst = io::make_instance(f);

  if (!inst.s) {
    long skipped = 0;
    for (const auto& e : registry())
      if (in_set(e, set) && e.arity == Arity::TS) ++skipped;
    if (skipped > 0)
      err << "warning: instance has no S; " << skipped << " entries that need S are reported inapplicable\n";
  }

  const std::vector<CheckOutcome> outcomes = evaluate(inst, set);
  Tally tally;
  json rows = json::array();
  json min_slack = json::object();
  for (const auto& o : outcomes) {
    tally.add(o);
    rows.push_back(io::to_json(o));
    if (o.verdict != Verdict::inapplicable) min_slack[o.entry_id] = o.slack;
  }
  const int code = tally.exit_code(strict);
  json report = {{"command", "check"},
                 {"args", echo},
                 {"set", str(to_string(set))},
                 {"strict", strict},
                 {"instance_digest", io::digest(f)},
                 {"seed", f.seed},
                 {"outcomes", rows},
                 {"aggregate", {{"counts", tally.to_json()}, {"min_slack", min_slack}}},
                 {"wall_time_s", seconds_since(t0)},
                 {"exit_code", code}};
  if (as_json) {
    out << io::serialize(report) << '\n';
  } else {
    print_outcomes(outcomes, out);
    out << "holds " << tally.holds << ", violated " << tally.violated << " (valid " << tally.valid_violations
        << "), inapplicable " << tally.inapplicable << ", errors " << tally.errors << '\n';
  }
  return code;
}

// --- fuzz ----------------------------------------------------------------

struct EntryAggregate {
  Status status = Status::valid;
  Tally tally;
  double min_slack = INFINITY;
  std::size_t recorded = 0;
};

}  // namespace

std::vector<std::size_t> parse_dims(const std::string& spec) {
  const auto to_dim = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1 || v > 8)
      throw Error(ErrorKind::InvalidArgument, "bad dimension '" + s + "' in '" + spec + "' (expected 1..8)");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> dims;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const std::size_t lo = to_dim(spec.substr(0, dots)), hi = to_dim(spec.substr(dots + 2));
    if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty dimension range '" + spec + "'");
    for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const std::size_t comma = std::min(spec.find(',', start), spec.size());
      dims.push_back(to_dim(spec.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  return dims;
}

Instance fuzz_instance(const FuzzConfig& cfg, std::size_t dim, long trial) {
  if (!cfg.full && !cfg.deficient) throw Error(ErrorKind::InvalidArgument, "no rank kind selected");
  const bool deficient = cfg.full && cfg.deficient ? trial % 2 == 1 : cfg.deficient;
  if (deficient && dim < 2) throw Error(ErrorKind::InvalidArgument, "a rank-deficient A needs dim >= 2");
  const std::uint64_t ts =
      splitmix64(cfg.seed ^ splitmix64((static_cast<std::uint64_t>(dim) << 32) + static_cast<std::uint64_t>(trial)));
  const std::size_t rank = deficient ? 1 + ts % (dim - 1) : dim;
  const GenConfig g{dim, rank, ts, 1.0};
  const SpacePtr sp = SemiHilbertSpace::create(gen_psd(g));
  switch (trial % 3) {
    case 0: return {sp, gen_compatible(sp, g, 1), gen_compatible(sp, g, 2), ts};
    case 1: return {sp, gen_a_selfadjoint(sp, g, false, 1), gen_a_selfadjoint(sp, g, false, 2), ts};
    default: return {sp, gen_a_normal(sp, g, 1), gen_compatible(sp, g, 2), ts};
  }
}

FuzzResult run_fuzz(const FuzzConfig& cfg) {
  const auto t0 = Clock::now();
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (cfg.dims.empty()) throw Error(ErrorKind::InvalidArgument, "no dimensions given");

  std::map<std::string, EntryAggregate> per_entry;
  std::vector<std::string> order;
  Tally total;
  json violations = json::array();
  json errors = json::array();
  long instances = 0;

  for (std::size_t dim : cfg.dims) {
    for (long trial = 0; trial < cfg.trials; ++trial) {
      const Instance inst = fuzz_instance(cfg, dim, trial);
      ++instances;
      for (const auto& o : evaluate(inst, cfg.set)) {
        auto [it, fresh] = per_entry.try_emplace(o.entry_id);
        if (fresh) order.push_back(o.entry_id);
        EntryAggregate& agg = it->second;
        agg.status = o.status;
        agg.tally.add(o);
        total.add(o);
        if (o.verdict != Verdict::inapplicable) agg.min_slack = std::min(agg.min_slack, o.slack);
        const json where = {{"dim", dim}, {"rank", inst.space->rank()}, {"trial", trial}};
        if (!o.error.empty()) {
          errors.push_back({{"entry", o.entry_id}, {"error", o.error}, {"at", where},
                            {"instance", io::to_json(io::to_file(inst))}});
        }
        if (o.verdict == Verdict::violated && (o.status == Status::valid || agg.recorded < cfg.suspect_record_cap)) {
          ++agg.recorded;
          violations.push_back({{"entry", o.entry_id},
                                {"status", str(to_string(o.status))},
                                {"slack", o.slack},
                                {"at", where},
                                {"instance", io::to_json(io::to_file(inst))}});
        }
      }
    }
  }

  json entries = json::object();
  for (const auto& id : order) {
    const EntryAggregate& agg = per_entry.at(id);
    json e = agg.tally.to_json();
    e["status"] = str(to_string(agg.status));
    e["min_slack"] = std::isfinite(agg.min_slack) ? json(agg.min_slack) : json(nullptr);
    entries[id] = std::move(e);
  }
  json dims = json::array();
  for (auto d : cfg.dims) dims.push_back(d);
  json ranks = json::array();
  if (cfg.full) ranks.push_back("full");
  if (cfg.deficient) ranks.push_back("deficient");

  FuzzResult r;
  r.exit_code = total.exit_code(cfg.strict);
  r.report = {{"command", "fuzz"},
              {"dims", dims},
              {"ranks", ranks},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"set", str(to_string(cfg.set))},
              {"strict", cfg.strict},
              {"instances", instances},
              {"aggregate", {{"counts", total.to_json()}, {"entries", entries}, {"entry_order", order}}},
              {"violations", violations},
              {"errors", errors},
              {"wall_time_s", seconds_since(t0)},
              {"exit_code", r.exit_code}};
  return r;
}

namespace {

int cmd_fuzz(const FuzzConfig& cfg, bool as_json, const json& echo, std::ostream& out) {
  FuzzResult r = run_fuzz(cfg);
  r.report["args"] = echo;
  if (as_json) {
    out << io::serialize(r.report) << '\n';
    return r.exit_code;
  }
  char line[160];
  for (const auto& idj : r.report["aggregate"]["entry_order"]) {
    const std::string id = idj.get<std::string>();
    const json& e = r.report["aggregate"]["entries"][id];
    const json& ms = e["min_slack"];
    std::snprintf(line, sizeof line, "%-10s %-18s holds %-6ld violated %-6ld inapplicable %-6ld min slack %s",
                  id.c_str(), e["status"].get<std::string>().c_str(), e["holds"].get<long>(),
                  e["violated"].get<long>(), e["inapplicable"].get<long>(),
                  ms.is_null() ? "-" : fmt(ms.get<double>()).c_str());
    out << line << '\n';
  }
  const json& c = r.report["aggregate"]["counts"];
  out << r.report["instances"].get<long>() << " instances, " << c["valid_violations"].get<long>()
      << " valid-entry violations, " << c["suspect_violations"].get<long>() << " suspect-entry violations, "
      << c["errors"].get<long>() << " errors\n";
  return r.exit_code;
}

// --- sharpness -----------------------------------------------------------

int cmd_sharpness(const std::string& id, std::uint64_t seed, std::size_t dim, std::size_t rank, bool as_json,
                  const json& echo, std::ostream& out) {
  const auto t0 = Clock::now();
  const std::vector<std::string> cases = witness_group(id);
  if (cases.empty()) throw Error(ErrorKind::UnknownCase, "unknown sharpness case '" + id + "'");
  const GenConfig cfg{dim, rank, seed, 1.0};
  cfg.validate();
  const SpacePtr sp = SemiHilbertSpace::create(gen_psd(cfg));

  constexpr double kSharpTol = 1e-5;
  double worst = 0.0;
  json rows = json::array();
  for (const auto& c : cases) {
    const Witness w = sharpness_witness(c, sp, cfg);
    const Instance inst{w.space, w.t, w.s, seed};
    for (const auto& target : w.targets) {
      const CheckOutcome o = check_entry(find_entry(target.entry), inst);
      if (!o.error.empty() || o.verdict == Verdict::inapplicable)
        throw Error(ErrorKind::EvaluationFailure, "witness " + c + " does not apply to " + target.entry + ": " +
                                                      (o.error.empty() ? o.enclosure_note : o.error));
      double slack = 0.0;
      for (std::size_t k = 0; k < o.links.size(); ++k)
        if (target.link < 0 || static_cast<std::size_t>(target.link) == k)
          slack = std::max(slack, std::abs(o.links[k].slack));
      worst = std::max(worst, slack);
      rows.push_back({{"case", c},
                      {"entry", target.entry},
                      {"link", target.link},
                      {"abs_slack", slack},
                      {"verdict", str(to_string(o.verdict))},
                      {"outcome", io::to_json(o)}});
      if (!as_json) out << c << "  " << target.entry << (target.link >= 0 ? " link " + std::to_string(target.link) : "")
                        << "  |slack| " << fmt(slack) << (slack <= kSharpTol ? "  sharp" : "  NOT sharp") << '\n';
    }
  }
  const int code = worst <= kSharpTol ? kOk : kViolation;
  json report = {{"command", "sharpness"},
                 {"args", echo},
                 {"case", id},
                 {"seed", seed},
                 {"dim", dim},
                 {"rank", rank},
                 {"targets", rows},
                 {"max_abs_slack", worst},
                 {"tolerance", kSharpTol},
                 {"wall_time_s", seconds_since(t0)},
                 {"exit_code", code}};
  if (as_json) out << io::serialize(report) << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-Hilbert numerical radius inequality checker"};
  app.require_subcommand(1);

  std::string file, quantity = "all", set = "all", dims = "2..5", ranks = "full,deficient", case_id;
  double tol = 0.0;
  bool as_json = false, strict = false;
  long trials = 1;
  std::uint64_t seed = 0;
  std::size_t dim = 3, rank = 2;

  CLI::App* compute = app.add_subcommand("compute", "Enclosures for A-radii of an instance");
  compute->add_option("file", file, "Instance JSON")->required();
  compute->add_option("--quantity", quantity, "norm_a|omega_a|crawford_a|joint|dw|all");
  compute->add_flag("--json", as_json, "Print the JSON report");

  CLI::App* check = app.add_subcommand("check", "Check the inequality catalog on an instance");
  check->add_option("file", file, "Instance JSON")->required();
  check->add_option("--set", set, "background|main|lemmas|identities|all");
  check->add_option("--tol", tol, "Override check_atol");
  check->add_flag("--json", as_json, "Print the JSON report");
  check->add_flag("--strict", strict, "Violations of suspect entries also fail");

  CLI::App* fuzz = app.add_subcommand("fuzz", "Check the catalog on generated instances");
  fuzz->add_option("--dims", dims, "Range a..b or list a,b,c");
  fuzz->add_option("--ranks", ranks, "full, deficient or full,deficient");
  fuzz->add_option("--trials", trials, "Trials per dimension")->required();
  fuzz->add_option("--seed", seed, "Master seed");
  fuzz->add_option("--set", set, "background|main|lemmas|identities|all");
  fuzz->add_flag("--json", as_json, "Print the JSON report");
  fuzz->add_flag("--strict", strict, "Violations of suspect entries also fail");

  CLI::App* sharp = app.add_subcommand("sharpness", "Evaluate a sharpness witness");
  sharp->add_option("--case", case_id, "Witness id or group tag")->required();
  sharp->add_option("--seed", seed, "Generator seed");
  sharp->add_option("--dim", dim, "Dimension of A");
  sharp->add_option("--rank", rank, "Rank of A");
  sharp->add_flag("--json", as_json, "Print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const json echo = args_echo(argc, argv);
  try {
    if (compute->parsed()) return cmd_compute(file, quantity, as_json, echo, out);
    if (check->parsed()) return cmd_check(file, set, tol, as_json, strict, echo, out, err);
    if (fuzz->parsed()) {
      FuzzConfig cfg;
      cfg.dims = parse_dims(dims);
      cfg.full = cfg.deficient = false;
      for (const auto& r : CLI::detail::split(ranks, ',')) {
        if (r == "full") cfg.full = true;
        else if (r == "deficient") cfg.deficient = true;
        else throw Error(ErrorKind::InvalidArgument, "unknown rank kind '" + r + "'");
      }
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.set = parse_suite_set(set);
      cfg.strict = strict;
      return cmd_fuzz(cfg, as_json, echo, out);
    }
    if (sharp->parsed()) return cmd_sharpness(case_id, seed, dim, rank, as_json, echo, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace semirad::cli
