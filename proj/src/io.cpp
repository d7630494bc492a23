#include "semirad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semirad/error.hpp"

namespace semirad::io {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

double number_at(const json& j, std::string_view field) {
  if (!j.is_number()) parse_fail(std::string(field) + ": expected a number");
  return j.get<double>();
}

void write_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(k).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::size_t dim, std::string_view field) {
  const std::string f(field);
  if (!j.is_array() || j.size() != dim) parse_fail(f + ": expected " + std::to_string(dim) + " rows");
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != dim)
      parse_fail(f + ": row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < dim; ++k) {
      const json& z = row[k];
      const std::string where = f + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (!z.is_array() || z.size() != 2) parse_fail(where + ": expected an [re, im] pair");
      m(i, k) = cplx(number_at(z[0], where), number_at(z[1], where));
    }
  }
  return m;
}

json to_json(const InstanceFile& f) {
  json j;
  j["dim"] = f.a.dim();
  j["A"] = matrix_to_json(f.a);
  j["T"] = matrix_to_json(f.t);
  if (f.s) j["S"] = matrix_to_json(*f.s);
  j["seed"] = f.seed;
  j["tolerances"] = {{"rank_rtol", f.tol.rank_rtol},
                     {"check_atol", f.tol.check_atol},
                     {"sweep_tol", f.tol.sweep_tol},
                     {"compat_rtol", f.tol.compat_rtol}};
  return j;
}

InstanceFile instance_from_json(const json& j) {
  if (!j.is_object()) parse_fail("instance: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) parse_fail("dim: expected an integer");
  const auto dim = j["dim"].get<long long>();
  if (dim < 1 || dim > 64) parse_fail("dim: must be in 1..64");
  const auto n = static_cast<std::size_t>(dim);
  for (const char* key : {"A", "T"})
    if (!j.contains(key)) parse_fail(std::string(key) + ": missing");

  InstanceFile f;
  f.a = matrix_from_json(j["A"], n, "A");
  f.t = matrix_from_json(j["T"], n, "T");
  if (j.contains("S") && !j["S"].is_null()) f.s = matrix_from_json(j["S"], n, "S");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) parse_fail("seed: expected an integer");
    if (!j["seed"].is_number_unsigned()) parse_fail("seed: must be non-negative");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) parse_fail("tolerances: expected an object");
    for (const auto& [k, v] : t.items()) {
      const double x = number_at(v, "tolerances." + k);
      if (k == "rank_rtol") f.tol.rank_rtol = x;
      else if (k == "check_atol") f.tol.check_atol = x;
      else if (k == "sweep_tol") f.tol.sweep_tol = x;
      else if (k == "compat_rtol") f.tol.compat_rtol = x;
      else parse_fail("tolerances: unknown key '" + k + "'");
    }
    f.tol.validate();
  }
  return f;
}

InstanceFile parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

Instance make_instance(const InstanceFile& f) {
  const SpacePtr sp = SemiHilbertSpace::create(f.a, f.tol);
  Instance inst{sp, AOperator(sp, f.t), std::nullopt, f.seed};
  inst.t.require_compatible("T");
  if (f.s) {
    inst.s = AOperator(sp, *f.s);
    inst.s->require_compatible("S");
  }
  return inst;
}

InstanceFile to_file(const Instance& inst) {
  InstanceFile f{inst.space->a(), inst.t.matrix(), std::nullopt, inst.space->tol(), inst.seed};
  if (inst.s) f.s = inst.s->matrix();
  return f;
}

std::string serialize(const json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : bytes) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
  return h;
}

std::string digest(const InstanceFile& f) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(serialize(to_json(f), -1))));
  return buf;
}

json to_json(const LinkOutcome& o) {
  return {{"label", o.label},
          {"lhs", {o.lhs.lo, o.lhs.hi}},
          {"rhs", {o.rhs.lo, o.rhs.hi}},
          {"equality", o.equality},
          {"tol", o.tol},
          {"slack", o.slack},
          {"verdict", to_string(o.verdict)}};
}

json to_json(const CheckOutcome& o) {
  json links = json::array();
  for (const auto& l : o.links) links.push_back(to_json(l));
  json j = {{"id", o.entry_id},
            {"status", to_string(o.status)},
            {"kind", to_string(o.kind)},
            {"verdict", to_string(o.verdict)},
            {"note", o.enclosure_note},
            {"links", std::move(links)}};
  if (!o.error.empty()) j["error"] = o.error;
  if (o.verdict != Verdict::inapplicable) {
    j["lhs"] = o.lhs;
    j["rhs"] = o.rhs;
    j["slack"] = o.slack;
    j["lhs_width"] = o.lhs_width;
    j["rhs_width"] = o.rhs_width;
  }
  return j;
}

}  // namespace semirad::io
