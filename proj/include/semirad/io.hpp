#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "semirad/inequalities.hpp"
#include "semirad/linalg.hpp"

namespace semirad::io {

using json = nlohmann::json;

/// On-disk instance: dim, A, T, optional S as arrays of [re, im] pairs,
/// optional tolerance overrides and the seed for pointwise draws.
struct InstanceFile {
  Matrix a;
  Matrix t;
  std::optional<Matrix> s;
  TolerancePolicy tol;
  std::uint64_t seed = 0;
};

json matrix_to_json(const Matrix& m);
/// Throws ParseError naming the offending field.
Matrix matrix_from_json(const json& j, std::size_t dim, std::string_view field);

json to_json(const InstanceFile& f);
/// Throws ParseError on shape or type problems.
InstanceFile instance_from_json(const json& j);
InstanceFile parse_instance(std::string_view text);
InstanceFile read_instance(const std::string& path);

/// Builds the space and operators. Throws the space's validation errors, and
/// NotCompatible when T or S does not leave N(A) invariant.
Instance make_instance(const InstanceFile& f);
/// Inverse of make_instance, up to the symmetrization of A.
InstanceFile to_file(const Instance& inst);

/// Deterministic text: sorted keys, doubles at 17 significant digits,
/// non-finite doubles as null. indent < 0 gives a single line.
std::string serialize(const json& j, int indent = 2);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
/// Hex FNV-1a of the compact serialization of the instance.
std::string digest(const InstanceFile& f);

json to_json(const LinkOutcome& o);
json to_json(const CheckOutcome& o);

}  // namespace semirad::io
