#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semirad/inequalities.hpp"
#include "semirad/io.hpp"

namespace semirad::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

struct FuzzConfig {
  std::vector<std::size_t> dims{2, 3, 4, 5};
  bool full = true;
  bool deficient = true;
  long trials = 1;  // per dimension
  std::uint64_t seed = 0;
  SuiteSet set = SuiteSet::all;
  bool strict = false;
  /// Recorded instances per suspect entry; violations of valid entries are always recorded.
  std::size_t suspect_record_cap = 25;
};

struct FuzzResult {
  io::json report;
  int exit_code = kOk;
};

/// Parses "2..5" or "2,3,4".
std::vector<std::size_t> parse_dims(const std::string& spec);

/// Instance for trial `trial` at dimension `dim`; pure in (seed, dim, trial, rank choice).
Instance fuzz_instance(const FuzzConfig& cfg, std::size_t dim, long trial);

FuzzResult run_fuzz(const FuzzConfig& cfg);

/// Entry point behind the semirad executable. Returns 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semirad::cli
