#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semirad/semihilbert.hpp"

namespace semirad {

struct GenConfig {
  std::size_t dim = 2;
  std::size_t rank = 2;
  std::uint64_t seed = 0;
  double scale = 1.0;

  /// Throws InvalidArgument unless 1 <= rank <= dim, 1 <= dim <= 8 and scale > 0.
  void validate() const;
};

/// A = G G* with G (dim x rank) complex Gaussian times scale. Draws whose
/// numerical rank differs from cfg.rank, or with lambda_rank / lambda_1 < 1e-4,
/// are redrawn on the next stream.
Matrix gen_psd(const GenConfig& cfg);

/// T = A^{+1/2} G A^{1/2} + (I - P) K (I - P); maps N(A) into N(A) by construction.
/// `stream` separates independent operators drawn from one config.
AOperator gen_compatible(const SpacePtr& sp, const GenConfig& cfg, std::uint64_t stream = 1);

/// T = A^{+1/2} H A^{1/2} + null block with H Hermitian (PSD when `positive`).
AOperator gen_a_selfadjoint(const SpacePtr& sp, const GenConfig& cfg, bool positive = false,
                            std::uint64_t stream = 1);

/// T = A^{+1/2} N A^{1/2} + null block with N normal on range(A).
AOperator gen_a_normal(const SpacePtr& sp, const GenConfig& cfg, std::uint64_t stream = 1);

/// Entry (and optionally one link of it) a witness is expected to make tight.
struct WitnessTarget {
  std::string entry;
  int link = -1;  // -1 = every link
};

struct Witness {
  std::string case_id;
  SpacePtr space;
  AOperator t;
  std::optional<AOperator> s;
  std::vector<WitnessTarget> targets;
};

/// Known ids: twil, mai10, thnew, fffeki1_upper, fffeki1_lower, sharpmai, nor1.
std::span<const std::string_view> sharpness_cases();

/// Case ids behind a registry sharpness tag (a tag may name a group of cases).
std::vector<std::string> witness_group(std::string_view tag);

/// Builds the witness on `sp` (fffeki1_lower always uses A = I_2). Throws UnknownCase.
Witness sharpness_witness(std::string_view case_id, const SpacePtr& sp, const GenConfig& cfg);
/// Same, drawing A from cfg.
Witness sharpness_witness(std::string_view case_id, const GenConfig& cfg);

}  // namespace semirad
