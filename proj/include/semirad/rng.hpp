#pragma once

#include <cstdint>

#include "semirad/linalg.hpp"

namespace semirad {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based generator: the k-th draw of stream s under seed is a pure
/// function of (seed, s, k), so parallel workers reproduce serial output.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Standard normal (Box-Muller, one variate per pair of uniforms).
  double normal() noexcept;
  /// Circular complex Gaussian with E|z|^2 = 1.
  cplx complex_normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fills an n x n matrix with complex_normal() draws, row-major.
Matrix gaussian_matrix(CounterRng& rng, std::size_t n);
Vector gaussian_vector(CounterRng& rng, std::size_t n);

}  // namespace semirad
