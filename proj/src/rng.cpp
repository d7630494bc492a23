#include "semirad/rng.hpp"

#include <cmath>
#include <numbers>

namespace semirad {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t CounterRng::next_u64() noexcept {
  return splitmix64(key_ + 0xD1B54A32D192ED03ULL * ++counter_);
}

double CounterRng::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  const double u1 = uniform(), u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx CounterRng::complex_normal() noexcept {
  const double u1 = uniform(), u2 = uniform();
  return std::polar(std::sqrt(-std::log(u1)), 2.0 * std::numbers::pi * u2);
}

Matrix gaussian_matrix(CounterRng& rng, std::size_t n) {
  Matrix m(n);
  for (auto& z : m.data()) z = rng.complex_normal();
  return m;
}

Vector gaussian_vector(CounterRng& rng, std::size_t n) {
  Vector v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

}  // namespace semirad
