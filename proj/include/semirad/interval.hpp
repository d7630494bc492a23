#pragma once

#include <algorithm>
#include <cmath>

namespace semirad {

/// Closed interval arithmetic over [lo, hi]. Only the operations the
/// inequality evaluators need; no outward rounding (enclosure widths from the
/// sweeps dwarf a few ulps).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit from scalar is intended
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  double mid() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

/// Square root of the nonnegative part.
inline Interval sqrt(Interval a) { return {std::sqrt(std::max(0.0, a.lo)), std::sqrt(std::max(0.0, a.hi))}; }

/// Integer power of a nonnegative interval.
inline Interval pow(Interval a, int n) {
  const double l = std::max(0.0, a.lo), h = std::max(0.0, a.hi);
  return {std::pow(l, n), std::pow(h, n)};
}

/// Fourth root of the nonnegative part.
inline Interval root4(Interval a) { return sqrt(sqrt(a)); }

inline Interval max(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace semirad
