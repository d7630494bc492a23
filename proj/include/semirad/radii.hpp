#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "semirad/interval.hpp"
#include "semirad/semihilbert.hpp"

namespace semirad {

enum class Method { sweep, sweep2d, mc, closed_form };
std::string_view to_string(Method m);

/// Enclosure [lo, hi] of an optimized quantity.
struct RadiusEstimate {
  double lo = 0.0;
  double hi = 0.0;
  Method method = Method::closed_form;
  long evals = 0;
  /// Unit vector in range(A) coordinates realizing lo, when the method has one.
  Vector witness;

  double value() const noexcept { return lo; }
  double width() const noexcept { return hi - lo; }
  Interval interval() const noexcept { return {lo, hi}; }
};

/// w(M) = max |u* M u| over unit u, by an outer/inner polygon sweep of the
/// support function h(theta) = lambda_max(Re(e^{i theta} M)).
RadiusEstimate classical_numerical_radius(const Matrix& m, double tol = 1e-6);
/// Distance from 0 to the numerical range of M (0 when 0 is inside).
RadiusEstimate classical_crawford(const Matrix& m, double tol = 1e-6);

RadiusEstimate op_seminorm_A(const AOperator& t);
RadiusEstimate omega_A(const AOperator& t);
RadiusEstimate crawford_A(const AOperator& t);
/// Throws NotCompatible, SpaceMismatch.
RadiusEstimate joint_radius_A(const AOperator& t, const AOperator& s);
/// d in {1, 2, 3}. The d = 3 case is a sampled estimate with hi = lo (1 + 1e-2).
RadiusEstimate joint_radius_tuple(std::span<const AOperator> ops, std::uint64_t seed = 0);
RadiusEstimate dw_radius_A(const AOperator& t);
/// One-sided: lo = 0, hi = best (||T x||_A - ||T# x||_A)^2 found on the A-unit sphere.
RadiusEstimate inf_gap_A(const AOperator& t);

/// Maximizes lambda_max(sum_i u_i H_i) over the unit sphere in R^m (m = forms.size()),
/// which equals the max over unit x of ||(x* H_i x)_i||. Cube-face branch and bound.
RadiusEstimate sphere_radius(std::span<const Matrix> forms, double tol, long max_evals = 400000);

enum class Quantity { norm_a, omega_a, crawford_a, joint, dw };
std::string_view to_string(Quantity q);

struct McOptions {
  /// Number of best samples refined by gradient steps afterwards; 0 = pure sampling.
  int polish_starts = 0;
  int polish_iters = 300;
};

/// Brute-force estimate over random A-unit vectors: Gaussians in range(A)
/// coordinates, with the forms evaluated through A and the operators directly
/// (no compression). Returns the empirical supremum (infimum for crawford_a).
/// Deterministic given seed.
double mc_oracle(Quantity q, std::span<const AOperator> ops, long samples, std::uint64_t seed,
                 McOptions opts = {});

}  // namespace semirad
