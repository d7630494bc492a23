#include "semirad/instancegen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "semirad/error.hpp"
#include "semirad/rng.hpp"

namespace semirad {

void GenConfig::validate() const {
  if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidArgument, "dim must be in 1..8");
  if (rank < 1 || rank > dim) throw Error(ErrorKind::InvalidArgument, "rank must be in 1..dim");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
}

Matrix gen_psd(const GenConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.dim, r = cfg.rank;
  const TolerancePolicy tol;
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    CounterRng rng(cfg.seed, 1000 + attempt);
    std::vector<cplx> g(n * r);
    for (auto& z : g) z = cfg.scale * rng.complex_normal();
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < r; ++k) s += g[i * r + k] * std::conj(g[j * r + k]);
        a(i, j) = s;
      }
    a = hermitian_part(a);
    const HermitianEigen e = hermitian_eig(a);
    const PsdFunctions f = psd_functions(e, tol);
    if (f.rank == r && e.values[r - 1] >= 1e-4 * e.values.front()) return a;
  }
  throw Error(ErrorKind::EvaluationFailure, "could not draw a well-conditioned PSD matrix");
}

namespace {

Matrix null_block(const SemiHilbertSpace& sp, CounterRng& rng, double scale) {
  const Matrix q = Matrix::identity(sp.dim()) - sp.proj_range();
  return q * (gaussian_matrix(rng, sp.dim()) * scale) * q;
}

AOperator lift(const SpacePtr& sp, const Matrix& core, CounterRng& rng, double scale) {
  const Matrix t = sp->pinv_sqrt_a() * core * sp->sqrt_a() + null_block(*sp, rng, scale);
  return AOperator(sp, t);
}

void check_space(const SpacePtr& sp, const GenConfig& cfg) {
  if (!sp) throw Error(ErrorKind::InvalidArgument, "missing space");
  if (sp->dim() != cfg.dim) throw Error(ErrorKind::DimensionMismatch, "config dim differs from space dim");
}

}  // namespace

AOperator gen_compatible(const SpacePtr& sp, const GenConfig& cfg, std::uint64_t stream) {
  check_space(sp, cfg);
  CounterRng rng(cfg.seed, 2000 + stream);
  const Matrix g = gaussian_matrix(rng, cfg.dim) * cfg.scale;
  return lift(sp, g, rng, cfg.scale);
}

AOperator gen_a_selfadjoint(const SpacePtr& sp, const GenConfig& cfg, bool positive, std::uint64_t stream) {
  check_space(sp, cfg);
  CounterRng rng(cfg.seed, 3000 + stream);
  const Matrix g = gaussian_matrix(rng, cfg.dim) * cfg.scale;
  const Matrix h = positive ? hermitian_part(g * g.adjoint()) : hermitian_part(g);
  return lift(sp, h, rng, cfg.scale);
}

AOperator gen_a_normal(const SpacePtr& sp, const GenConfig& cfg, std::uint64_t stream) {
  check_space(sp, cfg);
  CounterRng rng(cfg.seed, 4000 + stream);
  const std::size_t n = cfg.dim, r = sp->rank();
  // A unitary U on range(A) from the eigenvectors of a random Hermitian matrix.
  Matrix hr(r);
  for (auto& z : hr.data()) z = rng.complex_normal();
  const Matrix u = hermitian_eig(hermitian_part(hr)).vectors;
  std::vector<cplx> z(r);
  for (auto& v : z) v = cfg.scale * rng.complex_normal();
  Matrix core_r(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < r; ++k) s += u(i, k) * z[k] * std::conj(u(j, k));
      core_r(i, j) = s;
    }
  // Embed with the eigenvectors of A spanning its range.
  const Matrix& q = sp->eig().vectors;
  Matrix core(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) s += q(i, a) * core_r(a, b) * std::conj(q(j, b));
      core(i, j) = s;
    }
  return lift(sp, core, rng, cfg.scale);
}

namespace {

constexpr std::array<std::string_view, 7> kCases{"twil",          "mai10",    "thnew", "fffeki1_upper",
                                                 "fffeki1_lower", "sharpmai", "nor1"};

}  // namespace

std::span<const std::string_view> sharpness_cases() { return kCases; }

std::vector<std::string> witness_group(std::string_view tag) {
  if (tag == "jordan2_and_normal") return {"fffeki1_upper", "fffeki1_lower"};
  if (std::find(kCases.begin(), kCases.end(), tag) != kCases.end()) return {std::string(tag)};
  return {};
}

Witness sharpness_witness(std::string_view case_id, const SpacePtr& sp, const GenConfig& cfg) {
  Witness w{std::string(case_id), sp, AOperator(sp, Matrix(sp->dim())), std::nullopt, {}};
  if (case_id == "twil") {
    const AOperator s = gen_a_selfadjoint(sp, cfg, false, 11);
    w.t = a_adjoint(s);
    w.targets = {{"M6", -1}};
  } else if (case_id == "mai10") {
    const AOperator x = gen_a_selfadjoint(sp, cfg, false, 12);
    w.t = a_adjoint(x);
    w.s = w.t;
    w.targets = {{"M8", -1}};
  } else if (case_id == "thnew") {
    w.t = gen_compatible(sp, cfg, 13);
    w.s = w.t;
    w.targets = {{"M16", -1}};
  } else if (case_id == "fffeki1_upper") {
    w.t = gen_a_normal(sp, cfg, 14);
    w.targets = {{"M19", 1}};
  } else if (case_id == "fffeki1_lower") {
    w.space = SemiHilbertSpace::create(Matrix::identity(2), sp->tol());
    w.t = AOperator(w.space, Matrix{{0.0, 1.0}, {0.0, 0.0}});
    w.targets = {{"M19", 0}};
  } else if (case_id == "sharpmai") {
    w.t = gen_a_normal(sp, cfg, 15);
    w.targets = {{"M9", -1}};
  } else if (case_id == "nor1") {
    w.t = gen_a_normal(sp, cfg, 16);
    w.targets = {{"M7c", -1}, {"I4", -1}};
  } else {
    throw Error(ErrorKind::UnknownCase, "unknown sharpness case '" + std::string(case_id) + "'");
  }
  return w;
}

Witness sharpness_witness(std::string_view case_id, const GenConfig& cfg) {
  if (witness_group(case_id).empty() || case_id == "jordan2_and_normal")
    throw Error(ErrorKind::UnknownCase, "unknown sharpness case '" + std::string(case_id) + "'");
  return sharpness_witness(case_id, SemiHilbertSpace::create(gen_psd(cfg)), cfg);
}

}  // namespace semirad
