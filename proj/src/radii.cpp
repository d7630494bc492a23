#include "semirad/radii.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <queue>

#include "semirad/error.hpp"
#include "semirad/rng.hpp"

namespace semirad {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::sweep: return "sweep";
    case Method::sweep2d: return "sweep2d";
    case Method::mc: return "mc";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::norm_a: return "norm_a";
    case Quantity::omega_a: return "omega_a";
    case Quantity::crawford_a: return "crawford_a";
    case Quantity::joint: return "joint";
    case Quantity::dw: return "dw";
  }
  return "unknown";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
}

Vector unit_vector(std::size_t n) {
  Vector e(n);
  if (n > 0) e[0] = 1.0;
  return e;
}

struct SupportPoint {
  double theta = 0.0;
  double h = 0.0;  // lambda_max(cos(theta) H1 - sin(theta) H2)
  cplx w;          // u* M u for the top eigenvector u
  Vector u;
};

// Support function of the numerical range. The half-plane at theta is
// cos(theta) x - sin(theta) y <= h(theta).
class SupportSweep {
 public:
  explicit SupportSweep(const Matrix& m)
      : m_(m), h1_(hermitian_part(m)), h2_(skew_part(m)), ws_(m.dim()) {
    scale_ = h1_.frobenius_norm() + h2_.frobenius_norm();
    eps_ = 64.0 * DBL_EPSILON * scale_;
  }

  SupportPoint at(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    auto in = ws_.input();
    const auto a = h1_.data(), b = h2_.data();
    for (std::size_t k = 0; k < in.size(); ++k) in[k] = c * a[k] - s * b[k];
    ws_.solve();
    ++evals_;
    SupportPoint p;
    p.theta = theta;
    p.h = ws_.max_value();
    p.u = ws_.max_vector();
    p.w = inner(m_ * p.u, p.u);
    return p;
  }

  std::vector<SupportPoint> initial(int count) {
    std::vector<SupportPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) pts.push_back(at(kTwoPi * k / count));
    return pts;
  }

  // Inserts the midpoint of every selected arc (i, i+1); the last arc wraps to 2 pi.
  void refine(std::vector<SupportPoint>& pts, const std::vector<char>& split) {
    std::vector<SupportPoint> out;
    out.reserve(pts.size() * 2);
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(std::move(pts[i]));
      if (!split[i]) continue;
      const double next = (i + 1 < n) ? pts[i + 1].theta : kTwoPi;
      out.push_back(at(0.5 * (out.back().theta + next)));
    }
    pts = std::move(out);
  }

  double scale() const { return scale_; }
  double eps() const { return eps_; }
  long evals() const { return evals_; }

 private:
  const Matrix& m_;
  Matrix h1_, h2_;
  detail::EigWorkspace ws_;
  double scale_ = 0.0, eps_ = 0.0;
  long evals_ = 0;
};

double arc_end(const std::vector<SupportPoint>& pts, std::size_t i) {
  return i + 1 < pts.size() ? pts[i + 1].theta : kTwoPi;
}

// Corner of the outer polygon between the support lines at theta_a < theta_b.
cplx outer_vertex(double ta, double ha, double tb, double hb) {
  const double ca = std::cos(ta), sa = std::sin(ta), cb = std::cos(tb), sb = std::sin(tb);
  const double det = std::sin(ta - tb);
  return {(sa * hb - sb * ha) / det, (ca * hb - cb * ha) / det};
}

double segment_distance(cplx p, cplx q) {
  const cplx d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p);
  const double t = std::clamp(-(p.real() * d.real() + p.imag() * d.imag()) / len2, 0.0, 1.0);
  return std::abs(p + t * d);
}

}  // namespace

RadiusEstimate classical_numerical_radius(const Matrix& m, double tol) {
  require_finite_tol(tol);
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  RadiusEstimate est;
  est.method = Method::sweep;
  if (m.empty()) return est;

  SupportSweep sw(m);
  if (sw.scale() == 0.0) {
    est.method = Method::closed_form;
    est.witness = unit_vector(m.dim());
    return est;
  }
  const double tol_eff = std::max(tol, 1e-11 * sw.scale());
  std::vector<SupportPoint> pts = sw.initial(64);

  for (int round = 0; round < 200; ++round) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (std::abs(pts[i].w) > std::abs(pts[best].w)) best = i;
    const double lo = std::abs(pts[best].w);
    double hi = lo;
    std::vector<char> split(pts.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t j = (i + 1) % pts.size();
      const double ta = pts[i].theta, tb = arc_end(pts, i);
      const double gap = tb - ta;
      const double bound = std::abs(outer_vertex(ta, pts[i].h, tb, pts[j].h)) + 4.0 * sw.eps() / std::sin(gap);
      hi = std::max(hi, bound);
      if (bound > lo + 0.25 * tol_eff && gap > 1e-10) split[i] = any = true;
    }
    est.lo = lo;
    est.hi = hi;
    est.witness = pts[best].u;
    if (hi - lo <= 0.5 * tol_eff || !any) break;
    sw.refine(pts, split);
  }
  est.evals = sw.evals();
  return est;
}

RadiusEstimate classical_crawford(const Matrix& m, double tol) {
  require_finite_tol(tol);
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  RadiusEstimate est;
  est.method = Method::sweep;
  if (m.empty()) return est;

  SupportSweep sw(m);
  if (sw.scale() == 0.0) {
    est.method = Method::closed_form;
    est.witness = unit_vector(m.dim());
    return est;
  }
  const double tol_eff = std::max(tol, 1e-11 * sw.scale());
  std::vector<SupportPoint> pts = sw.initial(64);

  for (int round = 0; round < 300; ++round) {
    const std::size_t n = pts.size();
    std::size_t kstar = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (pts[i].h < pts[kstar].h) kstar = i;
    const double lo = std::max(0.0, -pts[kstar].h - sw.eps());

    // Inner polygon: support points in sweep order are in convex position.
    double dist = HUGE_VAL;
    std::size_t edge = 0;
    bool neg = true, pos = true;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx p = pts[i].w, q = pts[(i + 1) % n].w;
      const double cross = (q - p).real() * (-p.imag()) - (q - p).imag() * (-p.real());
      neg = neg && cross < 0.0;
      pos = pos && cross > 0.0;
      const double d = segment_distance(p, q);
      if (d < dist) {
        dist = d;
        edge = i;
      }
    }
    const bool inside = neg || pos;
    const double hi = inside ? lo : std::max(lo, dist + sw.eps());
    est.lo = lo;
    est.hi = hi;
    if (inside) {
      est.witness = pts[kstar].u;
    } else {
      const std::size_t k = std::abs(pts[edge].w) <= std::abs(pts[(edge + 1) % n].w) ? edge : (edge + 1) % n;
      est.witness = pts[k].u;
    }
    if (hi - lo <= 0.5 * tol_eff) break;

    std::vector<char> split(n, 0);
    auto mark = [&](std::size_t i) {
      if (arc_end(pts, i) - pts[i].theta > 1e-12) split[i] = 1;
    };
    mark(kstar);
    mark((kstar + n - 1) % n);
    mark(edge);
    mark((edge + n - 1) % n);
    mark((edge + 1) % n);
    if (std::none_of(split.begin(), split.end(), [](char c) { return c != 0; })) break;
    sw.refine(pts, split);
  }
  est.evals = sw.evals();
  return est;
}

namespace {

struct Cell {
  int face = 0;
  std::array<double, 3> c{};
  double half = 0.0;
  double bound = 0.0;
  bool operator<(const Cell& o) const { return bound < o.bound; }
};

class SphereSearch {
 public:
  SphereSearch(std::span<const Matrix> forms, double tol, long max_evals)
      : forms_(forms), m_(forms.size()), fd_(m_ - 1), r_(forms[0].dim()), ws_(r_), max_evals_(max_evals) {
    double scale = 0.0;
    for (const auto& f : forms_) scale += f.frobenius_norm();
    eps_ = 64.0 * DBL_EPSILON * scale;
    tol_ = std::max(tol, 1e-11 * scale);
  }

  RadiusEstimate run() {
    RadiusEstimate est;
    est.method = Method::sweep2d;
    witness_ = unit_vector(r_);

    std::priority_queue<Cell> heap;
    const int per_axis = 3;
    const int cells_per_face = fd_ == 2 ? per_axis * per_axis : per_axis * per_axis * per_axis;
    for (int face = 0; face < 2 * static_cast<int>(m_); ++face) {
      for (int idx = 0; idx < cells_per_face; ++idx) {
        Cell cell;
        cell.face = face;
        cell.half = 1.0 / per_axis;
        int rem = idx;
        for (std::size_t d = 0; d < fd_; ++d) {
          cell.c[d] = -1.0 + (2 * (rem % per_axis) + 1) * cell.half;
          rem /= per_axis;
        }
        if (score(cell)) heap.push(cell);
      }
    }

    while (!heap.empty()) {
      const Cell top = heap.top();
      if (top.bound <= lo_ + 0.5 * tol_ || evals_ >= max_evals_) break;
      heap.pop();
      if (top.bound <= lo_) continue;
      const int children = 1 << fd_;
      for (int k = 0; k < children; ++k) {
        Cell child;
        child.face = top.face;
        child.half = 0.5 * top.half;
        for (std::size_t d = 0; d < fd_; ++d) child.c[d] = top.c[d] + (((k >> d) & 1) ? child.half : -child.half);
        if (score(child)) heap.push(child);
      }
    }
    const double top_bound = heap.empty() ? lo_ : heap.top().bound;
    est.lo = lo_;
    est.hi = std::max(lo_, top_bound) + eps_;
    est.evals = evals_;
    est.witness = witness_;
    return est;
  }

 private:
  using Dir = std::array<double, 4>;

  Dir direction(const Cell& cell, const double* offset) const {
    Dir u{};
    const std::size_t k = static_cast<std::size_t>(cell.face / 2);
    std::size_t idx = 0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      u[i] = (i == k) ? ((cell.face % 2) ? -1.0 : 1.0) : cell.c[idx] + (offset ? offset[idx] : 0.0);
      if (i != k) ++idx;
      n2 += u[i] * u[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < m_; ++i) u[i] *= inv;
    return u;
  }

  // Returns lambda_max(sum u_i H_i); leaves the top eigenvector's form values in rv.
  double evaluate(const Dir& u, Vector& x, Dir& rv) {
    auto in = ws_.input();
    std::fill(in.begin(), in.end(), cplx{});
    for (std::size_t i = 0; i < m_; ++i) {
      const auto h = forms_[i].data();
      for (std::size_t k = 0; k < in.size(); ++k) in[k] += u[i] * h[k];
    }
    ws_.solve();
    ++evals_;
    x = ws_.max_vector();
    for (std::size_t i = 0; i < m_; ++i) rv[i] = inner(forms_[i] * x, x).real();
    return ws_.max_value();
  }

  static double length(const Dir& v, std::size_t m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += v[i] * v[i];
    return std::sqrt(s);
  }

  // Fixed-point ascent u <- r(x(u)) / |r(x(u))|, which never decreases |r|.
  void offer(Vector x, Dir rv) {
    double val = length(rv, m_);
    if (val <= lo_) return;
    lo_ = val;
    witness_ = std::move(x);
    for (int it = 0; it < 40 && evals_ < max_evals_; ++it) {
      Dir u{};
      for (std::size_t i = 0; i < m_; ++i) u[i] = rv[i] / val;
      Vector x2;
      Dir rv2{};
      evaluate(u, x2, rv2);
      const double v2 = length(rv2, m_);
      if (v2 <= lo_ * (1.0 + 1e-15)) break;
      lo_ = val = v2;
      rv = rv2;
      witness_ = std::move(x2);
    }
  }

  // Evaluates the cell centre; false when the cell cannot hold a maximizer.
  bool score(Cell& cell) {
    const Dir u = direction(cell, nullptr);
    Vector x;
    Dir rv{};
    const double f = evaluate(u, x, rv);
    offer(std::move(x), rv);

    double cos_delta = 1.0;
    const int corners = 1 << fd_;
    for (int k = 0; k < corners; ++k) {
      double off[3] = {0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < fd_; ++d) off[d] = ((k >> d) & 1) ? cell.half : -cell.half;
      const Dir v = direction(cell, off);
      double dot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) dot += u[i] * v[i];
      cos_delta = std::min(cos_delta, dot);
    }
    cell.bound = (f + eps_) / cos_delta;
    return cell.bound > lo_;
  }

  std::span<const Matrix> forms_;
  std::size_t m_, fd_, r_;
  detail::EigWorkspace ws_;
  long max_evals_;
  long evals_ = 0;
  double eps_ = 0.0, tol_ = 0.0, lo_ = 0.0;
  Vector witness_;
};

void require_same_space(const AOperator& t, const AOperator& s) {
  if (!t.space().same_as(s.space())) throw Error(ErrorKind::SpaceMismatch, "operators live on different spaces");
}

}  // namespace

RadiusEstimate sphere_radius(std::span<const Matrix> forms, double tol, long max_evals) {
  require_finite_tol(tol);
  if (forms.size() < 2 || forms.size() > 4)
    throw Error(ErrorKind::UnsupportedArity, "sphere_radius handles 2 to 4 forms");
  const std::size_t r = forms[0].dim();
  for (const auto& f : forms) {
    if (f.dim() != r) throw Error(ErrorKind::DimensionMismatch, "forms of unequal size");
    if (!f.all_finite()) throw Error(ErrorKind::NonFinite, "form has non-finite entries");
  }
  if (r == 0) return {0.0, 0.0, Method::sweep2d, 0, {}};
  return SphereSearch(forms, tol, max_evals).run();
}

RadiusEstimate op_seminorm_A(const AOperator& t) {
  const Matrix m = compress_range(t);
  const HermitianEigen e = hermitian_eig(m.adjoint() * m);
  const double v = std::sqrt(std::max(0.0, e.values.front()));
  RadiusEstimate est;
  est.method = Method::closed_form;
  est.lo = v * (1.0 - 1e-12);
  est.hi = v * (1.0 + 1e-12);
  est.evals = 1;
  est.witness = e.vectors.column(0);
  return est;
}

RadiusEstimate omega_A(const AOperator& t) {
  return classical_numerical_radius(compress_range(t), t.space().tol().sweep_tol);
}

RadiusEstimate crawford_A(const AOperator& t) {
  return classical_crawford(compress_range(t), t.space().tol().sweep_tol);
}

RadiusEstimate joint_radius_A(const AOperator& t, const AOperator& s) {
  require_same_space(t, s);
  const Matrix mt = compress_range(t), ms = compress_range(s);
  const std::array<Matrix, 4> forms{hermitian_part(mt), skew_part(mt), hermitian_part(ms), skew_part(ms)};
  return sphere_radius(forms, t.space().tol().sweep_tol);
}

RadiusEstimate joint_radius_tuple(std::span<const AOperator> ops, std::uint64_t seed) {
  switch (ops.size()) {
    case 1: return omega_A(ops[0]);
    case 2: return joint_radius_A(ops[0], ops[1]);
    case 3: {
      require_same_space(ops[0], ops[1]);
      require_same_space(ops[0], ops[2]);
      RadiusEstimate est;
      est.method = Method::mc;
      est.lo = mc_oracle(Quantity::joint, ops, 20000, seed, {8, 300});
      est.hi = est.lo * (1.0 + 1e-2);
      est.evals = 20000;
      return est;
    }
    default:
      throw Error(ErrorKind::UnsupportedArity, "joint radius supports 1 to 3 operators, got " +
                                                   std::to_string(ops.size()));
  }
}

RadiusEstimate dw_radius_A(const AOperator& t) {
  const Matrix mt = compress_range(t);
  const std::array<Matrix, 3> forms{hermitian_part(mt), skew_part(mt), hermitian_part(mt.adjoint() * mt)};
  return sphere_radius(forms, t.space().tol().sweep_tol);
}

namespace {

struct GapEval {
  double g = 0.0;
  Vector grad;  // tangent gradient of g at y
};

GapEval gap_at(const Matrix& mm, const Matrix& nn, const Vector& y) {
  const Vector my = mm * y, ny = nn * y;
  const double a = std::sqrt(std::max(0.0, inner(my, y).real()));
  const double b = std::sqrt(std::max(0.0, inner(ny, y).real()));
  GapEval out;
  out.g = (a - b) * (a - b);
  out.grad.assign(y.size(), cplx{});
  const double tiny = 1e-300;
  for (std::size_t i = 0; i < y.size(); ++i)
    out.grad[i] = 2.0 * (a - b) * (my[i] / std::max(a, tiny) - ny[i] / std::max(b, tiny));
  const double radial = inner(out.grad, y).real();
  for (std::size_t i = 0; i < y.size(); ++i) out.grad[i] -= radial * y[i];
  return out;
}

void normalize(Vector& v) {
  const double n = norm(v);
  for (auto& z : v) z /= n;
}

}  // namespace

RadiusEstimate inf_gap_A(const AOperator& t) {
  const Matrix m = compress_range(t);
  const std::size_t r = m.dim();
  const Matrix mm = m.adjoint() * m;
  const Matrix nn = m * m.adjoint();

  RadiusEstimate est;
  est.method = Method::mc;

  // The difference M*M - MM* is traceless, so its quadratic form vanishes on a
  // mix of its extreme eigenvectors; that point is an exact zero of the gap.
  const HermitianEigen d = hermitian_eig(mm - nn);
  const double lmax = d.values.front(), lmin = d.values.back();
  Vector y0 = d.vectors.column(0);
  if (lmax - lmin > 0.0 && lmax >= 0.0 && lmin <= 0.0) {
    const double c2 = -lmin / (lmax - lmin);
    const double c = std::sqrt(c2), s = std::sqrt(1.0 - c2);
    const Vector vmin = d.vectors.column(r - 1);
    for (std::size_t i = 0; i < r; ++i) y0[i] = c * y0[i] + s * vmin[i];
    normalize(y0);
  }
  GapEval best_eval = gap_at(mm, nn, y0);
  Vector best = y0;

  CounterRng rng(0x6A09E667F3BCC908ULL, r);
  for (int start = 0; start < 64; ++start) {
    Vector y = gaussian_vector(rng, r);
    normalize(y);
    GapEval cur = gap_at(mm, nn, y);
    double step = 0.5 / std::max(1e-300, op_norm_2(m));
    for (int it = 0; it < 60 && cur.g > 0.0; ++it) {
      Vector trial(r);
      for (std::size_t i = 0; i < r; ++i) trial[i] = y[i] - step * cur.grad[i];
      normalize(trial);
      GapEval next = gap_at(mm, nn, trial);
      if (next.g < cur.g) {
        y = std::move(trial);
        cur = std::move(next);
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    est.evals += 1;
    if (cur.g < best_eval.g) {
      best_eval = std::move(cur);
      best = y;
    }
  }
  est.lo = 0.0;
  est.hi = best_eval.g;
  est.witness = std::move(best);
  return est;
}

namespace {

// Objective Phi(q) over the ratios q_j = x* K_j x / x* A x.
struct McProblem {
  std::vector<Matrix> k;
  bool squared = true;  // Phi = sum q_j^2, else Phi = q_0
  bool minimize = false;

  double phi(const std::vector<double>& q) const {
    if (!squared) return q[0];
    double s = 0.0;
    for (double v : q) s += v * v;
    return s;
  }
};

McProblem build_problem(Quantity q, std::span<const AOperator> ops) {
  const std::size_t want = (q == Quantity::joint) ? 0 : 1;
  if (want == 1 && ops.size() != 1)
    throw Error(ErrorKind::UnsupportedArity, std::string(to_string(q)) + " takes one operator");
  if (q == Quantity::joint && (ops.size() < 2 || ops.size() > 3))
    throw Error(ErrorKind::UnsupportedArity, "joint takes two or three operators");
  for (const auto& op : ops) {
    op.require_compatible("mc_oracle");
    require_same_space(ops[0], op);
  }
  const Matrix& a = ops[0].space().a();
  McProblem p;
  auto add_reim = [&](const AOperator& op) {
    const Matrix at = a * op.matrix();
    p.k.push_back(hermitian_part(at));
    p.k.push_back(skew_part(at));
  };
  const auto gram = [&](const AOperator& op) { return hermitian_part(op.matrix().adjoint() * a * op.matrix()); };
  switch (q) {
    case Quantity::norm_a:
      p.k.push_back(gram(ops[0]));
      p.squared = false;
      break;
    case Quantity::omega_a: add_reim(ops[0]); break;
    case Quantity::crawford_a:
      add_reim(ops[0]);
      p.minimize = true;
      break;
    case Quantity::joint:
      for (const auto& op : ops) add_reim(op);
      break;
    case Quantity::dw:
      add_reim(ops[0]);
      p.k.push_back(gram(ops[0]));
      break;
  }
  return p;
}

// Returns x* A x and fills q; x is left untouched.
double ratios(const McProblem& p, const Matrix& a, const Vector& x, std::vector<double>& q) {
  const double ax = inner(a * x, x).real();
  q.resize(p.k.size());
  for (std::size_t j = 0; j < p.k.size(); ++j) q[j] = inner(p.k[j] * x, x).real() / ax;
  return ax;
}

double polish(const McProblem& p, const Matrix& a, Vector x, int iters) {
  std::vector<double> q;
  double ax = ratios(p, a, x, q);
  double f = p.phi(q);
  const double sign = p.minimize ? -1.0 : 1.0;
  double step = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Vector axv = a * x;
    Vector g(x.size());
    for (std::size_t j = 0; j < p.k.size(); ++j) {
      const double w = p.squared ? 2.0 * q[j] : 1.0;
      const Vector kx = p.k[j] * x;
      for (std::size_t i = 0; i < x.size(); ++i) g[i] += w * (kx[i] - q[j] * axv[i]) / ax;
    }
    bool moved = false;
    for (int tries = 0; tries < 40 && !moved; ++tries) {
      Vector trial(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + sign * step * g[i];
      std::vector<double> q2;
      const double ax2 = ratios(p, a, trial, q2);
      if (!(ax2 > 0.0)) {
        step *= 0.5;
        continue;
      }
      const double f2 = p.phi(q2);
      if (sign * (f2 - f) > 0.0) {
        const double s = 1.0 / std::sqrt(ax2);
        for (auto& z : trial) z *= s;
        x = std::move(trial);
        ax = 1.0;
        q = std::move(q2);
        f = f2;
        step *= 1.5;
        moved = true;
      } else {
        step *= 0.5;
      }
    }
    if (!moved) break;
  }
  return f;
}

}  // namespace

double mc_oracle(Quantity q, std::span<const AOperator> ops, long samples, std::uint64_t seed, McOptions opts) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  if (ops.empty()) throw Error(ErrorKind::UnsupportedArity, "no operators given");
  const McProblem p = build_problem(q, ops);
  const SemiHilbertSpace& sp = ops[0].space();
  const Matrix& a = sp.a();

  CounterRng rng(seed, static_cast<std::uint64_t>(q));
  const std::size_t keep = static_cast<std::size_t>(std::max(0, opts.polish_starts));
  std::vector<std::pair<double, Vector>> elite;  // (oriented score, x)
  double best = p.minimize ? HUGE_VAL : -HUGE_VAL;
  std::vector<double> qv;
  for (long s = 0; s < samples; ++s) {
    Vector x = sp.from_range_coords(gaussian_vector(rng, sp.rank()));
    if (!(ratios(p, a, x, qv) > 0.0)) continue;
    const double f = p.phi(qv);
    best = p.minimize ? std::min(best, f) : std::max(best, f);
    if (keep == 0) continue;
    const double score = p.minimize ? -f : f;
    if (elite.size() < keep || score > elite.back().first) {
      elite.emplace_back(score, std::move(x));
      std::sort(elite.begin(), elite.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
      if (elite.size() > keep) elite.pop_back();
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::EvaluationFailure, "no sample had positive A-length");
  for (const auto& e : elite) {
    const double f = polish(p, a, e.second, opts.polish_iters);
    best = p.minimize ? std::min(best, f) : std::max(best, f);
  }
  return std::sqrt(std::max(0.0, best));
}

}  // namespace semirad
