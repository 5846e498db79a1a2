#pragma once

// Real zeros of theta(q, .) for q in (0,1) and q in (-1,0): bracketing on the
// power-curve grid x = -q^{-a}, hybrid refinement, and tracing of the zero
// curves in the (q, x)-plane up to their turning points.
//
// Zeros come in pairs that live in fixed exponent cells.  Writing |x| = |q|^{-b}:
//   q > 0, pair j   : xi_{2j-1}, xi_{2j}       in b in (2j-1, 2j),   x < 0, theta < 0 between;
//   q < 0, pair nu- : zeta_{2nu-1}, zeta_{2nu} in b in [4nu-3, 4nu+1], x < 0, theta < 0 between;
//   q < 0, pair nu+ : eta_{2nu}, eta_{2nu+1}   in b in [4nu-2, 4nu+2], x > 0, theta > 0 between.
// A pair is real exactly when the extremum of theta over its cell has the
// inside sign; it turns complex at the spectral value.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptheta/config.hpp"
#include "ptheta/detail/search.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"
#include "ptheta/fold.hpp"
#include "ptheta/identities.hpp"

namespace ptheta {

enum class Regime { q_pos, q_neg_negative_zeros, q_neg_positive_zeros };
enum class Branch { lower_branch, upper_branch };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::q_pos:
      return "q_pos";
    case Regime::q_neg_negative_zeros:
      return "q_neg_negative_zeros";
    case Regime::q_neg_positive_zeros:
      return "q_neg_positive_zeros";
  }
  return "?";
}

inline const char* to_string(Branch b) {
  return b == Branch::lower_branch ? "lower_branch" : "upper_branch";
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int sign_lo = 0;
  int sign_hi = 0;
};

struct RefinedZero {
  double x = 0.0;
  double residual = 0.0;
};

struct CurveSample {
  double q = 0.0;
  double x = 0.0;
  Branch branch = Branch::lower_branch;
};

/// Sampled curve Gamma_j (q > 0) or Gamma_nu^- / Gamma_nu^+ (q < 0).
/// Samples run along the lower branch with |q| increasing, through the
/// turning point, and back along the upper branch with |q| decreasing.
struct ZeroCurve {
  Regime regime = Regime::q_pos;
  int index = 0;
  std::vector<CurveSample> samples;
  std::optional<FoldPoint> turning_point;

  double max_x() const {
    double m = -INFINITY;
    for (const auto& s : samples) m = std::max(m, s.x);
    if (turning_point) m = std::max(m, turning_point->x);
    return m;
  }
};

namespace detail {

struct Cell {
  double base = 0.0;  // |q|
  double b_lo = 0.0, b_hi = 0.0;
  double sign_x = -1.0;
  int inside = -1;  // sign of theta between the two zeros

  double x_at(double b) const { return sign_x * std::pow(base, -b); }
};

inline Cell cell_for(Regime r, int index, double q) {
  if (index < 1) throw DomainError("cell index must be positive");
  Cell c;
  c.base = std::abs(q);
  switch (r) {
    case Regime::q_pos:
      if (!(q > 0.0 && q < 1.0)) throw DomainError("q_pos regime needs q in (0,1)");
      c.b_lo = 2.0 * index - 1;
      c.b_hi = 2.0 * index;
      c.sign_x = -1;
      c.inside = -1;
      break;
    case Regime::q_neg_negative_zeros:
      if (!(q < 0.0 && q > -1.0)) throw DomainError("q_neg regime needs q in (-1,0)");
      c.b_lo = 4.0 * index - 3;
      c.b_hi = 4.0 * index + 1;
      c.sign_x = -1;
      c.inside = -1;
      break;
    case Regime::q_neg_positive_zeros:
      if (!(q < 0.0 && q > -1.0)) throw DomainError("q_neg regime needs q in (-1,0)");
      c.b_lo = 4.0 * index - 2;
      c.b_hi = 4.0 * index + 2;
      c.sign_x = 1;
      c.inside = 1;
      break;
  }
  return c;
}

struct CellScan {
  bool real = false;
  bool near_coalescence = false;
  double b_ext = 0.0;
  double theta_ext = 0.0;  // theta at the extremum
  double err_ext = 0.0;
};

/// Extremum of theta over a cell (minimum for a dip, maximum for a bump).
inline CellScan scan_cell(double q, const Cell& c, const EvalConfig& cfg) {
  auto g = [&](double b) { return -c.inside * theta(q, c.x_at(b), cfg).value; };
  auto r = scan_min(g, c.b_lo, c.b_hi, 32, 1e-11);
  auto t = theta(q, c.x_at(r.first), cfg);
  CellScan s;
  s.b_ext = r.first;
  s.theta_ext = t.value;
  s.err_ext = t.err;
  const double g_ext = -c.inside * t.value;
  const double tol = std::max(t.err, cfg.tail_tol);
  s.real = g_ext < 0 && std::abs(g_ext) > t.err;
  s.near_coalescence = std::abs(g_ext) <= 1e3 * tol;
  return s;
}

inline Bracket make_bracket(double q, double x1, double x2, const EvalConfig& cfg) {
  Bracket b;
  b.lo = std::min(x1, x2);
  b.hi = std::max(x1, x2);
  b.sign_lo = theta(q, b.lo, cfg).value < 0 ? -1 : 1;
  b.sign_hi = theta(q, b.hi, cfg).value < 0 ? -1 : 1;
  return b;
}

/// Brackets of the two zeros of a real pair: first the one nearer the
/// origin (lower branch), then the farther one.
/// For small |q| a zero can sit within rounding of a cell end, where theta is
/// a near-total cancellation; the end is then pushed outward until theta has
/// the outside sign.
inline std::pair<Bracket, Bracket> pair_brackets(double q, const Cell& c, const CellScan& s,
                                                 const EvalConfig& cfg) {
  auto outer = [&](double b_end, double dir) {
    for (double d : {0.0, 1e-9, 1e-6, 1e-3, 0.05, 0.2}) {
      const double x = c.x_at(b_end + dir * d);
      if (-c.inside * theta(q, x, cfg).value > 0) return x;
    }
    return c.x_at(b_end);
  };
  const double xe = c.x_at(s.b_ext);
  return {make_bracket(q, outer(c.b_lo, -1.0), xe, cfg), make_bracket(q, xe, outer(c.b_hi, 1.0), cfg)};
}

inline int pairs_lost_estimate(double abs_q) {
  return static_cast<int>(std::ceil(M_PI / (2.0 * (1.0 - abs_q))));
}

}  // namespace detail

/// Hybrid safeguarded Newton / bisection inside a sign-change bracket.
/// Converges when |theta| <= 1e-13 * max(1, sum of |terms|) or the bracket
/// shrinks to a few ulps.
inline RefinedZero refine_zero(double q, const Bracket& b, const EvalConfig& cfg = {}) {
  if (b.lo == b.hi) return {b.lo, std::abs(theta(q, b.lo, cfg).value)};
  if (!(b.lo < b.hi)) throw DomainError("refine_zero: bracket must satisfy lo < hi");
  if (b.sign_lo * b.sign_hi != -1) throw DomainError("refine_zero: bracket signs must differ");
  auto eval = [&](double x) {
    auto t = theta(q, x, cfg);
    const bool done = std::abs(t.value) <= 1e-13 * std::max(1.0, t.magnitude);
    const double fx = done ? 0.0 : theta_dx(q, x, cfg).value;
    return std::make_tuple(t.value, fx, done);
  };
  const double xtol = 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(b.lo), std::abs(b.hi));
  const double x = detail::safeguarded_newton<double>(eval, b.lo, b.hi, b.sign_lo, xtol, "refine_zero");
  return {x, std::abs(theta(q, x, cfg).value)};
}

/// Brackets for xi_1 .. xi_n, q in (0,1).  The first n zeros must be real.
inline std::vector<Bracket> bracket_real_zeros_qpos(double q, int n, const EvalConfig& cfg = {}) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("bracket_real_zeros_qpos: q must lie in (0,1)");
  if (n < 1) throw DomainError("bracket_real_zeros_qpos: n must be positive");
  std::vector<Bracket> out;
  for (int j = 1; static_cast<int>(out.size()) < n; ++j) {
    auto c = detail::cell_for(Regime::q_pos, j, q);
    auto s = detail::scan_cell(q, c, cfg);
    if (!s.real) {
      if (s.near_coalescence)
        throw CoalescenceSuspected("bracket_real_zeros_qpos: zeros of pair " + std::to_string(j) +
                                       " are about to merge",
                                   q, c.x_at(s.b_ext));
      throw DomainError("bracket_real_zeros_qpos: zero pair " + std::to_string(j) +
                        " is not real at this q");
    }
    auto [a, b] = detail::pair_brackets(q, c, s, cfg);
    out.push_back(a);
    if (static_cast<int>(out.size()) < n) out.push_back(b);
  }
  return out;
}

/// The `count` rightmost real zeros of theta(q, .), q in (0,1), in decreasing
/// order.  Pairs that are already complex are skipped.
inline std::vector<double> rightmost_real_zeros(double q, int count, const EvalConfig& cfg = {}) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("rightmost_real_zeros: q must lie in (0,1)");
  std::vector<double> out;
  const int cap = detail::pairs_lost_estimate(q) + count + 8;
  for (int j = 1; j <= cap && static_cast<int>(out.size()) < count; ++j) {
    auto c = detail::cell_for(Regime::q_pos, j, q);
    auto s = detail::scan_cell(q, c, cfg);
    if (!s.real) {
      if (s.near_coalescence)
        throw CoalescenceSuspected("rightmost_real_zeros: coalescing pair", q, c.x_at(s.b_ext));
      continue;
    }
    auto [a, b] = detail::pair_brackets(q, c, s, cfg);
    out.push_back(refine_zero(q, a, cfg).x);
    if (static_cast<int>(out.size()) < count) out.push_back(refine_zero(q, b, cfg).x);
  }
  if (static_cast<int>(out.size()) < count)
    throw NoConvergence("rightmost_real_zeros: fewer real zeros found than requested");
  return out;
}

/// Real zeros for q in (-1,0).  `negatives` holds zeta_1 > zeta_2 > ... and
/// `positives` eta_1 < eta_2 < ..., each paired with its index.  Pairs that
/// are already complex are absent; the search stops early when the cells move
/// beyond the evaluation reach.
struct QnegZeros {
  std::vector<double> negatives, positives;
  std::vector<int> negative_labels, positive_labels;
};

namespace detail {

struct LabelledBracket {
  Bracket bracket;
  int label = 0;
};

struct QnegBrackets {
  std::vector<LabelledBracket> negatives, positives;
};

inline QnegBrackets qneg_brackets(double q, int n, const EvalConfig& cfg) {
  const double v = -q;
  QnegBrackets out;
  // eta_1 lies in (1, v^{-2}): theta(q,1) > 0 and theta(q, v^{-2}) < 0.
  {
    auto f = [&](double b) { return theta(q, std::pow(v, -b), cfg).value; };
    const int N = 32;
    double prev_b = 0.0, prev = f(0.0);
    for (int i = 1; i <= N; ++i) {
      double b = 2.0 * i / N;
      double cur = f(b);
      if ((cur < 0) != (prev < 0)) {
        Bracket br;
        br.lo = std::pow(v, -prev_b);
        br.hi = std::pow(v, -b);
        br.sign_lo = prev < 0 ? -1 : 1;
        br.sign_hi = -br.sign_lo;
        out.positives.push_back({br, 1});
        break;
      }
      prev = cur;
      prev_b = b;
    }
  }
  const int cap = n + pairs_lost_estimate(v) + 4;
  auto collect = [&](Regime r, std::vector<LabelledBracket>& xs, int first_label) {
    for (int nu = 1; nu <= cap && static_cast<int>(xs.size()) < n; ++nu) {
      try {
        auto c = cell_for(r, nu, q);
        auto s = scan_cell(q, c, cfg);
        if (!s.real) continue;
        auto [a, b] = pair_brackets(q, c, s, cfg);
        xs.push_back({a, 2 * nu - 1 + first_label});
        if (static_cast<int>(xs.size()) < n) xs.push_back({b, 2 * nu + first_label});
      } catch (const TailNotConverged&) {
        break;
      }
    }
  };
  collect(Regime::q_neg_negative_zeros, out.negatives, 0);
  collect(Regime::q_neg_positive_zeros, out.positives, 1);
  return out;
}

/// Zero of theta(q, .) in a bracket, refined entirely in the real type R.
template <class R>
R refine_zero_in(const R& q, const Bracket& b) {
  const R eps = real_traits<R>::unit_roundoff();
  const R tol = eps;
  auto eval = [&](const R& x) {
    auto t = sum_series<R, R>(SeriesKind::value, q, x, tol * 1e-3, 1 << 17, 1.0);
    auto d = sum_series<R, R>(SeriesKind::dx, q, x, tol * 1e-3, 1 << 17, 1.0);
    return std::make_tuple(t.value, d.value, false);
  };
  using std::abs;
  const R xtol = 16 * eps * std::max(abs(R(b.lo)), abs(R(b.hi)));
  return safeguarded_newton<R>(eval, R(b.lo), R(b.hi), b.sign_lo, xtol, "refine_zero_in", 4000);
}

}  // namespace detail

inline QnegZeros zeros_qneg(double q, int n, const EvalConfig& cfg = {}) {
  if (!(q < 0.0 && q > -1.0)) throw DomainError("zeros_qneg: q must lie in (-1,0)");
  if (n < 1) throw DomainError("zeros_qneg: n must be positive");
  auto br = detail::qneg_brackets(q, n, cfg);
  QnegZeros z;
  for (const auto& b : br.negatives) {
    z.negatives.push_back(refine_zero(q, b.bracket, cfg).x);
    z.negative_labels.push_back(b.label);
  }
  for (const auto& b : br.positives) {
    z.positives.push_back(refine_zero(q, b.bracket, cfg).x);
    z.positive_labels.push_back(b.label);
  }
  return z;
}

/// Both ordering chains for q in (-1,0), restricted to the first n zeros:
///   0 > q eta_2 > zeta_1 > zeta_2 > q eta_3 > q eta_4 > zeta_3 > zeta_4 > ...
///   0 < eta_1 < q zeta_1 < q zeta_2 < eta_2 < eta_3 < q zeta_3 < q zeta_4 < ...
/// Neighbours in these chains can agree to twenty digits and more for small
/// |q|, so the zeros are refined in a 64-digit type (128 digits if a gap is
/// still unresolved).  False if any of the zeros involved is not real.
inline bool ordering_check_qneg(double q, int n, const EvalConfig& cfg = {}) {
  if (!(q < 0.0 && q > -1.0)) throw DomainError("ordering_check_qneg: q must lie in (-1,0)");
  if (n < 1) throw DomainError("ordering_check_qneg: n must be positive");
  auto br = detail::qneg_brackets(q, n, cfg);
  auto labels_ok = [n](const std::vector<detail::LabelledBracket>& v) {
    if (static_cast<int>(v.size()) < n) return false;
    for (int i = 0; i < n; ++i)
      if (v[i].label != i + 1) return false;
    return true;
  };
  if (!labels_ok(br.negatives) || !labels_ok(br.positives)) return false;

  auto check = [&]<class R>(bool& resolved) {
    std::vector<R> zeta, eta;
    const R qq(q);
    for (int i = 0; i < n; ++i) zeta.push_back(detail::refine_zero_in<R>(qq, br.negatives[i].bracket));
    for (int i = 0; i < n; ++i) eta.push_back(detail::refine_zero_in<R>(qq, br.positives[i].bracket));
    auto Z = [&](int k) { return zeta[k - 1]; };
    auto E = [&](int k) { return eta[k - 1]; };
    std::vector<R> row1{R(0)}, row2{R(0)};
    if (n >= 2) row1.push_back(qq * E(2));
    for (int m = 1;; ++m) {
      if (2 * m - 1 > n) break;
      row1.push_back(Z(2 * m - 1));
      if (2 * m > n) break;
      row1.push_back(Z(2 * m));
      if (2 * m + 1 > n) break;
      row1.push_back(qq * E(2 * m + 1));
      if (2 * m + 2 > n) break;
      row1.push_back(qq * E(2 * m + 2));
    }
    row2.push_back(E(1));
    for (int m = 1;; ++m) {
      if (2 * m - 1 > n) break;
      row2.push_back(qq * Z(2 * m - 1));
      if (2 * m > n) break;
      row2.push_back(qq * Z(2 * m));
      row2.push_back(E(2 * m));
      if (2 * m + 1 > n) break;
      row2.push_back(E(2 * m + 1));
    }
    using std::abs;
    const R margin = R(1e6) * detail::real_traits<R>::unit_roundoff();
    resolved = true;
    bool ok = true;
    auto cmp = [&](const R& smaller, const R& larger) {
      if (!(smaller < larger)) ok = false;
      if (abs(larger - smaller) <= margin * std::max(abs(larger), abs(smaller))) resolved = false;
    };
    for (std::size_t i = 1; i < row1.size(); ++i) cmp(row1[i], row1[i - 1]);
    for (std::size_t i = 1; i < row2.size(); ++i) cmp(row2[i - 1], row2[i]);
    return ok;
  };
  bool resolved = false;
  bool ok = check.template operator()<detail::mp_real<64>>(resolved);
  if (!resolved) ok = check.template operator()<detail::mp_real<128>>(resolved);
  return ok && resolved;
}

namespace detail {

/// Solves theta(q, x) = 0 for q in a sign-change bracket [qa, qb] at fixed x,
/// safeguarded Newton with theta_q.
inline double solve_q_at_x(double x, double qa, double qb, const EvalConfig& cfg) {
  const int sign_a = theta(qa, x, cfg).value < 0 ? -1 : 1;
  auto eval = [&](double q) {
    auto t = theta(q, x, cfg);
    const bool done = std::abs(t.value) <= 1e-13 * std::max(1.0, t.magnitude);
    const double fq = done ? 0.0 : theta_dq(q, x, cfg).value;
    return std::make_tuple(t.value, fq, done);
  };
  // The bracket may be oriented either way in q.
  if (qa < qb) return safeguarded_newton<double>(eval, qa, qb, sign_a, 1e-15, "solve_q_at_x");
  return safeguarded_newton<double>(eval, qb, qa, -sign_a, 1e-15, "solve_q_at_x");
}

}  // namespace detail

/// Continuation of a zero pair along `q_grid` (ordered by increasing |q|).
///
/// At each grid value the pair is located from the extremum of theta over
/// its cell, the search window being centred on a secant prediction from the
/// two previous extrema, and both zeros are refined.  When the pair is about
/// to merge (|x theta_x| < 1e-4 |q theta_q| at a zero) or has become complex, the
/// last real position seeds a Newton solve for the double zero, and the arc
/// between the last grid samples and the turning point is filled in by
/// solving for q at fixed x.
inline ZeroCurve trace_curve(Regime regime, int index, const std::vector<double>& q_grid,
                             const EvalConfig& cfg = {}) {
  if (q_grid.empty()) throw DomainError("trace_curve: empty grid");
  for (std::size_t i = 1; i < q_grid.size(); ++i)
    if (!(std::abs(q_grid[i]) > std::abs(q_grid[i - 1])))
      throw DomainError("trace_curve: grid must be ordered by increasing |q|");
  ZeroCurve curve;
  curve.regime = regime;
  curve.index = index;
  std::vector<CurveSample> lower, upper;
  double q_good = 0.0, b_good = 0.0;
  bool have_good = false;
  bool ended = false;
  double q_bad = 0.0;
  std::vector<double> b_hist, q_hist;

  auto pair_at = [&](double q, detail::CellScan& s, detail::Cell& c) {
    c = detail::cell_for(regime, index, q);
    if (b_hist.size() >= 2) {
      // Secant prediction of the extremum exponent; search a window around it
      // first and fall back to the whole cell.
      const std::size_t m = b_hist.size();
      double pred = b_hist[m - 1] + (b_hist[m - 1] - b_hist[m - 2]) / (q_hist[m - 1] - q_hist[m - 2]) *
                                        (q - q_hist[m - 1]);
      detail::Cell w = c;
      w.b_lo = std::max(c.b_lo, pred - 0.25);
      w.b_hi = std::min(c.b_hi, pred + 0.25);
      if (w.b_lo < w.b_hi) {
        s = detail::scan_cell(q, w, cfg);
        if (s.real) return;
      }
    }
    s = detail::scan_cell(q, c, cfg);
  };

  for (double q : q_grid) {
    detail::CellScan s;
    detail::Cell c;
    pair_at(q, s, c);
    if (!s.real) {
      if (!have_good) throw DomainError("trace_curve: zero pair is not real at the first grid point");
      q_bad = q;
      ended = true;
      break;
    }
    auto [ba, bb] = detail::pair_brackets(q, c, s, cfg);
    auto za = refine_zero(q, ba, cfg);
    auto zb = refine_zero(q, bb, cfg);
    lower.push_back({q, za.x, Branch::lower_branch});
    upper.push_back({q, zb.x, Branch::upper_branch});
    q_good = q;
    b_good = s.b_ext;
    have_good = true;
    b_hist.push_back(s.b_ext);
    q_hist.push_back(q);
    const double fq = std::abs(q * theta_dq(q, za.x, cfg).value);
    const double fx = std::abs(za.x * theta_dx(q, za.x, cfg).value);
    if (fx < 1e-4 * fq) {
      double step = q_hist.size() >= 2 ? std::abs(q - q_hist[q_hist.size() - 2]) : 1.0;
      q_bad = q + std::copysign(std::min(step, 0.5 * (1 - std::abs(q))), q);
      ended = true;
      break;
    }
  }

  if (ended) {
    // Narrow the step towards the fold before the Newton solve; retry with a
    // tighter step if Newton does not converge from the first seed.
    double qa = q_good, qb = q_bad;
    double b_seed = b_good;
    std::optional<FoldPoint> fold;
    for (double rel : {1e-3, 1e-6, 1e-9}) {
      while (std::abs(qb - qa) > rel * (1 - std::abs(qa))) {
        double qm = 0.5 * (qa + qb);
        auto s = detail::scan_cell(qm, detail::cell_for(regime, index, qm), cfg);
        if (s.real) {
          qa = qm;
          b_seed = s.b_ext;
        } else {
          qb = qm;
        }
      }
      if (std::abs(qb - qa) < 1e-12) break;
      try {
        fold = solve_fold(qa, detail::cell_for(regime, index, qa).x_at(b_seed), cfg);
        break;
      } catch (const NoConvergence&) {
      }
    }
    if (!fold) throw StepCollapse("trace_curve: no convergence at the turning point");
    const FoldPoint fp = *fold;
    curve.turning_point = fp;

    // Arc between the last grid sample and the fold, parametrised by x.
    const double xa = lower.back().x, xb = upper.back().x;
    const int K = 6;
    std::vector<CurveSample> arc;
    for (int i = 1; i < K; ++i) {
      double x = xa + (xb - xa) * i / K;
      if (x == fp.x) continue;
      if ((theta(q_good, x, cfg).value < 0) == (theta(fp.q, x, cfg).value < 0)) continue;
      double qx = detail::solve_q_at_x(x, q_good, fp.q, cfg);
      bool on_lower = std::abs(x) < std::abs(fp.x);
      arc.push_back({qx, x, on_lower ? Branch::lower_branch : Branch::upper_branch});
    }
    for (const auto& a : arc)
      if (a.branch == Branch::lower_branch) lower.push_back(a);
    std::vector<CurveSample> arc_upper;
    for (const auto& a : arc)
      if (a.branch == Branch::upper_branch) arc_upper.push_back(a);
    upper.insert(upper.end(), arc_upper.rbegin(), arc_upper.rend());
  }

  curve.samples = lower;
  curve.samples.insert(curve.samples.end(), upper.rbegin(), upper.rend());
  return curve;
}

/// Sign alternation for q in (q~_j, q~_{j+1}) (j = 0 means q < q~_1): the
/// first j pairs are complex, theta > 0 on (xi_{2j+1}, +inf), theta < 0
/// between xi_{2k} and xi_{2k-1} and theta > 0 between xi_{2k+1} and xi_{2k}
/// for the next few real pairs k > j.
inline bool sign_pattern_check(double q, int j_regime, const EvalConfig& cfg = {}, int pairs = 3) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("sign_pattern_check: q must lie in (0,1)");
  if (j_regime < 0) throw DomainError("sign_pattern_check: j must be >= 0");
  for (int k = 1; k <= j_regime; ++k) {
    auto s = detail::scan_cell(q, detail::cell_for(Regime::q_pos, k, q), cfg);
    if (s.real) return false;
  }
  std::vector<double> xi;  // xi_{2j+1}, xi_{2j+2}, ...
  for (int k = j_regime + 1; k <= j_regime + pairs; ++k) {
    auto c = detail::cell_for(Regime::q_pos, k, q);
    auto s = detail::scan_cell(q, c, cfg);
    if (!s.real) return false;
    auto [a, b] = detail::pair_brackets(q, c, s, cfg);
    xi.push_back(refine_zero(q, a, cfg).x);
    xi.push_back(refine_zero(q, b, cfg).x);
  }
  // Right of the rightmost real zero.
  const double x0 = xi.front();
  for (int i = 0; i <= 40; ++i) {
    double x = x0 + (50.0 - x0) * std::pow(i / 40.0, 2) + (i == 0 ? 1e-6 * std::abs(x0) : 0.0);
    if (!(theta(q, x, cfg).value > 0)) return false;
  }
  for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
    double mid = 0.5 * (xi[i] + xi[i + 1]);
    double expect = i % 2 == 0 ? -1.0 : 1.0;
    if (!(expect * theta(q, mid, cfg).value > 0)) return false;
  }
  return true;
}

/// Roots of g_a(q) = theta(q, -q^{-a}) on (0,1).
struct PowerCurveRoots {
  double a = 0.0;
  std::vector<std::pair<double, double>> roots;  // (q_a, x_a)
  double min_g = 0.0;                           // smallest g_a on the scan grid
  bool multiple() const { return roots.size() > 1; }
};

inline PowerCurveRoots root_on_power_curve(double a, const EvalConfig& cfg = {}, int grid = 800) {
  if (!(a > 0.0)) throw DomainError("root_on_power_curve: a must be positive");
  PowerCurveRoots out;
  out.a = a;
  auto g = [&](double q) { return theta(q, -std::pow(q, -a), cfg).value; };
  const double q0 = 1e-3, q1 = 0.995;
  double prev_q = q0, prev = g(q0);
  out.min_g = prev;
  for (int i = 1; i <= grid; ++i) {
    double q = q0 + (q1 - q0) * i / grid;
    double cur = g(q);
    out.min_g = std::min(out.min_g, cur);
    if ((cur < 0) != (prev < 0)) {
      double r = detail::bisect(g, prev_q, q, 1e-15);
      out.roots.emplace_back(r, -std::pow(r, -a));
    }
    prev = cur;
    prev_q = q;
  }
  return out;
}

/// theta_x(q, -q^{-2s+1/2}) > 0 at every root q of theta(q, -q^{-2s+1/2}).
struct SlopeCheck {
  int s = 0;
  std::vector<double> q_roots;
  std::vector<double> slopes;
  bool pass = true;
};

inline SlopeCheck halfpower_slope_check(int s, const EvalConfig& cfg = {}) {
  if (s < 1) throw DomainError("halfpower_slope_check: s must be positive");
  SlopeCheck out;
  out.s = s;
  auto roots = root_on_power_curve(2.0 * s - 0.5, cfg);
  for (auto [q, x] : roots.roots) {
    auto d = theta_dx(q, x, cfg);
    out.q_roots.push_back(q);
    out.slopes.push_back(d.value);
    if (!(d.value > d.err)) out.pass = false;
  }
  return out;
}

}  // namespace ptheta
