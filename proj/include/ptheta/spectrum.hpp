#pragma once

// Spectral values: the q at which theta(q, .) has a double zero, in both sign
// regimes, together with the closed-form bound sequences for their location.

#include <cmath>
#include <string>
#include <vector>

#include "ptheta/config.hpp"
#include "ptheta/detail/search.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"
#include "ptheta/fold.hpp"
#include "ptheta/real_zeros.hpp"

namespace ptheta {

enum class SpectrumRegime { q_pos, q_neg };

inline const char* to_string(SpectrumRegime r) { return r == SpectrumRegime::q_pos ? "q_pos" : "q_neg"; }

struct SpectralPoint {
  SpectrumRegime regime = SpectrumRegime::q_pos;
  int index = 0;
  double q_star = 0.0;
  double y_double = 0.0;
  double residual_theta = 0.0;
  double residual_dtheta = 0.0;
  double second_deriv = 0.0;
};

inline SpectralPoint to_spectral_point(const FoldPoint& f, int index) {
  SpectralPoint p;
  p.regime = f.q > 0 ? SpectrumRegime::q_pos : SpectrumRegime::q_neg;
  p.index = index;
  p.q_star = f.q;
  p.y_double = f.x;
  p.residual_theta = f.residual_theta;
  p.residual_dtheta = f.residual_dtheta;
  p.second_deriv = f.theta_xx;
  return p;
}

/// Newton solve of theta = theta_x = 0 from a seed near a double zero.  The
/// index is left 0; the spectrum sweeps fill it in.
inline SpectralPoint find_double_zero(double seed_q, double seed_x, const EvalConfig& cfg = {}) {
  FoldPoint f = solve_fold(seed_q, seed_x, cfg);
  if (f.theta_xx == 0.0) throw SingularJacobian("find_double_zero: theta_xx vanishes (triple zero?)");
  return to_spectral_point(f, 0);
}

namespace detail {

inline std::vector<double> sweep_grid(double start, double step, double end) {
  std::vector<double> g;
  const double dir = end > start ? 1.0 : -1.0;
  for (int i = 0;; ++i) {
    double q = start + dir * step * i;
    if (dir * (q - end) > 0) break;
    g.push_back(q);
  }
  return g;
}

inline Regime curve_regime(SpectrumRegime r, int j) {
  if (r == SpectrumRegime::q_pos) return Regime::q_pos;
  return j % 2 ? Regime::q_neg_negative_zeros : Regime::q_neg_positive_zeros;
}

inline int curve_index(SpectrumRegime r, int j) {
  if (r == SpectrumRegime::q_pos) return j;
  return (j + 1) / 2;
}

}  // namespace detail

/// Spectral point j of the given regime, seeded from the turning point of the
/// traced zero curve.  `start` must be a q at which the pair is still real.
inline SpectralPoint spectral_point(SpectrumRegime regime, int j, double start,
                                    const EvalConfig& cfg = {}) {
  const double end = regime == SpectrumRegime::q_pos ? 0.999 : -0.999;
  auto grid = detail::sweep_grid(start, 0.01, end);
  auto curve = trace_curve(detail::curve_regime(regime, j), detail::curve_index(regime, j), grid, cfg);
  if (!curve.turning_point) throw NoConvergence("spectral_point: no turning point before |q| = 0.999");
  return to_spectral_point(*curve.turning_point, j);
}

/// q~_1 < ... < q~_{j_max} with their double zeros y_j.  Each curve is traced
/// from just before the previous spectral value.
inline std::vector<SpectralPoint> spectrum_qpos(int j_max, const EvalConfig& cfg = {}) {
  if (j_max < 1) throw DomainError("spectrum_qpos: j_max must be positive");
  std::vector<SpectralPoint> out;
  double start = 0.05;
  for (int j = 1; j <= j_max; ++j) {
    out.push_back(spectral_point(SpectrumRegime::q_pos, j, start, cfg));
    start = out.back().q_star - 0.02;
  }
  return out;
}

/// q-bar_1, ..., q-bar_{j_max}.  Odd j come from the negative zero pairs
/// (zeta), even j from the positive pairs (eta).
inline std::vector<SpectralPoint> spectrum_qneg(int j_max, const EvalConfig& cfg = {}) {
  if (j_max < 1) throw DomainError("spectrum_qneg: j_max must be positive");
  std::vector<SpectralPoint> out;
  for (int j = 1; j <= j_max; ++j) {
    double start = j <= 2 ? -0.05 : out[j - 3].q_star + 0.02;
    out.push_back(spectral_point(SpectrumRegime::q_neg, j, start, cfg));
  }
  return out;
}

/// Extremum of theta over the cell of pair j, signed so that it is negative
/// while the pair is real: m(q) = min theta for a dip, -max theta for a bump.
inline double cell_extremum(SpectrumRegime regime, int j, double q, const EvalConfig& cfg = {}) {
  auto c = detail::cell_for(detail::curve_regime(regime, j), detail::curve_index(regime, j), q);
  auto s = detail::scan_cell(q, c, cfg);
  return -c.inside * s.theta_ext;
}

/// Spectral value by bisection on the sign of the cell extremum m(q), an
/// independent check of the Newton result.  [lo, hi] must straddle it.
inline double spectral_value_by_bisection(SpectrumRegime regime, int j, double lo, double hi,
                                          double tol = 1e-10, const EvalConfig& cfg = {}) {
  auto m = [&](double q) { return cell_extremum(regime, j, q, cfg); };
  const double mlo = m(lo), mhi = m(hi);
  if ((mlo < 0) == (mhi < 0))
    throw NoSignChange("spectral_value_by_bisection: extremum keeps its sign", {{lo, mlo}, {hi, mhi}});
  return detail::bisect(m, lo, hi, tol);
}

struct AsymptoticRow {
  int j = 0;
  double q = 0.0;
  double q_leading = 0.0;  // 1 - pi/(2j)
  double normalized_deviation = 0.0;  // j (q - 1 + pi/(2j))
  double y = 0.0;
  double y_plus_e_pi = 0.0;
};

inline std::vector<AsymptoticRow> asymptotic_report(const std::vector<SpectralPoint>& points) {
  std::vector<AsymptoticRow> rows;
  const double e_pi = std::exp(M_PI);
  for (const auto& p : points) {
    AsymptoticRow r;
    r.j = p.index;
    r.q = p.q_star;
    r.q_leading = 1.0 - M_PI / (2.0 * p.index);
    r.normalized_deviation = p.index * (p.q_star - r.q_leading);
    r.y = p.y_double;
    r.y_plus_e_pi = p.y_double + e_pi;
    rows.push_back(r);
  }
  return rows;
}

/// Whether |j (q~_j - 1 + pi/(2j))| decreases along the rows.
inline bool normalized_deviation_decreasing(const std::vector<AsymptoticRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(std::abs(rows[i].normalized_deviation) < std::abs(rows[i - 1].normalized_deviation)))
      return false;
  return true;
}

struct BoundSequences {
  int s = 0;
  double lambda_s = 0.0;
  double mu_s = 0.0;
};

inline double bound_beta() { return 4.0 * std::sqrt(std::log(2.0)); }

/// Phi_flat(x) = -2x ln(1 - 4 sqrt(ln 2)/(2x - 1)); lambda_s = -exp(Phi_flat(s)).
inline double phi_flat(double x) { return -2.0 * x * std::log1p(-bound_beta() / (2.0 * x - 1.0)); }

inline double lambda_s(int s) { return -std::exp(phi_flat(s)); }

inline double mu_s(int s) { return -std::pow(1.0 - 1.4 / (2.0 * s - 1.0), -2.0 * s); }

/// lim_{s -> inf} mu_s = -e^{1.4}.
inline double mu_limit() { return -std::exp(1.4); }

inline std::vector<BoundSequences> bound_sequences(int s_lo, int s_hi) {
  if (s_lo < 3 || s_hi < s_lo) throw DomainError("bound_sequences: need 3 <= s_lo <= s_hi");
  std::vector<BoundSequences> out;
  for (int s = s_lo; s <= s_hi; ++s) out.push_back({s, lambda_s(s), mu_s(s)});
  return out;
}

/// Phi_flat strictly decreasing on a uniform grid of [x_lo, x_hi].
inline bool phi_flat_decreasing(double x_lo = 3.0, double x_hi = 100.0, int n = 2000) {
  double prev = phi_flat(x_lo);
  for (int i = 1; i <= n; ++i) {
    double cur = phi_flat(x_lo + (x_hi - x_lo) * i / n);
    if (!(cur < prev)) return false;
    prev = cur;
  }
  return true;
}

/// q > 0: every y_j in [lambda_15, -e^{1.4}); q < 0: every y-bar_j in (-13.29, 23.65).
inline bool double_zero_bounds_check(const std::vector<SpectralPoint>& points, SpectrumRegime regime) {
  for (const auto& p : points) {
    if (regime == SpectrumRegime::q_pos) {
      if (!(p.y_double >= lambda_s(15) && p.y_double < mu_limit())) return false;
    } else {
      if (!(p.y_double > -13.29 && p.y_double < 23.65)) return false;
    }
  }
  return true;
}

/// The two rightmost real zeros of theta(q, .) are both > -156.
inline bool first_two_zeros_bound(double q, const EvalConfig& cfg = {}) {
  auto z = rightmost_real_zeros(q, 2, cfg);
  return z[0] > -156.0 && z[1] > -156.0;
}

}  // namespace ptheta
