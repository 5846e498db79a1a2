#pragma once

// Complex zeros of theta(q, .): argument-principle counting, continuation of
// conjugate pairs in q, imaginary-axis crossings and containment audits.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptheta/config.hpp"
#include "ptheta/detail/numeric.hpp"
#include "ptheta/detail/search.hpp"
#include "ptheta/detail/series.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"
#include "ptheta/identities.hpp"
#include "ptheta/real_zeros.hpp"
#include "ptheta/spectrum.hpp"

namespace ptheta {

using cplx = std::complex<double>;

struct Region {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;

  void validate() const {
    if (!(re_min < re_max && im_min < im_max)) throw DomainError("Region: empty rectangle");
  }
  bool contains(cplx z) const {
    return z.real() > re_min && z.real() < re_max && z.imag() > im_min && z.imag() < im_max;
  }
};

struct CountOptions {
  int base_segments = 64;     // per edge
  double min_distance = 1e-3;  // Newton distance |theta/theta_x| allowed on the contour
  int max_depth = 40;
};

namespace detail {

struct PhaseWalker {
  double q;
  const EvalConfig& cfg;
  const CountOptions& opt;

  struct Sample {
    cplx z, f, logd;  // theta and theta_x / theta
  };

  Sample value(cplx z) const {
    auto t = theta(q, z, cfg);
    const double a = std::abs(t.value);
    if (!(t.err < 0.1 * a)) throw BoundaryTooClose("count_zeros: theta not resolved on the contour");
    auto d = theta_dx(q, z, cfg);
    if (a < opt.min_distance * std::abs(d.value))
      throw BoundaryTooClose("count_zeros: a zero lies within the safety distance of the contour");
    return {z, t.value, d.value / t.value};
  }

  // Phase increment of theta from a to b.  A segment is accepted when the
  // phase turns by less than pi/2 and the log-derivative predicts a change
  // below 1 at both ends; otherwise it is halved.
  double segment(const Sample& a, const Sample& b, int depth) const {
    const double d = std::arg(b.f / a.f);
    const cplx dz = b.z - a.z;
    if (std::abs(d) < M_PI / 2 && std::abs(a.logd * dz) < 1.0 && std::abs(b.logd * dz) < 1.0) return d;
    if (depth >= opt.max_depth) throw PhaseJump("count_zeros: subdivision limit reached");
    Sample m = value(0.5 * (a.z + b.z));
    return segment(a, m, depth + 1) + segment(m, b, depth + 1);
  }

  double edge(cplx b, Sample& cur) const {
    double total = 0.0;
    const cplx a = cur.z;
    const int n = opt.base_segments;
    for (int i = 1; i <= n; ++i) {
      Sample nb = value(a + (b - a) * (double(i) / n));
      total += segment(cur, nb, 0);
      cur = nb;
    }
    return total;
  }
};

}  // namespace detail

/// Number of zeros of theta(q, .) inside `region`, from the winding number of
/// theta along the boundary (counter-clockwise).
inline int count_zeros(double q, const Region& region, const EvalConfig& cfg = {},
                       const CountOptions& opt = {}) {
  require_unit_disk(q, "count_zeros");
  region.validate();
  detail::PhaseWalker w{q, cfg, opt};
  const cplx c0(region.re_min, region.im_min), c1(region.re_max, region.im_min),
      c2(region.re_max, region.im_max), c3(region.re_min, region.im_max);
  auto cur = w.value(c0);
  double total = w.edge(c1, cur) + w.edge(c2, cur) + w.edge(c3, cur) + w.edge(c0, cur);
  const double winding = total / (2 * M_PI);
  const double k = std::round(winding);
  if (std::abs(winding - k) > 1e-3) throw PhaseJump("count_zeros: winding number is not an integer");
  return static_cast<int>(k);
}

/// Real extent of the master region: beyond the zeros of the pairs that can
/// already be complex at this |q|.
inline double master_extent(double q) {
  const double a = std::abs(q);
  const int J = detail::pairs_lost_estimate(a) + 1;
  const double R = 2.0 * std::pow(a, -2.0 * J - 2.0);
  return std::clamp(R, 60.0, 1e6);
}

/// Upper-half search region: [-R, 20] x [0.01, 140] for q > 0 and
/// [-R, R] x [0.01, 140] for q < 0, where positive double zeros occur.
inline Region master_region(double q) {
  const double R = master_extent(q);
  return {-R, q > 0 ? 20.0 : R, 1e-2, 140.0};
}

/// Number of complex conjugate pairs of theta(q, .).
inline int pair_count(double q, const EvalConfig& cfg = {}, const CountOptions& opt = {}) {
  if (q == 0.0) return 0;
  return count_zeros(q, master_region(q), cfg, opt);
}

namespace detail {

/// Damped complex Newton for theta(q, .) = 0.
inline std::optional<cplx> newton_complex(double q, cplx x, const EvalConfig& cfg, int max_iter = 60) {
  auto t = theta(q, x, cfg);
  double r = std::abs(t.value);
  for (int it = 0; it < max_iter; ++it) {
    auto d = theta_dx(q, x, cfg);
    if (d.value == cplx(0.0)) return std::nullopt;
    cplx step = t.value / d.value;
    double lambda = 1.0;
    cplx xn;
    ComplexApprox tn;
    int h = 0;
    for (; h < 30; ++h) {
      xn = x - lambda * step;
      tn = theta(q, xn, cfg);
      if (std::abs(tn.value) < r) break;
      lambda *= 0.5;
    }
    if (h == 30) {
      if (r <= 10 * t.err + 1e-13 * std::max(1.0, t.magnitude)) return x;
      return std::nullopt;
    }
    const double moved = std::abs(xn - x);
    x = xn;
    t = tn;
    r = std::abs(t.value);
    if (moved <= 1e-13 * std::max(1.0, std::abs(x)) || r == 0.0) return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// Zero in a box found by recursive argument-principle subdivision followed
/// by Newton polishing.  Returns all zeros located (upper half-plane boxes).
inline std::vector<cplx> locate_zeros(double q, const Region& region, const EvalConfig& cfg = {},
                                      const CountOptions& opt = {}, int max_depth = 30) {
  std::vector<cplx> out;
  std::function<void(const Region&, int, int)> rec = [&](const Region& r, int n, int depth) {
    if (n <= 0) return;
    if (n == 1) {
      auto z = detail::newton_complex(q, cplx(0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)), cfg);
      if (z && r.contains(*z)) {
        out.push_back(*z);
        return;
      }
    }
    if (depth >= max_depth) throw NoConvergence("locate_zeros: subdivision depth exceeded");
    // Split into four; nudge the cut lines if a zero sits on one.
    for (double frac : {0.5, 0.47, 0.53, 0.41, 0.59}) {
      const double xm = r.re_min + frac * (r.re_max - r.re_min);
      const double ym = r.im_min + frac * (r.im_max - r.im_min);
      const Region kids[4] = {{r.re_min, xm, r.im_min, ym},
                              {xm, r.re_max, r.im_min, ym},
                              {r.re_min, xm, ym, r.im_max},
                              {xm, r.re_max, ym, r.im_max}};
      int counts[4];
      try {
        int sum = 0;
        for (int i = 0; i < 4; ++i) sum += counts[i] = count_zeros(q, kids[i], cfg, opt);
        if (sum != n) continue;
      } catch (const BoundaryTooClose&) {
        continue;
      }
      for (int i = 0; i < 4; ++i) rec(kids[i], counts[i], depth + 1);
      return;
    }
    throw BoundaryTooClose("locate_zeros: could not place a cut away from the zeros");
  };
  rec(region, count_zeros(q, region, cfg, opt), 0);
  return out;
}

struct PairTrack {
  int pair_index = 0;
  std::vector<double> q_samples;
  std::vector<cplx> x_samples;
  double birth_q = 0.0;
  std::optional<double> crossing_q;
  bool post_crossing_contained = false;
};

namespace detail {

struct TrackState {
  double q;
  cplx x;
};

}  // namespace detail

/// Continuation of the upper-half zero of the pair born at q~_j along q_grid
/// (increasing, all above q~_j).  The first point is seeded from the local
/// quadratic model theta ~ theta_q dq + theta_xx (x - y_j)^2 / 2 at the double
/// zero.  Steps that fail are halved; if the step collapses the zero is
/// re-acquired by argument-principle search around the prediction.
inline PairTrack track_pair(int j, const std::vector<double>& q_grid, const EvalConfig& cfg = {},
                            const SpectralPoint* birth = nullptr) {
  if (j < 1) throw DomainError("track_pair: j must be positive");
  SpectralPoint sp = birth ? *birth
                           : spectral_point(SpectrumRegime::q_pos, j,
                                            j == 1 ? 0.05 : 1.0 - M_PI / (2.0 * (j - 1)) - 0.06, cfg);
  if (q_grid.empty() || !(q_grid.front() > sp.q_star))
    throw DomainError("track_pair: grid must start above the spectral value");
  for (std::size_t i = 1; i < q_grid.size(); ++i)
    if (!(q_grid[i] > q_grid[i - 1])) throw DomainError("track_pair: grid must be increasing");

  PairTrack tr;
  tr.pair_index = j;
  tr.birth_q = sp.q_star;

  const double fq = theta_dq(sp.q_star, sp.y_double, cfg).value;
  auto seed_at = [&](double q) {
    const double dq = q - sp.q_star;
    return cplx(sp.y_double, std::sqrt(std::max(0.0, 2 * fq * dq / sp.second_deriv)));
  };

  std::vector<detail::TrackState> hist;
  auto predict = [&](double q) {
    if (hist.size() < 2) return hist.empty() ? seed_at(q) : hist.back().x;
    const auto& a = hist[hist.size() - 2];
    const auto& b = hist.back();
    return b.x + (b.x - a.x) * ((q - b.q) / (b.q - a.q));
  };
  auto accept = [&](cplx z, cplx pred, double q) {
    if (!(z.imag() > 0)) return false;
    const double scale = hist.empty() ? std::abs(pred.imag()) + 1e-3 : std::abs(hist.back().x - pred) + 1e-2;
    return std::abs(z - pred) < 5 * scale + 0.05 * std::abs(pred) * (q - (hist.empty() ? sp.q_star : hist.back().q));
  };
  auto solve_at = [&](double q) -> std::optional<cplx> {
    cplx pred = predict(q);
    auto z = detail::newton_complex(q, pred, cfg);
    if (z && accept(*z, pred, q)) return z;
    return std::nullopt;
  };
  auto reacquire = [&](double q) -> std::optional<cplx> {
    cplx pred = predict(q);
    const double h = std::max(0.5, 0.5 * std::abs(pred.imag()));
    Region box{pred.real() - h, pred.real() + h, std::max(1e-2, pred.imag() - h), pred.imag() + h};
    try {
      auto zs = locate_zeros(q, box, cfg);
      if (zs.empty()) return std::nullopt;
      return *std::min_element(zs.begin(), zs.end(),
                               [&](cplx a, cplx b) { return std::abs(a - pred) < std::abs(b - pred); });
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  double q_prev = sp.q_star;
  for (double q_target : q_grid) {
    double q = q_target;
    while (true) {
      auto z = solve_at(q);
      if (z) {
        hist.push_back({q, *z});
        q_prev = q;
        if (q == q_target) break;
        q = std::min(q_target, q + 2 * (q - (hist.size() >= 2 ? hist[hist.size() - 2].q : sp.q_star)));
        continue;
      }
      const double step = q - q_prev;
      if (step < 1e-10) {
        auto r = reacquire(q);
        if (!r) throw LostTrack("track_pair: zero lost near q = " + std::to_string(q));
        hist.push_back({q, *r});
        q_prev = q;
        if (q == q_target) break;
        continue;
      }
      q = q_prev + 0.5 * step;
    }
    tr.q_samples.push_back(hist.back().q);
    tr.x_samples.push_back(hist.back().x);
  }

  // Crossing of the imaginary axis: first sign change of Re x, refined by
  // bisection in q with Newton solves from interpolated seeds.
  for (std::size_t i = 1; i < hist.size(); ++i) {
    if ((hist[i - 1].x.real() < 0) && (hist[i].x.real() >= 0)) {
      double lo = hist[i - 1].q, hi = hist[i].q;
      cplx xlo = hist[i - 1].x, xhi = hist[i].x;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        cplx seed = xlo + (xhi - xlo) * ((mid - lo) / (hi - lo));
        auto z = detail::newton_complex(mid, seed, cfg);
        if (!z) throw LostTrack("track_pair: Newton failed while refining the crossing");
        if (z->real() < 0) {
          lo = mid;
          xlo = *z;
        } else {
          hi = mid;
          xhi = *z;
        }
      }
      tr.crossing_q = 0.5 * (lo + hi);
      break;
    }
  }
  if (tr.crossing_q) {
    bool ok = true;
    for (std::size_t i = 0; i < tr.q_samples.size(); ++i)
      if (tr.q_samples[i] > *tr.crossing_q)
        ok = ok && tr.x_samples[i].real() >= 0 && std::abs(tr.x_samples[i]) < 18.0;
    tr.post_crossing_contained = ok;
  }
  return tr;
}

struct InterlacingCrossing {
  double q_dagger = 0.0;
  double y = 0.0;               // y#_{2j} at q_dagger
  double residual = 0.0;        // |theta(q_dagger, i y)|
  double residual_scale = 0.0;  // sum of |terms| there
};

namespace detail {

/// y#_{2j-1}, y#_{2j}: the pair of positive zeros of theta(q^4, -y^2/q) from
/// the zero pair tau_{2j-1} > tau_{2j} of theta(q^4, .).
inline std::optional<std::pair<double, double>> ysharp_pair(double q, int j, const EvalConfig& cfg) {
  const double q4 = q * q * q * q;
  auto c = cell_for(Regime::q_pos, j, q4);
  auto s = scan_cell(q4, c, cfg);
  if (!s.real) return std::nullopt;
  auto [a, b] = pair_brackets(q4, c, s, cfg);
  if (a.sign_lo * a.sign_hi != -1 || b.sign_lo * b.sign_hi != -1) return std::nullopt;
  const double t1 = refine_zero(q4, a, cfg).x, t2 = refine_zero(q4, b, cfg).x;
  return std::make_pair(std::sqrt(-q * t1), std::sqrt(-q * t2));
}

}  // namespace detail

/// q-dagger_j from y#_{2j}(q) q = y#_{2j-1}(q): there both parts of
/// theta(q, iy) = theta(q^4, -y^2/q) + i q y theta(q^4, -q y^2) vanish.
inline InterlacingCrossing crossing_via_interlacing(int j, const EvalConfig& cfg = {},
                                                    std::optional<double> q_tilde = std::nullopt) {
  if (j < 1) throw DomainError("crossing_via_interlacing: j must be positive");
  const double qt = q_tilde ? *q_tilde
                            : spectral_point(SpectrumRegime::q_pos, j,
                                             j == 1 ? 0.05 : 1.0 - M_PI / (2.0 * (j - 1)) - 0.06, cfg)
                                  .q_star;
  const double q_end = std::pow(qt, 0.25);
  auto h = [&](double q) {
    auto y = detail::ysharp_pair(q, j, cfg);
    if (!y) return std::nan("");
    return q * y->second - y->first;
  };
  // Sample from the left; h > 0 for small q and h < 0 just below q_end.
  std::vector<std::pair<double, double>> samples;
  const int N = 40;
  double prev_q = 0.0, prev_h = NAN;
  for (int i = 0; i <= N; ++i) {
    double q = 0.3 * q_end + (q_end * (1 - 1e-7) - 0.3 * q_end) * i / N;
    double v = h(q);
    samples.emplace_back(q, v);
    if (std::isfinite(prev_h) && std::isfinite(v) && prev_h > 0 && v <= 0) {
      double r = detail::bisect(h, prev_q, q, 1e-14);
      auto y = detail::ysharp_pair(r, j, cfg);
      InterlacingCrossing out;
      out.q_dagger = r;
      out.y = y->second;
      auto t = theta(r, cplx(0.0, out.y), cfg);
      out.residual = std::abs(t.value);
      out.residual_scale = t.magnitude;
      return out;
    }
    prev_q = q;
    prev_h = v;
  }
  throw NoSignChange("crossing_via_interlacing: h keeps its sign on (0, q~_j^{1/4})", samples);
}

/// Re theta(q, iy) = theta(rho^4, y^2/rho) > 0 for q = -rho in (-1,0) on every
/// grid point.  The series has positive terms and exceeds double range for
/// rho near 1 and large y, so it is summed in a 32-digit MPFR type.
inline bool no_crossing_qneg(double q, const std::vector<double>& y_grid, const EvalConfig& cfg = {}) {
  if (!(q < 0.0 && q > -1.0)) throw DomainError("no_crossing_qneg: q must lie in (-1,0)");
  using R = detail::mp_real<32>;
  const R rho = R(-q);
  const R r4 = rho * rho * rho * rho;
  for (double y : y_grid) {
    const R x = R(y) * R(y) / rho;
    auto s = detail::sum_series<R, R>(detail::SeriesKind::value, r4, x, R(cfg.tail_tol), cfg.max_terms,
                                      cfg.reduction_threshold);
    const R err = s.tail + s.rounding;
    if (!(s.value > 10 * err)) return false;
  }
  return true;
}

struct ContainmentReport {
  double q = 0.0;
  std::vector<cplx> zeros;  // upper half-plane representatives
  int violations = 0;
  double min_abs_re = INFINITY;
  double max_abs_im = 0.0;
  bool conjugate_symmetric = true;
};

/// Locates every upper-half zero in the master region and tests it against
/// {|Im x| < 132} (q < 0) or {Re x < 0, |Im x| < 132} u {Re x >= 0, |x| < 18}
/// (q > 0).
inline ContainmentReport containment_audit(double q, const EvalConfig& cfg = {}) {
  require_unit_disk(q, "containment_audit");
  ContainmentReport rep;
  rep.q = q;
  if (q == 0.0) return rep;
  rep.zeros = locate_zeros(q, master_region(q), cfg);
  for (cplx z : rep.zeros) {
    bool inside = q < 0 ? std::abs(z.imag()) < 132.0
                        : (z.real() < 0 ? std::abs(z.imag()) < 132.0 : std::abs(z) < 18.0);
    if (!inside) ++rep.violations;
    rep.min_abs_re = std::min(rep.min_abs_re, std::abs(z.real()));
    rep.max_abs_im = std::max(rep.max_abs_im, std::abs(z.imag()));
    auto c = theta(q, std::conj(z), cfg);
    if (!(std::abs(c.value) <= 1e-9 * std::max(1.0, c.magnitude))) rep.conjugate_symmetric = false;
  }
  return rep;
}

}  // namespace ptheta
