#pragma once

// Acceptance harness: one check per published claim, with a JSON report.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ptheta/complex_zeros.hpp"
#include "ptheta/identities.hpp"
#include "ptheta/io.hpp"
#include "ptheta/real_zeros.hpp"
#include "ptheta/spectrum.hpp"

namespace ptheta::verify {

using json = io::json;
using cplx = std::complex<double>;

constexpr double kUnit = 0x1p-53;

// Identity residuals at one point.  `scale` is the size of the quantities
// compared, used by the relaxed tolerance ladder.

struct IdentityResidual {
  double value = 0.0;
  double bound = 0.0;
  double scale = 1.0;
};

/// Change in theta (order 0) or theta_x (order 1) at (q, X) caused by
/// relative perturbations rel_x of X and rel_q of q, bounded through the sums
/// of absolute terms of the next derivative.
inline double arg_sensitivity(double q, double X, double rel_x, double rel_q, int order, const EvalConfig& cfg) {
  double out = 0.0;
  if (rel_x > 0 && X != 0.0)
    out += rel_x * std::abs(X) * (order == 0 ? theta_dx(q, X, cfg).magnitude : theta_dx2(q, X, cfg).magnitude);
  if (rel_q > 0 && q != 0.0) {
    auto d = theta_dq_series(q, X, cfg);
    double m = std::abs(q) * d.magnitude;
    if (order == 1) m = std::abs(X) > 1e-300 ? m * d.terms_used / std::abs(X) : 0.0;
    out += rel_q * m;
  }
  return out;
}

inline IdentityResidual functional_equation(double q, double x, const EvalConfig& cfg = {}) {
  auto a = theta(q, x, cfg);
  auto b = theta(q, q * x, cfg);
  const double c = q * x;
  return {std::abs(a.value - 1.0 - c * b.value),
          a.err + std::abs(c) * (b.err + arg_sensitivity(q, c, 2 * kUnit, 0.0, 0, cfg)) +
              4 * kUnit * (std::abs(a.value) + 1.0 + 2 * std::abs(c * b.value)),
          std::abs(a.value) + 1.0};
}

inline IdentityResidual heat_equation(double q, double x, const EvalConfig& cfg = {}) {
  auto s = theta_dq_series(q, x, cfg);
  auto p = theta_dq_pde(q, x, cfg);
  const double aq = std::abs(q);
  return {2 * aq * std::abs(s.value - p.value), 2 * aq * (s.err + p.err) + 8 * kUnit * 2 * aq * std::abs(s.value),
          2 * aq * std::abs(s.value)};
}

inline IdentityResidual triple_product(double q, double x, const EvalConfig& cfg = {}) {
  auto J = jacobi_theta(q, x, cfg);
  auto t = theta(q, x, cfg);
  auto g = tail_G(q, x, cfg);
  const double g_arg = arg_sensitivity(q, 1.0 / x, 2 * kUnit, 0.0, 0, cfg) / std::abs(x);
  return {std::abs(J.value - t.value - g.value),
          J.err + t.err + g.err + g_arg + 4 * kUnit * (std::abs(J.value) + std::abs(t.value) + std::abs(g.value)),
          std::abs(t.value) + std::abs(g.value)};
}

inline IdentityResidual phi_product(double q, const EvalConfig& cfg = {}) {
  auto a = phi_small(q, cfg);
  auto b = phi_small_product(q, cfg);
  return {std::abs(a.value - b.value), a.err + b.err + 4 * kUnit * std::abs(a.value), 1.0};
}

inline IdentityResidual theta_one(double q, const EvalConfig& cfg = {}) {
  auto a = theta(q, 1.0, cfg);
  auto b = theta_one_product(q, cfg);
  return {std::abs(a.value - b.value), a.err + b.err + 4 * kUnit * std::abs(a.value), std::abs(a.value)};
}

inline IdentityResidual halfint(double q, int s, const EvalConfig& cfg = {}) {
  auto r = phi_neg_halfint_identity_residual(q, s, cfg);
  return {r.value, r.bound, std::abs(phi_k(q, -2.0 * s + 1.5, cfg).value)};
}

inline IdentityResidual psi_split(double v, double x, const EvalConfig& cfg = {}) {
  auto [p1, p2] = psi_decomposition(v, x, cfg);
  auto t = theta(-v, x, cfg);
  const double v4 = v * v * v * v, x2 = x * x;
  const double sens = arg_sensitivity(v4, -x2 / v, 3 * kUnit, 4 * kUnit, 0, cfg) +
                      v * std::abs(x) * arg_sensitivity(v4, -v * x2, 3 * kUnit, 4 * kUnit, 0, cfg);
  return {std::abs(p1.value + p2.value - t.value),
          p1.err + p2.err + t.err + sens +
              4 * kUnit * (std::abs(p1.value) + std::abs(p2.value) + std::abs(t.value)),
          std::abs(p1.value) + std::abs(p2.value)};
}

inline IdentityResidual imag_axis(double q, double y, const EvalConfig& cfg = {}) {
  auto [f1, f2] = imag_axis_decomposition(q, y, cfg);
  auto t = theta(q, cplx(0.0, y), cfg);
  const double c = q * y;
  const cplx rhs(f1.value, c * f2.value);
  const double q4 = q * q * q * q, y2 = y * y;
  const double sens = q == 0.0 ? 0.0
                               : arg_sensitivity(q4, -y2 / q, 3 * kUnit, 4 * kUnit, 0, cfg) +
                                     std::abs(c) * arg_sensitivity(q4, -q * y2, 3 * kUnit, 4 * kUnit, 0, cfg);
  return {std::abs(t.value - rhs),
          t.err + f1.err + std::abs(c) * f2.err + sens + 4 * kUnit * (std::abs(t.value) + std::abs(rhs)),
          std::abs(f1.value) + std::abs(c * f2.value)};
}

inline IdentityResidual k1k2(double q, double y, const EvalConfig& cfg = {}) {
  auto k = k1_k2(q, y, cfg);
  auto d = theta_dx(q, cplx(0.0, y), cfg);
  const double q4 = q * q * q * q, y2 = y * y;
  const double sens = 2 * q * q * y2 * arg_sensitivity(q4, -q * y2, 3 * kUnit, 4 * kUnit, 1, cfg) +
                      std::abs(q) * arg_sensitivity(q4, -q * y2, 3 * kUnit, 4 * kUnit, 0, cfg) +
                      std::abs(2 * y / q) * arg_sensitivity(q4, -y2 / q, 3 * kUnit, 4 * kUnit, 1, cfg);
  return {std::abs(d.value - cplx(k.k1, k.k2)),
          d.err + k.err1 + k.err2 + sens + 4 * kUnit * std::abs(d.value),
          std::abs(d.value) + std::abs(k.k1) + std::abs(k.k2)};
}

/// Allowed residual: the combined error bound, relaxed to 1e-10 relative
/// when the requested precision is below binary64.
inline double allowed(const IdentityResidual& r, int precision) {
  return precision >= 16 ? r.bound : std::max(r.bound, 1e-10 * std::max(1.0, r.scale));
}

struct IdentityStats {
  std::string name;
  int points = 0;
  int failures = 0;
  double worst_ratio = 0.0;  // max residual / allowed
};

/// Runs every identity on `points` draws from a generator seeded with `seed`.
inline std::vector<IdentityStats> identity_suite(std::uint64_t seed, int points, int precision,
                                                 const EvalConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * U(rng); };
  auto signed_abs = [&](double a, double b) { return (U(rng) < 0.5 ? -1.0 : 1.0) * uni(a, b); };

  std::vector<std::pair<std::string, std::function<IdentityResidual()>>> ids = {
      {"functional_equation", [&] { return functional_equation(signed_abs(0.05, 0.9), signed_abs(0.1, 20), cfg); }},
      {"heat_equation", [&] { return heat_equation(signed_abs(0.05, 0.9), signed_abs(0.1, 20), cfg); }},
      {"triple_product", [&] { return triple_product(uni(0.05, 0.9), signed_abs(0.1, 20), cfg); }},
      {"phi_product", [&] { return phi_product(uni(0.01, 0.95), cfg); }},
      {"theta_one_product", [&] { return theta_one(signed_abs(0.01, 0.95), cfg); }},
      {"halfint_phi_identity",
       [&] {
         const int s = 1 + static_cast<int>(U(rng) * 3);
         return halfint(uni(0.05, 0.9), s, cfg);
       }},
      {"psi_decomposition", [&] { return psi_split(uni(0.05, 0.9), signed_abs(0.1, 20), cfg); }},
      {"imag_axis_decomposition", [&] { return imag_axis(signed_abs(0.05, 0.9), uni(0.0, 20), cfg); }},
      {"k1_k2", [&] { return k1k2(uni(0.05, 0.9), uni(0.0, 20), cfg); }},
  };
  std::vector<IdentityStats> out;
  for (auto& [name, draw] : ids) {
    IdentityStats st{name, points, 0, 0.0};
    for (int i = 0; i < points; ++i) {
      auto r = draw();
      const double lim = allowed(r, precision);
      const double ratio = lim > 0 ? r.value / lim : (r.value == 0 ? 0.0 : INFINITY);
      st.worst_ratio = std::max(st.worst_ratio, ratio);
      if (!(r.value <= lim)) ++st.failures;
    }
    out.push_back(st);
  }
  return out;
}

// Report

struct CheckResult {
  int id = 0;
  std::string name;
  json expected;  // number or [lo, hi]
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass;
    return n;
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }

  json to_json(bool with_runtime = true) const {
    json a = json::array();
    for (const auto& c : checks) {
      json j = {{"name", c.name},
                {"expected", c.expected},
                {"computed", c.computed},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
      if (with_runtime) j["runtime_seconds"] = c.runtime_seconds;
      j["detail"] = c.detail;
      a.push_back(j);
    }
    return {{"checks", a}, {"summary", {{"pass", passed()}, {"fail", failed()}}}};
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      char line[64];
      std::snprintf(line, sizeof line, "%-4s %2d %-28s", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
      char tail[96];
      std::snprintf(tail, sizeof tail, " computed=%.6g tol=%.3g (%.2fs)", c.computed, c.tolerance,
                    c.runtime_seconds);
      os << line << tail << "  " << c.detail << "\n";
    }
    os << passed() << " passed, " << failed() << " failed\n";
    return os.str();
  }
};

struct VerifyOptions {
  int precision = 16;
  std::uint64_t seed = 20240611;
  int identity_points = 1000;
  std::vector<int> only;  // empty: all checks
};

namespace detail {

inline std::string fmt6(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

// Shared results so that later checks reuse the spectra.
struct VerifyState {
  EvalConfig cfg;
  std::optional<std::vector<SpectralPoint>> qpos, qneg;

  const std::vector<SpectralPoint>& spectrum_pos() {
    if (!qpos) qpos = spectrum_qpos(6, cfg);
    return *qpos;
  }
  const std::vector<SpectralPoint>& spectrum_neg() {
    if (!qneg) qneg = spectrum_qneg(6, cfg);
    return *qneg;
  }
};

inline CheckResult table_check(int id, const char* name, const std::vector<SpectralPoint>& pts,
                               const std::vector<double>& ref, double budget, double elapsed) {
  CheckResult c{id, name, 0.0, 0.0, 5e-7, false, 0.0, ""};
  double dev = 0.0;
  std::string vals;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dev = std::max(dev, std::abs(pts[i].q_star - ref[i]));
    vals += (i ? " " : "") + fmt6(pts[i].q_star);
  }
  c.computed = dev;
  c.pass = dev <= 5e-7 && elapsed < budget;
  c.detail = "max |q - table|; values " + vals;
  if (!(elapsed < budget)) c.detail += "; over runtime budget";
  return c;
}

}  // namespace detail

inline VerifyReport verify_paper(const VerifyOptions& opt = {}) {
  if (opt.precision < 15) throw DomainError("verify_paper: precision must be >= 15");
  detail::VerifyState st;
  st.cfg.precision_digits = opt.precision;
  st.cfg.validate();
  const EvalConfig& cfg = st.cfg;
  VerifyReport rep;

  using clock = std::chrono::steady_clock;
  auto run = [&](int id, auto&& body) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) return;
    const auto t0 = clock::now();
    CheckResult c;
    try {
      c = body();
    } catch (const std::exception& e) {
      c.name = "check_" + std::to_string(id);
      c.expected = 0.0;
      c.computed = NAN;
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.id = id;
    c.runtime_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rep.checks.push_back(c);
  };
  auto since = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };

  run(1, [&] {
    auto t0 = clock::now();
    auto& pts = st.spectrum_pos();
    return detail::table_check(1, "spectrum_qpos_table", pts,
                               {0.309249, 0.516959, 0.630628, 0.701265, 0.749269, 0.783984}, 60.0, since(t0));
  });

  run(2, [&] {
    auto t0 = clock::now();
    auto& pts = st.spectrum_neg();
    return detail::table_check(2, "spectrum_qneg_table", pts,
                               {-0.727133, -0.783742, -0.841601, -0.861257, -0.887952, -0.897904}, 120.0,
                               since(t0));
  });

  run(3, [&] {
    auto& pts = st.spectrum_neg();
    const double ref[6] = {-2.991, 2.907, -3.621, 3.523, -3.908, 3.823};
    CheckResult c{3, "double_zeros_qneg", 0.0, 0.0, 5e-4, false, 0.0, ""};
    double dev = 0.0;
    bool inside = true;
    std::string vals;
    for (int i = 0; i < 6; ++i) {
      const double y = pts[i].y_double, d = std::abs(y - ref[i]);
      dev = std::max(dev, d);
      inside = inside && y > -13.29 && y < 23.65;
      vals += (i ? " " : "") + detail::fmt6(y) + (d > 5e-4 ? "*" : "");
    }
    c.computed = dev;
    c.pass = dev <= 5e-4 && inside;
    c.detail = "max |y - table|; values " + vals + (inside ? "; all in (-13.29, 23.65)" : "; outside (-13.29, 23.65)");
    return c;
  });

  run(4, [&] {
    auto& pts = st.spectrum_pos();
    const double lam = lambda_s(15), mu = mu_s(14);
    CheckResult c{4, "double_zero_bounds_qpos", json::array({-38.8396001, -4.055199}), 0.0, 1e-7, false, 0.0, ""};
    bool in_range = true;
    for (const auto& p : pts) in_range = in_range && p.y_double >= -38.8396001 && p.y_double < -4.055199;
    const double dl = std::abs(lam - -38.83960007), dm = std::abs(mu - -4.440852689);
    c.computed = dl;
    c.pass = in_range && dl <= 1e-7 && dm <= 1e-8;
    c.detail = "lambda_15=" + detail::fmt6(lam) + " mu_14=" + detail::fmt6(mu) + " |mu_14 - ref|=" +
               detail::fmt6(dm) + (in_range ? "; y_1..y_6 in range" : "; some y_j out of range");
    return c;
  });

  run(5, [&] {
    auto& pts = st.spectrum_pos();
    const double e_pi = std::exp(M_PI);
    const double d1 = std::abs(pts[0].y_double + e_pi), d6 = std::abs(pts[5].y_double + e_pi);
    const double a1 = std::abs(pts[0].q_star - (1 - M_PI / 2)), a6 = std::abs(pts[5].q_star - (1 - M_PI / 12));
    CheckResult c{5, "asymptotic_approach", json::array({0.0, d1}), d6, 0.0, false, 0.0, ""};
    c.pass = d6 < d1 && a6 < a1;
    c.detail = "|y1+e^pi|=" + detail::fmt6(d1) + " |y6+e^pi|=" + detail::fmt6(d6) + " |q1-(1-pi/2)|=" +
               detail::fmt6(a1) + " |q6-(1-pi/12)|=" + detail::fmt6(a6);
    return c;
  });

  run(6, [&] {
    auto t0 = clock::now();
    auto& pts = st.spectrum_pos();
    CheckResult c{6, "pair_count", 0.0, 0.0, 0.0, false, 0.0, ""};
    int mismatches = 0;
    std::string counts;
    for (int j = 1; j <= 4; ++j) {
      const double q = 0.5 * (pts[j - 1].q_star + pts[j].q_star);
      const int n = pair_count(q, cfg);
      mismatches += n != j;
      counts += (j > 1 ? " " : "") + std::to_string(n);
    }
    const double el = since(t0);
    c.computed = mismatches;
    c.pass = mismatches == 0 && el < 120.0;
    c.detail = "counts at midpoints " + counts;
    return c;
  });

  run(7, [&] {
    auto& pts = st.spectrum_pos();
    CheckResult c{7, "imaginary_axis_crossing", 0.0, 0.0, 1e-6, false, 0.0, ""};
    double dev = 0.0;
    bool contained = true, found = true;
    std::string vals;
    for (int j = 1; j <= 3; ++j) {
      std::vector<double> grid;
      for (int i = 1;; ++i) {
        const double q = pts[j - 1].q_star + 0.005 * i;
        if (q > 0.95 + 1e-12) break;
        grid.push_back(q);
      }
      auto tr = track_pair(j, grid, cfg, &pts[j - 1]);
      auto ic = crossing_via_interlacing(j, cfg, pts[j - 1].q_star);
      if (!tr.crossing_q) {
        found = false;
        continue;
      }
      dev = std::max(dev, std::abs(*tr.crossing_q - ic.q_dagger));
      contained = contained && tr.post_crossing_contained;
      vals += (j > 1 ? " " : "") + detail::fmt6(ic.q_dagger);
    }
    c.computed = dev;
    c.pass = found && contained && dev <= 1e-6;
    c.detail = "q_dagger " + vals + (contained ? "; post-crossing contained" : "; containment violated") +
               (found ? "" : "; a track did not cross");
    return c;
  });

  run(8, [&] {
    CheckResult c{8, "no_crossing_qneg", 0.0, 0.0, 0.0, false, 0.0, ""};
    std::vector<double> ys;
    for (int i = 0; i <= 600; ++i) ys.push_back(0.25 * i);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
      const double q = -0.01 - 0.98 * (i + 0.5) / 50.0;
      bad += !no_crossing_qneg(q, ys, cfg);
    }
    auto audit = containment_audit(-0.85, cfg);
    c.computed = bad + audit.violations;
    c.pass = bad == 0 && audit.violations == 0 && audit.min_abs_re > 0.0 && !audit.zeros.empty();
    c.detail = "q values failing " + std::to_string(bad) + "/50; audit q=-0.85: " +
               std::to_string(audit.zeros.size()) + " pairs, max|Im|=" + detail::fmt6(audit.max_abs_im) +
               " min|Re|=" + detail::fmt6(audit.min_abs_re);
    return c;
  });

  run(9, [&] {
    CheckResult c{9, "identity_suite", 0.0, 0.0, 0.0, false, 0.0, ""};
    auto stats = identity_suite(opt.seed, opt.identity_points, opt.precision, cfg);
    int fails = 0;
    double worst = 0.0;
    std::string d;
    for (const auto& s : stats) {
      fails += s.failures;
      worst = std::max(worst, s.worst_ratio);
      d += (d.empty() ? "" : " ") + s.name + ":" + std::to_string(s.failures);
    }
    c.computed = fails;
    c.tolerance = opt.precision >= 16 ? 0.0 : 1e-10;
    c.pass = fails == 0;
    c.detail = std::to_string(opt.identity_points) + " points each, worst residual/bound " + detail::fmt6(worst) +
               "; failures " + d;
    return c;
  });

  run(10, [&] {
    CheckResult c{10, "phi_k_suite", 0.0, 0.0, 1e-3, false, 0.0, ""};
    double exact_dev = 0.0, left_dev = 0.0;
    for (double k : {0.7, 1.0, 2.0, 5.0}) {
      const double target = -(2 * k - 1) / 8;
      for (int m = 1; m <= 6; ++m)
        exact_dev = std::max(exact_dev, std::abs(phi_partial_sum(1.0, k, m).derivative - target));
      left_dev = std::max(left_dev, std::abs(phi_k_left_derivative_at_one(k, 8, cfg) - target));
    }
    bool bounds = true;
    for (int i = 1; i <= 200; ++i) {
      const double q = i / 201.0;
      auto p = phi_k(q, 3.0, cfg);
      const double lo = 1 / (1 + q * q), hi = 1 / (1 + q * q * q);
      bounds = bounds && p.value - p.err > lo && p.value + p.err < hi;
    }
    bool dec = true;
    for (double k : {0.5, 1.0, 2.0}) dec = dec && phi_k_decreasing(k, 0.0, 0.5, 100, cfg);
    c.computed = left_dev;
    c.pass = exact_dev <= 1e-12 && left_dev <= 1e-3 && bounds && dec;
    c.detail = "max |Phi_m'(1) + (2k-1)/8|=" + detail::fmt6(exact_dev) +
               (bounds ? "; k=3 bounds hold" : "; k=3 bounds violated") +
               (dec ? "; decreasing on [0,1/2]" : "; not decreasing on [0,1/2]");
    return c;
  });

  run(11, [&] {
    CheckResult c{11, "power_curve_intersections", 0.0, 0.0, 1e-9, false, 0.0, ""};
    double worst_res = 0.0;
    bool counts = true;
    std::string d;
    for (double a : {1.5, 3.5, 2.5, 3.0}) {
      auto r = root_on_power_curve(a, cfg);
      const std::size_t want = (a == 1.5 || a == 3.5) ? 1 : 0;
      counts = counts && r.roots.size() == want;
      for (auto [q, x] : r.roots) worst_res = std::max(worst_res, std::abs(theta(q, x, cfg).value));
      d += (d.empty() ? "a=" : " a=") + detail::fmt6(a) + ":" + std::to_string(r.roots.size());
    }
    const bool slopes = halfpower_slope_check(1, cfg).pass && halfpower_slope_check(2, cfg).pass;
    c.computed = worst_res;
    c.pass = counts && slopes && worst_res <= 1e-9;
    c.detail = "roots " + d + (slopes ? "; slopes positive for s=1,2" : "; slope check failed");
    return c;
  });

  run(12, [&] {
    CheckResult c{12, "curve_atlas", 0.0, 0.0, 0.05, false, 0.0, ""};
    std::vector<double> grid;
    for (int i = 1; i < 100; ++i) grid.push_back(0.01 * i);
    auto g1 = trace_curve(Regime::q_pos, 1, grid, cfg);
    std::vector<double> ngrid;
    for (int i = 1; i < 100; ++i) ngrid.push_back(-0.01 * i);
    auto g1m = trace_curve(Regime::q_neg_negative_zeros, 1, ngrid, cfg);
    const bool max_ok = g1.max_x() <= -6.095 && g1m.max_x() <= -2.699;

    // Branch asymptotics at q = 1e-3 for Gamma_1..Gamma_3.
    const double q = 1e-3;
    auto br = bracket_real_zeros_qpos(q, 6, cfg);
    double asym = 0.0;
    for (int j = 1; j <= 3; ++j) {
      const double lower = refine_zero(q, br[2 * j - 2], cfg).x;
      const double upper = refine_zero(q, br[2 * j - 1], cfg).x;
      asym = std::max(asym, std::abs(lower * std::pow(q, 2 * j - 1) + 1));
      asym = std::max(asym, std::abs(upper * std::pow(q, 2 * j) + 1));
    }

    // eta_1(-0.99) in (1, 1.1) by signs: theta(q, 1) > 0 and theta(q, 1.1) < 0.
    const double qn = -0.99;
    auto at1 = theta_one_product(qn, cfg);
    auto at11 = theta(qn, 1.1, cfg);
    const bool eta_ok = at1.value > at1.err && at11.value < -at11.err;

    c.computed = asym;
    c.pass = max_ok && asym < 0.05 && eta_ok;
    c.detail = "Gamma_1 max x=" + detail::fmt6(g1.max_x()) + " Gamma_1^- max x=" + detail::fmt6(g1m.max_x()) +
               "; theta(-0.99,1)=" + detail::fmt6(at1.value) + " (err " + detail::fmt6(at1.err) +
               ") theta(-0.99,1.1)=" + detail::fmt6(at11.value);
    return c;
  });

  return rep;
}

}  // namespace ptheta::verify
