#pragma once

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "ptheta/errors.hpp"

namespace ptheta::detail {

/// Golden-section minimum of f on [a, b].  Returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol, int max_iter = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

/// Minimum of f over [a, b]: uniform scan with `n` cells, then golden section
/// on the two cells around the best sample.
template <class F>
std::pair<double, double> scan_min(F&& f, double a, double b, int n, double tol) {
  double best_t = a, best_f = f(a);
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    double t = a + (b - a) * i / n;
    double v = f(t);
    if (v < best_f) {
      best_f = v;
      best_t = t;
      best_i = i;
    }
  }
  double lo = a + (b - a) * std::max(0, best_i - 1) / n;
  double hi = a + (b - a) * std::min(n, best_i + 1) / n;
  auto r = golden_min(f, lo, hi, tol);
  return r.second < best_f ? r : std::make_pair(best_t, best_f);
}

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must have
/// opposite signs.  Stops when the interval is below `tol`.
template <class F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  double flo = f(lo);
  for (int i = 0; i < max_iter && std::abs(hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Safeguarded Newton iteration inside a sign-change bracket [lo, hi].
/// `eval(t)` returns (f, f', converged).  A Newton step is taken only when
/// it stays inside the bracket and the previous step shrank the bracket by at
/// least half; otherwise the bracket is bisected.
template <class T, class Eval>
T safeguarded_newton(Eval&& eval, T lo, T hi, int sign_lo, const T& xtol, const char* op,
                     int max_iter = 400) {
  T t = (lo + hi) / 2;
  T width_before = hi - lo;
  for (int it = 0; it < max_iter; ++it) {
    auto [f, df, done] = eval(t);
    if (done || f == 0) return t;
    if ((f < 0 ? -1 : 1) == sign_lo)
      lo = t;
    else
      hi = t;
    const T width = hi - lo;
    if (width <= xtol) return (lo + hi) / 2;
    const T cand = df != 0 ? T(t - f / df) : lo;
    const bool ok = cand > lo && cand < hi && width <= width_before / 2;
    width_before = width;
    t = ok ? cand : T((lo + hi) / 2);
  }
  throw NoConvergence(std::string(op) + ": no convergence within the iteration limit");
}

}  // namespace ptheta::detail
