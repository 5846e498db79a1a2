#pragma once

// Double zeros of theta(q, .) as solutions of theta = theta_x = 0 in the
// (q, x)-plane.  Shared by the curve tracer and the spectrum module.

#include <algorithm>
#include <cmath>

#include "ptheta/config.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"

namespace ptheta {

struct FoldPoint {
  double q = 0.0;
  double x = 0.0;
  double residual_theta = 0.0;
  double residual_dtheta = 0.0;
  double theta_xx = 0.0;
  int iterations = 0;
};

namespace detail {

struct FoldEval {
  double f = 0, fx = 0, fxx = 0, fq = 0, fxq = 0;
  double err_f = 0, err_fx = 0;
};

inline FoldEval fold_eval(double q, double x, const EvalConfig& cfg) {
  FoldEval e;
  auto t = theta(q, x, cfg);
  auto t1 = theta_dx(q, x, cfg);
  auto t2 = theta_dx2(q, x, cfg);
  e.f = t.value;
  e.fx = t1.value;
  e.fxx = t2.value;
  e.err_f = t.err;
  e.err_fx = t1.err;
  e.fq = (x * x * e.fxx + 2 * x * e.fx) / (2 * q);
  const double h = 1e-7 * (1 - std::abs(q));
  e.fxq = (theta_dx(q + h, x, cfg).value - theta_dx(q - h, x, cfg).value) / (2 * h);
  return e;
}

inline double fold_norm(const FoldEval& e, double x) {
  // theta_x carries a factor |x| less than theta near a zero of size |x|.
  return std::hypot(e.f, e.fx * std::max(1.0, std::abs(x)));
}

}  // namespace detail

/// Damped Newton on F(q, x) = (theta, theta_x).  The Jacobian uses theta_q
/// from the differential equation and a central difference of theta_x in q.
inline FoldPoint solve_fold(double q, double x, const EvalConfig& cfg = {}, int max_iter = 60) {
  if (!(std::abs(q) < 1.0) || q == 0.0) throw DomainError("solve_fold: need 0 < |q| < 1");
  auto e = detail::fold_eval(q, x, cfg);
  double norm = detail::fold_norm(e, x);
  for (int it = 1; it <= max_iter; ++it) {
    const double det = e.fq * e.fxx - e.fx * e.fxq;
    const double scale = std::abs(e.fq * e.fxx) + std::abs(e.fx * e.fxq);
    if (!(std::abs(det) > 1e-14 * scale) || scale == 0.0)
      throw SingularJacobian("solve_fold: singular Jacobian of (theta, theta_x)");
    double dq = -(e.f * e.fxx - e.fx * e.fx) / det;
    double dx = -(e.fq * e.fx - e.fxq * e.f) / det;
    double lambda = 1.0;
    detail::FoldEval next;
    double next_norm = 0.0;
    int halvings = 0;
    for (;; ++halvings) {
      double nq = q + lambda * dq;
      bool evaluated = false;
      if (std::abs(nq) < 1.0 && nq != 0.0 && (nq > 0) == (q > 0)) {
        try {
          next = detail::fold_eval(nq, x + lambda * dx, cfg);
          next_norm = detail::fold_norm(next, x + lambda * dx);
          evaluated = true;
        } catch (const TailNotConverged&) {
          // Trial point beyond evaluation reach; damp further.
        }
      }
      if (evaluated && (next_norm < norm || halvings >= 40)) break;
      if (!evaluated && halvings >= 40) throw NoConvergence("solve_fold: step leaves the evaluation domain");
      lambda *= 0.5;
    }
    if (halvings >= 40 && !(next_norm < norm)) {
      // No decrease at all; accept only if already at the noise floor.
      if (std::abs(e.f) <= 10 * e.err_f + 1e-12 && std::abs(e.fx) <= 10 * e.err_fx + 1e-12)
        return {q, x, std::abs(e.f), std::abs(e.fx), e.fxx, it};
      throw NoConvergence("solve_fold: damping failed to reduce the residual");
    }
    q += lambda * dq;
    x += lambda * dx;
    e = next;
    norm = next_norm;
    const bool small_step =
        std::abs(lambda * dq) <= 1e-14 && std::abs(lambda * dx) <= 1e-12 * std::max(1.0, std::abs(x));
    const bool small_res = std::abs(e.f) <= std::max(1e-12, 10 * e.err_f) &&
                           std::abs(e.fx) <= std::max(1e-12, 10 * e.err_fx);
    if (small_res && (small_step || (std::abs(e.f) <= 1e-12 && std::abs(e.fx) <= 1e-12)))
      return {q, x, std::abs(e.f), std::abs(e.fx), e.fxx, it};
  }
  throw NoConvergence("solve_fold: iteration limit reached");
}

}  // namespace ptheta
