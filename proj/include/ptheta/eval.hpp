#pragma once

// Evaluation of the partial theta function
//
//   theta(q, x) = sum_{j>=0} q^{j(j+1)/2} x^j,   |q| < 1,
//
// its x-derivatives and its q-derivative, each with an error bound.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ptheta/approx.hpp"
#include "ptheta/config.hpp"
#include "ptheta/detail/numeric.hpp"
#include "ptheta/detail/series.hpp"

namespace ptheta {

namespace detail {

inline double storage_rounding(double v) { return std::abs(v) * 0x1p-53; }
inline double storage_rounding(const std::complex<double>& v) {
  return (std::abs(v.real()) + std::abs(v.imag())) * 0x1p-53;
}

inline double magnitude_of(double v) { return std::abs(v); }
inline double magnitude_of(const std::complex<double>& v) { return std::abs(v); }

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// log10 of the largest |q^{j(j+1)/2} x^j|; used to size the precision when a
/// binary64 pass overflowed.
inline double log10_peak_term(double abs_q, double abs_x) {
  if (abs_x <= 1.0 || abs_q == 0.0) return 0.0;
  double lx = std::log(abs_x), lq = -std::log(abs_q);
  return (lx * lx / (2.0 * lq)) / std::log(10.0);
}

template <class R, class Public>
Approx<Public> run_kernel(SeriesKind kind, double q, const Public& x, const EvalConfig& cfg) {
  using S = kernel_scalar_t<Public, R>;
  auto raw = sum_series<R, S>(kind, R(q), lift<R>(x), R(cfg.tail_tol), cfg.max_terms,
                              cfg.reduction_threshold);
  Approx<Public> a;
  a.value = lower(raw.value);
  a.err = to_double(raw.tail) + to_double(raw.rounding) + storage_rounding(a.value);
  a.terms_used = raw.terms;
  a.reductions_used = raw.reductions;
  a.magnitude = to_double(raw.magnitude);
  return a;
}

/// Runs a kernel in binary64 and, when the policy asks for it, again in the
/// narrowest multiprecision tier that resolves the cancellation measured on
/// the first pass.  `kernel` is a generic lambda templated on the real type;
/// `peak_log10` estimates log10 of the largest term and is only used when
/// the binary64 pass overflowed.
template <class Public, class Kernel>
Approx<Public> evaluate_with_policy(bool forced, double peak_log10, const EvalConfig& cfg,
                                    Kernel&& kernel) {
  Approx<Public> first = kernel.template operator()<double>();
  const double v = magnitude_of(first.value);
  const bool finite = finite_value(first.value) && std::isfinite(first.magnitude);
  if (!forced && finite && (first.err <= cfg.tail_tol || first.magnitude <= 8.0 * v))
    return first;

  int digits = cfg.precision_digits;
  if (finite) {
    digits += cancellation_digits(first.magnitude, v, cfg.tail_tol);
  } else {
    digits += static_cast<int>(std::ceil(peak_log10)) +
              static_cast<int>(std::ceil(-std::log10(cfg.tail_tol)));
  }
  digits += static_cast<int>(std::ceil(std::log10(4.0 + first.terms_used))) + 4;

  for (;;) {
    Approx<Public> r = with_mp_tier(digits, kernel);
    const double rounding_only = r.err - storage_rounding(r.value);
    if (!(rounding_only > 4.0 * cfg.tail_tol) || !finite_value(r.value)) return r;
    int next = next_tier(digits);
    if (next == 0)
      throw TailNotConverged("evaluation: widest precision tier cannot meet tail_tol");
    digits = next;
  }
}

template <class Public>
Approx<Public> evaluate(SeriesKind kind, double q, const Public& x, const EvalConfig& cfg,
                        const char* op) {
  cfg.validate();
  require_unit_disk(q, op);
  if (!finite_value(x)) throw DomainError(std::string(op) + ": x must be finite");
  if (q == 0.0) {
    // theta(0, x) == 1; only the j = 1 term of the q-derivative survives.
    Approx<Public> a;
    switch (kind) {
      case SeriesKind::value:
        a.value = Public(1.0);
        break;
      case SeriesKind::dq:
        a.value = x;
        break;
      default:
        a.value = Public(0.0);
        break;
    }
    a.magnitude = magnitude_of(a.value);
    a.terms_used = 1;
    return a;
  }
  auto kernel = [&]<class R>() { return run_kernel<R, Public>(kind, q, x, cfg); };
  return evaluate_with_policy<Public>(cfg.forces_multiprecision(q),
                                     log10_peak_term(std::abs(q), magnitude_of(x)), cfg, kernel);
}

}  // namespace detail

inline RealApprox theta(double q, double x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::value, q, x, cfg, "theta");
}
inline ComplexApprox theta(double q, std::complex<double> x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::value, q, x, cfg, "theta");
}

/// d theta / dx, summed term-wise after the same reduction as theta.
inline RealApprox theta_dx(double q, double x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::dx, q, x, cfg, "theta_dx");
}
inline ComplexApprox theta_dx(double q, std::complex<double> x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::dx, q, x, cfg, "theta_dx");
}

inline RealApprox theta_dx2(double q, double x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::dx2, q, x, cfg, "theta_dx2");
}
inline ComplexApprox theta_dx2(double q, std::complex<double> x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::dx2, q, x, cfg, "theta_dx2");
}

/// d theta / dq from the direct series sum (j(j+1)/2) q^{j(j+1)/2-1} x^j.
/// Finite at q = 0, where it equals x.
template <class X>
Approx<X> theta_dq_series(double q, X x, const EvalConfig& cfg = {}) {
  return detail::evaluate(detail::SeriesKind::dq, q, x, cfg, "theta_dq_series");
}

/// d theta / dq from the heat-type equation 2q theta_q = x^2 theta_xx + 2x theta_x.
template <class X>
Approx<X> theta_dq_pde(double q, X x, const EvalConfig& cfg = {}) {
  if (q == 0.0) throw DomainError("theta_dq_pde: q must be nonzero");
  auto d1 = detail::evaluate(detail::SeriesKind::dx, q, x, cfg, "theta_dq_pde");
  auto d2 = detail::evaluate(detail::SeriesKind::dx2, q, x, cfg, "theta_dq_pde");
  const double ax = detail::magnitude_of(x);
  Approx<X> a;
  a.value = (x * x * d2.value + X(2.0) * x * d1.value) / X(2.0 * q);
  a.err = (ax * ax * d2.err + 2.0 * ax * d1.err) / (2.0 * std::abs(q)) +
          8.0 * 0x1p-53 *
              (ax * ax * detail::magnitude_of(d2.value) + 2.0 * ax * detail::magnitude_of(d1.value)) /
              (2.0 * std::abs(q));
  a.terms_used = d1.terms_used + d2.terms_used;
  a.reductions_used = std::max(d1.reductions_used, d2.reductions_used);
  a.magnitude = (ax * ax * d2.magnitude + 2.0 * ax * d1.magnitude) / (2.0 * std::abs(q));
  return a;
}

/// d theta / dq.  Uses the differential-equation route, switching to the direct
/// series for |q| < 1e-3 where dividing by q loses accuracy.
inline RealApprox theta_dq(double q, double x, const EvalConfig& cfg = {}) {
  return std::abs(q) < 1e-3 ? theta_dq_series(q, x, cfg) : theta_dq_pde(q, x, cfg);
}
inline ComplexApprox theta_dq(double q, std::complex<double> x, const EvalConfig& cfg = {}) {
  return std::abs(q) < 1e-3 ? theta_dq_series(q, x, cfg) : theta_dq_pde(q, x, cfg);
}

}  // namespace ptheta
