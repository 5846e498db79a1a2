#pragma once

// Auxiliary functions built around theta and the closed-form identities that
// tie them together.  Each identity is exposed as an independently computed
// pair of sides so that callers (tests, the verify harness) can check one
// route against the other.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "ptheta/approx.hpp"
#include "ptheta/config.hpp"
#include "ptheta/detail/numeric.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"

namespace ptheta {

/// |lhs - rhs| of an identity together with the bound it must respect.
struct Residual {
  double value = 0.0;
  double bound = 0.0;
  bool holds() const { return value <= bound; }
};

namespace detail {

/// Running product of inexact factors.  `upper` is prod(|f_i| + e_i) and
/// `lower` is prod |f_i|, so |exact - computed| <= upper - lower plus the
/// rounding of the multiplications themselves.
template <class R, class S>
struct ProductAcc {
  S value = S(R(1));
  R upper = R(1);
  R lower = R(1);
  int factors = 0;

  void mul(const S& f, const R& e) {
    R m = modulus(f);
    value = value * f;
    upper *= (m + e) * (1 + mult_eps());
    lower *= m;
    ++factors;
  }
  void div(const S& f, const R& e) {
    R m = modulus(f);
    if (!(m > e)) throw DomainError("product: divisor indistinguishable from zero");
    value = value / f;
    upper *= (1 + mult_eps()) / (m - e);
    lower /= m;
    ++factors;
  }
  static R mult_eps() { return R(is_complex<S>::value ? 4 : 2) * real_traits<R>::unit_roundoff(); }

  /// Error of the truncated product including a factor-tail whose log is
  /// bounded by `log_tail`.
  R error(const R& log_tail) const {
    using std::exp;
    R trunc = upper - lower + mult_eps() * upper;
    return trunc + upper * (exp(log_tail) - 1);
  }
};

/// Error of 1 + u when u itself carries relative error `rel`.
template <class R, class S>
R factor_err(const S& u, const R& rel) {
  return modulus(u) * rel + real_traits<R>::unit_roundoff() * (1 + modulus(u));
}

/// sum_{i > J} |w_i| bound for deviations |w_i| <= C r^i, as a bound on the
/// log of the remaining product (valid once C r^{J+1} <= 1/2).
template <class R>
R log_tail_bound(const R& C, const R& r, int J) {
  using std::pow;
  R lead = C * pow(r, J + 1);
  return 2 * lead / (1 - r);
}

template <class R, class S>
Approx<S> finish_product(const ProductAcc<R, S>& p, const R& log_tail, int terms) {
  Approx<S> a;
  a.value = p.value;
  a.err = p.error(log_tail);
  a.terms_used = terms;
  a.magnitude = p.upper;
  return a;
}

template <class Public, class R>
Approx<Public> lower_approx(const Approx<kernel_scalar_t<Public, R>>& a) {
  Approx<Public> out;
  out.value = lower(a.value);
  out.err = to_double(a.err) + storage_rounding(out.value);
  out.terms_used = a.terms_used;
  out.reductions_used = a.reductions_used;
  out.magnitude = to_double(a.magnitude);
  return out;
}

/// Products have no cancellation; they run in binary64 unless the
/// configuration asks for more digits than binary64 carries.
template <class Public, class Kernel>
Approx<Public> evaluate_product(const EvalConfig& cfg, Kernel&& kernel) {
  if (cfg.precision_digits <= 16 && cfg.tail_tol >= 1e-13)
    return kernel.template operator()<double>();
  int digits = cfg.precision_digits + 3;
  return with_mp_tier(digits, kernel);
}

// Jacobi triple product prod_{j>=1} (1 - q^j)(1 + x q^j)(1 + q^{j-1}/x).
template <class R, class S>
Approx<S> jacobi_product(const R& q, const S& x, const R& tol, int max_factors) {
  using std::abs;
  const R u = real_traits<R>::unit_roundoff();
  const S inv_x = S(R(1)) / x;
  const R ax = modulus(x);
  const R C = 1 + ax + 1 / (ax * q);
  ProductAcc<R, S> p;
  R qj = q;        // q^j
  R qj1 = R(1);    // q^{j-1}
  for (int j = 1;; ++j) {
    const R rel = R(j + 2) * u;
    S a = S(R(1) - qj);
    S b = S(R(1)) + x * S(qj);
    S c = S(R(1)) + inv_x * S(qj1);
    p.mul(a, factor_err<R, S>(S(qj), rel));
    p.mul(b, factor_err<R, S>(x * S(qj), rel));
    p.mul(c, factor_err<R, S>(inv_x * S(qj1), rel + 2 * u));
    if (C * qj * q <= R(0.5)) {
      R lt = log_tail_bound(C, q, j);
      if (lt * (p.upper + 1) <= tol) return finish_product(p, lt, j);
    }
    if (j >= max_factors) throw TailNotConverged("jacobi_theta: factor cap reached");
    qj1 = qj;
    qj *= q;
  }
}

// prod_{k>=1} (1 - p^k)/(1 + p^k).
template <class R>
Approx<R> phi_product_kernel(const R& p, const R& tol, int max_factors) {
  const R u = real_traits<R>::unit_roundoff();
  ProductAcc<R, R> acc;
  R pk = p;
  for (int k = 1;; ++k) {
    const R rel = R(k + 1) * u;
    acc.mul(R(1) - pk, factor_err<R, R>(pk, rel));
    acc.div(R(1) + pk, factor_err<R, R>(pk, rel));
    if (pk * p <= R(0.25)) {
      R lt = log_tail_bound(R(2), p, k);
      if (lt * (acc.upper + 1) <= tol) return finish_product(acc, lt, k);
    }
    if (k >= max_factors) throw TailNotConverged("phi product: factor cap reached");
    pk *= p;
  }
}

// prod_{k>=1} (1 - q^{2k})/(1 - q^{2k-1}).
template <class R>
Approx<R> theta_one_product_kernel(const R& q, const R& tol, int max_factors) {
  using std::abs;
  const R u = real_traits<R>::unit_roundoff();
  const R r = abs(q);
  ProductAcc<R, R> acc;
  R odd = q;  // q^{2k-1}
  for (int k = 1;; ++k) {
    R even = odd * q;
    const R rel = R(2 * k + 1) * u;
    acc.mul(R(1) - even, factor_err<R, R>(even, rel));
    acc.div(R(1) - odd, factor_err<R, R>(odd, rel));
    if (abs(odd) <= R(0.25)) {
      // Remaining deviations: |q|^{2k+1}, |q|^{2k+2}, ... each once.
      R lt = log_tail_bound(R(1), r, 2 * k);
      if (lt * (acc.upper + 1) <= tol) return finish_product(acc, lt, k);
    }
    if (k >= max_factors) throw TailNotConverged("theta(q,1) product: factor cap reached");
    odd = even * q;
  }
}

// 1 + 2 sum_{j>=1} (-1)^j q^{j^2/2}; Leibniz tail.
template <class R>
Approx<double> phi_series_kernel(double q, const EvalConfig& cfg) {
  using std::sqrt;
  const R p = sqrt(R(q));
  const R tol = R(cfg.tail_tol);
  R t = p;          // q^{j^2/2} at j = 1
  R step = p * p * p;  // p^{2j+1}
  R sum = R(1), mag = R(1);
  int terms = 1;
  for (int j = 1;; ++j) {
    if (2 * t <= tol) {
      Approx<double> a;
      a.value = to_double(sum);
      R rounding = R(4 * (terms + 1)) * real_traits<R>::unit_roundoff() * mag;
      a.err = to_double(2 * t + rounding) + storage_rounding(a.value);
      a.terms_used = terms;
      a.magnitude = to_double(mag);
      return a;
    }
    if (terms >= cfg.max_terms) throw TailNotConverged("phi_small: max_terms reached");
    sum += (j % 2 ? -2 : 2) * t;
    mag += 2 * t;
    ++terms;
    t *= step;
    step *= p * p;
  }
}

// sum_{j>=0} (-1)^j q^{A_j}, A_j = k j + j(j-1)/2.  The ratio of consecutive
// terms is q^{k+j}, so terms decrease from j >= -k on and the Leibniz bound
// applies from there.
template <class R>
Approx<double> phi_k_kernel(double q, double k, const EvalConfig& cfg) {
  using std::pow;
  const R qq = R(q);
  const R tol = R(cfg.tail_tol);
  R t = R(1);
  R ratio = pow(qq, R(k));
  R sum = R(0), mag = R(0);
  int terms = 0;
  for (int j = 0;; ++j) {
    if (j + k >= 0 && t <= tol) {
      Approx<double> a;
      a.value = to_double(sum);
      R rounding = R(4 * (terms + 1)) * real_traits<R>::unit_roundoff() * mag;
      a.err = to_double(t + rounding) + storage_rounding(a.value);
      a.terms_used = terms;
      a.magnitude = to_double(mag);
      return a;
    }
    if (terms >= cfg.max_terms) throw TailNotConverged("phi_k: max_terms reached");
    sum += (j % 2 ? -t : t);
    mag += t;
    ++terms;
    t *= ratio;
    ratio *= qq;
  }
}

inline double product_tol(const EvalConfig& cfg) { return cfg.tail_tol / 4; }

}  // namespace detail

/// Two-sided theta function via the Jacobi triple product
///   prod_{j>=1} (1 - q^j)(1 + x q^j)(1 + q^{j-1}/x),   0 < q < 1, x != 0.
template <class X>
Approx<X> jacobi_theta(double q, X x, const EvalConfig& cfg = {}) {
  cfg.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("jacobi_theta: q must lie in (0,1)");
  if (x == X(0.0)) throw DomainError("jacobi_theta: x must be nonzero");
  auto kernel = [&]<class R>() {
    using S = detail::kernel_scalar_t<X, R>;
    auto a = detail::jacobi_product<R, S>(R(q), detail::lift<R>(x), R(detail::product_tol(cfg)),
                                          cfg.max_terms);
    return detail::lower_approx<X, R>(a);
  };
  return detail::evaluate_product<X>(cfg, kernel);
}

/// G(q,x) = sum_{j<=-1} q^{j(j+1)/2} x^j = theta(q, 1/x) / x.
template <class X>
Approx<X> tail_G(double q, X x, const EvalConfig& cfg = {}) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("tail_G: q must lie in (0,1)");
  if (x == X(0.0)) throw DomainError("tail_G: x must be nonzero");
  const X inv = X(1.0) / x;
  auto t = theta(q, inv, cfg);
  Approx<X> a = t;
  a.value = t.value * inv;
  a.err = t.err * std::abs(inv) + 4 * detail::storage_rounding(a.value);
  a.magnitude = t.magnitude * std::abs(inv);
  return a;
}

/// phi(q) = 1 + 2 sum_{j>=1} (-1)^j q^{j^2/2}, 0 < q < 1.
inline RealApprox phi_small(double q, const EvalConfig& cfg = {}) {
  cfg.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("phi_small: q must lie in (0,1)");
  // phi(e^{-t}) ~ 2 sqrt(2 pi / t) exp(-pi^2 / (2t)) as t -> 0.  When that is
  // small the series cancels to it, so the tail target is taken relative to it.
  const double t = -std::log(q);
  const double log10_est =
      std::log10(2.0 * std::sqrt(2.0 * M_PI / t)) - M_PI * M_PI / (2.0 * t * std::log(10.0));
  EvalConfig local = cfg;
  bool forced = cfg.forces_multiprecision(q);
  if (log10_est < -3.0) {
    local.tail_tol = std::max(1e-300, cfg.tail_tol * std::pow(10.0, log10_est));
    forced = true;
  }
  auto kernel = [&]<class R>() { return detail::phi_series_kernel<R>(q, local); };
  return detail::evaluate_with_policy<double>(forced, 0.0, local, kernel);
}

/// phi(q) from the product prod_{k>=1} (1 - p^k)/(1 + p^k), p = sqrt(q).
inline RealApprox phi_small_product(double q, const EvalConfig& cfg = {}) {
  cfg.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("phi_small_product: q must lie in (0,1)");
  auto kernel = [&]<class R>() {
    using std::sqrt;
    auto a = detail::phi_product_kernel<R>(sqrt(R(q)), R(detail::product_tol(cfg)), cfg.max_terms);
    return detail::lower_approx<double, R>(a);
  };
  return detail::evaluate_product<double>(cfg, kernel);
}

/// theta(q, 1) from the product (1-q^2)/(1-q) * (1-q^4)/(1-q^3) * ..., |q| < 1.
inline RealApprox theta_one_product(double q, const EvalConfig& cfg = {}) {
  cfg.validate();
  require_unit_disk(q, "theta_one_product");
  if (q == 0.0) return RealApprox{1.0, 0.0, 0, 0, 1.0};
  auto kernel = [&]<class R>() {
    auto a = detail::theta_one_product_kernel<R>(R(q), R(detail::product_tol(cfg)), cfg.max_terms);
    return detail::lower_approx<double, R>(a);
  };
  return detail::evaluate_product<double>(cfg, kernel);
}

/// phi_k(q) = theta(q, -q^{k-1}) = sum_{j>=0} (-1)^j q^{k j + j(j-1)/2}, 0 <= q < 1.
///
/// At q = 0 the value is 1 for k > 0 and 0 for integral k <= 0; for
/// non-integral k < 0 the series blows up and DivergesAtZero is thrown.
inline RealApprox phi_k(double q, double k, const EvalConfig& cfg = {}) {
  cfg.validate();
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("phi_k: q must lie in [0,1)");
  if (!std::isfinite(k)) throw DomainError("phi_k: k must be finite");
  const bool integral = std::floor(k) == k;
  if (q == 0.0) {
    if (k > 0) return RealApprox{1.0, 0.0, 1, 0, 1.0};
    if (integral) return RealApprox{0.0, 0.0, 1, 0, 0.0};
    throw DivergesAtZero("phi_k: diverges as q -> 0+ for non-integral k < 0");
  }
  // Largest term q^{min A_j}, with min_j A_j near -(k - 1/2)^2 / 2 for k < 1/2.
  double peak = k < 0.5 ? 0.5 * (k - 0.5) * (k - 0.5) * -std::log10(q) : 0.0;
  auto kernel = [&]<class R>() { return detail::phi_k_kernel<R>(q, k, cfg); };
  return detail::evaluate_with_policy<double>(cfg.forces_multiprecision(q), peak, cfg, kernel);
}

/// Residual of phi_k = 1 - q^k phi_{k+1}.
inline Residual phi_k_functional_residual(double q, double k, const EvalConfig& cfg = {}) {
  if (q == 0.0 && k <= 0) throw DivergesAtZero("phi_k_functional_residual: q^k undefined at q = 0");
  auto a = phi_k(q, k, cfg);
  auto b = phi_k(q, k + 1, cfg);
  const double qk = q == 0.0 ? 0.0 : std::pow(q, k);
  const double rhs = 1.0 - qk * b.value;
  Residual r;
  r.value = std::abs(a.value - rhs);
  r.bound = a.err + qk * b.err +
            4 * 0x1p-53 * (std::abs(a.value) + 1.0 + 2 * std::abs(qk * b.value));
  return r;
}

inline double phi_exponent(double k, int j) { return k * j + 0.5 * j * (j - 1.0); }

/// Left derivative of phi_k at q = 1, where phi_k(1-) = 1/2: difference
/// quotients at h = 1e-2 2^{-i}, i < levels, combined by Richardson
/// extrapolation in powers of h.
inline double phi_k_left_derivative_at_one(double k, int levels = 8, const EvalConfig& cfg = {}) {
  if (levels < 2) throw DomainError("phi_k_left_derivative_at_one: need at least two levels");
  std::vector<std::vector<double>> T(levels);
  for (int i = 0; i < levels; ++i) {
    const double h = 1e-2 * std::ldexp(1.0, -i);
    T[i].push_back((0.5 - phi_k(1.0 - h, k, cfg).value) / h);
    for (int m = 1; m <= i; ++m) {
      const double f = std::ldexp(1.0, m);
      T[i].push_back((f * T[i][m - 1] - T[i - 1][m - 1]) / (f - 1.0));
    }
  }
  return T.back().back();
}

/// d phi_k / dq = sum_j (-1)^j A_j q^{A_j - 1} for 0 < q < 1, summed until the
/// terms fall below 1e-300 once A_j is increasing.
inline RealApprox phi_k_dq(double q, double k, const EvalConfig& cfg = {}) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("phi_k_dq: q must lie in (0,1)");
  const double lq = std::log(q);
  double sum = 0.0, mag = 0.0;
  long j = 0;
  for (; j < cfg.max_terms; ++j) {
    const double A = phi_exponent(k, static_cast<int>(j));
    const double t = A == 0.0 ? 0.0 : A * std::exp((A - 1.0) * lq);
    sum += j % 2 ? -t : t;
    mag += std::abs(t);
    if (j >= 1 && j + k > 1.0 && std::abs(t) < 1e-300) break;
  }
  if (j == cfg.max_terms) throw TailNotConverged("phi_k_dq: max_terms reached");
  return RealApprox{sum, 4.0 * (j + 2) * 0x1p-53 * mag, static_cast<int>(j + 1), 0, mag};
}

/// phi_k' < 0 at the n grid points a + (b - a) i / n, i = 1..n, each with a
/// margin above the rounding bound.
inline bool phi_k_decreasing(double k, double a, double b, int n, const EvalConfig& cfg = {}) {
  for (int i = 1; i <= n; ++i) {
    auto d = phi_k_dq(a + (b - a) * i / n, k, cfg);
    if (!(d.value < -d.err)) return false;
  }
  return true;
}

/// Phi_m = sum_{j<m} (-1)^j q^{A_j} + (-1)^m D_m with D_m = q^{A_m}/(1 + q^{k+m-1/2}),
/// together with its q-derivative.  Finite sums; q may equal 1.
struct PhiPartial {
  double value = 0.0;
  double derivative = 0.0;
  double err = 0.0;  // bound on the value only
};

inline PhiPartial phi_partial_sum(double q, double k, int m) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("phi_partial_sum: q must lie in (0,1]");
  if (m < 1) throw DomainError("phi_partial_sum: m must be positive");
  PhiPartial out;
  double mag = 0.0;
  for (int j = 0; j < m; ++j) {
    const double A = phi_exponent(k, j);
    const double sgn = j % 2 ? -1.0 : 1.0;
    const double t = std::pow(q, A);
    out.value += sgn * t;
    out.derivative += sgn * A * std::pow(q, A - 1.0);
    mag += t;
  }
  const double A = phi_exponent(k, m);
  const double B = k + m - 0.5;
  const double qa = std::pow(q, A), qb = std::pow(q, B);
  const double den = 1.0 + qb;
  const double D = qa / den;
  const double dD = (A * std::pow(q, A - 1.0) * den - qa * B * std::pow(q, B - 1.0)) / (den * den);
  const double sgn = m % 2 ? -1.0 : 1.0;
  out.value += sgn * D;
  out.derivative += sgn * dD;
  out.err = 8.0 * (m + 2) * 0x1p-53 * (mag + D);
  return out;
}

/// Residual of
///   phi_{-2s+3/2}(q) = q^{-(2s-1)^2/2} (-phi(q) + q^{2s^2} phi_{(4s+1)/2}(q)),
/// both sides evaluated independently.
inline Residual phi_neg_halfint_identity_residual(double q, int s, const EvalConfig& cfg = {}) {
  if (s < 1) throw DomainError("phi_neg_halfint_identity_residual: s must be positive");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("phi_neg_halfint_identity_residual: q must lie in (0,1)");
  auto lhs = phi_k(q, -2.0 * s + 1.5, cfg);
  auto ph = phi_small(q, cfg);
  auto pk = phi_k(q, (4.0 * s + 1.0) / 2.0, cfg);
  const double pre = std::pow(q, -0.5 * (2.0 * s - 1) * (2.0 * s - 1));
  const double qs = std::pow(q, 2.0 * s * s);
  const double inner = -ph.value + qs * pk.value;
  const double rhs = pre * inner;
  Residual r;
  r.value = std::abs(lhs.value - rhs);
  r.bound = lhs.err + pre * (ph.err + qs * pk.err) +
            8 * 0x1p-53 * (std::abs(lhs.value) + pre * (std::abs(ph.value) + std::abs(qs * pk.value)));
  return r;
}

/// A_j = A_{4s-2-j} for k = -2s + 3/2 and j = 0..2s-2.  The exponents are
/// multiples of 1/2, so the comparison is exact in binary64.
inline bool halfint_exponent_symmetry(int s) {
  if (s < 1) throw DomainError("halfint_exponent_symmetry: s must be positive");
  const double k = -2.0 * s + 1.5;
  for (int j = 0; j <= 2 * s - 2; ++j)
    if (phi_exponent(k, j) != phi_exponent(k, 4 * s - 2 - j)) return false;
  return true;
}

/// theta(-v, x) = psi1 + psi2 with psi1 = theta(v^4, -x^2/v) (even in x) and
/// psi2 = -v x theta(v^4, -v x^2) (odd in x).
inline std::pair<RealApprox, RealApprox> psi_decomposition(double v, double x,
                                                           const EvalConfig& cfg = {}) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("psi_decomposition: v must lie in (0,1)");
  const double v4 = v * v * v * v;
  const double x2 = x * x;
  RealApprox p1 = theta(v4, -x2 / v, cfg);
  RealApprox t2 = theta(v4, -v * x2, cfg);
  const double c = -(v * x);
  RealApprox p2 = t2;
  p2.value = c * t2.value;
  p2.err = std::abs(c) * t2.err + 2 * detail::storage_rounding(p2.value);
  p2.magnitude = std::abs(c) * t2.magnitude;
  return {p1, p2};
}

/// theta(q, iy) = f1 + i q y f2 with f1 = theta(q^4, -y^2/q), f2 = theta(q^4, -q y^2).
/// For q < 0 (rho = -q) this reads f1 = theta(rho^4, y^2/rho), a series of
/// positive terms.
inline std::pair<RealApprox, RealApprox> imag_axis_decomposition(double q, double y,
                                                                 const EvalConfig& cfg = {}) {
  require_unit_disk(q, "imag_axis_decomposition");
  if (q == 0.0) return {RealApprox{1.0, 0.0, 1, 0, 1.0}, RealApprox{1.0, 0.0, 1, 0, 1.0}};
  const double q4 = q * q * q * q;
  const double y2 = y * y;
  return {theta(q4, -y2 / q, cfg), theta(q4, -q * y2, cfg)};
}

/// Real and imaginary parts of theta_x(q, iy):
///   K1 = -2 q^2 y^2 theta_x(q^4, -q y^2) + q theta(q^4, -q y^2),
///   K2 = 2 (y/q) theta_x(q^4, -y^2/q).
struct K1K2 {
  double k1 = 0.0, k2 = 0.0;
  double err1 = 0.0, err2 = 0.0;
};

inline K1K2 k1_k2(double q, double y, const EvalConfig& cfg = {}) {
  require_unit_disk(q, "k1_k2");
  if (q == 0.0) return {};
  const double q4 = q * q * q * q;
  const double y2 = y * y;
  auto t = theta(q4, -q * y2, cfg);
  auto tx = theta_dx(q4, -q * y2, cfg);
  auto ux = theta_dx(q4, -y2 / q, cfg);
  const double a = -2 * q * q * y2;
  K1K2 k;
  k.k1 = a * tx.value + q * t.value;
  k.k2 = 2 * (y / q) * ux.value;
  k.err1 = std::abs(a) * tx.err + std::abs(q) * t.err +
           8 * 0x1p-53 * (std::abs(a * tx.value) + std::abs(q * t.value));
  k.err2 = std::abs(2 * y / q) * ux.err + 4 * 0x1p-53 * std::abs(k.k2);
  return k;
}

}  // namespace ptheta
