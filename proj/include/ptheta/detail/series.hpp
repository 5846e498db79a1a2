#pragma once

#include <cmath>

#include "ptheta/detail/numeric.hpp"
#include "ptheta/errors.hpp"

namespace ptheta::detail {

/// Which member of the theta family a kernel sums.
///   value : sum_{j>=0} q^{j(j+1)/2} x^j
///   dx    : sum_{j>=1} j q^{j(j+1)/2} x^{j-1}
///   dx2   : sum_{j>=2} j(j-1) q^{j(j+1)/2} x^{j-2}
///   dq    : sum_{j>=1} (j(j+1)/2) q^{j(j+1)/2-1} x^j
enum class SeriesKind { value, dx, dx2, dq };

template <class R, class S>
struct RawSum {
  S value{};
  R tail{};        // analytic remainder bound
  R rounding{};    // modelled rounding error
  R magnitude{};   // sum of |terms|
  int terms = 0;
  int reductions = 0;
};

inline double series_weight(SeriesKind kind, long j) {
  switch (kind) {
    case SeriesKind::value:
      return 1.0;
    case SeriesKind::dx:
      return static_cast<double>(j);
    case SeriesKind::dx2:
      return static_cast<double>(j) * static_cast<double>(j - 1);
    case SeriesKind::dq:
      return 0.5 * static_cast<double>(j) * static_cast<double>(j + 1);
  }
  return 0.0;
}

inline int series_first_index(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::value:
      return 0;
    case SeriesKind::dx2:
      return 2;
    default:
      return 1;
  }
}

/// Number of applications of theta(q,x) = 1 + q x theta(q, q x) needed before
/// |q^n x| <= threshold.
inline int reduction_count(double abs_q, double abs_x, double threshold, int cap) {
  if (abs_x <= threshold || abs_q == 0.0) return 0;
  double n = std::ceil(std::log(abs_x / threshold) / -std::log(abs_q));
  if (!(n >= 0)) return 0;
  return n > cap ? cap : static_cast<int>(n);
}

/// Sums one member of the theta family.
///
/// The n reduced steps form the exact prefix sum_{m<n} of the series; the
/// remainder is q^{n(n+1)/2} x^n times the same family evaluated at the
/// reduced argument q^n x, whose terms have ratio q^{j+1} x.  Once the weighted
/// ratio rho_j = (w_{j+1}/w_j)|q|^{j+1}|x| drops below 1 (it decreases in j
/// for every weight used here) the remainder from index j is at most
/// |w_j s_j| / (1 - rho_j); summation stops when that bound is below `tol`.
template <class R, class S>
RawSum<R, S> sum_series(SeriesKind kind, const R& q, const S& x, const R& tol,
                        int max_terms, double reduction_threshold) {
  using std::abs;
  using std::isfinite;
  RawSum<R, S> out;
  const R abs_q = abs(q);
  const R abs_x = abs_bound(x);
  const double abs_q_d = to_double(abs_q);
  const double abs_x_d = to_double(abs_x);
  out.reductions = reduction_count(abs_q_d, abs_x_d, reduction_threshold, max_terms);

  const int j0 = series_first_index(kind);
  // s_j is the unweighted term; s_{j+1} = s_j * q^{j+1} * x.
  S s;
  switch (kind) {
    case SeriesKind::value:
      s = S(R(1));
      break;
    case SeriesKind::dx:
      s = S(q);
      break;
    case SeriesKind::dx2:
      s = S(q * q * q);
      break;
    case SeriesKind::dq:
      s = x;
      break;
  }
  R q_pow = R(1);  // q^{j+1} for the current j, built incrementally
  for (int i = 0; i <= j0; ++i) q_pow *= q;
  R abs_q_pow = abs(q_pow);

  S sum = S(R(0));
  R magnitude = R(0);
  int terms = 0;
  for (long j = j0;; ++j) {
    const R w = R(series_weight(kind, j));
    const R abs_term = w * abs_bound(s);
    if (j >= out.reductions) {
      const double w_next = series_weight(kind, j + 1);
      const R rho = R(w_next) / w * abs_q_pow * abs_x;
      if (rho < 1) {
        const R bound = abs_term / (1 - rho);
        if (bound <= tol) {
          out.tail = bound;
          break;
        }
      }
    }
    if (!isfinite(abs_term)) {
      // Overflow of the working type; the caller retries in a wider exponent range.
      out.tail = abs_term;
      break;
    }
    if (terms >= max_terms)
      throw TailNotConverged("theta series: max_terms reached before the tail bound held");
    S term = s;
    term *= w;
    sum += term;
    magnitude += abs_term;
    ++terms;
    s = s * x;
    s *= q_pow;
    q_pow *= q;
    abs_q_pow *= abs_q;
  }
  const R c = is_complex<S>::value ? R(8) : R(4);
  out.value = sum;
  out.magnitude = magnitude;
  out.terms = terms;
  out.rounding = c * R(terms + 1) * real_traits<R>::unit_roundoff() * magnitude;
  return out;
}

}  // namespace ptheta::detail
