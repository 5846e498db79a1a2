#pragma once

// Brute-force references for the tests: plain term-by-term summation in
// 50-digit decimal arithmetic with a fixed term count, no argument reduction.

#include <complex>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_dec_float_50;

enum class Series { value, dx, dx2, dq };

// Term j of the selected series, given q^{j(j+1)/2} and x.
inline big term(Series s, int j, const big& qj, const big& q, const big& x) {
  using boost::multiprecision::pow;
  switch (s) {
    case Series::value: return qj * pow(x, j);
    case Series::dx: return j == 0 ? big(0) : qj * j * pow(x, j - 1);
    case Series::dx2: return j < 2 ? big(0) : qj * j * (j - 1) * pow(x, j - 2);
    case Series::dq: return j == 0 ? big(0) : qj / q * (j * (j + 1) / 2) * pow(x, j);
  }
  return 0;
}

inline double sum(double q_, double x_, Series s = Series::value, int terms = 500) {
  const big q = q_, x = x_;
  big total = 0, qj = 1;  // qj = q^{j(j+1)/2}
  for (int j = 0; j < terms; ++j) {
    if (j > 0) qj *= boost::multiprecision::pow(q, j);
    total += term(s, j, qj, q, x);
  }
  return static_cast<double>(total);
}

inline double theta(double q, double x) { return sum(q, x); }

// theta(q, i y) split into real and imaginary parts.
inline std::complex<double> theta_iy(double q_, double y_, int terms = 500) {
  const big q = q_, y = y_;
  big re = 0, im = 0, qj = 1, yp = 1;
  for (int j = 0; j < terms; ++j) {
    if (j > 0) {
      qj *= boost::multiprecision::pow(q, j);
      yp *= y;
    }
    const big t = qj * yp;
    switch (j % 4) {
      case 0: re += t; break;
      case 1: im += t; break;
      case 2: re -= t; break;
      default: im -= t; break;
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// phi(q) = 1 + 2 sum_{j>=1} (-1)^j q^{j^2/2}
inline double phi(double q_, int terms = 400) {
  const big q = q_;
  const big r = boost::multiprecision::sqrt(q);
  big total = 1;
  for (int j = 1; j < terms; ++j) {
    const big t = boost::multiprecision::pow(r, j * j);
    total += (j % 2 ? -2 : 2) * t;
  }
  return static_cast<double>(total);
}

// Sign of theta(q, x) to 50 digits.
inline int sign(double q, double x) {
  const double v = theta(q, x);
  return (v > 0) - (v < 0);
}

// Zero of theta(q, .) in [lo, hi] by 50-digit bisection.
inline double bisect_zero(double q_, double lo_, double hi_, int terms = 500) {
  const big q = q_;
  auto f = [&](const big& x) {
    big total = 0, qj = 1;
    for (int j = 0; j < terms; ++j) {
      if (j > 0) qj *= boost::multiprecision::pow(q, j);
      total += qj * boost::multiprecision::pow(x, j);
    }
    return total;
  };
  big lo = lo_, hi = hi_;
  const bool neg_lo = f(lo) < 0;
  for (int i = 0; i < 120; ++i) {
    big mid = (lo + hi) / 2;
    if ((f(mid) < 0) == neg_lo)
      lo = mid;
    else
      hi = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

}  // namespace oracle
