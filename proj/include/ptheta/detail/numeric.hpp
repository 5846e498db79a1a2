#pragma once

// Scalar plumbing shared by the series kernels: a minimal complex type that
// works for any real backend, fixed-width multiprecision tiers and the tier
// dispatcher.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include "ptheta/approx.hpp"
#include "ptheta/errors.hpp"

namespace ptheta::detail {

/// Fixed-width MPFR number.  The width is a template parameter so that no
/// process-wide default precision is touched; evaluations at different widths
/// can run concurrently.
template <unsigned Digits>
using mp_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<Digits>,
    boost::multiprecision::et_off>;

inline constexpr unsigned kTierDigits[] = {32, 64, 128, 256, 512};

template <class R>
struct real_traits {
  static R unit_roundoff() { return std::numeric_limits<R>::epsilon() / 2; }
  static constexpr int digits10 = std::numeric_limits<R>::digits10;
};

/// Complex arithmetic over an arbitrary real backend.  std::complex is only
/// specified for the built-in floating types.
template <class R>
struct Complex {
  R re{};
  R im{};

  Complex() = default;
  Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const R& s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const R& s) { return a *= s; }
  friend Complex operator*(const R& s, Complex a) { return a *= s; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

}  // namespace ptheta::detail

namespace ptheta {
template <class R>
struct real_of<detail::Complex<R>> {
  using type = R;
};
}  // namespace ptheta

namespace ptheta::detail {

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<Complex<R>> : std::true_type {};

/// |s| for real s; |re| + |im| (an upper bound of the modulus) for complex s.
template <class R>
R abs_bound(const R& s) {
  using std::abs;
  return abs(s);
}
template <class R>
R abs_bound(const Complex<R>& s) {
  using std::abs;
  return abs(s.re) + abs(s.im);
}

template <class R>
R modulus(const R& s) {
  using std::abs;
  return abs(s);
}
template <class R>
R modulus(const Complex<R>& s) {
  using std::sqrt;
  return sqrt(s.re * s.re + s.im * s.im);
}

template <class R>
double to_double(const R& r) {
  return static_cast<double>(r);
}

template <class R>
R from_double(double v) {
  return R(v);
}

template <class R>
Complex<R> from_std(const std::complex<double>& z) {
  return {R(z.real()), R(z.imag())};
}

template <class R>
std::complex<double> to_std(const Complex<R>& z) {
  return {to_double(z.re), to_double(z.im)};
}

// Lift / lower between the public scalar types (double, std::complex<double>)
// and the kernel scalar types (R, Complex<R>).
template <class R>
R lift(double v) {
  return R(v);
}
template <class R>
Complex<R> lift(const std::complex<double>& z) {
  return from_std<R>(z);
}

template <class R>
double lower(const R& v) {
  return to_double(v);
}
template <class R>
std::complex<double> lower(const Complex<R>& v) {
  return to_std(v);
}

template <class Public, class R>
struct kernel_scalar {
  using type = R;
};
template <class R>
struct kernel_scalar<std::complex<double>, R> {
  using type = Complex<R>;
};
template <class Public, class R>
using kernel_scalar_t = typename kernel_scalar<Public, R>::type;

/// Calls fn.template operator()<R>() with R the narrowest multiprecision tier
/// holding at least `digits` decimal digits.
template <class Fn>
decltype(auto) with_mp_tier(int digits, Fn&& fn) {
  if (digits <= 32) return fn.template operator()<mp_real<32>>();
  if (digits <= 64) return fn.template operator()<mp_real<64>>();
  if (digits <= 128) return fn.template operator()<mp_real<128>>();
  if (digits <= 256) return fn.template operator()<mp_real<256>>();
  if (digits <= 512) return fn.template operator()<mp_real<512>>();
  throw TailNotConverged("required precision exceeds the widest tier (512 digits)");
}

/// Next tier strictly wider than `digits`, or 0 if there is none.
inline int next_tier(int digits) {
  for (unsigned t : kTierDigits)
    if (static_cast<int>(t) > digits) return static_cast<int>(t);
  return 0;
}

/// Extra decimal digits needed to resolve a result of size `value` out of
/// terms summing to `magnitude` with an absolute target `tol`.
inline int cancellation_digits(double magnitude, double value, double tol) {
  double floor_v = std::max({std::abs(value), tol, 1e-300});
  if (!std::isfinite(magnitude)) return 400;
  double d = std::log10(std::max(magnitude, 1.0) / floor_v);
  return d > 0 ? static_cast<int>(std::ceil(d)) : 0;
}

}  // namespace ptheta::detail
