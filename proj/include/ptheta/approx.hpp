#pragma once

#include <complex>
#include <type_traits>

namespace ptheta {

template <class T>
struct real_of {
  using type = T;
};
template <class T>
struct real_of<std::complex<T>> {
  using type = T;
};
template <class T>
using real_of_t = typename real_of<T>::type;

/// A value paired with a guaranteed bound on |true - value|.
///
/// `err` combines the analytic tail bound, a rounding model
/// (terms x unit roundoff x running magnitude) and the final rounding to the
/// storage type.  `magnitude` is the sum of |terms| seen while summing; it is
/// the natural scale against which a near-zero value should be judged.
template <class T>
struct Approx {
  using real_type = real_of_t<T>;

  T value{};
  real_type err{};
  int terms_used = 0;
  int reductions_used = 0;
  real_type magnitude{};
};

using RealApprox = Approx<double>;
using ComplexApprox = Approx<std::complex<double>>;

}  // namespace ptheta
