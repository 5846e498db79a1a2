#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "ptheta/errors.hpp"

namespace ptheta {

/// Precision and truncation policy shared by every series evaluation.
///
/// `tail_tol` is an absolute target for the analytic remainder of a series.
/// Evaluations start in binary64; the multiprecision backend is chosen when
///   - `precision_digits` exceeds what binary64 carries (> 16),
///   - 1 - |q| < 0.05,
///   - `tail_tol` < 1e-13, or
///   - the binary64 rounding bound is not negligible next to the result
///     (cancellation among large terms).
/// The multiprecision width is the smallest fixed tier that covers the
/// cancellation measured on the first pass plus `precision_digits`.
struct EvalConfig {
  int precision_digits = 16;
  double tail_tol = 1e-13;
  int max_terms = 1 << 17;
  double reduction_threshold = 1.0;

  void validate() const {
    if (precision_digits < 15)
      throw DomainError("EvalConfig: precision_digits must be >= 15");
    if (!(tail_tol > 0.0) || !std::isfinite(tail_tol))
      throw DomainError("EvalConfig: tail_tol must be positive");
    if (max_terms < 8) throw DomainError("EvalConfig: max_terms must be >= 8");
    if (!(reduction_threshold > 0.0 && reduction_threshold <= 2.0))
      throw DomainError("EvalConfig: reduction_threshold must lie in (0, 2]");
  }

  /// Escalation forced by the configuration or by proximity of |q| to 1.
  bool forces_multiprecision(double q) const {
    return precision_digits > 16 || tail_tol < 1e-13 || 1.0 - std::abs(q) < 0.05;
  }
};

/// A point of the (q, x) plane.
struct Point {
  double q = 0.0;
  std::complex<double> x{0.0, 0.0};
};

inline void require_unit_disk(double q, const char* op) {
  if (!(std::abs(q) < 1.0))
    throw DomainError(std::string(op) + ": |q| must be < 1");
}

}  // namespace ptheta
