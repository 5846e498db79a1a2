#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptheta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the operation (|q| >= 1, x = 0 where a
/// reciprocal is needed, malformed configuration, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The series cap `max_terms` was reached before the tail bound held, or the
/// widest precision tier could not meet the requested tolerance.
class TailNotConverged : public Error {
 public:
  using Error::Error;
};

/// phi_k(0) for negative non-integral k.
class DivergesAtZero : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A scan cell whose endpoint signs agree but whose interior minimum of
/// |theta| is below the coalescence threshold: two real zeros are about to
/// merge (or have just merged) near `x`.
class CoalescenceSuspected : public Error {
 public:
  CoalescenceSuspected(const std::string& what, double q, double x)
      : Error(what), q_(q), x_(x) {}
  double q() const noexcept { return q_; }
  double x() const noexcept { return x_; }

 private:
  double q_;
  double x_;
};

class StepCollapse : public Error {
 public:
  using Error::Error;
};

/// Jacobian of (theta, theta_x) is numerically singular; a triple zero would
/// produce this, which cannot happen for real q.
class SingularJacobian : public Error {
 public:
  using Error::Error;
};

/// A zero lies within the safety distance of an argument-principle contour.
class BoundaryTooClose : public Error {
 public:
  using Error::Error;
};

/// Adaptive phase tracking hit its subdivision limit.
class PhaseJump : public Error {
 public:
  using Error::Error;
};

class LostTrack : public Error {
 public:
  using Error::Error;
};

/// Bracketing function did not change sign; the sampled values are kept for
/// diagnosis.
class NoSignChange : public Error {
 public:
  NoSignChange(const std::string& what,
               std::vector<std::pair<double, double>> samples)
      : Error(what), samples_(std::move(samples)) {}
  const std::vector<std::pair<double, double>>& samples() const noexcept {
    return samples_;
  }

 private:
  std::vector<std::pair<double, double>> samples_;
};

}  // namespace ptheta
