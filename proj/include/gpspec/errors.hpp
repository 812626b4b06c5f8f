#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpspec {

/// Argument outside the mathematical domain of an operation (negative time,
/// zero mode index, lambda0 = 0 in the Jordan condition, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Evaluation point too close to a pole -b_j of the kernel transform.
class PoleError : public DomainError {
public:
  PoleError(std::size_t pole_index, std::complex<double> at);

  /// Zero-based index j of the offending pole -b_j.
  std::size_t pole_index() const noexcept { return pole_index_; }
  std::complex<double> point() const noexcept { return point_; }

private:
  std::size_t pole_index_;
  std::complex<double> point_;
};

/// A standing assumption of the theory is violated, e.g. 1 - b_max * sum(a_j) <= 0.
class HypothesisError : public std::invalid_argument {
public:
  HypothesisError(std::string assumption, std::string detail);

  const std::string& assumption() const noexcept { return assumption_; }

private:
  std::string assumption_;
};

/// Denominator vanishes (g and G at zeros of f).
class SingularityError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A documented precondition that is checked numerically (residual-based) failed.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver did not converge. Carries the best iterate residual and iteration count.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, int iterations, double best_residual);

  int iterations() const noexcept { return iterations_; }
  double best_residual() const noexcept { return best_residual_; }

private:
  int iterations_;
  double best_residual_;
};

}  // namespace gpspec
