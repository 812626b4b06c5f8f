#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gpspec {

using Complex = std::complex<double>;

/// One term a * exp(-b t) of the memory kernel.
struct KernelTerm {
  double amplitude;  // a_j > 0
  double rate;       // b_j > 0
};

/// Absolute distance to a pole below which transform evaluation is refused.
inline constexpr double kPoleGuard = 1e-12;

/// Exponential-sum relaxation kernel K(t) = sum_j a_j exp(-b_j t).
///
/// Terms are sorted by rate at construction. Every amplitude and rate must be
/// positive and rates must be pairwise distinct; duplicates are rejected, not
/// merged. Immutable after construction.
class ExponentialKernel {
public:
  explicit ExponentialKernel(std::vector<KernelTerm> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const KernelTerm> terms() const noexcept { return terms_; }
  const KernelTerm& term(std::size_t j) const { return terms_.at(j); }

  /// sum_j a_j (= K(0) = Khat(0)).
  double amplitude_sum() const noexcept { return amplitude_sum_; }
  double smallest_rate() const noexcept { return terms_.front().rate; }
  double largest_rate() const noexcept { return terms_.back().rate; }

  /// K(t); throws DomainError for t < 0.
  double time_value(double t) const;

  /// Khat(lambda) = sum_j a_j b_j / (lambda + b_j). Throws PoleError within
  /// `pole_guard` of any -b_j.
  Complex laplace(Complex lambda, double pole_guard = kPoleGuard) const;

  /// Khat'(lambda) = -sum_j a_j b_j / (lambda + b_j)^2.
  Complex laplace_derivative(Complex lambda, double pole_guard = kPoleGuard) const;

  /// 1 - b_max * sum_j a_j. The standing assumption needs this to be positive.
  double dissipativity_margin(double b_max) const;

  /// Index of the pole -b_j nearest to lambda and its distance.
  std::pair<std::size_t, double> nearest_pole(Complex lambda) const;

private:
  void check_poles(Complex lambda, double pole_guard) const;

  std::vector<KernelTerm> terms_;
  double amplitude_sum_ = 0.0;
};

}  // namespace gpspec
