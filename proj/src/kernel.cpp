#include "gpspec/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gpspec/errors.hpp"

namespace gpspec {

ExponentialKernel::ExponentialKernel(std::vector<KernelTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("kernel needs at least one term");
  }
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& t = terms_[j];
    if (!std::isfinite(t.amplitude) || !(t.amplitude > 0.0)) {
      throw std::invalid_argument("kernel amplitude a_" + std::to_string(j + 1) + " must be positive");
    }
    if (!std::isfinite(t.rate) || !(t.rate > 0.0)) {
      throw std::invalid_argument("kernel rate b_" + std::to_string(j + 1) + " must be positive");
    }
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const KernelTerm& x, const KernelTerm& y) { return x.rate < y.rate; });
  for (std::size_t j = 1; j < terms_.size(); ++j) {
    if (terms_[j].rate == terms_[j - 1].rate) {
      throw std::invalid_argument("kernel rates must be strictly increasing; duplicate b = " +
                                  std::to_string(terms_[j].rate));
    }
  }
  for (const auto& t : terms_) amplitude_sum_ += t.amplitude;
}

double ExponentialKernel::time_value(double t) const {
  if (!(t >= 0.0)) throw DomainError("kernel time must be nonnegative");
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.amplitude * std::exp(-term.rate * t);
  return sum;
}

std::pair<std::size_t, double> ExponentialKernel::nearest_pole(Complex lambda) const {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const double d = std::abs(lambda + terms_[j].rate);
    if (d < dist) {
      dist = d;
      best = j;
    }
  }
  return {best, dist};
}

void ExponentialKernel::check_poles(Complex lambda, double pole_guard) const {
  const auto [j, dist] = nearest_pole(lambda);
  if (dist <= pole_guard) throw PoleError(j, lambda);
}

Complex ExponentialKernel::laplace(Complex lambda, double pole_guard) const {
  check_poles(lambda, pole_guard);
  Complex sum = 0.0;
  for (const auto& t : terms_) sum += t.amplitude * t.rate / (lambda + t.rate);
  return sum;
}

Complex ExponentialKernel::laplace_derivative(Complex lambda, double pole_guard) const {
  check_poles(lambda, pole_guard);
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    const Complex d = lambda + t.rate;
    sum -= t.amplitude * t.rate / (d * d);
  }
  return sum;
}

double ExponentialKernel::dissipativity_margin(double b_max) const {
  return 1.0 - b_max * amplitude_sum_;
}

}  // namespace gpspec
