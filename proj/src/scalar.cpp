#include "gpspec/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gpspec/errors.hpp"

namespace gpspec {

DampingBound::DampingBound(double b_min, double b_max) : b_min_(b_min), b_max_(b_max) {
  if (!std::isfinite(b_min) || !std::isfinite(b_max) || b_min < 0.0 || b_max < b_min) {
    throw std::invalid_argument("damping bound needs 0 <= b_min <= b_max");
  }
}

ModeCoefficients::ModeCoefficients(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!std::isfinite(beta) || beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
}

bool ModeCoefficients::admissible(const DampingBound& d, double rel_slack) const {
  const double slack = rel_slack * alpha_ * std::max(1.0, d.b_max());
  return beta_ >= d.b_min() * alpha_ - slack && beta_ <= d.b_max() * alpha_ + slack;
}

RealPolynomial pole_polynomial(const ExponentialKernel& k) {
  RealPolynomial p({1.0});
  for (const auto& t : k.terms()) p = p * RealPolynomial({t.rate, 1.0});
  return p;
}

RealPolynomial transform_numerator(const ExponentialKernel& k) {
  std::vector<double> acc(k.size(), 0.0);
  for (std::size_t j = 0; j < k.size(); ++j) {
    RealPolynomial partial({k.term(j).amplitude * k.term(j).rate});
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i != j) partial = partial * RealPolynomial({k.term(i).rate, 1.0});
    }
    for (int c = 0; c <= partial.degree(); ++c) acc[static_cast<std::size_t>(c)] += partial.coeff(c);
  }
  return RealPolynomial(std::move(acc));
}

Complex f_eval(const ExponentialKernel& k, double b_hat, Complex lambda) {
  if (b_hat == 0.0) return 1.0;
  return 1.0 - b_hat * k.laplace(lambda);
}

std::vector<double> f_real_zeros(const ExponentialKernel& k, double b_hat) {
  if (b_hat < 0.0) throw DomainError("b_hat must be nonnegative");
  if (b_hat == 0.0) return {};
  if (!(k.dissipativity_margin(b_hat) > 0.0)) {
    throw HypothesisError("1 > b_max * sum a_j",
                          "margin " + std::to_string(k.dissipativity_margin(b_hat)) + " at b = " +
                              std::to_string(b_hat));
  }
  // f * prod(lambda + b_j) = pole_polynomial - b_hat * transform_numerator
  const RealPolynomial cleared = pole_polynomial(k) + (-b_hat) * transform_numerator(k);
  const double b_n = k.largest_rate();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * b_n;
  std::vector<double> zeros = real_roots_in_interval(cleared, -b_n, 0.0, tol);
  if (zeros.size() != k.size()) {
    throw ConvergenceError("expected " + std::to_string(k.size()) + " real zeros of f, found " +
                               std::to_string(zeros.size()),
                           0, 0.0);
  }
  return zeros;
}

double g_eval(const ExponentialKernel& k, double b_hat, double lambda) {
  const double f = f_eval(k, b_hat, lambda).real();
  if (std::abs(f) <= 1e-12) {
    throw SingularityError("g is singular at lambda = " + std::to_string(lambda) +
                           " (zero of f)");
  }
  return -lambda * lambda / f;
}

Complex symbol_value(const ExponentialKernel& k, const ModeCoefficients& m, Complex lambda) {
  Complex r = lambda * lambda + m.alpha();
  if (m.beta() != 0.0) r -= m.beta() * k.laplace(lambda);
  return r;
}

RealPolynomial symbol_polynomial(const ExponentialKernel& k, const ModeCoefficients& m) {
  const RealPolynomial quad({m.alpha(), 0.0, 1.0});
  RealPolynomial p = quad * pole_polynomial(k);
  if (m.beta() != 0.0) p = p + (-m.beta()) * transform_numerator(k);
  return p;
}

std::vector<Complex> mode_eigenvalues(const ExponentialKernel& k, const ModeCoefficients& m) {
  // Undamped: the memory term drops out and the poles cancel exactly.
  if (m.beta() == 0.0) {
    const double s = std::sqrt(m.alpha());
    return {Complex(0.0, -s), Complex(0.0, s)};
  }
  std::vector<Complex> roots = all_roots(symbol_polynomial(k, m));
  const double accept = kSpuriousResidual * (1.0 + m.alpha());
  std::erase_if(roots, [&](const Complex& z) {
    const auto [j, dist] = k.nearest_pole(z);
    if (dist > kSpuriousPoleRadius) return false;
    Complex at = z;
    if (dist <= kPoleGuard) at += 2.0 * kPoleGuard * (1.0 + k.term(j).rate);
    return !(std::abs(symbol_value(k, m, at)) <= accept);
  });
  return roots;
}

double jordan_condition(const ExponentialKernel& k, double b_hat, double lambda0) {
  if (lambda0 == 0.0) throw DomainError("Jordan condition is undefined at lambda0 = 0");
  const double kh = k.laplace(lambda0).real();
  const double dkh = k.laplace_derivative(lambda0).real();
  return (2.0 / lambda0) * (b_hat * kh - 1.0) - b_hat * dkh;
}

std::pair<double, double> reim_residual(const ExponentialKernel& k, const ModeCoefficients& m,
                                        double x, double y) {
  double im_sum = 0.0;
  double re_sum = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const auto& t = k.term(j);
    const double s = x + t.rate;
    const double den = s * s + y * y;
    if (den == 0.0) throw PoleError(j, Complex(x, y));
    im_sum += t.amplitude * t.rate / den;
    re_sum += t.amplitude * t.rate * s / den;
  }
  return {2.0 * x + m.beta() * im_sum, x * x - y * y + m.alpha() - m.beta() * re_sum};
}

}  // namespace gpspec
