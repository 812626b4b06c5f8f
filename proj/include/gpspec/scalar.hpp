#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gpspec/kernel.hpp"
#include "gpspec/polynomial.hpp"

namespace gpspec {

/// Range [b_min, b_max] of the damping profile b(x).
class DampingBound {
public:
  DampingBound(double b_min, double b_max);
  static DampingBound constant(double b) { return {b, b}; }

  double b_min() const noexcept { return b_min_; }
  double b_max() const noexcept { return b_max_; }
  bool is_constant() const noexcept { return b_min_ == b_max_; }

private:
  double b_min_;
  double b_max_;
};

/// Scalar stand-ins alpha = (T_a u, u) > 0 and beta = (T_b u, u) >= 0.
class ModeCoefficients {
public:
  ModeCoefficients(double alpha, double beta);
  /// beta = b_hat * alpha.
  static ModeCoefficients damped(double alpha, double b_hat) { return {alpha, b_hat * alpha}; }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// b_min * alpha <= beta <= b_max * alpha, with a relative slack.
  bool admissible(const DampingBound& d, double rel_slack = 1e-12) const;

private:
  double alpha_;
  double beta_;
};

/// prod_j (lambda + b_j), degree N.
RealPolynomial pole_polynomial(const ExponentialKernel& k);

/// sum_j a_j b_j prod_{i != j} (lambda + b_i), degree N - 1. Khat = this / pole_polynomial.
RealPolynomial transform_numerator(const ExponentialKernel& k);

/// f(lambda) = 1 - b_hat * Khat(lambda).
Complex f_eval(const ExponentialKernel& k, double b_hat, Complex lambda);

/// The N real zeros of f(., b_hat), one inside each (-b_j, -b_{j-1}) with
/// b_0 = 0, ascending. Empty for b_hat = 0. Needs 1 - b_hat sum a_j > 0.
std::vector<double> f_real_zeros(const ExponentialKernel& k, double b_hat);

/// g(lambda) = -lambda^2 / f(lambda) for real lambda (G for constant b).
/// Throws SingularityError when |f| <= 1e-12.
double g_eval(const ExponentialKernel& k, double b_hat, double lambda);

/// r(lambda) = lambda^2 + alpha - beta Khat(lambda), partial-fraction form.
Complex symbol_value(const ExponentialKernel& k, const ModeCoefficients& m, Complex lambda);

/// Degree N + 2 polynomial r(lambda) prod_j (lambda + b_j), built by convolution.
RealPolynomial symbol_polynomial(const ExponentialKernel& k, const ModeCoefficients& m);

/// Eigenvalues of the scalar mode problem r(lambda) = 0: roots of the
/// cleared polynomial with spurious roots at the poles removed. At most N + 2
/// values, conjugate-closed, sorted by (re, im).
std::vector<Complex> mode_eigenvalues(const ExponentialKernel& k, const ModeCoefficients& m);

/// Root within this distance of a pole -b_j must pass the rational residual test.
inline constexpr double kSpuriousPoleRadius = 1e-8;
/// Rational residual accepted at a near-pole root, relative to 1 + alpha.
inline constexpr double kSpuriousResidual = 1e-6;

/// (2/lambda0)(b Khat(lambda0) - 1) - b Khat'(lambda0), constant-b form.
/// A nonzero value means the Jordan chain at lambda0 has length one.
double jordan_condition(const ExponentialKernel& k, double b_hat, double lambda0);

/// Imaginary-part equation (divided by y) and real-part equation of
/// r(x + iy) = 0, in that order.
std::pair<double, double> reim_residual(const ExponentialKernel& k, const ModeCoefficients& m,
                                        double x, double y);

}  // namespace gpspec
