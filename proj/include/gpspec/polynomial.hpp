#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gpspec {

using Complex = std::complex<double>;

/// Dense polynomial with real coefficients stored in ascending degree.
///
/// Trailing zero coefficients are stripped at construction, so the stored
/// leading coefficient is nonzero. The zero polynomial and non-finite
/// coefficients are rejected.
class RealPolynomial {
public:
  explicit RealPolynomial(std::vector<double> coeffs);

  /// Monic polynomial with the given roots. Non-real roots must come in
  /// conjugate pairs (imaginary parts are discarded after expansion).
  static RealPolynomial from_roots(std::span<const Complex> roots);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  double leading() const noexcept { return coeffs_.back(); }

  Complex operator()(Complex z) const;
  double operator()(double x) const;

  RealPolynomial derivative() const;

  /// sum_k |c_k| |z|^k, the natural scale for relative residuals near z.
  double magnitude_at(double abs_z) const;

  friend RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q);
  friend RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q);
  friend RealPolynomial operator*(double s, const RealPolynomial& p);

private:
  std::vector<double> coeffs_;
};

/// Horner evaluation.
Complex poly_eval(const RealPolynomial& p, Complex z);

inline constexpr double kDefaultRootTol = 1e-10;

/// All deg(p) complex roots (with multiplicity) by Aberth-Ehrlich iteration
/// followed by Newton polishing.
///
/// The result is closed under conjugation: near-real roots are snapped to the
/// real axis and complex pairs are symmetrized. Each root satisfies
/// |p(z)| <= tol * sum_k |c_k||z|^k. Sorted by real part, then imaginary part.
/// Throws ConvergenceError on failure and DomainError for deg(p) < 1.
std::vector<Complex> all_roots(const RealPolynomial& p, double tol = kDefaultRootTol);

/// Real roots in [lo, hi] isolated with a Sturm sequence and refined by
/// bisection to width <= tol. Roots within tol outside the interval are
/// included (clamped). Sorted ascending; repeated roots appear once per
/// distinct Sturm count. Degree-0 input gives an empty list.
std::vector<double> real_roots_in_interval(const RealPolynomial& p, double lo, double hi,
                                           double tol);

/// Number of distinct real roots in (a, b] by Sturm's theorem.
int sturm_count(const RealPolynomial& p, double a, double b);

/// Ordering used for every root list: real part, then imaginary part.
bool root_order(const Complex& x, const Complex& y);

}  // namespace gpspec
