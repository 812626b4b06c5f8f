#include <cmath>

#include "doctest.h"
#include "gpspec/errors.hpp"
#include "gpspec/kernel.hpp"
#include "oracles.hpp"

using namespace gpspec;

TEST_CASE("kernel sorts terms and sums amplitudes") {
  const ExponentialKernel k({{0.2, 1.5}, {1.0, 1.0}});
  REQUIRE(k.size() == 2);
  CHECK(k.term(0).rate == 1.0);
  CHECK(k.term(1).rate == 1.5);
  CHECK(k.amplitude_sum() == doctest::Approx(1.2));
  CHECK(k.smallest_rate() == 1.0);
  CHECK(k.largest_rate() == 1.5);
}

TEST_CASE("kernel rejects bad terms") {
  CHECK_THROWS_AS(ExponentialKernel({}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentialKernel({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentialKernel({{1.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentialKernel({{1.0, 1.0}, {0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentialKernel({{NAN, 1.0}}), std::invalid_argument);
}

TEST_CASE("time values") {
  const ExponentialKernel k({{0.9, 0.5}});
  CHECK(k.time_value(0.0) == doctest::Approx(0.9));
  CHECK(k.time_value(2.0) == doctest::Approx(oracle::kKernelAt2).epsilon(1e-14));
  CHECK_THROWS_AS(k.time_value(-1.0), DomainError);
}

TEST_CASE("laplace transform and derivative") {
  const ExponentialKernel k({{0.9, 0.5}});
  CHECK(k.laplace(0.0).real() == doctest::Approx(0.9));
  const double lam = -0.27581;
  CHECK(k.laplace(lam).real() == doctest::Approx(oracle::constant_b::khat_at_rounded).epsilon(1e-13));
  CHECK(k.laplace_derivative(lam).real() ==
        doctest::Approx(oracle::constant_b::dkhat_at_rounded).epsilon(1e-13));

  // Finite-difference check of the derivative off the real axis.
  const Complex z(-0.3, 1.7);
  const double h = 1e-6;
  const Complex fd = (k.laplace(z + h) - k.laplace(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - k.laplace_derivative(z)) < 1e-8);

  // Conjugate symmetry.
  CHECK(std::abs(k.laplace(std::conj(z)) - std::conj(k.laplace(z))) < 1e-15);
}

TEST_CASE("pole guard") {
  const ExponentialKernel k({{1.0, 1.0}, {0.2, 1.5}});
  try {
    (void)k.laplace(Complex(-1.5, 0.0));
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.pole_index() == 1);
  }
  CHECK_NOTHROW((void)k.laplace(Complex(-1.5 + 1e-9, 0.0)));
  const auto [j, d] = k.nearest_pole(Complex(-0.9, 0.0));
  CHECK(j == 0);
  CHECK(d == doctest::Approx(0.1));
}

TEST_CASE("dissipativity margin") {
  const ExponentialKernel two({{1.0, 1.0}, {0.2, 1.5}});
  CHECK(two.dissipativity_margin(0.75) == doctest::Approx(0.1));
  const ExponentialKernel heavy({{1.5, 1.0}});
  CHECK(heavy.dissipativity_margin(1.0) == doctest::Approx(-0.5));
}
