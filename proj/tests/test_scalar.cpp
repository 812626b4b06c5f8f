#include <cmath>
#include <random>

#include "doctest.h"
#include "gpspec/errors.hpp"
#include "gpspec/scalar.hpp"
#include "oracles.hpp"

using namespace gpspec;

namespace {

const ExponentialKernel kOnePole({{0.9, 0.5}});
const ExponentialKernel kGraded({{1.0, 1.0}});
const ExponentialKernel kTwoTerm({{1.0, 1.0}, {0.2, 1.5}});

Complex closest(const std::vector<Complex>& roots, Complex z) {
  Complex best = roots.front();
  for (const auto& r : roots) {
    if (std::abs(r - z) < std::abs(best - z)) best = r;
  }
  return best;
}

}  // namespace

TEST_CASE("damping bound and mode coefficients") {
  CHECK_THROWS(DampingBound(0.6, 0.5));
  CHECK_THROWS(DampingBound(-0.1, 0.5));
  CHECK(DampingBound::constant(0.5).is_constant());
  CHECK_THROWS(ModeCoefficients(0.0, 1.0));
  CHECK_THROWS(ModeCoefficients(1.0, -1.0));
  const auto m = ModeCoefficients::damped(10.0, 0.6);
  CHECK(m.beta() == doctest::Approx(6.0));
  CHECK(m.admissible(DampingBound(0.5, 0.75)));
  CHECK_FALSE(ModeCoefficients(10.0, 8.0).admissible(DampingBound(0.5, 0.75)));
}

TEST_CASE("f zeros: two-term quadratic formula") {
  const auto z05 = f_real_zeros(kTwoTerm, 0.5);
  const auto z075 = f_real_zeros(kTwoTerm, 0.75);
  REQUIRE(z05.size() == 2);
  REQUIRE(z075.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(z05[static_cast<std::size_t>(i)] == doctest::Approx(oracle::two_term::zeros_05[i]).epsilon(1e-13));
    CHECK(z075[static_cast<std::size_t>(i)] == doctest::Approx(oracle::two_term::zeros_075[i]).epsilon(1e-13));
  }
  // One zero per gap (-b_j, -b_{j-1}).
  CHECK(z05[0] > -1.5);
  CHECK(z05[0] < -1.0);
  CHECK(z05[1] > -1.0);
  CHECK(z05[1] < 0.0);
}

TEST_CASE("f zeros: one pole closed form and edge cases") {
  // 1 - b a1 b1/(lambda + b1) = 0  =>  lambda = -b1 + b a1 b1
  const auto z = f_real_zeros(kOnePole, 0.5);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == doctest::Approx(-0.275).epsilon(1e-14));
  CHECK(f_real_zeros(kOnePole, 0.0).empty());
  CHECK_THROWS_AS(f_real_zeros(ExponentialKernel({{1.5, 1.0}}), 1.0), HypothesisError);
}

TEST_CASE("g and its singularity") {
  CHECK(g_eval(kGraded, 0.5, -0.506413) == doctest::Approx(oracle::graded::g_at_c0).epsilon(1e-12));
  CHECK_THROWS_AS(g_eval(kGraded, 0.5, -0.5), SingularityError);
  CHECK(g_eval(kOnePole, 0.5, oracle::constant_b::rounded_real_root) ==
        doctest::Approx(oracle::constant_b::rounded_alpha).epsilon(1e-9));
}

TEST_CASE("symbol polynomial matches the rational symbol") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const ModeCoefficients m(1.0 + 40.0 * std::abs(u(rng)), 2.0 * std::abs(u(rng)));
    const Complex z(u(rng), u(rng));
    const auto p = symbol_polynomial(kTwoTerm, m);
    CHECK(p.degree() == 4);
    const Complex pi = (z + 1.0) * (z + 1.5);
    CHECK(std::abs(p(z) - symbol_value(kTwoTerm, m, z) * pi) <= 1e-12 * p.magnitude_at(std::abs(z)));
  }
}

TEST_CASE("mode eigenvalues of the constant-b example") {
  using namespace oracle::constant_b;
  const auto roots = mode_eigenvalues(kOnePole, ModeCoefficients::damped(w_min, 0.5));
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].imag() == 0.0);
  CHECK(roots[0].real() == doctest::Approx(real_root).epsilon(1e-12));
  CHECK(std::abs(roots[1] - Complex(pair_re, -pair_im)) < 1e-12);
  CHECK(std::abs(roots[2] - Complex(pair_re, pair_im)) < 1e-12);

  const auto rounded = mode_eigenvalues(kOnePole, ModeCoefficients::damped(rounded_alpha, 0.5));
  CHECK(std::abs(closest(rounded, Complex(rounded_pair_re, rounded_pair_im)) -
                 Complex(rounded_pair_re, rounded_pair_im)) < 1e-12);
}

TEST_CASE("undamped modes are purely imaginary") {
  const auto roots = mode_eigenvalues(kTwoTerm, ModeCoefficients(9.0, 0.0));
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - Complex(0.0, -3.0)) < 1e-13);
  CHECK(std::abs(roots[1] - Complex(0.0, 3.0)) < 1e-13);
}

TEST_CASE("graded example cubic at both damping ends") {
  using namespace oracle::graded;
  const auto lo = mode_eigenvalues(kGraded, ModeCoefficients::damped(w_min, 0.5));
  const auto hi = mode_eigenvalues(kGraded, ModeCoefficients::damped(w_min, 0.75));
  REQUIRE(lo.size() == 3);
  REQUIRE(hi.size() == 3);
  CHECK(lo[0].real() == doctest::Approx(c0).epsilon(1e-12));
  CHECK(std::abs(lo[2] - Complex(d1, pair_im_at_05)) < 1e-12);
  // At b = 0.75 the pair sits left of the real root.
  CHECK(hi[2].imag() == 0.0);
  CHECK(hi[2].real() == doctest::Approx(real_root_at_075).epsilon(1e-12));
  CHECK(std::abs(hi[1] - Complex(pair_re_at_075, pair_im_at_075)) < 1e-12);
}

TEST_CASE("Jordan condition") {
  CHECK(jordan_condition(kOnePole, 0.5, -0.27581) ==
        doctest::Approx(oracle::constant_b::jordan_at_rounded).epsilon(1e-12));
  CHECK(jordan_condition(kGraded, 0.5, -0.6) == doctest::Approx(oracle::graded::jordan_at_06).epsilon(1e-13));
  CHECK_THROWS_AS(jordan_condition(kGraded, 0.5, 0.0), DomainError);
}

TEST_CASE("real and imaginary part equations") {
  using namespace oracle::constant_b;
  const auto [im, re] = reim_residual(kOnePole, ModeCoefficients::damped(rounded_alpha, 0.5), -0.11209, 4.5715);
  CHECK(im == doctest::Approx(reim_imag).epsilon(1e-9));
  CHECK(re == doctest::Approx(reim_real).epsilon(1e-9));
}
