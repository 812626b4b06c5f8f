#include <cmath>
#include <random>

#include "doctest.h"
#include "gpspec/enclosure.hpp"
#include "gpspec/errors.hpp"
#include "oracles.hpp"

using namespace gpspec;

namespace {

const ExponentialKernel kOnePole({{0.9, 0.5}});
const ExponentialKernel kGraded({{1.0, 1.0}});
const ExponentialKernel kTwoTerm({{1.0, 1.0}, {0.2, 1.5}});

}  // namespace

TEST_CASE("essential spectrum, graded one pole") {
  const auto es = essential_spectrum(kGraded, DampingBound(0.5, 0.75));
  REQUIRE(es.intervals.size() == 1);
  CHECK(std::abs(es.intervals[0].lo + 0.5) <= 1e-12);
  CHECK(std::abs(es.intervals[0].hi + 0.25) <= 1e-12);
  CHECK(es.monotone);
}

TEST_CASE("essential spectrum, two terms") {
  const auto es = essential_spectrum(kTwoTerm, DampingBound(0.5, 0.75));
  REQUIRE(es.intervals.size() == 2);
  CHECK(es.intervals[0].lo == doctest::Approx(oracle::two_term::zeros_05[0]).epsilon(1e-12));
  CHECK(es.intervals[0].hi == doctest::Approx(oracle::two_term::zeros_075[0]).epsilon(1e-12));
  CHECK(es.intervals[1].lo == doctest::Approx(oracle::two_term::zeros_05[1]).epsilon(1e-12));
  CHECK(es.intervals[1].hi == doctest::Approx(oracle::two_term::zeros_075[1]).epsilon(1e-12));
}

TEST_CASE("constant damping degenerates to points") {
  const auto es = essential_spectrum(kTwoTerm, DampingBound::constant(0.6));
  REQUIRE(es.intervals.size() == 2);
  for (const auto& iv : es.intervals) CHECK(iv.lo == iv.hi);
}

TEST_CASE("essential spectrum preconditions") {
  CHECK_THROWS_AS(essential_spectrum(ExponentialKernel({{1.5, 1.0}}), DampingBound(0.5, 1.0)), HypothesisError);
  CHECK_THROWS(essential_spectrum(kGraded, DampingBound(0.5, 0.75), 1));
}

TEST_CASE("c interval") {
  {
    const auto [c0, c1] = c_interval(kGraded, DampingBound(0.5, 0.75), oracle::graded::w_min);
    CHECK(c0 == doctest::Approx(oracle::graded::c0).epsilon(1e-12));
    CHECK(c1 == doctest::Approx(-0.25).epsilon(1e-14));
  }
  {
    const auto [c0, c1] = c_interval(kOnePole, DampingBound::constant(0.5), oracle::constant_b::w_min);
    CHECK(c0 == doctest::Approx(oracle::constant_b::c0).epsilon(1e-12));
    CHECK(std::abs(c1 + 0.275) <= 1e-12);
  }
  {
    const auto [c0, c1] = c_interval(kOnePole, DampingBound(0.0, 0.0), 10.0);
    CHECK(c0 == c1);
    CHECK(c0 == -0.5);
  }
}

TEST_CASE("one-pole regions") {
  {
    const auto r = one_pole_regions(kGraded, DampingBound(0.5, 0.75), oracle::graded::w_min);
    REQUIRE(r.one_pole);
    CHECK(r.one_pole->d0 == -0.375);
    CHECK(r.one_pole->d1 == doctest::Approx(oracle::graded::d1).epsilon(1e-12));
    CHECK(r.one_pole->hat_d == doctest::Approx(oracle::graded::hat_d).epsilon(1e-12));
  }
  {
    const auto r = one_pole_regions(kOnePole, DampingBound::constant(0.5), oracle::constant_b::w_min);
    REQUIRE(r.one_pole);
    CHECK(r.one_pole->d0 == doctest::Approx(oracle::constant_b::d0).epsilon(1e-13));
    CHECK(r.one_pole->d1 == doctest::Approx(oracle::constant_b::d1).epsilon(1e-12));
    CHECK(r.one_pole->hat_d == doctest::Approx(oracle::constant_b::hat_d).epsilon(1e-12));
  }
  {
    // Undamped: strips collapse to the imaginary axis above sqrt(w_min).
    const auto r = one_pole_regions(kOnePole, DampingBound(0.0, 0.0), 16.0);
    CHECK(r.one_pole->d0 == 0.0);
    CHECK(r.one_pole->hat_d == doctest::Approx(4.0));
  }
  CHECK_THROWS(one_pole_regions(kTwoTerm, DampingBound(0.5, 0.75), 10.0));
}

TEST_CASE("membership") {
  const auto r = one_pole_regions(kOnePole, DampingBound::constant(0.5), oracle::constant_b::w_min);
  CHECK(region_contains(r, Complex(r.c1, 0.0), 0.0));
  CHECK(region_contains(r, Complex(oracle::constant_b::pair_re, oracle::constant_b::pair_im), 1e-8));
  CHECK_FALSE(region_contains(r, Complex(1.0, 0.0), 1e-8));
  CHECK_FALSE(region_contains(r, Complex(-0.2, 1.0), 1e-8));
  CHECK(region_excess(r, Complex(r.one_pole->d0, 10.0)) == 0.0);
  CHECK(region_excess(r, Complex(-0.1, 10.0)) == doctest::Approx(-0.1 - oracle::constant_b::d1).epsilon(1e-9));
}

TEST_CASE("boundary cloud stays inside the one-pole region") {
  const DampingBound d(0.5, 0.75);
  const auto alphas = log_alpha_grid(oracle::graded::w_min, 1e4 * oracle::graded::w_min);
  CHECK(alphas.size() == 64);
  CHECK(alphas.front() == oracle::graded::w_min);
  const auto region = build_enclosure(kGraded, d, oracle::graded::w_min, alphas, 11);
  CHECK(region.boundary_cloud.size() == 64 * 11 * 3);
  for (const auto& z : region.boundary_cloud) {
    CHECK(region_contains(region, z, 1e-8 * (1.0 + std::abs(z))));
    CHECK(std::abs(std::conj(z) - z) >= 0.0);
  }
}

TEST_CASE("cloud with b_min = 0 reaches the imaginary axis") {
  const double alphas[] = {25.0};
  const auto cloud = boundary_cloud(kOnePole, DampingBound(0.0, 0.5), alphas, 3);
  bool hit = false;
  for (const auto& z : cloud) hit = hit || std::abs(z - Complex(0.0, 5.0)) < 1e-12;
  CHECK(hit);
}

TEST_CASE("general-N membership inverts the symbol") {
  const DampingBound d(0.5, 0.75);
  const double w = 2.0 * 9.869604401089358;
  const auto region = build_enclosure(kTwoTerm, d, w, std::vector<double>{w, 5.0 * w}, 5);
  CHECK_FALSE(region.one_pole);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double alpha = w * (1.0 + 50.0 * u(rng));
    const double beta = alpha * (0.5 + 0.25 * u(rng));
    for (const auto& z : mode_eigenvalues(kTwoTerm, ModeCoefficients(alpha, beta))) {
      CHECK(region_contains(region, z, 1e-8 * (1.0 + std::abs(z))));
    }
  }
  // Too much damping for any admissible beta.
  for (const auto& z : mode_eigenvalues(kTwoTerm, ModeCoefficients(3.0 * w, 0.95 * 3.0 * w))) {
    if (z.imag() != 0.0) CHECK_FALSE(region_contains(region, z, 1e-8));
  }
  CHECK_FALSE(region_contains(region, Complex(0.5, 3.0), 1e-8));
}
