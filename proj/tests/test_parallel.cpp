// The OpenMP kernels must reproduce the serial reference bit for bit.
#include <numbers>

#include "doctest.h"
#include "gpspec/enclosure.hpp"
#include "gpspec/pencil.hpp"
#include "gpspec/sweep.hpp"

using namespace gpspec;

TEST_CASE("mode spectra: serial and OpenMP agree exactly") {
  const ExponentialKernel k({{1.0, 1.0}, {0.2, 1.5}});
  const DampingBound d(0.5, 0.75);
  const auto alphas = log_alpha_grid(19.7, 1e4 * 19.7, 40);
  const auto grid = sweep::beta_grid(d, alphas, 7);
  CHECK(grid.size() == 280);
  CHECK(grid.front().beta() == doctest::Approx(0.5 * 19.7));
  const auto serial = sweep::mode_spectra(k, grid, Backend::serial);
  const auto parallel = sweep::mode_spectra(k, grid, Backend::openmp);
  CHECK(serial == parallel);
  CHECK(sweep::beta_cloud(k, d, alphas, 7, Backend::serial) == sweep::beta_cloud(k, d, alphas, 7, Backend::openmp));
  CHECK(sweep::max_threads() >= 1);
}

TEST_CASE("FD residual loop: serial and OpenMP agree exactly") {
  const auto nodes = sample_profile(paraboloid_profile(0.5, 0.75), 30);
  const auto ops = discretize_1d(1.0, nodes, DampingBound(0.5, 0.75));
  const ExponentialKernel k({{1.0, 1.0}});
  const auto s = nonlinear_eigenvalues_fd(ops.a, ops.a_b, k, 50.0, Backend::serial);
  const auto p = nonlinear_eigenvalues_fd(ops.a, ops.a_b, k, 50.0, Backend::openmp);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].value == p[i].value);
    CHECK(s[i].residual == p[i].residual);
  }
}

TEST_CASE("for_each_index rethrows from the parallel path") {
  CHECK_THROWS_AS(sweep::for_each_index(100, Backend::openmp,
                                        [](std::size_t i) {
                                          if (i == 37) throw std::runtime_error("boom");
                                        }),
                  std::runtime_error);
}
