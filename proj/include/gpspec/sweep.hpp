#pragma once

// Data-parallel kernels. Every kernel has a serial reference path and an
// OpenMP path; both write into pre-sized slots so the output order never
// depends on the schedule, and tests compare them element for element.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "gpspec/kernel.hpp"
#include "gpspec/scalar.hpp"

namespace gpspec {

enum class Backend { serial, openmp };

namespace sweep {

/// Runs body(i) for i in [0, count). Under Backend::openmp the first
/// exception thrown by any iteration is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t count, Backend backend, Body&& body) {
  if (backend == Backend::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(gpspec_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// mode_eigenvalues for every entry, in input order.
std::vector<std::vector<Complex>> mode_spectra(const ExponentialKernel& k,
                                               std::span<const ModeCoefficients> modes,
                                               Backend backend);

/// (alpha, beta) sample grid: for each alpha, `samples_beta` values of beta
/// spread uniformly over [b_min alpha, b_max alpha] (b_min alpha when
/// samples_beta == 1). Alpha-major order.
std::vector<ModeCoefficients> beta_grid(const DampingBound& d, std::span<const double> alphas,
                                        int samples_beta);

/// Flattened mode_eigenvalues over beta_grid, alpha-major, each spectrum in root order.
std::vector<Complex> beta_cloud(const ExponentialKernel& k, const DampingBound& d,
                                std::span<const double> alphas, int samples_beta,
                                Backend backend);

int max_threads();

}  // namespace sweep
}  // namespace gpspec
