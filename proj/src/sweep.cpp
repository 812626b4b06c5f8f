#include "gpspec/sweep.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpspec::sweep {

std::vector<std::vector<Complex>> mode_spectra(const ExponentialKernel& k,
                                               std::span<const ModeCoefficients> modes,
                                               Backend backend) {
  std::vector<std::vector<Complex>> out(modes.size());
  for_each_index(modes.size(), backend, [&](std::size_t i) { out[i] = mode_eigenvalues(k, modes[i]); });
  return out;
}

std::vector<ModeCoefficients> beta_grid(const DampingBound& d, std::span<const double> alphas,
                                        int samples_beta) {
  if (samples_beta < 1) throw std::invalid_argument("samples_beta must be at least 1");
  std::vector<ModeCoefficients> grid;
  grid.reserve(alphas.size() * static_cast<std::size_t>(samples_beta));
  for (double alpha : alphas) {
    for (int s = 0; s < samples_beta; ++s) {
      const double t = samples_beta == 1 ? 0.0 : static_cast<double>(s) / (samples_beta - 1);
      const double b_hat = d.b_min() + t * (d.b_max() - d.b_min());
      grid.push_back(ModeCoefficients::damped(alpha, b_hat));
    }
  }
  return grid;
}

std::vector<Complex> beta_cloud(const ExponentialKernel& k, const DampingBound& d,
                                std::span<const double> alphas, int samples_beta,
                                Backend backend) {
  const auto grid = beta_grid(d, alphas, samples_beta);
  const auto spectra = mode_spectra(k, grid, backend);
  std::vector<Complex> cloud;
  for (const auto& s : spectra) cloud.insert(cloud.end(), s.begin(), s.end());
  return cloud;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gpspec::sweep
