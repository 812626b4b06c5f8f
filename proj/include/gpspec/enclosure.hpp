#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpspec/kernel.hpp"
#include "gpspec/scalar.hpp"
#include "gpspec/sweep.hpp"

namespace gpspec {

inline constexpr int kDefaultSweepPoints = 129;
inline constexpr int kDefaultAlphaGridPoints = 64;
inline constexpr double kDefaultAlphaCapFactor = 1e4;
/// Smallest damping value used in sweeps; b_hat = 0 makes f identically 1.
inline constexpr double kSweepDampingFloor = 1e-8;
/// Branch intervals closer than this are merged.
inline constexpr double kIntervalMergeGap = 1e-10;

struct RealInterval {
  double lo;
  double hi;
};

/// Essential spectrum: at most N disjoint closed intervals in (-b_N, 0), ascending.
struct EssentialSpectrum {
  std::vector<RealInterval> intervals;
  /// Every branch zero was non-decreasing in b_hat along the sweep.
  bool monotone = true;
};

/// Union over b_hat in [b_min, b_max] of the real zeros of f, swept on
/// `sweep_points` values and enveloped per branch. Throws HypothesisError
/// when 1 - b_max sum a_j <= 0.
EssentialSpectrum essential_spectrum(const ExponentialKernel& k, const DampingBound& d,
                                     int sweep_points = kDefaultSweepPoints);

/// [c0, c1]: the real part of the numerical-range enclosure for alpha >= w_min.
std::pair<double, double> c_interval(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                     int sweep_points = kDefaultSweepPoints);

/// Vertical half-strips Re in [d0, d1], |Im| >= hat_d of the one-pole case.
struct OnePoleStrips {
  double d0;
  double d1;
  double hat_d;
};

/// Computed enclosure S0 u S+ u S- (one pole) or [c0, c1] plus a sampled
/// cloud (general N).
struct EnclosureRegion {
  double c0 = 0.0;
  double c1 = 0.0;
  std::optional<OnePoleStrips> one_pole;
  std::vector<Complex> boundary_cloud;
  double alpha_cap = 0.0;

  // Problem data for the general-N membership test.
  std::vector<KernelTerm> kernel_terms;
  double b_min = 0.0;
  double b_max = 0.0;
  double w_min = 0.0;
};

/// One-pole regions from c_interval: d0 = -(b1 + c1)/2, d1 = -(b1 + c0)/2,
/// hat_d = sqrt(w_min - d0^2 - 2 d0 c0). Rejects N != 1.
EnclosureRegion one_pole_regions(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                 int sweep_points = kDefaultSweepPoints);

/// All mode eigenvalues over the (alpha, beta) grid. Conjugate-closed.
std::vector<Complex> boundary_cloud(const ExponentialKernel& k, const DampingBound& d,
                                    std::span<const double> alphas, int samples_beta,
                                    Backend backend = Backend::openmp);

/// `points` log-spaced values from w_min to alpha_cap inclusive.
std::vector<double> log_alpha_grid(double w_min, double alpha_cap,
                                   int points = kDefaultAlphaGridPoints);

/// Full region: c-interval, strips when N = 1, and the boundary cloud over
/// `alphas` (or the default log grid up to 1e4 * w_min when empty).
EnclosureRegion build_enclosure(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                std::span<const double> alphas, int samples_beta,
                                int sweep_points = kDefaultSweepPoints,
                                Backend backend = Backend::openmp);

/// How far lambda lies outside the region; 0 inside. For the one-pole region
/// this is the Euclidean distance to S0 u S+ u S-. For general N, real points
/// use the distance to [c0, c1], and complex points are inverted to the unique
/// (alpha, beta) with r(lambda) = 0 and measured by their relative violation of
/// alpha >= w_min and b_min alpha <= beta <= b_max alpha.
double region_excess(const EnclosureRegion& region, Complex lambda, double real_axis_tol = 0.0);

/// region_excess(region, lambda, tol) <= tol.
bool region_contains(const EnclosureRegion& region, Complex lambda, double tol);

}  // namespace gpspec
