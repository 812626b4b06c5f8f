#include "gpspec/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gpspec/errors.hpp"

namespace gpspec {

namespace {

void require_margin(const ExponentialKernel& k, const DampingBound& d) {
  const double margin = k.dissipativity_margin(d.b_max());
  if (!(margin > 0.0)) {
    throw HypothesisError("1 > b_max * sum a_j", "dissipativity margin is " + std::to_string(margin));
  }
}

std::vector<double> damping_sweep(const DampingBound& d, int sweep_points) {
  if (sweep_points < 2) throw std::invalid_argument("sweep_points must be at least 2");
  if (d.is_constant()) return {std::max(d.b_min(), kSweepDampingFloor)};
  std::vector<double> grid(static_cast<std::size_t>(sweep_points));
  for (int i = 0; i < sweep_points; ++i) {
    const double t = static_cast<double>(i) / (sweep_points - 1);
    grid[static_cast<std::size_t>(i)] =
        std::max(d.b_min() + t * (d.b_max() - d.b_min()), kSweepDampingFloor);
  }
  grid.back() = std::max(d.b_max(), kSweepDampingFloor);
  return grid;
}

double distance_to_interval(double x, double lo, double hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

}  // namespace

EssentialSpectrum essential_spectrum(const ExponentialKernel& k, const DampingBound& d,
                                     int sweep_points) {
  require_margin(k, d);
  const auto grid = damping_sweep(d, sweep_points);
  const std::size_t n = k.size();
  std::vector<RealInterval> branch(n, {std::numeric_limits<double>::infinity(),
                                       -std::numeric_limits<double>::infinity()});
  EssentialSpectrum out;
  std::vector<double> previous;
  for (double b_hat : grid) {
    const auto zeros = f_real_zeros(k, b_hat);
    for (std::size_t j = 0; j < n; ++j) {
      branch[j].lo = std::min(branch[j].lo, zeros[j]);
      branch[j].hi = std::max(branch[j].hi, zeros[j]);
      if (!previous.empty() && zeros[j] < previous[j] - 1e-14 * (1.0 + std::abs(zeros[j]))) {
        out.monotone = false;
      }
    }
    previous = zeros;
  }
  std::sort(branch.begin(), branch.end(),
            [](const RealInterval& x, const RealInterval& y) { return x.lo < y.lo; });
  for (const auto& iv : branch) {
    if (!out.intervals.empty() && iv.lo - out.intervals.back().hi < kIntervalMergeGap) {
      out.intervals.back().hi = std::max(out.intervals.back().hi, iv.hi);
    } else {
      out.intervals.push_back(iv);
    }
  }
  return out;
}

std::pair<double, double> c_interval(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                     int sweep_points) {
  require_margin(k, d);
  if (!(w_min > 0.0)) throw DomainError("w_min must be positive");
  if (d.b_max() == 0.0) {
    // Undamped limit: the real roots collapse onto the poles.
    return {-k.largest_rate(), -k.smallest_rate()};
  }
  const double b_n = k.largest_rate();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * b_n;
  double c0 = std::numeric_limits<double>::infinity();
  double c1 = -std::numeric_limits<double>::infinity();
  for (double b_hat : damping_sweep(d, sweep_points)) {
    const auto p = symbol_polynomial(k, ModeCoefficients::damped(w_min, b_hat));
    for (double x : real_roots_in_interval(p, -b_n, 0.0, tol)) {
      c0 = std::min(c0, x);
      c1 = std::max(c1, x);
    }
  }
  const auto f_zeros = f_real_zeros(k, std::max(d.b_max(), kSweepDampingFloor));
  c1 = std::max(c1, f_zeros.back());
  if (!std::isfinite(c0)) {
    c0 = f_real_zeros(k, std::max(d.b_min(), kSweepDampingFloor)).front();
  }
  return {c0, c1};
}

EnclosureRegion one_pole_regions(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                 int sweep_points) {
  if (k.size() != 1) {
    throw std::invalid_argument("one-pole regions need a single-term kernel, got N = " +
                                std::to_string(k.size()));
  }
  const auto [c0, c1] = c_interval(k, d, w_min, sweep_points);
  const double b1 = k.term(0).rate;
  const double d0 = -0.5 * (b1 + c1);
  const double d1 = -0.5 * (b1 + c0);
  const double radicand = w_min - d0 * d0 - 2.0 * d0 * c0;
  if (!(radicand > 0.0)) {
    throw HypothesisError("w_min > d0^2 + 2 d0 c0",
                          "strip height radicand is " + std::to_string(radicand));
  }
  EnclosureRegion region;
  region.c0 = c0;
  region.c1 = c1;
  region.one_pole = OnePoleStrips{d0, d1, std::sqrt(radicand)};
  region.kernel_terms.assign(k.terms().begin(), k.terms().end());
  region.b_min = d.b_min();
  region.b_max = d.b_max();
  region.w_min = w_min;
  return region;
}

std::vector<Complex> boundary_cloud(const ExponentialKernel& k, const DampingBound& d,
                                    std::span<const double> alphas, int samples_beta,
                                    Backend backend) {
  require_margin(k, d);
  return sweep::beta_cloud(k, d, alphas, samples_beta, backend);
}

std::vector<double> log_alpha_grid(double w_min, double alpha_cap, int points) {
  if (!(w_min > 0.0) || !(alpha_cap >= w_min)) throw DomainError("alpha grid needs 0 < w_min <= alpha_cap");
  if (points < 1) throw std::invalid_argument("alpha grid needs at least one point");
  if (points == 1) return {w_min};
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = std::log(alpha_cap / w_min);
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = w_min * std::exp(ratio * i / (points - 1));
  }
  grid.front() = w_min;
  grid.back() = alpha_cap;
  return grid;
}

EnclosureRegion build_enclosure(const ExponentialKernel& k, const DampingBound& d, double w_min,
                                std::span<const double> alphas, int samples_beta, int sweep_points,
                                Backend backend) {
  EnclosureRegion region;
  if (k.size() == 1) {
    region = one_pole_regions(k, d, w_min, sweep_points);
  } else {
    const auto [c0, c1] = c_interval(k, d, w_min, sweep_points);
    region.c0 = c0;
    region.c1 = c1;
    region.kernel_terms.assign(k.terms().begin(), k.terms().end());
    region.b_min = d.b_min();
    region.b_max = d.b_max();
    region.w_min = w_min;
  }
  std::vector<double> grid;
  if (alphas.empty()) {
    grid = log_alpha_grid(w_min, kDefaultAlphaCapFactor * w_min);
    alphas = grid;
  }
  region.alpha_cap = *std::max_element(alphas.begin(), alphas.end());
  region.boundary_cloud = boundary_cloud(k, d, alphas, samples_beta, backend);
  return region;
}

double region_excess(const EnclosureRegion& region, Complex lambda, double real_axis_tol) {
  const double x = lambda.real();
  const double y = lambda.imag();
  const double on_axis = std::hypot(distance_to_interval(x, region.c0, region.c1), y);
  if (std::abs(y) <= real_axis_tol) return on_axis;

  if (region.one_pole) {
    const auto& s = *region.one_pole;
    const double dx = distance_to_interval(x, s.d0, s.d1);
    const double dy = std::max(0.0, s.hat_d - std::abs(y));
    return std::min(on_axis, std::hypot(dx, dy));
  }

  // r(lambda) = 0 is linear in (alpha, beta): Im gives beta, Re gives alpha.
  Complex kh = 0.0;
  for (const auto& t : region.kernel_terms) kh += t.amplitude * t.rate / (lambda + t.rate);
  const Complex l2 = lambda * lambda;
  if (kh.imag() == 0.0) return on_axis;
  const double beta = l2.imag() / kh.imag();
  const double alpha = beta * kh.real() - l2.real();
  const double scale = 1.0 + std::abs(alpha);
  double excess = std::max(0.0, region.w_min - alpha);
  excess = std::max(excess, region.b_min * alpha - beta);
  excess = std::max(excess, beta - region.b_max * alpha);
  excess = std::max(excess, -beta);
  return std::min(on_axis, excess / scale);
}

bool region_contains(const EnclosureRegion& region, Complex lambda, double tol) {
  return region_excess(region, lambda, tol) <= tol;
}

}  // namespace gpspec
