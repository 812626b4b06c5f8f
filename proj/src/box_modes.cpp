#include "gpspec/box_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpspec/errors.hpp"

namespace gpspec {

BoxDomain::BoxDomain(std::vector<double> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty() || lengths_.size() > 3) {
    throw std::invalid_argument("box dimension must be 1, 2 or 3");
  }
  for (double l : lengths_) {
    if (!std::isfinite(l) || !(l > 0.0)) throw std::invalid_argument("box lengths must be positive");
  }
}

std::string Mode::label() const {
  std::string s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ':';
    s += std::to_string(indices[i]);
  }
  return s;
}

double mode_alpha(double a, const BoxDomain& box, std::span<const int> indices) {
  if (!(a > 0.0)) throw DomainError("coefficient a must be positive");
  if (indices.size() != box.dimension()) throw DomainError("mode index count must match box dimension");
  double sum = 0.0;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1) throw DomainError("mode indices must be positive");
    const double m = indices[j];
    const double l = box.lengths()[j];
    sum += m * m / (l * l);
  }
  return a * std::numbers::pi * std::numbers::pi * sum;
}

double w_min(double a, const BoxDomain& box) {
  const std::vector<int> ones(box.dimension(), 1);
  return mode_alpha(a, box, ones);
}

ModeEnumeration enumerate_modes(double a, const BoxDomain& box, double alpha_cap) {
  ModeEnumeration out;
  if (alpha_cap < w_min(a, box)) {
    out.cap_below_ground = true;
    return out;
  }
  const std::size_t n = box.dimension();
  const double scale = std::sqrt(alpha_cap / (a * std::numbers::pi * std::numbers::pi));
  std::vector<int> bound(n);
  for (std::size_t j = 0; j < n; ++j) {
    bound[j] = static_cast<int>(std::floor(box.lengths()[j] * scale)) + 1;
  }

  std::vector<int> idx(n, 1);
  while (true) {
    const double alpha = mode_alpha(a, box, idx);
    if (alpha <= alpha_cap) out.modes.push_back({idx, alpha});
    std::size_t j = n;
    while (j-- > 0) {
      if (++idx[j] <= bound[j]) break;
      idx[j] = 1;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  std::sort(out.modes.begin(), out.modes.end(), [](const Mode& x, const Mode& y) {
    if (x.alpha != y.alpha) return x.alpha < y.alpha;
    return x.indices < y.indices;
  });
  return out;
}

}  // namespace gpspec
