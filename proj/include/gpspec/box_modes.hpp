#pragma once

#include <span>
#include <string>
#include <vector>

namespace gpspec {

/// Box (0, l_1) x ... x (0, l_n), n in {1, 2, 3}.
class BoxDomain {
public:
  explicit BoxDomain(std::vector<double> lengths);

  std::size_t dimension() const noexcept { return lengths_.size(); }
  std::span<const double> lengths() const noexcept { return lengths_; }

private:
  std::vector<double> lengths_;
};

/// Dirichlet eigenmode of -a Laplace on a box.
struct Mode {
  std::vector<int> indices;
  double alpha;

  /// "m1:m2:..." for provenance columns.
  std::string label() const;
};

/// a * pi^2 * sum_j m_j^2 / l_j^2.
double mode_alpha(double a, const BoxDomain& box, std::span<const int> indices);

struct ModeEnumeration {
  std::vector<Mode> modes;
  bool cap_below_ground = false;
};

/// Every mode with alpha <= alpha_cap, ascending in alpha, ties broken
/// lexicographically on the indices. Each distinct index tuple is its own entry.
ModeEnumeration enumerate_modes(double a, const BoxDomain& box, double alpha_cap);

/// Smallest eigenvalue, at indices (1, ..., 1).
double w_min(double a, const BoxDomain& box);

}  // namespace gpspec
