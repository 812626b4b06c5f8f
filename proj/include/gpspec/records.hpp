#pragma once

#include <optional>
#include <string>

#include "gpspec/kernel.hpp"

namespace gpspec {

enum class Branch { real, complex_pair };

inline const char* branch_name(Branch b) { return b == Branch::real ? "real" : "complex-pair"; }

/// One computed eigenvalue with its provenance.
struct EigenvalueRecord {
  Complex value;
  /// Mode indices "m1:m2" or "fd".
  std::string source;
  double residual = 0.0;
  Branch branch = Branch::real;
  /// Set for real eigenvalues where a Jordan check applies.
  std::optional<bool> jordan_ok;
  /// Mode alpha, or the Rayleigh quotient of the FD eigenvector.
  double alpha = 0.0;
};

}  // namespace gpspec
