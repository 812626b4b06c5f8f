#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpspec/kernel.hpp"
#include "gpspec/scalar.hpp"

namespace gpspec {

/// Malformed configuration. `field` is the JSON path of the offending entry.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

enum class DampingKind { constant, range, profile_1d };
enum class DomainKind { box, interval_fd };

struct DampingSpec {
  DampingKind kind = DampingKind::constant;
  double b_min = 0.0;
  double b_max = 0.0;
  /// profile_1d only: values on a uniform grid over the interval, endpoints included.
  std::vector<double> samples;

  DampingBound bound() const { return {b_min, b_max}; }
};

struct DomainSpec {
  DomainKind kind = DomainKind::box;
  /// box only.
  std::vector<double> lengths;
  /// interval_fd only.
  double length = 1.0;
  int grid_points = 0;
};

struct ProblemSpec {
  double coefficient_a = 1.0;
  ExponentialKernel kernel;
  DampingSpec damping;
  DomainSpec domain;
};

/// Parses and validates a JSON document. Throws ConfigError for malformed
/// input and HypothesisError when 1 - b_max sum a_j <= 0.
ProblemSpec parse_config_text(const std::string& text);

/// Reads `path` and calls parse_config_text.
ProblemSpec parse_config(const std::filesystem::path& path);

const char* damping_kind_name(DampingKind k);
const char* domain_kind_name(DomainKind k);

}  // namespace gpspec
