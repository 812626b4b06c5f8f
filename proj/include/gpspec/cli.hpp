#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gpspec/enclosure.hpp"
#include "gpspec/pencil.hpp"
#include "gpspec/problem.hpp"
#include "gpspec/records.hpp"
#include "gpspec/sweep.hpp"

namespace gpspec::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitConfig = 2 };

enum class Format { csv, json };

struct Options {
  /// Defaults to default_alpha_cap(w_min, imag_cap).
  std::optional<double> alpha_cap;
  double imag_cap = 50.0;
  int sweep = kDefaultSweepPoints;
  int beta_samples = 11;
  std::optional<Format> format;
  /// Relative tolerance for record residuals and region membership.
  double tolerance = 1e-8;
  Backend backend = Backend::openmp;
};

/// 2 imag_cap^2 + w_min: a mode with alpha above this has |Im lambda| > imag_cap.
double default_alpha_cap(double w_min, double imag_cap);

/// Smallest stiffness eigenvalue: the box ground mode, or lambda_min(A) of the FD grid.
double problem_w_min(const ProblemSpec& spec);

/// b at the M + 2 FD nodes for an interval_fd problem.
std::vector<double> fd_damping_nodes(const ProblemSpec& spec);

/// Membership tolerance for lambda: tol (1 + |lambda|).
double membership_tol(double tol, Complex lambda);

struct EigsResult {
  std::vector<EigenvalueRecord> records;
  double alpha_cap = 0.0;
  std::size_t modes = 0;
};

/// Constant-damping box problem, mode by mode. Throws ConfigError otherwise.
EigsResult run_eigs(const ProblemSpec& spec, const Options& opts);

struct CloudPoint {
  Complex value;
  double alpha;
  double beta;
};

struct EnclosureResult {
  EssentialSpectrum essential;
  EnclosureRegion region;
  std::vector<CloudPoint> cloud;
  std::size_t outside = 0;
  double max_violation = 0.0;
};

/// Region plus the (alpha, beta) cloud: box mode alphas up to alpha_cap, or
/// a log grid for interval_fd problems.
EnclosureResult run_enclosure(const ProblemSpec& spec, const Options& opts);

struct Containment {
  std::size_t inside = 0;
  std::size_t outside = 0;
  double max_violation = 0.0;
};

struct DiscretizeResult {
  std::vector<EigenvalueRecord> records;
  EnclosureRegion region;
  Containment containment;
  double w_min = 0.0;
};

/// FD graded problem. Throws ConfigError for a box domain or (N+2)M > 2000.
DiscretizeResult run_discretize(const ProblemSpec& spec, const Options& opts);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Invariant suite; every check is reported, failed or not.
std::vector<Check> run_validate(const ProblemSpec& spec, const Options& opts);

/// Shortest round-trip form, at most 12 significant digits.
std::string format_csv_number(double x);

void write_records_csv(std::ostream& out, const std::vector<EigenvalueRecord>& records);
void write_records_json(std::ostream& out, const std::vector<EigenvalueRecord>& records, double alpha_cap);
void write_essential(std::ostream& out, const EssentialSpectrum& es, Format format);
void write_enclosure(std::ostream& out, const EnclosureResult& r, Format format);
void write_discretize(std::ostream& out, const DiscretizeResult& r, Format format);
void write_validation(std::ostream& out, const std::vector<Check>& checks, Format format);

/// Entry point of the gpspec executable. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpspec::cli
