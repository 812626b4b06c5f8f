#include "gpspec/errors.hpp"

#include <sstream>

namespace gpspec {

namespace {

std::string pole_message(std::size_t j, std::complex<double> at) {
  std::ostringstream os;
  os << "evaluation point (" << at.real() << "," << at.imag() << ") hits pole -b_" << (j + 1);
  return os.str();
}

}  // namespace

PoleError::PoleError(std::size_t pole_index, std::complex<double> at)
    : DomainError(pole_message(pole_index, at)), pole_index_(pole_index), point_(at) {}

HypothesisError::HypothesisError(std::string assumption, std::string detail)
    : std::invalid_argument(assumption + ": " + detail), assumption_(std::move(assumption)) {}

ConvergenceError::ConvergenceError(const std::string& what, int iterations, double best_residual)
    : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                         ", best residual=" + std::to_string(best_residual) + ")"),
      iterations_(iterations),
      best_residual_(best_residual) {}

}  // namespace gpspec
