#pragma once

// Finite matrix realizations of the block operator functions for one scalar
// mode (alpha, beta), plus a 1D finite-difference graded problem.
//
// Index layout of the (N+1)x(N+1) P(lambda): 0 is the T_a row, 1..N the pole rows.
// T~(lambda) and S~ are (N+2)x(N+2) with rows [first, second, poles...].

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gpspec/kernel.hpp"
#include "gpspec/records.hpp"
#include "gpspec/scalar.hpp"
#include "gpspec/sweep.hpp"

namespace gpspec {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest matrix dense_eigenvalues and the FD solver accept.
inline constexpr int kMaxDenseSize = 2000;

/// Scalar-mode instance of the block pencils.
class ModePencil {
public:
  ModePencil(ExponentialKernel kernel, double alpha, double beta);

  const ExponentialKernel& kernel() const noexcept { return kernel_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  std::size_t poles() const noexcept { return kernel_.size(); }
  /// N + 2.
  std::size_t size() const noexcept { return kernel_.size() + 2; }
  /// B_j = sqrt(a_j b_j beta).
  double coupling(std::size_t j) const;

private:
  ExponentialKernel kernel_;
  double alpha_;
  double beta_;
};

/// [[alpha + lambda^2, B], [B^T, D + lambda]], D = diag(b_j).
ComplexMatrix build_P(const ModePencil& mp, Complex lambda);

/// [[-lambda, -alpha, -B], [1, -lambda, 0], [0, B^T, D + lambda]].
ComplexMatrix build_tildeT(const ModePencil& mp, Complex lambda);

/// diag(P(lambda), W(lambda)) with W(lambda) = -lambda in the last slot.
ComplexMatrix build_P_W(const ModePencil& mp, Complex lambda);

/// Residuals of the two extension identities. The second one needs
/// lambda != 0 and is skipped (nullopt) at lambda = 0.
struct EquivalenceResidual {
  /// |P~_W - E P_W E^T|, E the permutation moving W next to the T_a row.
  double permutation = 0.0;
  /// |P~_W - E~(lambda) T~(lambda) F~(lambda)|.
  std::optional<double> factorization;
  double max() const { return factorization ? std::max(permutation, *factorization) : permutation; }
};

EquivalenceResidual verify_equivalence(const ModePencil& mp, Complex lambda);

/// Constant matrix S~ = [[0, 1, 0], [-alpha, 0, -B^], [-C^, 0, -D]] with
/// B^_j = C^_j = sqrt(a_j b_j beta). det(S~ - lambda) = (-1)^(N+2) p(lambda).
RealMatrix build_system_operator(const ModePencil& mp);

/// All eigenvalues, sorted by (re, im). Each one is checked by
/// |(M - mu) v| <= tol |M| with an eigenvector v, refined by inverse
/// iteration if needed. Throws ConvergenceError on failure.
std::vector<Complex> dense_eigenvalues(const RealMatrix& m, double tol = 1e-10);
std::vector<Complex> dense_eigenvalues(const ComplexMatrix& m, double tol = 1e-10);

/// v = [v1, -(b_j + lambda)^{-1} B_j v1]. Throws PoleError at a pole and
/// PreconditionError when |P(lambda) v| > tol (1 + alpha) |v|.
ComplexVector lift_eigenvector_P(const ModePencil& mp, Complex lambda, Complex v1, double tol = 1e-9);

/// v = [lambda v2, v2, v3] from a P-eigenvector [v2, v3]. Rejects zero input
/// and inputs with |P(lambda) v23| > tol (1 + alpha) |v23|.
ComplexVector lift_eigenvector_tildeT(const ModePencil& mp, Complex lambda, const ComplexVector& v23,
                                      double tol = 1e-9);

/// Drops the first block of a T~-eigenvector.
ComplexVector project_tildeT_to_P(const ComplexVector& v);

/// Stiffness matrix A and damping matrix A_b of the FD Dirichlet problem.
struct FdOperators {
  RealMatrix a;
  RealMatrix a_b;
  double h = 0.0;
};

/// 3-point Dirichlet FD on (0, length) with M = b_nodes.size() - 2 interior
/// points. b_nodes holds b at x_i = i h, i = 0..M+1, h = length/(M+1).
/// A = c tridiag(-1, 2, -1), c = a/h^2; A_b is the flux form with face values
/// (b_i + b_{i+1})/2, so constant b gives A_b = b A exactly.
/// Throws HypothesisError when a sample leaves [b_min, b_max].
FdOperators discretize_1d(double a, std::span<const double> b_nodes, const DampingBound& range,
                          double length = 1.0);

/// b at the M + 2 nodes x_i = i length/(M+1).
std::vector<double> sample_profile(const std::function<double(double)>& b, int m, double length = 1.0);

/// b(x) = b_max - 2 (b_max - b_min) (x/length - 1/2)^2, in [(b_min + b_max)/2, b_max].
std::function<double(double)> paraboloid_profile(double b_min, double b_max, double length = 1.0);

/// Linear interpolation of samples on a uniform grid over [0, length].
std::function<double(double)> tabulated_profile(std::vector<double> samples, double length = 1.0);

/// |A| in the induced infinity norm.
double inf_norm(const RealMatrix& a);

/// Residual |(lambda^2 I + A - Khat(lambda) A_b) v| / |v|.
double fd_residual(const RealMatrix& a, const RealMatrix& a_b, const ExponentialKernel& k,
                   Complex lambda, const ComplexVector& v);

/// Eigenvalues of lambda^2 I + A - Khat(lambda) A_b with |Im| <= imag_cap,
/// from the block companion matrix of the cleared matrix polynomial
/// (lambda^2 I + A) pi(lambda) - sigma(lambda) A_b. Each record passes
/// residual <= 1e-6 |A|; near-pole roots that fail it are dropped.
/// Records are sorted by (alpha, branch, re, im).
std::vector<EigenvalueRecord> nonlinear_eigenvalues_fd(const RealMatrix& a, const RealMatrix& a_b,
                                                       const ExponentialKernel& k, double imag_cap,
                                                       Backend backend = Backend::openmp);

/// Relative residual threshold of nonlinear_eigenvalues_fd.
inline constexpr double kFdResidualFactor = 1e-6;

}  // namespace gpspec
