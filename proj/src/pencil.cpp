#include "gpspec/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gpspec/errors.hpp"
#include "gpspec/polynomial.hpp"

namespace gpspec {

namespace {

constexpr int kInverseIterations = 3;
constexpr int kNonlinearRefineSteps = 30;

template <typename Matrix>
double matrix_norm(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

template <typename Matrix>
double eigen_residual(const Matrix& m, Complex mu, const ComplexVector& v) {
  const ComplexVector r = m.template cast<Complex>() * v - mu * v;
  return r.norm() / v.norm();
}

// Shifted inverse iteration from v; returns the best vector found.
template <typename Matrix>
ComplexVector inverse_iteration(const Matrix& m, Complex mu, ComplexVector v, double norm) {
  const auto n = m.rows();
  const double eps = std::numeric_limits<double>::epsilon();
  const Complex shift = mu + Complex(64.0 * eps * (1.0 + norm), 0.0);
  ComplexMatrix shifted = m.template cast<Complex>();
  shifted.diagonal().array() -= shift;
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
  if (v.norm() == 0.0 || !v.allFinite()) v = ComplexVector::Ones(n);
  ComplexVector best = v / v.norm();
  double best_res = eigen_residual(m, mu, best);
  for (int it = 0; it < kInverseIterations; ++it) {
    ComplexVector x = lu.solve(best);
    if (!x.allFinite() || x.norm() == 0.0) break;
    x /= x.norm();
    const double res = eigen_residual(m, mu, x);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
  }
  return best;
}

template <typename Matrix>
std::vector<Complex> checked_eigenvalues(const Matrix& m, const ComplexVector& values,
                                         const ComplexMatrix& vectors, double tol) {
  const double norm = matrix_norm(m);
  std::vector<Complex> out(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const Complex mu = values(i);
    if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) {
      throw ConvergenceError("dense_eigenvalues: non-finite eigenvalue", 0,
                             std::numeric_limits<double>::infinity());
    }
    ComplexVector v = vectors.col(i);
    double res = v.norm() > 0.0 ? eigen_residual(m, mu, v) : std::numeric_limits<double>::infinity();
    if (!(res <= tol * norm)) {
      v = inverse_iteration(m, mu, v, norm);
      res = eigen_residual(m, mu, v);
    }
    if (!(res <= tol * norm)) {
      throw ConvergenceError("dense_eigenvalues: eigenpair " + std::to_string(i) +
                                 " failed the residual check",
                             kInverseIterations, res / std::max(norm, 1e-300));
    }
    out[static_cast<std::size_t>(i)] = mu;
  }
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

void check_dense_input(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || rows < 1) throw std::invalid_argument("dense_eigenvalues needs a nonempty square matrix");
  if (rows > kMaxDenseSize) {
    throw std::invalid_argument("matrix size " + std::to_string(rows) + " exceeds " +
                                std::to_string(kMaxDenseSize));
  }
}

double scaled(double tol, double alpha) { return tol * (1.0 + alpha); }

}  // namespace

ModePencil::ModePencil(ExponentialKernel kernel, double alpha, double beta)
    : kernel_(std::move(kernel)), alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw DomainError("mode pencil needs alpha > 0");
  if (!std::isfinite(beta) || beta < 0.0) throw DomainError("mode pencil needs beta >= 0");
}

double ModePencil::coupling(std::size_t j) const {
  const auto& t = kernel_.term(j);
  return std::sqrt(t.amplitude * t.rate * beta_);
}

ComplexMatrix build_P(const ModePencil& mp, Complex lambda) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  ComplexMatrix p = ComplexMatrix::Zero(n + 1, n + 1);
  p(0, 0) = mp.alpha() + lambda * lambda;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = mp.coupling(static_cast<std::size_t>(j));
    p(0, j + 1) = b;
    p(j + 1, 0) = b;
    p(j + 1, j + 1) = mp.kernel().term(static_cast<std::size_t>(j)).rate + lambda;
  }
  return p;
}

ComplexMatrix build_tildeT(const ModePencil& mp, Complex lambda) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  ComplexMatrix t = ComplexMatrix::Zero(n + 2, n + 2);
  t(0, 0) = -lambda;
  t(0, 1) = -mp.alpha();
  t(1, 0) = 1.0;
  t(1, 1) = -lambda;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = mp.coupling(static_cast<std::size_t>(j));
    t(0, j + 2) = -b;
    t(j + 2, 1) = b;
    t(j + 2, j + 2) = mp.kernel().term(static_cast<std::size_t>(j)).rate + lambda;
  }
  return t;
}

ComplexMatrix build_P_W(const ModePencil& mp, Complex lambda) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  ComplexMatrix pw = ComplexMatrix::Zero(n + 2, n + 2);
  pw.topLeftCorner(n + 1, n + 1) = build_P(mp, lambda);
  pw(n + 1, n + 1) = -lambda;
  return pw;
}

EquivalenceResidual verify_equivalence(const ModePencil& mp, Complex lambda) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  const auto size = n + 2;

  // P~_W: the W slot sits at index 1, poles follow.
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(size));
  perm[0] = 0;
  perm[1] = n + 1;
  for (Eigen::Index j = 0; j < n; ++j) perm[static_cast<std::size_t>(j + 2)] = j + 1;
  Eigen::PermutationMatrix<Eigen::Dynamic> e(size);
  for (Eigen::Index i = 0; i < size; ++i) e.indices()(perm[static_cast<std::size_t>(i)]) = i;

  const ComplexMatrix pw = build_P_W(mp, lambda);
  ComplexMatrix tilde_pw(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      tilde_pw(i, j) = pw(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }

  EquivalenceResidual out;
  const ComplexMatrix permuted = e * pw * e.transpose();
  out.permutation = (tilde_pw - permuted).cwiseAbs().maxCoeff();

  if (lambda == Complex(0.0, 0.0)) return out;
  ComplexMatrix e_t = ComplexMatrix::Identity(size, size);
  e_t(0, 0) = -1.0;
  e_t(0, 1) = -lambda;
  e_t(1, 1) = -lambda;
  ComplexMatrix f_t = ComplexMatrix::Identity(size, size);
  f_t(0, 0) = lambda;
  f_t(0, 1) = 1.0;
  f_t(1, 0) = 1.0;
  f_t(1, 1) = 0.0;
  const ComplexMatrix product = e_t * build_tildeT(mp, lambda) * f_t;
  out.factorization = (tilde_pw - product).cwiseAbs().maxCoeff();
  return out;
}

RealMatrix build_system_operator(const ModePencil& mp) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  RealMatrix s = RealMatrix::Zero(n + 2, n + 2);
  s(0, 1) = 1.0;
  s(1, 0) = -mp.alpha();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = mp.coupling(static_cast<std::size_t>(j));
    s(1, j + 2) = -b;
    s(j + 2, 0) = -b;
    s(j + 2, j + 2) = -mp.kernel().term(static_cast<std::size_t>(j)).rate;
  }
  return s;
}

std::vector<Complex> dense_eigenvalues(const RealMatrix& m, double tol) {
  check_dense_input(m.rows(), m.cols());
  if (!m.allFinite()) throw std::invalid_argument("dense_eigenvalues: non-finite entry");
  Eigen::EigenSolver<RealMatrix> es(m, true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense_eigenvalues: real Schur iteration did not converge",
                           static_cast<int>(m.rows()) * 40, std::numeric_limits<double>::infinity());
  }
  return checked_eigenvalues(m, es.eigenvalues(), es.eigenvectors(), tol);
}

std::vector<Complex> dense_eigenvalues(const ComplexMatrix& m, double tol) {
  check_dense_input(m.rows(), m.cols());
  if (!m.allFinite()) throw std::invalid_argument("dense_eigenvalues: non-finite entry");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense_eigenvalues: complex Schur iteration did not converge",
                           static_cast<int>(m.rows()) * 30, std::numeric_limits<double>::infinity());
  }
  return checked_eigenvalues(m, es.eigenvalues(), es.eigenvectors(), tol);
}

ComplexVector lift_eigenvector_P(const ModePencil& mp, Complex lambda, Complex v1, double tol) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  const auto [pole, dist] = mp.kernel().nearest_pole(lambda);
  if (dist <= kPoleGuard) throw PoleError(pole, lambda);
  if (v1 == Complex(0.0, 0.0)) throw PreconditionError("lift_eigenvector_P: v1 must be nonzero");
  ComplexVector v(n + 1);
  v(0) = v1;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double rate = mp.kernel().term(static_cast<std::size_t>(j)).rate;
    v(j + 1) = -mp.coupling(static_cast<std::size_t>(j)) * v1 / (rate + lambda);
  }
  const double res = (build_P(mp, lambda) * v).norm();
  if (!(res <= scaled(tol, mp.alpha()) * v.norm())) {
    throw PreconditionError("lift_eigenvector_P: lambda is not an eigenvalue (residual " +
                            std::to_string(res / v.norm()) + ")");
  }
  return v;
}

ComplexVector lift_eigenvector_tildeT(const ModePencil& mp, Complex lambda, const ComplexVector& v23,
                                      double tol) {
  const auto n = static_cast<Eigen::Index>(mp.poles());
  if (v23.size() != n + 1) throw std::invalid_argument("lift_eigenvector_tildeT: v23 must have N + 1 entries");
  if (v23.norm() == 0.0) throw PreconditionError("lift_eigenvector_tildeT: zero vector");
  const double res_p = (build_P(mp, lambda) * v23).norm();
  if (!(res_p <= scaled(tol, mp.alpha()) * v23.norm())) {
    throw PreconditionError("lift_eigenvector_tildeT: input is not a P-eigenvector (residual " +
                            std::to_string(res_p / v23.norm()) + ")");
  }
  ComplexVector v(n + 2);
  v(0) = lambda * v23(0);
  v.tail(n + 1) = v23;
  return v;
}

ComplexVector project_tildeT_to_P(const ComplexVector& v) {
  if (v.size() < 2) throw std::invalid_argument("project_tildeT_to_P: vector too short");
  return v.tail(v.size() - 1);
}

FdOperators discretize_1d(double a, std::span<const double> b_nodes, const DampingBound& range,
                          double length) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("coefficient a must be positive");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("interval length must be positive");
  if (b_nodes.size() < 5) throw std::invalid_argument("discretize_1d needs M >= 3 interior points");
  const double slack = 1e-12 * (1.0 + range.b_max());
  for (std::size_t i = 0; i < b_nodes.size(); ++i) {
    const double b = b_nodes[i];
    if (!std::isfinite(b) || b < range.b_min() - slack || b > range.b_max() + slack) {
      throw HypothesisError("b(x) in [b_min, b_max]", "profile value " + std::to_string(b) +
                                                          " at node " + std::to_string(i) +
                                                          " is out of range");
    }
  }
  const auto m = static_cast<Eigen::Index>(b_nodes.size() - 2);
  FdOperators ops;
  ops.h = length / static_cast<double>(m + 1);
  const double c = a / (ops.h * ops.h);
  ops.a = RealMatrix::Zero(m, m);
  ops.a_b = RealMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    // Node x_{i+1}; faces at i+1/2 and i+3/2.
    const double left = 0.5 * (b_nodes[static_cast<std::size_t>(i)] + b_nodes[static_cast<std::size_t>(i + 1)]);
    const double right = 0.5 * (b_nodes[static_cast<std::size_t>(i + 1)] + b_nodes[static_cast<std::size_t>(i + 2)]);
    ops.a(i, i) = 2.0 * c;
    ops.a_b(i, i) = c * (left + right);
    if (i > 0) {
      ops.a(i, i - 1) = -c;
      ops.a_b(i, i - 1) = -c * left;
    }
    if (i + 1 < m) {
      ops.a(i, i + 1) = -c;
      ops.a_b(i, i + 1) = -c * right;
    }
  }
  return ops;
}

std::vector<double> sample_profile(const std::function<double(double)>& b, int m, double length) {
  if (m < 1) throw std::invalid_argument("sample_profile needs m >= 1");
  std::vector<double> nodes(static_cast<std::size_t>(m + 2));
  const double h = length / (m + 1);
  for (int i = 0; i < m + 2; ++i) nodes[static_cast<std::size_t>(i)] = b(i * h);
  return nodes;
}

std::function<double(double)> paraboloid_profile(double b_min, double b_max, double length) {
  return [=](double x) {
    const double s = x / length - 0.5;
    return b_max - 2.0 * (b_max - b_min) * s * s;
  };
}

std::function<double(double)> tabulated_profile(std::vector<double> samples, double length) {
  if (samples.empty()) throw std::invalid_argument("tabulated profile needs samples");
  return [s = std::move(samples), length](double x) {
    if (s.size() == 1) return s.front();
    const double t = std::clamp(x / length, 0.0, 1.0) * static_cast<double>(s.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(t), s.size() - 2);
    const double w = t - static_cast<double>(i);
    return (1.0 - w) * s[i] + w * s[i + 1];
  };
}

double inf_norm(const RealMatrix& a) { return matrix_norm(a); }

double fd_residual(const RealMatrix& a, const RealMatrix& a_b, const ExponentialKernel& k,
                   Complex lambda, const ComplexVector& v) {
  const Complex kh = k.laplace(lambda);
  const ComplexVector r = lambda * lambda * v + a.cast<Complex>() * v - kh * (a_b.cast<Complex>() * v);
  return r.norm() / v.norm();
}

namespace {

// Nonlinear inverse iteration on T(lambda) = lambda^2 I + A - Khat(lambda) A_b.
bool refine_fd_pair(const RealMatrix& a, const RealMatrix& a_b, const ExponentialKernel& k,
                    Complex& lambda, ComplexVector& v, double target) {
  const ComplexMatrix ac = a.cast<Complex>();
  const ComplexMatrix abc = a_b.cast<Complex>();
  ComplexVector w = v / v.norm();
  v = w;
  for (int it = 0; it < kNonlinearRefineSteps; ++it) {
    Complex kh;
    Complex dkh;
    try {
      kh = k.laplace(lambda);
      dkh = k.laplace_derivative(lambda);
    } catch (const PoleError&) {
      return false;
    }
    ComplexMatrix t = ac - kh * abc;
    t.diagonal().array() += lambda * lambda;
    ComplexMatrix dt = -dkh * abc;
    dt.diagonal().array() += 2.0 * lambda;
    const ComplexVector x = Eigen::PartialPivLU<ComplexMatrix>(t).solve(dt * v);
    const Complex s = w.dot(x);
    if (!x.allFinite() || s == Complex(0.0, 0.0)) return false;
    lambda -= 1.0 / s;
    v = x / s;
    if (fd_residual(a, a_b, k, lambda, v) <= target) return true;
  }
  return false;
}

}  // namespace

std::vector<EigenvalueRecord> nonlinear_eigenvalues_fd(const RealMatrix& a, const RealMatrix& a_b,
                                                       const ExponentialKernel& k, double imag_cap,
                                                       Backend backend) {
  const auto m = a.rows();
  if (a.cols() != m || a_b.rows() != m || a_b.cols() != m || m < 1) {
    throw std::invalid_argument("A and A_b must be square and of equal size");
  }
  const auto d = static_cast<Eigen::Index>(k.size() + 2);
  if (d * m > kMaxDenseSize) {
    throw std::invalid_argument("companion size (N+2)M = " + std::to_string(d * m) + " exceeds " +
                                std::to_string(kMaxDenseSize));
  }

  // Q(lambda) = sum_k lambda^k Q_k, Q_k = pi_{k-2} I + pi_k A - sigma_k A_b, Q_d = I.
  const RealPolynomial pi_poly = pole_polynomial(k);
  const RealPolynomial sigma_poly = transform_numerator(k);
  const auto pi = pi_poly.coeffs();
  const auto sigma = sigma_poly.coeffs();
  auto coef = [](std::span<const double> c, Eigen::Index i) {
    return i >= 0 && static_cast<std::size_t>(i) < c.size() ? c[static_cast<std::size_t>(i)] : 0.0;
  };
  RealMatrix comp = RealMatrix::Zero(d * m, d * m);
  for (Eigen::Index blk = 0; blk + 1 < d; ++blk) {
    comp.block(blk * m, (blk + 1) * m, m, m).setIdentity();
  }
  for (Eigen::Index kk = 0; kk < d; ++kk) {
    RealMatrix q = coef(pi, kk) * a - coef(sigma, kk) * a_b;
    q.diagonal().array() += coef(pi, kk - 2);
    comp.block((d - 1) * m, kk * m, m, m) = -q;
  }

  Eigen::EigenSolver<RealMatrix> es(comp, true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("nonlinear_eigenvalues_fd: companion eigensolver did not converge",
                           static_cast<int>(d * m) * 40, std::numeric_limits<double>::infinity());
  }
  const ComplexVector values = es.eigenvalues();
  const ComplexMatrix vectors = es.eigenvectors();

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i).imag()) <= imag_cap) kept.push_back(i);
  }

  const double target = kFdResidualFactor * inf_norm(a);
  std::vector<std::optional<EigenvalueRecord>> slots(kept.size());
  sweep::for_each_index(kept.size(), backend, [&](std::size_t s) {
    Complex lambda = values(kept[s]);
    ComplexVector v = vectors.col(kept[s]).head(m);
    if (v.norm() == 0.0) return;
    v /= v.norm();
    double res;
    try {
      res = fd_residual(a, a_b, k, lambda, v);
    } catch (const PoleError&) {
      return;  // sits on a pole: spurious
    }
    if (!(res <= target)) {
      const bool is_real = lambda.imag() == 0.0;
      if (!refine_fd_pair(a, a_b, k, lambda, v, target)) return;
      if (is_real) lambda.imag(0.0);
      v /= v.norm();
      res = fd_residual(a, a_b, k, lambda, v);
      if (!(res <= target) || std::abs(lambda.imag()) > imag_cap) return;
    }
    EigenvalueRecord r;
    r.value = lambda;
    r.source = "fd";
    r.residual = res;
    r.branch = lambda.imag() == 0.0 ? Branch::real : Branch::complex_pair;
    r.alpha = v.dot(a.cast<Complex>() * v).real() / v.squaredNorm();
    slots[s] = r;
  });

  std::vector<EigenvalueRecord> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::sort(out.begin(), out.end(), [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
    if (x.alpha != y.alpha) return x.alpha < y.alpha;
    if (x.branch != y.branch) return x.branch < y.branch;
    return root_order(x.value, y.value);
  });
  return out;
}

}  // namespace gpspec
