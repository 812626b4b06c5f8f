#include "gpspec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gpspec/errors.hpp"

namespace gpspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(std::span<const double> c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

// p(z) and p'(z) in one Horner pass, plus sum |c_k||z|^k for the error bound.
struct HornerResult {
  Complex value;
  Complex slope;
  double magnitude;
};

HornerResult horner_with_slope(std::span<const double> c, Complex z) {
  Complex p = c.back();
  Complex dp = 0.0;
  double mag = std::abs(c.back());
  const double az = std::abs(z);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    mag = mag * az + std::abs(c[k]);
  }
  return {p, dp, mag};
}

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|c_k|); this spreads guesses across the root magnitude scales.
std::vector<Complex> initial_guesses(std::span<const double> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<int> hull;
  std::vector<double> logs(c.size());
  for (int k = 0; k <= n; ++k) {
    logs[k] = c[k] != 0.0 ? std::log(std::abs(c[k])) : -std::numeric_limits<double>::infinity();
  }
  for (int k = 0; k <= n; ++k) {
    if (c[k] == 0.0) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      // Drop j unless it lies strictly above segment (i, k).
      const double cross = (j - i) * (logs[k] - logs[i]) - (k - i) * (logs[j] - logs[i]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  z.reserve(n);
  constexpr double sigma = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = hull[h];
    const int j = hull[h + 1];
    const int m = j - i;
    const double r = std::exp((logs[i] - logs[j]) / m);
    for (int q = 0; q < m; ++q) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(q) / m +
                                                      static_cast<double>(i) / n) + sigma;
      z.push_back(std::polar(r, theta));
    }
  }
  return z;
}

double real_newton_polish(const RealPolynomial& p, const RealPolynomial& dp, double x) {
  double fx = std::abs(p(x));
  for (int it = 0; it < 4 && fx > 0.0; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double xn = x - p(x) / d;
    const double fn = std::abs(p(xn));
    if (!(fn < fx)) break;
    x = xn;
    fx = fn;
  }
  return x;
}

// Enforce exact conjugate symmetry. Upper/lower half-plane roots are matched
// when their conjugate distance is below their imaginary parts; everything
// left over is a real root.
std::vector<Complex> enforce_conjugate_closure(const RealPolynomial& p, std::vector<Complex> z) {
  const RealPolynomial dp = p.derivative();
  std::vector<std::size_t> upper, lower;
  std::vector<Complex> out;
  out.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i].imag() > 0.0) {
      upper.push_back(i);
    } else if (z[i].imag() < 0.0) {
      lower.push_back(i);
    }
  }
  struct Candidate {
    double dist;
    std::size_t u, l;
  };
  std::vector<Candidate> cands;
  for (auto u : upper) {
    for (auto l : lower) {
      const double d = std::abs(z[u] - std::conj(z[l]));
      if (d < 0.5 * (std::abs(z[u].imag()) + std::abs(z[l].imag()))) cands.push_back({d, u, l});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.dist < b.dist;
  });
  std::vector<bool> used(z.size(), false);
  for (const auto& c : cands) {
    if (used[c.u] || used[c.l]) continue;
    used[c.u] = used[c.l] = true;
    const Complex m = 0.5 * (z[c.u] + std::conj(z[c.l]));
    out.push_back(m);
    out.push_back(std::conj(m));
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    out.emplace_back(real_newton_polish(p, dp, z[i].real()), 0.0);
  }
  return out;
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficient is not finite");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) throw std::invalid_argument("zero polynomial");
}

RealPolynomial RealPolynomial::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  std::vector<double> re(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) re[k] = c[k].real();
  return RealPolynomial(std::move(re));
}

Complex RealPolynomial::operator()(Complex z) const {
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

double RealPolynomial::operator()(double x) const {
  double acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() == 1) throw DomainError("derivative of a constant is the zero polynomial");
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return RealPolynomial(std::move(d));
}

double RealPolynomial::magnitude_at(double abs_z) const {
  double acc = std::abs(coeffs_.back());
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * abs_z + std::abs(coeffs_[k]);
  return acc;
}

RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  }
  return RealPolynomial(std::move(c));
}

RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] += q.coeffs_[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double s, const RealPolynomial& p) {
  std::vector<double> c(p.coeffs_);
  for (double& v : c) v *= s;
  return RealPolynomial(std::move(c));
}

Complex poly_eval(const RealPolynomial& p, Complex z) { return p(z); }

bool root_order(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

std::vector<Complex> all_roots(const RealPolynomial& p, double tol) {
  const int n = p.degree();
  if (n < 1) throw DomainError("all_roots needs degree >= 1");

  // Scale to max |c_k| = 1 and split off exact zero roots.
  const double scale = max_abs(p.coeffs());
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& v : c) v /= scale;
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int m = static_cast<int>(c.size()) - 1;

  std::vector<Complex> z;
  if (m == 1) {
    z.emplace_back(-c[0] / c[1], 0.0);
  } else if (m > 1) {
    z = initial_guesses(c);
    std::vector<bool> done(m, false);
    constexpr int max_iterations = 1000;
    int it = 0;
    for (; it < max_iterations; ++it) {
      bool all_done = true;
      for (int i = 0; i < m; ++i) {
        if (done[i]) continue;
        const auto h = horner_with_slope(c, z[i]);
        if (std::abs(h.value) <= 4.0 * m * kEps * h.magnitude) {
          done[i] = true;
          continue;
        }
        all_done = false;
        Complex s = 0.0;
        for (int j = 0; j < m; ++j) {
          if (j != i) s += 1.0 / (z[i] - z[j]);
        }
        Complex w;
        if (h.slope == Complex(0.0)) {
          w = Complex(1e-3 * (1.0 + std::abs(z[i])), 1e-3);
        } else {
          const Complex ratio = h.value / h.slope;
          w = ratio / (1.0 - ratio * s);
        }
        z[i] -= w;
        if (std::abs(w) <= kEps * std::abs(z[i])) done[i] = true;
      }
      if (all_done) break;
    }

    // Newton polishing, accepted only when the residual drops.
    for (int i = 0; i < m; ++i) {
      auto h = horner_with_slope(c, z[i]);
      for (int step = 0; step < 3 && h.slope != Complex(0.0); ++step) {
        const Complex zn = z[i] - h.value / h.slope;
        const auto hn = horner_with_slope(c, zn);
        if (!(std::abs(hn.value) < std::abs(h.value))) break;
        z[i] = zn;
        h = hn;
      }
    }

    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      const auto h = horner_with_slope(c, z[i]);
      worst = std::max(worst, std::abs(h.value) / h.magnitude);
    }
    if (it == max_iterations && worst > tol) {
      throw ConvergenceError("Aberth-Ehrlich iteration did not converge for degree " +
                                 std::to_string(m),
                             it, worst);
    }
  }
  z.insert(z.end(), zeros, Complex(0.0));

  std::vector<Complex> roots = enforce_conjugate_closure(p, std::move(z));
  double worst = 0.0;
  for (const auto& r : roots) {
    worst = std::max(worst, std::abs(p(r)) / p.magnitude_at(std::abs(r)));
  }
  if (worst > tol) {
    throw ConvergenceError("polynomial roots fail the residual bound", 0, worst);
  }
  std::sort(roots.begin(), roots.end(), root_order);
  return roots;
}

// --- Sturm sequences -------------------------------------------------------

namespace {

using Coeffs = std::vector<double>;

void normalize(Coeffs& c) {
  const double m = max_abs(c);
  if (m > 0.0) {
    for (double& v : c) v /= m;
  }
}

// Negated remainder of a / b with tiny trailing terms treated as zero.
Coeffs negated_remainder(Coeffs a, const Coeffs& b) {
  const std::size_t nb = b.size();
  while (a.size() >= nb) {
    const double f = a.back() / b.back();
    const std::size_t shift = a.size() - nb;
    for (std::size_t k = 0; k < nb; ++k) a[shift + k] -= f * b[k];
    a.pop_back();
  }
  const double cutoff = 64.0 * kEps * static_cast<double>(nb + 1);
  while (!a.empty() && std::abs(a.back()) <= cutoff) a.pop_back();
  for (double& v : a) v = -v;
  return a;
}

class SturmChain {
public:
  explicit SturmChain(const RealPolynomial& p) {
    Coeffs p0(p.coeffs().begin(), p.coeffs().end());
    normalize(p0);
    chain_.push_back(p0);
    if (p0.size() < 2) return;
    Coeffs p1(p0.size() - 1);
    for (std::size_t k = 1; k < p0.size(); ++k) p1[k - 1] = static_cast<double>(k) * p0[k];
    normalize(p1);
    chain_.push_back(p1);
    while (chain_.back().size() > 1) {
      Coeffs r = negated_remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      normalize(r);
      chain_.push_back(std::move(r));
    }
  }

  int variations(double x) const {
    int count = 0;
    int prev = 0;
    for (const auto& c : chain_) {
      double v = c.back();
      for (std::size_t k = c.size() - 1; k-- > 0;) v = v * x + c[k];
      const int s = (v > 0.0) - (v < 0.0);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

private:
  std::vector<Coeffs> chain_;
};

}  // namespace

int sturm_count(const RealPolynomial& p, double a, double b) {
  if (p.degree() < 1) return 0;
  const SturmChain chain(p);
  return std::max(0, chain.variations(a) - chain.variations(b));
}

std::vector<double> real_roots_in_interval(const RealPolynomial& p, double lo, double hi,
                                           double tol) {
  if (!(lo < hi)) throw DomainError("real_roots_in_interval needs lo < hi");
  if (!(tol > 0.0)) throw DomainError("real_roots_in_interval needs tol > 0");
  std::vector<double> roots;
  if (p.degree() < 1) return roots;

  const SturmChain chain(p);
  struct Bracket {
    double a, b;
    int va, vb;
  };
  const double a0 = lo - tol;
  const double b0 = hi + tol;
  std::vector<Bracket> stack{{a0, b0, chain.variations(a0), chain.variations(b0)}};

  while (!stack.empty()) {
    Bracket br = stack.back();
    stack.pop_back();
    const int count = br.va - br.vb;
    if (count <= 0) continue;
    if (count == 1) {
      double fa = p(br.a);
      const double fb = p(br.b);
      if (fb == 0.0) {
        roots.push_back(br.b);
        continue;
      }
      if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
        double a = br.a;
        double b = br.b;
        while (b - a > tol) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double fm = p(mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
        continue;
      }
    }
    const double mid = 0.5 * (br.a + br.b);
    if (br.b - br.a <= tol || mid <= br.a || mid >= br.b) {
      roots.insert(roots.end(), static_cast<std::size_t>(count), mid);
      continue;
    }
    const int vm = chain.variations(mid);
    stack.push_back({mid, br.b, vm, br.vb});
    stack.push_back({br.a, mid, br.va, vm});
  }

  for (double& r : roots) r = std::clamp(r, lo, hi);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace gpspec
