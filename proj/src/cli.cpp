#include "gpspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "gpspec/box_modes.hpp"
#include "gpspec/errors.hpp"
#include "gpspec/polynomial.hpp"
#include "json.hpp"

namespace gpspec::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kJordanThreshold = 1e-3;

double alpha_cap_for(const Options& opts, double w_min) {
  const double cap = opts.alpha_cap ? *opts.alpha_cap : default_alpha_cap(w_min, opts.imag_cap);
  if (!std::isfinite(cap) || !(cap > 0.0)) throw ConfigError("--alpha-cap", "must be positive");
  return cap;
}

/// Relative backward error of a scalar mode root.
double scalar_residual(const ExponentialKernel& k, const ModeCoefficients& m, Complex lambda) {
  const Complex kh = k.laplace(lambda);
  const double scale = std::norm(lambda) + m.alpha() + m.beta() * std::abs(kh);
  return std::abs(lambda * lambda + m.alpha() - m.beta() * kh) / scale;
}

Branch branch_of(Complex lambda) { return lambda.imag() == 0.0 ? Branch::real : Branch::complex_pair; }

std::optional<bool> jordan_flag(const ExponentialKernel& k, double b, Complex lambda) {
  if (lambda.imag() != 0.0 || lambda.real() == 0.0) return std::nullopt;
  return std::abs(jordan_condition(k, b, lambda.real())) > kJordanThreshold;
}

BoxDomain box_of(const ProblemSpec& spec) {
  if (spec.domain.kind != DomainKind::box) {
    throw ConfigError("domain.kind", "this command needs a box domain");
  }
  return BoxDomain(spec.domain.lengths);
}

/// Distinct mode alphas of the box up to cap, ascending.
std::vector<double> box_alphas(const ProblemSpec& spec, double cap) {
  const auto modes = enumerate_modes(spec.coefficient_a, box_of(spec), cap);
  std::vector<double> alphas;
  for (const auto& m : modes.modes) {
    if (alphas.empty() || m.alpha != alphas.back()) alphas.push_back(m.alpha);
  }
  return alphas;
}

std::vector<double> problem_alphas(const ProblemSpec& spec, double w_min, double cap, int grid_points) {
  if (spec.domain.kind == DomainKind::box) return box_alphas(spec, cap);
  return log_alpha_grid(w_min, std::max(cap, w_min), grid_points);
}

EnclosureRegion region_without_cloud(const ProblemSpec& spec, double w_min, int sweep_points) {
  const auto bound = spec.damping.bound();
  if (spec.kernel.size() == 1) return one_pole_regions(spec.kernel, bound, w_min, sweep_points);
  const auto [c0, c1] = c_interval(spec.kernel, bound, w_min, sweep_points);
  EnclosureRegion region;
  region.c0 = c0;
  region.c1 = c1;
  region.kernel_terms.assign(spec.kernel.terms().begin(), spec.kernel.terms().end());
  region.b_min = bound.b_min();
  region.b_max = bound.b_max();
  region.w_min = w_min;
  return region;
}

void sort_records(std::vector<EigenvalueRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
    if (x.alpha != y.alpha) return x.alpha < y.alpha;
    if (x.branch != y.branch) return x.branch < y.branch;
    return root_order(x.value, y.value);
  });
}

bool conjugate_closed(const std::vector<Complex>& roots, double tol) {
  for (const auto& z : roots) {
    if (z.imag() == 0.0) continue;
    const bool found = std::any_of(roots.begin(), roots.end(), [&](const Complex& w) {
      return std::abs(w - std::conj(z)) <= tol * (1.0 + std::abs(z));
    });
    if (!found) return false;
  }
  return true;
}

std::string fmt(double x) { return format_csv_number(x); }

}  // namespace

double default_alpha_cap(double w_min, double imag_cap) { return 2.0 * imag_cap * imag_cap + w_min; }

double problem_w_min(const ProblemSpec& spec) {
  if (spec.domain.kind == DomainKind::box) return w_min(spec.coefficient_a, box_of(spec));
  const double h = spec.domain.length / (spec.domain.grid_points + 1);
  const double s = std::sin(std::numbers::pi * h / (2.0 * spec.domain.length));
  return 4.0 * spec.coefficient_a / (h * h) * s * s;
}

std::vector<double> fd_damping_nodes(const ProblemSpec& spec) {
  if (spec.domain.kind != DomainKind::interval_fd) {
    throw ConfigError("domain.kind", "discretize needs an interval_fd domain");
  }
  const int m = spec.domain.grid_points;
  const double len = spec.domain.length;
  switch (spec.damping.kind) {
    case DampingKind::constant:
      return std::vector<double>(static_cast<std::size_t>(m + 2), spec.damping.b_min);
    case DampingKind::range:
      return sample_profile(paraboloid_profile(spec.damping.b_min, spec.damping.b_max, len), m, len);
    case DampingKind::profile_1d:
      return sample_profile(tabulated_profile(spec.damping.samples, len), m, len);
  }
  return {};
}

double membership_tol(double tol, Complex lambda) { return tol * (1.0 + std::abs(lambda)); }

EigsResult run_eigs(const ProblemSpec& spec, const Options& opts) {
  if (spec.damping.kind != DampingKind::constant) {
    throw ConfigError("damping.kind", "eigs needs constant damping; use discretize for graded profiles");
  }
  const BoxDomain box = box_of(spec);
  const double b = spec.damping.b_min;
  EigsResult out;
  out.alpha_cap = alpha_cap_for(opts, w_min(spec.coefficient_a, box));
  const auto modes = enumerate_modes(spec.coefficient_a, box, out.alpha_cap).modes;
  out.modes = modes.size();

  std::vector<ModeCoefficients> coeffs;
  coeffs.reserve(modes.size());
  for (const auto& m : modes) coeffs.push_back(ModeCoefficients::damped(m.alpha, b));
  const auto spectra = sweep::mode_spectra(spec.kernel, coeffs, opts.backend);

  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string label = modes[i].label();
    for (const auto& z : spectra[i]) {
      if (std::abs(z.imag()) > opts.imag_cap) continue;
      EigenvalueRecord r;
      r.value = z;
      r.source = label;
      r.residual = scalar_residual(spec.kernel, coeffs[i], z);
      r.branch = branch_of(z);
      if (b > 0.0) r.jordan_ok = jordan_flag(spec.kernel, b, z);
      r.alpha = modes[i].alpha;
      if (!(r.residual <= opts.tolerance)) {
        throw ConvergenceError("mode " + label + " root residual exceeds --tolerance", 0, r.residual);
      }
      out.records.push_back(std::move(r));
    }
  }
  sort_records(out.records);
  return out;
}

EnclosureResult run_enclosure(const ProblemSpec& spec, const Options& opts) {
  const auto bound = spec.damping.bound();
  const double wm = problem_w_min(spec);
  const double cap = alpha_cap_for(opts, wm);
  EnclosureResult out;
  out.essential = essential_spectrum(spec.kernel, bound, opts.sweep);
  out.region = region_without_cloud(spec, wm, opts.sweep);

  const auto alphas = problem_alphas(spec, wm, cap, kDefaultAlphaGridPoints);
  const auto grid = sweep::beta_grid(bound, alphas, opts.beta_samples);
  const auto spectra = sweep::mode_spectra(spec.kernel, grid, opts.backend);
  out.region.alpha_cap = alphas.empty() ? cap : alphas.back();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& z : spectra[i]) {
      out.cloud.push_back({z, grid[i].alpha(), grid[i].beta()});
      out.region.boundary_cloud.push_back(z);
      const double tol = membership_tol(opts.tolerance, z);
      const double excess = region_excess(out.region, z, tol);
      if (excess > tol) {
        ++out.outside;
        out.max_violation = std::max(out.max_violation, excess);
      }
    }
  }
  return out;
}

DiscretizeResult run_discretize(const ProblemSpec& spec, const Options& opts) {
  const auto nodes = fd_damping_nodes(spec);
  const int m = spec.domain.grid_points;
  const auto size = static_cast<long long>(spec.kernel.size() + 2) * m;
  if (size > kMaxDenseSize) {
    throw ConfigError("domain.grid_points", "companion size (N+2)M = " + std::to_string(size) +
                                                " exceeds " + std::to_string(kMaxDenseSize));
  }
  const auto bound = spec.damping.bound();
  const FdOperators ops = discretize_1d(spec.coefficient_a, nodes, bound, spec.domain.length);

  DiscretizeResult out;
  out.w_min = problem_w_min(spec);
  out.records = nonlinear_eigenvalues_fd(ops.a, ops.a_b, spec.kernel, opts.imag_cap, opts.backend);
  if (spec.damping.kind == DampingKind::constant && spec.damping.b_min > 0.0) {
    for (auto& r : out.records) r.jordan_ok = jordan_flag(spec.kernel, spec.damping.b_min, r.value);
  }
  out.region = region_without_cloud(spec, out.w_min, opts.sweep);
  out.region.alpha_cap = inf_norm(ops.a);
  for (const auto& r : out.records) {
    const double tol = membership_tol(opts.tolerance, r.value);
    const double excess = region_excess(out.region, r.value, tol);
    if (excess > tol) {
      ++out.containment.outside;
      out.containment.max_violation = std::max(out.containment.max_violation, excess);
    } else {
      ++out.containment.inside;
    }
  }
  return out;
}

std::vector<Check> run_validate(const ProblemSpec& spec, const Options& opts) {
  std::vector<Check> checks;
  const auto bound = spec.damping.bound();
  const auto& k = spec.kernel;
  const double wm = problem_w_min(spec);
  const double cap = alpha_cap_for(opts, wm);
  const double tol = opts.tolerance;

  auto alphas = problem_alphas(spec, wm, cap, 32);
  if (alphas.size() > 32) alphas.resize(32);
  const auto grid = sweep::beta_grid(bound, alphas, opts.beta_samples);
  const auto spectra = sweep::mode_spectra(k, grid, opts.backend);
  const auto essential = essential_spectrum(k, bound, opts.sweep);
  const auto region = region_without_cloud(spec, wm, opts.sweep);

  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    std::size_t bad = 0;
    for (const auto& s : spectra) bad += conjugate_closed(s, 1e-10) ? 0 : 1;
    add("conjugate-symmetry", bad == 0, std::to_string(bad) + " of " + std::to_string(spectra.size()) + " root sets open");
  }
  {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : spectra) {
      for (const auto& z : s) worst = std::max(worst, z.real() / (1.0 + std::abs(z)));
    }
    add("left-half-plane", worst <= tol, "max Re/(1+|lambda|) = " + fmt(worst));
  }
  {
    bool ok = region.c0 <= region.c1 && region.c0 > -k.largest_rate() && region.c1 <= 0.0;
    for (const auto& iv : essential.intervals) {
      ok = ok && iv.lo >= region.c0 - tol && iv.hi <= region.c1 + tol;
    }
    add("essential-in-c-interval", ok, "[c0, c1] = [" + fmt(region.c0) + ", " + fmt(region.c1) + "]");
  }
  {
    std::size_t outside = 0;
    double worst = 0.0;
    for (const auto& s : spectra) {
      for (const auto& z : s) {
        const double t = membership_tol(tol, z);
        const double e = region_excess(region, z, t);
        if (e > t) {
          ++outside;
          worst = std::max(worst, e);
        }
      }
    }
    add("enclosure-containment", outside == 0,
        std::to_string(outside) + " outside, max violation " + fmt(worst));
  }
  {
    const Complex probes[] = {{1.0, 0.0}, {-0.5, 3.0}, {0.25, -2.0}, {-2.0, 0.5}};
    double worst_eq = 0.0;
    double worst_char = 0.0;
    double worst_pole = std::numeric_limits<double>::infinity();
    for (const auto& mc : grid) {
      const ModePencil mp(k, mc.alpha(), mc.beta());
      const auto p = symbol_polynomial(k, mc);
      const RealMatrix s = build_system_operator(mp);
      const double sign = (k.size() % 2 == 0) ? 1.0 : -1.0;
      for (const auto& lam : probes) {
        const double scale = (1.0 + std::norm(lam)) * (1.0 + mc.alpha());
        worst_eq = std::max(worst_eq, verify_equivalence(mp, lam).max() / scale);
        ComplexMatrix shifted = s.cast<Complex>();
        shifted.diagonal().array() -= lam;
        const Complex det = shifted.determinant();
        worst_char = std::max(worst_char, std::abs(det - sign * p(lam)) / p.magnitude_at(std::abs(lam)));
      }
      if (mc.beta() > 0.0) {
        for (std::size_t j = 0; j < k.size(); ++j) {
          const double bj = k.term(j).rate;
          double others = 1.0;
          for (std::size_t i = 0; i < k.size(); ++i) {
            if (i != j) others *= std::abs(k.term(i).rate - bj);
          }
          const double det = std::abs(build_P(mp, Complex(-bj, 0.0)).determinant()) / others;
          worst_pole = std::min(worst_pole, det / (0.5 * k.term(j).amplitude * bj * mc.beta()));
        }
      }
    }
    add("equivalence-residuals", worst_eq <= 1e-12, "max scaled residual " + fmt(worst_eq));
    add("char-poly-identity", worst_char <= 1e-10, "max relative mismatch " + fmt(worst_char));
    if (std::isfinite(worst_pole)) {
      add("pole-exclusion", worst_pole >= 1.0, "min |det P(-b_j)| / (a_j b_j beta / 2) = " + fmt(worst_pole));
    } else {
      add("pole-exclusion", true, "beta = 0 throughout; not applicable");
    }
  }
  {
    if (bound.b_min() > 0.0) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& s : spectra) {
        for (const auto& z : s) {
          if (z.imag() != 0.0) nearest = std::min(nearest, std::abs(z.real()));
        }
      }
      add("imaginary-axis", nearest > 1e-8, "min |Re| of complex roots " + fmt(nearest));
    } else {
      add("imaginary-axis", true, "b_min = 0: roots on the imaginary axis are expected");
    }
  }
  {
    if (spec.damping.kind == DampingKind::constant && bound.b_min() > 0.0) {
      std::size_t count = 0;
      std::size_t bad = 0;
      for (const auto& s : spectra) {
        for (const auto& z : s) {
          const auto flag = jordan_flag(k, bound.b_min(), z);
          if (!flag) continue;
          ++count;
          bad += *flag ? 0 : 1;
        }
      }
      add("jordan-chains", bad == 0, std::to_string(bad) + " of " + std::to_string(count) + " real roots degenerate");
    } else {
      add("jordan-chains", true, "graded or undamped: not applicable");
    }
  }
  if (spec.domain.kind == DomainKind::interval_fd) {
    const auto d = run_discretize(spec, opts);
    add("fd-containment", d.containment.outside == 0,
        std::to_string(d.containment.outside) + " of " + std::to_string(d.records.size()) +
            " outside, max violation " + fmt(d.containment.max_violation));
  }
  return checks;
}

std::string format_csv_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  int digits = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  if (digits <= 12) return s;
  res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_records_csv(std::ostream& out, const std::vector<EigenvalueRecord>& records) {
  out << "re,im,source,branch,residual,jordan_ok\n";
  for (const auto& r : records) {
    out << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ',' << r.source << ','
        << branch_name(r.branch) << ',' << fmt(r.residual) << ','
        << (r.jordan_ok ? (*r.jordan_ok ? "true" : "false") : "") << '\n';
  }
}

namespace {

ojson records_json(const std::vector<EigenvalueRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) {
    ojson o;
    o["re"] = r.value.real();
    o["im"] = r.value.imag();
    o["source"] = r.source;
    o["branch"] = branch_name(r.branch);
    o["residual"] = r.residual;
    o["jordan_ok"] = r.jordan_ok ? ojson(*r.jordan_ok) : ojson(nullptr);
    arr.push_back(std::move(o));
  }
  return arr;
}

ojson record_counts(const std::vector<EigenvalueRecord>& records) {
  const auto real = static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const EigenvalueRecord& r) { return r.branch == Branch::real; }));
  return {{"records", records.size()}, {"real", real}, {"complex", records.size() - real}};
}

ojson intervals_json(const EssentialSpectrum& es) {
  ojson arr = ojson::array();
  for (const auto& iv : es.intervals) arr.push_back({iv.lo, iv.hi});
  return arr;
}

void region_json(ojson& o, const EnclosureRegion& region) {
  o["c0"] = region.c0;
  o["c1"] = region.c1;
  if (region.one_pole) {
    o["d0"] = region.one_pole->d0;
    o["d1"] = region.one_pole->d1;
    o["hat_d"] = region.one_pole->hat_d;
  }
}

}  // namespace

void write_records_json(std::ostream& out, const std::vector<EigenvalueRecord>& records, double alpha_cap) {
  ojson o;
  o["alpha_cap"] = alpha_cap;
  o["records"] = records_json(records);
  o["counts"] = record_counts(records);
  out << o.dump(2) << '\n';
}

void write_essential(std::ostream& out, const EssentialSpectrum& es, Format format) {
  if (format == Format::csv) {
    out << "lo,hi\n";
    for (const auto& iv : es.intervals) out << fmt(iv.lo) << ',' << fmt(iv.hi) << '\n';
    return;
  }
  ojson o;
  o["intervals"] = intervals_json(es);
  o["monotone"] = es.monotone;
  o["counts"] = {{"intervals", es.intervals.size()}};
  out << o.dump(2) << '\n';
}

void write_enclosure(std::ostream& out, const EnclosureResult& r, Format format) {
  if (format == Format::csv) {
    out << "re,im,alpha,beta\n";
    for (const auto& p : r.cloud) {
      out << fmt(p.value.real()) << ',' << fmt(p.value.imag()) << ',' << fmt(p.alpha) << ','
          << fmt(p.beta) << '\n';
    }
    return;
  }
  ojson o;
  o["intervals"] = intervals_json(r.essential);
  region_json(o, r.region);
  o["alpha_cap"] = r.region.alpha_cap;
  o["counts"] = {{"cloud", r.cloud.size()}, {"outside", r.outside}};
  o["max_violation"] = r.max_violation;
  out << o.dump(2) << '\n';
}

void write_discretize(std::ostream& out, const DiscretizeResult& r, Format format) {
  if (format == Format::csv) {
    write_records_csv(out, r.records);
    out << "# containment: inside=" << r.containment.inside << " outside=" << r.containment.outside
        << " max_violation=" << fmt(r.containment.max_violation) << '\n';
    out << "# region: c0=" << fmt(r.region.c0) << " c1=" << fmt(r.region.c1);
    if (r.region.one_pole) {
      out << " d0=" << fmt(r.region.one_pole->d0) << " d1=" << fmt(r.region.one_pole->d1)
          << " hat_d=" << fmt(r.region.one_pole->hat_d);
    }
    out << " w_min=" << fmt(r.w_min) << '\n';
    return;
  }
  ojson o;
  region_json(o, r.region);
  o["w_min"] = r.w_min;
  o["records"] = records_json(r.records);
  ojson counts = record_counts(r.records);
  counts["inside"] = r.containment.inside;
  counts["outside"] = r.containment.outside;
  o["counts"] = counts;
  o["max_violation"] = r.containment.max_violation;
  out << o.dump(2) << '\n';
}

void write_validation(std::ostream& out, const std::vector<Check>& checks, Format format) {
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  if (format == Format::csv) {
    out << "check,status,detail\n";
    for (const auto& c : checks) out << c.name << ',' << (c.passed ? "pass" : "FAIL") << ",\"" << c.detail << "\"\n";
    return;
  }
  ojson o;
  o["passed"] = all;
  ojson arr = ojson::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  o["checks"] = arr;
  out << o.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of viscoelastic wave equations with exponential memory kernels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string format_name;
  std::string backend_name = "openmp";
  double alpha_cap = 0.0;
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Problem JSON")->required();
    sub->add_option("--alpha-cap", alpha_cap, "Largest mode alpha (default 2 imag_cap^2 + w_min)");
    sub->add_option("--imag-cap", opts.imag_cap, "Keep |Im lambda| <= this")->capture_default_str();
    sub->add_option("--sweep", opts.sweep, "b_hat sweep points")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    sub->add_option("--beta-samples", opts.beta_samples, "beta grid per alpha")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 16));
    sub->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output_path, "Output file (default stdout)");
    sub->add_option("--tolerance", opts.tolerance, "Relative residual and membership tolerance")
        ->capture_default_str();
    sub->add_option("--backend", backend_name, "openmp or serial")
        ->capture_default_str()
        ->check(CLI::IsMember({"openmp", "serial"}));
  };

  auto* essential = app.add_subcommand("essential", "Essential spectrum intervals");
  auto* eigs = app.add_subcommand("eigs", "Mode-by-mode eigenvalues (box, constant damping)");
  auto* enclosure = app.add_subcommand("enclosure", "Enclosure region and (alpha, beta) cloud");
  auto* discretize = app.add_subcommand("discretize", "1D finite-difference graded problem");
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  for (auto* sub : {essential, eigs, enclosure, discretize, validate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--alpha-cap") > 0) opts.alpha_cap = alpha_cap;
  if (!std::isfinite(opts.imag_cap) || opts.imag_cap < 0.0) {
    err << "error: --imag-cap must be nonnegative\n";
    return kExitConfig;
  }
  if (!(opts.tolerance > 0.0)) {
    err << "error: --tolerance must be positive\n";
    return kExitConfig;
  }
  opts.backend = backend_name == "serial" ? Backend::serial : Backend::openmp;
  const bool json_default = sub == essential || sub == enclosure;
  const Format format = format_name.empty() ? (json_default ? Format::json : Format::csv)
                        : format_name == "json" ? Format::json
                                                : Format::csv;

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    const ProblemSpec spec = parse_config(config_path);
    if (sub == essential) {
      const auto es = essential_spectrum(spec.kernel, spec.damping.bound(), opts.sweep);
      write_essential(buffer, es, format);
      for (const auto& iv : es.intervals) err << "essential spectrum: [" << fmt(iv.lo) << ", " << fmt(iv.hi) << "]\n";
    } else if (sub == eigs) {
      const auto r = run_eigs(spec, opts);
      if (format == Format::json) {
        write_records_json(buffer, r.records, r.alpha_cap);
      } else {
        write_records_csv(buffer, r.records);
      }
      err << r.records.size() << " eigenvalues from " << r.modes << " modes (alpha_cap " << fmt(r.alpha_cap) << ")\n";
    } else if (sub == enclosure) {
      const auto r = run_enclosure(spec, opts);
      write_enclosure(buffer, r, format);
      err << "[c0, c1] = [" << fmt(r.region.c0) << ", " << fmt(r.region.c1) << "], " << r.cloud.size()
          << " cloud points, " << r.outside << " outside\n";
      if (r.outside > 0) code = kExitValidation;
    } else if (sub == discretize) {
      const auto r = run_discretize(spec, opts);
      write_discretize(buffer, r, format);
      err << r.records.size() << " FD eigenvalues, " << r.containment.outside << " outside the enclosure\n";
    } else {
      const auto checks = run_validate(spec, opts);
      write_validation(buffer, checks, format);
      for (const auto& c : checks) {
        if (!c.passed) {
          err << "FAIL " << c.name << ": " << c.detail << '\n';
          code = kExitValidation;
        }
      }
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  if (output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << output_path << '\n';
      return kExitConfig;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace gpspec::cli
