#include "gpspec/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gpspec/errors.hpp"
#include "json.hpp"

namespace gpspec {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

const char* damping_kind_name(DampingKind k) {
  switch (k) {
    case DampingKind::constant: return "constant";
    case DampingKind::range: return "range";
    case DampingKind::profile_1d: return "profile_1d";
  }
  return "?";
}

const char* domain_kind_name(DomainKind k) {
  return k == DomainKind::box ? "box" : "interval_fd";
}

namespace {

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

double positive(const json& v, const std::string& path) {
  const double x = number(v, path);
  if (!(x > 0.0)) throw ConfigError(path, "must be positive, got " + v.dump());
  return x;
}

double nonnegative(const json& v, const std::string& path) {
  const double x = number(v, path);
  if (x < 0.0) throw ConfigError(path, "must be nonnegative, got " + v.dump());
  return x;
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string kind_of(const json& obj, const std::string& path) {
  const json& k = member(obj, "kind", path);
  if (!k.is_string()) throw ConfigError(path + ".kind", "expected a string");
  return k.get<std::string>();
}

ExponentialKernel parse_kernel(const json& v) {
  const auto a = number_list(member(v, "a", "kernel"), "kernel.a");
  const auto b = number_list(member(v, "b", "kernel"), "kernel.b");
  if (a.size() != b.size()) {
    throw ConfigError("kernel", "a and b must have the same length (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<KernelTerm> terms;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(a[j] > 0.0)) throw ConfigError("kernel.a[" + std::to_string(j) + "]", "must be positive");
    if (!(b[j] > 0.0)) throw ConfigError("kernel.b[" + std::to_string(j) + "]", "must be positive");
    terms.push_back({a[j], b[j]});
  }
  try {
    return ExponentialKernel(std::move(terms));
  } catch (const std::exception& e) {
    throw ConfigError("kernel.b", e.what());
  }
}

DampingSpec parse_damping(const json& v) {
  DampingSpec d;
  const std::string kind = kind_of(v, "damping");
  if (kind == "constant") {
    d.kind = DampingKind::constant;
    d.b_min = d.b_max = nonnegative(member(v, "value", "damping"), "damping.value");
  } else if (kind == "range") {
    d.kind = DampingKind::range;
    d.b_min = nonnegative(member(v, "b_min", "damping"), "damping.b_min");
    d.b_max = nonnegative(member(v, "b_max", "damping"), "damping.b_max");
    if (d.b_min > d.b_max) throw ConfigError("damping", "b_min must not exceed b_max");
  } else if (kind == "profile_1d") {
    d.kind = DampingKind::profile_1d;
    d.samples = number_list(member(v, "samples", "damping"), "damping.samples");
    const auto [lo, hi] = std::minmax_element(d.samples.begin(), d.samples.end());
    d.b_min = v.contains("b_min") ? nonnegative(v["b_min"], "damping.b_min") : *lo;
    d.b_max = v.contains("b_max") ? nonnegative(v["b_max"], "damping.b_max") : *hi;
    if (d.b_min > d.b_max) throw ConfigError("damping", "b_min must not exceed b_max");
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      if (d.samples[i] < d.b_min || d.samples[i] > d.b_max) {
        throw ConfigError("damping.samples[" + std::to_string(i) + "]",
                          "outside the declared range [b_min, b_max]");
      }
    }
  } else {
    throw ConfigError("damping.kind", "unknown kind '" + kind + "' (constant, range, profile_1d)");
  }
  return d;
}

DomainSpec parse_domain(const json& v) {
  DomainSpec d;
  const std::string kind = kind_of(v, "domain");
  if (kind == "box") {
    d.kind = DomainKind::box;
    d.lengths = number_list(member(v, "lengths", "domain"), "domain.lengths");
    if (d.lengths.size() > 3) throw ConfigError("domain.lengths", "box dimension must be at most 3");
    for (std::size_t i = 0; i < d.lengths.size(); ++i) {
      if (!(d.lengths[i] > 0.0)) throw ConfigError("domain.lengths[" + std::to_string(i) + "]", "must be positive");
    }
  } else if (kind == "interval_fd") {
    d.kind = DomainKind::interval_fd;
    d.length = positive(member(v, "length", "domain"), "domain.length");
    const json& m = member(v, "grid_points", "domain");
    if (!m.is_number_integer()) throw ConfigError("domain.grid_points", "expected an integer");
    const auto mm = m.get<long long>();
    if (mm < 3 || mm > 100000) throw ConfigError("domain.grid_points", "must be at least 3");
    d.grid_points = static_cast<int>(mm);
  } else {
    throw ConfigError("domain.kind", "unknown kind '" + kind + "' (box, interval_fd)");
  }
  return d;
}

}  // namespace

ProblemSpec parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("$", "expected a JSON object");

  ProblemSpec spec{positive(member(doc, "coefficient_a", "$"), "coefficient_a"),
                   parse_kernel(member(doc, "kernel", "$")), parse_damping(member(doc, "damping", "$")),
                   parse_domain(member(doc, "domain", "$"))};

  const double margin = spec.kernel.dissipativity_margin(spec.damping.b_max);
  if (!(margin > 0.0)) {
    std::ostringstream detail;
    detail << "damping.b_max * sum(kernel.a) must be below 1; margin = " << margin;
    throw HypothesisError("1 > b_max * sum a_j", detail.str());
  }
  return spec;
}

ProblemSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace gpspec
