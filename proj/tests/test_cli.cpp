#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gpspec/cli.hpp"
#include "gpspec/errors.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace gpspec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gpspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "gpspec_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

const std::string kGraded = R"({
  "coefficient_a": 1.0,
  "kernel": {"a": [1.0], "b": [1.0]},
  "damping": {"kind": "range", "b_min": 0.5, "b_max": 0.75},
  "domain": {"kind": "box", "lengths": [1.0, 1.0]}
})";

const std::string kConstant = R"({
  "coefficient_a": 2.0,
  "kernel": {"a": [0.9], "b": [0.5]},
  "damping": {"kind": "constant", "value": 0.5},
  "domain": {"kind": "box", "lengths": [1.0, 4.0]}
})";

const std::string kTwoTerm = R"({
  "coefficient_a": 1.0,
  "kernel": {"a": [1.0, 0.2], "b": [1.0, 1.5]},
  "damping": {"kind": "range", "b_min": 0.5, "b_max": 0.75},
  "domain": {"kind": "box", "lengths": [1.0, 1.0]}
})";

std::string fd_config(const std::string& damping, int m) {
  return R"({"coefficient_a": 1.0, "kernel": {"a": [1.0], "b": [1.0]}, "damping": )" + damping +
         R"(, "domain": {"kind": "interval_fd", "length": 1.0, "grid_points": )" + std::to_string(m) + "}}";
}

}  // namespace

TEST_CASE("config parsing") {
  const auto spec = parse_config_text(kTwoTerm);
  CHECK(spec.kernel.size() == 2);
  CHECK(spec.kernel.dissipativity_margin(spec.damping.b_max) == doctest::Approx(oracle::two_term::margin));
  CHECK(spec.domain.lengths.size() == 2);
  CHECK_NOTHROW(parse_config_text(kGraded));

  const std::string heavy = R"({"coefficient_a": 1, "kernel": {"a": [1.5], "b": [1]},
    "damping": {"kind": "range", "b_min": 0.5, "b_max": 1.0}, "domain": {"kind": "box", "lengths": [1]}})";
  try {
    parse_config_text(heavy);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK(std::string(e.what()).find("-0.5") != std::string::npos);
  }

  auto field_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("{") == "$");
  CHECK(field_of(R"({"kernel": {}})") == "$.coefficient_a");
  CHECK(field_of(R"({"coefficient_a": -1})") == "coefficient_a");
  CHECK(field_of(R"({"coefficient_a": 1, "kernel": {"a": [1, 2], "b": [1]}})") == "kernel");
  CHECK(field_of(R"({"coefficient_a": 1, "kernel": {"a": [1], "b": [1]}, "damping": {"kind": "wave"}})") ==
        "damping.kind");
  CHECK(field_of(R"({"coefficient_a": 1, "kernel": {"a": [1], "b": [1]}, "damping": {"kind": "constant", "value": 0.1},
    "domain": {"kind": "box", "lengths": [1, 1, 1, 1]}})") == "domain.lengths");
  CHECK(field_of(R"({"coefficient_a": 1, "kernel": {"a": [1], "b": [1]},
    "damping": {"kind": "profile_1d", "samples": [0.5, 0.9], "b_max": 0.8},
    "domain": {"kind": "interval_fd", "length": 1, "grid_points": 10}})") == "damping.samples[1]");
}

TEST_CASE("number formatting") {
  CHECK(cli::format_csv_number(0.0) == "0");
  CHECK(cli::format_csv_number(-0.25) == "-0.25");
  CHECK(cli::format_csv_number(0.1) == "0.1");
  CHECK(cli::format_csv_number(1.0 / 3.0) == "0.333333333333");
  CHECK(cli::format_csv_number(-0.27581317012739365) == "-0.275813170127");
  CHECK(cli::format_csv_number(1e-20) == "1e-20");
}

TEST_CASE("essential through the CLI") {
  const auto two = write_config("two.json", kTwoTerm);
  const auto r = run_cli({"essential", "--config", two.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["intervals"].size() == 2);
  CHECK(j["intervals"][1][1].get<double>() == doctest::Approx(oracle::two_term::zeros_075[1]).epsilon(1e-12));

  const auto csv = run_cli({"essential", "--config", two.string(), "--format", "csv"});
  CHECK(csv.out.rfind("lo,hi\n", 0) == 0);
}

TEST_CASE("enclosure summary round-trips") {
  const auto graded = write_config("graded.json", kGraded);
  const auto r = run_cli({"enclosure", "--config", graded.string(), "--alpha-cap", "500"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto spec = parse_config_text(kGraded);
  cli::Options opts;
  opts.alpha_cap = 500.0;
  const auto direct = cli::run_enclosure(spec, opts);
  CHECK(j["c0"].get<double>() == direct.region.c0);
  CHECK(j["d1"].get<double>() == direct.region.one_pole->d1);
  CHECK(j["hat_d"].get<double>() == direct.region.one_pole->hat_d);
  CHECK(j["d0"].get<double>() == -0.375);
  CHECK(j["counts"]["outside"].get<int>() == 0);
  CHECK(j["counts"]["cloud"].get<std::size_t>() == direct.cloud.size());

  const auto csv = run_cli({"enclosure", "--config", graded.string(), "--alpha-cap", "500", "--format", "csv"});
  CHECK(csv.out.rfind("re,im,alpha,beta\n", 0) == 0);
}

TEST_CASE("eigs output and determinism") {
  const auto c = write_config("constant.json", kConstant);
  const auto a = run_cli({"eigs", "--config", c.string(), "--alpha-cap", "200"});
  const auto b = run_cli({"eigs", "--config", c.string(), "--alpha-cap", "200", "--backend", "serial"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("re,im,source,branch,residual,jordan_ok\n", 0) == 0);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(a.out.find("-0.275813170127,0,1:1,real,") != std::string::npos);
  CHECK(a.out.find(",true\n") != std::string::npos);

  const auto j = run_cli({"eigs", "--config", c.string(), "--alpha-cap", "200", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["counts"]["real"].get<int>() * 3 == doc["counts"]["records"].get<int>());
}

TEST_CASE("undamped eigs are purely imaginary") {
  const auto c = write_config("undamped.json", R"({"coefficient_a": 1, "kernel": {"a": [0.9], "b": [0.5]},
    "damping": {"kind": "constant", "value": 0}, "domain": {"kind": "box", "lengths": [1]}})");
  cli::Options opts;
  const auto r = cli::run_eigs(parse_config(c), opts);
  REQUIRE_FALSE(r.records.empty());
  for (const auto& rec : r.records) {
    CHECK(rec.value.real() == 0.0);
    CHECK(std::abs(std::abs(rec.value.imag()) - std::sqrt(rec.alpha)) < 1e-12);
  }
}

TEST_CASE("discretize") {
  const auto smoke = write_config("smoke.json", fd_config(R"({"kind": "constant", "value": 0.5})", 3));
  const auto s = run_cli({"discretize", "--config", smoke.string()});
  REQUIRE(s.code == 0);
  std::istringstream lines(s.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("re,", 0) != 0) ++rows;
  }
  CHECK(rows == 9);
  CHECK(s.out.find("# containment: inside=9 outside=0") != std::string::npos);

  const auto graded = write_config("fd.json", fd_config(R"({"kind": "range", "b_min": 0.5, "b_max": 0.75})", 60));
  const auto g = run_cli({"discretize", "--config", graded.string(), "--format", "json"});
  REQUIRE(g.code == 0);
  const auto doc = nlohmann::json::parse(g.out);
  CHECK(doc["counts"]["outside"].get<int>() == 0);

  const auto big = write_config("big.json", fd_config(R"({"kind": "constant", "value": 0.5})", 700));
  CHECK(run_cli({"discretize", "--config", big.string()}).code == 2);
  CHECK(run_cli({"discretize", "--config", write_config("g2.json", kGraded).string()}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"essential"}).code == 2);
  CHECK(run_cli({"essential", "--config", "/nonexistent/x.json"}).code == 2);
  const auto heavy = write_config("heavy.json", R"({"coefficient_a": 1, "kernel": {"a": [1.5], "b": [1]},
    "damping": {"kind": "constant", "value": 1.0}, "domain": {"kind": "box", "lengths": [1]}})");
  const auto h = run_cli({"validate", "--config", heavy.string()});
  CHECK(h.code == 2);
  CHECK(h.err.find("1 > b_max * sum a_j") != std::string::npos);
  CHECK(run_cli({"eigs", "--config", write_config("g3.json", kGraded).string()}).code == 2);
  CHECK(run_cli({"essential", "--config", heavy.string(), "--format", "xml"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("validate") {
  for (const auto& [name, body] : std::vector<std::pair<std::string, std::string>>{
           {"v1.json", kGraded}, {"v2.json", kConstant}, {"v3.json", kTwoTerm}}) {
    const auto r = run_cli({"validate", "--config", write_config(name, body).string()});
    CHECK_MESSAGE(r.code == 0, r.out);
  }
  const auto zero = write_config("v4.json", R"({"coefficient_a": 1, "kernel": {"a": [1], "b": [1]},
    "damping": {"kind": "range", "b_min": 0.0, "b_max": 0.75}, "domain": {"kind": "box", "lengths": [1, 1]}})");
  const auto r = run_cli({"validate", "--config", zero.string(), "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST_CASE("output file") {
  const auto c = write_config("out.json", kGraded);
  const fs::path out = fs::temp_directory_path() / "gpspec_cli_tests" / "essential.json";
  const auto r = run_cli({"essential", "--config", c.string(), "--output", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["intervals"][0][0].get<double>() == doctest::Approx(-0.5));
}
