#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "purdyn/config.hpp"
#include "purdyn/errors.hpp"
#include "purdyn/format.hpp"
#include "purdyn/result_table.hpp"
#include "purdyn/runner.hpp"

using namespace purdyn;

namespace {

std::string error_of(const std::string& json) {
  try {
    ScenarioConfig::parse(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kCustomProduct = R"({
  "scenario": "custom",
  "dims": [2, 2],
  "hamiltonian": {
    "h_s": [[[1,0],[0,0]],[[0,0],[-1,0]]],
    "h_e": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "h_int": [[[0,0],[0,0],[0,0],[2,0]],
              [[0,0],[0,0],[2,0],[0,0]],
              [[0,0],[2,0],[0,0],[0,0]],
              [[2,0],[0,0],[0,0],[0,0]]]
  },
  "initial_state": {"pure": [[1,0],[0,0],[0,0],[0,0]]},
  "times": {"start": 0, "stop": 0.000001, "steps": 2},
  "threshold": 1e-6
})";

}  // namespace

TEST_CASE("format_double round-trips") {
  std::mt19937_64 engine(7);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(mantissa(engine), exponent(engine));
    double back = 0.0;
    REQUIRE(parse_double(format_double(v), back));
    CHECK(back == v);
  }
  CHECK(format_double(0.75) == "0.75");
  CHECK(format_double(-1.0) == "-1");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  double out = 0.0;
  CHECK_FALSE(parse_double("1.5x", out));
  CHECK_FALSE(parse_double("", out));
  CHECK(parse_double("inf", out));
  CHECK(std::isinf(out));
}

TEST_CASE("ResultTable CSV round trip") {
  ResultTable table;
  table.header = {"level", "a", "label"};
  std::mt19937_64 engine(3);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 200; ++i) {
    table.add_row({static_cast<double>(i), normal(engine) * std::pow(10.0, i % 30 - 15),
                   std::string(i % 2 ? "correlated" : "inconclusive")});
  }
  table.add_footer({std::string("classification"), std::string("convergent(1.6448)"),
                    std::string("logarithmic(2)")});
  const std::string csv = table.to_csv();
  CHECK(csv.rfind("level,a,label\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const ResultTable back = ResultTable::from_csv(csv);
  CHECK(back == table);
  CHECK(back.to_csv() == csv);
  CHECK(back.number(3, "level") == 3.0);
  CHECK(std::get<std::string>(back.cell(1, "label")) == "correlated");
  CHECK_THROWS_AS(back.number(1, "label"), InvalidArgument);
  CHECK_THROWS_AS(back.column("missing"), InvalidArgument);
}

TEST_CASE("ResultTable row checks") {
  ResultTable table;
  table.header = {"a", "b"};
  CHECK_THROWS_AS(table.add_row({1.0}), InvalidArgument);
  CHECK_THROWS_AS(table.add_row({std::string("x"), 1.0}), InvalidArgument);
  CHECK_THROWS_AS(table.add_footer({1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(ResultTable::from_csv("a,b\n1\n"), InvalidArgument);
}

TEST_CASE("config: valid scenarios") {
  const ScenarioConfig ising = ScenarioConfig::parse(
      R"({"scenario": "two_qubit_ising", "times": {"start": 0, "stop": 1.5, "steps": 11}, "seed": 4})");
  CHECK(ising.scenario == ScenarioKind::TwoQubitIsing);
  CHECK(ising.times->steps == 11);
  CHECK(ising.seed == 4u);
  CHECK_FALSE(ising.fd_step.has_value());

  const ScenarioConfig remark =
      ScenarioConfig::parse(R"({"scenario": "remark_family", "levels": [10, 20, 40]})");
  CHECK(remark.is_truncation());
  CHECK(remark.levels == std::vector<int>{10, 20, 40});

  const ScenarioConfig custom = ScenarioConfig::parse(kCustomProduct);
  CHECK(custom.dims == std::array<Index, 2>{2, 2});
  CHECK(std::holds_alternative<DecompositionParts>(*custom.hamiltonian));
  CHECK(std::holds_alternative<PureState>(*custom.initial_state));
}

TEST_CASE("config: field-level errors") {
  CHECK(error_of("{").find("invalid JSON") != std::string::npos);
  CHECK(error_of("[]").find("object") != std::string::npos);
  CHECK(error_of(R"({"times": {}})").find("'scenario'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "ising"})").find("unknown scenario") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising"})").find("'times'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising", "levels": [1, 2],
                     "times": {"start": 0, "stop": 1, "steps": 3}})")
            .find("'levels': not allowed") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising", "times": {"start": 1, "stop": 1, "steps": 3}})")
            .find("'times'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising", "times": {"start": 0, "stop": 1, "steps": 1}})")
            .find("'times.steps'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising", "times": {"start": 0, "stop": 1, "steps": 3, "dt": 1}})")
            .find("'times.dt'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "two_qubit_ising", "fd_step": -1,
                     "times": {"start": 0, "stop": 1, "steps": 3}})")
            .find("'fd_step'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "remark_family", "levels": [10, 5]})").find("'levels[1]'") !=
        std::string::npos);
  CHECK(error_of(R"({"scenario": "remark_family", "levels": [10]})").find("'levels'") !=
        std::string::npos);
  CHECK(error_of(R"({"scenario": "remark_family", "levels": [10, "x"]})").find("'levels[1]'") !=
        std::string::npos);
  CHECK(error_of(R"({"scenario": "custom", "dims": [2, 2], "hamiltonian": [[[1,0]]],
                     "initial_state": {"pure": [[1,0],[0,0],[0,0],[0,0]]},
                     "times": {"start": 0, "stop": 1, "steps": 2}})")
            .find("'hamiltonian'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "custom", "dims": [2, 2], "hamiltonian": {"h_s": [], "h_e": [], "h_int": []},
                     "initial_state": {"pure": [[1,0],[0,0],[0,0],[0,0]]},
                     "times": {"start": 0, "stop": 1, "steps": 2}})")
            .find("'hamiltonian.h_s'") != std::string::npos);
  CHECK(error_of(R"({"scenario": "remark_family", "levels": [1, 2], "seed": -3})")
            .find("'seed'") != std::string::npos);
}

TEST_CASE("run_scenario: Ising trajectory") {
  const ScenarioConfig cfg = ScenarioConfig::parse(
      R"({"scenario": "two_qubit_ising", "times": {"start": 0, "stop": 1.5707963267948966, "steps": 101}})");
  const RunOutput out = run_scenario(cfg);
  CHECK(out.violations.empty());
  CHECK(out.table.header == kTrajectoryColumns);
  REQUIRE(out.table.rows.size() == 101);
  // Row 25 sits at pi/8.
  CHECK(out.table.number(25, "t") == doctest::Approx(std::numbers::pi / 8));
  CHECK(out.table.number(25, "dpurity_dt_analytic") == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::get<std::string>(out.table.cell(25, "witness")) == "correlated");
  CHECK(out.table.number(0, "is_product") == 1.0);
  CHECK(std::get<std::string>(out.table.cell(0, "witness")) == "inconclusive");
}

TEST_CASE("run_scenario: custom product start") {
  const RunOutput out = run_scenario(ScenarioConfig::parse(kCustomProduct));
  CHECK(out.violations.empty());
  const double t0 = out.table.number(0, "dpurity_dt_analytic");
  CHECK(std::abs(t0) <= 1e-6);
  CHECK(std::get<std::string>(out.table.cell(0, "witness")) == "inconclusive");
}

TEST_CASE("run_scenario: invalid operator data is a config error") {
  const std::string not_psd = R"({
    "scenario": "custom", "dims": [1, 2],
    "hamiltonian": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "initial_state": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]],
    "times": {"start": 0, "stop": 1, "steps": 2}})";
  CHECK_THROWS_AS(run_scenario(ScenarioConfig::parse(not_psd)), ConfigError);
  const std::string not_hermitian = R"({
    "scenario": "custom", "dims": [1, 2],
    "hamiltonian": [[[0,0],[1,0]],[[0,0],[0,0]]],
    "initial_state": {"pure": [[1,0],[0,0]]},
    "times": {"start": 0, "stop": 1, "steps": 2}})";
  CHECK_THROWS_AS(run_scenario(ScenarioConfig::parse(not_hermitian)), ConfigError);
}

TEST_CASE("run_study") {
  const RunOutput out = run_study("remark_family", {100, 1000, 10000});
  CHECK(out.table.header == kTruncationColumns);
  REQUIRE(out.table.rows.size() == 3);
  REQUIRE(out.table.footer.size() == 1);
  CHECK(std::get<std::string>(out.table.footer[0][0]) == "classification");
  CHECK(std::get<std::string>(out.table.footer[0][1]).rfind("convergent(", 0) == 0);
  CHECK(std::get<std::string>(out.table.footer[0][3]).rfind("logarithmic(", 0) == 0);
  CHECK(out.table.number(2, "m1") == doctest::Approx(1.6449).epsilon(1e-3));
  CHECK_THROWS_AS(run_study("nope", {1, 2}), ConfigError);
  CHECK_THROWS_AS(run_study("remark_family", {2, 1}), ConfigError);
}

TEST_CASE("run_suite") {
  SuiteOptions options;
  options.seed = 42;
  options.count = 50;
  options.dims = {2, 3};
  options.mode = SuiteMode::Product;
  const RunOutput product = run_suite(options);
  CHECK(product.violations.empty());
  REQUIRE(product.table.rows.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(product.table.number(i, "theorem4_pass") == 1.0);
  CHECK(product.table.number(0, "seed") == 42.0);
  CHECK(std::get<std::string>(product.table.footer[0][0]) == "max_violation");

  options.mode = SuiteMode::General;
  const RunOutput general = run_suite(options);
  CHECK(general.violations.empty());
  CHECK(general.table.to_csv() == run_suite(options).table.to_csv());

  options.count = 0;
  CHECK_THROWS_AS(run_suite(options), ConfigError);
  options.count = 1;
  options.dims = {0, 2};
  CHECK_THROWS_AS(run_suite(options), ConfigError);
}
