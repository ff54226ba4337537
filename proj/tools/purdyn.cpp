// purdyn: trajectory scenarios, randomized bound campaigns and truncation
// studies, written as CSV.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 invariant violation, 1 I/O failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "purdyn/config.hpp"
#include "purdyn/errors.hpp"
#include "purdyn/runner.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInvariant = 4;

int emit(const purdyn::RunOutput& output, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << output.table.to_csv();
    std::cout.flush();
  } else {
    output.table.write_csv(out_path);
  }
  if (!output.violations.empty()) {
    std::cerr << "purdyn: invariant violation(s):\n";
    for (const auto& v : output.violations) std::cerr << "  " << v << '\n';
    return kExitInvariant;
  }
  return 0;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw purdyn::ConfigError("field 'levels': '" + item + "' is not an integer");
    }
    levels.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-purity dynamics: trajectories, bound campaigns and truncation studies"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run a JSON scenario config");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", run_out, "Output CSV (default: stdout)");

  purdyn::SuiteOptions suite_options;
  std::vector<long> suite_dims{2, 2};
  std::string suite_mode = "general";
  std::string suite_out;
  auto* suite = app.add_subcommand("suite", "Randomized bound/flatness campaign");
  suite->add_option("--seed", suite_options.seed, "Base seed")->required();
  suite->add_option("--count", suite_options.count, "Number of instances")->required();
  suite->add_option("--dims", suite_dims, "d_S d_E")->expected(2)->required();
  suite->add_option("--mode", suite_mode, "product or general")
      ->check(CLI::IsMember({"product", "general"}));
  suite->add_option("--out", suite_out, "Output CSV (default: stdout)");

  std::string family;
  std::string levels_text;
  std::string study_out;
  auto* study = app.add_subcommand("study", "Truncation-convergence study");
  study->add_option("family", family, "remark_family or commuting_family")->required();
  study->add_option("--levels", levels_text, "Comma-separated block counts, e.g. 100,1000,10000")
      ->required();
  study->add_option("--out", study_out, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) {
      const auto config = purdyn::ScenarioConfig::load(config_path);
      return emit(purdyn::run_scenario(config), run_out);
    }
    if (suite->parsed()) {
      suite_options.dims = {suite_dims[0], suite_dims[1]};
      suite_options.mode =
          suite_mode == "product" ? purdyn::SuiteMode::Product : purdyn::SuiteMode::General;
      return emit(purdyn::run_suite(suite_options), suite_out);
    }
    return emit(purdyn::run_study(family, parse_levels(levels_text)), study_out);
  } catch (const purdyn::ConfigError& e) {
    std::cerr << "purdyn: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const purdyn::InvariantViolation& e) {
    std::cerr << "purdyn: invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const purdyn::InvalidArgument& e) {
    std::cerr << "purdyn: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const purdyn::DimensionError& e) {
    std::cerr << "purdyn: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const purdyn::NumericalError& e) {
    std::cerr << "purdyn: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "purdyn: " << e.what() << '\n';
    return kExitIo;
  }
}
