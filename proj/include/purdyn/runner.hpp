#pragma once

// Scenario, suite and study execution producing CSV-ready tables.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "purdyn/config.hpp"
#include "purdyn/result_table.hpp"

namespace purdyn {

/// Column contract of trajectory scenarios.
inline const std::vector<std::string> kTrajectoryColumns = {
    "t",        "purity_S", "purity_E",   "dpurity_dt_analytic", "dpurity_dt_fd", "entropy_S",
    "entropy_E", "mutual_info", "bound_qe", "bound_m2",          "witness",       "is_product"};

/// Column contract of truncation studies; a "classification" footer row
/// follows the data.
inline const std::vector<std::string> kTruncationColumns = {
    "level", "m1", "m2", "commutator_trace_norm", "eigen_weighted_energy_sum"};

/// Column contract of randomized suites; a "max_violation" footer row
/// follows the data.
inline const std::vector<std::string> kSuiteColumns = {
    "seed",        "derivative",     "bound_qe",      "bound_m2",
    "intermediate_bound", "product_defect", "theorem4_pass"};

/// Trace-norm tolerance of the is_product column.
inline constexpr double kProductTolerance = 1e-8;

/// Relative slack allowed on every bound check: 1e-9 * max(1, sqrt(m2)).
inline constexpr double kBoundSlack = 1e-9;

/// A finished run. `violations` lists every checked invariant that failed
/// beyond tolerance; the table is complete either way.
struct RunOutput {
  ResultTable table;
  std::vector<std::string> violations;
};

/// Runs a trajectory scenario or a truncation study. Invalid operator or
/// state data in the config raises ConfigError.
RunOutput run_scenario(const ScenarioConfig& config);

enum class SuiteMode { Product, General };

struct SuiteOptions {
  std::uint64_t seed = 0;
  int count = 1;
  std::array<Index, 2> dims{2, 2};
  SuiteMode mode = SuiteMode::General;
};

/// Randomized bound/flatness campaign. Instance i uses seed + i; its
/// marginal ranks, state, Hamiltonian and target norm ||H||_op in
/// [0.1, 100] are all derived from that seed. In product mode the state is
/// rho_S (x) rho_E; in general mode it is a random joint state of random
/// rank.
RunOutput run_suite(const SuiteOptions& options);

/// Truncation study for "remark_family" or "commuting_family".
RunOutput run_study(const std::string& family, const std::vector<int>& levels);

}  // namespace purdyn
