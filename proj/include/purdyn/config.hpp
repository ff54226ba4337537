#pragma once

// JSON scenario configuration.
//
// Complex numbers are two-element [re, im] arrays and matrices are row-major
// nested arrays of them. Each scenario accepts exactly its own fields:
//
//   two_qubit_ising   times; optional fd_step, threshold, seed
//   remark_family     levels; optional seed
//   commuting_family  levels; optional seed
//   custom            dims, hamiltonian, initial_state, times;
//                     optional fd_step, threshold, seed
//
// `hamiltonian` is either a matrix or {"h_s": M, "h_e": M, "h_int": M};
// `initial_state` is either a matrix or {"pure": vector}. The seed is
// accepted for every scenario and recorded, but none of the built-in
// scenarios is randomized.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "purdyn/matrix.hpp"

namespace purdyn {

enum class ScenarioKind { TwoQubitIsing, RemarkFamily, CommutingFamily, Custom };

std::string_view to_string(ScenarioKind kind) noexcept;

struct TimeGrid {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

struct DecompositionParts {
  ComplexMatrix h_s;
  ComplexMatrix h_e;
  ComplexMatrix h_int;
};

struct PureState {
  ComplexVector psi;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::TwoQubitIsing;
  std::optional<std::array<Index, 2>> dims;
  std::optional<std::variant<ComplexMatrix, DecompositionParts>> hamiltonian;
  std::optional<std::variant<ComplexMatrix, PureState>> initial_state;
  std::optional<TimeGrid> times;
  std::optional<double> fd_step;
  std::optional<double> threshold;
  std::vector<int> levels;
  std::optional<std::uint64_t> seed;

  bool is_truncation() const noexcept {
    return scenario == ScenarioKind::RemarkFamily || scenario == ScenarioKind::CommutingFamily;
  }

  /// Parses and validates; throws ConfigError naming the offending field.
  static ScenarioConfig parse(std::string_view json_text);
  static ScenarioConfig load(const std::filesystem::path& path);
};

}  // namespace purdyn
