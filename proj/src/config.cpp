#include "purdyn/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "purdyn/errors.hpp"

namespace purdyn {

using nlohmann::json;

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::TwoQubitIsing:
      return "two_qubit_ising";
    case ScenarioKind::RemarkFamily:
      return "remark_family";
    case ScenarioKind::CommutingFamily:
      return "commuting_family";
    case ScenarioKind::Custom:
      return "custom";
  }
  return "custom";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("field '" + field + "': " + message);
}

double get_real(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

std::int64_t get_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<std::int64_t>();
}

Complex get_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected a [re, im] pair");
  return {get_real(j[0], field + "[0]"), get_real(j[1], field + "[1]")};
}

ComplexVector get_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of [re, im] pairs");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = get_complex(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

ComplexMatrix get_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty row-major matrix");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(field + "[0]", "expected a non-empty row");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(row_field, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          get_complex(j[r][c], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

void require_shape(const ComplexMatrix& m, Index dim, const std::string& field) {
  if (m.rows() != dim || m.cols() != dim) {
    fail(field, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ScenarioKind parse_kind(const json& j) {
  if (!j.is_string()) fail("scenario", "expected a string");
  const auto name = j.get<std::string>();
  if (name == "two_qubit_ising") return ScenarioKind::TwoQubitIsing;
  if (name == "remark_family") return ScenarioKind::RemarkFamily;
  if (name == "commuting_family") return ScenarioKind::CommutingFamily;
  if (name == "custom") return ScenarioKind::Custom;
  fail("scenario", "unknown scenario '" + name +
                       "' (expected two_qubit_ising, remark_family, commuting_family or custom)");
}

struct FieldRules {
  std::set<std::string> required;
  std::set<std::string> optional;
};

FieldRules rules_for(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::TwoQubitIsing:
      return {{"scenario", "times"}, {"fd_step", "threshold", "seed"}};
    case ScenarioKind::RemarkFamily:
    case ScenarioKind::CommutingFamily:
      return {{"scenario", "levels"}, {"seed"}};
    case ScenarioKind::Custom:
      return {{"scenario", "dims", "hamiltonian", "initial_state", "times"},
              {"fd_step", "threshold", "seed"}};
  }
  return {};
}

TimeGrid parse_times(const json& j) {
  if (!j.is_object()) fail("times", "expected an object {start, stop, steps}");
  for (const auto& [key, value] : j.items()) {
    if (key != "start" && key != "stop" && key != "steps") fail("times." + key, "unknown field");
  }
  for (const char* key : {"start", "stop", "steps"}) {
    if (!j.contains(key)) fail(std::string("times.") + key, "missing");
  }
  TimeGrid grid;
  grid.start = get_real(j["start"], "times.start");
  grid.stop = get_real(j["stop"], "times.stop");
  const auto steps = get_integer(j["steps"], "times.steps");
  if (steps < 2 || steps > 10'000'000) fail("times.steps", "must be in [2, 10000000]");
  grid.steps = static_cast<int>(steps);
  if (!(grid.start < grid.stop)) fail("times", "start must be < stop");
  return grid;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  if (!root.contains("scenario")) fail("scenario", "missing");

  ScenarioConfig config;
  config.scenario = parse_kind(root["scenario"]);
  const FieldRules rules = rules_for(config.scenario);
  for (const auto& [key, value] : root.items()) {
    if (!rules.required.count(key) && !rules.optional.count(key)) {
      fail(key, "not allowed for scenario '" + std::string(to_string(config.scenario)) + "'");
    }
  }
  for (const auto& key : rules.required) {
    if (!root.contains(key)) fail(key, "missing");
  }

  if (root.contains("times")) config.times = parse_times(root["times"]);
  if (root.contains("fd_step")) {
    config.fd_step = get_real(root["fd_step"], "fd_step");
    if (!(*config.fd_step > 0.0)) fail("fd_step", "must be > 0");
  }
  if (root.contains("threshold")) {
    config.threshold = get_real(root["threshold"], "threshold");
    if (!(*config.threshold > 0.0)) fail("threshold", "must be > 0");
  }
  if (root.contains("seed")) {
    const auto seed = get_integer(root["seed"], "seed");
    if (seed < 0) fail("seed", "must be >= 0");
    config.seed = static_cast<std::uint64_t>(seed);
  }
  if (root.contains("levels")) {
    const json& levels = root["levels"];
    if (!levels.is_array() || levels.size() < 2) {
      fail("levels", "expected an array of at least two integers");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const std::string field = "levels[" + std::to_string(i) + "]";
      const auto level = get_integer(levels[i], field);
      if (level < 1 || level > 10'000'000) fail(field, "must be in [1, 10000000]");
      if (!config.levels.empty() && level <= config.levels.back()) {
        fail(field, "levels must be strictly increasing");
      }
      config.levels.push_back(static_cast<int>(level));
    }
  }

  if (config.scenario == ScenarioKind::Custom) {
    const json& dims = root["dims"];
    if (!dims.is_array() || dims.size() != 2) fail("dims", "expected [d_S, d_E]");
    const auto ds = get_integer(dims[0], "dims[0]");
    const auto de = get_integer(dims[1], "dims[1]");
    if (ds < 1 || de < 1) fail("dims", "dimensions must be >= 1");
    if (ds * de > 4096) fail("dims", "total dimension must be <= 4096");
    config.dims = std::array<Index, 2>{static_cast<Index>(ds), static_cast<Index>(de)};
    const Index total = static_cast<Index>(ds * de);

    const json& h = root["hamiltonian"];
    if (h.is_object()) {
      for (const auto& [key, value] : h.items()) {
        if (key != "h_s" && key != "h_e" && key != "h_int") {
          fail("hamiltonian." + key, "unknown field");
        }
      }
      for (const char* key : {"h_s", "h_e", "h_int"}) {
        if (!h.contains(key)) fail(std::string("hamiltonian.") + key, "missing");
      }
      DecompositionParts parts{get_matrix(h["h_s"], "hamiltonian.h_s"),
                               get_matrix(h["h_e"], "hamiltonian.h_e"),
                               get_matrix(h["h_int"], "hamiltonian.h_int")};
      require_shape(parts.h_s, static_cast<Index>(ds), "hamiltonian.h_s");
      require_shape(parts.h_e, static_cast<Index>(de), "hamiltonian.h_e");
      require_shape(parts.h_int, total, "hamiltonian.h_int");
      config.hamiltonian = std::move(parts);
    } else {
      ComplexMatrix m = get_matrix(h, "hamiltonian");
      require_shape(m, total, "hamiltonian");
      config.hamiltonian = std::move(m);
    }

    const json& state = root["initial_state"];
    if (state.is_object()) {
      for (const auto& [key, value] : state.items()) {
        if (key != "pure") fail("initial_state." + key, "unknown field");
      }
      if (!state.contains("pure")) fail("initial_state.pure", "missing");
      ComplexVector psi = get_vector(state["pure"], "initial_state.pure");
      if (psi.size() != total) {
        fail("initial_state.pure", "expected " + std::to_string(total) + " amplitudes");
      }
      config.initial_state = PureState{std::move(psi)};
    } else {
      ComplexMatrix m = get_matrix(state, "initial_state");
      require_shape(m, total, "initial_state");
      config.initial_state = std::move(m);
    }
  }
  return config;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse(buffer.str());
}

}  // namespace purdyn
