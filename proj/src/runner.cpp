#include "purdyn/runner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "purdyn/dynamics.hpp"
#include "purdyn/errors.hpp"
#include "purdyn/format.hpp"
#include "purdyn/scenarios.hpp"
#include "purdyn/trajectory.hpp"
#include "purdyn/witness.hpp"

namespace purdyn {

namespace {

constexpr std::size_t kMaxReportedViolations = 20;

void record_violation(std::vector<std::string>& violations, std::string message) {
  if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(message));
}

template <typename Fn>
auto as_config_error(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  } catch (const DimensionError& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  }
}

struct PreparedTrajectory {
  DensityMatrix rho0;
  HamiltonianDecomposition decomp;
  BipartiteSpace space;
};

PreparedTrajectory prepare(const ScenarioConfig& config) {
  if (config.scenario == ScenarioKind::TwoQubitIsing) {
    TwoQubitIsing s = two_qubit_ising();
    return {s.rho0, decompose_hamiltonian(s.h, s.space), s.space};
  }
  const BipartiteSpace space((*config.dims)[0], (*config.dims)[1]);
  DensityMatrix rho0 = as_config_error("initial_state", [&] {
    if (const auto* pure = std::get_if<PureState>(&*config.initial_state)) {
      return from_pure(pure->psi);
    }
    return DensityMatrix(std::get<ComplexMatrix>(*config.initial_state));
  });
  HamiltonianDecomposition decomp = as_config_error("hamiltonian", [&] {
    if (const auto* parts = std::get_if<DecompositionParts>(&*config.hamiltonian)) {
      return HamiltonianDecomposition::from_parts(HermitianMatrix(parts->h_s),
                                                  HermitianMatrix(parts->h_e),
                                                  HermitianMatrix(parts->h_int), space);
    }
    return decompose_hamiltonian(HermitianMatrix(std::get<ComplexMatrix>(*config.hamiltonian)),
                                 space);
  });
  return {std::move(rho0), std::move(decomp), space};
}

RunOutput run_trajectory(const ScenarioConfig& config) {
  const PreparedTrajectory prepared = prepare(config);
  const std::vector<double> times =
      linspace(config.times->start, config.times->stop, config.times->steps);
  TrajectoryOptions options;
  options.fd_step = config.fd_step;
  options.threshold = config.threshold.value_or(kWitnessFloor);
  options.product_tolerance = kProductTolerance;
  const Trajectory trajectory =
      sample_trajectory(prepared.rho0, prepared.decomp, prepared.space, times, options);
  // m2 is conserved, so one scale serves the whole trajectory.
  const double scale = derivative_scale(prepared.decomp.h_total, prepared.rho0);

  RunOutput out;
  out.table.header = kTrajectoryColumns;
  for (const auto& r : trajectory.records) {
    const double magnitude = std::abs(r.derivative_analytic);
    if (magnitude - r.bound_qe > kBoundSlack * scale) {
      record_violation(out.violations, "t=" + format_double(r.time) + ": |dP/dt| " +
                                           format_double(magnitude) + " exceeds bound_qe " +
                                           format_double(r.bound_qe));
    }
    if (magnitude - r.bound_m2 > kBoundSlack * scale) {
      record_violation(out.violations, "t=" + format_double(r.time) + ": |dP/dt| " +
                                           format_double(magnitude) + " exceeds bound_m2 " +
                                           format_double(r.bound_m2));
    }
    out.table.add_row({r.time, r.purity_s, r.purity_e, r.derivative_analytic, r.derivative_fd,
                       r.entropy_s, r.entropy_e, r.mutual_info, r.bound_qe, r.bound_m2,
                       std::string(to_string(r.witness.verdict)), r.is_product ? 1.0 : 0.0});
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SuiteInstance {
  DensityMatrix rho;
  HermitianMatrix h;
};

SuiteInstance make_instance(std::uint64_t seed, const BipartiteSpace& space, SuiteMode mode) {
  std::mt19937_64 engine(splitmix64(seed));
  auto rank_in = [&](Index dim) {
    return std::uniform_int_distribution<Index>(1, dim)(engine);
  };
  auto next_seed = [&] { return engine(); };
  std::uniform_real_distribution<double> log_norm(-1.0, 2.0);

  std::optional<DensityMatrix> rho;
  if (mode == SuiteMode::Product) {
    const Index rank_s = rank_in(space.dim_s());
    const Index rank_e = rank_in(space.dim_e());
    const DensityMatrix rho_s = random_density(space.dim_s(), rank_s, next_seed());
    const DensityMatrix rho_e = random_density(space.dim_e(), rank_e, next_seed());
    rho.emplace(product_state(rho_s, rho_e));
  } else {
    const Index rank = rank_in(space.total());
    rho.emplace(random_density(space.total(), rank, next_seed()));
  }
  const HermitianMatrix raw = random_hermitian(space.total(), 1.0, next_seed());
  const double target = std::pow(10.0, log_norm(engine));
  const double norm = operator_norm(raw.matrix());
  HermitianMatrix h(raw.matrix() * (target / norm));
  return {std::move(*rho), std::move(h)};
}

}  // namespace

RunOutput run_suite(const SuiteOptions& options) {
  if (options.count < 1) throw ConfigError("field 'count': must be >= 1");
  if (options.seed > (std::uint64_t{1} << 53) - static_cast<std::uint64_t>(options.count)) {
    throw ConfigError("field 'seed': seed + count must stay below 2^53");
  }
  const BipartiteSpace space = as_config_error("dims", [&] {
    return BipartiteSpace(options.dims[0], options.dims[1]);
  });
  if (space.total() > 256) throw ConfigError("field 'dims': total dimension must be <= 256");

  RunOutput out;
  out.table.header = kSuiteColumns;
  double worst_flat = 0.0, worst_qe = -INFINITY, worst_m2 = -INFINITY, worst_inter = -INFINITY;
  double worst_defect = 0.0;
  double failures = 0.0;

  for (int i = 0; i < options.count; ++i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    const SuiteInstance inst = make_instance(seed, space, options.mode);
    const HamiltonianDecomposition decomp = decompose_hamiltonian(inst.h, space);
    const double derivative = purity_derivative_analytic(inst.rho, inst.h, space);
    const double b_qe = bound_interaction(inst.rho, decomp, space);
    const double b_m2 = bound_second_moment(inst.rho, inst.h);
    const double b_inter = intermediate_bound(inst.rho, inst.h);
    const double defect = product_defect(inst.rho, space);
    const double scale = derivative_scale(inst.h, inst.rho);
    const double magnitude = std::abs(derivative);
    const double slack = kBoundSlack * scale;

    const bool product_row = options.mode == SuiteMode::Product || defect <= 1e-12;
    bool pass = true;
    if (product_row) {
      pass = magnitude <= kFlatnessTolerance * scale;
      worst_flat = std::max(worst_flat, magnitude / scale);
      worst_defect = std::max(worst_defect, defect);
    }
    worst_qe = std::max(worst_qe, (magnitude - b_qe) / scale);
    worst_m2 = std::max(worst_m2, (magnitude - b_m2) / scale);
    worst_inter = std::max(worst_inter, (magnitude - b_inter) / scale);

    const std::string tag = "seed " + std::to_string(seed) + ": ";
    if (!pass) {
      failures += 1.0;
      record_violation(out.violations, tag + "non-flat derivative " + format_double(derivative) +
                                           " at a product state");
    }
    if (magnitude - b_qe > slack) {
      record_violation(out.violations, tag + "|dP/dt| exceeds bound_qe");
    }
    if (magnitude - b_m2 > slack) {
      record_violation(out.violations, tag + "|dP/dt| exceeds bound_m2");
    }
    if (magnitude - b_inter > slack || b_inter - b_m2 > slack) {
      record_violation(out.violations, tag + "bound chain |dP/dt| <= 4 sum p||He|| <= 4 sqrt(m2) broken");
    }
    out.table.add_row({static_cast<double>(seed), derivative, b_qe, b_m2, b_inter, defect,
                       pass ? 1.0 : 0.0});
  }
  out.table.add_footer({std::string("max_violation"), worst_flat, worst_qe, worst_m2, worst_inter,
                        worst_defect, failures});
  return out;
}

RunOutput run_study(const std::string& family, const std::vector<int>& levels) {
  const TruncationFamily fam = as_config_error("family", [&] { return truncation_family(family); });
  const ConvergenceReport report =
      as_config_error("levels", [&] { return truncation_study(fam, levels); });
  RunOutput out;
  out.table.header = kTruncationColumns;
  for (const auto& d : report.values) {
    out.table.add_row({static_cast<double>(d.level), d.m1, d.m2, d.commutator_trace_norm,
                       d.eigen_weighted_energy_sum});
  }
  std::vector<Cell> footer{std::string("classification")};
  for (std::size_t c = 1; c < kTruncationColumns.size(); ++c) {
    footer.emplace_back(report.growth_of(kTruncationColumns[c]).to_string());
  }
  out.table.add_footer(std::move(footer));
  return out;
}

RunOutput run_scenario(const ScenarioConfig& config) {
  switch (config.scenario) {
    case ScenarioKind::RemarkFamily:
    case ScenarioKind::CommutingFamily:
      return run_study(std::string(to_string(config.scenario)), config.levels);
    case ScenarioKind::TwoQubitIsing:
    case ScenarioKind::Custom:
      return run_trajectory(config);
  }
  throw ConfigError("unsupported scenario");
}

}  // namespace purdyn
