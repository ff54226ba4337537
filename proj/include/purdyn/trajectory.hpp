#pragma once

#include <optional>
#include <span>
#include <vector>

#include "purdyn/dynamics.hpp"
#include "purdyn/witness.hpp"

namespace purdyn {

struct TrajectoryRecord {
  double time;
  DensityMatrix state;
  double purity_s;
  double purity_e;
  double derivative_analytic;
  double derivative_fd;
  double entropy_s;
  double entropy_e;
  double mutual_info;
  double bound_qe;
  double bound_m2;
  WitnessVerdict witness;
  double product_defect;
  bool is_product;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<TrajectoryRecord> records;
};

struct TrajectoryOptions {
  /// Central-difference step; defaults to default_fd_step(H).
  std::optional<double> fd_step;
  /// Requested witness threshold before the noise floor is applied.
  double threshold = kWitnessFloor;
  /// Trace-norm tolerance of the is_product column.
  double product_tolerance = 1e-8;
};

/// `steps` equally spaced points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int steps);

/// Evaluates every record from t = 0 with one cached eigen-decomposition of
/// H; no step composition. Times must be strictly increasing.
Trajectory sample_trajectory(const DensityMatrix& rho0, const HamiltonianDecomposition& decomp,
                             const BipartiteSpace& space, std::span<const double> times,
                             const TrajectoryOptions& options = {});

}  // namespace purdyn
