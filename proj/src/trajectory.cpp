#include "purdyn/trajectory.hpp"

#include <cmath>

#include "purdyn/errors.hpp"

namespace purdyn {

std::vector<double> linspace(double start, double stop, int steps) {
  if (steps < 2) throw InvalidArgument("linspace: need at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double width = stop - start;
  for (int k = 0; k < steps; ++k) {
    out[static_cast<std::size_t>(k)] = start + width * k / (steps - 1);
  }
  out.back() = stop;
  return out;
}

Trajectory sample_trajectory(const DensityMatrix& rho0, const HamiltonianDecomposition& decomp,
                             const BipartiteSpace& space, std::span<const double> times,
                             const TrajectoryOptions& options) {
  space.require_matches(rho0.dim(), "sample_trajectory");
  space.require_matches(decomp.h_total.dim(), "sample_trajectory");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) throw InvalidArgument("sample_trajectory: non-finite time");
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw InvalidArgument("sample_trajectory: times must be strictly increasing");
    }
  }
  const HermitianMatrix& h = decomp.h_total;
  const Propagator propagator(h);
  const double step = options.fd_step.value_or(default_fd_step(h));

  Trajectory out;
  out.times.assign(times.begin(), times.end());
  out.records.reserve(times.size());
  for (double t : times) {
    DensityMatrix state = evolve(rho0, propagator, t);
    const DensityMatrix rho_s = reduce_to_s(state, space);
    const DensityMatrix rho_e = reduce_to_e(state, space);
    const WitnessVerdict witness = correlation_witness(state, decomp, space, options.threshold);
    const double defect = product_defect(state, space);
    const double entropy_s = von_neumann_entropy(rho_s);
    const double entropy_e = von_neumann_entropy(rho_e);
    TrajectoryRecord record{
        .time = t,
        .state = std::move(state),
        .purity_s = purity(rho_s),
        .purity_e = purity(rho_e),
        .derivative_analytic = witness.derivative,
        .derivative_fd = purity_derivative_fd(rho0, propagator, space, t, step),
        .entropy_s = entropy_s,
        .entropy_e = entropy_e,
        .mutual_info = 0.0,
        .bound_qe = witness.bound_qe,
        .bound_m2 = witness.bound_m2,
        .witness = witness,
        .product_defect = defect,
        .is_product = defect <= options.product_tolerance,
    };
    record.mutual_info = mutual_information(record.state, space);
    out.records.push_back(std::move(record));
  }
  return out;
}

}  // namespace purdyn
