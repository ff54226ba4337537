#include "purdyn/witness.hpp"

#include <algorithm>
#include <cmath>

#include "purdyn/errors.hpp"

namespace purdyn {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Correlated:
      return "correlated";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double bound_interaction(const DensityMatrix& rho, const HamiltonianDecomposition& decomp,
                         const BipartiteSpace& space) {
  space.require_matches(rho.dim(), "bound_interaction");
  space.require_matches(decomp.h_int.dim(), "bound_interaction");
  const double info = mutual_information(rho, space);
  if (info == 0.0) return 0.0;
  return 4.0 * std::sqrt(2.0) * operator_norm(decomp.h_int.matrix()) * std::sqrt(info);
}

double bound_second_moment(const DensityMatrix& rho, const HermitianMatrix& h) {
  return 4.0 * std::sqrt(std::max(0.0, moment(h, rho, 2)));
}

double intermediate_bound(const DensityMatrix& rho, const HermitianMatrix& h) {
  return 4.0 * eigen_weighted_energy_sum(h, rho);
}

double effective_threshold(double requested, const DensityMatrix& rho, const HermitianMatrix& h) {
  if (!(requested > 0.0) || !std::isfinite(requested)) {
    throw InvalidArgument("correlation_witness: threshold must be finite and > 0");
  }
  return std::max(requested, kWitnessFloor * derivative_scale(h, rho));
}

WitnessVerdict correlation_witness(const DensityMatrix& rho,
                                   const HamiltonianDecomposition& decomp,
                                   const BipartiteSpace& space, double threshold) {
  const HermitianMatrix& h = decomp.h_total;
  WitnessVerdict out;
  out.threshold = effective_threshold(threshold, rho, h);
  out.derivative = purity_derivative_analytic(rho, h, space);
  out.verdict = std::abs(out.derivative) > out.threshold ? Verdict::Correlated
                                                         : Verdict::Inconclusive;
  out.bound_qe = bound_interaction(rho, decomp, space);
  out.bound_m2 = bound_second_moment(rho, h);
  return out;
}

WitnessVerdict correlation_witness(const DensityMatrix& rho, const HermitianMatrix& h,
                                   const BipartiteSpace& space, double threshold) {
  return correlation_witness(rho, decompose_hamiltonian(h, space), space, threshold);
}

FlatnessReport check_flat(const DensityMatrix& rho, const HermitianMatrix& h,
                          const BipartiteSpace& space) {
  FlatnessReport out;
  out.derivative = purity_derivative_analytic(rho, h, space);
  out.is_flat = std::abs(out.derivative) <= kFlatnessTolerance * derivative_scale(h, rho);
  out.product_defect = product_defect(rho, space);
  return out;
}

FlatnessReport check_product_flat(const DensityMatrix& rho_s, const DensityMatrix& rho_e,
                                  const HermitianMatrix& h, const BipartiteSpace& space) {
  if (rho_s.dim() != space.dim_s() || rho_e.dim() != space.dim_e()) {
    throw DimensionError("check_product_flat: marginals do not match the space");
  }
  return check_flat(product_state(rho_s, rho_e), h, space);
}

}  // namespace purdyn
