#pragma once

// Upper bounds on the reduced-purity derivative and the one-directional
// correlation witness built on it.
//
// A non-zero derivative certifies that the joint state is not a product
// state. A vanishing derivative certifies nothing, so the witness only ever
// answers "correlated" or "inconclusive".

#include <string_view>

#include "purdyn/dynamics.hpp"
#include "purdyn/states.hpp"

namespace purdyn {

/// Relative floor of the witness threshold: theta >= kWitnessFloor * max(1, sqrt(m2)).
inline constexpr double kWitnessFloor = 1e-8;

/// Relative flatness tolerance: |dP_S/dt| <= kFlatnessTolerance * max(1, sqrt(m2)).
inline constexpr double kFlatnessTolerance = 1e-9;

enum class Verdict { Correlated, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct WitnessVerdict {
  double derivative = 0.0;
  /// Effective threshold after applying the noise floor.
  double threshold = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// 4 sqrt(2) ||H_int|| sqrt(I(rho))
  double bound_qe = 0.0;
  /// 4 sqrt(m2)
  double bound_m2 = 0.0;
};

struct FlatnessReport {
  double derivative = 0.0;
  bool is_flat = false;
  /// ||rho - rho_S (x) rho_E||_1 of the state that was evaluated.
  double product_defect = 0.0;
};

/// 4 sqrt(2) ||H_int||_op sqrt(I(rho)), mutual information in nats.
double bound_interaction(const DensityMatrix& rho, const HamiltonianDecomposition& decomp,
                         const BipartiteSpace& space);

/// 4 sqrt(m2).
double bound_second_moment(const DensityMatrix& rho, const HermitianMatrix& h);

/// 4 sum_k p_k ||H e_k||; lies between |dP_S/dt| and bound_second_moment.
double intermediate_bound(const DensityMatrix& rho, const HermitianMatrix& h);

/// Effective threshold max(requested, kWitnessFloor * max(1, sqrt(m2))).
double effective_threshold(double requested, const DensityMatrix& rho, const HermitianMatrix& h);

/// Evaluates the derivative and both bounds for `decomp.h_total`.
/// Requires threshold > 0.
WitnessVerdict correlation_witness(const DensityMatrix& rho,
                                   const HamiltonianDecomposition& decomp,
                                   const BipartiteSpace& space, double threshold);

/// Same, using the canonical decomposition of `h` for the interaction bound.
WitnessVerdict correlation_witness(const DensityMatrix& rho, const HermitianMatrix& h,
                                   const BipartiteSpace& space, double threshold);

/// Builds rho_S (x) rho_E and checks that the purity derivative is flat
/// within kFlatnessTolerance * max(1, sqrt(m2)).
FlatnessReport check_product_flat(const DensityMatrix& rho_s, const DensityMatrix& rho_e,
                                  const HermitianMatrix& h, const BipartiteSpace& space);

/// Flatness of the derivative at an arbitrary joint state.
FlatnessReport check_flat(const DensityMatrix& rho, const HermitianMatrix& h,
                          const BipartiteSpace& space);

}  // namespace purdyn
