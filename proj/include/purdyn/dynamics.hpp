#pragma once

// Unitary evolution, the reduced-purity derivative, energy moments and the
// local/interaction split of a bipartite Hamiltonian.

#include "purdyn/matrix.hpp"
#include "purdyn/states.hpp"

namespace purdyn {

/// H = h_s (x) I + I (x) h_e + h_int on a bipartite space.
struct HamiltonianDecomposition {
  HermitianMatrix h_total;
  HermitianMatrix h_s;
  HermitianMatrix h_e;
  HermitianMatrix h_int;
  /// ||h_total - (h_s (x) I + I (x) h_e + h_int)||_max
  double residual;

  /// Builds H from explicitly supplied parts. The interaction is not
  /// required to have vanishing partial traces.
  static HamiltonianDecomposition from_parts(const HermitianMatrix& h_s,
                                             const HermitianMatrix& h_e,
                                             const HermitianMatrix& h_int,
                                             const BipartiteSpace& space);

  /// Validates explicit parts against a given total:
  /// residual <= 1e-10 * max(1, ||H||_max), else InvalidArgument.
  static HamiltonianDecomposition from_parts(const HermitianMatrix& h_total,
                                             const HermitianMatrix& h_s,
                                             const HermitianMatrix& h_e,
                                             const HermitianMatrix& h_int,
                                             const BipartiteSpace& space);
};

/// h_s (x) I_E + I_S (x) h_e.
ComplexMatrix local_part(const HermitianMatrix& h_s, const HermitianMatrix& h_e);

/// Canonical split: with h0 = Tr H / (d_S d_E),
///   h_s = Tr_E(H) / d_E - (h0 / 2) I_S,  h_e = Tr_S(H) / d_S - (h0 / 2) I_E,
/// and h_int the remainder. h_int has vanishing partial traces and is the
/// Hilbert-Schmidt-smallest interaction among all valid splits.
HamiltonianDecomposition decompose_hamiltonian(const HermitianMatrix& h,
                                               const BipartiteSpace& space);

/// U(t) rho0 U(t)^dagger.
DensityMatrix evolve(const DensityMatrix& rho0, const HermitianMatrix& h, double t);

/// Same, reusing a propagator built once for H.
DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& propagator, double t);

/// -i [H, rho].
ComplexMatrix liouvillian(const DensityMatrix& rho, const HermitianMatrix& h);

/// d/dt Tr(rho_S(t)^2) at the instant where the joint state is `rho`:
///   -2i Tr((rho_S (x) I_E) [H, rho]).
/// Throws NumericalError if the imaginary residue exceeds
/// 1e-10 * max(1, sqrt(m2)).
double purity_derivative_analytic(const DensityMatrix& rho, const HermitianMatrix& h,
                                  const BipartiteSpace& space);

/// Central difference (P_S(t + h) - P_S(t - h)) / 2h of the reduced purity
/// along the exact trajectory started at rho0.
double purity_derivative_fd(const DensityMatrix& rho0, const HermitianMatrix& h,
                            const BipartiteSpace& space, double t, double step);

double purity_derivative_fd(const DensityMatrix& rho0, const Propagator& propagator,
                            const BipartiteSpace& space, double t, double step);

/// 1e-5 * max(1, 1 / ||H||_op).
double default_fd_step(const HermitianMatrix& h);

/// m_k = sum_i lambda_i^k <v_i|rho|v_i> over the spectral decomposition of H.
double moment(const HermitianMatrix& h, const DensityMatrix& rho, int k);
double moment(const SpectralDecomposition& h_spectrum, const DensityMatrix& rho, int k);

/// m2 - m1^2, clamped at zero (values below -1e-10 * max(1, m2) throw).
double energy_variance(const HermitianMatrix& h, const DensityMatrix& rho);

/// sum_k p_k ||H e_k|| over the eigen-decomposition of rho, skipping
/// p_k < 1e-15.
double eigen_weighted_energy_sum(const HermitianMatrix& h, const DensityMatrix& rho);

/// max(1, sqrt(m2)), the scale used by every derivative tolerance.
double derivative_scale(const HermitianMatrix& h, const DensityMatrix& rho);

}  // namespace purdyn
