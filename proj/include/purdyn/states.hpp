#pragma once

// Density matrices, bipartite structure and static information quantities.
// Entropies are in nats throughout.

#include <cstdint>

#include "purdyn/matrix.hpp"

namespace purdyn {

/// Eigenvalues in [-kPsdTolerance, 0) are clipped to zero; more negative
/// values reject the state.
inline constexpr double kPsdTolerance = 1e-10;

/// Allowed |Tr(rho) - 1|.
inline constexpr double kTraceTolerance = 1e-10;

/// Eigenvalues below this contribute nothing to the von Neumann entropy.
inline constexpr double kEntropyCutoff = 1e-15;

/// Dimension pair (d_S, d_E) of H_S (x) H_E. Basis element (i, j) has flat
/// index i * d_E + j.
class BipartiteSpace {
 public:
  BipartiteSpace(Index dim_s, Index dim_e);

  Index dim_s() const noexcept { return dim_s_; }
  Index dim_e() const noexcept { return dim_e_; }
  Index total() const noexcept { return dim_s_ * dim_e_; }

  /// Throws DimensionError unless `dim == total()`.
  void require_matches(Index dim, const char* what) const;

  friend bool operator==(const BipartiteSpace&, const BipartiteSpace&) = default;

 private:
  Index dim_s_;
  Index dim_e_;
};

/// Which tensor factor is traced out.
enum class Subsystem { S, E };

/// Partial trace of an arbitrary operator on the joint space.
ComplexMatrix partial_trace(const ComplexMatrix& op, const BipartiteSpace& space,
                            Subsystem traced_out);

/// A positive semidefinite, unit-trace operator with its cached
/// eigen-decomposition rho = sum_k p_k |e_k><e_k|.
class DensityMatrix {
 public:
  /// Validates finiteness, Hermiticity, unit trace and positivity. Slightly
  /// negative eigenvalues (>= -kPsdTolerance) are clipped and the spectrum is
  /// renormalized; the stored matrix is then rebuilt from it.
  explicit DensityMatrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return matrix_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return matrix_; }
  const SpectralDecomposition& eigen() const noexcept { return eigen_; }
  const RealVector& probabilities() const noexcept { return eigen_.eigenvalues; }
  double psd_defect() const noexcept { return psd_defect_; }
  Index dim() const noexcept { return matrix_.dim(); }

 private:
  DensityMatrix(HermitianMatrix m, SpectralDecomposition eigen, double psd_defect);
  static DensityMatrix validate(const ComplexMatrix& m);

  HermitianMatrix matrix_;
  SpectralDecomposition eigen_;
  double psd_defect_;
};

/// |psi><psi| / ||psi||^2.
DensityMatrix from_pure(const ComplexVector& psi);

/// I / dim.
DensityMatrix maximally_mixed(Index dim);

DensityMatrix product_state(const DensityMatrix& rho_s, const DensityMatrix& rho_e);

/// Reduced state after tracing out `traced_out`.
DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteSpace& space,
                            Subsystem traced_out);

/// rho_S = Tr_E rho.
inline DensityMatrix reduce_to_s(const DensityMatrix& rho, const BipartiteSpace& space) {
  return partial_trace(rho, space, Subsystem::E);
}

/// rho_E = Tr_S rho.
inline DensityMatrix reduce_to_e(const DensityMatrix& rho, const BipartiteSpace& space) {
  return partial_trace(rho, space, Subsystem::S);
}

/// Tr rho^2 = sum_k p_k^2.
double purity(const DensityMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);

/// (1 / (1 - alpha)) ln sum_k p_k^alpha for alpha > 0, alpha != 1.
double renyi_entropy(const DensityMatrix& rho, double alpha);

/// I(rho) = S(rho_S) + S(rho_E) - S(rho), clamped at zero when the raw value
/// is within -1e-10.
double mutual_information(const DensityMatrix& rho, const BipartiteSpace& space);

/// ||rho - rho_S (x) rho_E||_1.
double product_defect(const DensityMatrix& rho, const BipartiteSpace& space);

/// product_defect(rho, space) <= tol.
bool is_product(const DensityMatrix& rho, const BipartiteSpace& space, double tol);

/// G G^dagger / Tr(G G^dagger) for a dim x rank standard complex Gaussian G.
DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed);

/// scale * (G + G^dagger) / 2 for a dim x dim standard complex Gaussian G.
HermitianMatrix random_hermitian(Index dim, double scale, std::uint64_t seed);

/// Normalized standard complex Gaussian vector.
ComplexVector random_pure_vector(Index dim, std::uint64_t seed);

}  // namespace purdyn
