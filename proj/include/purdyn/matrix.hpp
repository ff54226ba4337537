#pragma once

// Dense complex-matrix kernels shared by every other part of the library.
//
// All operators are stored as Eigen::MatrixXcd in double precision. Bipartite
// operators use the flat index i * d_E + j for basis element (i, j), i.e. the
// S factor is the slow (outer) index; tensor_product follows the same order.

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace purdyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Relative Hermiticity tolerance; the absolute bound is this times
/// max(1, max_abs(A)).
inline constexpr double kHermitianTolerance = 1e-10;

/// Times with |t| below this produce the exact identity propagator.
inline constexpr double kZeroTime = 1e-15;

/// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, std::string_view what);

/// Throws DimensionError if `a` is not square.
void require_square(const ComplexMatrix& a, std::string_view what);

/// max |A_ij - conj(A_ji)|.
double hermiticity_defect(const ComplexMatrix& a);

/// A validated Hermitian operator. Construction rejects inputs whose
/// Hermiticity defect exceeds the tolerance and stores (A + A^dagger) / 2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a);

  static HermitianMatrix zero(Index dim);
  static HermitianMatrix identity(Index dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }
  double hermiticity_defect() const noexcept { return defect_; }

 private:
  ComplexMatrix matrix_;
  double defect_ = 0.0;
};

/// Eigen-decomposition of a Hermitian operator: ascending eigenvalues and the
/// matching orthonormal eigenvectors as columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }

  /// V f(Lambda) V^dagger.
  ComplexMatrix apply(const std::function<Complex(double)>& f) const;

  /// V Lambda V^dagger.
  ComplexMatrix reconstruct() const;
};

/// Eigen-decomposition with deterministic eigenvectors.
///
/// Eigenvalues closer than 16 n eps max(1, max|lambda|) are grouped into one
/// eigenspace. Every eigenspace basis is rebuilt by Gram-Schmidt on the
/// projections P e_0, P e_1, ... of the canonical basis vectors taken in index
/// order, so the result depends only on the eigenspaces, not on the phases
/// or rotation chosen by the underlying solver.
SpectralDecomposition hermitian_eig(const HermitianMatrix& a);

/// Kronecker product A (x) B with A as the outer (slow) index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

/// Sum of |eigenvalues|.
double trace_norm(const HermitianMatrix& a);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Evaluates e^{-itH} from one cached eigen-decomposition of H.
class Propagator {
 public:
  explicit Propagator(const HermitianMatrix& h);
  explicit Propagator(SpectralDecomposition spectrum);

  /// U(t) = V e^{-it Lambda} V^dagger; exactly the identity for |t| < 1e-15.
  ComplexMatrix at(double t) const;

  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }

 private:
  SpectralDecomposition spectrum_;
};

/// Convenience wrapper: Propagator(h).at(t).
ComplexMatrix propagator(const HermitianMatrix& h, double t);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace purdyn
