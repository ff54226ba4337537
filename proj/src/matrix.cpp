#include "purdyn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "purdyn/errors.hpp"

namespace purdyn {

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

double hermiticity_defect(const ComplexMatrix& a) {
  return max_abs(a - a.adjoint());
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix");
  require_finite(a, "HermitianMatrix");
  defect_ = purdyn::hermiticity_defect(a);
  const double allowed = kHermitianTolerance * std::max(1.0, max_abs(a));
  if (defect_ > allowed) {
    throw InvalidArgument("HermitianMatrix: hermiticity defect " + std::to_string(defect_) +
                          " exceeds tolerance " + std::to_string(allowed));
  }
  matrix_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

ComplexMatrix SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  ComplexVector diag(dim());
  for (Index k = 0; k < dim(); ++k) diag(k) = f(eigenvalues(k));
  return eigenvectors * diag.asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

namespace {

// Replaces the columns [first, last) of `vecs`, which span one eigenspace,
// with the Gram-Schmidt orthonormalization of the canonical basis vectors
// projected onto that eigenspace, scanned in index order.
void canonicalize_eigenspace(ComplexMatrix& vecs, Index first, Index last) {
  const Index n = vecs.rows();
  const Index m = last - first;
  const ComplexMatrix block = vecs.middleCols(first, m);
  ComplexMatrix basis(n, m);
  Index found = 0;
  // Residual norms sum to m - found over all e_j, so some e_j always clears
  // 0.5 / n until the eigenspace is exhausted.
  const double accept = 0.5 / static_cast<double>(n);
  for (Index j = 0; j < n && found < m; ++j) {
    ComplexVector v = block * block.row(j).adjoint();
    for (Index k = 0; k < found; ++k) {
      v -= basis.col(k) * basis.col(k).dot(v);
    }
    // Second Gram-Schmidt pass.
    for (Index k = 0; k < found; ++k) {
      v -= basis.col(k) * basis.col(k).dot(v);
    }
    const double norm2 = v.squaredNorm();
    if (norm2 > accept) {
      basis.col(found++) = v / std::sqrt(norm2);
    }
  }
  if (found != m) {
    throw NumericalError("hermitian_eig: failed to canonicalize a degenerate eigenspace");
  }
  vecs.middleCols(first, m) = basis;
}

}  // namespace

SpectralDecomposition hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const Index n = out.dim();
  const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  const double cluster_tol =
      16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  Index first = 0;
  for (Index k = 1; k <= n; ++k) {
    if (k == n || out.eigenvalues(k) - out.eigenvalues(k - 1) > cluster_tol) {
      canonicalize_eigenspace(out.eigenvectors, first, k);
      first = k;
    }
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) {
    throw DimensionError("commutator: operands have dimensions " + std::to_string(a.rows()) +
                         " and " + std::to_string(b.rows()));
  }
  return a * b - b * a;
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  if (a.rows() <= 16) {
    return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues().sum();
  }
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues().sum();
}

double trace_norm(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("trace_norm: eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= 16) {
    return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
  }
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues()(0);
}

Propagator::Propagator(const HermitianMatrix& h) : spectrum_(hermitian_eig(h)) {}

Propagator::Propagator(SpectralDecomposition spectrum) : spectrum_(std::move(spectrum)) {}

ComplexMatrix Propagator::at(double t) const {
  if (!std::isfinite(t)) {
    throw InvalidArgument("propagator: time must be finite");
  }
  if (std::abs(t) < kZeroTime) {
    return ComplexMatrix::Identity(spectrum_.dim(), spectrum_.dim());
  }
  return spectrum_.apply([t](double lambda) { return std::exp(-kI * (t * lambda)); });
}

ComplexMatrix propagator(const HermitianMatrix& h, double t) {
  return Propagator(h).at(t);
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace purdyn
