#include "purdyn/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "purdyn/errors.hpp"

namespace purdyn {

BipartiteSpace::BipartiteSpace(Index dim_s, Index dim_e) : dim_s_(dim_s), dim_e_(dim_e) {
  if (dim_s < 1 || dim_e < 1) {
    throw InvalidArgument("BipartiteSpace: dimensions must be >= 1, got (" +
                          std::to_string(dim_s) + ", " + std::to_string(dim_e) + ")");
  }
}

void BipartiteSpace::require_matches(Index dim, const char* what) const {
  if (dim != total()) {
    throw DimensionError(std::string(what) + ": operator dimension " + std::to_string(dim) +
                         " does not match bipartite space " + std::to_string(dim_s_) + "x" +
                         std::to_string(dim_e_));
  }
}

ComplexMatrix partial_trace(const ComplexMatrix& op, const BipartiteSpace& space,
                            Subsystem traced_out) {
  require_square(op, "partial_trace");
  space.require_matches(op.rows(), "partial_trace");
  const Index ds = space.dim_s();
  const Index de = space.dim_e();
  if (traced_out == Subsystem::E) {
    ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i) {
      for (Index k = 0; k < ds; ++k) {
        out(i, k) = op.block(i * de, k * de, de, de).trace();
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(de, de);
  for (Index i = 0; i < ds; ++i) {
    out += op.block(i * de, i * de, de, de);
  }
  return out;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : DensityMatrix(validate(m)) {}

DensityMatrix::DensityMatrix(HermitianMatrix m, SpectralDecomposition eigen, double psd_defect)
    : matrix_(std::move(m)), eigen_(std::move(eigen)), psd_defect_(psd_defect) {}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m) {
  HermitianMatrix h(m);
  const double trace = h.matrix().trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw InvalidArgument("DensityMatrix: trace " + std::to_string(trace) + " is not 1");
  }
  SpectralDecomposition eigen = hermitian_eig(h);
  const double min_eig = eigen.eigenvalues.minCoeff();
  const double defect = std::max(0.0, -min_eig);
  if (defect > kPsdTolerance) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
  if (min_eig < 0.0) {
    eigen.eigenvalues = eigen.eigenvalues.cwiseMax(0.0);
    eigen.eigenvalues /= eigen.eigenvalues.sum();
    HermitianMatrix rebuilt(eigen.reconstruct());
    return DensityMatrix(std::move(rebuilt), std::move(eigen), defect);
  }
  return DensityMatrix(std::move(h), std::move(eigen), defect);
}

DensityMatrix from_pure(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw InvalidArgument("from_pure: state vector must be non-zero and finite");
  }
  return DensityMatrix(psi * psi.adjoint() / norm2);
}

DensityMatrix maximally_mixed(Index dim) {
  if (dim < 1) throw InvalidArgument("maximally_mixed: dim must be >= 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix product_state(const DensityMatrix& rho_s, const DensityMatrix& rho_e) {
  return DensityMatrix(tensor_product(rho_s.matrix(), rho_e.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteSpace& space,
                            Subsystem traced_out) {
  return DensityMatrix(partial_trace(rho.matrix(), space, traced_out));
}

double purity(const DensityMatrix& rho) {
  return rho.probabilities().squaredNorm();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.probabilities()) {
    if (p >= kEntropyCutoff) s -= p * std::log(p);
  }
  return std::max(0.0, s);
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw InvalidArgument("renyi_entropy: alpha must be finite, > 0 and != 1");
  }
  double sum = 0.0;
  for (double p : rho.probabilities()) {
    if (p > 0.0) sum += std::pow(p, alpha);
  }
  return std::log(sum) / (1.0 - alpha);
}

double mutual_information(const DensityMatrix& rho, const BipartiteSpace& space) {
  space.require_matches(rho.dim(), "mutual_information");
  const double raw = von_neumann_entropy(reduce_to_s(rho, space)) +
                     von_neumann_entropy(reduce_to_e(rho, space)) - von_neumann_entropy(rho);
  if (raw < -1e-10) {
    throw NumericalError("mutual_information: negative value " + std::to_string(raw));
  }
  return std::max(0.0, raw);
}

double product_defect(const DensityMatrix& rho, const BipartiteSpace& space) {
  space.require_matches(rho.dim(), "product_defect");
  const ComplexMatrix rho_s = partial_trace(rho.matrix(), space, Subsystem::E);
  const ComplexMatrix rho_e = partial_trace(rho.matrix(), space, Subsystem::S);
  const ComplexMatrix diff = rho.matrix() - tensor_product(rho_s, rho_e);
  return trace_norm(HermitianMatrix(0.5 * (diff + diff.adjoint())));
}

bool is_product(const DensityMatrix& rho, const BipartiteSpace& space, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("is_product: tolerance must be > 0");
  return product_defect(rho, space) <= tol;
}

namespace {

ComplexMatrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw InvalidArgument("random_density: need 1 <= rank <= dim, got rank " +
                          std::to_string(rank) + " for dim " + std::to_string(dim));
  }
  const ComplexMatrix g = gaussian_matrix(dim, rank, seed);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

HermitianMatrix random_hermitian(Index dim, double scale, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("random_hermitian: dim must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("random_hermitian: scale must be finite and > 0");
  }
  const ComplexMatrix g = gaussian_matrix(dim, dim, seed);
  return HermitianMatrix(scale * 0.5 * (g + g.adjoint()));
}

ComplexVector random_pure_vector(Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("random_pure_vector: dim must be >= 1");
  ComplexVector v = gaussian_matrix(dim, 1, seed).col(0);
  return v / v.norm();
}

}  // namespace purdyn
