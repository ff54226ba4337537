#include "purdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "purdyn/errors.hpp"

namespace purdyn {

namespace {

double second_moment_direct(const HermitianMatrix& h, const DensityMatrix& rho) {
  // Tr(H^2 rho) >= 0 up to rounding.
  const ComplexMatrix h_rho = h.matrix() * rho.matrix();
  return std::max(0.0, (h.matrix() * h_rho).trace().real());
}

void require_same_dim(const HermitianMatrix& h, const DensityMatrix& rho, const char* what) {
  if (h.dim() != rho.dim()) {
    throw DimensionError(std::string(what) + ": Hamiltonian dimension " +
                         std::to_string(h.dim()) + " != state dimension " +
                         std::to_string(rho.dim()));
  }
}

double reduced_purity(const ComplexMatrix& rho, const BipartiteSpace& space) {
  return partial_trace(rho, space, Subsystem::E).squaredNorm();
}

}  // namespace

ComplexMatrix local_part(const HermitianMatrix& h_s, const HermitianMatrix& h_e) {
  const Index ds = h_s.dim();
  const Index de = h_e.dim();
  return tensor_product(h_s.matrix(), ComplexMatrix::Identity(de, de)) +
         tensor_product(ComplexMatrix::Identity(ds, ds), h_e.matrix());
}

HamiltonianDecomposition HamiltonianDecomposition::from_parts(const HermitianMatrix& h_s,
                                                              const HermitianMatrix& h_e,
                                                              const HermitianMatrix& h_int,
                                                              const BipartiteSpace& space) {
  if (h_s.dim() != space.dim_s() || h_e.dim() != space.dim_e()) {
    throw DimensionError("HamiltonianDecomposition: local parts do not match the space");
  }
  space.require_matches(h_int.dim(), "HamiltonianDecomposition");
  HermitianMatrix h_total(local_part(h_s, h_e) + h_int.matrix());
  return HamiltonianDecomposition{h_total, h_s, h_e, h_int, 0.0};
}

HamiltonianDecomposition HamiltonianDecomposition::from_parts(const HermitianMatrix& h_total,
                                                              const HermitianMatrix& h_s,
                                                              const HermitianMatrix& h_e,
                                                              const HermitianMatrix& h_int,
                                                              const BipartiteSpace& space) {
  HamiltonianDecomposition out = from_parts(h_s, h_e, h_int, space);
  space.require_matches(h_total.dim(), "HamiltonianDecomposition");
  out.residual = max_abs(h_total.matrix() - out.h_total.matrix());
  if (out.residual > 1e-10 * std::max(1.0, max_abs(h_total.matrix()))) {
    throw InvalidArgument("HamiltonianDecomposition: parts do not reconstruct H (residual " +
                          std::to_string(out.residual) + ")");
  }
  out.h_total = h_total;
  return out;
}

HamiltonianDecomposition decompose_hamiltonian(const HermitianMatrix& h,
                                               const BipartiteSpace& space) {
  space.require_matches(h.dim(), "decompose_hamiltonian");
  const Index ds = space.dim_s();
  const Index de = space.dim_e();
  const Complex h0 = h.matrix().trace() / static_cast<double>(ds * de);
  const ComplexMatrix hs = partial_trace(h.matrix(), space, Subsystem::E) / static_cast<double>(de) -
                           0.5 * h0 * ComplexMatrix::Identity(ds, ds);
  const ComplexMatrix he = partial_trace(h.matrix(), space, Subsystem::S) / static_cast<double>(ds) -
                           0.5 * h0 * ComplexMatrix::Identity(de, de);
  HermitianMatrix h_s(hs);
  HermitianMatrix h_e(he);
  HermitianMatrix h_int(h.matrix() - local_part(h_s, h_e));
  const double residual =
      max_abs(h.matrix() - (local_part(h_s, h_e) + h_int.matrix()));
  if (residual > 1e-10 * std::max(1.0, max_abs(h.matrix()))) {
    throw NumericalError("decompose_hamiltonian: reconstruction residual " +
                         std::to_string(residual));
  }
  return HamiltonianDecomposition{h, std::move(h_s), std::move(h_e), std::move(h_int), residual};
}

DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& propagator, double t) {
  if (propagator.spectrum().dim() != rho0.dim()) {
    throw DimensionError("evolve: Hamiltonian and state dimensions differ");
  }
  if (std::abs(t) < kZeroTime) return rho0;
  const ComplexMatrix u = propagator.at(t);
  return DensityMatrix(u * rho0.matrix() * u.adjoint());
}

DensityMatrix evolve(const DensityMatrix& rho0, const HermitianMatrix& h, double t) {
  require_same_dim(h, rho0, "evolve");
  return evolve(rho0, Propagator(h), t);
}

ComplexMatrix liouvillian(const DensityMatrix& rho, const HermitianMatrix& h) {
  require_same_dim(h, rho, "liouvillian");
  return -kI * commutator(h.matrix(), rho.matrix());
}

double purity_derivative_analytic(const DensityMatrix& rho, const HermitianMatrix& h,
                                  const BipartiteSpace& space) {
  require_same_dim(h, rho, "purity_derivative_analytic");
  space.require_matches(rho.dim(), "purity_derivative_analytic");
  // Tr((rho_S (x) I) C) = Tr_S(rho_S Tr_E C).
  const ComplexMatrix comm = commutator(h.matrix(), rho.matrix());
  const ComplexMatrix rho_s = partial_trace(rho.matrix(), space, Subsystem::E);
  const ComplexMatrix comm_s = partial_trace(comm, space, Subsystem::E);
  const Complex value = -2.0 * kI * (rho_s.cwiseProduct(comm_s.transpose())).sum();
  const double allowed = 1e-10 * std::max(1.0, std::sqrt(second_moment_direct(h, rho)));
  if (std::abs(value.imag()) > allowed) {
    throw NumericalError("purity_derivative_analytic: imaginary residue " +
                         std::to_string(value.imag()) + " exceeds " + std::to_string(allowed));
  }
  return value.real();
}

double purity_derivative_fd(const DensityMatrix& rho0, const Propagator& propagator,
                            const BipartiteSpace& space, double t, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidArgument("purity_derivative_fd: step must be finite and > 0");
  }
  if (propagator.spectrum().dim() != rho0.dim()) {
    throw DimensionError("purity_derivative_fd: Hamiltonian and state dimensions differ");
  }
  space.require_matches(rho0.dim(), "purity_derivative_fd");
  auto purity_at = [&](double time) {
    const ComplexMatrix u = propagator.at(time);
    return reduced_purity(u * rho0.matrix() * u.adjoint(), space);
  };
  return (purity_at(t + step) - purity_at(t - step)) / (2.0 * step);
}

double purity_derivative_fd(const DensityMatrix& rho0, const HermitianMatrix& h,
                            const BipartiteSpace& space, double t, double step) {
  require_same_dim(h, rho0, "purity_derivative_fd");
  return purity_derivative_fd(rho0, Propagator(h), space, t, step);
}

double default_fd_step(const HermitianMatrix& h) {
  const double norm = operator_norm(h.matrix());
  return 1e-5 * std::max(1.0, norm > 0.0 ? 1.0 / norm : 1.0);
}

double moment(const SpectralDecomposition& h_spectrum, const DensityMatrix& rho, int k) {
  if (k < 1) throw InvalidArgument("moment: order must be >= 1");
  if (h_spectrum.dim() != rho.dim()) {
    throw DimensionError("moment: Hamiltonian and state dimensions differ");
  }
  // Spectral weights <v_i|rho|v_i>.
  const ComplexMatrix& v = h_spectrum.eigenvectors;
  const RealVector weights = (v.adjoint() * rho.matrix() * v).diagonal().real();
  double sum = 0.0;
  for (Index i = 0; i < h_spectrum.dim(); ++i) {
    sum += std::pow(h_spectrum.eigenvalues(i), k) * weights(i);
  }
  return sum;
}

double moment(const HermitianMatrix& h, const DensityMatrix& rho, int k) {
  require_same_dim(h, rho, "moment");
  return moment(hermitian_eig(h), rho, k);
}

double energy_variance(const HermitianMatrix& h, const DensityMatrix& rho) {
  require_same_dim(h, rho, "energy_variance");
  const SpectralDecomposition spectrum = hermitian_eig(h);
  const double m1 = moment(spectrum, rho, 1);
  const double m2 = moment(spectrum, rho, 2);
  const double v = m2 - m1 * m1;
  if (v < -1e-10 * std::max(1.0, m2)) {
    throw NumericalError("energy_variance: negative variance " + std::to_string(v));
  }
  return std::max(0.0, v);
}

double eigen_weighted_energy_sum(const HermitianMatrix& h, const DensityMatrix& rho) {
  require_same_dim(h, rho, "eigen_weighted_energy_sum");
  const SpectralDecomposition& eig = rho.eigen();
  double sum = 0.0;
  for (Index k = 0; k < eig.dim(); ++k) {
    const double p = eig.eigenvalues(k);
    if (p < kEntropyCutoff) continue;
    sum += p * (h.matrix() * eig.eigenvectors.col(k)).norm();
  }
  return sum;
}

double derivative_scale(const HermitianMatrix& h, const DensityMatrix& rho) {
  require_same_dim(h, rho, "derivative_scale");
  return std::max(1.0, std::sqrt(second_moment_direct(h, rho)));
}

}  // namespace purdyn
