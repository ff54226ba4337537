#include "purdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "purdyn/errors.hpp"
#include "purdyn/format.hpp"

namespace purdyn {

namespace {

constexpr Index kMaxDenseDim = 4096;
constexpr int kMaxLevels = 10'000'000;

void require_levels(int levels, const char* what) {
  if (levels < 1 || levels > kMaxLevels) {
    throw InvalidArgument(std::string(what) + ": level count must be in [1, " +
                          std::to_string(kMaxLevels) + "], got " + std::to_string(levels));
  }
}

ComplexMatrix scalar_block(double value) {
  ComplexMatrix m(1, 1);
  m(0, 0) = value;
  return m;
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

BlockPair::BlockPair(std::vector<OperatorBlock> blocks, double log_normalization, bool is_state)
    : blocks_(std::move(blocks)), log_normalization_(log_normalization), is_state_(is_state) {
  if (blocks_.empty()) throw InvalidArgument("BlockPair: no blocks");
  if (!std::isfinite(log_normalization_)) {
    throw InvalidArgument("BlockPair: non-finite normalization");
  }
  for (const auto& b : blocks_) {
    require_square(b.rho, "BlockPair rho block");
    require_square(b.h, "BlockPair H block");
    if (b.rho.rows() != b.h.rows()) {
      throw DimensionError("BlockPair: rho and H blocks differ in size");
    }
    dim_ += b.rho.rows();
  }
}

double BlockPair::scale(int exponent) const {
  return std::exp(std::log(2.0) * exponent - log_normalization_);
}

void BlockPair::validate() const {
  double total_trace = 0.0;
  for (const auto& b : blocks_) {
    const HermitianMatrix h(b.h);
    const HermitianMatrix rho(b.rho);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    const RealVector& p = solver.eigenvalues();
    if (p.minCoeff() < -kPsdTolerance * std::max(1.0, p.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("BlockPair: rho block is not positive semidefinite");
    }
    total_trace += std::ldexp(rho.matrix().trace().real(), b.rho_exponent);
  }
  total_trace /= std::exp(log_normalization_);
  if (is_state_ && std::abs(total_trace - 1.0) > kTraceTolerance) {
    throw InvalidArgument("BlockPair: total trace " + format_double(total_trace) + " is not 1");
  }
}

double BlockPair::moment(int k) const {
  if (k < 1) throw InvalidArgument("moment: order must be >= 1");
  double sum = 0.0;
  for (const auto& b : blocks_) {
    ComplexMatrix hk = b.h;
    for (int i = 1; i < k; ++i) hk = hk * b.h;
    const double mantissa = (hk * b.rho).trace().real();
    sum += std::ldexp(mantissa, b.rho_exponent + k * b.h_exponent) /
           std::exp(log_normalization_);
  }
  return sum;
}

double BlockPair::log_moment(int k) const {
  if (k < 1) throw InvalidArgument("log_moment: order must be >= 1");
  std::vector<double> logs;
  logs.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    ComplexMatrix hk = b.h;
    for (int i = 1; i < k; ++i) hk = hk * b.h;
    const double mantissa = (hk * b.rho).trace().real();
    if (mantissa < 0.0) {
      throw InvalidArgument("log_moment: negative block contribution");
    }
    if (mantissa == 0.0) continue;
    logs.push_back(std::log(mantissa) + std::log(2.0) * (b.rho_exponent + k * b.h_exponent));
  }
  if (logs.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return peak + std::log(acc) - log_normalization_;
}

double BlockPair::commutator_trace_norm() const {
  double sum = 0.0;
  for (const auto& b : blocks_) {
    const ComplexMatrix c = commutator(b.h, b.rho);
    if (c.isZero(0.0)) continue;
    sum += trace_norm(c) * scale(b.rho_exponent + b.h_exponent);
  }
  return sum;
}

double BlockPair::eigen_weighted_energy_sum() const {
  double sum = 0.0;
  for (const auto& b : blocks_) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(b.rho);
    const RealVector& p = solver.eigenvalues();
    const double cutoff = kEntropyCutoff * p.cwiseAbs().maxCoeff();
    for (Index i = 0; i < p.size(); ++i) {
      if (p(i) <= cutoff) continue;
      sum += p(i) * (b.h * solver.eigenvectors().col(i)).norm() *
             scale(b.rho_exponent + b.h_exponent);
    }
  }
  return sum;
}

double BlockPair::purity_derivative() const {
  double sum = 0.0;
  for (const auto& b : blocks_) {
    const Complex tr = (b.rho * commutator(b.h, b.rho)).trace();
    const Complex value = -2.0 * kI * tr;
    sum += value.real() * std::exp(std::log(2.0) * (2 * b.rho_exponent + b.h_exponent) -
                                   2.0 * log_normalization_);
  }
  return sum;
}

std::pair<DensityMatrix, HermitianMatrix> BlockPair::to_dense() const {
  if (!is_state_) throw InvalidArgument("to_dense: weights are not a normalized state");
  if (dim_ > kMaxDenseDim) {
    throw InvalidArgument("to_dense: dimension " + std::to_string(dim_) + " exceeds " +
                          std::to_string(kMaxDenseDim));
  }
  ComplexMatrix rho = ComplexMatrix::Zero(dim_, dim_);
  ComplexMatrix h = ComplexMatrix::Zero(dim_, dim_);
  Index offset = 0;
  const double norm = std::exp(log_normalization_);
  for (const auto& b : blocks_) {
    const Index n = b.rho.rows();
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        rho(offset + i, offset + j) =
            Complex(std::ldexp(b.rho(i, j).real(), b.rho_exponent),
                    std::ldexp(b.rho(i, j).imag(), b.rho_exponent)) /
            norm;
        h(offset + i, offset + j) = Complex(std::ldexp(b.h(i, j).real(), b.h_exponent),
                                            std::ldexp(b.h(i, j).imag(), b.h_exponent));
      }
    }
    offset += n;
  }
  if (!h.allFinite() || !rho.allFinite()) {
    throw InvalidArgument("to_dense: entries exceed the double range");
  }
  return {DensityMatrix(rho), HermitianMatrix(h)};
}

BlockPair remark_blocks(int levels, Weighting weighting) {
  require_levels(levels, "remark_blocks");
  std::vector<OperatorBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(levels));
  for (int n = 1; n <= levels; ++n) {
    const double inv = 1.0 / n;
    const double off = inv * std::sqrt(1.0 - inv * inv);
    OperatorBlock b;
    b.rho = ComplexMatrix::Zero(2, 2);
    b.rho(0, 0) = 1.0;
    b.rho_exponent = -n;
    b.h.resize(2, 2);
    b.h << inv * inv, off, off, 1.0 - inv * inv;
    b.h_exponent = n;
    blocks.push_back(std::move(b));
  }
  // Truncated weight sum_{n<=N} 2^-n = 1 - 2^-N.
  const bool renormalize = weighting == Weighting::Renormalized;
  const double log_norm = renormalize ? std::log1p(-std::ldexp(1.0, -levels)) : 0.0;
  return BlockPair(std::move(blocks), log_norm, renormalize);
}

BlockPair commuting_blocks(int levels, Weighting weighting) {
  require_levels(levels, "commuting_blocks");
  double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  const bool renormalize = weighting == Weighting::Renormalized;
  if (renormalize) {
    double partial = 0.0;
    // Smallest terms first.
    for (int k = levels; k >= 1; --k) partial += 1.0 / (static_cast<double>(k) * k);
    c = 1.0 / partial;
  }
  std::vector<OperatorBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(levels));
  for (int k = 1; k <= levels; ++k) {
    const double p = c / (static_cast<double>(k) * k);
    blocks.push_back(OperatorBlock{scalar_block(p), 0, scalar_block(1.0 / std::sqrt(p)), 0});
  }
  return BlockPair(std::move(blocks), 0.0, renormalize);
}

std::pair<DensityMatrix, HermitianMatrix> remark_family(int levels) {
  if (levels < 1 || levels > 1000) {
    throw InvalidArgument("remark_family: N must be in [1, 1000] for dense output, got " +
                          std::to_string(levels));
  }
  return remark_blocks(levels).to_dense();
}

std::pair<DensityMatrix, HermitianMatrix> commuting_family(int levels) {
  return commuting_blocks(levels).to_dense();
}

double TwoQubitIsing::purity_s(double t) {
  const double s = std::sin(2.0 * t);
  return 1.0 - 0.5 * s * s;
}

double TwoQubitIsing::purity_derivative(double t) { return -std::sin(4.0 * t); }

double TwoQubitIsing::mutual_information(double t) {
  const double c = std::cos(t) * std::cos(t);
  const double s = std::sin(t) * std::sin(t);
  auto term = [](double p) { return p >= kEntropyCutoff ? -p * std::log(p) : 0.0; };
  return 2.0 * (term(c) + term(s));
}

TwoQubitIsing two_qubit_ising() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  return TwoQubitIsing{from_pure(psi), HermitianMatrix(tensor_product(pauli::x(), pauli::x())),
                       BipartiteSpace(2, 2)};
}

double LevelDiagnostics::value(const std::string& name) const {
  if (name == "m1") return m1;
  if (name == "m2") return m2;
  if (name == "commutator_trace_norm") return commutator_trace_norm;
  if (name == "eigen_weighted_energy_sum") return eigen_weighted_energy_sum;
  if (name == "derivative") return derivative;
  throw InvalidArgument("unknown diagnostic '" + name + "'");
}

LevelDiagnostics diagnose(const BlockPair& pair, int level) {
  LevelDiagnostics d;
  d.level = level;
  d.m1 = pair.moment(1);
  d.log_m2 = pair.log_moment(2);
  d.m2 = std::exp(d.log_m2);
  d.commutator_trace_norm = pair.commutator_trace_norm();
  d.eigen_weighted_energy_sum = pair.eigen_weighted_energy_sum();
  d.derivative = pair.purity_derivative();
  return d;
}

std::string Growth::to_string() const {
  switch (kind) {
    case Kind::Convergent:
      return "convergent(" + format_double(parameter) + ")";
    case Kind::Logarithmic:
      return "logarithmic(" + format_double(parameter) + ")";
    case Kind::DivergentPower:
      return "divergent-power(" + format_double(parameter) + ")";
  }
  return {};
}

Growth classify_growth(const std::vector<int>& levels, const std::vector<double>& values,
                       const std::vector<double>& log_values) {
  const std::size_t n = levels.size();
  if (n < 2 || values.size() != n || log_values.size() != n) {
    throw InvalidArgument("classify_growth: need at least two levels with one value each");
  }
  const std::size_t window = std::min(n, std::max<std::size_t>(3, (n + 1) / 2));
  const std::size_t first = n - window;
  std::vector<double> ln_levels;
  for (std::size_t i = first; i < n; ++i) ln_levels.push_back(std::log(levels[i]));

  auto power_fit = [&] {
    std::vector<double> y(log_values.begin() + static_cast<std::ptrdiff_t>(first),
                          log_values.end());
    return Growth{Growth::Kind::DivergentPower, fit_slope(ln_levels, y)};
  };

  for (std::size_t i = first; i < n; ++i) {
    if (!std::isfinite(values[i])) return power_fit();
  }

  const double last = values[n - 1];
  const double prev = values[n - 2];
  if (last == 0.0 && prev == 0.0) return {Growth::Kind::Convergent, 0.0};
  if (std::abs(last - prev) < 1e-3 * std::max(std::abs(last), std::abs(prev))) {
    return {Growth::Kind::Convergent, last};
  }

  if (window >= 3) {
    std::vector<double> per_decade;
    for (std::size_t i = first; i + 1 < n; ++i) {
      per_decade.push_back((values[i + 1] - values[i]) /
                           std::log10(static_cast<double>(levels[i + 1]) / levels[i]));
    }
    double mean = 0.0;
    for (double d : per_decade) mean += d;
    mean /= static_cast<double>(per_decade.size());
    bool constant = mean != 0.0;
    for (double d : per_decade) constant = constant && std::abs(d - mean) <= 0.05 * std::abs(mean);
    if (constant) {
      std::vector<double> y(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
      return {Growth::Kind::Logarithmic, fit_slope(ln_levels, y)};
    }
  }
  return power_fit();
}

TruncationFamily remark_truncation_family() {
  return {"remark_family", [](int n, Weighting w) { return remark_blocks(n, w); }};
}

TruncationFamily commuting_truncation_family() {
  return {"commuting_family", [](int n, Weighting w) { return commuting_blocks(n, w); }};
}

TruncationFamily truncation_family(const std::string& name) {
  if (name == "remark_family") return remark_truncation_family();
  if (name == "commuting_family") return commuting_truncation_family();
  throw InvalidArgument("unknown truncation family '" + name + "'");
}

const Growth& ConvergenceReport::growth_of(const std::string& name, bool untruncated) const {
  const auto it = std::find(kDiagnosticNames.begin(), kDiagnosticNames.end(), name);
  if (it == kDiagnosticNames.end()) throw InvalidArgument("unknown diagnostic '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - kDiagnosticNames.begin());
  return untruncated ? untruncated_growth.at(idx) : growth.at(idx);
}

namespace {

std::vector<Growth> classify_all(const std::vector<int>& levels,
                                 const std::vector<LevelDiagnostics>& rows) {
  std::vector<Growth> out;
  for (const auto& name : kDiagnosticNames) {
    std::vector<double> values, logs;
    for (const auto& row : rows) {
      values.push_back(row.value(name));
      logs.push_back(name == "m2" ? row.log_m2 : std::log(row.value(name)));
    }
    out.push_back(classify_growth(levels, values, logs));
  }
  return out;
}

}  // namespace

ConvergenceReport truncation_study(const TruncationFamily& family, const std::vector<int>& levels) {
  if (levels.size() < 2) throw InvalidArgument("truncation_study: need at least two levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw InvalidArgument("truncation_study: levels must be >= 1");
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw InvalidArgument("truncation_study: levels must be strictly increasing");
    }
  }
  ConvergenceReport report;
  report.family = family.name;
  report.levels = levels;
  for (int level : levels) {
    const BlockPair pair = family.generator(level, Weighting::Renormalized);
    pair.validate();
    report.values.push_back(diagnose(pair, level));
    report.untruncated_values.push_back(
        diagnose(family.generator(level, Weighting::Untruncated), level));
  }
  report.growth = classify_all(levels, report.values);
  report.untruncated_growth = classify_all(levels, report.untruncated_values);
  return report;
}

}  // namespace purdyn
