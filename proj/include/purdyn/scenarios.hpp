#pragma once

// Named constructions: the diverging-commutator block family, the commuting
// H = rho^{-1/2} family, the solvable two-qubit Ising scenario, and
// truncation-convergence studies over the two families.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "purdyn/matrix.hpp"
#include "purdyn/states.hpp"

namespace purdyn {

/// How a truncated family weights its blocks.
enum class Weighting {
  /// Weights rescaled to unit trace; a valid state at every level.
  Renormalized,
  /// The untruncated weights, restricted to the first N blocks.
  Untruncated,
};

/// One diagonal block of a block-diagonal (rho, H) pair. The physical block
/// operators are ldexp(rho, rho_exponent) / Z and ldexp(h, h_exponent), so
/// weights and energies far outside the double range stay representable as
/// long as the products that matter are.
struct OperatorBlock {
  ComplexMatrix rho;
  int rho_exponent = 0;
  ComplexMatrix h;
  int h_exponent = 0;
};

/// Block-diagonal state/Hamiltonian pair with all diagnostics evaluated block
/// by block.
class BlockPair {
 public:
  /// `log_normalization` is ln Z. `is_state` marks pairs whose weights must
  /// sum to one.
  BlockPair(std::vector<OperatorBlock> blocks, double log_normalization, bool is_state);

  const std::vector<OperatorBlock>& blocks() const noexcept { return blocks_; }
  Index dim() const noexcept { return dim_; }
  bool is_state() const noexcept { return is_state_; }

  /// Checks every block: Hermitian H, positive semidefinite rho, and unit
  /// total trace for states. Throws InvalidArgument.
  void validate() const;

  /// m_k = Tr(H^k rho); +inf when the value exceeds the double range.
  double moment(int k) const;

  /// ln m_k via log-sum-exp, finite even when moment(k) overflows. Requires
  /// every block term to be non-negative (true for even k).
  double log_moment(int k) const;

  /// ||[H, rho]||_1.
  double commutator_trace_norm() const;

  /// sum_k p_k ||H e_k||. Block eigenvalues below 1e-15 of the block's
  /// largest are treated as zero.
  double eigen_weighted_energy_sum() const;

  /// Purity derivative with a trivial environment (d_E = 1), i.e. with
  /// P = Tr rho^2.
  double purity_derivative() const;

  /// Dense materialization. Throws InvalidArgument if the pair is not a
  /// state, if dim() > 4096, or if an entry leaves the double range.
  std::pair<DensityMatrix, HermitianMatrix> to_dense() const;

 private:
  double scale(int exponent) const;

  std::vector<OperatorBlock> blocks_;
  double log_normalization_;
  bool is_state_;
  Index dim_ = 0;
};

/// Blocks n = 1..N: rho_n = 2^-n E_11 and
/// H_n = 2^n [[1/n^2, (1/n) sqrt(1 - 1/n^2)], [(1/n) sqrt(1 - 1/n^2), 1 - 1/n^2]].
/// Renormalized weighting divides rho by 1 - 2^-N.
BlockPair remark_blocks(int levels, Weighting weighting = Weighting::Renormalized);

/// rho = diag(c / k^2), H = rho^{-1/2}, k = 1..N. Renormalized uses
/// c = 1 / sum_{k<=N} 1/k^2; untruncated uses c = 6 / pi^2 (and the H built
/// from those weights).
BlockPair commuting_blocks(int levels, Weighting weighting = Weighting::Renormalized);

/// Dense renormalized remark family on 2N dimensions. N in [1, 1000].
std::pair<DensityMatrix, HermitianMatrix> remark_family(int levels);

/// Dense renormalized commuting family on N dimensions, N in [1, 4096].
std::pair<DensityMatrix, HermitianMatrix> commuting_family(int levels);

/// rho0 = |00><00|, H = sigma_x (x) sigma_x on (2, 2), with closed forms.
struct TwoQubitIsing {
  DensityMatrix rho0;
  HermitianMatrix h;
  BipartiteSpace space;

  /// P_S(t) = 1 - sin^2(2t) / 2
  static double purity_s(double t);
  /// dP_S/dt = -sin(4t)
  static double purity_derivative(double t);
  /// I(rho(t)) = 2 S(diag(cos^2 t, sin^2 t)), nats
  static double mutual_information(double t);
};

TwoQubitIsing two_qubit_ising();

/// Diagnostic columns tracked by truncation studies, in report order.
inline const std::vector<std::string> kDiagnosticNames = {
    "m1", "m2", "commutator_trace_norm", "eigen_weighted_energy_sum", "derivative"};

struct LevelDiagnostics {
  int level = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  double log_m2 = 0.0;
  double commutator_trace_norm = 0.0;
  double eigen_weighted_energy_sum = 0.0;
  double derivative = 0.0;

  /// Value of the named diagnostic (see kDiagnosticNames).
  double value(const std::string& name) const;
};

LevelDiagnostics diagnose(const BlockPair& pair, int level);

struct Growth {
  enum class Kind { Convergent, Logarithmic, DivergentPower };
  Kind kind = Kind::Convergent;
  /// Limit, slope per ln N, or power exponent respectively.
  double parameter = 0.0;

  /// e.g. "convergent(1.6448)", "logarithmic(2)", "divergent-power(1)".
  std::string to_string() const;
};

/// Classifies a level series. Convergent if the last two values differ by
/// less than 0.1% relatively (or are both zero). Otherwise, on the last
/// max(3, ceil(n / 2)) levels, logarithmic if the increments per decade agree
/// within 5% of their mean, with the least-squares slope against ln N as
/// parameter. Otherwise a power law with the least-squares exponent of
/// log_values against ln N.
Growth classify_growth(const std::vector<int>& levels, const std::vector<double>& values,
                       const std::vector<double>& log_values);

struct TruncationFamily {
  std::string name;
  std::function<BlockPair(int, Weighting)> generator;
};

TruncationFamily remark_truncation_family();
TruncationFamily commuting_truncation_family();

/// "remark_family" or "commuting_family"; InvalidArgument otherwise.
TruncationFamily truncation_family(const std::string& name);

struct ConvergenceReport {
  std::string family;
  std::vector<int> levels;
  /// Renormalized-state diagnostics, one per level.
  std::vector<LevelDiagnostics> values;
  /// Same diagnostics for the untruncated weights.
  std::vector<LevelDiagnostics> untruncated_values;
  /// One classification per kDiagnosticNames entry.
  std::vector<Growth> growth;
  std::vector<Growth> untruncated_growth;

  const Growth& growth_of(const std::string& name, bool untruncated = false) const;
};

/// Levels must be strictly increasing, at least two, each >= 1. Every
/// renormalized pair is validated.
ConvergenceReport truncation_study(const TruncationFamily& family, const std::vector<int>& levels);

}  // namespace purdyn
