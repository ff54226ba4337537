#include <doctest.h>

#include <cmath>
#include <numbers>

#include "purdyn/dynamics.hpp"
#include "purdyn/errors.hpp"
#include "purdyn/scenarios.hpp"
#include "purdyn/witness.hpp"

using namespace purdyn;

namespace {

constexpr double kBasel = std::numbers::pi * std::numbers::pi / 6.0;

}  // namespace

TEST_CASE("remark_family at N = 1") {
  const auto [rho, h] = remark_family(1);
  CHECK(rho.dim() == 2);
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(1.0));
  CHECK(h.matrix()(0, 0).real() == doctest::Approx(2.0));
  CHECK(std::abs(h.matrix()(0, 1)) <= 1e-15);
  CHECK(max_abs(commutator(h.matrix(), rho.matrix())) <= 1e-15);
  CHECK(moment(h, rho, 1) == doctest::Approx(2.0));
}

TEST_CASE("remark_family at N = 10") {
  const BlockPair raw = remark_blocks(10, Weighting::Untruncated);
  CHECK(raw.moment(1) == doctest::Approx(1.54976773116654069).epsilon(1e-14));
  CHECK(raw.commutator_trace_norm() == doctest::Approx(3.64994383917244925).epsilon(1e-13));

  const auto [rho, h] = remark_family(10);
  const double z = 1.0 - std::ldexp(1.0, -10);
  CHECK(trace_norm(commutator(h.matrix(), rho.matrix())) ==
        doctest::Approx(3.64994383917244925 / z).epsilon(1e-12));
  CHECK(remark_blocks(10).commutator_trace_norm() ==
        doctest::Approx(3.64994383917244925 / z).epsilon(1e-13));
  CHECK(moment(h, rho, 2) == doctest::Approx(remark_blocks(10).moment(2)).epsilon(1e-12));

  // Per-block second moment 2^n / n^2.
  double m2 = 0.0;
  for (int n = 1; n <= 10; ++n) m2 += std::ldexp(1.0, n) / (n * n);
  CHECK(raw.moment(2) == doctest::Approx(m2).epsilon(1e-13));
  CHECK(raw.log_moment(2) == doctest::Approx(std::log(m2)).epsilon(1e-13));
}

TEST_CASE("remark_family validation") {
  for (int n : {1, 2, 7, 50, 300, 1000}) {
    CHECK_NOTHROW(remark_blocks(n).validate());
  }
  CHECK_NOTHROW(remark_blocks(100000).validate());
  CHECK_THROWS_AS(remark_family(0), InvalidArgument);
  CHECK_THROWS_AS(remark_family(1001), InvalidArgument);
  // Dense output beyond the double range of 2^N is refused, blocks are not.
  CHECK(std::isinf(remark_blocks(10000).moment(2)));
  CHECK(std::isfinite(remark_blocks(10000).log_moment(2)));
}

TEST_CASE("block and dense diagnostics agree") {
  for (int n : {3, 12, 40}) {
    const BlockPair pair = remark_blocks(n);
    const auto [rho, h] = pair.to_dense();
    // Dense spectral moments carry absolute errors of order eps ||H||^k.
    const double norm = std::ldexp(1.0, n);
    CHECK(std::abs(pair.moment(1) - moment(h, rho, 1)) <= 1e-13 * norm);
    CHECK(std::abs(pair.moment(2) - moment(h, rho, 2)) <= 1e-13 * norm * norm);
    CHECK(pair.commutator_trace_norm() ==
          doctest::Approx(trace_norm(commutator(h.matrix(), rho.matrix()))).epsilon(1e-10));
    CHECK(pair.eigen_weighted_energy_sum() ==
          doctest::Approx(eigen_weighted_energy_sum(h, rho)).epsilon(1e-10));
    CHECK(pair.purity_derivative() ==
          doctest::Approx(purity_derivative_analytic(rho, h, BipartiteSpace(rho.dim(), 1))));
  }
}

TEST_CASE("commuting_family") {
  for (int n : {1, 5, 64}) {
    const auto [rho, h] = commuting_family(n);
    CHECK(max_abs(commutator(h.matrix(), rho.matrix())) == 0.0);
    CHECK(commuting_blocks(n).commutator_trace_norm() == 0.0);
    CHECK(commuting_blocks(n).purity_derivative() == 0.0);
  }
  // Any bipartite embedding of an 8-level pair keeps the derivative at zero.
  const auto [rho, h] = commuting_family(8);
  CHECK(std::abs(purity_derivative_analytic(rho, h, BipartiteSpace(2, 4))) <= 1e-12);
  CHECK(std::abs(purity_derivative_analytic(rho, h, BipartiteSpace(4, 2))) <= 1e-12);

  // m1 = sum sqrt(p_k) = sqrt(c) H_N.
  const BlockPair raw = commuting_blocks(1000, Weighting::Untruncated);
  CHECK(raw.moment(1) == doctest::Approx(5.83639768569899672).epsilon(1e-12));
  CHECK(raw.eigen_weighted_energy_sum() == doctest::Approx(5.83639768569899672).epsilon(1e-12));
  CHECK(raw.moment(2) == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("two_qubit_ising closed forms") {
  const TwoQubitIsing s = two_qubit_ising();
  CHECK(TwoQubitIsing::purity_s(0.0) == 1.0);
  CHECK(TwoQubitIsing::purity_derivative(0.0) == 0.0);
  CHECK(TwoQubitIsing::mutual_information(0.0) == 0.0);
  CHECK(TwoQubitIsing::purity_s(std::numbers::pi / 8) == doctest::Approx(0.75));
  CHECK(TwoQubitIsing::purity_derivative(std::numbers::pi / 8) == doctest::Approx(-1.0));
  CHECK(TwoQubitIsing::purity_s(std::numbers::pi / 4) == doctest::Approx(0.5));
  CHECK(TwoQubitIsing::mutual_information(std::numbers::pi / 4) ==
        doctest::Approx(2.0 * std::log(2.0)));

  for (int i = 0; i < 100; ++i) {
    const double t = std::numbers::pi * i / 99.0;
    const DensityMatrix rho = evolve(s.rho0, s.h, t);
    CHECK(purity(reduce_to_s(rho, s.space)) ==
          doctest::Approx(TwoQubitIsing::purity_s(t)).epsilon(1e-9));
    CHECK(std::abs(purity_derivative_analytic(rho, s.h, s.space) -
                   TwoQubitIsing::purity_derivative(t)) <= 1e-9);
    CHECK(std::abs(mutual_information(rho, s.space) - TwoQubitIsing::mutual_information(t)) <=
          1e-9);
  }
}

TEST_CASE("classify_growth") {
  const std::vector<int> levels{100, 1000, 10000};
  const auto logs = [](std::vector<double> v) {
    for (double& x : v) x = std::log(x);
    return v;
  };
  const std::vector<double> conv{1.6349, 1.6439, 1.64483};
  CHECK(classify_growth(levels, conv, logs(conv)).kind == Growth::Kind::Convergent);
  CHECK(classify_growth(levels, conv, logs(conv)).parameter == doctest::Approx(1.64483));

  std::vector<double> lg;
  for (int n : levels) lg.push_back(3.0 + 2.0 * std::log(n));
  const Growth g = classify_growth(levels, lg, logs(lg));
  CHECK(g.kind == Growth::Kind::Logarithmic);
  CHECK(g.parameter == doctest::Approx(2.0));

  std::vector<double> pw;
  for (int n : levels) pw.push_back(5.0 * std::pow(n, 1.5));
  const Growth p = classify_growth(levels, pw, logs(pw));
  CHECK(p.kind == Growth::Kind::DivergentPower);
  CHECK(p.parameter == doctest::Approx(1.5));

  CHECK(classify_growth({1, 2}, {0.0, 0.0}, {-INFINITY, -INFINITY}).to_string() ==
        "convergent(0)");
  CHECK(g.to_string() == "logarithmic(2)");
  CHECK_THROWS_AS(classify_growth({1}, {1.0}, {0.0}), InvalidArgument);
}

TEST_CASE("truncation_study: remark family") {
  const ConvergenceReport r = truncation_study(remark_truncation_family(), {100, 1000, 10000});
  REQUIRE(r.values.size() == 3);
  CHECK(r.untruncated_values[0].m1 == doctest::Approx(1.63498390018489287).epsilon(1e-13));
  CHECK(r.untruncated_values[1].m1 == doctest::Approx(1.64393456668155980).epsilon(1e-13));
  CHECK(r.untruncated_values[2].m1 == doctest::Approx(1.64483407184805977).epsilon(1e-13));
  CHECK(r.untruncated_values[0].commutator_trace_norm ==
        doctest::Approx(8.16228183332400843).epsilon(1e-12));
  CHECK(r.untruncated_values[1].commutator_trace_norm ==
        doctest::Approx(12.7584195155332291).epsilon(1e-12));
  CHECK(r.untruncated_values[2].commutator_trace_norm ==
        doctest::Approx(17.3626893720204914).epsilon(1e-12));

  const Growth& m1 = r.growth_of("m1");
  CHECK(m1.kind == Growth::Kind::Convergent);
  CHECK(std::abs(m1.parameter - kBasel) <= 1e-3);
  const Growth& comm = r.growth_of("commutator_trace_norm");
  CHECK(comm.kind == Growth::Kind::Logarithmic);
  CHECK(comm.parameter * std::log(10.0) == doctest::Approx(2.0 * std::log(10.0)).epsilon(0.02));
  CHECK(r.growth_of("m2").kind == Growth::Kind::DivergentPower);
  CHECK(r.growth_of("derivative").kind == Growth::Kind::Convergent);
  CHECK(r.growth_of("m1", true).kind == Growth::Kind::Convergent);
  CHECK_THROWS_AS(r.growth_of("nonsense"), InvalidArgument);
}

TEST_CASE("truncation_study: commuting family") {
  const ConvergenceReport r = truncation_study(commuting_truncation_family(), {100, 1000, 10000});
  for (const auto& v : r.values) CHECK(v.commutator_trace_norm == 0.0);
  const Growth& comm = r.growth_of("commutator_trace_norm");
  CHECK(comm.kind == Growth::Kind::Convergent);
  CHECK(comm.parameter == 0.0);

  const Growth& sum = r.growth_of("eigen_weighted_energy_sum", true);
  CHECK(sum.kind == Growth::Kind::Logarithmic);
  CHECK(sum.parameter == doctest::Approx(std::sqrt(6.0) / std::numbers::pi).epsilon(0.05));
  CHECK(r.untruncated_values[2].eigen_weighted_energy_sum ==
        doctest::Approx(7.63136511803922523).epsilon(1e-12));
  CHECK(r.growth_of("eigen_weighted_energy_sum").kind == Growth::Kind::Logarithmic);
  CHECK(r.growth_of("m2").kind == Growth::Kind::DivergentPower);
}

TEST_CASE("truncation_study argument checks") {
  CHECK_THROWS_AS(truncation_study(remark_truncation_family(), {10}), InvalidArgument);
  CHECK_THROWS_AS(truncation_study(remark_truncation_family(), {10, 10}), InvalidArgument);
  CHECK_THROWS_AS(truncation_study(remark_truncation_family(), {0, 10}), InvalidArgument);
  CHECK_THROWS_AS(truncation_family("other"), InvalidArgument);
  CHECK(truncation_family("commuting_family").name == "commuting_family");
}
