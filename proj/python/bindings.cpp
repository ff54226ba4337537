#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "purdyn/config.hpp"
#include "purdyn/dynamics.hpp"
#include "purdyn/errors.hpp"
#include "purdyn/runner.hpp"
#include "purdyn/scenarios.hpp"
#include "purdyn/states.hpp"
#include "purdyn/witness.hpp"

namespace py = pybind11;
using namespace purdyn;

namespace {

using Dims = std::array<Index, 2>;

BipartiteSpace space_of(const Dims& dims) { return BipartiteSpace(dims[0], dims[1]); }

Subsystem subsystem_of(const std::string& name) {
  if (name == "S") return Subsystem::S;
  if (name == "E") return Subsystem::E;
  throw InvalidArgument("traced_out must be 'S' or 'E', got '" + name + "'");
}

py::dict witness_dict(const WitnessVerdict& w) {
  py::dict d;
  d["derivative"] = w.derivative;
  d["threshold"] = w.threshold;
  d["verdict"] = std::string(to_string(w.verdict));
  d["bound_qe"] = w.bound_qe;
  d["bound_m2"] = w.bound_m2;
  return d;
}

py::dict diagnostics_dict(const LevelDiagnostics& v) {
  py::dict d;
  d["level"] = v.level;
  for (const auto& name : kDiagnosticNames) d[py::str(name)] = v.value(name);
  return d;
}

std::string csv_of(const RunOutput& out) {
  if (!out.violations.empty()) throw InvariantViolation(out.violations.front());
  return out.table.to_csv();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reduced-purity dynamics of bipartite quantum systems";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<DimensionError>(m, "DimensionError", error);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error);
  py::register_exception<NumericalError>(m, "NumericalError", error);
  py::register_exception<ConfigError>(m, "ConfigError", error);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", error);

  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def("trace_norm", py::overload_cast<const ComplexMatrix&>(&trace_norm), py::arg("a"));
  m.def("operator_norm", &operator_norm, py::arg("a"));
  m.def(
      "propagator",
      [](const ComplexMatrix& h, double t) { return propagator(HermitianMatrix(h), t); },
      py::arg("h"), py::arg("t"));
  m.def(
      "eigh",
      [](const ComplexMatrix& h) {
        const SpectralDecomposition d = hermitian_eig(HermitianMatrix(h));
        return py::make_tuple(d.eigenvalues, d.eigenvectors);
      },
      py::arg("h"), "Ascending eigenvalues and deterministic eigenvectors.");

  m.def(
      "validate_state", [](const ComplexMatrix& rho) { return DensityMatrix(rho).matrix(); },
      py::arg("rho"), "Validated (and PSD-clipped) copy of a density matrix.");
  m.def(
      "partial_trace",
      [](const ComplexMatrix& rho, const Dims& dims, const std::string& traced_out) {
        return partial_trace(DensityMatrix(rho), space_of(dims), subsystem_of(traced_out)).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("traced_out") = "E");
  m.def(
      "purity", [](const ComplexMatrix& rho) { return purity(DensityMatrix(rho)); },
      py::arg("rho"));
  m.def(
      "von_neumann_entropy",
      [](const ComplexMatrix& rho) { return von_neumann_entropy(DensityMatrix(rho)); },
      py::arg("rho"));
  m.def(
      "renyi_entropy",
      [](const ComplexMatrix& rho, double alpha) { return renyi_entropy(DensityMatrix(rho), alpha); },
      py::arg("rho"), py::arg("alpha"));
  m.def(
      "mutual_information",
      [](const ComplexMatrix& rho, const Dims& dims) {
        return mutual_information(DensityMatrix(rho), space_of(dims));
      },
      py::arg("rho"), py::arg("dims"));
  m.def(
      "product_defect",
      [](const ComplexMatrix& rho, const Dims& dims) {
        return product_defect(DensityMatrix(rho), space_of(dims));
      },
      py::arg("rho"), py::arg("dims"));
  m.def(
      "random_density",
      [](Index dim, Index rank, std::uint64_t seed) { return random_density(dim, rank, seed).matrix(); },
      py::arg("dim"), py::arg("rank"), py::arg("seed"));
  m.def(
      "random_hermitian",
      [](Index dim, double scale, std::uint64_t seed) {
        return random_hermitian(dim, scale, seed).matrix();
      },
      py::arg("dim"), py::arg("scale"), py::arg("seed"));

  m.def(
      "evolve",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, double t) {
        return evolve(DensityMatrix(rho), HermitianMatrix(h), t).matrix();
      },
      py::arg("rho"), py::arg("h"), py::arg("t"));
  m.def(
      "purity_derivative",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, const Dims& dims) {
        return purity_derivative_analytic(DensityMatrix(rho), HermitianMatrix(h), space_of(dims));
      },
      py::arg("rho"), py::arg("h"), py::arg("dims"));
  m.def(
      "purity_derivative_fd",
      [](const ComplexMatrix& rho0, const ComplexMatrix& h, const Dims& dims, double t,
         double step) {
        return purity_derivative_fd(DensityMatrix(rho0), HermitianMatrix(h), space_of(dims), t,
                                    step);
      },
      py::arg("rho0"), py::arg("h"), py::arg("dims"), py::arg("t"), py::arg("step"));
  m.def(
      "moment",
      [](const ComplexMatrix& h, const ComplexMatrix& rho, int k) {
        return moment(HermitianMatrix(h), DensityMatrix(rho), k);
      },
      py::arg("h"), py::arg("rho"), py::arg("k"));
  m.def(
      "energy_variance",
      [](const ComplexMatrix& h, const ComplexMatrix& rho) {
        return energy_variance(HermitianMatrix(h), DensityMatrix(rho));
      },
      py::arg("h"), py::arg("rho"));
  m.def(
      "decompose_hamiltonian",
      [](const ComplexMatrix& h, const Dims& dims) {
        const HamiltonianDecomposition d = decompose_hamiltonian(HermitianMatrix(h), space_of(dims));
        py::dict out;
        out["h_s"] = d.h_s.matrix();
        out["h_e"] = d.h_e.matrix();
        out["h_int"] = d.h_int.matrix();
        out["residual"] = d.residual;
        return out;
      },
      py::arg("h"), py::arg("dims"));

  m.def(
      "bound_interaction",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, const Dims& dims) {
        const BipartiteSpace space = space_of(dims);
        return bound_interaction(DensityMatrix(rho), decompose_hamiltonian(HermitianMatrix(h), space),
                                 space);
      },
      py::arg("rho"), py::arg("h"), py::arg("dims"));
  m.def(
      "bound_second_moment",
      [](const ComplexMatrix& rho, const ComplexMatrix& h) {
        return bound_second_moment(DensityMatrix(rho), HermitianMatrix(h));
      },
      py::arg("rho"), py::arg("h"));
  m.def(
      "intermediate_bound",
      [](const ComplexMatrix& rho, const ComplexMatrix& h) {
        return intermediate_bound(DensityMatrix(rho), HermitianMatrix(h));
      },
      py::arg("rho"), py::arg("h"));
  m.def(
      "correlation_witness",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, const Dims& dims, double threshold) {
        return witness_dict(
            correlation_witness(DensityMatrix(rho), HermitianMatrix(h), space_of(dims), threshold));
      },
      py::arg("rho"), py::arg("h"), py::arg("dims"), py::arg("threshold") = kWitnessFloor);

  m.def(
      "remark_family",
      [](int levels) {
        auto [rho, h] = remark_family(levels);
        return py::make_tuple(rho.matrix(), h.matrix());
      },
      py::arg("levels"));
  m.def(
      "commuting_family",
      [](int levels) {
        auto [rho, h] = commuting_family(levels);
        return py::make_tuple(rho.matrix(), h.matrix());
      },
      py::arg("levels"));
  m.def(
      "truncation_study",
      [](const std::string& family, const std::vector<int>& levels) {
        const ConvergenceReport r = truncation_study(truncation_family(family), levels);
        py::dict out;
        py::list values, untruncated;
        for (const auto& v : r.values) values.append(diagnostics_dict(v));
        for (const auto& v : r.untruncated_values) untruncated.append(diagnostics_dict(v));
        py::dict growth, untruncated_growth;
        for (std::size_t i = 0; i < kDiagnosticNames.size(); ++i) {
          growth[py::str(kDiagnosticNames[i])] = r.growth[i].to_string();
          untruncated_growth[py::str(kDiagnosticNames[i])] = r.untruncated_growth[i].to_string();
        }
        out["family"] = r.family;
        out["levels"] = r.levels;
        out["values"] = values;
        out["untruncated_values"] = untruncated;
        out["growth"] = growth;
        out["untruncated_growth"] = untruncated_growth;
        return out;
      },
      py::arg("family"), py::arg("levels"));

  m.def(
      "run_scenario",
      [](const std::string& config_json) {
        return csv_of(run_scenario(ScenarioConfig::parse(config_json)));
      },
      py::arg("config_json"), "Runs a JSON scenario config and returns the CSV text.");
  m.def(
      "run_suite",
      [](std::uint64_t seed, int count, const Dims& dims, const std::string& mode) {
        SuiteOptions options;
        options.seed = seed;
        options.count = count;
        options.dims = dims;
        if (mode == "product") {
          options.mode = SuiteMode::Product;
        } else if (mode == "general") {
          options.mode = SuiteMode::General;
        } else {
          throw ConfigError("field 'mode': expected 'product' or 'general'");
        }
        return csv_of(run_suite(options));
      },
      py::arg("seed"), py::arg("count"), py::arg("dims"), py::arg("mode") = "general");
}
