import json
import math

import numpy as np
import pytest

import purdyn

SX = np.array([[0, 1], [1, 0]], dtype=complex)
XX = np.kron(SX, SX)


def ket00():
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    return np.outer(psi, psi.conj())


def test_ising_derivative_at_pi_over_8():
    rho = purdyn.evolve(ket00(), XX, math.pi / 8)
    assert purdyn.purity(purdyn.partial_trace(rho, (2, 2))) == pytest.approx(0.75, abs=1e-12)
    assert purdyn.purity_derivative(rho, XX, (2, 2)) == pytest.approx(-1.0, abs=1e-12)
    w = purdyn.correlation_witness(rho, XX, (2, 2), 1e-6)
    assert w["verdict"] == "correlated"
    assert w["bound_qe"] == pytest.approx(5.162917195227908, rel=1e-12)


def test_matches_numpy():
    h = purdyn.random_hermitian(6, 1.0, 3)
    rho = purdyn.random_density(6, 3, 4)
    assert np.allclose(h, h.conj().T)
    assert np.trace(rho).real == pytest.approx(1.0)
    w, v = purdyn.eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h))
    assert np.allclose(v @ np.diag(w) @ v.conj().T, h)
    assert purdyn.trace_norm(h) == pytest.approx(np.abs(np.linalg.eigvalsh(h)).sum())
    assert np.allclose(purdyn.tensor_product(SX, np.eye(3)), np.kron(SX, np.eye(3)))


def test_product_state_is_flat_and_classical_mixture_inconclusive():
    rs = purdyn.random_density(2, 2, 1)
    re = purdyn.random_density(3, 2, 2)
    h = purdyn.random_hermitian(6, 5.0, 3)
    assert abs(purdyn.purity_derivative(np.kron(rs, re), h, (2, 3))) < 1e-12

    classical = np.diag([0.5, 0, 0, 0.5]).astype(complex)
    w = purdyn.correlation_witness(classical, XX, (2, 2))
    assert w["verdict"] == "inconclusive"
    assert purdyn.product_defect(classical, (2, 2)) == pytest.approx(1.0)


def test_errors_are_typed():
    with pytest.raises(purdyn.InvalidArgument):
        purdyn.purity(np.diag([0.5, 0.4]))
    with pytest.raises(purdyn.DimensionError):
        purdyn.mutual_information(ket00(), (2, 3))
    with pytest.raises(purdyn.ConfigError):
        purdyn.run_scenario('{"scenario": "remark_family"}')
    assert issubclass(purdyn.ConfigError, purdyn.Error)


def test_run_scenario_csv():
    cfg = {"scenario": "two_qubit_ising", "times": {"start": 0, "stop": math.pi / 2, "steps": 101}}
    csv = purdyn.run_scenario(json.dumps(cfg))
    lines = csv.splitlines()
    assert lines[0].split(",")[:4] == ["t", "purity_S", "purity_E", "dpurity_dt_analytic"]
    assert len(lines) == 102
    row = lines[26].split(",")
    assert float(row[3]) == pytest.approx(-1.0, abs=1e-9)
    assert row[10] == "correlated"
    assert csv == purdyn.run_scenario(json.dumps(cfg))


def test_truncation_study():
    r = purdyn.truncation_study("remark_family", [100, 1000, 10000])
    assert r["growth"]["m1"].startswith("convergent(1.644")
    assert r["growth"]["commutator_trace_norm"].startswith("logarithmic(")
    assert r["untruncated_values"][2]["m1"] == pytest.approx(1.64483407184805977, rel=1e-13)
    c = purdyn.truncation_study("commuting_family", [100, 1000, 10000])
    assert all(v["commutator_trace_norm"] == 0.0 for v in c["values"])


def test_run_suite():
    csv = purdyn.run_suite(5, 50, (2, 2), "product")
    lines = csv.splitlines()
    assert lines[-1].startswith("max_violation,")
    assert all(line.endswith(",1") for line in lines[1:-1])
