import cmath
import math

import numpy as np
import pytest
import scipy.linalg

from oracles import braid_from_series, m_matrix_entries
from qudit_braid.braid import (
    apply_braid,
    braid_matrix,
    braid_relation_spot_check,
    embed_left,
    embed_right,
    hamiltonian_from_braid,
    m_matrix,
    verify_braid_relation,
    verify_m_algebra,
    verify_unitarity,
)
from qudit_braid.entangle import q_measure
from qudit_braid.qpa import generator_x
from qudit_braid.tensor_core import (
    BudgetExceededError,
    NotUnitaryError,
    QuditShape,
    StateVector,
    hermiticity_residual,
    kron,
    matrix_power,
    matrix_residual,
    unitarity_residual,
)

EIGHT_VERTEX = np.array(
    [[1, 0, 0, -1], [0, 1, -1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=complex
) / math.sqrt(2)

GRID = [(d, n) for d in (2, 3, 4, 5) for n in (2, 3) if d ** (n + 1) <= 4096]


def test_m_matrix_qubit_pair():
    expected = np.array(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], dtype=complex
    )
    assert matrix_residual(m_matrix(QuditShape(2, 2)), expected) == 0.0


def test_m_matrix_qutrit_action_on_zero():
    w = cmath.exp(2j * math.pi / 3)
    out = m_matrix(QuditShape(3, 3)) @ StateVector.basis([0, 0, 0], 3).amplitudes
    expected = w**2 * StateVector.basis([2, 2, 2], 3).amplitudes
    assert np.max(np.abs(out - expected)) <= 1e-15


def test_m_squared_qubits():
    m = m_matrix(QuditShape(2, 3))
    assert matrix_residual(m @ m, -np.eye(8)) == 0.0


@pytest.mark.parametrize("d, n", GRID)
def test_m_matrix_matches_entry_oracle(d, n):
    assert matrix_residual(m_matrix(QuditShape(d, n)), m_matrix_entries(d, n)) <= 1e-12


@pytest.mark.parametrize("d, n", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (5, 2)])
def test_m_algebra(d, n):
    report = verify_m_algebra(QuditShape(d, n))
    assert report.passed, report.to_dict()


def test_m_algebra_needs_two_sites():
    with pytest.raises(ValueError):
        verify_m_algebra(QuditShape(3, 1))


def test_eight_vertex_golden():
    assert matrix_residual(braid_matrix(QuditShape(2, 2)), EIGHT_VERTEX) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_qubit_closed_form(n):
    shape = QuditShape(2, n)
    expected = (np.eye(2**n) - m_matrix(shape)) / math.sqrt(2)
    assert matrix_residual(braid_matrix(shape), expected) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_qutrit_closed_form(n):
    shape = QuditShape(3, n)
    w = cmath.exp(2j * math.pi / 3)
    m = m_matrix(shape)
    expected = (np.eye(3**n) + w**2 * m + m @ m) / math.sqrt(3)
    assert matrix_residual(braid_matrix(shape), expected) <= 1e-12


@pytest.mark.parametrize("d, n", GRID)
def test_braid_matches_series_oracle(d, n):
    assert matrix_residual(braid_matrix(QuditShape(d, n)), braid_from_series(d, n)) <= 1e-12


@pytest.mark.parametrize("d, n", GRID)
def test_braid_unitary(d, n):
    assert verify_unitarity(QuditShape(d, n)).passed


def test_embeddings():
    assert matrix_residual(embed_left(np.eye(4), 2), np.eye(8)) == 0.0
    x = generator_x(2)
    prod = embed_left(x, 2) @ embed_right(x, 2)
    assert matrix_residual(prod, kron(x, x)) == 0.0


def test_embed_right_on_zero():
    s = braid_matrix(QuditShape(2, 2))
    out = embed_right(s, 2) @ StateVector.basis([0, 0, 0], 2).amplitudes
    expected = np.zeros(8)
    expected[0] = expected[3] = 1 / math.sqrt(2)
    assert np.max(np.abs(out - expected)) <= 1e-15


def test_embed_budget():
    with pytest.raises(BudgetExceededError):
        embed_left(np.eye(4096), 2)


@pytest.mark.parametrize("d, n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_braid_relation_holds(d, n):
    report = verify_braid_relation(QuditShape(d, n))
    assert report.passed, report.to_dict()
    assert report["braid_relation"].residual <= 1e-10


@pytest.mark.parametrize("d", [4, 5])
def test_braid_relation_report_is_generated(d):
    report = verify_braid_relation(QuditShape(d, 2))
    assert {c.name for c in report.checks} == {"braid_relation", "s_unitary"}
    assert report["s_unitary"].passed


def test_braid_relation_budget():
    with pytest.raises(BudgetExceededError):
        verify_braid_relation(QuditShape(4, 6))


@pytest.mark.parametrize("d, n, start", [(2, 2, 0), (3, 2, 1), (4, 2, 0), (5, 2, 1), (3, 3, 0)])
def test_apply_braid_matches_dense(d, n, start):
    rng = np.random.default_rng(7)
    total = n + 1
    v = rng.normal(size=d**total) + 1j * rng.normal(size=d**total)
    s = braid_matrix(QuditShape(d, n))
    dense = embed_left(s, d) if start == 0 else embed_right(s, d)
    out = apply_braid(v.reshape((d,) * total), d, start, n).reshape(-1)
    assert np.max(np.abs(out - dense @ v)) <= 1e-12


@pytest.mark.parametrize("d, n", [(2, 3), (3, 2), (4, 2), (5, 2)])
def test_spot_check_agrees_with_dense(d, n):
    shape = QuditShape(d, n)
    dense = verify_braid_relation(shape)
    spot = braid_relation_spot_check(shape)
    assert spot.passed == dense["braid_relation"].passed


def test_spot_check_beyond_dense_budget():
    shape = QuditShape(2, 14)
    with pytest.raises(BudgetExceededError):
        verify_braid_relation(shape)
    assert braid_relation_spot_check(shape, samples=1).passed


def test_hamiltonian_identity():
    assert matrix_residual(hamiltonian_from_braid(np.eye(3)), np.zeros((3, 3))) <= 1e-15


def test_hamiltonian_minus_one():
    h = hamiltonian_from_braid(np.diag([1, -1]))
    assert matrix_residual(h, np.diag([0, math.pi])) <= 1e-15


@pytest.mark.parametrize("d, n", [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2)])
def test_hamiltonian_roundtrip(d, n):
    s = braid_matrix(QuditShape(d, n))
    h = hamiltonian_from_braid(s)
    assert hermiticity_residual(h) <= 1e-12
    assert matrix_residual(scipy.linalg.expm(1j * h), s) <= 1e-8
    eig = np.linalg.eigvalsh(h)
    assert eig.min() > -math.pi - 1e-12 and eig.max() <= math.pi + 1e-12


def test_hamiltonian_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        hamiltonian_from_braid(2 * np.eye(2))


@pytest.mark.parametrize("d, n", GRID)
def test_braid_entangles_product_state(d, n):
    psi = StateVector(d, n, braid_matrix(QuditShape(d, n))[:, 0])
    assert abs(q_measure(psi, 1) - 1) <= 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_power_of_m_sign(d):
    m = m_matrix(QuditShape(d, 2))
    assert matrix_residual(matrix_power(m, d), (-1) ** (d - 1) * np.eye(d * d)) <= 1e-10
    assert unitarity_residual(m) <= 1e-12
