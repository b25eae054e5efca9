"""Generalized M-matrix and N-body braid matrix.

For a shape ``(d, N)`` the M-matrix is ``M = A (x) B (x) ... (x) B`` with one
``A`` and ``N - 1`` copies of ``B``, and the braid matrix is

    S = d^{-1/2} sum_{k=0}^{d-1} omega^{k(k+1)} M^k

acting on ``d**N`` dimensions. The verifiers compare dense products on
``N + 1`` sites, where ``S_{1..N} = S (x) I`` and ``S_{2..N+1} = I (x) S``.
"""

from __future__ import annotations

import math

import numpy as np

from .qpa import RootsOfUnity, matrix_a, matrix_b
from .tensor_core import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    MAX_STATE_AMPLITUDES,
    BudgetExceededError,
    QuditShape,
    VerificationReport,
    as_matrix,
    kron,
    kron_all,
    matrix_power,
    matrix_residual,
    spectral_decompose_unitary,
    unitarity_residual,
)


def m_matrix(shape: QuditShape) -> np.ndarray:
    shape.require_dense()
    factors = [matrix_a(shape.d)] + [matrix_b(shape.d)] * (shape.sites - 1)
    return kron_all(factors, budget=shape.budget)


def braid_coefficient_exponent(d: int, k: int) -> int:
    """Exponent ``n`` of ``omega**n``, the weight of ``M^k`` in the braid sum."""
    return (k * (k + 1)) % RootsOfUnity(d).omega_order


def braid_matrix(shape: QuditShape) -> np.ndarray:
    roots = RootsOfUnity(shape.d)
    m = m_matrix(shape)
    s = np.zeros_like(m)
    mk = np.eye(m.shape[0], dtype=np.complex128)
    for k in range(shape.d):
        s += roots.omega_power(braid_coefficient_exponent(shape.d, k)) * mk
        mk = mk @ m
    return s / math.sqrt(shape.d)


def embed_left(s, d: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``S (x) I_d``: the operator on sites ``1..N`` of an ``N + 1`` site system."""
    s = as_matrix(s)
    return kron(s, np.eye(d), budget=budget)


def embed_right(s, d: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``I_d (x) S``: the operator on sites ``2..N+1``."""
    s = as_matrix(s)
    return kron(np.eye(d), s, budget=budget)


def verify_m_algebra(shape: QuditShape, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check ``M^d = (-1)^{d-1} I`` and ``M_{1..N} M_{2..N+1} = q M_{2..N+1} M_{1..N}``.

    The exchange relation only involves overlapping sites when ``N >= 2``.
    """
    if shape.sites < 2:
        raise ValueError("the exchange relation needs at least 2 sites")
    shape.require_dense(extra_sites=1)
    d = shape.d
    q = RootsOfUnity(d).q
    m = m_matrix(shape)
    left = embed_left(m, d, shape.budget)
    right = embed_right(m, d, shape.budget)

    report = VerificationReport()
    report.add(
        "m_pow_d_eq_sign_i",
        matrix_residual(matrix_power(m, d), (-1) ** (d - 1) * np.eye(m.shape[0])),
        tol,
    )
    report.add("m_exchange_factor_q", matrix_residual(left @ right, q * (right @ left)), tol)
    return report


def verify_unitarity(shape: QuditShape, tol: float = DEFAULT_TOL) -> VerificationReport:
    report = VerificationReport()
    report.add("s_unitary", unitarity_residual(braid_matrix(shape)), tol)
    return report


def verify_braid_relation(shape: QuditShape, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Dense check of ``S_{1..N} S_{2..N+1} S_{1..N} = S_{2..N+1} S_{1..N} S_{2..N+1}``."""
    shape.require_dense(extra_sites=1)
    s = braid_matrix(shape)
    left = embed_left(s, shape.d, shape.budget)
    right = embed_right(s, shape.d, shape.budget)

    report = VerificationReport()
    report.add(
        "braid_relation",
        matrix_residual(left @ right @ left, right @ left @ right),
        tol,
    )
    report.add("s_unitary", unitarity_residual(s), tol)
    return report


def braid_phase_exponent(d: int, i: int, k1: int) -> int:
    """Exponent ``n`` with ``S|k> = d^{-1/2} sum_i omega^n |k - i, ..., k - i>``.

    ``n`` depends only on the first digit ``k1``. Worked out in exact integer
    arithmetic: ``i(2 k1 + i + 1)/2`` for odd ``d``, ``2 k1 i`` for even ``d``.
    """
    order = RootsOfUnity(d).omega_order
    if d % 2:
        twice = i * (2 * k1 + i + 1)
        return (twice // 2) % order
    return (2 * k1 * i) % order


def apply_braid(tensor: np.ndarray, d: int, start: int, width: int) -> np.ndarray:
    """Apply ``S`` for ``width`` sites to axes ``start .. start+width-1`` of ``tensor``.

    Matrix-free: each power ``M^i`` shifts every digit in the window by
    ``-i`` and multiplies by a phase that depends on the window's first
    digit. Works on any ``(d,) * n`` shaped amplitude tensor.
    """
    roots = RootsOfUnity(d)
    axes = tuple(range(start, start + width))
    out = np.zeros(tensor.shape, dtype=np.complex128)
    bshape = [1] * tensor.ndim
    bshape[start] = d
    for i in range(d):
        # shifted[j] = tensor[j + i], so the source first digit is (j_start + i) mod d
        shifted = np.roll(tensor, -i, axis=axes)
        phases = np.array(
            [roots.omega_power(braid_phase_exponent(d, i, (j + i) % d)) for j in range(d)]
        )
        out += phases.reshape(bshape) * shifted
    return out / math.sqrt(d)


def braid_relation_spot_check(
    shape: QuditShape, samples: int = 4, seed: int = 0, tol: float = DEFAULT_TOL
) -> VerificationReport:
    """Matrix-free braid relation check on random vectors over ``N + 1`` sites.

    For shapes whose dense ``N + 1`` site matrices are over budget. Each
    sample compares ``S_L S_R S_L v`` with ``S_R S_L S_R v``.
    """
    d, n = shape.d, shape.sites
    if d ** (n + 1) > MAX_STATE_AMPLITUDES:
        raise BudgetExceededError(
            f"{d}^{n + 1} amplitudes exceed the matrix-free limit {MAX_STATE_AMPLITUDES}"
        )
    rng = np.random.default_rng(seed)

    def sl(v):
        return apply_braid(v, d, 0, n)

    def sr(v):
        return apply_braid(v, d, 1, n)

    worst = 0.0
    for _ in range(samples):
        v = rng.normal(size=(d,) * (n + 1)) + 1j * rng.normal(size=(d,) * (n + 1))
        v /= np.linalg.norm(v)
        worst = max(worst, float(np.max(np.abs(sl(sr(sl(v))) - sr(sl(sr(v)))))))
    report = VerificationReport()
    report.add("braid_relation_spot", worst, tol)
    return report


def hamiltonian_from_braid(s, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian ``H = -i log S`` on the principal branch, phases in (-pi, pi].

    Built as ``sum_k phi_k |u_k><u_k|`` from the spectral decomposition, so
    ``exp(iH)`` reproduces ``S``.
    """
    dec = spectral_decompose_unitary(s, tol=tol)
    h = dec.reconstruct(lambda phases: phases.astype(np.complex128))
    return 0.5 * (h + h.conj().T)
