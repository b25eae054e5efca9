"""Generalized GHZ basis generated by the braid matrix, and Scott's Q-measure.

Applying ``S`` to ``|k_1, ..., k_N>`` gives

    d^{-1/2} sum_i c_i |k_1 - i, ..., k_N - i>        (labels mod d)

where ``c_i = omega^{i(2 k_1 + i + 1)/2}`` for odd ``d`` and
``c_i = omega^{2 k_1 i}`` for even ``d``. :func:`ghz_closed_form` builds this
directly (no matrices, so it scales to ~10^7 amplitudes) and
:func:`ghz_by_braid` multiplies by the dense ``S`` instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .braid import braid_matrix, braid_phase_exponent
from .qpa import RootsOfUnity
from .tensor_core import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    QuditShape,
    StateVector,
    basis_digits,
    basis_index,
    kron_all,
    partial_trace,
    purity,
)


@dataclass(frozen=True)
class GhzLabel:
    """Digits ``(k_1, ..., k_N)`` of the product state the braid matrix acts on."""

    d: int
    digits: tuple[int, ...]
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        # validates d, N >= 1 and every digit
        basis_index(digits, QuditShape(self.d, len(digits), budget=self.budget))

    @property
    def shape(self) -> QuditShape:
        return QuditShape(self.d, len(self.digits), budget=self.budget)

    @property
    def sites(self) -> int:
        return len(self.digits)


def ghz_closed_form(label: GhzLabel) -> StateVector:
    shape = label.shape
    dim = shape.require_state()
    d, k = shape.d, label.digits
    roots = RootsOfUnity(d)
    amps = np.zeros(dim, dtype=np.complex128)
    norm = 1.0 / math.sqrt(d)
    for i in range(d):
        idx = basis_index([(kj - i) % d for kj in k], shape)
        amps[idx] = norm * roots.omega_power(braid_phase_exponent(d, i, k[0]))
    return StateVector(d, shape.sites, amps)


def ghz_by_braid(label: GhzLabel) -> StateVector:
    shape = label.shape
    s = braid_matrix(shape)
    basis = StateVector.basis(label.digits, shape.d)
    return StateVector(shape.d, shape.sites, s @ basis.amplitudes)


def uniform_ghz(d: int, sites: int) -> StateVector:
    """``d^{-1/2} sum_i |i, i, ..., i>`` with all phases equal."""
    shape = QuditShape(d, sites)
    amps = np.zeros(shape.require_state(), dtype=np.complex128)
    for i in range(d):
        amps[basis_index([i] * sites, shape)] = 1.0 / math.sqrt(d)
    return StateVector(d, sites, amps)


def phase_removal_unitary(shape: QuditShape) -> np.ndarray:
    """Local unitary ``u (x) ... (x) u`` with ``u = diag(1, 1, omega^{-1/N})``, qutrits only.

    It cancels the ``omega`` on ``|2...2>`` in ``S|0...0>``, leaving the
    uniform-phase GHZ state.
    """
    if shape.d != 3:
        raise ValueError(f"phase removal is only defined for d = 3, got d = {shape.d}")
    shape.require_dense()
    n = shape.sites
    u = np.diag([1.0, 1.0, cmath.exp(-2j * math.pi / (3 * n))]).astype(np.complex128)
    return kron_all([u] * n, budget=shape.budget)


def q_measure(psi: StateVector, m: int, norm_tol: float = DEFAULT_TOL) -> float:
    """Scott's ``Q_m``: rescaled mean impurity over all ``m``-site marginals.

    ``Q_m = d^m/(d^m - 1) * (1 - mean_{|s|=m} Tr rho_s^2)`` for
    ``1 <= m <= N // 2``.
    """
    n, d = psi.sites, psi.d
    if int(m) != m or not 1 <= m <= n // 2:
        raise ValueError(f"m must be an integer in 1..{n // 2} for N = {n}, got {m!r}")
    if psi.norm_residual() > norm_tol:
        raise ValueError(f"state is not normalized: |norm - 1| = {psi.norm_residual():.3e}")
    total = sum(purity(partial_trace(psi, s)) for s in combinations(range(1, n + 1), m))
    mean = total / math.comb(n, m)
    dm = d**m
    return dm / (dm - 1) * (1.0 - mean)


def q_measure_ghz_fraction(d: int, m: int) -> Fraction:
    """Exact ``Q_m = 1 - (d^{m-1} - 1)/(d^m - 1)`` of every GHZ basis state."""
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    if int(m) != m or m < 1:
        raise ValueError(f"m must be an integer >= 1, got {m!r}")
    return 1 - Fraction(d ** (m - 1) - 1, d**m - 1)


def q_measure_ghz_closed_form(d: int, m: int) -> float:
    return float(q_measure_ghz_fraction(d, m))


def ghz_basis(d: int, sites: int) -> list[StateVector]:
    """All ``d**N`` closed-form GHZ states, in basis-index order of their labels."""
    shape = QuditShape(d, sites)
    return [ghz_closed_form(GhzLabel(d, basis_digits(i, shape))) for i in range(shape.dim)]
