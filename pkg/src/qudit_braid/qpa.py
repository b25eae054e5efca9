"""Quantum plane algebra generators for a single qudit.

``X`` is the cyclic shift ``X|k> = |k - 1 mod d>``, ``Z`` the clock
``Z|k> = q^k |k>`` with ``q = exp(2 pi i / d)``, so ``XZ = q ZX``. From them
we build the Fourier operator and the pair ``A = ZX``, ``B = X`` used for
the M-matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .tensor_core import DEFAULT_TOL, VerificationReport, matrix_power, matrix_residual


def _check_level(d: int) -> int:
    if int(d) != d or d < 2:
        raise ValueError(f"level count d must be an integer >= 2, got {d!r}")
    return int(d)


@dataclass(frozen=True)
class RootsOfUnity:
    """The deformation parameter ``q`` and braid parameter ``omega`` for level ``d``.

    ``omega`` is ``exp(i pi / d)`` for even ``d`` (so ``omega**2 == q``) and
    equal to ``q`` for odd ``d``. ``omega_order`` is the smallest ``n`` with
    ``omega**n == 1``; integer exponents are reduced modulo it before any
    floating-point exponentiation.
    """

    d: int

    def __post_init__(self):
        _check_level(self.d)

    @property
    def q(self) -> complex:
        return self.q_power(1)

    @property
    def omega(self) -> complex:
        return self.omega_power(1)

    @property
    def omega_order(self) -> int:
        return 2 * self.d if self.d % 2 == 0 else self.d

    def q_power(self, n: int) -> complex:
        return _unit_root(n, self.d)

    def omega_power(self, n: int) -> complex:
        return _unit_root(n, self.omega_order)


_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def _unit_root(n: int, order: int) -> complex:
    """``exp(2 pi i n / order)``, exact when it is a multiple of a quarter turn."""
    n %= order
    if (4 * n) % order == 0:
        return _QUARTER_TURNS[4 * n // order]
    return cmath.exp(2j * math.pi * n / order)


def shift_minus(k: int, l: int, d: int) -> int:
    """Cyclic label ``k - l`` in ``0..d-1``."""
    return (k - l) % d


def generator_x(d: int) -> np.ndarray:
    d = _check_level(d)
    x = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        x[shift_minus(k, 1, d), k] = 1.0
    return x


def generator_z(d: int) -> np.ndarray:
    roots = RootsOfUnity(_check_level(d))
    return np.diag([roots.q_power(k) for k in range(d)]).astype(np.complex128)


def fourier(d: int) -> np.ndarray:
    """``F = d^{-1/2} sum_{k,k'} q^{-k k'} |k><k'|``."""
    roots = RootsOfUnity(_check_level(d))
    f = np.array(
        [[roots.q_power(-k * kp) for kp in range(d)] for k in range(d)],
        dtype=np.complex128,
    )
    return f / math.sqrt(d)


def matrix_a(d: int) -> np.ndarray:
    return generator_z(d) @ generator_x(d)


def matrix_b(d: int) -> np.ndarray:
    return generator_x(d)


def verify_qpa(d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Residuals of the defining relations of X, Z, F, A and B at level ``d``."""
    d = _check_level(d)
    q = RootsOfUnity(d).q
    x, z, f = generator_x(d), generator_z(d), fourier(d)
    a, b = matrix_a(d), matrix_b(d)
    eye = np.eye(d)

    report = VerificationReport()
    report.add("xz_eq_q_zx", matrix_residual(x @ z, q * (z @ x)), tol)
    report.add("x_pow_d_eq_i", matrix_residual(matrix_power(x, d), eye), tol)
    report.add("z_pow_d_eq_i", matrix_residual(matrix_power(z, d), eye), tol)
    report.add("x_eq_fdag_z_f", matrix_residual(x, f.conj().T @ z @ f), tol)
    report.add(
        "a_pow_d_eq_sign_i",
        matrix_residual(matrix_power(a, d), (-1) ** (d - 1) * eye),
        tol,
    )
    report.add("ab_eq_qinv_ba", matrix_residual(a @ b, (b @ a) / q), tol)
    return report
