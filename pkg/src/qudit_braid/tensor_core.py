"""Dense complex linear algebra on N-qudit tensor product spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Basis states
``|k_1, ..., k_N>`` are indexed big-endian: the leftmost site is the most
significant digit, which is the same ordering ``np.kron`` gives to its left
factor. Sites are labelled ``1..N`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

DEFAULT_BUDGET = 4096
MAX_STATE_AMPLITUDES = 10**7
DEFAULT_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8


class BudgetExceededError(ValueError):
    """A dense object would exceed the configured dimension budget."""


class NotUnitaryError(ValueError):
    """Input matrix failed the unitarity precondition."""

    def __init__(self, residual: float, tol: float):
        super().__init__(
            f"matrix is not unitary: max|U^dag U - I| = {residual:.3e} > tol {tol:.1e}"
        )
        self.residual = residual
        self.tol = tol


@dataclass(frozen=True)
class QuditShape:
    """``sites`` qudits of ``d`` levels each, with a dense-size budget."""

    d: int
    sites: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"level count d must be an integer >= 2, got {self.d!r}")
        if int(self.sites) != self.sites or self.sites < 1:
            raise ValueError(f"sites must be an integer >= 1, got {self.sites!r}")
        if self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget!r}")

    @property
    def dim(self) -> int:
        return self.d**self.sites

    def require_dense(self, extra_sites: int = 0) -> int:
        """Return ``d**(sites + extra_sites)``, raising if it is over budget."""
        dim = self.d ** (self.sites + extra_sites)
        if dim > self.budget:
            raise BudgetExceededError(
                f"dense dimension {self.d}^{self.sites + extra_sites} = {dim} "
                f"exceeds budget {self.budget}"
            )
        return dim

    def require_state(self) -> int:
        dim = self.dim
        if dim > MAX_STATE_AMPLITUDES:
            raise BudgetExceededError(
                f"state of {dim} amplitudes exceeds limit {MAX_STATE_AMPLITUDES}"
            )
        return dim


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes of a pure state on ``sites`` qudits of ``d`` levels.

    States are checked for unit norm on construction. Pass
    ``check_norm=False`` to hold raw, possibly unnormalized data (e.g. a
    freshly parsed file that still has to be validated).
    """

    d: int
    sites: int
    amplitudes: np.ndarray
    check_norm: bool = field(default=True, repr=False)

    def __post_init__(self):
        shape = QuditShape(self.d, self.sites, budget=MAX_STATE_AMPLITUDES)
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != shape.dim:
            raise ValueError(
                f"expected {shape.dim} amplitudes for d={self.d}, sites={self.sites}, "
                f"got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if self.check_norm and self.norm_residual() > DEFAULT_TOL:
            raise ValueError(
                f"state is not normalized: |norm - 1| = {self.norm_residual():.3e}"
            )

    @property
    def shape(self) -> QuditShape:
        return QuditShape(self.d, self.sites, budget=MAX_STATE_AMPLITUDES)

    def norm_residual(self) -> float:
        return abs(float(np.linalg.norm(self.amplitudes)) - 1.0)

    @classmethod
    def basis(cls, digits: Sequence[int], d: int) -> "StateVector":
        """The product basis state ``|k_1, ..., k_N>``."""
        shape = QuditShape(d, len(digits), budget=MAX_STATE_AMPLITUDES)
        amps = np.zeros(shape.require_state(), dtype=np.complex128)
        amps[basis_index(digits, shape)] = 1.0
        return cls(d, len(digits), amps)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """``u = vectors @ diag(exp(1j * phases)) @ vectors^dag``."""

    phases: np.ndarray
    vectors: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def reconstruct(self, fn=None) -> np.ndarray:
        """Resynthesize ``sum_k f(phi_k) |u_k><u_k|``; ``f`` defaults to ``exp(i phi)``."""
        values = self.eigenvalues if fn is None else fn(self.phases)
        return (self.vectors * values) @ self.vectors.conj().T


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": float(self.residual),
            "tol": float(self.tol),
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    """Named max-entry residuals, each judged against a tolerance."""

    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float) -> None:
        self.checks.append(Check(name, float(residual), float(tol)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "pass": self.passed}


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` as a finite square complex matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def kron(a, b, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Kronecker product with ``a`` as the most significant factor."""
    a, b = as_matrix(a), as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > budget:
        raise BudgetExceededError(f"kron dimension {dim} exceeds budget {budget}")
    return np.kron(a, b)


def kron_all(factors: Iterable, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    factors = list(factors)
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f, budget=budget)
    return out


def matrix_power(a, k: int) -> np.ndarray:
    """``a**k`` by repeated multiplication (``k >= 0``)."""
    a = as_matrix(a)
    if k < 0:
        raise ValueError("negative powers are not supported")
    out = np.eye(a.shape[0], dtype=np.complex128)
    for _ in range(k):
        out = out @ a
    return out


def matrix_residual(a, b) -> float:
    """Max-entry absolute difference between two matrices of equal size."""
    a, b = np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def unitarity_residual(u) -> float:
    u = as_matrix(u)
    return matrix_residual(u.conj().T @ u, np.eye(u.shape[0]))


def hermiticity_residual(h) -> float:
    h = as_matrix(h)
    return matrix_residual(h, h.conj().T)


def basis_index(digits: Sequence[int], shape: QuditShape) -> int:
    """Position of ``|k_1, ..., k_N>`` in the big-endian computational basis."""
    if len(digits) != shape.sites:
        raise ValueError(f"expected {shape.sites} digits, got {len(digits)}")
    index = 0
    for k in digits:
        if int(k) != k or not 0 <= k < shape.d:
            raise ValueError(f"digit {k!r} out of range 0..{shape.d - 1}")
        index = index * shape.d + int(k)
    return index


def basis_digits(index: int, shape: QuditShape) -> tuple[int, ...]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < shape.dim:
        raise ValueError(f"index {index} out of range 0..{shape.dim - 1}")
    digits = []
    for _ in range(shape.sites):
        index, k = divmod(index, shape.d)
        digits.append(k)
    return tuple(reversed(digits))


def partial_trace(psi: StateVector, keep: Iterable[int]) -> np.ndarray:
    """Reduced density operator of ``|psi><psi|`` on the sites in ``keep``.

    Sites are 1-based. The kept sites stay in ascending order, so the result
    uses the same big-endian convention as the full space.
    """
    keep = sorted(set(int(s) for s in keep))
    n = psi.sites
    if not keep or len(keep) >= n:
        raise ValueError(f"keep must be a nonempty proper subset of 1..{n}, got {keep}")
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"site labels must lie in 1..{n}, got {keep}")
    axes = [s - 1 for s in keep]
    traced = [a for a in range(n) if a not in axes]
    tensor = psi.amplitudes.reshape((psi.d,) * n)
    mat = np.transpose(tensor, axes + traced).reshape(psi.d ** len(axes), -1)
    return mat @ mat.conj().T


def purity(rho) -> float:
    """``Tr rho^2`` for a Hermitian ``rho``."""
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho) ** 2))


def spectral_decompose_unitary(u, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigenphases in (-pi, pi] and orthonormal eigenvectors of a unitary.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors are an orthonormal eigenbasis even when eigenvalues are
    degenerate (where ``np.linalg.eig`` would not guarantee orthogonality).

    Raises
    ------
    NotUnitaryError
        If ``max|U^dag U - I| > tol``.
    """
    u = as_matrix(u)
    residual = unitarity_residual(u)
    if residual > tol:
        raise NotUnitaryError(residual, tol)
    t, z = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diag(t))
    # np.angle gives -pi for -1 - 0j; fold that side of the cut onto +pi
    phases = np.where(phases <= -np.pi + 1e-12, np.pi, phases)
    dec = SpectralDecomposition(phases=phases, vectors=z)
    err = matrix_residual(dec.reconstruct(), u)
    if err > RECONSTRUCTION_TOL:
        raise ArithmeticError(f"spectral reconstruction residual {err:.3e} too large")
    return dec
