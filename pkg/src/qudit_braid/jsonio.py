"""JSON wire formats for matrices and states.

Matrix::

    {"kind": "matrix", "dim": n, "data": [[re, im], ...]}     # row-major

State::

    {"kind": "state", "d": d, "sites": N, "amplitudes": [[re, im], ...]}

Floats are written with 17 significant digits so a dump/load round trip is
bit-exact, and the field order is fixed so output can be diffed.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .tensor_core import StateVector, as_matrix


class DataFormatError(ValueError):
    """A JSON document is malformed or does not describe a valid object."""


def _fmt(x: float) -> str:
    s = format(float(x), ".17g")
    # keep "-0.0" and integral values as JSON floats so the sign of zero survives
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def _pairs(values: np.ndarray) -> str:
    return ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in values)


def dumps_matrix(m) -> str:
    m = as_matrix(m)
    return f'{{"kind": "matrix", "dim": {m.shape[0]}, "data": [{_pairs(m.reshape(-1))}]}}'


def dumps_state(psi: StateVector) -> str:
    return (
        f'{{"kind": "state", "d": {psi.d}, "sites": {psi.sites}, '
        f'"amplitudes": [{_pairs(psi.amplitudes)}]}}'
    )


def _complex_array(pairs, expected: int, what: str) -> np.ndarray:
    if not isinstance(pairs, list) or len(pairs) != expected:
        raise DataFormatError(f"{what}: expected a list of {expected} [re, im] pairs")
    out = np.empty(expected, dtype=np.complex128)
    for i, p in enumerate(pairs):
        if (
            not isinstance(p, list)
            or len(p) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
            or not all(math.isfinite(v) for v in p)
        ):
            raise DataFormatError(f"{what}: entry {i} is not a finite [re, im] pair")
        out[i] = complex(p[0], p[1])
    return out


def _load_doc(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("kind") != kind:
        raise DataFormatError(f'expected a JSON object with "kind": "{kind}"')
    return doc


def _positive_int(doc: dict, key: str, minimum: int) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise DataFormatError(f'"{key}" must be an integer >= {minimum}')
    return v


def loads_matrix(text: str) -> np.ndarray:
    doc = _load_doc(text, "matrix")
    dim = _positive_int(doc, "dim", 1)
    return _complex_array(doc.get("data"), dim * dim, "data").reshape(dim, dim)


def loads_state(text: str, check_norm: bool = True) -> StateVector:
    """Parse a state document.

    With ``check_norm=False`` the state is returned as-is so the caller can
    apply its own normalization tolerance.
    """
    doc = _load_doc(text, "state")
    d = _positive_int(doc, "d", 2)
    sites = _positive_int(doc, "sites", 1)
    if d**sites > 10**7:
        raise DataFormatError(f"state dimension {d}^{sites} is too large")
    amps = _complex_array(doc.get("amplitudes"), d**sites, "amplitudes")
    try:
        return StateVector(d, sites, amps, check_norm=check_norm)
    except ValueError as exc:
        raise DataFormatError(str(exc)) from exc


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
