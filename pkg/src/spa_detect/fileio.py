"""JSON state files and complex literals shared by the command line.

Matrix payload::

    {"d1": 3, "d2": 2, "matrix": [[[re, im], ...], ...]}

Family shortcut payloads::

    {"family": "rho1", "a": 0.05, "b": 0.45, "f": "0.4+0.1i"}
    {"family": "rho2", "alpha": 0.5}

A witness vector file uses ``{"d1", "d2", "vector": [[re, im], ...]}``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .qmat import BipartiteDims, DensityMatrix, DimensionMismatch, validate_density
from .states import Family1Params, Family2Params, build_family1, build_family2

_NUM = r"(?:\d+\.?\d*|\.\d+)"
_REAL_IMAG = re.compile(rf"^(?P<re>[+-]?{_NUM})(?:(?P<im>[+-]{_NUM})i)?$")
_IMAG_ONLY = re.compile(rf"^(?P<im>[+-]?{_NUM})i$")


class StateFileError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``RE``, ``RE+IMi``, ``RE-IMi`` or ``IMi`` (decimal only)."""
    t = text.strip().replace(" ", "")
    m = _REAL_IMAG.match(t)
    if m:
        return complex(float(m.group("re")), float(m.group("im") or 0.0))
    m = _IMAG_ONLY.match(t)
    if m:
        return complex(0.0, float(m.group("im")))
    raise ValueError(f"not a complex literal: {text!r} (expected RE+IMi)")


def format_complex(z: complex) -> str:
    return f"{z.real:g}{z.imag:+g}i"


def _entry(x) -> complex:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, str):
        return parse_complex(x)
    raise StateFileError(f"bad matrix entry {x!r}; expected [re, im]")


def _dims(payload: dict) -> BipartiteDims:
    try:
        return BipartiteDims(int(payload["d1"]), int(payload["d2"]))
    except KeyError as exc:
        raise StateFileError(f"missing field {exc.args[0]!r}") from None


def matrix_from_payload(payload: dict) -> tuple[np.ndarray, BipartiteDims]:
    dims = _dims(payload)
    rows = payload.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise StateFileError("'matrix' must be a non-empty list of rows")
    if any(not isinstance(r, list) or len(r) != len(rows) for r in rows):
        raise StateFileError("'matrix' is not square")
    if len(rows) != dims.n:
        raise DimensionMismatch(f"matrix is {len(rows)}x{len(rows)} but d1*d2 = {dims.n}")
    mat = np.array([[_entry(x) for x in r] for r in rows], dtype=complex)
    return mat, dims


def state_from_payload(payload: dict) -> tuple[DensityMatrix, dict]:
    """Return the validated state and a description of its origin."""
    if not isinstance(payload, dict):
        raise StateFileError("state file must hold a JSON object")
    family = payload.get("family")
    if family == "rho1":
        f = payload.get("f", 0)
        fp = Family1Params(float(payload["a"]), float(payload["b"]), _entry(f))
        return build_family1(fp), {"family": "rho1", "params": fp}
    if family == "rho2":
        fp = Family2Params(float(payload["alpha"]))
        return build_family2(fp), {"family": "rho2", "params": fp}
    if family is not None:
        raise StateFileError(f"unknown family {family!r}")
    mat, dims = matrix_from_payload(payload)
    return validate_density(mat, dims), {"family": None}


def load_state(path: str | Path) -> tuple[DensityMatrix, dict]:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON ({exc})") from None
    return state_from_payload(payload)


def load_vector(path: str | Path) -> tuple[np.ndarray, BipartiteDims]:
    payload = json.loads(Path(path).read_text())
    dims = _dims(payload)
    vec = payload.get("vector")
    if not isinstance(vec, list) or len(vec) != dims.n:
        raise DimensionMismatch(f"'vector' must have {dims.n} entries")
    return np.array([_entry(x) for x in vec], dtype=complex), dims


def matrix_payload(mat: np.ndarray, dims: BipartiteDims) -> dict:
    return {
        "d1": dims.d1,
        "d2": dims.d2,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(mat)],
    }
