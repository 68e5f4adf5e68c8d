"""Physical (completely positive) approximations of the partial transpose.

Three constructions live here:

* the generic depolarized map ``(1 - q) * PT_B(rho) + q * I / n``,
* the closed-form two-qubit map (entries over 9),
* the qutrit-qubit map built from a generator ``a*l01 + b*l12 + c*l02``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import (
    TAU_PSD,
    TAU_TR,
    BipartiteDims,
    DensityMatrix,
    DimensionMismatch,
    TraceNotOne,
    as_array,
    partial_transpose_b,
    validate_density,
)

# most negative eigenvalue of id (x) T over all states is -1/2
MU = 0.5

TWO_QUBIT = BipartiteDims(2, 2)
QUTRIT_QUBIT = BipartiteDims(3, 2)


@dataclass(frozen=True)
class QutritQubitSpaParams:
    a: float = 1 / math.sqrt(2)
    b: float = 1 / math.sqrt(2)
    c: float = 1 / math.sqrt(2)


def q_star(dims: BipartiteDims) -> float:
    """Smallest noise weight that keeps the generic map's output PSD.

    ``n^2 mu / (n^2 mu + 1)`` with ``n = d1 d2``; for d1 != d2 this extends the
    d x d expression and is flagged as such in reports.
    """
    n2 = dims.n ** 2
    return n2 * MU / (n2 * MU + 1)


def q_star_is_extrapolated(dims: BipartiteDims) -> bool:
    return dims.d1 != dims.d2


def spa_threshold(dims: BipartiteDims) -> float:
    """Eigenvalue cutoff: ``lambda_min`` of the q*-mapped state below this flags NPT."""
    return q_star(dims) / dims.n


def spa_pt_generic(rho: DensityMatrix, q: float, *, check: bool = True) -> DensityMatrix:
    """``(1 - q) PT_B(rho) + q I / n``.

    With ``check`` the output is validated and ``NotPSD`` raised when ``q`` is
    too small for this state.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    dims = rho.dims
    out = (1 - q) * partial_transpose_b(as_array(rho), dims) + q * np.eye(dims.n) / dims.n
    if check:
        return validate_density(out, dims)
    return DensityMatrix(out, dims)


def spa_pt_two_qubit(rho: DensityMatrix, *, check: bool = True) -> DensityMatrix:
    """Closed-form two-qubit map; every entry is written out explicitly."""
    if rho.dims != TWO_QUBIT:
        raise DimensionMismatch(f"two-qubit map needs dims (2,2), got ({rho.dims.d1},{rho.dims.d2})")
    e = as_array(rho)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = (2 + e[0, 0]) / 9
    out[0, 1] = e[0, 1].conjugate() / 9
    out[0, 2] = e[0, 2] / 9
    out[0, 3] = e[1, 2] / 9
    out[1, 1] = (2 + e[1, 1]) / 9
    out[1, 2] = e[0, 3] / 9
    out[1, 3] = e[1, 3] / 9
    out[2, 2] = (2 + e[2, 2]) / 9
    out[2, 3] = e[2, 3].conjugate() / 9
    out[3, 3] = (2 + e[3, 3]) / 9
    out = _hermitian_completion(out)
    if check:
        return validate_density(out, TWO_QUBIT)
    return DensityMatrix(out, TWO_QUBIT)


def _hermitian_completion(upper: np.ndarray) -> np.ndarray:
    out = np.triu(upper, 1)
    out = out + out.conj().T
    out[np.diag_indices_from(out)] = upper.diagonal().real
    return out


def qutrit_qubit_entries(rho, params: QutritQubitSpaParams = QutritQubitSpaParams()) -> np.ndarray:
    """Raw output of the qutrit-qubit map, no admissibility checks.

    Upper-triangle entries follow the closed forms term by term (1-based
    ``t(i, j)`` below); the lower triangle is the conjugate.
    """
    m = as_array(rho)
    if m.shape != (6, 6):
        raise DimensionMismatch(f"qutrit-qubit map needs a 6x6 matrix, got {m.shape}")

    def t(i, j):
        return m[i - 1, j - 1]

    def cc(z):
        return np.conjugate(z)

    a, b, c = params.a, params.b, params.c
    k = 3 / 32

    # qubit-averaged qutrit blocks
    s11 = t(1, 1) + t(2, 2)
    s33 = t(3, 3) + t(4, 4)
    s55 = t(5, 5) + t(6, 6)
    s13 = t(1, 3) + t(2, 4)
    s15 = t(1, 5) + t(2, 6)
    s35 = t(3, 5) + t(4, 6)

    block11 = k * ((a**2 + c**2) + a**2 * s33 + c**2 * s55 + a * c * (s35 + cc(s35)))
    block13 = k * (b * c * (1 + s55) - a**2 * s13 - a * c * s15 + a * b * cc(s35))
    block15 = k * (-a * b * (1 + s33) - a * c * s13 - c**2 * s15 - b * c * s35)
    block33 = k * (a**2 + b**2 + a**2 * s11 + b**2 * s55 - a * b * (t(1, 5) + cc(t(1, 5)))
                   - a * b * (t(2, 6) + cc(t(2, 6))))
    block35 = k * (a * c * (1 + s11) - b * c * s15 + a * b * cc(s13) - b**2 * s35)
    block55 = k * ((b**2 + c**2) + c**2 * s11 + b**2 * s33 + b * c * (s13 + cc(s13)))

    u = np.zeros((6, 6), dtype=complex)
    u[0, 0] = block11 + (2 * t(1, 1) + t(2, 2)) / 12
    u[0, 2] = block13 + (2 * t(1, 3) + t(2, 4)) / 12
    u[0, 4] = block15 + (2 * t(1, 5) + t(2, 6)) / 12
    u[1, 1] = block11 + (t(1, 1) + 2 * t(2, 2)) / 12
    u[1, 3] = block13 + (t(1, 3) + 2 * t(2, 4)) / 12
    u[1, 5] = block15 + (t(1, 5) + 2 * t(2, 6)) / 12
    u[2, 2] = block33 + (2 * t(3, 3) + t(4, 4)) / 12
    u[2, 4] = block35 + (2 * t(3, 5) + t(4, 6)) / 12
    u[3, 3] = block33 + (t(3, 3) + 2 * t(4, 4)) / 12
    # t46 shares block35 with t35, so its term is -bc(t15 + t26); the
    # -bc(t15 - t26) variant disagrees with the operational map
    u[3, 5] = block35 + (t(3, 5) + 2 * t(4, 6)) / 12
    u[4, 4] = block55 + (2 * t(5, 5) + t(6, 6)) / 12
    u[5, 5] = block55 + (t(5, 5) + 2 * t(6, 6)) / 12

    u[0, 1] = cc(t(1, 2)) / 12
    u[0, 3] = t(2, 3) / 12
    u[0, 5] = t(2, 5) / 12
    u[1, 2] = t(1, 4) / 12
    u[1, 4] = t(1, 6) / 12
    u[2, 3] = cc(t(3, 4)) / 12
    u[2, 5] = t(4, 5) / 12
    u[3, 4] = t(3, 6) / 12
    u[4, 5] = cc(t(5, 6)) / 12
    return _hermitian_completion(u)


def spa_pt_qutrit_qubit(rho: DensityMatrix, params: QutritQubitSpaParams = QutritQubitSpaParams(),
                        *, check: bool = True) -> DensityMatrix:
    """Qutrit-qubit map with trace and PSD validation.

    The map is trace preserving only on part of the state space (the qutrit
    generator squares to a rank-2 projector), so ``check`` raises
    ``TraceNotOne`` for inputs it does not normalize.
    """
    if rho.dims != QUTRIT_QUBIT:
        raise DimensionMismatch(f"qutrit-qubit map needs dims (3,2), got ({rho.dims.d1},{rho.dims.d2})")
    out = qutrit_qubit_entries(rho, params)
    if check:
        tr = complex(np.trace(out))
        if abs(tr - 1) > TAU_TR:
            raise TraceNotOne(tr)
        return validate_density(out, QUTRIT_QUBIT, tol_psd=TAU_PSD)
    return DensityMatrix(out, QUTRIT_QUBIT)


def generator(params: QutritQubitSpaParams = QutritQubitSpaParams()) -> np.ndarray:
    """Hermitian qutrit generator ``a l01 + b l12 + c l02``."""
    lam = np.zeros((3, 3), dtype=complex)
    for (i, j), w in (((0, 1), params.a), ((1, 2), params.b), ((0, 2), params.c)):
        lam[i, j] += -1j * w
        lam[j, i] += 1j * w
    return lam


def qutrit_qubit_operational(rho, params: QutritQubitSpaParams = QutritQubitSpaParams()) -> np.ndarray:
    """Same map assembled from its channel pieces; used as a cross-check.

    ``1/4 (id (x) T~) + 3/4 (Theta~ (x) D~)`` with ``T~(X) = (X^T + Tr X I) / (d + 1)``,
    ``Theta~(X) = L T~(X) L`` for the qutrit generator ``L`` and ``D~`` the
    completely depolarizing qubit channel.
    """
    m = as_array(rho).reshape(3, 2, 3, 2)
    # id (x) T~ on the qubit factor
    part_t = m.transpose(0, 3, 2, 1).copy()
    tr_b = np.einsum("ijkj->ik", m)
    part_t += np.einsum("ik,jl->ijkl", tr_b, np.eye(2))
    part_t = part_t.reshape(6, 6) / 3

    lam = generator(params)
    rho_a = tr_b
    theta = lam @ ((rho_a.T + np.trace(rho_a) * np.eye(3)) / 4) @ lam
    part_d = np.kron(theta, np.eye(2) / 2)
    return part_t / 4 + 3 * part_d / 4


def spa_for_dims(rho: DensityMatrix, q: float | None = None) -> tuple[DensityMatrix, str]:
    """Pick the map by dimensions; returns the mapped state and the map name.

    A ``q`` override always selects the generic map. For (3,2) inputs the
    qutrit-qubit map is used when it yields a unit-trace state, otherwise the
    generic q* map.
    """
    if q is not None:
        return spa_pt_generic(rho, q), "generic"
    if rho.dims == TWO_QUBIT:
        return spa_pt_two_qubit(rho), "two_qubit"
    if rho.dims == QUTRIT_QUBIT:
        try:
            return spa_pt_qutrit_qubit(rho), "qutrit_qubit"
        except TraceNotOne:
            pass
    return spa_pt_generic(rho, q_star(rho.dims)), "generic"
