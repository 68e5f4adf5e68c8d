"""Entanglement witnesses W = PT_B(|psi><psi|) and their noisy, PSD versions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import (
    TAU_PSD,
    BipartiteDims,
    HermitianOperator,
    NotPSD,
    QmatError,
    as_array,
    eig_hermitian,
    eigh_hermitian,
    overlap,
    partial_transpose_b,
)


class DegenerateWitness(ValueError):
    """Witness direction undefined for the given parameters."""


@dataclass(frozen=True, eq=False)
class EntanglementWitness:
    dims: BipartiteDims
    op: HermitianOperator
    source: str
    psi: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(eig_hermitian(self.op)[0])


@dataclass(frozen=True, eq=False)
class ApproximatedWitness:
    """``W~ = p W + (1 - p) I / n`` together with the threshold ``R = (1 - p) / n``."""

    base: EntanglementWitness
    p: float
    op: HermitianOperator
    threshold_r: float

    @property
    def dims(self) -> BipartiteDims:
        return self.base.dims

    def fidelity(self, rho) -> float:
        return overlap(self.op, rho)

    def witness_expectation(self, rho) -> float:
        """Recover Tr(W rho) from the measurable overlap Tr(W~ rho)."""
        return (self.fidelity(rho) - self.threshold_r) / self.p


def witness_from_pure(psi, dims: BipartiteDims, source: str = "", tol: float = 1e-10) -> EntanglementWitness:
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape != (dims.n,):
        raise QmatError(f"state vector has length {psi.size}, expected {dims.n}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > tol:
        raise QmatError(f"witness vector not normalized (norm {norm:.12g})")
    w = partial_transpose_b(np.outer(psi, psi.conj()), dims)
    return EntanglementWitness(dims, HermitianOperator(w, dims), source or "pure", psi)


def p_star(w: EntanglementWitness) -> float:
    """Largest mixing weight p that keeps ``p W + (1 - p) I / n`` PSD."""
    lam = w.lambda_min
    if lam >= 0:
        return 1.0
    return 1.0 / (1.0 - w.dims.n * lam)


def approximate_witness(w: EntanglementWitness, p: float | None = None) -> ApproximatedWitness:
    """Mix ``w`` with white noise; ``p`` defaults to ``p_star(w)``."""
    ps = p_star(w)
    if p is None:
        p = ps
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    n = w.dims.n
    op = p * as_array(w.op) + (1 - p) * np.eye(n) / n
    lam = float(eig_hermitian(op)[0])
    if lam < -TAU_PSD:
        raise NotPSD(lam)
    return ApproximatedWitness(w, float(p), HermitianOperator(op, w.dims), (1 - p) / n)


def family1_phase(f: complex) -> complex:
    if f == 0:
        raise DegenerateWitness("f = 0: witness phase k = -f/|f| is undefined")
    return -f / abs(f)


def witness_family_1(f: complex) -> ApproximatedWitness:
    """Two-qubit witness from ``(k|00> + |11>)/sqrt(2)``, ``k = -f/|f|``, at p = 1/3."""
    k = family1_phase(complex(f))
    psi = np.array([k, 0, 0, 1], dtype=complex) / math.sqrt(1 + abs(k) ** 2)
    w = witness_from_pure(psi, BipartiteDims(2, 2), source=f"family1 k={k:.6g}")
    return approximate_witness(w, 1 / 3)


def kappa(alpha: float) -> float:
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 1:
        raise DegenerateWitness("alpha = 1: kappa diverges, witness direction tends to |11>")
    return (alpha + math.sqrt(4 - 8 * alpha + 5 * alpha**2)) / (2 * (1 - alpha))


def family2_r(alpha: float) -> float:
    return 1 / (4 * (1 + kappa(alpha) ** 2))


def witness_family_2(alpha: float) -> ApproximatedWitness:
    """Qutrit-qubit witness from ``(-kappa|11> + |20>)/sqrt(1 + kappa^2)`` at fixed p = 1/4."""
    kap = kappa(alpha)
    dims = BipartiteDims(3, 2)
    psi = np.zeros(6, dtype=complex)
    psi[dims.index(1, 1)] = -kap
    psi[dims.index(2, 0)] = 1
    psi /= math.sqrt(1 + kap**2)
    w = witness_from_pure(psi, dims, source=f"family2 kappa={kap:.6g}")
    return approximate_witness(w, 0.25)


def tailored_witness(rho, p: float | None = None) -> ApproximatedWitness:
    """Witness built from the lowest eigenvector of PT_B(rho).

    ``Tr(W rho)`` then equals ``lambda_min(PT_B rho)``.
    """
    dims = rho.dims
    vals, vecs = eigh_hermitian(partial_transpose_b(as_array(rho), dims))
    w = witness_from_pure(vecs[:, 0], dims, source="tailored: lowest PT eigenvector")
    return approximate_witness(w, p)
