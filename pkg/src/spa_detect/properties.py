"""Seeded randomized checks of the structural facts the detection logic relies on."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spa
from .qmat import (
    TAU_EIG,
    TAU_PSD,
    BipartiteDims,
    eig_hermitian,
    partial_transpose_b,
    random_density,
    random_hermitian,
)

DIMS_POOL = [BipartiteDims(d1, d2) for d1 in (2, 3) for d2 in (2, 3)]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    trials: int
    violations: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def trace_sandwich(trials: int, rng: np.random.Generator) -> PropertyResult:
    """lambda_min(A) Tr B <= Tr(AB) <= lambda_max(A) Tr B for Hermitian A, PSD B."""
    bad, worst = 0, 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 10))
        a = random_hermitian(n, rng)
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = g @ g.conj().T
        lam = eig_hermitian(a)
        tr_b = np.trace(b).real
        val = np.einsum("ij,ji->", a, b).real
        scale = 1e-10 * max(1.0, abs(val))
        excess = max(lam[0] * tr_b - val, val - lam[-1] * tr_b)
        worst = max(worst, excess)
        if excess > scale:
            bad += 1
    return PropertyResult("trace_sandwich", trials, bad, worst)


def pt_spectral_range(trials: int, rng: np.random.Generator) -> PropertyResult:
    """Every eigenvalue of PT_B(rho) lies in [-1/2, 1]."""
    bad, worst = 0, 0.0
    for i in range(trials):
        dims = DIMS_POOL[i % len(DIMS_POOL)]
        # low rank states push the PT spectrum toward the edges
        rank = int(rng.integers(1, dims.n + 1))
        rho = random_density(dims, rng, rank=rank)
        lam = eig_hermitian(partial_transpose_b(rho))
        excess = max(-0.5 - lam[0], lam[-1] - 1.0)
        worst = max(worst, excess)
        if excess > TAU_EIG:
            bad += 1
    return PropertyResult("pt_spectral_range", trials, bad, worst)


def two_qubit_equivalence(trials: int, rng: np.random.Generator) -> PropertyResult:
    """Closed-form two-qubit map equals the generic map at q = 8/9 entrywise."""
    bad, worst = 0, 0.0
    q = spa.q_star(spa.TWO_QUBIT)
    for _ in range(trials):
        rho = random_density(spa.TWO_QUBIT, rng)
        dev = float(np.abs(spa.spa_pt_two_qubit(rho, check=False).mat
                           - spa.spa_pt_generic(rho, q, check=False).mat).max())
        worst = max(worst, dev)
        if dev > 1e-12:
            bad += 1
    return PropertyResult("two_qubit_equivalence", trials, bad, worst)


def generic_map_psd(trials: int, rng: np.random.Generator, q: float | None = None) -> PropertyResult:
    """Generic map output stays PSD at q* (or at an override q)."""
    bad, worst = 0, 0.0
    for i in range(trials):
        dims = DIMS_POOL[i % len(DIMS_POOL)]
        rho = random_density(dims, rng, rank=1 if i % 2 else None)
        out = spa.spa_pt_generic(rho, spa.q_star(dims) if q is None else q, check=False)
        lam = float(eig_hermitian(out)[0])
        worst = max(worst, -lam)
        if lam < -TAU_PSD:
            bad += 1
    name = "generic_map_psd" if q is None else f"generic_map_psd(q={q:g})"
    return PropertyResult(name, trials, bad, worst)


def qutrit_qubit_psd(trials: int, rng: np.random.Generator) -> PropertyResult:
    bad, worst = 0, 0.0
    for _ in range(trials):
        rho = random_density(spa.QUTRIT_QUBIT, rng)
        lam = float(eig_hermitian(spa.qutrit_qubit_entries(rho))[0])
        worst = max(worst, -lam)
        if lam < -TAU_PSD:
            bad += 1
    return PropertyResult("qutrit_qubit_psd", trials, bad, worst)


def qutrit_qubit_trace(trials: int, rng: np.random.Generator) -> PropertyResult:
    bad, worst = 0, 0.0
    for _ in range(trials):
        rho = random_density(spa.QUTRIT_QUBIT, rng)
        dev = float(abs(np.trace(spa.qutrit_qubit_entries(rho)) - 1))
        worst = max(worst, dev)
        if dev > 1e-12:
            bad += 1
    return PropertyResult("qutrit_qubit_trace", trials, bad, worst)


def eigen_threshold_agreement(trials: int, rng: np.random.Generator) -> PropertyResult:
    """lambda_min(rho~) < 2/9 exactly when PT_B(rho) has a negative eigenvalue."""
    bad, worst = 0, 0.0
    thr = spa.spa_threshold(spa.TWO_QUBIT)
    for _ in range(trials):
        rho = random_density(spa.TWO_QUBIT, rng, rank=int(rng.integers(1, 5)))
        lam_pt = float(eig_hermitian(partial_transpose_b(rho))[0])
        if abs(lam_pt) < 1e-9:
            continue
        lam_spa = float(eig_hermitian(spa.spa_pt_two_qubit(rho, check=False))[0])
        if (lam_spa < thr) != (lam_pt < 0):
            bad += 1
            worst = max(worst, abs(lam_pt))
    return PropertyResult("eigen_threshold_agreement", trials, bad, worst)


SUITES = {
    "trace_sandwich": trace_sandwich,
    "pt_spectral_range": pt_spectral_range,
    "two_qubit_equivalence": two_qubit_equivalence,
    "generic_map_psd": generic_map_psd,
    "qutrit_qubit_psd": qutrit_qubit_psd,
    "qutrit_qubit_trace": qutrit_qubit_trace,
    "eigen_threshold_agreement": eigen_threshold_agreement,
}


def run_all(seed: int, trials: int, q: float | None = None, skip: tuple[str, ...] = ()) -> list[PropertyResult]:
    """Run each suite with its own generator spawned from ``seed``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    unknown = set(skip) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    seeds = np.random.SeedSequence(seed).spawn(len(SUITES))
    results = []
    for (name, fn), ss in zip(SUITES.items(), seeds):
        if name in skip:
            continue
        rng = np.random.default_rng(ss)
        if name == "generic_map_psd":
            results.append(fn(trials, rng, q))
        else:
            results.append(fn(trials, rng))
    return results
