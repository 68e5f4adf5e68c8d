"""The two worked state families: an X-shaped two-qubit state and a rank-2 qutrit-qubit state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import TAU_PSD, BipartiteDims, DensityMatrix, NotPSD, TraceNotOne, validate_density

FAMILY1_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Family1Params:
    """diag(a, b, b, a) with coherence f between |01> and |10>; a + b = 1/2."""

    a: float
    b: float
    f: complex

    def __post_init__(self):
        object.__setattr__(self, "f", complex(self.f))
        if self.a < 0 or self.b < 0:
            raise ValueError(f"a and b must be nonnegative, got a={self.a}, b={self.b}")
        if abs(self.a + self.b - 0.5) > FAMILY1_SUM_TOL:
            raise TraceNotOne(complex(2 * (self.a + self.b)))
        if abs(self.f) > self.b + TAU_PSD:
            # spectrum is {a, a, b - |f|, b + |f|}
            raise NotPSD(self.b - abs(self.f))

    @property
    def entangled(self) -> bool:
        return abs(self.f) > self.a


@dataclass(frozen=True)
class Family2Params:
    alpha: float

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


def build_family1(p: Family1Params) -> DensityMatrix:
    a, b, f = p.a, p.b, p.f
    mat = np.diag([a, b, b, a]).astype(complex)
    mat[1, 2] = f
    mat[2, 1] = f.conjugate()
    return validate_density(mat, BipartiteDims(2, 2))


def build_family2(p: Family2Params | float) -> DensityMatrix:
    """Mixture of (|01> + |20>)/sqrt2 (weight alpha) and (|10> + |21>)/sqrt2."""
    if not isinstance(p, Family2Params):
        p = Family2Params(float(p))
    al = p.alpha
    mat = np.zeros((6, 6), dtype=complex)
    for i, j, w in ((1, 4, al / 2), (2, 5, (1 - al) / 2)):
        mat[i, i] = mat[j, j] = mat[i, j] = mat[j, i] = w
    return validate_density(mat, BipartiteDims(3, 2))


def family1_concurrence(p: Family1Params) -> float:
    """Concurrence in the ``|f| - a`` normalization used by the worked example.

    This is half the Wootters value, and equals the witness bound ``-Tr(W rho)``.
    """
    return max(0.0, abs(p.f) - p.a)
