"""Dense Hermitian matrix helpers on a bipartite d1 x d2 product basis.

Basis ket |i>_A |j>_B sits at row ``i * d2 + j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TAU_HERM = 1e-10
TAU_TR = 1e-10
TAU_PSD = 1e-9
TAU_EIG = 1e-10


class QmatError(ValueError):
    """Base class for matrix admissibility failures."""


class DimensionMismatch(QmatError):
    pass


class NotHermitian(QmatError):
    def __init__(self, worst: float, where: tuple[int, int]):
        self.worst = worst
        self.where = where
        super().__init__(f"matrix not Hermitian: |m[i,j] - conj(m[j,i])| = {worst:.3e} at {where}")


class TraceNotOne(QmatError):
    def __init__(self, trace: complex):
        self.trace = trace
        super().__init__(f"trace is {trace.real:.12g}{trace.imag:+.3g}j, expected 1")


class NotPSD(QmatError):
    def __init__(self, lambda_min: float):
        self.lambda_min = lambda_min
        super().__init__(f"matrix not positive semi-definite: lambda_min = {lambda_min:.6g}")


@dataclass(frozen=True)
class BipartiteDims:
    d1: int
    d2: int

    def __post_init__(self):
        if int(self.d1) != self.d1 or int(self.d2) != self.d2:
            raise DimensionMismatch(f"dimensions must be integers, got ({self.d1}, {self.d2})")
        if self.d1 < 2 or self.d2 < 2:
            raise DimensionMismatch(f"subsystem dimensions must be >= 2, got ({self.d1}, {self.d2})")

    @property
    def n(self) -> int:
        return self.d1 * self.d2

    def index(self, i: int, j: int) -> int:
        return i * self.d2 + j


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Hermitian n x n operator tagged with its bipartite dimensions."""

    mat: np.ndarray
    dims: BipartiteDims

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)


@dataclass(frozen=True, eq=False)
class DensityMatrix(HermitianOperator):
    """Hermitian, unit-trace, PSD operator. Build through ``validate_density``."""


def as_array(x) -> np.ndarray:
    if isinstance(x, HermitianOperator):
        return x.mat
    return np.asarray(x, dtype=complex)


def _check_square(mat: np.ndarray, dims: BipartiteDims | None = None) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {mat.shape}")
    if dims is not None and mat.shape[0] != dims.n:
        raise DimensionMismatch(
            f"matrix is {mat.shape[0]}x{mat.shape[1]} but dims ({dims.d1},{dims.d2}) need {dims.n}x{dims.n}"
        )
    if not np.all(np.isfinite(mat)):
        raise QmatError("matrix contains NaN or Inf")


def hermiticity_defect(mat: np.ndarray) -> tuple[float, tuple[int, int]]:
    diff = np.abs(mat - mat.conj().T)
    where = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[where]), (int(where[0]), int(where[1]))


def check_hermitian(mat: np.ndarray, tol: float = TAU_HERM) -> None:
    worst, where = hermiticity_defect(mat)
    if worst > tol:
        raise NotHermitian(worst, where)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; block (i, k) of the result is ``a[i, k] * b``."""
    return np.kron(as_array(a), as_array(b))


def partial_transpose_b(op, dims: BipartiteDims | None = None):
    """Transpose the B factor: entry ((i,j),(k,l)) moves to ((i,l),(k,j)).

    Accepts a ``HermitianOperator`` (dims taken from it, same type returned)
    or a raw array together with ``dims``.
    """
    if isinstance(op, HermitianOperator):
        dims = op.dims if dims is None else dims
    if dims is None:
        raise DimensionMismatch("dims are required for a raw array")
    mat = as_array(op)
    _check_square(mat, dims)
    d1, d2 = dims.d1, dims.d2
    out = mat.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1).reshape(dims.n, dims.n)
    if isinstance(op, HermitianOperator):
        return HermitianOperator(out, dims)
    return out


def eig_hermitian(op, tol: float = TAU_HERM) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix."""
    mat = as_array(op)
    _check_square(mat)
    check_hermitian(mat, tol)
    # symmetrize so the LAPACK call sees exactly Hermitian input
    return np.linalg.eigvalsh((mat + mat.conj().T) / 2)


def eigh_hermitian(op, tol: float = TAU_HERM) -> tuple[np.ndarray, np.ndarray]:
    mat = as_array(op)
    _check_square(mat)
    check_hermitian(mat, tol)
    return np.linalg.eigh((mat + mat.conj().T) / 2)


def overlap(a, b, tol: float = TAU_HERM) -> float:
    """Tr(a b) for two Hermitian operators of equal size."""
    ma, mb = as_array(a), as_array(b)
    _check_square(ma)
    _check_square(mb)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"overlap of {ma.shape} with {mb.shape}")
    check_hermitian(ma, tol)
    check_hermitian(mb, tol)
    value = np.einsum("ij,ji->", ma, mb)
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise NotHermitian(abs(value.imag), (-1, -1))
    return float(value.real)


def validate_density(mat, dims: BipartiteDims, *, tol_herm: float = TAU_HERM,
                     tol_tr: float = TAU_TR, tol_psd: float = TAU_PSD) -> DensityMatrix:
    """Check a matrix is an admissible state and wrap it.

    Raises ``NotHermitian``, ``TraceNotOne`` or ``NotPSD``; each carries the
    offending quantity.
    """
    mat = as_array(mat)
    _check_square(mat, dims)
    check_hermitian(mat, tol_herm)
    tr = complex(np.trace(mat))
    if abs(tr - 1) > tol_tr:
        raise TraceNotOne(tr)
    lam_min = float(eig_hermitian(mat, tol_herm)[0])
    if lam_min < -tol_psd:
        raise NotPSD(lam_min)
    return DensityMatrix(mat, dims)


def maximally_mixed(dims: BipartiteDims) -> DensityMatrix:
    return DensityMatrix(np.eye(dims.n, dtype=complex) / dims.n, dims)


def pure_state(psi, dims: BipartiteDims, tol: float = 1e-10) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape != (dims.n,):
        raise DimensionMismatch(f"state vector has length {psi.size}, expected {dims.n}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > tol:
        raise QmatError(f"state vector not normalized (norm {norm:.12g})")
    return DensityMatrix(np.outer(psi, psi.conj()), dims)


def random_density(dims: BipartiteDims, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-ensemble state G G^dag / Tr(G G^dag)."""
    k = dims.n if rank is None else rank
    g = rng.standard_normal((dims.n, k)) + 1j * rng.standard_normal((dims.n, k))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix((rho + rho.conj().T) / 2, dims)


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2
