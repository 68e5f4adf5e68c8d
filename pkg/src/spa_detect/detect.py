"""Detection logic: eigenvalue bounds, the three fidelity criteria, concurrence bounds."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from . import spa
from .qmat import (
    TAU_EIG,
    BipartiteDims,
    DensityMatrix,
    DimensionMismatch,
    as_array,
    eig_hermitian,
    eigh_hermitian,
    overlap,
    partial_transpose_b,
)
from .states import Family1Params, Family2Params, build_family1, build_family2
from .witness import (
    ApproximatedWitness,
    DegenerateWitness,
    EntanglementWitness,
    tailored_witness,
    witness_family_1,
    witness_family_2,
)

REPORT_VERSION = 1
# equality band inside which a strict inequality is reported as inconclusive
BOUNDARY_TOL = 1e-12


class Verdict(str, enum.Enum):
    ENTANGLED = "Entangled(NPT)"
    NOT_DETECTED = "NotDetected"
    INCONCLUSIVE = "Inconclusive"
    DEGENERATE = "Degenerate"


def _strict_less(x: float, y: float) -> Verdict:
    if abs(x - y) <= BOUNDARY_TOL:
        return Verdict.INCONCLUSIVE
    return Verdict.ENTANGLED if x < y else Verdict.NOT_DETECTED


@dataclass(frozen=True)
class EigBounds:
    L: float
    U: float
    lambda_min_spa: float
    G: float

    @property
    def sandwich_holds(self) -> bool:
        return max(self.L, 0.0) - TAU_EIG <= self.lambda_min_spa <= self.U + TAU_EIG


@dataclass(frozen=True)
class ConcurrenceBounds:
    lower_raw: float
    upper: float

    @property
    def lower(self) -> float:
        return max(self.lower_raw, 0.0)


@dataclass(frozen=True)
class Criterion1Result:
    verdict: Verdict
    fidelity: float
    threshold_r: float


@dataclass(frozen=True)
class Criterion2Result:
    label: str
    concurrence: float
    lambda_min_spa: float
    fidelity_state_spa: float
    rhs: float
    holds: bool
    verdict: Verdict


@dataclass(frozen=True)
class Criterion3Result:
    label: str
    concurrence: float
    u_ent: float
    verdict: Verdict


@dataclass(frozen=True)
class EigenThresholdResult:
    q: float
    threshold: float
    lambda_min: float
    extrapolated: bool
    verdict: Verdict


def _check_dims(*ops) -> BipartiteDims:
    shapes = {as_array(o).shape for o in ops}
    if len(shapes) != 1:
        raise DimensionMismatch(f"operators have different shapes: {sorted(shapes)}")
    return ops[0].dims


def eig_bounds(rho: DensityMatrix, rho_spa: DensityMatrix, w: EntanglementWitness) -> EigBounds:
    """``L = Tr(rho~ rho) + Tr(W rho)`` and ``U = L + 1/2`` around ``lambda_min(rho~)``."""
    _check_dims(rho, rho_spa, w.op)
    lam = float(eig_hermitian(rho_spa)[0])
    low = overlap(rho_spa, rho) + overlap(w.op, rho)
    return EigBounds(L=low, U=0.5 + low, lambda_min_spa=lam, G=low - lam)


def criterion1(rho: DensityMatrix, aw: ApproximatedWitness) -> Criterion1Result:
    """Entangled iff ``Tr(W~ rho) < R``, strictly."""
    _check_dims(rho, aw.op)
    fid = aw.fidelity(rho)
    return Criterion1Result(_strict_less(fid, aw.threshold_r), fid, aw.threshold_r)


def concurrence_bounds(rho: DensityMatrix, rho_spa: DensityMatrix, aw: ApproximatedWitness) -> ConcurrenceBounds:
    _check_dims(rho, rho_spa, aw.op)
    n = aw.dims.n
    lower = (1 - aw.p) / (aw.p * n) - aw.fidelity(rho) / aw.p
    return ConcurrenceBounds(lower_raw=lower, upper=overlap(rho, rho_spa))


def criterion2(rho: DensityMatrix, rho_spa: DensityMatrix, concurrence: float,
               label: str = "measured_lower_bound") -> Criterion2Result:
    """Check ``lambda_min(rho~) >= Tr(rho rho~) - C`` on the branch ``0 < C <= Tr(rho rho~)``.

    Outside that branch the verdict is ``INCONCLUSIVE``; ``holds`` still
    records the bare inequality.
    """
    _check_dims(rho, rho_spa)
    lam = float(eig_hermitian(rho_spa)[0])
    fid = overlap(rho, rho_spa)
    rhs = fid - concurrence
    holds = lam >= rhs
    if concurrence <= BOUNDARY_TOL or concurrence > fid:
        verdict = Verdict.INCONCLUSIVE
    else:
        # strict: lam > rhs
        verdict = _strict_less(rhs, lam)
    return Criterion2Result(label, concurrence, lam, fid, rhs, holds, verdict)


def criterion3(rho: DensityMatrix, rho_spa: DensityMatrix, concurrence: float,
               label: str = "measured_lower_bound") -> Criterion3Result:
    """``U_ent = 1/2 + Tr(rho rho~) - C < 1/2``, applicable only when ``C > Tr(rho rho~)``."""
    _check_dims(rho, rho_spa)
    fid = overlap(rho, rho_spa)
    u_ent = 0.5 + fid - concurrence
    if not concurrence > fid:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = _strict_less(u_ent, 0.5)
    return Criterion3Result(label, concurrence, u_ent, verdict)


_SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence from the spin-flipped state (Bell states give 1)."""
    if rho.dims != BipartiteDims(2, 2):
        raise DimensionMismatch("Wootters concurrence is defined for two qubits only")
    vals, vecs = eigh_hermitian(as_array(rho))
    x = vecs * np.sqrt(np.clip(vals, 0, None))
    # with rho = X X^dag, sqrt(eig(rho rho_flip)) are the singular values of
    # X^T (sy x sy) X; taking them directly avoids square roots of round-off
    s = np.linalg.svd(x.T @ _SIGMA_YY @ x, compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def eigen_threshold_test(rho: DensityMatrix, q: float | None = None) -> EigenThresholdResult:
    """Flag NPT when ``lambda_min`` of the generic-mapped state drops below ``q / n``."""
    dims = rho.dims
    q_used = spa.q_star(dims) if q is None else q
    mapped = spa.spa_pt_generic(rho, q_used)
    lam = float(eig_hermitian(mapped)[0])
    thr = q_used / dims.n
    return EigenThresholdResult(q_used, thr, lam, spa.q_star_is_extrapolated(dims) and q is None,
                                _strict_less(lam, thr))


@dataclass
class DetectionReport:
    description: str
    dims: BipartiteDims
    spa_map: str
    witness_source: str
    p: float
    threshold_r: float
    fidelity_witness_state: float
    fidelity_state_spa: float
    witness_expectation: float
    criterion1: Criterion1Result
    eig_bounds: EigBounds
    concurrence_bounds: ConcurrenceBounds
    wootters: float | None
    criterion2: list[Criterion2Result]
    criterion3: list[Criterion3Result]
    eigen_threshold: EigenThresholdResult
    spectra: dict[str, list[float]]
    notes: list[str] = field(default_factory=list)

    @property
    def detected(self) -> bool:
        verdicts = [self.criterion1.verdict, self.eigen_threshold.verdict]
        verdicts += [c.verdict for c in self.criterion2] + [c.verdict for c in self.criterion3]
        return Verdict.ENTANGLED in verdicts

    def to_dict(self) -> dict:
        def clean(obj):
            if isinstance(obj, Verdict):
                return obj.value
            if isinstance(obj, dict):
                return {k: clean(v) for k, v in obj.items()}
            if isinstance(obj, (list, tuple)):
                return [clean(v) for v in obj]
            if isinstance(obj, (np.floating, float)):
                return float(obj)
            return obj

        eb = self.eig_bounds
        cb = self.concurrence_bounds
        return clean({
            "report_version": REPORT_VERSION,
            "description": self.description,
            "dims": [self.dims.d1, self.dims.d2],
            "spa_map": self.spa_map,
            "witness": {"source": self.witness_source, "p": self.p, "threshold_R": self.threshold_r},
            "fidelities": {
                "witness_state": self.fidelity_witness_state,
                "state_spa": self.fidelity_state_spa,
            },
            "witness_expectation": self.witness_expectation,
            "criterion1": asdict(self.criterion1),
            "eig_bounds": {"L": eb.L, "U": eb.U, "G": eb.G, "lambda_min_spa": eb.lambda_min_spa,
                           "sandwich_holds": eb.sandwich_holds},
            "concurrence_bounds": {"lower_raw": cb.lower_raw, "lower": cb.lower, "upper": cb.upper},
            "wootters_concurrence": self.wootters,
            "criterion2": [asdict(c) for c in self.criterion2],
            "criterion3": [asdict(c) for c in self.criterion3],
            "eigen_threshold": asdict(self.eigen_threshold),
            "spectra": self.spectra,
            "detected": self.detected,
            "notes": list(self.notes),
        })


def full_report(rho: DensityMatrix, witness: ApproximatedWitness | None = None, *,
                q: float | None = None, description: str = "") -> DetectionReport:
    """Run every criterion on ``rho``.

    Without a witness, one is tailored from the lowest PT eigenvector. The
    SPA map is chosen by dimensions unless ``q`` forces the generic map.
    """
    notes: list[str] = []
    if witness is None:
        witness = tailored_witness(rho)
    _check_dims(rho, witness.op)
    rho_spa, map_name = spa.spa_for_dims(rho, q)
    if rho.dims == spa.QUTRIT_QUBIT and map_name == "generic" and q is None:
        notes.append("qutrit-qubit map not trace preserving on this input; generic q* map used")
    if spa.q_star_is_extrapolated(rho.dims) and q is None:
        notes.append("q* for d1 != d2 uses the extrapolated (d1 d2)^2 / ((d1 d2)^2 + 2)")

    c1 = criterion1(rho, witness)
    bounds = eig_bounds(rho, rho_spa, witness.base)
    cb = concurrence_bounds(rho, rho_spa, witness)
    c2 = [criterion2(rho, rho_spa, cb.lower_raw, "measured_lower_bound")]
    c3 = [criterion3(rho, rho_spa, cb.lower_raw, "measured_lower_bound")]
    woot = None
    if rho.dims == spa.TWO_QUBIT:
        woot = wootters_concurrence(rho)
        c2.append(criterion2(rho, rho_spa, woot, "wootters"))
        c3.append(criterion3(rho, rho_spa, woot, "wootters"))
    if not bounds.sandwich_holds:
        notes.append("max(L,0) <= lambda_min(rho~) <= U violated for this state/witness pair")

    spectra = {
        "rho": eig_hermitian(rho).tolist(),
        "rho_pt": eig_hermitian(partial_transpose_b(as_array(rho), rho.dims)).tolist(),
        "rho_spa": eig_hermitian(rho_spa).tolist(),
        "witness": eig_hermitian(witness.base.op).tolist(),
    }
    return DetectionReport(
        description=description,
        dims=rho.dims,
        spa_map=map_name,
        witness_source=witness.base.source,
        p=witness.p,
        threshold_r=witness.threshold_r,
        fidelity_witness_state=c1.fidelity,
        fidelity_state_spa=cb.upper,
        witness_expectation=witness.witness_expectation(rho),
        criterion1=c1,
        eig_bounds=bounds,
        concurrence_bounds=cb,
        wootters=woot,
        criterion2=c2,
        criterion3=c3,
        eigen_threshold=eigen_threshold_test(rho, q),
        spectra=spectra,
        notes=notes,
    )


def report_family1(params: Family1Params, q: float | None = None) -> DetectionReport:
    rho = build_family1(params)
    desc = f"rho1(a={params.a:g}, b={params.b:g}, f={params.f.real:g}{params.f.imag:+g}i)"
    try:
        aw = witness_family_1(params.f)
        note = None
    except DegenerateWitness as exc:
        aw = None
        note = f"family witness unavailable ({exc}); tailored witness used"
    rep = full_report(rho, aw, q=q, description=desc)
    if note:
        rep.notes.insert(0, note)
    return rep


def report_family2(alpha: float | Family2Params, q: float | None = None) -> DetectionReport:
    params = alpha if isinstance(alpha, Family2Params) else Family2Params(float(alpha))
    rho = build_family2(params)
    try:
        aw = witness_family_2(params.alpha)
        note = None
    except DegenerateWitness as exc:
        aw = None
        note = f"family witness unavailable ({exc}); tailored witness used"
    rep = full_report(rho, aw, q=q, description=f"rho2(alpha={params.alpha:g})")
    if note:
        rep.notes.insert(0, note)
    return rep
