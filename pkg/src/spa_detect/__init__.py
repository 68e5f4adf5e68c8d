"""NPT entanglement detection from structural physical approximations of the partial transpose."""

from .detect import (
    DetectionReport,
    Verdict,
    concurrence_bounds,
    criterion1,
    criterion2,
    criterion3,
    eig_bounds,
    full_report,
    report_family1,
    report_family2,
    wootters_concurrence,
)
from .qmat import (
    BipartiteDims,
    DensityMatrix,
    HermitianOperator,
    eig_hermitian,
    overlap,
    partial_transpose_b,
    tensor,
    validate_density,
)
from .spa import (
    QutritQubitSpaParams,
    q_star,
    spa_pt_generic,
    spa_pt_qutrit_qubit,
    spa_pt_two_qubit,
    spa_threshold,
)
from .states import Family1Params, Family2Params, build_family1, build_family2, family1_concurrence
from .witness import (
    ApproximatedWitness,
    EntanglementWitness,
    approximate_witness,
    p_star,
    witness_family_1,
    witness_family_2,
    witness_from_pure,
)

__version__ = "0.1.0"
