import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from conftest import dims_strategy, rand_rho, seeds
from spa_detect.fileio import StateFileError, matrix_payload, state_from_payload
from spa_detect.qmat import (
    BipartiteDims,
    DensityMatrix,
    DimensionMismatch,
    HermitianOperator,
    NotHermitian,
    NotPSD,
    TAU_EIG,
    TraceNotOne,
    eig_hermitian,
    maximally_mixed,
    overlap,
    partial_transpose_b,
    random_hermitian,
    tensor,
    validate_density,
)
from spa_detect.spa import spa_pt_two_qubit
from spa_detect.states import Family1Params, build_family1
from spa_detect.witness import witness_family_1

D22 = BipartiteDims(2, 2)
D32 = BipartiteDims(3, 2)


def rho1_raw(a, b, f):
    m = np.diag([a, b, b, a]).astype(complex)
    m[1, 2], m[2, 1] = f, np.conj(f)
    return m


class TestTensor:
    def test_identity(self):
        assert_allclose(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_projectors(self):
        assert_allclose(tensor(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))

    def test_index_convention_by_enumeration(self):
        e01 = np.zeros((3, 3))
        e01[0, 1] = 1
        out = tensor(e01, np.eye(2))
        dims = D32
        # brute force: <i j| E01 (x) I |k l> = [i=0][k=1][j=l]
        expected = np.zeros((6, 6))
        for i, j, k, l in itertools.product(range(3), range(2), range(3), range(2)):
            expected[dims.index(i, j), dims.index(k, l)] = float(i == 0 and k == 1 and j == l)
        assert_allclose(out, expected)
        assert {tuple(x) for x in np.argwhere(out)} == {(0, 2), (1, 3)}


class TestPartialTranspose:
    def test_family1_matrix(self):
        f = 0.2 + 0.3j
        pt = partial_transpose_b(rho1_raw(0.1, 0.4, f), D22)
        expected = np.diag([0.1, 0.4, 0.4, 0.1]).astype(complex)
        expected[0, 3], expected[3, 0] = f, np.conj(f)
        assert_allclose(pt, expected)

    def test_identity_fixed(self):
        assert_allclose(partial_transpose_b(np.eye(6) / 6, D32), np.eye(6) / 6)

    def test_witness2_support(self):
        kap = 1.3
        dims = D32
        chi = np.zeros(6)
        chi[dims.index(1, 1)] = -kap
        chi[dims.index(2, 0)] = 1
        chi /= np.sqrt(1 + kap**2)
        pt = partial_transpose_b(np.outer(chi, chi), dims)
        assert {tuple(x) for x in np.argwhere(np.abs(pt) > 1e-15)} == {(3, 3), (4, 4), (2, 5), (5, 2)}
        assert pt[2, 5] == pytest.approx(-kap / (1 + kap**2))

    def test_elementwise_rule(self, rng):
        dims = BipartiteDims(3, 2)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        pt = partial_transpose_b(m, dims)
        for i, j, k, l in itertools.product(range(3), range(2), range(3), range(2)):
            assert pt[dims.index(i, l), dims.index(k, j)] == m[dims.index(i, j), dims.index(k, l)]

    def test_operator_in_operator_out(self):
        op = HermitianOperator(np.eye(4) / 4, D22)
        out = partial_transpose_b(op)
        assert isinstance(out, HermitianOperator) and out.dims == D22

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            partial_transpose_b(np.eye(5), D22)

    @given(seeds, dims_strategy)
    def test_involution_and_trace(self, seed, dims):
        rho = rand_rho(seed, dims).mat
        pt = partial_transpose_b(rho, dims)
        assert np.array_equal(partial_transpose_b(pt, dims), rho)
        assert np.trace(pt) == np.trace(rho)


class TestEig:
    def test_diagonal(self):
        assert_allclose(eig_hermitian(np.diag([0.7, 0.3])), [0.3, 0.7])

    @given(st.floats(0, 0.5), st.floats(0, 1), st.floats(0, 2 * np.pi))
    def test_family1_pt_spectrum(self, a, frac, phase):
        b = 0.5 - a
        f = frac * b * np.exp(1j * phase)
        lam = eig_hermitian(partial_transpose_b(rho1_raw(a, b, f), D22))
        assert_allclose(lam, sorted([a - abs(f), b, b, a + abs(f)]), atol=1e-12)

    def test_table3_first_row(self):
        rho = build_family1(Family1Params(0.05, 0.45, 0.2 + 0.2j))
        assert eig_hermitian(spa_pt_two_qubit(rho))[0] == pytest.approx(0.19635, abs=1e-5)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            eig_hermitian(np.array([[0, 1], [0, 0]]))

    def test_deterministic(self, rng):
        h = random_hermitian(7, rng)
        assert np.array_equal(eig_hermitian(h), eig_hermitian(h.copy()))

    @given(seeds, dims_strategy)
    def test_sum_equals_trace_and_psd(self, seed, dims):
        rho = rand_rho(seed, dims, rank=1)
        lam = eig_hermitian(rho)
        assert abs(lam.sum() - 1) <= dims.n * TAU_EIG
        assert lam[0] >= -1e-9


class TestOverlap:
    @given(seeds, dims_strategy)
    def test_with_maximally_mixed(self, seed, dims):
        assert overlap(rand_rho(seed, dims), maximally_mixed(dims)) == pytest.approx(1 / dims.n, abs=1e-14)

    def test_table2_state_spa(self):
        rho = build_family1(Family1Params(0.05, 0.45, 0.2 + 0.2j))
        assert overlap(rho, spa_pt_two_qubit(rho)) == pytest.approx(0.26777, abs=1e-5)

    def test_table1_witness(self):
        rho = build_family1(Family1Params(0.1, 0.4, 0.25 + 0.25j))
        assert overlap(witness_family_1(0.25 + 0.25j).op, rho) == pytest.approx(0.08214, abs=1e-5)

    @given(seeds)
    def test_symmetric(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_hermitian(5, rng), random_hermitian(5, rng)
        assert overlap(a, b) == pytest.approx(overlap(b, a), rel=1e-12, abs=1e-12)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            overlap(np.eye(4), np.eye(6))


class TestValidateDensity:
    def test_boundary_psd_accepted(self):
        rho = validate_density(rho1_raw(0.05, 0.45, 0.45), D22)
        assert isinstance(rho, DensityMatrix)

    def test_not_psd(self):
        with pytest.raises(NotPSD) as exc:
            validate_density(rho1_raw(0.05, 0.45, 0.5), D22)
        assert exc.value.lambda_min == pytest.approx(-0.05)

    def test_maximally_mixed_32(self):
        validate_density(np.eye(6) / 6, D32)

    def test_trace(self):
        with pytest.raises(TraceNotOne):
            validate_density(np.eye(4) / 2, D22)

    def test_hermitian(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1
        with pytest.raises(NotHermitian) as exc:
            validate_density(m, D22)
        assert exc.value.where in {(0, 1), (1, 0)}

    def test_bad_dims(self):
        with pytest.raises(DimensionMismatch):
            validate_density(np.eye(4) / 4, D32)
        with pytest.raises(DimensionMismatch):
            BipartiteDims(1, 4)

    def test_immutable(self):
        rho = validate_density(np.eye(4) / 4, D22)
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1


@given(seeds)
def test_trace_sandwich(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))
    a = random_hermitian(n, rng)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = g @ g.conj().T
    lam = eig_hermitian(a)
    val = overlap(a, b)
    tr_b = np.trace(b).real
    tol = 1e-10 * max(1, abs(val))
    assert lam[0] * tr_b - tol <= val <= lam[-1] * tr_b + tol


@given(seeds, dims_strategy, st.integers(1, 9))
def test_pt_spectrum_range(seed, dims, rank):
    rho = rand_rho(seed, dims, rank=min(rank, dims.n))
    lam = eig_hermitian(partial_transpose_b(rho))
    assert lam[0] >= -0.5 - TAU_EIG and lam[-1] <= 1 + TAU_EIG


class TestMatrixFile:
    def test_roundtrip(self):
        payload = json.loads(json.dumps(matrix_payload(np.eye(6) / 6, D32)))
        rho, origin = state_from_payload(payload)
        assert rho.dims == D32 and origin["family"] is None
        assert_allclose(rho.mat, np.eye(6) / 6)

    def test_non_square(self):
        payload = {"d1": 2, "d2": 2, "matrix": [[[1, 0]] * 4] * 3}
        with pytest.raises(StateFileError):
            state_from_payload(payload)

    def test_inconsistent_dims(self):
        with pytest.raises(DimensionMismatch):
            state_from_payload(matrix_payload(np.eye(4) / 4, D22) | {"d1": 3})

    def test_family_shortcut(self):
        rho, origin = state_from_payload({"family": "rho1", "a": 0.05, "b": 0.45, "f": "0.4+0.1i"})
        assert origin["family"] == "rho1" and rho.mat[1, 2] == 0.4 + 0.1j
