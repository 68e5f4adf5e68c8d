import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from conftest import rand_rho, seeds
from spa_detect.qmat import BipartiteDims, NotPSD, QmatError, eig_hermitian, overlap, partial_transpose_b
from spa_detect.states import Family1Params, build_family1, build_family2
from spa_detect.witness import (
    DegenerateWitness,
    approximate_witness,
    kappa,
    p_star,
    tailored_witness,
    witness_family_1,
    witness_family_2,
    witness_from_pure,
)

D22 = BipartiteDims(2, 2)
D32 = BipartiteDims(3, 2)

phases = st.floats(0, 2 * math.pi)


def family1_witness_raw(k):
    psi = np.array([k, 0, 0, 1]) / math.sqrt(2)
    return witness_from_pure(psi, D22)


class TestWitnessFromPure:
    @given(phases)
    def test_family1_entries(self, phase):
        k = np.exp(1j * phase)
        w = family1_witness_raw(k).op.mat
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[3, 3] = 0.5
        expected[1, 2], expected[2, 1] = k / 2, np.conj(k) / 2
        assert_allclose(w, expected, atol=1e-15)

    def test_product_state(self):
        w = witness_from_pure([1, 0, 0, 0], D22)
        assert_allclose(w.op.mat, np.diag([1, 0, 0, 0]))

    @given(st.floats(0, 0.99))
    def test_family2_entries(self, alpha):
        kap = kappa(alpha)
        w = witness_family_2(alpha).base.op.mat
        nrm = 1 + kap**2
        assert w[3, 3] == pytest.approx(kap**2 / nrm)
        assert w[4, 4] == pytest.approx(1 / nrm)
        assert w[2, 5] == pytest.approx(-kap / nrm)
        assert np.count_nonzero(np.abs(w) > 1e-15) == 4

    def test_unnormalized(self):
        with pytest.raises(QmatError):
            witness_from_pure([1, 1, 0, 0], D22)

    @given(seeds)
    def test_trace_one(self, seed):
        rng = np.random.default_rng(seed)
        psi = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        w = witness_from_pure(psi / np.linalg.norm(psi), D32)
        assert np.trace(w.op.mat).real == pytest.approx(1)


class TestPStar:
    def test_family1(self):
        assert p_star(family1_witness_raw(-1)) == pytest.approx(1 / 3)

    def test_psd_witness(self):
        assert p_star(witness_from_pure([1, 0, 0, 0], D22)) == 1.0

    def test_family2_alpha0(self):
        assert p_star(witness_family_2(0.0).base) == pytest.approx(1 / 4)

    @given(st.floats(0, 0.999))
    def test_family2_quarter_admissible(self, alpha):
        assert p_star(witness_family_2(alpha).base) >= 0.25 - 1e-12


class TestApproximate:
    def test_family1_display(self):
        f = 0.25 + 0.25j
        k = -f / abs(f)
        aw = witness_family_1(f)
        expected = np.diag([1 / 3, 1 / 6, 1 / 6, 1 / 3]).astype(complex)
        expected[1, 2], expected[2, 1] = k / 6, np.conj(k) / 6
        assert_allclose(aw.op.mat, expected, atol=1e-15)
        assert aw.threshold_r == pytest.approx(1 / 6)
        assert eig_hermitian(aw.op)[0] == pytest.approx(0, abs=1e-12)

    @given(st.floats(0, 0.99))
    def test_family2_display(self, alpha):
        kap = kappa(alpha)
        r = 1 / (4 * (1 + kap**2))
        expected = np.eye(6) / 8
        expected[3, 3] += r * kap**2
        expected[4, 4] += r
        expected[2, 5] = expected[5, 2] = -r * kap
        aw = witness_family_2(alpha)
        assert_allclose(aw.op.mat, expected, atol=1e-14)
        assert aw.threshold_r == pytest.approx(1 / 8)
        assert np.trace(aw.op.mat).real == pytest.approx(1)

    def test_beyond_p_star(self):
        with pytest.raises(NotPSD):
            approximate_witness(family1_witness_raw(1), 0.5)

    @given(seeds, st.floats(0.05, 1))
    def test_boundary_and_trace(self, seed, frac):
        rng = np.random.default_rng(seed)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = witness_from_pure(psi / np.linalg.norm(psi), D22)
        aw = approximate_witness(w)
        assert -1e-9 <= eig_hermitian(aw.op)[0] <= 1e-10
        partial = approximate_witness(w, frac * p_star(w))
        assert np.trace(partial.op.mat).real == pytest.approx(1)

    @given(seeds, seeds)
    def test_expectation_roundtrip(self, s1, s2):
        rng = np.random.default_rng(s1)
        psi = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        w = witness_from_pure(psi / np.linalg.norm(psi), D32)
        aw = approximate_witness(w)
        rho = rand_rho(s2, D32)
        assert aw.witness_expectation(rho) == pytest.approx(overlap(w.op, rho), abs=1e-12)


class TestFamilies:
    def test_family1_degenerate(self):
        with pytest.raises(DegenerateWitness):
            witness_family_1(0)

    @given(phases)
    def test_phase_unit(self, phase):
        aw = witness_family_1(0.3 * np.exp(1j * phase))
        k = aw.op.mat[1, 2] * 6
        assert abs(k) == pytest.approx(1)

    def test_kappa(self):
        assert kappa(0) == pytest.approx(1)
        assert kappa(0.5) == pytest.approx((1 + math.sqrt(5)) / 2)
        with pytest.raises(DegenerateWitness):
            witness_family_2(1.0)
        with pytest.raises(ValueError):
            kappa(1.2)

    @given(st.floats(0, 0.5), st.floats(0, 1), phases)
    def test_family1_detects_entangled(self, a, frac, phase):
        b = 0.5 - a
        mag = a + frac * (b - a)
        if mag <= a + 1e-9 or mag == 0:
            return
        fp = Family1Params(a, b, mag * np.exp(1j * phase))
        assert overlap(witness_family_1(fp.f).base.op, build_family1(fp)) < 0

    @given(st.floats(0.001, 0.999))
    def test_family2_detects(self, alpha):
        assert overlap(witness_family_2(alpha).base.op, build_family2(alpha)) < 0

    @given(st.floats(0, 0.999))
    def test_family2_witness_expectation(self, alpha):
        rho = build_family2(alpha)
        disc = math.sqrt(4 - 8 * alpha + 5 * alpha**2)
        val = overlap(witness_family_2(alpha).base.op, rho)
        assert val == pytest.approx((alpha - disc) / 4, abs=1e-12)
        lam = eig_hermitian(partial_transpose_b(rho))[0]
        if alpha <= 0.5:
            # kappa tracks the lowest PT eigenvector on this half of the range
            assert val == pytest.approx(lam, abs=1e-12)
        else:
            assert val > lam


@given(seeds)
def test_tailored_witness_expectation(seed):
    rho = rand_rho(seed, D22, rank=2)
    aw = tailored_witness(rho)
    assert aw.witness_expectation(rho) == pytest.approx(eig_hermitian(partial_transpose_b(rho))[0], abs=1e-12)
