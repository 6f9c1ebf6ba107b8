import numpy as np
import pytest

from rtcheck.defect import (
    CONSISTENCY_VARIANTS,
    MIXED_VARIANTS,
    DefectPair,
    ZeroMomentumError,
    consistency_relation_residual,
    defect_unitarity_residual,
    delta_defect,
    hermitian_analyticity_residual,
    mixed_relation_residual,
    project,
    pure_reflection_defect,
    reflection_relation_residual,
    transmission_relation_residual,
)
from rtcheck.doubling import build_doubled_model, embed_calRT
from rtcheck.smatrix import identity_S, rational_S, sample_momenta

ETA = 1.0
KS = sample_momenta(24, seed=17).values
PAIRS = list(zip(KS, KS[1:]))


def delta_scalar_fns(eta):
    T = lambda k: np.array([[k / (k + 1j * eta)]])
    R = lambda k: np.array([[-1j * eta / (k + 1j * eta)]])
    return T, R


def doubled_delta_pair(eta):
    T, R = delta_scalar_fns(eta)
    calR, calT = embed_calRT(R, T, 1)
    return DefectPair(2, calR, calT, name="doubled-delta")


class TestDeltaDefect:
    def test_free_case(self):
        D = delta_defect(0.0)
        for k in (0.5, -2.0, 7.7):
            assert D.T(k)[0, 0] == 1.0
            assert D.R(k)[0, 0] == 0.0

    def test_small_momentum_limit(self):
        D = delta_defect(2.0)
        assert abs(D.T(1e-13)[0, 0]) < 1e-12
        assert abs(D.R(1e-13)[0, 0] + 1.0) < 1e-12

    def test_reference_values_eta1_k1(self):
        D = delta_defect(1.0)
        t, r = D.T(1.0)[0, 0], D.R(1.0)[0, 0]
        assert abs(t - (1 - 1j) / 2) < 1e-15
        assert abs(r - (-1 - 1j) / 2) < 1e-15
        assert abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) < 1e-15

    def test_rejects_negative_coupling(self):
        with pytest.raises(ValueError):
            delta_defect(-0.5)

    def test_zero_momentum_is_domain_error(self):
        D = delta_defect(1.0)
        with pytest.raises(ZeroMomentumError):
            D.T(0.0)


class TestProjection:
    def test_exact_zero_on_wrong_half_line(self):
        D = delta_defect(1.0)
        P = project(D, +1)
        assert np.all(P.R(-0.7) == 0.0)
        assert np.all(P.T(-0.7) == 0.0)
        M = project(D, -1)
        assert np.all(M.R(0.7) == 0.0)

    def test_disjoint_supports(self):
        D = delta_defect(1.0)
        plus, minus = project(D, +1), project(D, -1)
        for k in KS:
            assert np.all(plus.R(k) @ minus.R(k) == 0.0)

    def test_zero_momentum_rejected(self):
        with pytest.raises(ZeroMomentumError):
            project(delta_defect(1.0), +1).R(0.0)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            project(delta_defect(1.0), 0)


class TestUnitarityHermiticity:
    def test_doubled_delta_unitarity(self):
        pair = doubled_delta_pair(1.0)
        assert defect_unitarity_residual(pair, 0.7) <= 1e-13

    def test_free_doubled_form(self):
        pair = doubled_delta_pair(0.0)
        for k in KS[:6]:
            assert defect_unitarity_residual(pair, k) == 0.0

    def test_pure_reflection(self):
        pr = pure_reflection_defect()
        for k in KS[:6]:
            assert defect_unitarity_residual(pr, k) == 0.0
            assert hermitian_analyticity_residual(pr, k) == 0.0

    def test_doubled_delta_hermitian_analyticity(self):
        pair = doubled_delta_pair(1.0)
        for k in KS[:8]:
            assert hermitian_analyticity_residual(pair, k) <= 1e-15

    def test_trivial_defect(self):
        eye = np.eye(2, dtype=complex)
        zero = np.zeros((2, 2), dtype=complex)
        D = DefectPair(2, lambda k: zero, lambda k: eye)
        assert hermitian_analyticity_residual(D, 1.3) == 0.0
        assert defect_unitarity_residual(D, 1.3) == 0.0

    def test_scalar_delta_fails_unprojected_unitarity(self):
        # the scalar amplitudes satisfy only the symmetrized relations
        D = delta_defect(1.0)
        assert defect_unitarity_residual(D, 1.0) > 0.1


class TestReflectionRelation:
    @pytest.mark.parametrize("xi", [+1, -1])
    def test_identity_bulk_scalar_defect(self, xi):
        S = identity_S(1)
        D = delta_defect(1.0)
        for a, b in PAIRS[:8]:
            assert reflection_relation_residual(S, D, a, b, xi) == 0.0

    @pytest.mark.parametrize("xi", [+1, -1])
    def test_doubled_delta_with_identity_bulk(self, xi):
        # scalar commutativity in each diagonal block
        S = identity_S(2)
        pair = doubled_delta_pair(1.0)
        for a, b in PAIRS[:8]:
            assert reflection_relation_residual(S, pair, a, b, xi) <= 1e-14

    @pytest.mark.parametrize("xi", [+1, -1])
    def test_rational_bulk_zero_reflection(self, xi):
        S = rational_S(2, 1.0)
        zero = np.zeros((2, 2), dtype=complex)
        D = DefectPair(2, lambda k: zero, lambda k: np.eye(2, dtype=complex))
        for a, b in PAIRS[:8]:
            assert reflection_relation_residual(S, D, a, b, xi) == 0.0

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            reflection_relation_residual(identity_S(2), delta_defect(1.0), 0.3, 0.9, +1)


class TestTransmissionRelation:
    @pytest.mark.parametrize("variant", ["TST", "STT-", "STT+"])
    def test_identity_bulk(self, variant):
        S = identity_S(1)
        D = delta_defect(1.0)
        for a, b in PAIRS[:8]:
            assert transmission_relation_residual(S, D, a, b, variant) == 0.0

    def test_full_transmission_with_unitary_bulk(self):
        S = rational_S(2, 1.0)
        zero = np.zeros((2, 2), dtype=complex)
        D = DefectPair(2, lambda k: zero, lambda k: np.eye(2, dtype=complex))
        for a, b in PAIRS[:8]:
            assert transmission_relation_residual(S, D, a, b, "TST") <= 1e-14

    def test_delta_scalar_reference_pair(self):
        S = identity_S(1)
        D = delta_defect(1.0)
        assert transmission_relation_residual(S, D, 1.2, -0.5, "TST") <= 1e-13

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            transmission_relation_residual(identity_S(1), delta_defect(1.0), 1.0, 2.0, "XXX")


class TestMixedRelations:
    @pytest.mark.parametrize("variant", MIXED_VARIANTS)
    def test_zero_reflection_vanishes(self, variant):
        S = rational_S(2, 1.0)
        zero = np.zeros((2, 2), dtype=complex)
        D = DefectPair(2, lambda k: zero, lambda k: np.eye(2, dtype=complex))
        for a, b in PAIRS[:6]:
            assert mixed_relation_residual(S, D, a, b, variant) == 0.0

    @pytest.mark.parametrize("variant", MIXED_VARIANTS)
    def test_identity_bulk_scalar_defect(self, variant):
        S = identity_S(1)
        D = delta_defect(1.0)
        for a, b in PAIRS[:6]:
            assert mixed_relation_residual(S, D, a, b, variant) <= 1e-15

    def test_equivalence_sweep_verdict_agreement(self):
        """The two printed sets of mixed relations agree pass/fail per model."""
        tol = 1e-10
        T, R = delta_scalar_fns(1.0)
        half_rat = DefectPair(
            2,
            lambda k: R(k)[0, 0] * np.eye(2),
            lambda k: T(k)[0, 0] * np.eye(2),
        )
        models = [
            (identity_S(1), delta_defect(1.0)),  # passes everything
            (rational_S(2, 1.0), half_rat),  # the no-go obstruction
        ]
        for S, D in models:
            for first, second in (("TSRS+", "TSR+"), ("TSRS-", "TSR-"),
                                  ("SRST+", "RST+"), ("SRST-", "RST-")):
                r1 = max(mixed_relation_residual(S, D, a, b, first) for a, b in PAIRS)
                r2 = max(mixed_relation_residual(S, D, a, b, second) for a, b in PAIRS)
                assert (r1 <= tol) == (r2 <= tol)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            mixed_relation_residual(identity_S(1), delta_defect(1.0), 1.0, 2.0, "nope")


class TestConsistencyRelations:
    def test_identity_calS_commuting_scalar_blocks(self):
        calS = identity_S(2)
        diag = lambda k: np.diag([k / (k + 1j), k / (k + 2j)]).astype(complex)
        for a, b in PAIRS[:6]:
            assert consistency_relation_residual(calS, diag, diag, a, b, "rr1") <= 1e-15

    @pytest.mark.parametrize("variant", CONSISTENCY_VARIANTS)
    def test_doubled_delta(self, variant):
        model = build_doubled_model(
            identity_S(1), tau=delta_scalar_fns(ETA)[0], rho=delta_scalar_fns(ETA)[1]
        )
        for a, b in PAIRS[:10]:
            assert consistency_relation_residual(
                model.calS, model.calR, model.calT, a, b, variant
            ) <= 1e-13

    @pytest.mark.parametrize("variant", CONSISTENCY_VARIANTS)
    def test_doubled_rational_scalar_defect(self, variant):
        T, R = delta_scalar_fns(ETA)
        model = build_doubled_model(
            rational_S(2, 1.0),
            tau=lambda k: T(k)[0, 0] * np.eye(2),
            rho=lambda k: R(k)[0, 0] * np.eye(2),
        )
        worst = max(
            consistency_relation_residual(model.calS, model.calR, model.calT, a, b, variant)
            for a, b in PAIRS
        )
        assert worst <= 1e-10

    def test_unknown_variant(self):
        model = build_doubled_model(
            identity_S(1), tau=delta_scalar_fns(1.0)[0], rho=delta_scalar_fns(1.0)[1]
        )
        with pytest.raises(ValueError):
            consistency_relation_residual(model.calS, model.calR, model.calT, 1.0, 2.0, "zz")


class TestNegativeControl:
    def test_scaled_reflection_breaks_unitarity_not_ybe(self):
        T, R = delta_scalar_fns(1.0)
        model = build_doubled_model(
            identity_S(1), tau=T, rho=lambda k: 1.1 * R(k)
        )
        pair = model.defect_pair()
        assert max(defect_unitarity_residual(pair, k) for k in KS[:8]) > 1e-3
        # the unperturbed pair passes
        clean = doubled_delta_pair(1.0)
        assert max(defect_unitarity_residual(clean, k) for k in KS[:8]) < 1e-13
