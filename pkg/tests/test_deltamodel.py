import numpy as np
import pytest

from rtcheck.deltamodel import (
    DeltaModel,
    boundary_condition_residual,
    in_out_overlap,
    n_particle_product,
    plane_wave_bc_residual,
    psi,
    psi_prime,
    schrodinger_residual,
)
from rtcheck.fock import (
    TWO_PI,
    evaluate_coefficient,
    n_particle_expression,
    physical_components,
    resolve_momenta,
)
from rtcheck.smatrix import sample_momenta

ETA = 1.0
MODEL = DeltaModel(ETA)
FREE = DeltaModel(0.0)
KS = sample_momenta(30, seed=21).values


class TestAmplitudes:
    def test_reference_values(self):
        assert abs(MODEL.T(1.0) - (1 - 1j) / 2) < 1e-15
        assert abs(MODEL.R(1.0) - (-1 - 1j) / 2) < 1e-15

    @pytest.mark.parametrize("eta", [0.5, 1.0, 3.0])
    def test_unitarity_of_amplitudes(self, eta):
        m = DeltaModel(eta)
        for k in KS:
            assert abs(abs(m.T(k)) ** 2 + abs(m.R(k)) ** 2 - 1.0) <= 1e-12

    def test_rejects_negative_eta(self):
        with pytest.raises(ValueError):
            DeltaModel(-1.0)

    def test_zero_momentum_rejected(self):
        with pytest.raises(ValueError):
            MODEL.T(0.0)


class TestEigenfunctions:
    def test_reference_value(self):
        got = psi(MODEL, -1.0, "+", 1.0)
        expected = np.exp(-1j) + MODEL.R(1.0) * np.exp(1j)
        assert abs(got - expected) < 1e-15

    def test_plus_branch_vanishes_for_positive_k(self):
        for x in (-1.2, 0.7, 3.3):
            assert psi(MODEL, 1.0, "+", x) == 0.0

    def test_free_transmitted_side_is_plane_wave(self):
        for x in (0.5, 2.0):
            assert abs(psi(FREE, 2.0, "-", x) - np.exp(2j * x)) < 1e-15

    def test_continuity_at_origin(self):
        for k, br in ((-1.0, "+"), (2.0, "-"), (-0.35, "+")):
            h = 1e-9
            assert abs(psi(MODEL, k, br, h) - psi(MODEL, k, br, -h)) < 1e-7

    def test_derivative_is_analytic_limit(self):
        k, br, x = -1.4, "+", 0.8
        h = 1e-6
        fd = (psi(MODEL, k, br, x + h) - psi(MODEL, k, br, x - h)) / (2 * h)
        assert abs(fd - psi_prime(MODEL, k, br, x)) < 1e-8

    def test_derivative_at_origin_rejected(self):
        with pytest.raises(ValueError):
            psi_prime(MODEL, -1.0, "+", 0.0)


class TestBoundaryCondition:
    @pytest.mark.parametrize(
        "k,branch", [(-1.0, "+"), (-2.7, "+"), (1.3, "-"), (0.4, "-")]
    )
    def test_eigenfunctions_satisfy_matching(self, k, branch):
        assert boundary_condition_residual(MODEL, k, branch) <= 1e-12

    def test_free_plane_wave(self):
        assert boundary_condition_residual(FREE, 2.0, "-") == 0.0

    def test_plane_wave_negative_control(self):
        # e^{ikx} has a continuous derivative: residual is exactly 2 eta
        assert plane_wave_bc_residual(MODEL, 1.0) == 2.0 * ETA


class TestSchrodingerResidual:
    def test_reference_grid(self):
        assert schrodinger_residual(MODEL, -2.0, "+", h=1e-3, extent=5.0) <= 1e-4

    def test_free_case(self):
        assert schrodinger_residual(FREE, 2.0, "-", h=1e-3, extent=5.0) <= 1e-4

    def test_second_order_convergence(self):
        r1 = schrodinger_residual(MODEL, -2.0, "+", h=1e-3, extent=5.0)
        r2 = schrodinger_residual(MODEL, -2.0, "+", h=5e-4, extent=5.0)
        assert 3.0 < r1 / r2 < 5.0

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            schrodinger_residual(MODEL, -2.0, "+", h=0.0)


class TestOverlap:
    def test_transmission_coefficient(self):
        diag, _ = in_out_overlap(MODEL, 2.0, 2.0)
        assert abs(diag - TWO_PI * MODEL.T(2.0)) < 1e-13

    def test_reflection_coefficient(self):
        _, flip = in_out_overlap(MODEL, 2.0, -2.0)
        assert abs(flip - TWO_PI * MODEL.R(2.0)) < 1e-13
        _, flip_neg = in_out_overlap(MODEL, -2.0, 2.0)
        assert abs(flip_neg - TWO_PI * MODEL.R(2.0)) < 1e-13

    def test_free_is_pure_transmission(self):
        diag, flip = in_out_overlap(FREE, 1.1, 1.1)
        assert abs(diag - TWO_PI) < 1e-15
        assert flip == 0.0

    def test_zero_momentum_rejected(self):
        with pytest.raises(ValueError):
            in_out_overlap(MODEL, 0.0, 1.0)


class TestCrossRepresentation:
    """The analytic product and the engine agree coefficient-wise."""

    @pytest.mark.parametrize(
        "ks", [[-1.3, 2.1], [-2.2, -0.9, 1.7]]
    )
    def test_product_matches_engine(self, ks):
        n = len(ks)
        dm = MODEL.doubled()
        product = n_particle_product(MODEL, sorted(ks, reverse=True), ks, two_pi=False)
        in_labels = [f"k{i+1}" for i in range(n)]
        out_labels = [f"p{i+1}" for i in range(n)]
        expr = n_particle_expression(n, in_labels, out_labels, dm)
        pos_out = {i: n - 1 - i for i in range(n)}
        pos_in = {i: n + i for i in range(n)}
        by_pairing = {t.pairing: t for t in expr.terms}
        for sigma, coeff in product.items():
            pairing = tuple(
                sorted((pos_out[i], pos_in[i], sigma[i]) for i in range(n))
            )
            term = by_pairing[pairing]
            env = {in_labels[i]: ks[i] for i in range(n)}
            env = resolve_momenta(term, expr.word, env)
            tensor = evaluate_coefficient(expr, term, env, dm)
            p_sub = [sigma[i] * ks[i] for i in range(n)]
            eps, xi = physical_components(ks, p_sub)
            idx = tuple(reversed(eps)) + tuple(xi)
            assert abs(complex(tensor[idx]) - coeff) <= 1e-11

    def test_single_particle_reduces_to_overlap(self):
        prod = n_particle_product(MODEL, [1.3], [1.3], two_pi=True)
        diag, _ = in_out_overlap(MODEL, 1.3, 1.3)
        assert prod[(1,)] == diag

    def test_ordering_validation(self):
        with pytest.raises(ValueError):
            n_particle_product(MODEL, [1.0, 2.0], [1.0, 2.0])
