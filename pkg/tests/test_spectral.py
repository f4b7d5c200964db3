"""Torus-side oracle: multipliers, inversion, spectral identities."""

import math

import numpy as np
import pytest

from zharm import operators as O
from zharm.quadrature import log_trapezoid
from zharm.sequences import Sequence
from zharm.spectral import (OperatorSpec, fourier_forward, multiplier_eval,
                            oracle_apply, riesz_coefficient_check,
                            riesz_fourier_coefficient)


class TestFourierForward:
    def test_delta(self):
        theta = np.linspace(0.0, 6.0, 7)
        np.testing.assert_allclose(fourier_forward(Sequence.delta(0), theta), 1.0)

    def test_shifted_delta(self):
        theta = np.linspace(0.0, 6.0, 7)
        np.testing.assert_allclose(fourier_forward(Sequence.delta(1), theta),
                                   np.exp(1j * theta))

    def test_parseval_trapezoid(self, random17):
        n = 4096
        theta = 2.0 * np.pi * np.arange(n) / n
        lhs = np.mean(np.abs(fourier_forward(random17, theta)) ** 2)
        assert lhs == pytest.approx(random17.norm(2) ** 2, abs=1e-12)


class TestMultipliers:
    def test_heat_at_pi(self):
        val = multiplier_eval(OperatorSpec(kind="heat", t=1.0), np.array([math.pi]))
        assert val[0].real == pytest.approx(math.exp(-4.0), rel=1e-15)

    def test_riesz_unit_modulus(self):
        theta = np.linspace(0.0, 2.0 * math.pi, 257, endpoint=False)
        mod = np.abs(multiplier_eval(OperatorSpec(kind="riesz"), theta))
        np.testing.assert_allclose(mod, 1.0, atol=1e-15)

    def test_frac_laplacian_vanishes_at_zero(self):
        val = multiplier_eval(OperatorSpec(kind="frac_laplacian", sigma=0.3),
                              np.array([0.0]))
        assert val[0] == 0.0

    def test_difference_factorization(self):
        theta = np.linspace(0.1, 6.2, 50)
        d = multiplier_eval(OperatorSpec(kind="forward_difference"), theta)
        dt = multiplier_eval(OperatorSpec(kind="backward_difference"), theta)
        lap = multiplier_eval(OperatorSpec(kind="laplacian"), theta)
        np.testing.assert_allclose(dt * d, lap, atol=1e-15)

    def test_conj_poisson_is_riesz_times_poisson(self):
        theta = np.linspace(0.0, 6.2, 64)
        q = multiplier_eval(OperatorSpec(kind="conj_poisson", t=0.8), theta)
        r = multiplier_eval(OperatorSpec(kind="riesz"), theta)
        p = multiplier_eval(OperatorSpec(kind="poisson", t=0.8), theta)
        np.testing.assert_allclose(q, r * p, rtol=1e-15)

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            multiplier_eval(OperatorSpec(kind="riesz"), np.array([-0.1]))
        with pytest.raises(ValueError):
            OperatorSpec(kind="heat")
        with pytest.raises(ValueError):
            OperatorSpec(kind="frac_integral", alpha=0.7)
        with pytest.raises(ValueError):
            OperatorSpec(kind="bogus")


class TestMultiplierAlgebra:
    def test_heat_semigroup_pointwise(self):
        theta = np.linspace(0.0, 6.2, 200)
        m1 = multiplier_eval(OperatorSpec(kind="heat", t=0.4), theta)
        m2 = multiplier_eval(OperatorSpec(kind="heat", t=1.1), theta)
        m12 = multiplier_eval(OperatorSpec(kind="heat", t=1.5), theta)
        np.testing.assert_allclose(m1 * m2, m12, rtol=1e-14)

    def test_fractional_power_composition(self):
        theta = np.linspace(0.05, 6.2, 200)
        sig = multiplier_eval(OperatorSpec(kind="frac_laplacian", sigma=0.45), theta)
        alp = multiplier_eval(OperatorSpec(kind="frac_integral", alpha=0.2), theta)
        diff = multiplier_eval(OperatorSpec(kind="frac_laplacian", sigma=0.25), theta)
        np.testing.assert_allclose(sig * alp, diff, rtol=1e-13)

    def test_riesz_factorization_limit(self):
        theta = np.linspace(0.05, 2.0 * math.pi - 0.05, 101)
        target = -1j * np.exp(-0.5j * theta)
        sups = []
        for alpha in (0.4, 0.49, 0.499):
            d = np.exp(-1j * theta) - 1.0
            approx = d * (4.0 * np.sin(theta / 2.0) ** 2) ** -alpha
            sups.append(np.max(np.abs(approx - target)))
        assert sups[0] > sups[1] > sups[2]
        assert sups[2] <= 2e-2


class TestOracleApply:
    def test_riesz_coefficients(self):
        out = oracle_apply(OperatorSpec(kind="riesz"), Sequence.delta(0), (-5, 5))
        for n in range(-5, 6):
            assert out(n) == pytest.approx(1.0 / (math.pi * (n + 0.5)), abs=1e-9)

    def test_heat_matches_physical(self):
        out = oracle_apply(OperatorSpec(kind="heat", t=1.0),
                           Sequence.delta(0), (-10, 10))
        phys = O.heat_apply(Sequence.delta(0), 1.0, window=(-10, 10))
        np.testing.assert_allclose(out.values, phys.values, atol=1e-10)

    def test_difference_exact(self, random17):
        out = oracle_apply(OperatorSpec(kind="forward_difference"),
                           random17, (-12, 12))
        phys = O.forward_difference(random17)
        np.testing.assert_allclose(out.values, phys.window(-12, 12), atol=1e-12)

    def test_complex_input(self):
        f = Sequence(lo=0, values=np.array([1.0 + 2.0j, -1.0j]))
        out = oracle_apply(OperatorSpec(kind="frac_integral", alpha=0.25),
                           f, (-3, 3), rel_tol=1e-9)
        re = oracle_apply(OperatorSpec(kind="frac_integral", alpha=0.25),
                          Sequence(lo=0, values=np.array([1.0, 0.0])),
                          (-3, 3), rel_tol=1e-9)
        assert np.iscomplexobj(out.values)
        assert out.values[0].real == pytest.approx(re.values[0], rel=1e-8)


class TestRieszCoefficientCheck:
    def test_closed_form_agreement(self):
        assert riesz_coefficient_check(0) <= 1e-10
        assert riesz_coefficient_check(7) <= 1e-10

    def test_quadrature_is_real(self):
        assert abs(riesz_fourier_coefficient(0).imag) <= 1e-12


class TestSquareFunctionSpectralIdentity:
    def test_inner_time_integral_is_quarter(self):
        # integral_0^inf (4 t s^2)^2 e^{-8 t s^2} dt/t = 1/4 for any s > 0
        for s2 in (0.1, 0.5, 0.97):
            val = log_trapezoid(
                lambda t: (4.0 * t * s2) ** 2 * np.exp(-8.0 * t * s2) / t,
                1e-12, 1e6 / s2, rel_tol=1e-12)
            assert val == pytest.approx(0.25, rel=1e-11)

    def test_parseval_form(self, random17):
        n = 4096
        theta = 2.0 * np.pi * np.arange(n) / n
        lhs = np.mean(np.abs(fourier_forward(random17, theta)) ** 2 * 0.25)
        assert abs(lhs - 0.25 * random17.norm(2) ** 2) <= 1e-10
