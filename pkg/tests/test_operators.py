"""Operator layer: exact identities, route agreement, paper theorems."""

import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from zharm import kernels as K
from zharm import operators as O
from zharm.quadrature import QuadratureSpec
from zharm.sequences import Sequence
from zharm.spectral import OperatorSpec, oracle_apply

D0 = Sequence.delta(0)


class TestDifferences:
    def test_forward_on_delta(self):
        out = O.forward_difference(D0)
        assert out == Sequence.from_pairs([(-1, 1.0), (0, -1.0)])

    def test_backward_on_delta(self):
        out = O.backward_difference(D0)
        assert out == Sequence.from_pairs([(0, 1.0), (1, -1.0)])

    def test_constant_interior(self):
        const = Sequence(lo=-5, values=np.full(11, 3.7))
        out = O.forward_difference(const)
        assert np.all(out.window(-4, 4) == 0.0)

    def test_laplacian_on_delta(self):
        out = O.discrete_laplacian(D0)
        assert out == Sequence.from_pairs([(-1, 1.0), (0, -2.0), (1, 1.0)])

    def test_factorization_exact(self, random17):
        assert O.discrete_laplacian(random17) == O.backward_difference(
            O.forward_difference(random17))

    def test_linear_ramp_interior(self):
        ramp = Sequence(lo=-5, values=np.arange(-5.0, 6.0))
        out = O.discrete_laplacian(ramp)
        assert np.all(out.window(-4, 4) == 0.0)


class TestHeatSemigroup:
    def test_identity_at_zero(self, random17):
        assert O.heat_apply(random17, 0.0) == random17

    def test_semigroup_on_delta(self):
        two = O.heat_apply(O.heat_apply(D0, 0.5, window=(-80, 80)), 0.5,
                           window=(-30, 30))
        one = O.heat_apply(D0, 1.0, window=(-30, 30))
        assert np.max(np.abs(two.values - one.values)) <= 1e-11

    def test_markov_mass(self):
        for t in (0.5, 5.0):
            radius = O.heat_window_radius(t)
            ones = Sequence(lo=-radius, values=np.ones(2 * radius + 1))
            val = O.heat_apply(ones, t, window=(0, 0)).values[0]
            assert val == pytest.approx(1.0, abs=1e-10)

    def test_contraction(self, random17):
        for t in (0.5, 5.0):
            out = O.heat_apply(random17, t)
            for p in (1, 2, math.inf):
                assert out.norm(p) <= random17.norm(p) * (1.0 + 1e-10)

    def test_positivity(self, rng):
        f = Sequence(lo=-4, values=np.abs(rng.standard_normal(9)))
        assert np.all(O.heat_apply(f, 1.5).values >= 0.0)

    def test_l2_continuity_rate(self):
        rates = []
        for t in (1e-2, 1e-3, 1e-4):
            diff = O.heat_apply(D0, t, window=(-30, 30)) - D0
            rates.append(diff.norm(2) / t)
        # || W_t d0 - d0 ||_2 / t -> sqrt(6); bounded as t decreases
        assert max(rates) <= math.sqrt(6.0) + 0.1

    def test_heat_equation_residual(self, random17):
        assert O.heat_equation_residual(D0, 1.0, 0) <= 1e-12
        assert O.heat_equation_residual(D0, 0.1, 5) <= 1e-12
        assert O.heat_equation_residual(random17, 2.0, 3) <= 1e-11


class TestPoissonSemigroup:
    def test_identity_at_zero(self, random17):
        assert O.poisson_apply(random17, 0.0) == random17

    def test_semigroup_on_delta(self):
        # polynomial kernel tails: composition error ~ 2 c^2/(3 W^3)
        two = O.poisson_apply(O.poisson_apply(D0, 0.5, window=(-320, 320)),
                              0.5, window=(-20, 20))
        one = O.poisson_apply(D0, 1.0, window=(-20, 20))
        assert np.max(np.abs(two.values - one.values)) <= 1e-8

    def test_laplace_equation(self):
        res = O.laplace_equation_residual(D0, 1.0, (-8, 8), kind="poisson")
        assert res <= 1e-6


class TestFractionalLaplacian:
    def test_half_power_values(self):
        out = O.fractional_laplacian_apply(D0, 0.5, window=(-1, 1))
        assert out(0) == pytest.approx(4.0 / math.pi, abs=1e-6)
        assert out(1) == pytest.approx(-4.0 / (3.0 * math.pi), abs=1e-6)

    def test_routes_agree(self, random17):
        ti = O.fractional_laplacian_apply(random17, 0.5, window=(-12, 12))
        ks = O.fractional_laplacian_apply(random17, 0.5, window=(-12, 12),
                                          route="kernel_sum")
        assert np.max(np.abs(ti.values - ks.values)) <= 1e-9

    def test_spectral_agreement(self):
        for sigma in (0.1, 0.5, 0.9):
            phys = O.fractional_laplacian_apply(D0, sigma, window=(-6, 6))
            spec = oracle_apply(OperatorSpec(kind="frac_laplacian", sigma=sigma),
                                D0, (-6, 6), rel_tol=1e-11)
            assert np.max(np.abs(phys.values - spec.values)) <= 1e-9

    def test_sigma_to_one_limit(self):
        out = O.fractional_laplacian_apply(D0, 0.999, window=(-3, 3))
        target = (-1.0) * O.discrete_laplacian(D0)
        assert np.max(np.abs(out.values - target.window(-3, 3))) <= 1e-2

    def test_domain(self):
        with pytest.raises(ValueError):
            O.fractional_laplacian_apply(D0, 1.5, window=(-1, 1))


class TestFractionalIntegral:
    def test_spectral_agreement(self):
        phys = O.fractional_integral_apply(D0, 0.25, window=(-6, 6))
        spec = oracle_apply(OperatorSpec(kind="frac_integral", alpha=0.25),
                            D0, (-6, 6), rel_tol=1e-11)
        assert np.max(np.abs(phys.values - spec.values)) <= 1e-9

    def test_symmetric_output_for_symmetric_input(self):
        f = Sequence.from_pairs([(-1, 2.0), (0, 1.0), (1, 2.0)])
        out = O.fractional_integral_apply(f, 0.3, window=(-9, 9))
        assert np.max(np.abs(out.values - out.values[::-1])) <= 1e-14

    def test_composition_with_farfield_correction(self):
        # (-Lap)^{0.3} (-Lap)^{-0.2} delta = (-Lap)^{0.1} delta.  The
        # intermediate row decays like c m^{2a-1}, so the finite window is
        # corrected by the analytic far field; constants are validated
        # against the computed kernels before being trusted.
        alpha, sigma, width, nwin = 0.2, 0.3, 1024, 10
        c_int = gamma_fn(0.5 - alpha) / (
            gamma_fn(alpha) * 4.0 ** alpha * math.sqrt(math.pi))
        c_lap = gamma_fn(0.5 + sigma) * 4.0 ** sigma / (
            abs(gamma_fn(-sigma)) * math.sqrt(math.pi))
        half = K.frac_integral_half_row(width + nwin, alpha, rel_tol=1e-10)
        assert half[width] * width ** (1 - 2 * alpha) == pytest.approx(
            c_int, rel=1e-4)
        assert K.fractional_laplacian_kernel(800, sigma) * 800 ** (
            1 + 2 * sigma) == pytest.approx(-c_lap, rel=1e-4)

        offsets = np.arange(-(width + nwin), width + nwin + 1)
        g = Sequence(lo=-(width + nwin), values=half[np.abs(offsets)])
        h = O.fractional_laplacian_apply(
            g, sigma, window=(-nwin, nwin), route="kernel_sum",
            quad=QuadratureSpec(rel_tol=1e-10, family="fractional_time"))

        edge = width + nwin + 0.5
        xs, ws = np.polynomial.legendre.leggauss(96)
        u = 0.5 * (xs + 1.0)
        wu = 0.5 * ws
        correction = np.empty(2 * nwin + 1)
        for i, n in enumerate(range(-nwin, nwin + 1)):
            def phi(x):
                return ((x - n) ** (-1 - 2 * sigma)
                        + (x + n) ** (-1 - 2 * sigma)) * x ** (2 * alpha - 1)
            integral = np.sum(wu * phi(edge / u) * edge / u ** 2)
            slope = (phi(edge + 1e-3) - phi(edge - 1e-3)) / 2e-3
            correction[i] = -c_lap * c_int * (integral + slope / 24.0)

        expected = oracle_apply(
            OperatorSpec(kind="frac_laplacian", sigma=sigma - alpha),
            D0, (-nwin, nwin), rel_tol=1e-11)
        assert np.max(np.abs(h.values + correction - expected.values)) <= 1e-7


class TestMaximumPrinciple:
    def test_two_sided_delta(self):
        f = Sequence.from_pairs([(-1, 1.0), (1, 1.0)])
        val = O.maximum_principle_check(f, 0.5, 0)
        assert val == pytest.approx(-8.0 / (3.0 * math.pi), abs=1e-9)

    def test_zero_sequence(self):
        zero = Sequence(lo=-2, values=np.zeros(5))
        assert O.maximum_principle_check(zero, 0.5, 0) == 0.0

    def test_randomized_trials(self, rng):
        for sigma in (0.1, 0.5, 0.9):
            for _ in range(5):
                vals = np.abs(rng.standard_normal(9))
                n0 = int(rng.integers(-4, 5))
                vals[n0 + 4] = 0.0
                f = Sequence(lo=-4, values=vals)
                assert O.maximum_principle_check(f, sigma, n0) < -1e-12

    def test_preconditions(self):
        with pytest.raises(ValueError):
            O.maximum_principle_check(Sequence.delta(0), 0.5, 0)
        neg = Sequence.from_pairs([(1, -1.0)])
        with pytest.raises(ValueError):
            O.maximum_principle_check(neg, 0.5, 0)

    def test_comparison_principle(self, rng):
        for sigma in (0.1, 0.9):
            g_vals = rng.standard_normal(9)
            bump = np.abs(rng.standard_normal(9))
            n0 = 1
            bump[n0 + 4] = 0.0
            g = Sequence(lo=-4, values=g_vals)
            f = Sequence(lo=-4, values=g_vals + bump)
            a, b = O.comparison_principle_pair(f, g, sigma, n0)
            assert a < b


class TestRiesz:
    def test_kernel_values(self):
        out = O.riesz_apply(D0, window=(-5, 5))
        for n in range(-5, 6):
            assert out(n) == 1.0 / (math.pi * (n + 0.5))

    def test_l2_norm_with_tail(self):
        radius = 10 ** 5
        out = O.riesz_apply(D0, window=(-radius, radius))
        tail = 2.0 / (math.pi ** 2 * (radius + 0.5))
        assert math.sqrt(out.norm(2) ** 2 + tail) == pytest.approx(1.0, abs=1e-5)

    def test_linearity(self):
        d1 = Sequence.delta(1)
        lhs = O.riesz_apply(D0 + d1, window=(-6, 6))
        rhs = O.riesz_apply(D0, window=(-6, 6)) + O.riesz_apply(d1, window=(-6, 6))
        assert lhs == rhs

    def test_l2_isometry(self, random17):
        radius = 10 ** 4
        out = O.riesz_apply(random17, window=(-radius, radius))
        mass = float(np.sum(random17.values))
        tail = 2.0 * mass * mass / (math.pi ** 2 * radius)
        iso = math.sqrt(out.norm(2) ** 2 + tail)
        assert iso == pytest.approx(random17.norm(2), rel=1e-5)


class TestConjugatePoisson:
    def test_riesz_at_zero_time(self):
        out = O.conjugate_poisson_apply(D0, 0.0, window=(-8, 8))
        ref = O.riesz_apply(D0, window=(-8, 8))
        assert out == ref

    def test_routes_agree(self, random17):
        kern = O.conjugate_poisson_apply(random17, 1.0, window=(-20, 20))
        intg = O.conjugate_poisson_apply(random17, 1.0, window=(-20, 20),
                                         route="integral_of_dp")
        assert np.max(np.abs(kern.values - intg.values)) <= 1e-6

    def test_zero_input(self):
        zero = Sequence(lo=0, values=np.zeros(3))
        out = O.conjugate_poisson_apply(zero, 2.0, window=(-5, 5))
        assert np.all(out.values == 0.0)

    def test_decay_beyond_threshold(self):
        vals = [O.conjugate_poisson_apply(D0, t, window=(0, 0)).values[0]
                for t in (1.0, 10.0, 100.0)]
        assert vals[0] > vals[1] > vals[2] > 0.0

    def test_limit_to_riesz(self):
        ref = O.riesz_apply(D0, window=(-10, 10))
        sups = []
        for t in (1e-1, 1e-2, 1e-3):
            q = O.conjugate_poisson_apply(D0, t, window=(-10, 10))
            sups.append(np.max(np.abs(q.values - ref.values)))
        assert sups[0] > sups[1] > sups[2]
        assert sups[2] <= 1e-2


class TestCauchyRiemann:
    def test_residuals_on_delta(self):
        res = O.cauchy_riemann_residual(D0, 1.0, (-10, 10))
        assert max(res) <= 1e-6

    def test_residuals_on_random(self, random17):
        res = O.cauchy_riemann_residual(random17, 0.5, (-6, 6))
        assert max(res) <= 1e-6

    def test_zero_input(self):
        zero = Sequence(lo=0, values=np.zeros(2))
        assert max(O.cauchy_riemann_residual(zero, 1.0, (-4, 4))) == 0.0

    def test_harmonicity(self):
        assert O.laplace_equation_residual(D0, 1.0, (-8, 8),
                                           kind="conj_poisson") <= 1e-5
        assert O.laplace_equation_residual(D0, 1.0, (-8, 8),
                                           kind="conj_poisson_tilde") <= 1e-5


class TestSquareFunction:
    def test_zero_input(self):
        zero = Sequence(lo=0, values=np.zeros(2))
        out = O.square_function(zero, window=(-3, 3))
        assert np.all(out.values == 0.0)

    def test_l2_norm_with_tail(self):
        g = O.square_function(D0, window=(-50, 50))
        total = g.norm(2) ** 2 + O.square_function_l2_tail(50)
        assert math.sqrt(total) == pytest.approx(0.5, abs=1e-4)

    def test_symmetry(self):
        g = O.square_function(D0, window=(-20, 20))
        assert np.max(np.abs(g.values - g.values[::-1])) <= 1e-13

    def test_nonnegative(self, random17):
        out = O.square_function(random17, window=(-10, 10))
        assert np.all(out.values >= 0.0)


class TestMaximal:
    def test_heat_at_center(self):
        out = O.maximal_apply(D0, "heat", window=(-20, 20))
        assert out(0) == 1.0  # attained at t = 0

    def test_heat_nonincreasing(self):
        grid = O.TimeGrid(points=np.logspace(-3, 3, 200))
        out = O.maximal_apply(D0, "heat", grid=grid, window=(0, 100))
        assert np.all(np.diff(out.values) <= 1e-15)

    def test_heat_growth_bound(self):
        grid = O.TimeGrid(points=np.logspace(-3, 4, 150))
        out = O.maximal_apply(D0, "heat", grid=grid, window=(0, 200))
        weighted = (np.arange(201) + 1.0) * out.values
        assert weighted[0] == 1.0  # attained by the identity at t = 0
        assert np.max(weighted[1:]) <= 0.45

    def test_conjugate_includes_riesz_at_zero(self):
        out = O.maximal_apply(D0, "conj_plus", window=(-10, 10))
        ref = np.abs(O.riesz_apply(D0, window=(-10, 10)).values)
        assert np.all(out.values >= ref - 1e-15)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            O.TimeGrid(points=np.array([1.0, 0.5]))
        with pytest.raises(ValueError):
            O.TimeGrid(points=np.array([-1.0, 0.5]))


class TestWindows:
    def test_default_heat_window(self):
        lo, hi = O.default_window(D0, "heat", 1.0)
        assert hi == O.heat_window_radius(1.0)
        assert lo == -hi

    def test_poisson_default(self):
        lo, hi = O.default_window(D0, "poisson", 2.0)
        assert hi == int(math.ceil(4 * 2.0 + 40))
