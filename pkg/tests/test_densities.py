"""Tests for the closed-form limit densities."""

import math

import numpy as np
import pytest

from app.errors import DomainError, EqualAngleError, NormalizationError
from app.models import DensityProvenance
from app.walks.coins import (
    orthogonal_coin,
    rotation_coin,
    schedule_case1,
    schedule_case2,
    schedule_n_period,
    schedule_one_period,
    schedule_two_period_orthogonal,
)
from app.walks.densities import (
    density_cdf,
    density_grid,
    density_moment,
    density_value,
    konno_density,
    konno_limit,
    limit_density_for_schedule,
    theorem1_density,
    theorem1_density_from_coins,
    theorem2_density,
    theorem3_density,
)

HALF = math.sqrt(0.5)
SYMMETRIC = (HALF, 1j * HALF)


def konno_cdf(x, s):
    """Closed-form CDF of f_K(.; s)."""
    u = math.asin(x / s)
    return (math.atan(math.sqrt(1 - s * s) * math.tan(u)) + math.pi / 2) / math.pi


class TestKonnoDensity:
    """Test f_K evaluation."""

    def test_value_at_origin(self):
        """f_K(0; 1/sqrt2) = 1/pi."""
        assert konno_density(0.0, HALF) == pytest.approx(1 / math.pi)

    def test_outside_support(self):
        """f_K vanishes for |x| > a."""
        assert konno_density(0.8, HALF) == 0.0

    def test_interior_value(self):
        """f_K(0.5; 1/sqrt2) = sqrt(0.5) / (pi * 0.75 * 0.5)."""
        assert konno_density(0.5, HALF) == pytest.approx(0.60021, abs=1e-5)

    def test_endpoints_are_zero(self):
        """The divergent endpoints are assigned 0."""
        assert konno_density(0.5, 0.5) == 0.0
        assert konno_density(-0.5, 0.5) == 0.0

    def test_vectorized(self):
        """Arrays evaluate elementwise."""
        values = konno_density(np.array([-0.8, 0.0, 0.8]), HALF)
        assert values == pytest.approx([0.0, 1 / math.pi, 0.0])

    @pytest.mark.parametrize("a_mod", [0.0, 1.0, 1.3])
    def test_domain(self, a_mod):
        """a_mod lies in (0, 1)."""
        with pytest.raises(DomainError):
            konno_density(0.1, a_mod)


class TestTheorem1Density:
    """Test the two-period orthogonal limit."""

    def test_quarter_sixth_pair_is_unskewed(self):
        """(pi/4, pi/6) with the symmetric state is pure f_K(.; cos pi/4)."""
        d = theorem1_density(math.pi / 4, math.pi / 6, *SYMMETRIC)
        assert d.scale == pytest.approx(math.cos(math.pi / 4))
        assert d.weight_constant == pytest.approx(0.0, abs=1e-15)
        assert d.provenance == DensityProvenance.THEOREM1_POSITIVE_DET

    def test_smaller_second_coin_sets_support(self):
        """(pi/4, pi/3) has support half-width cos pi/3 = 0.5."""
        d = theorem1_density(math.pi / 4, math.pi / 3, *SYMMETRIC)
        assert d.scale == pytest.approx(0.5)

    def test_weight_uses_first_coin_ratio(self):
        """w = |a|^2 - |b|^2 + 2 Re(alpha conj(beta)) tan(theta0)."""
        d = theorem1_density(0.5, 0.9, 0.6, 0.8)
        assert d.weight_constant == pytest.approx(0.36 - 0.64 + 0.96 * math.tan(0.5))

    def test_mixed_pair_uses_product_scale(self):
        """Rotation H0 and reflection H1 give det -1 and scale |a0 a1|."""
        d = theorem1_density_from_coins(
            rotation_coin(math.pi / 4), orthogonal_coin(math.pi / 6), *SYMMETRIC
        )
        assert d.provenance == DensityProvenance.THEOREM1_NEGATIVE_DET
        assert d.scale == pytest.approx(0.61237, abs=1e-5)

    def test_equal_angles_rejected(self):
        """theta0 == theta1 is a one-period walk."""
        with pytest.raises(EqualAngleError):
            theorem1_density(math.pi / 4, math.pi / 4, *SYMMETRIC)

    def test_unnormalized_state_rejected(self):
        """alpha, beta must be normalized."""
        with pytest.raises(NormalizationError):
            theorem1_density(math.pi / 4, math.pi / 6, 1.0, 1.0)


class TestPhaseFamilyDensities:
    """Test the case1 and case2 limits."""

    def test_up_state_weight(self):
        """alpha = 1, beta = 0 gives w = 1."""
        d = theorem2_density(HALF, HALF, 1.0, 0.0, 0.4)
        assert d.weight_constant == pytest.approx(1.0)

    def test_down_state_weight(self):
        """alpha = 0, beta = 1 gives w = -1."""
        d = theorem3_density(HALF, HALF, 0.0, 1.0, 0.4)
        assert d.weight_constant == pytest.approx(-1.0)

    def test_hadamard_symmetric(self):
        """Hadamard entries and the symmetric state give w = 0."""
        d = theorem2_density(HALF, HALF, *SYMMETRIC, 0.0)
        assert d.weight_constant == pytest.approx(0.0, abs=1e-15)

    def test_real_case_matches_theorem1_weight(self):
        """With w0 = 0 and real inputs the weight is the two-period one with b/a."""
        coin = orthogonal_coin(0.5)
        d = theorem2_density(coin.a, coin.b, 0.6, 0.8, 0.0)
        assert d.weight_constant == pytest.approx(theorem1_density(0.5, 0.9, 0.6, 0.8).weight_constant)

    def test_case_families_agree_at_zero_phase(self):
        """f_1 == f_2 pointwise when w0 = 0."""
        a, b = 0.6 * np.exp(0.3j), 0.8 * np.exp(-1.1j)
        alpha, beta = 0.6, 0.8 * np.exp(0.5j)
        first = theorem2_density(a, b, alpha, beta, 0.0)
        second = theorem3_density(a, b, alpha, beta, 0.0)
        xs = np.linspace(-0.7, 0.7, 101)
        assert density_value(first, xs) == pytest.approx(density_value(second, xs), abs=1e-12)

    def test_phase_sign_swap(self):
        """Theorem 3 at w0 equals Theorem 2 at -w0."""
        a, b = 0.6 * np.exp(0.3j), 0.8 * np.exp(-1.1j)
        alpha, beta = 0.6, 0.8 * np.exp(0.5j)
        assert theorem3_density(a, b, alpha, beta, 0.9).weight_constant == pytest.approx(
            theorem2_density(a, b, alpha, beta, -0.9).weight_constant
        )

    def test_modulus_domain(self):
        """|a| must lie strictly inside (0, 1)."""
        with pytest.raises(DomainError):
            theorem2_density(1.0, 0.0, 1.0, 0.0, 0.0)


class TestQuadrature:
    """Test CDFs and moments by quadrature."""

    @pytest.fixture
    def symmetric(self):
        return konno_limit(HALF)

    def test_cdf_limits(self, symmetric):
        """F(-1) = 0, F(0) = 1/2, F(scale) = 1."""
        assert density_cdf(symmetric, -1.0) == 0.0
        assert density_cdf(symmetric, 0.0) == pytest.approx(0.5, abs=1e-10)
        assert density_cdf(symmetric, HALF) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("x", [-0.6, -0.2, 0.1, 0.45, 0.7])
    def test_cdf_matches_closed_form(self, symmetric, x):
        """Quadrature CDF equals the arctan closed form."""
        assert density_cdf(symmetric, x) == pytest.approx(konno_cdf(x, HALF), abs=1e-9)

    def test_cdf_monotone(self):
        """F is nondecreasing for a skewed density."""
        d = theorem2_density(HALF, HALF, 1.0, 0.0, 0.0)
        values = [density_cdf(d, x) for x in np.linspace(-0.8, 0.8, 41)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_cdf_derivative_is_density(self):
        """Numerical derivative of F matches f away from the edges."""
        d = theorem1_density(0.5, 0.9, 0.6, 0.8)
        h = 1e-5
        for x in np.linspace(-d.scale + 0.05, d.scale - 0.05, 9):
            slope = (density_cdf(d, x + h) - density_cdf(d, x - h)) / (2 * h)
            assert slope == pytest.approx(density_value(d, x), abs=1e-4)

    def test_zeroth_moment(self, symmetric):
        """Every density integrates to 1."""
        assert density_moment(symmetric, 0) == pytest.approx(1.0, abs=1e-10)

    def test_odd_moment_vanishes(self, symmetric):
        """Symmetric densities have zero mean."""
        assert abs(density_moment(symmetric, 1)) < 1e-10

    @pytest.mark.parametrize("scale", [HALF, 0.5, 0.93])
    def test_second_moment_closed_form(self, scale):
        """E[x^2] = 1 - sqrt(1 - s^2) for f_K(.; s)."""
        expected = 1 - math.sqrt(1 - scale * scale)
        assert density_moment(konno_limit(scale), 2) == pytest.approx(expected, abs=1e-8)

    def test_second_moment_midpoint_oracle(self, symmetric):
        """Quadrature agrees with a 10^6-point midpoint rule in the sine variable."""
        n = 1_000_000
        u = -math.pi / 2 + (np.arange(n) + 0.5) * math.pi / n
        x = HALF * np.sin(u)
        integrand = x**2 * math.sqrt(0.5) / (math.pi * (1 - x**2))
        assert density_moment(symmetric, 2) == pytest.approx(np.sum(integrand) * math.pi / n, abs=1e-8)

    def test_skewed_first_moment(self):
        """Mean of f_K (1 - w x) is -w times the second moment of f_K."""
        d = theorem2_density(HALF, HALF, 1.0, 0.0, 0.0)
        assert density_moment(d, 1) == pytest.approx(-(1 - HALF), abs=1e-10)

    def test_weight_decomposition(self):
        """f(x) + f(-x) = 2 f_K(x; scale)."""
        d = theorem1_density(0.5, 0.9, 0.6, 0.8)
        xs = np.linspace(-0.85, 0.85, 57)
        total = density_value(d, xs) + density_value(d, -xs)
        assert total == pytest.approx(2 * konno_density(xs, d.scale), abs=1e-12)

    def test_order_guard(self, symmetric):
        """Orders above 16 are refused."""
        with pytest.raises(DomainError):
            density_moment(symmetric, 17)


class TestScheduleDensities:
    """Test density selection by schedule kind."""

    def test_two_period(self):
        """Two-period schedules use the two-period limit."""
        schedule = schedule_two_period_orthogonal(math.pi / 4, math.pi / 3)
        d = limit_density_for_schedule(schedule, *SYMMETRIC)
        assert d.scale == pytest.approx(0.5)

    def test_case_families(self):
        """case1 and case2 map to their own limits."""
        coin = orthogonal_coin(math.pi / 4)
        entries = (coin.a, coin.b, coin.c, coin.d)
        case1 = limit_density_for_schedule(schedule_case1(*entries, 0.3, 1.0), *SYMMETRIC)
        case2 = limit_density_for_schedule(schedule_case2(*entries, 0.3, 1.0), *SYMMETRIC)
        assert case1.provenance == DensityProvenance.THEOREM2
        assert case2.provenance == DensityProvenance.THEOREM3

    def test_one_period(self):
        """A constant coin uses the zero-phase case1 limit."""
        d = limit_density_for_schedule(schedule_one_period(orthogonal_coin(0.7)), 1.0, 0.0)
        assert d.scale == pytest.approx(math.cos(0.7))
        assert d.weight_constant == pytest.approx(1.0)

    def test_three_period_has_no_closed_form(self):
        """n >= 3 periodic schedules are out of reach."""
        schedule = schedule_n_period([orthogonal_coin(t) for t in (0.3, 0.6, 0.9)])
        with pytest.raises(DomainError):
            limit_density_for_schedule(schedule, *SYMMETRIC)

    def test_density_grid(self):
        """Grid spans [-scale - 0.05, scale + 0.05] with 1001 points."""
        xs, fs = density_grid(konno_limit(0.5))
        assert len(xs) == 1001
        assert xs[0] == pytest.approx(-0.55)
        assert xs[-1] == pytest.approx(0.55)
        assert fs[500] == pytest.approx(konno_density(0.0, 0.5))
