"""Tests for the amplitude-field walk engine."""

import math

import numpy as np
import pytest

from app.errors import DomainError, NormalizationError, UnitarityError
from app.models import CoinMatrix, Distribution
from app.walks.coins import (
    orthogonal_coin,
    schedule_case1,
    schedule_case2,
    schedule_n_period,
    schedule_one_period,
    schedule_two_period,
    schedule_two_period_orthogonal,
)
from app.walks.core import (
    distribution,
    empirical_moment,
    evolve,
    new_walk,
    standard_deviation,
    step,
)

HALF = math.sqrt(0.5)
HADAMARD = orthogonal_coin(math.pi / 4)
EVERY_KIND = {
    "one-period": schedule_one_period(HADAMARD),
    "n-period": schedule_n_period([orthogonal_coin(0.3), orthogonal_coin(0.9), orthogonal_coin(1.2)]),
    "two-period": schedule_two_period_orthogonal(math.pi / 4, math.pi / 6),
    "case1": schedule_case1(HADAMARD.a, HADAMARD.b, HADAMARD.c, HADAMARD.d, 0.7, 1.3),
    "case2": schedule_case2(HADAMARD.a, HADAMARD.b, HADAMARD.c, HADAMARD.d, 0.4, 0.9),
}


def brute_force(coins, alpha, beta, steps):
    """Dictionary walk straight from psi_{t+1}(x) = P psi_t(x+1) + Q psi_t(x-1)."""
    psi = {0: np.array([alpha, beta], dtype=complex)}
    for t in range(steps):
        u = coins[t % len(coins)].matrix
        p = np.array([[u[0, 0], u[0, 1]], [0, 0]])
        q = np.array([[0, 0], [u[1, 0], u[1, 1]]])
        nxt = {}
        for x, amp in psi.items():
            nxt[x - 1] = nxt.get(x - 1, 0) + p @ amp
            nxt[x + 1] = nxt.get(x + 1, 0) + q @ amp
        psi = nxt
    return {x: float(np.sum(np.abs(v) ** 2)) for x, v in psi.items()}


@pytest.fixture
def hadamard():
    return orthogonal_coin(math.pi / 4)


class TestNewWalk:
    """Test initial state construction."""

    def test_localized_at_origin(self):
        """psi_0(0) = (alpha, beta)."""
        state = new_walk(1, 0)
        assert state.time == 0
        assert state.spinor_at(0).up == 1
        assert state.total_probability == 1.0

    def test_symmetric_state(self):
        """(1/sqrt2, i/sqrt2) is a valid initial state."""
        state = new_walk(HALF, 1j * HALF)
        assert state.total_probability == pytest.approx(1.0, abs=1e-15)

    def test_unnormalized_state_rejected(self):
        """|alpha|^2 + |beta|^2 = 1.62 fails."""
        with pytest.raises(NormalizationError):
            new_walk(0.9, 0.9)


class TestStep:
    """Test the single-step evolution rule."""

    def test_first_step_splits_components(self, hadamard):
        """Up amplitude moves left, down amplitude moves right."""
        state = step(new_walk(1, 0), hadamard)
        assert state.spinor_at(-1).up == pytest.approx(HALF)
        assert state.spinor_at(-1).down == pytest.approx(0)
        assert state.spinor_at(1).up == pytest.approx(0)
        assert state.spinor_at(1).down == pytest.approx(HALF)
        assert distribution(state).entries == [(-1, pytest.approx(0.5)), (1, pytest.approx(0.5))]

    def test_two_hadamard_steps(self, hadamard):
        """P(X_2) = 1/4, 1/2, 1/4 on -2, 0, 2."""
        dist = distribution(step(step(new_walk(1, 0), hadamard), hadamard))
        assert dist.positions.tolist() == [-2, 0, 2]
        assert dist.probabilities == pytest.approx([0.25, 0.5, 0.25])

    def test_two_period_leftmost_site(self):
        """P(X_2 = -2) = cos^2(pi/6) cos^2(pi/4) = 0.375."""
        state = step(step(new_walk(1, 0), orthogonal_coin(math.pi / 4)), orthogonal_coin(math.pi / 6))
        assert distribution(state).probability_at(-2) == pytest.approx(0.375, abs=1e-15)

    def test_support_widens_by_one(self, hadamard):
        """Field grows from 2t+1 to 2t+3 rows."""
        state = step(step(new_walk(1, 0), hadamard), hadamard)
        assert state.amplitudes.shape == (5, 2)

    def test_non_unitary_coin_rejected(self):
        """Coins must be unitary within 1e-12."""
        with pytest.raises(UnitarityError):
            step(new_walk(1, 0), CoinMatrix(a=1, b=1, c=1, d=1))


class TestEvolve:
    """Test schedule-driven evolution."""

    def test_zero_steps_is_identity(self, hadamard):
        """steps=0 returns the state unchanged."""
        state = new_walk(HALF, 1j * HALF)
        assert evolve(state, schedule_one_period(hadamard), 0) is state

    def test_matches_manual_steps(self, hadamard):
        """Two scheduled steps equal two manual steps."""
        manual = step(step(new_walk(1, 0), hadamard), hadamard)
        scheduled = evolve(new_walk(1, 0), schedule_one_period(hadamard), 2)
        np.testing.assert_array_equal(manual.amplitudes, scheduled.amplitudes)

    def test_negative_steps_rejected(self, hadamard):
        """steps must be non-negative."""
        with pytest.raises(DomainError):
            evolve(new_walk(1, 0), schedule_one_period(hadamard), -1)

    def test_continues_from_state_time(self):
        """Evolving 3 then 4 steps equals evolving 7."""
        schedule = schedule_two_period(orthogonal_coin(math.pi / 4), orthogonal_coin(math.pi / 6))
        split = evolve(evolve(new_walk(HALF, 1j * HALF), schedule, 3), schedule, 4)
        whole = evolve(new_walk(HALF, 1j * HALF), schedule, 7)
        np.testing.assert_allclose(split.amplitudes, whole.amplitudes, atol=1e-15)

    def test_matches_brute_force_oracle(self):
        """Dense engine agrees with a dictionary walk on a two-period schedule."""
        coins = [orthogonal_coin(0.4), orthogonal_coin(1.1)]
        alpha, beta = 0.6, 0.8j
        dist = distribution(evolve(new_walk(alpha, beta), schedule_two_period(*coins), 30))
        oracle = brute_force(coins, alpha, beta, 30)
        for x, p in dist.entries:
            assert p == pytest.approx(oracle.get(x, 0.0), abs=1e-13)

    def test_long_run_normalized(self):
        """500 two-period steps keep total probability 1."""
        schedule = schedule_two_period(orthogonal_coin(math.pi / 4), orthogonal_coin(math.pi / 6))
        dist = distribution(evolve(new_walk(HALF, 1j * HALF), schedule, 500))
        assert len(dist.entries) == 501
        assert dist.total == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kind", sorted(EVERY_KIND))
    def test_norm_and_parity_through_t_2000(self, kind):
        """Every schedule kind keeps total probability within 1e-12 and wrong-parity rows at zero."""
        state = evolve(new_walk(HALF, 1j * HALF), EVERY_KIND[kind], 2000)
        assert state.time == 2000
        assert abs(distribution(state).total - 1.0) < 1e-12
        assert not np.any(state.amplitudes[1::2])


class TestDistribution:
    """Test distributions and their moments."""

    def test_initial_distribution(self):
        """A fresh walk sits at the origin."""
        assert distribution(new_walk(1, 0)).entries == [(0, 1.0)]

    def test_first_moment_of_symmetric_pair(self):
        """Symmetric two-point law has mean zero."""
        dist = Distribution(time=1, positions=np.array([-1, 1]), probabilities=np.array([0.5, 0.5]))
        assert empirical_moment(dist, 1) == 0.0

    def test_second_moment_direct_sum(self):
        """E(X_2^2) = 2 for the Hadamard law at t = 2."""
        dist = Distribution(
            time=2, positions=np.array([-2, 0, 2]), probabilities=np.array([0.25, 0.5, 0.25])
        )
        assert empirical_moment(dist, 2) == pytest.approx(2.0)
        assert empirical_moment(dist, 2, rescale=True) == pytest.approx(0.5)

    @pytest.mark.parametrize("r", [0, 17])
    def test_order_guard(self, r):
        """Orders outside 1..16 are refused."""
        dist = distribution(new_walk(1, 0))
        with pytest.raises(DomainError):
            empirical_moment(dist, r)

    def test_rescale_needs_positive_time(self):
        """X_0 / 0 is undefined."""
        with pytest.raises(DomainError):
            empirical_moment(distribution(new_walk(1, 0)), 1, rescale=True)

    def test_hadamard_rescaled_second_moment(self, hadamard):
        """E((X/t)^2) at t = 500 is close to 1 - 1/sqrt2."""
        dist = distribution(evolve(new_walk(HALF, 1j * HALF), schedule_one_period(hadamard), 500))
        assert empirical_moment(dist, 2, rescale=True) == pytest.approx(1 - HALF, abs=0.02)


class TestBallisticSpread:
    """Test linear growth of the standard deviation."""

    def test_sigma_over_t_is_constant(self, hadamard):
        """sigma(t)/t at t = 200, 400, 800 agrees within 0.02 and exceeds 0.2."""
        schedule = schedule_one_period(hadamard)
        state = new_walk(HALF, 1j * HALF)
        ratios = []
        for t in (200, 400, 800):
            state = evolve(state, schedule, t - state.time)
            ratios.append(standard_deviation(distribution(state), rescale=True))
        assert min(ratios) > 0.2
        assert max(ratios) - min(ratios) < 0.02
