import math
from fractions import Fraction

import numpy as np
import pytest

from starsearch import (
    GameParams,
    SimulationConfig,
    TrustProfile,
    estimate_payoff,
    expected_payoff,
    per_turn_share,
    series_payoff,
    simulate_round,
)
from starsearch.model import _pow1m


def first_uniform(seed):
    return np.random.default_rng(seed).random()


class TestSimulationConfig:
    def test_validation(self):
        params = GameParams(2, 1, 0.6)
        profile = TrustProfile(0.5, 0.5)
        with pytest.raises(ValueError, match="rounds"):
            SimulationConfig(params, profile, rounds=0, seed=1)
        with pytest.raises(ValueError, match="max_turns"):
            SimulationConfig(params, profile, rounds=1, seed=1, max_turns=0)
        with pytest.raises(ValueError, match="seed"):
            SimulationConfig(params, profile, rounds=1, seed=-1)
        with pytest.raises(ValueError, match="seed"):
            SimulationConfig(params, profile, rounds=1, seed=2**64)


class TestSimulateRound:
    def test_full_trust_correct_pointer_splits_on_turn_one(self):
        # Pick p above the generator's first uniform so the pointer comes up
        # correct; with everyone fully trusting, all n land on turn 1.
        seed = 0
        p = min(0.99, first_uniform(seed) + 0.05)
        params = GameParams(4, 1, p)
        result = simulate_round(params, TrustProfile(1.0, 1.0), np.random.default_rng(seed))
        assert result.finish_turn == 1
        assert result.focal_payoff == 0.25
        assert result.payoffs == [Fraction(1, 4)] * 4

    def test_zero_trust_correct_pointer_caps(self):
        # Correct pointer, nobody ever follows it, and the single other ray
        # is wrong forever.
        seed = 0
        p = min(0.99, first_uniform(seed) + 0.05)
        params = GameParams(3, 1, p)
        result = simulate_round(params, TrustProfile(0.0, 0.0), np.random.default_rng(seed))
        assert result.finish_turn is None
        assert result.focal_payoff == 0.0
        assert result.payoffs == [Fraction(0)] * 3

    def test_zero_trust_wrong_pointer_wins_immediately(self):
        # Wrong pointer with k=1: ignoring it walks straight to the treasure.
        seed = 0
        p = max(0.51, first_uniform(seed) - 0.05)
        params = GameParams(3, 1, p)
        result = simulate_round(params, TrustProfile(0.0, 0.0), np.random.default_rng(seed))
        assert result.finish_turn == 1
        assert result.payoffs == [Fraction(1, 3)] * 3

    def test_uncapped_rounds_are_constant_sum(self):
        rng = np.random.default_rng(123)
        params = GameParams(6, 3, 0.5)
        profile = TrustProfile(0.4, 0.7)
        for _ in range(300):
            result = simulate_round(params, profile, rng)
            assert result.finish_turn is not None
            assert sum(result.payoffs) == 1
            assert len(result.payoffs) == 6

    def test_symmetric_two_player_mean_near_half(self):
        rng = np.random.default_rng(99)
        params = GameParams(2, 1, 2 / 3)
        q_bar = 0.7320508  # equilibrium trust for this instance
        profile = TrustProfile(q_bar, q_bar)
        rounds = 20_000
        total = sum(
            simulate_round(params, profile, rng).focal_payoff for _ in range(rounds)
        )
        mean = total / rounds
        # Payoffs live in {0, 1/2, 1}; the standard error is below 0.004.
        assert abs(mean - 0.5) < 3 * 0.004


class TestEstimatePayoff:
    def test_symmetric_profile_hits_equal_share(self):
        config = SimulationConfig(
            GameParams(2, 1, 2 / 3), TrustProfile(0.6, 0.6), rounds=10**6, seed=21
        )
        report = estimate_payoff(config)
        assert report.capped_rounds == 0
        z = abs(report.focal_mean_payoff - 0.5) / report.focal_std_error
        assert z < 3.0

    def test_deviation_matches_closed_form(self):
        params = GameParams(5, 3, 0.5)
        profile = TrustProfile(0.53, 0.70)
        report = estimate_payoff(
            SimulationConfig(params, profile, rounds=10**6, seed=22)
        )
        exact = expected_payoff(params, profile)
        assert abs(report.focal_mean_payoff - exact) < 4 * report.focal_std_error

    def test_equilibrium_share_at_figure_root(self):
        params = GameParams(5, 3, 0.5)
        report = estimate_payoff(
            SimulationConfig(params, TrustProfile(0.53, 0.53), rounds=10**6, seed=23)
        )
        assert abs(report.focal_mean_payoff - 0.2) < 3 * report.focal_std_error

    def test_reports_are_bit_identical(self):
        config = SimulationConfig(
            GameParams(5, 3, 0.5), TrustProfile(0.53, 0.53), rounds=200_000, seed=42
        )
        assert estimate_payoff(config) == estimate_payoff(config)

    def test_block_boundaries_do_not_skew_the_estimate(self):
        # Round counts straddling the internal block size must behave alike.
        params = GameParams(2, 1, 0.7)
        profile = TrustProfile(0.6, 0.6)
        for rounds in (65_535, 65_536, 65_537):
            report = estimate_payoff(
                SimulationConfig(params, profile, rounds=rounds, seed=5)
            )
            assert report.rounds_completed == rounds
            assert abs(report.focal_mean_payoff - 0.5) < 5 * report.focal_std_error

    def test_geometric_finish_turns(self):
        # With a symmetric population the finish turn is a mixture of two
        # geometrics, one per pointer branch.
        n, k, p, q = 4, 2, 0.6, 0.5
        rounds = 400_000
        report = estimate_payoff(
            SimulationConfig(GameParams(n, k, p), TrustProfile(q, q), rounds=rounds, seed=31)
        )
        q_star = (1 - q) / k
        success_right = 1 - _pow1m(q, n)
        success_wrong = 1 - _pow1m(q_star, n)
        mean = p / success_right + (1 - p) / success_wrong
        second = p * (2 - success_right) / success_right**2 + (1 - p) * (
            2 - success_wrong
        ) / success_wrong**2
        spread = math.sqrt((second - mean**2) / rounds)
        assert report.capped_rounds == 0
        assert abs(report.mean_finish_turn - mean) < 3 * spread

    def test_capped_rounds_flagged(self):
        # Zero trust on a single-decoy star: correct-pointer rounds can never
        # end, wrong-pointer rounds end on turn one.
        config = SimulationConfig(
            GameParams(3, 1, 0.7), TrustProfile(0.0, 0.0), rounds=4_000, seed=8
        )
        report = estimate_payoff(config)
        assert report.capped_rounds > 0
        assert report.warning is not None and "biased low" in report.warning
        expected_share = (1 - 0.7) / 3
        assert report.focal_mean_payoff == pytest.approx(expected_share, abs=0.02)
        assert report.mean_finish_turn == 1.0

    def test_turn_cap_respected(self):
        # A tiny cap forces capped rounds even for winnable games.
        config = SimulationConfig(
            GameParams(2, 3, 0.5), TrustProfile(0.05, 0.05), rounds=2_000, seed=9,
            max_turns=1,
        )
        report = estimate_payoff(config)
        assert report.capped_rounds > 0
        assert report.rounds_completed == 2_000


class TestPerTurnShare:
    def test_binomial_sum_matches_closed_form(self):
        # The enumerated share must reproduce r (1 - (1-q)^n) / (n q) for
        # every population size up to 30.
        rng = np.random.default_rng(17)
        for n in range(2, 31):
            q = float(rng.uniform(0.05, 0.95))
            r = float(rng.uniform(0.0, 1.0))
            closed = r * (1 - (1 - q) ** n) / (n * q)
            assert per_turn_share(r, q, n) == pytest.approx(closed, abs=1e-12)


class TestSeriesPayoff:
    def test_matches_closed_form_on_random_tuples(self):
        rng = np.random.default_rng(2718)
        for _ in range(25):
            n = int(rng.integers(2, 11))
            k = int(rng.integers(1, 6))
            floor = 1 / (k + 1)
            p = floor + (1 - floor) * rng.uniform(0.05, 0.95)
            profile = TrustProfile(float(rng.uniform(0.1, 0.9)), float(rng.uniform(0, 1)))
            params = GameParams(n, k, p)
            assert series_payoff(params, profile) == pytest.approx(
                expected_payoff(params, profile), abs=1e-10
            )

    def test_symmetric_profile(self):
        params = GameParams(7, 2, 0.45)
        assert series_payoff(params, TrustProfile(0.3, 0.3)) == pytest.approx(
            1 / 7, abs=1e-10
        )

    def test_two_player_hand_arithmetic(self):
        # n=2, k=1, p=2/3, q=1/2, r=1, worked by hand before coding:
        # correct branch: per-turn share 1*(1/2 + 1/2*1/2) = 3/4 and nobody-
        # lands probability (1-q)(1-r) = 0, so the branch pays 3/4 once;
        # wrong branch: the focal trust complement is 0, so it pays nothing.
        # Total: (2/3)(3/4) = 1/2.
        params = GameParams(2, 1, 2 / 3)
        value = series_payoff(params, TrustProfile(0.5, 1.0))
        assert value == pytest.approx(0.5, abs=1e-12)

    def test_domain(self):
        params = GameParams(2, 1, 0.6)
        with pytest.raises(ValueError, match="strictly inside"):
            series_payoff(params, TrustProfile(1.0, 0.5))
        with pytest.raises(ValueError, match="tail_tol"):
            series_payoff(params, TrustProfile(0.5, 0.5), tail_tol=0.0)
