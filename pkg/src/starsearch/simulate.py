"""Monte Carlo simulation of the star-search race.

This module is the model-independent check on the closed forms: it plays the
game turn by turn instead of summing a geometric series. Round semantics:

1. The pointer's correctness is drawn once per round (leaf symmetry makes the
   identity of the marked ray irrelevant).
2. Turns are synchronous. Each turn every searcher redraws its choice: follow
   the pointer (probability r for the focal searcher, q for the others) or
   pick one of the k unmarked rays uniformly. Given a correct pointer a
   searcher lands with probability equal to its trust; given a wrong one,
   with the per-ray complement (1 - trust) / k.
3. The round ends on the first turn somebody lands; all same-turn arrivers
   split the unit prize equally.
4. A round with no arrival within max_turns is capped: everybody scores 0 and
   the round is flagged (never resampled, which would bias the estimate).

Choices are redrawn every turn with no memory of visited rays; that is the
process whose payoff the closed form describes.

Determinism: rounds are processed in fixed blocks of 65536, block b drawing
from a counter-based Philox stream keyed by (seed, b), and block results are
reduced in block order. Reports are therefore bit-identical for identical
configs no matter how blocks might be scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .model import GameParams, TrustProfile, _as_int, _pow1m

__all__ = [
    "SimulationConfig",
    "SimulationReport",
    "RoundResult",
    "simulate_round",
    "estimate_payoff",
    "series_payoff",
    "per_turn_share",
]

DEFAULT_MAX_TURNS = 1_000_000
_BLOCK_ROUNDS = 1 << 16
_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class SimulationConfig:
    """Everything needed to reproduce one payoff estimate."""

    params: GameParams
    profile: TrustProfile
    rounds: int
    seed: int
    max_turns: int = DEFAULT_MAX_TURNS

    def __post_init__(self) -> None:
        object.__setattr__(self, "rounds", _as_int(self.rounds, "rounds"))
        object.__setattr__(self, "seed", _as_int(self.seed, "seed"))
        object.__setattr__(self, "max_turns", _as_int(self.max_turns, "max_turns"))
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if self.max_turns < 1:
            raise ValueError("max_turns must be at least 1")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimulationReport:
    """Focal payoff statistics from independent rounds.

    mean_finish_turn averages over uncapped rounds only (NaN if every round
    was capped). warning is set whenever capped rounds occurred, since capped
    rounds score zero and drag the estimate low.
    """

    rounds_completed: int
    capped_rounds: int
    focal_mean_payoff: float
    focal_std_error: float
    mean_finish_turn: float
    seed_echo: int
    warning: str | None = None


class RoundResult(NamedTuple):
    focal_payoff: float
    payoffs: list[Fraction]
    finish_turn: int | None


def _branch_probabilities(
    params: GameParams, profile: TrustProfile, correct: bool
) -> tuple[float, float]:
    if correct:
        return profile.r, profile.q
    k = params.k
    return (1.0 - profile.r) / k, (1.0 - profile.q) / k


def simulate_round(
    params: GameParams,
    profile: TrustProfile,
    rng: np.random.Generator,
    max_turns: int = DEFAULT_MAX_TURNS,
) -> RoundResult:
    """Play one round; returns the focal payoff, all payoffs, and the turn.

    payoffs[0] is the focal searcher, payoffs[1:] the others, as exact
    fractions so that every uncapped round splits the prize to total exactly
    one. finish_turn is None when the round hits max_turns (all payoffs 0).
    Draw order per turn is fixed: one uniform for the focal searcher, then a
    vector of n - 1 uniforms for the others.
    """
    n = params.n
    correct = bool(rng.random() < params.p)
    focal_p, other_p = _branch_probabilities(params, profile, correct)
    zero = Fraction(0)
    if focal_p == 0.0 and other_p == 0.0:
        # Nobody can ever land on this branch; the round is capped without
        # burning max_turns of draws.
        return RoundResult(0.0, [zero] * n, None)
    for turn in range(1, max_turns + 1):
        focal_in = bool(rng.random() < focal_p)
        others_in = rng.random(n - 1) < other_p
        arrived = int(focal_in) + int(np.count_nonzero(others_in))
        if arrived:
            share = Fraction(1, arrived)
            payoffs = [share if focal_in else zero]
            payoffs.extend(share if hit else zero for hit in others_in)
            return RoundResult(float(share) if focal_in else 0.0, payoffs, turn)
    return RoundResult(0.0, [zero] * n, None)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    key = np.array([seed, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def estimate_payoff(config: SimulationConfig) -> SimulationReport:
    """Estimate the focal searcher's expected share over many rounds.

    Vectorized equivalent of repeating simulate_round: per block, pointer
    correctness is drawn per round, then each surviving round draws one
    focal uniform and one binomial count of arriving others per turn until
    somebody lands or the turn cap strikes. Standard error is the sample
    standard deviation over all rounds divided by sqrt(rounds).
    """
    params, profile = config.params, config.profile
    n, p = params.n, params.p
    r, q = profile.r, profile.q
    r_star = (1.0 - r) / params.k
    q_star = (1.0 - q) / params.k
    rounds = config.rounds

    total = 0.0
    total_sq = 0.0
    capped = 0
    finish_total = 0.0
    finished = 0
    n_blocks = (rounds + _BLOCK_ROUNDS - 1) // _BLOCK_ROUNDS
    for block in range(n_blocks):
        count = min(_BLOCK_ROUNDS, rounds - block * _BLOCK_ROUNDS)
        rng = _block_rng(config.seed, block)
        correct = rng.random(count) < p
        focal_p = np.where(correct, r, r_star)
        other_p = np.where(correct, q, q_star)
        share = np.zeros(count)
        finish = np.zeros(count, dtype=np.int64)
        # Rounds whose branch has zero landing probability can never end.
        active = np.nonzero((focal_p > 0.0) | (other_p > 0.0))[0]
        turn = 0
        while active.size and turn < config.max_turns:
            turn += 1
            focal_in = rng.random(active.size) < focal_p[active]
            others = rng.binomial(n - 1, other_p[active])
            done = focal_in | (others > 0)
            landed = active[done]
            finish[landed] = turn
            share[landed] = np.where(
                focal_in[done], 1.0 / (others[done] + 1.0), 0.0
            )
            active = active[~done]
        capped += int(count - np.count_nonzero(finish))
        total += float(np.sum(share))
        total_sq += float(np.sum(share * share))
        done_turns = finish[finish > 0]
        finish_total += float(np.sum(done_turns))
        finished += int(done_turns.size)

    mean = total / rounds
    if rounds > 1:
        variance = max(total_sq - total * total / rounds, 0.0) / (rounds - 1)
    else:
        variance = 0.0
    std_error = math.sqrt(variance / rounds)
    mean_finish = finish_total / finished if finished else math.nan
    warning = None
    if capped:
        warning = (
            f"{capped} of {rounds} rounds hit the {config.max_turns}-turn cap; "
            "capped rounds score 0, so the payoff estimate is biased low"
        )
    return SimulationReport(
        rounds_completed=rounds,
        capped_rounds=capped,
        focal_mean_payoff=mean,
        focal_std_error=std_error,
        mean_finish_turn=mean_finish,
        seed_echo=config.seed,
        warning=warning,
    )


def per_turn_share(focal_p: float, other_p: float, n: int) -> float:
    """Expected share the focal searcher collects from a single turn.

    Direct enumeration over the number m of co-arriving others: the focal
    searcher lands with probability focal_p and takes 1/(m+1). Kept as an
    explicit binomial sum on purpose; the closed form it must agree with is
    focal_p * (1 - (1 - other_p)**n) / (n * other_p).
    """
    n = _as_int(n, "n")
    if n < 2:
        raise ValueError("n must be at least 2")
    total = 0.0
    for m in range(n):
        total += (
            math.comb(n - 1, m)
            * other_p**m
            * (1.0 - other_p) ** (n - 1 - m)
            / (m + 1)
        )
    return focal_p * total


def series_payoff(
    params: GameParams, profile: TrustProfile, tail_tol: float = 1e-14
) -> float:
    """Expected focal share by summing the game turn by turn.

    Independent route to the same number as the closed-form payoff: for each
    pointer branch, accumulate share * survive**t term by term, where share
    is the enumerated per-turn expected share and survive the probability
    that nobody lands in a turn, stopping once the geometric tail bound
    drops below tail_tol. Neither the binomial sum nor the geometric series
    uses its closed form.
    """
    if not tail_tol > 0.0:
        raise ValueError("tail_tol must be positive")
    q = profile.q
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1) for the series payoff")
    n, k, p = params.n, params.k, params.p
    r = profile.r
    total = 0.0
    for weight, focal_p, other_p in (
        (p, r, q),
        (1.0 - p, (1.0 - r) / k, (1.0 - q) / k),
    ):
        share = per_turn_share(focal_p, other_p, n)
        if share == 0.0:
            continue
        survive = _pow1m(other_p, n - 1) * (1.0 - focal_p)
        branch = 0.0
        term = share
        while True:
            branch += term
            term *= survive
            # Remaining mass is term / (1 - survive).
            if term <= tail_tol * (1.0 - survive):
                break
        total += weight * branch
    return total
