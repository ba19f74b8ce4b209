"""Closed-form payoff model for competitive search on a star graph.

The game: ``n`` searchers start at the hub of a star with ``k + 1`` rays and
race to a treasure sitting at the far end of one ray. A shared pointer marks
the treasure ray with probability ``p`` and one of the other rays otherwise,
and whichever ray it marks stays marked for the whole game. Every turn each
searcher independently either follows the pointer (with a personal trust
probability) or walks down one of the ``k`` unmarked rays chosen uniformly at
random; a wrong ray costs the turn and the searcher tries again from the hub.
The first searchers to step onto the treasure ray split the unit prize
equally.

Because the leaves are interchangeable, only the pointer's correctness
matters. A searcher who trusts with probability ``x`` reaches the treasure on
a given turn with probability ``x`` when the pointer is right and with the
per-ray complement ``(1 - x) / k`` when it is wrong.

This module holds the parameter types and every closed form the solver,
simulator and verifier build on: the focal searcher's expected share, its
large-population limit, the equilibrium residual, the monotone map from
equilibrium trust back to pointer reliability, the population size past which
equilibrium trust starts falling, and the optimal trust of a lone searcher
used as a baseline. All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

__all__ = [
    "GameParams",
    "TrustProfile",
    "DerivedProbabilities",
    "off_ray_probability",
    "expected_payoff",
    "expected_payoff_large_n",
    "equilibrium_residual",
    "reliability_from_trust",
    "trust_decrease_threshold",
    "single_searcher_optimal_trust",
]

# Above this exponent, repeated squaring of 1 - x accumulates more rounding
# than the exp/log1p route; below it, squaring avoids the transcendental
# calls entirely.
_SQUARING_LIMIT = 1024


def _as_int(value, name: str) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise ValueError(f"{name} must be an integer") from None


def _as_probability(value, name: str) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite")
    return x


def _pow1m(x: float, n: int) -> float:
    """(1 - x) ** n without drift for huge n or tiny x.

    Exponentiation by squaring up to n = 1024, exp(n * log1p(-x)) beyond,
    so (1 - q) ** n stays accurate for population sizes up to 10**6.
    """
    if n > _SQUARING_LIMIT:
        if x >= 1.0:
            return 0.0
        return math.exp(n * math.log1p(-x))
    result = 1.0
    base = 1.0 - x
    e = n
    while e:
        if e & 1:
            result *= base
        base *= base
        e >>= 1
    return result


def off_ray_probability(x: float, k: int) -> float:
    """Chance (1 - x) / k of walking down one specific unmarked ray.

    ``x`` is the trust put in the pointer; the complement is spread uniformly
    over the k remaining rays. This is also the per-turn success probability
    of a searcher with trust ``x`` when the pointer is wrong.
    """
    k = _as_int(k, "k")
    x = _as_probability(x, "x")
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    return (1.0 - x) / k


@dataclass(frozen=True)
class GameParams:
    """One game instance: n searchers, k + 1 rays, pointer reliability p.

    Requires n >= 2 (a single searcher is an optimization problem, not a
    game), k >= 1, and 1/(k+1) < p < 1 strictly: a pointer at or below the
    uniform-guess rate carries no usable signal, and a perfect pointer
    leaves nothing to decide.
    """

    n: int
    k: int
    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", _as_int(self.n, "n"))
        object.__setattr__(self, "k", _as_int(self.k, "k"))
        object.__setattr__(self, "p", _as_probability(self.p, "p"))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.p <= 1.0 / (self.k + 1):
            raise ValueError("p must exceed 1/(k+1)")
        if self.p >= 1.0:
            raise ValueError("p must be strictly less than 1")

    @property
    def p_star(self) -> float:
        """Per-ray probability the pointer marks one specific wrong ray."""
        return off_ray_probability(self.p, self.k)


@dataclass(frozen=True)
class TrustProfile:
    """Population trust q (the n - 1 others) and focal trust r."""

    q: float
    r: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", _as_probability(self.q, "q"))
        object.__setattr__(self, "r", _as_probability(self.r, "r"))
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError("r must lie in [0, 1]")


@dataclass(frozen=True)
class DerivedProbabilities:
    """The three per-ray complements (1 - x) / k for x in (p, q, r)."""

    p_star: float
    q_star: float
    r_star: float

    @classmethod
    def of(cls, params: GameParams, profile: TrustProfile) -> "DerivedProbabilities":
        k = params.k
        return cls(
            p_star=off_ray_probability(params.p, k),
            q_star=off_ray_probability(profile.q, k),
            r_star=off_ray_probability(profile.r, k),
        )


def _require_interior_q(q: float) -> None:
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1) for the closed-form payoff")


def expected_payoff(params: GameParams, profile: TrustProfile) -> float:
    """Expected prize share of the focal searcher with trust r against q.

    Sums, for each pointer branch, the geometric series of per-turn expected
    shares: per turn the focal searcher lands with m co-arrivers and takes
    1/(m+1), and play repeats while nobody lands. q must be interior: at
    q = 0 the pointer-right branch is 0/0 and at q = 1 the pointer-wrong
    branch is, so neither endpoint is given a value here. The symmetric
    profile r = q is deliberately not special-cased; it must come out as
    1/n from the arithmetic alone.
    """
    n, k, p = params.n, params.k, params.p
    q, r = profile.q, profile.r
    _require_interior_q(q)
    q_star = (1.0 - q) / k
    r_star = (1.0 - r) / k
    right = p * (r * (1.0 - _pow1m(q, n)) / (n * q)) / (
        1.0 - _pow1m(q, n - 1) * (1.0 - r)
    )
    wrong = (1.0 - p) * (r_star * (1.0 - _pow1m(q_star, n)) / (n * q_star)) / (
        1.0 - _pow1m(q_star, n - 1) * (1.0 - r_star)
    )
    return right + wrong


def expected_payoff_large_n(params: GameParams, profile: TrustProfile) -> float:
    """Large-population approximation (p*r/q + (1-p)(1-r)/(1-q)) / n.

    Valid when someone is near-certain to land on the first turn, i.e. n
    large and q not extreme.
    """
    n, p = params.n, params.p
    q, r = profile.q, profile.r
    _require_interior_q(q)
    return (p * r / q + (1.0 - p) * (1.0 - r) / (1.0 - q)) / n


def equilibrium_residual(params: GameParams, q: float) -> float:
    """Residual whose unique interior root is the symmetric equilibrium trust.

    Positive residual means trust q is too low to be self-consistent for
    reliability p, negative means too high. Also vanishes at q = 1, which is
    why the solver brackets on the monotone reliability map instead.
    """
    n, k, p = params.n, params.k, params.p
    q = _as_probability(q, "q")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    p_star = (1.0 - p) / k
    q_star = (1.0 - q) / k
    return p * q_star * (1.0 - _pow1m(q_star, n)) * (1.0 - _pow1m(q, n - 1)) - (
        p_star * q * (1.0 - _pow1m(q, n)) * (1.0 - _pow1m(q_star, n - 1))
    )


def reliability_from_trust(n: int, k: int, q: float) -> float:
    """Pointer reliability for which trust q is the symmetric equilibrium.

    The inverse of the equilibrium map: strictly increasing in q, with value
    tending to 1/(k+1) as q approaches 1/(k+1) and to 1 as q approaches 1.
    Only the open interval is accepted; the endpoint values are limits, not
    function values.
    """
    n = _as_int(n, "n")
    k = _as_int(k, "k")
    q = _as_probability(q, "q")
    if n < 2:
        raise ValueError("n must be at least 2")
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 1.0 / (k + 1) < q < 1.0:
        raise ValueError("q must lie strictly inside (1/(k+1), 1)")
    q_star = (1.0 - q) / k
    own = q * (1.0 - _pow1m(q, n)) * (1.0 - _pow1m(q_star, n - 1))
    other = (1.0 - q) * (1.0 - _pow1m(q_star, n)) * (1.0 - _pow1m(q, n - 1))
    return own / (own + other)


def trust_decrease_threshold(p: float, k: int) -> float:
    """Population size beyond which equilibrium trust strictly falls with n.

    Returns 3 + 2 ln(k) / ln((k-1+p) / (k(1-p))); exactly 3 for k = 1, and
    diverging as p approaches the 1/(k+1) signal floor. Below the threshold
    trust may move either way with n.
    """
    k = _as_int(k, "k")
    p = _as_probability(p, "p")
    if k < 1:
        raise ValueError("k must be at least 1")
    if p <= 1.0 / (k + 1):
        raise ValueError("p must exceed 1/(k+1)")
    if p >= 1.0:
        raise ValueError("p must be strictly less than 1")
    if k == 1:
        return 3.0
    return 3.0 + 2.0 * math.log(k) / math.log((k - 1.0 + p) / (k * (1.0 - p)))


def single_searcher_optimal_trust(p: float, k: int) -> float:
    """Optimal trust of a lone searcher minimizing expected time to arrive.

    Comparison baseline for the competitive game: (p - sqrt(k p (1-p))) /
    (1 - (k+1)(1-p)), decreasing in k, undefined where the denominator
    vanishes at p = k/(k+1).
    """
    k = _as_int(k, "k")
    p = _as_probability(p, "p")
    if k < 1:
        raise ValueError("k must be at least 1")
    if p <= 1.0 / (k + 1):
        raise ValueError("p must exceed 1/(k+1)")
    if p >= 1.0:
        raise ValueError("p must be strictly less than 1")
    denominator = 1.0 - (k + 1) * (1.0 - p)
    if denominator == 0.0:
        raise ValueError("p must not equal k/(k+1); the baseline is undefined there")
    return (p - math.sqrt(k) * math.sqrt(p * (1.0 - p))) / denominator
