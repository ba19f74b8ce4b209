"""Brute-force equilibrium verification.

Nothing here trusts the solver: best-response scans maximize the payoff over
a dense deviation grid, equilibrium checks confirm that no scanned deviation
beats the symmetric share, and the probability-matching check watches the
equilibrium trust sink toward the pointer reliability as the population
grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .equilibrium import EquilibriumSolution, solve_equilibrium
from .model import (
    GameParams,
    _as_int,
    _as_probability,
    _pow1m,
    trust_decrease_threshold,
)

__all__ = [
    "BestResponseScan",
    "EquilibriumCheck",
    "ProbabilityMatchingReport",
    "best_response_scan",
    "check_equilibrium",
    "check_probability_matching",
]

# Payoffs within this many ulps of the scan maximum count as tied. The payoff
# is strictly concave in the deviation trust, so ties form an interval around
# the true maximizer; reporting the middle of that interval keeps the argmax
# meaningful even where the curve is flat to double precision (population
# trust equal to reliability at large n).
_TIE_ULPS = 64.0


@dataclass(frozen=True)
class BestResponseScan:
    """Payoff of every scanned deviation against a fixed population trust."""

    q_fixed: float
    grid: tuple[tuple[float, float], ...]
    argmax_r: float
    max_payoff: float


@dataclass(frozen=True)
class EquilibriumCheck:
    """Pass/fail record for the three equilibrium assertions."""

    params: GameParams
    solution: EquilibriumSolution
    scan: BestResponseScan
    argmax_gap: float
    argmax_ok: bool
    best_payoff_excess: float
    no_profitable_deviation: bool
    e_residual_ok: bool

    @property
    def passed(self) -> bool:
        return self.argmax_ok and self.no_profitable_deviation and self.e_residual_ok


@dataclass(frozen=True)
class ProbabilityMatchingReport:
    """Trust-minus-reliability gaps along a population sweep."""

    k: int
    p: float
    n_values: tuple[int, ...]
    gaps: tuple[float, ...]
    threshold: float
    all_gaps_positive: bool
    decreasing_above_threshold: bool
    final_gap: float
    final_gap_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.all_gaps_positive
            and self.decreasing_above_threshold
            and self.final_gap_ok
        )


def best_response_scan(
    params: GameParams, q: float, r_steps: int = 2001
) -> BestResponseScan:
    """Evaluate the focal payoff on a uniform deviation grid over [0, 1].

    The payoff is continuous in the deviation trust r including both
    endpoints, so the full closed interval is scanned. Grid points whose
    payoff sits within a few ulps of the maximum are treated as tied and the
    middle of the tying range is reported (see _TIE_ULPS).
    """
    q = _as_probability(q, "q")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1) for the closed-form payoff")
    r_steps = _as_int(r_steps, "r_steps")
    if r_steps < 2:
        raise ValueError("r_steps must be at least 2")
    n, k, p = params.n, params.k, params.p
    q_star = (1.0 - q) / k
    b = _pow1m(q, n)
    b1 = _pow1m(q, n - 1)
    a = _pow1m(q_star, n)
    a1 = _pow1m(q_star, n - 1)
    r = np.linspace(0.0, 1.0, r_steps)
    r_star = (1.0 - r) / k
    payoff = p * (r * (1.0 - b) / (n * q)) / (1.0 - b1 * (1.0 - r)) + (1.0 - p) * (
        r_star * (1.0 - a) / (n * q_star)
    ) / (1.0 - a1 * (1.0 - r_star))
    peak = float(payoff.max())
    tie_tol = _TIE_ULPS * np.finfo(float).eps * abs(peak)
    tied = np.nonzero(payoff >= peak - tie_tol)[0]
    best = int((tied[0] + tied[-1]) // 2)
    return BestResponseScan(
        q_fixed=q,
        grid=tuple(zip(r.tolist(), payoff.tolist())),
        argmax_r=float(r[best]),
        max_payoff=float(payoff[best]),
    )


def check_equilibrium(
    params: GameParams,
    q_tol: float = 1e-12,
    payoff_tol: float = 1e-9,
    r_steps: int = 2001,
    residual_tol: float = 1e-10,
) -> EquilibriumCheck:
    """Solve, then verify the solution by brute force.

    Asserts that (a) the scanned best response lands within one grid step of
    the solved trust, (b) no scanned deviation earns more than the symmetric
    share 1/n plus payoff_tol, and (c) the equilibrium residual at the
    solution is below residual_tol. Failures are recorded, not raised.
    """
    solution = solve_equilibrium(params, q_tol=q_tol)
    scan = best_response_scan(params, solution.q_bar, r_steps=r_steps)
    spacing = 1.0 / (r_steps - 1)
    argmax_gap = abs(scan.argmax_r - solution.q_bar)
    excess = scan.max_payoff - 1.0 / params.n
    return EquilibriumCheck(
        params=params,
        solution=solution,
        scan=scan,
        argmax_gap=argmax_gap,
        argmax_ok=argmax_gap <= spacing,
        best_payoff_excess=excess,
        no_profitable_deviation=excess <= payoff_tol,
        e_residual_ok=solution.e_residual <= residual_tol,
    )


def check_probability_matching(
    k: int,
    p: float,
    n_values: Iterable[int],
    tol_fn: Callable[[int], float] | None = None,
    decrease_slack: float = 1e-12,
) -> ProbabilityMatchingReport:
    """Check that equilibrium trust stays above p and sinks toward it.

    For each population size the gap q_bar(n) - p must be strictly positive;
    between consecutive entries that both exceed the decrease threshold the
    gap must not grow by more than decrease_slack (consecutive roots are only
    located to the solver tolerance, so smaller decreases cannot be
    resolved); and the final gap must fall below tol_fn(max n), which
    defaults to a flat 1e-3.
    """
    ns = sorted(_as_int(n, "n") for n in n_values)
    if not ns:
        raise ValueError("n_values must not be empty")
    if any(b == a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_values must not contain duplicates")
    threshold = trust_decrease_threshold(p, k)
    gaps = tuple(solve_equilibrium(GameParams(n, k, p)).q_bar - p for n in ns)
    decreasing = all(
        later <= earlier + decrease_slack
        for n_a, n_b, earlier, later in zip(ns, ns[1:], gaps, gaps[1:])
        if n_a > threshold
    )
    if tol_fn is None:
        tol_fn = lambda n: 1e-3  # noqa: E731
    final_tol = tol_fn(ns[-1])
    return ProbabilityMatchingReport(
        k=k,
        p=float(p),
        n_values=tuple(ns),
        gaps=gaps,
        threshold=threshold,
        all_gaps_positive=all(g > 0.0 for g in gaps),
        decreasing_above_threshold=decreasing,
        final_gap=gaps[-1],
        final_gap_ok=gaps[-1] < final_tol,
    )
