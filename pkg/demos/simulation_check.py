"""Three routes to the same payoff
==================================

The focal searcher's expected share can be computed three independent ways:
the closed form, a turn-by-turn series summation, and Monte Carlo play of the
actual game. They have to agree, and the simulation is seeded so every run of
this script prints identical numbers.
"""

from starsearch import (
    GameParams,
    SimulationConfig,
    TrustProfile,
    estimate_payoff,
    expected_payoff,
    series_payoff,
)

CASES = [
    (GameParams(5, 3, 0.5), TrustProfile(q=0.53, r=0.70)),
    (GameParams(2, 1, 2 / 3), TrustProfile(q=0.6, r=0.6)),
    (GameParams(8, 4, 0.4), TrustProfile(q=0.35, r=0.9)),
]

for params, profile in CASES:
    closed = expected_payoff(params, profile)
    series = series_payoff(params, profile)
    report = estimate_payoff(
        SimulationConfig(params, profile, rounds=400_000, seed=2024)
    )
    z = (report.focal_mean_payoff - closed) / report.focal_std_error
    print(f"n={params.n} k={params.k} p={params.p:.4f} q={profile.q} r={profile.r}")
    print(f"  closed form : {closed:.12f}")
    print(f"  series sum  : {series:.12f}  (diff {series - closed:+.2e})")
    print(
        f"  monte carlo : {report.focal_mean_payoff:.6f}"
        f" +- {report.focal_std_error:.6f}  (z = {z:+.2f})"
    )
    print(f"  mean finish turn: {report.mean_finish_turn:.3f}\n")
