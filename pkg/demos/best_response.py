"""Best responses and the large-population switch
=================================================

A best-response scan evaluates every deviation trust r against a fixed
population trust q. At the equilibrium the scan peaks at q itself. With many
searchers the picture sharpens into all-or-nothing: against a population that
over-trusts, ignore the pointer; against one that under-trusts, follow it
always; and exactly at probability matching every r does equally well.
"""

from starsearch import GameParams, best_response_scan, solve_equilibrium

# At the equilibrium of a small game, deviating in either direction loses.
params = GameParams(5, 3, 0.5)
q_bar = solve_equilibrium(params).q_bar
scan = best_response_scan(params, q_bar)
print(f"n=5, k=3, p=0.5: q_bar = {q_bar:.6f}")
print(f"best response to q_bar: r = {scan.argmax_r:.6f}, payoff {scan.max_payoff:.9f}")
print("sampled deviations:")
for r, payoff in scan.grid[:: len(scan.grid) // 10]:
    print(f"  r={r:.2f}  payoff={payoff:.9f}")

# The large-population trichotomy.
big = GameParams(1000, 3, 0.5)
print("\nn=1000, k=3, p=0.5:")
for q in (0.6, 0.5, 0.4):
    response = best_response_scan(big, q).argmax_r
    print(f"  population trusts q={q}: best deviation r = {response}")
