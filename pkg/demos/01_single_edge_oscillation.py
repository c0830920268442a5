#!/usr/bin/env python3
"""A walker dropped on one arc of a complete graph bounces back and forth.

We start the Grover-coined flip-flop walk on K_n in the basis state |ab>
(at vertex a, pointing at b) and watch the return amplitude.  At even steps
the walker is almost entirely back in |ab>, at odd steps almost entirely in
-|ba>: the hallmark of oscillatory localization.  The 7-dimensional
symmetry-reduced model predicts every amplitude in closed form, and the full
arc-space simulation agrees to machine precision.
"""

import numpy as np

from oscillwalk import (
    amp_ab,
    amp_ba,
    basis_arc_state,
    complete_graph,
    overlap,
    seven_dim_unitary,
    walk_step,
)

N = 16
STEPS = 12

print(f"quantum walk on the complete graph K_{N}, starting state |ab>")
print(f"{'t':>3} {'closed amp_ab':>15} {'closed amp_ba':>15} {'sim amp_ab':>15} {'max |diff|':>11}")

g = complete_graph(N)
psi0 = basis_arc_state(g, 0, 1)
reversed_arc = basis_arc_state(g, 1, 0)
state = psi0
worst = 0.0
for t in range(STEPS + 1):
    sim_ab = overlap(psi0, state).real
    sim_ba = overlap(reversed_arc, state).real
    diff = max(abs(sim_ab - amp_ab(N, t)), abs(sim_ba - amp_ba(N, t)))
    worst = max(worst, diff)
    print(f"{t:>3} {amp_ab(N, t):>15.9f} {amp_ba(N, t):>15.9f} {sim_ab:>15.9f} {diff:>11.2e}")
    state = walk_step(state)

print(f"\nworst closed-form vs simulation deviation: {worst:.2e}")

print("\nthe same dynamics live in a 7D invariant subspace:")
model = seven_dim_unitary(N)
vec = np.zeros(7)
vec[0] = 1.0
for t in range(4):
    print(f"  t={t}: component on |ab> = {vec[0]:+.9f}, on |ba> = {vec[2]:+.9f}")
    vec = model.matrix @ vec

print("\nas n grows the oscillation sharpens (odd-step amplitude -> -1):")
for n in (8, 16, 100, 1000):
    print(f"  n={n:>5}: odd-step amp_ba = {amp_ba(n, 1):+.6f}, "
          f"even-step amp_ab at t=2 = {amp_ab(n, 2):+.6f}")
