#!/usr/bin/env python3
"""From graph structure straight to a localization verdict.

Resistance distance below 1/2 between the relevant terminals certifies
localization: of the single-edge state |ab> via the double graph, and of the
self-flip state (|ab>-|ba>)/sqrt(2) via the base graph.  Edge-transitive
graphs have the exact value omega = (n-1)/(d n / 2) ~ 2/d, and even without
transitivity, k edge-disjoint paths of lengths l_1..l_k cap the resistance at
the harmonic bound 1/sum(1/l_i).  So high degree or high edge-connectivity
alone is enough to certify oscillation - no spectral work required.
"""

from oscillwalk import (
    complete_graph,
    cycle_graph,
    edge_disjoint_paths,
    hypercube_graph,
    localization_verdict,
    paths_resistance_bound,
    random_regular_graph,
    resistance_distance,
    torus_graph,
)

print("edge-transitive families: omega = (n-1)/(d n/2), shrinking like 2/d")
for g in (complete_graph(8), hypercube_graph(4), cycle_graph(8), torus_graph(2, 5)):
    u, v = g.edges[0]
    omega = resistance_distance(g, u, v)
    closed = (g.n - 1) / (g.degree * g.n / 2)
    print(f"  {g.name:<12} omega = {omega:.6f} (closed form {closed:.6f}) "
          f"-> {localization_verdict(omega)}")

print("\nedge-disjoint paths upper-bound the resistance (hypercube Q_3):")
g = hypercube_graph(3)
family = edge_disjoint_paths(g, 0, 1)
bound = paths_resistance_bound(family.lengths)
print(f"  max-flow finds k = {len(family)} paths with lengths {sorted(family.lengths)}")
for path in family.paths:
    print(f"    {' -> '.join(map(str, path))}")
print(f"  harmonic bound {bound:.6f} >= omega = {resistance_distance(g, 0, 1):.6f}")

print("\ncomplete graphs: k = n-1 disjoint paths, omega = 2/n < 1/2 for n >= 5")
for n in (5, 8, 16, 64):
    g = complete_graph(n)
    family = edge_disjoint_paths(g, 0, 1)
    omega = resistance_distance(g, 0, 1)
    print(f"  K_{n:<3} k = {len(family):>3}, omega = {omega:.6f} "
          f"-> {localization_verdict(omega)}")

print("\nrandom regular graphs: resistance falls with degree")
for n in (50, 100):
    for d in (4, 8, 16):
        g = random_regular_graph(n, d, seed=1)
        u, v = g.edges[0]
        omega = resistance_distance(g, u, v)
        print(f"  n={n:>3} d={d:>2}: omega = {omega:.4f} -> {localization_verdict(omega)}")
