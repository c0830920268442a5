"""Classical electric networks that certify quantum-walk oscillations.

A starting state turns into a unit-resistor network: arcs with zero amplitude
become resistors, nonzero amplitudes become current injections.  Solving the
Kirchhoff currents (grounded graph-Laplacian systems) yields the power
dissipation P, and Thomson's principle makes the completed current pattern the
closest circulation, so

    alpha_sq >= 1 / (1 + P)            (network on the bipartite double)
    alpha_sq >= 1 / (1 + 2P)           (self-flip state, network on G itself)

with matching lower bounds on the return overlaps.  Effective resistance
below 1/2 between the relevant terminals certifies localization outright.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graphs import Graph, bipartite_double
from .oscillation import is_flip_state
from .walk import ArcState, ensure_normalized, is_selfflip_state

__all__ = [
    "ElectricNetwork",
    "FlowSolution",
    "Circulation",
    "network_from_state_double",
    "network_from_selfflip_state",
    "solve_network",
    "resistance_distance",
    "flip_to_circulation",
    "circulation_to_flip",
    "completed_circulation",
    "bounds_from_power",
    "parallel_resistance_identity",
    "paths_resistance_bound",
    "random_resistor_circulation",
    "localization_verdict",
    "CERTIFIED",
    "NOT_CERTIFIED",
    "ZERO_AMPLITUDE_TOL",
    "FEASIBILITY_TOL",
    "DENSE_SOLVER_THRESHOLD",
]

# Amplitudes at or below this are treated as the zero (resistor) case.
ZERO_AMPLITUDE_TOL = 1e-12
# A component whose net injection exceeds this cannot carry a steady current.
FEASIBILITY_TOL = 1e-9
# Node count at which the Laplacian solve switches from dense to CG.
DENSE_SOLVER_THRESHOLD = 3000

CERTIFIED = "oscillatory localization certified"
NOT_CERTIFIED = "not certified (resistance bound vacuous)"


@dataclass
class ElectricNetwork:
    """Unit resistors plus per-node current injections (positive = in).

    Parallel resistors between the same node pair are allowed and kept as
    separate entries.
    """

    node_count: int
    resistor_edges: tuple[tuple[int, int], ...]
    injections: np.ndarray

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.resistor_edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"resistor self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"resistor edge ({u},{v}) out of range")
        self.resistor_edges = edges
        inj = np.asarray(self.injections, dtype=np.complex128)
        if inj.shape != (self.node_count,):
            raise ValueError(
                f"injections need shape ({self.node_count},), got {inj.shape}"
            )
        self.injections = inj


@dataclass
class FlowSolution:
    """Kirchhoff solution of an ElectricNetwork.

    `currents[i]` flows along resistor_edges[i] from its first to its second
    node; `potentials` are grounded at one node per component.  When any
    component's injections do not balance, no steady current exists:
    feasible is False and power is +infinity.
    """

    feasible: bool
    currents: np.ndarray | None
    potentials: np.ndarray | None
    power: float


@dataclass
class Circulation:
    """Skew-symmetric, flow-conserving function on the arcs of a graph."""

    graph: Graph
    flow: np.ndarray

    def __post_init__(self):
        flow = np.asarray(self.flow, dtype=np.complex128)
        if flow.shape != (self.graph.arc_count,):
            raise ValueError(
                f"circulation needs {self.graph.arc_count} arc values, got {flow.shape}"
            )
        self.flow = flow

    def check(self, tol: float = 1e-9) -> None:
        """Raise ValueError naming the first vertex where an invariant fails."""
        g = self.graph
        skew = self.flow + self.flow[np.arange(g.arc_count) ^ 1]
        bad = np.flatnonzero(np.abs(skew) > tol)
        if bad.size:
            u, v = g.arc_endpoints(int(bad[0]))
            raise ValueError(
                f"skew symmetry fails on edge ({u},{v}): "
                f"f(u,v) + f(v,u) = {skew[bad[0]]:.3e}"
            )
        net = self.flow[g.out_arcs].sum(axis=1)
        bad = np.flatnonzero(np.abs(net) > tol)
        if bad.size:
            raise ValueError(
                f"flow conservation fails at vertex {int(bad[0])}: "
                f"net outflow {net[bad[0]]:.3e}"
            )


# ======================================================================================
# Networks from starting states
# ======================================================================================


def network_from_state_double(
    state: ArcState, zero_tol: float = ZERO_AMPLITUDE_TOL
) -> ElectricNetwork:
    """Network on the bipartite double graph induced by a starting state.

    Nodes are v_out = v and v_in = n + v.  Each arc (u, v) with amplitude
    delta contributes a unit resistor {u_out, v_in} when delta = 0, otherwise
    an injection of delta at v_in balanced by -delta at u_out.
    """
    psi = ensure_normalized(state)
    g = psi.graph
    n = g.n
    resistors = []
    injections = np.zeros(2 * n, dtype=np.complex128)
    for a in range(g.arc_count):
        delta = psi.amplitudes[a]
        u, v = int(g.arc_tails[a]), int(g.arc_heads[a])
        if abs(delta) <= zero_tol:
            resistors.append((u, n + v))
        else:
            injections[n + v] += delta
            injections[u] -= delta
    return ElectricNetwork(2 * n, tuple(resistors), injections)


def network_from_selfflip_state(
    state: ArcState,
    zero_tol: float = ZERO_AMPLITUDE_TOL,
    selfflip_tol: float = 1e-9,
) -> ElectricNetwork:
    """Network on the base graph itself, valid only for self-flip states.

    Each undirected edge {u, v} (u < v) is visited once with delta = <uv|psi>:
    a unit resistor when delta = 0, otherwise inject delta at v, extract at u.
    """
    psi = ensure_normalized(state)
    if not is_selfflip_state(psi, selfflip_tol):
        raise ValueError(
            "self-flip network needs a self-flip state "
            "(<uv|psi> = -<vu|psi> on every edge)"
        )
    g = psi.graph
    resistors = []
    injections = np.zeros(g.n, dtype=np.complex128)
    for edge_id, (u, v) in enumerate(g.edges):
        delta = psi.amplitudes[2 * edge_id]
        if abs(delta) <= zero_tol:
            resistors.append((u, v))
        else:
            injections[v] += delta
            injections[u] -= delta
    return ElectricNetwork(g.n, tuple(resistors), injections)


# ======================================================================================
# Kirchhoff solver
# ======================================================================================


def _resistor_components(node_count: int, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    adjacency: list[list[int]] = [[] for _ in range(node_count)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    labels = np.full(node_count, -1, dtype=np.int64)
    label = 0
    for start in range(node_count):
        if labels[start] != -1:
            continue
        labels[start] = label
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if labels[v] == -1:
                    labels[v] = label
                    queue.append(v)
        label += 1
    return labels


def _grounded_potentials(
    node_count: int,
    edges: Sequence[tuple[int, int]],
    rhs: np.ndarray,
    labels: np.ndarray,
    ground: int | None,
    dense_threshold: int,
) -> np.ndarray:
    """Solve L x = rhs with one node per component pinned to potential 0.

    Real and imaginary parts are solved independently (L is real).  Dense
    factorization below `dense_threshold` nodes, diagonally preconditioned
    conjugate gradients above.
    """
    num_components = int(labels.max()) + 1
    grounds = np.zeros(num_components, dtype=np.int64)
    for component in range(num_components):
        grounds[component] = int(np.flatnonzero(labels == component)[0])
    if ground is not None:
        grounds[labels[ground]] = ground
    free = np.setdiff1d(np.arange(node_count), grounds)
    potentials = np.zeros(node_count, dtype=np.complex128)
    if free.size == 0:
        return potentials

    position = np.full(node_count, -1, dtype=np.int64)
    position[free] = np.arange(free.size)
    rhs_parts = np.column_stack([rhs.real[free], rhs.imag[free]])

    if node_count < dense_threshold:
        lap = np.zeros((node_count, node_count))
        for u, v in edges:
            lap[u, u] += 1.0
            lap[v, v] += 1.0
            lap[u, v] -= 1.0
            lap[v, u] -= 1.0
        solution = np.linalg.solve(lap[np.ix_(free, free)], rhs_parts)
    else:
        rows, cols, vals = [], [], []
        for u, v in edges:
            pu, pv = position[u], position[v]
            if pu >= 0:
                rows.append(pu)
                cols.append(pu)
                vals.append(1.0)
            if pv >= 0:
                rows.append(pv)
                cols.append(pv)
                vals.append(1.0)
            if pu >= 0 and pv >= 0:
                rows.extend((pu, pv))
                cols.extend((pv, pu))
                vals.extend((-1.0, -1.0))
        lap_ff = sp.csr_matrix((vals, (rows, cols)), shape=(free.size, free.size))
        solution = np.column_stack(
            [_pcg(lap_ff, rhs_parts[:, 0]), _pcg(lap_ff, rhs_parts[:, 1])]
        )

    potentials[free] = solution[:, 0] + 1j * solution[:, 1]
    return potentials


def _pcg(a: sp.csr_matrix, b: np.ndarray, tol: float = 1e-13, max_iter: int | None = None) -> np.ndarray:
    """Conjugate gradients with Jacobi preconditioning for SPD `a`."""
    n = b.size
    if max_iter is None:
        max_iter = 20 * n
    diag = a.diagonal()
    inv_diag = np.where(diag > 0, 1.0 / np.maximum(diag, 1e-300), 1.0)
    x = np.zeros(n)
    r = b - a @ x
    z = inv_diag * r
    p = z.copy()
    rz = float(r @ z)
    stop = tol * max(1.0, float(np.linalg.norm(b)))
    for _ in range(max_iter):
        if np.linalg.norm(r) <= stop:
            break
        ap = a @ p
        alpha = rz / float(p @ ap)
        x += alpha * p
        r -= alpha * ap
        z = inv_diag * r
        rz_next = float(r @ z)
        p = z + (rz_next / rz) * p
        rz = rz_next
    return x


def solve_network(
    net: ElectricNetwork,
    *,
    ground: int | None = None,
    feasibility_tol: float = FEASIBILITY_TOL,
    dense_threshold: int = DENSE_SOLVER_THRESHOLD,
) -> FlowSolution:
    """Kirchhoff currents, node potentials, and power of a network.

    A component whose injections do not sum to ~0 makes the network
    infeasible (power = +infinity); this is a value, not an error.  Currents
    are unique, so the result does not depend on the grounding choice
    (`ground` forces a specific node to be its component's ground, which is
    useful for testing exactly that).
    """
    labels = _resistor_components(net.node_count, net.resistor_edges)
    num_components = int(labels.max()) + 1
    component_sums = np.zeros(num_components, dtype=np.complex128)
    np.add.at(component_sums, labels, net.injections)
    if np.any(np.abs(component_sums) > feasibility_tol):
        return FlowSolution(feasible=False, currents=None, potentials=None, power=math.inf)

    potentials = _grounded_potentials(
        net.node_count, net.resistor_edges, net.injections, labels, ground, dense_threshold
    )
    if net.resistor_edges:
        tails = np.fromiter((u for u, _ in net.resistor_edges), dtype=np.int64)
        heads = np.fromiter((v for _, v in net.resistor_edges), dtype=np.int64)
        currents = potentials[tails] - potentials[heads]
    else:
        currents = np.zeros(0, dtype=np.complex128)
    power = float(np.vdot(currents, currents).real)
    return FlowSolution(feasible=True, currents=currents, potentials=potentials, power=power)


def resistance_distance(g: Graph, a: int, b: int) -> float:
    """Effective resistance between a and b with every edge a unit resistor."""
    if a == b:
        raise ValueError(f"resistance distance needs distinct vertices, got a = b = {a}")
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise ValueError(f"vertex out of range: a={a}, b={b}, n={g.n}")
    if g.component_labels[a] != g.component_labels[b]:
        raise ValueError(f"vertices {a} and {b} lie in different components")
    injections = np.zeros(g.n, dtype=np.complex128)
    injections[a] += 1.0
    injections[b] -= 1.0
    sol = solve_network(ElectricNetwork(g.n, g.edges, injections))
    return float((sol.potentials[a] - sol.potentials[b]).real)


# ======================================================================================
# Circulations <-> flip states
# ======================================================================================


def _double_arc_of(double_graph: Graph, n: int, u: int, v: int) -> int:
    # Arc u_out -> v_in; u < n <= n + v, so orientation bit is always 0.
    return double_graph.arc_index(u, n + v)


def _matching_double(g: Graph, circulation: Circulation) -> Graph:
    double = bipartite_double(g).graph
    if circulation.graph.edges != double.edges or circulation.graph.n != double.n:
        raise ValueError("circulation is not defined on the bipartite double of this graph")
    return double


def flip_to_circulation(g: Graph, state: ArcState, tol: float = 1e-9) -> Circulation:
    """Image of a flip state on g as a circulation on its bipartite double:
    f(u_out, v_in) = <uv|state>, extended skew-symmetrically."""
    if state.graph is not g:
        raise ValueError("state is not bound to the given graph")
    if not is_flip_state(state, tol):
        raise ValueError("state is not a flip state (nonzero vertex average)")
    double = bipartite_double(g).graph
    flow = np.zeros(double.arc_count, dtype=np.complex128)
    for a in range(g.arc_count):
        u, v = int(g.arc_tails[a]), int(g.arc_heads[a])
        b_arc = _double_arc_of(double, g.n, u, v)
        flow[b_arc] = state.amplitudes[a]
        flow[b_arc ^ 1] = -state.amplitudes[a]
    return Circulation(double, flow)


def circulation_to_flip(g: Graph, circulation: Circulation, tol: float = 1e-9) -> ArcState:
    """Inverse of flip_to_circulation; the result is an unnormalized flip
    state.  The circulation invariants are checked first."""
    double = _matching_double(g, circulation)
    circulation.check(tol)
    amps = np.zeros(g.arc_count, dtype=np.complex128)
    for a in range(g.arc_count):
        u, v = int(g.arc_tails[a]), int(g.arc_heads[a])
        amps[a] = circulation.flow[_double_arc_of(double, g.n, u, v)]
    return ArcState(g, amps)


def completed_circulation(
    g: Graph,
    state: ArcState,
    solution: FlowSolution,
    zero_tol: float = ZERO_AMPLITUDE_TOL,
) -> Circulation:
    """Extend a starting state to a circulation on the bipartite double by
    filling its zero-amplitude arcs with the solved resistor currents.

    `solution` must come from solve_network(network_from_state_double(state)).
    The resulting flip state phi' satisfies <state|phi'> = 1 and
    ||phi'||^2 = 1 + power.
    """
    if not solution.feasible:
        raise ValueError("cannot complete a circulation from an infeasible flow")
    psi = ensure_normalized(state)
    double = bipartite_double(g).graph
    flow = np.zeros(double.arc_count, dtype=np.complex128)
    for a in range(g.arc_count):
        delta = psi.amplitudes[a]
        u, v = int(g.arc_tails[a]), int(g.arc_heads[a])
        if abs(delta) <= zero_tol:
            value = solution.potentials[u] - solution.potentials[g.n + v]
        else:
            value = delta
        b_arc = _double_arc_of(double, g.n, u, v)
        flow[b_arc] = value
        flow[b_arc ^ 1] = -value
    return Circulation(double, flow)


# ======================================================================================
# Bounds
# ======================================================================================


def bounds_from_power(power: float, mode: str) -> tuple[float, float]:
    """(alpha_sq lower bound, return-overlap lower bound) from dissipation.

    mode "double": the network lives on the bipartite double and contributes
    power P once; mode "selfflip": the network lives on G and every resistor
    current counts twice (both arc orientations), so P enters doubled.
    Infinite power gives the vacuous pair (0, -1).
    """
    if mode not in ("double", "selfflip"):
        raise ValueError(f"mode must be 'double' or 'selfflip', got {mode!r}")
    if power < 0:
        raise ValueError(f"power must be nonnegative, got {power}")
    if math.isinf(power):
        return 0.0, -1.0
    effective = power if mode == "double" else 2.0 * power
    return 1.0 / (1.0 + effective), (1.0 - effective) / (1.0 + effective)


def parallel_resistance_identity(resistance: float) -> float:
    """Resistance of a unit resistor in parallel with `resistance`:
    1 - 1/(1 + R)."""
    if resistance < 0:
        raise ValueError(f"resistance must be nonnegative, got {resistance}")
    return 1.0 - 1.0 / (1.0 + resistance)


def paths_resistance_bound(lengths: Sequence[int]) -> float:
    """Harmonic-sum upper bound on resistance from edge-disjoint path lengths."""
    if not lengths:
        raise ValueError("paths bound needs at least one path")
    if any(length < 1 for length in lengths):
        raise ValueError(f"path lengths must be >= 1, got {tuple(lengths)}")
    return 1.0 / sum(1.0 / length for length in lengths)


def localization_verdict(omega: float) -> str:
    """Verdict string for a resistance distance between the relevant
    terminals: below 1/2 certifies (oscillatory) localization."""
    return CERTIFIED if omega < 0.5 else NOT_CERTIFIED


# ======================================================================================
# Thomson-principle test support
# ======================================================================================


def random_resistor_circulation(
    net: ElectricNetwork,
    rng: np.random.Generator,
    scale: float = 1e-3,
) -> np.ndarray | None:
    """Random circulation supported on the resistor edges, scaled to `scale`.

    Projects a random per-edge vector onto the kernel of the incidence map
    (conservation at every node); returns None when the resistor graph is a
    forest and therefore carries no circulation at all.
    """
    count = len(net.resistor_edges)
    if count == 0:
        return None
    raw = rng.standard_normal(count)
    tails = np.fromiter((u for u, _ in net.resistor_edges), dtype=np.int64)
    heads = np.fromiter((v for _, v in net.resistor_edges), dtype=np.int64)
    divergence = np.zeros(net.node_count, dtype=np.complex128)
    np.add.at(divergence, tails, raw)
    np.add.at(divergence, heads, -raw)
    labels = _resistor_components(net.node_count, net.resistor_edges)
    potentials = _grounded_potentials(
        net.node_count, net.resistor_edges, divergence, labels, None, DENSE_SOLVER_THRESHOLD
    )
    projected = raw - (potentials[tails] - potentials[heads]).real
    nrm = float(np.linalg.norm(projected))
    if nrm <= 1e-9:
        return None
    return projected * (scale / nrm)
