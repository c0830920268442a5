"""Flip/uniform/remainder decomposition of starting states and the
two-state-oscillation machinery built on it.

A *flip state* has zero average outgoing and incoming amplitude at every
vertex; flip states and the uniform states together span the eigenspace of
U^2 with eigenvalue 1, so the squared projections alpha_sq (flip) and
beta_sq (uniform) of a starting state bound how strongly the walk returns to
it at even steps and to its flipped version at odd steps:

    even:  |<psi0|U^(2t)|psi0>|        >= 2 (alpha_sq + beta_sq) - 1
    odd:   |<~psi0|U^(2t+1)|psi0>|     >= 2 max(alpha_sq, beta_sq) - 1

Negative bounds are vacuous but reported as-is.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, bipartite_partition
from .walk import (
    ArcState,
    ensure_normalized,
    dense_walk_matrix,
    flip_transform,
    overlap,
    uniform_state,
    vertex_averages,
    walk_step,
)

__all__ = [
    "CapacityError",
    "Decomposition",
    "BoundReport",
    "OverlapSeries",
    "is_flip_state",
    "flip_projection",
    "uniform_coefficients",
    "decompose",
    "oscillation_bounds",
    "measured_overlaps",
    "one_eigenspace_u2",
    "vertex_indicator_basis",
    "DENSE_ORACLE_CEILING",
]

DENSE_ORACLE_CEILING = 2000


class CapacityError(RuntimeError):
    """An exact dense computation was requested above its size ceiling."""


@dataclass
class Decomposition:
    """psi = flip_component + uniform_component + remainder_component with
    pairwise-orthogonal parts; the *_sq fields are their squared norms."""

    alpha_sq: float
    beta_sq: float
    gamma_sq: float
    flip_component: ArcState
    uniform_component: ArcState
    remainder_component: ArcState


@dataclass(frozen=True)
class BoundReport:
    even_bound: float
    odd_bound: float

    @property
    def even_vacuous(self) -> bool:
        return self.even_bound < 0.0

    @property
    def odd_vacuous(self) -> bool:
        return self.odd_bound < 0.0


@dataclass(frozen=True)
class OverlapSeries:
    """Measured return overlaps: even_overlaps[t] = |<psi0|U^(2t)|psi0>|,
    odd_overlaps[t] = |<~psi0|U^(2t+1)|psi0>|."""

    even_overlaps: np.ndarray
    odd_overlaps: np.ndarray


def is_flip_state(state: ArcState, tol: float = 1e-9) -> bool:
    """True iff every vertex's average outgoing and incoming amplitude is
    within `tol` of zero."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    averages = vertex_averages(state)
    worst = max(np.max(np.abs(averages.avg_out)), np.max(np.abs(averages.avg_in)))
    return bool(worst <= tol)


# ======================================================================================
# The flip subspace as an orthogonal complement
# ======================================================================================
#
# The flip conditions say the state is orthogonal to the 2n per-vertex
# indicator vectors (1/sqrt(d) on the arcs leaving u, resp. entering u), so
# the flip subspace is the orthogonal complement of their span.  The
# indicators are unit vectors but not mutually orthogonal, and they carry one
# linear dependency per connected component of the bipartite double graph.

_indicator_cache: "weakref.WeakKeyDictionary[Graph, np.ndarray]" = weakref.WeakKeyDictionary()


def vertex_indicator_basis(g: Graph) -> np.ndarray:
    """Orthonormal basis (columns) for the span of the 2n out/in indicators.

    Computed by modified Gram-Schmidt with a re-orthogonalization pass and a
    1e-12 drop tolerance for the dependent vectors.
    """
    cached = _indicator_cache.get(g)
    if cached is not None:
        return cached
    weight = 1.0 / np.sqrt(g.degree)
    columns = np.zeros((g.arc_count, 2 * g.n))
    for u in range(g.n):
        columns[g.out_arcs[u], u] = weight
        columns[g.out_arcs[u] ^ 1, g.n + u] = weight
    basis = _orthonormalize(columns, drop_tol=1e-12)
    _indicator_cache[g] = basis
    return basis


def _orthonormalize(columns: np.ndarray, drop_tol: float) -> np.ndarray:
    rows, count = columns.shape
    q = np.empty((rows, count))
    rank = 0
    for j in range(count):
        w = columns[:, j].copy()
        for _ in range(2):  # second pass keeps orthogonality at machine level
            if rank:
                w -= q[:, :rank] @ (q[:, :rank].T @ w)
        nrm = np.linalg.norm(w)
        if nrm > drop_tol:
            q[:, rank] = w / nrm
            rank += 1
    return q[:, :rank].copy()


def flip_projection(state: ArcState) -> tuple[float, ArcState]:
    """Squared norm of the orthogonal projection onto the flip subspace and
    the (unnormalized) projected component.

    Over all normalized flip states phi, alpha_sq is the maximum of
    |<state|phi>|^2, attained by the normalized flip component.
    """
    psi = ensure_normalized(state)
    basis = vertex_indicator_basis(psi.graph)
    flip_amps = psi.amplitudes - basis @ (basis.T @ psi.amplitudes)
    alpha_sq = float(np.vdot(flip_amps, flip_amps).real)
    return alpha_sq, ArcState(psi.graph, flip_amps)


def uniform_coefficients(state: ArcState) -> tuple[float, ArcState]:
    """Squared overlap with the uniform states and the projected component.

    Non-bipartite graphs have the single uniform state sigma_V; bipartite
    graphs have the two-dimensional span of sigma_X and sigma_Y.
    """
    psi = ensure_normalized(state)
    g = psi.graph
    partition = bipartite_partition(g)
    if partition is None:
        sigma = uniform_state(g)
        beta = overlap(sigma, psi)
        return float(abs(beta) ** 2), ArcState(g, beta * sigma.amplitudes)
    sigma_x = uniform_state(g, partition.partite_x)
    sigma_y = uniform_state(g, partition.partite_y)
    beta_x = overlap(sigma_x, psi)
    beta_y = overlap(sigma_y, psi)
    component = beta_x * sigma_x.amplitudes + beta_y * sigma_y.amplitudes
    return float(abs(beta_x) ** 2 + abs(beta_y) ** 2), ArcState(g, component)


def decompose(state: ArcState) -> Decomposition:
    """Split a normalized state into flip + uniform + remainder parts."""
    psi = ensure_normalized(state)
    alpha_sq, flip_component = flip_projection(psi)
    beta_sq, uniform_component = uniform_coefficients(psi)
    remainder = psi.amplitudes - flip_component.amplitudes - uniform_component.amplitudes
    gamma_sq = float(np.vdot(remainder, remainder).real)
    return Decomposition(
        alpha_sq=alpha_sq,
        beta_sq=beta_sq,
        gamma_sq=gamma_sq,
        flip_component=flip_component,
        uniform_component=uniform_component,
        remainder_component=ArcState(psi.graph, remainder),
    )


def oscillation_bounds(dec: Decomposition) -> BoundReport:
    """Even/odd return-overlap lower bounds implied by a decomposition."""
    return BoundReport(
        even_bound=2.0 * (dec.alpha_sq + dec.beta_sq) - 1.0,
        odd_bound=2.0 * max(dec.alpha_sq, dec.beta_sq) - 1.0,
    )


def measured_overlaps(state: ArcState, t_max: int) -> OverlapSeries:
    """Return overlaps from a single evolution sweep up to step t_max.

    even_overlaps covers steps 0, 2, ..., odd_overlaps steps 1, 3, ...;
    odd steps are measured against the flipped starting state.
    """
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    psi0 = ensure_normalized(state)
    flipped = flip_transform(psi0)
    even = [abs(overlap(psi0, psi0))]
    odd = []
    current = psi0
    for t in range(1, t_max + 1):
        current = walk_step(current)
        if t % 2 == 0:
            even.append(abs(overlap(psi0, current)))
        else:
            odd.append(abs(overlap(flipped, current)))
    return OverlapSeries(even_overlaps=np.array(even), odd_overlaps=np.array(odd))


def one_eigenspace_u2(
    g: Graph,
    ceiling: int = DENSE_ORACLE_CEILING,
    singular_value_tol: float = 1e-9,
) -> np.ndarray:
    """Orthonormal basis (columns) for the eigenspace of U^2 with eigenvalue 1.

    Materializes U^2 densely and extracts the nullspace of U^2 - I from its
    singular value decomposition; cubic in the arc count, hence the ceiling.
    """
    if g.arc_count > ceiling:
        raise CapacityError(
            f"dense eigenspace oracle limited to {ceiling} arcs, "
            f"graph has {g.arc_count}"
        )
    u = dense_walk_matrix(g)
    shifted = u @ u - np.eye(g.arc_count)
    _, singular_values, vt = np.linalg.svd(shifted)
    keep = singular_values <= singular_value_tol
    return vt[keep].T.copy()
