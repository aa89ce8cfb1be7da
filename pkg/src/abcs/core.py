"""(alpha, beta)-core peeling and community extraction over mask views."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .graph import AttributedBipartiteGraph, Layer, SubgraphMask, VertexRef, alive_edges


@dataclass(frozen=True)
class CoreParams:
    alpha: int
    beta: int

    def __post_init__(self):
        if int(self.alpha) < 1 or int(self.beta) < 1:
            raise ValueError(f"alpha and beta must be positive, got ({self.alpha}, {self.beta})")


@dataclass
class PeelResult:
    """Surviving community of q: sorted upper/lower index arrays."""

    upper: np.ndarray
    lower: np.ndarray
    exists: bool

    @classmethod
    def missing(cls) -> "PeelResult":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), False)

    @property
    def upper_size(self) -> int:
        return len(self.upper)

    @property
    def lower_size(self) -> int:
        return len(self.lower)

    def to_mask(self, g: AttributedBipartiteGraph) -> SubgraphMask:
        return SubgraphMask.from_indices(g, self.upper, self.lower)

    def vertex_sets(self) -> tuple[frozenset[int], frozenset[int]]:
        return frozenset(self.upper.tolist()), frozenset(self.lower.tolist())


def peel_edges(eu: np.ndarray, ev: np.ndarray, q: int, alpha: int, beta: int):
    """Community of upper vertex ``q`` in the graph spanned by edges (eu, ev).

    Vertices without an edge in the list are absent. Returns sorted
    ``(upper, lower)`` global index arrays, or None once q is peeled away.
    Cost is proportional to the edge list, not to the host graph.
    """
    if len(eu) == 0:
        return None
    uu, eu_l = np.unique(eu, return_inverse=True)
    qi = np.searchsorted(uu, q)
    if qi >= len(uu) or uu[qi] != q:
        return None
    vv, ev_l = np.unique(ev, return_inverse=True)
    nu, nv = len(uu), len(vv)
    alive_u = np.ones(nu, dtype=bool)
    alive_v = np.ones(nv, dtype=bool)
    while True:
        du = np.bincount(eu_l, minlength=nu)
        dv = np.bincount(ev_l, minlength=nv)
        bad_u = alive_u & (du < alpha)
        if bad_u[qi]:
            return None
        bad_v = alive_v & (dv < beta)
        if not (bad_u.any() or bad_v.any()):
            break
        alive_u &= ~bad_u
        alive_v &= ~bad_v
        keep = alive_u[eu_l] & alive_v[ev_l]
        eu_l, ev_l = eu_l[keep], ev_l[keep]
        if len(eu_l) == 0:
            return None
    # degrees cannot drop when other components are discarded, so no re-peel
    graph = coo_matrix((np.ones(len(eu_l), dtype=np.int8), (eu_l, nu + ev_l)),
                       shape=(nu + nv, nu + nv)).tocsr()
    reach = breadth_first_order(graph, qi, directed=False, return_predecessors=False)
    reach.sort()
    split = np.searchsorted(reach, nu)
    return uu[reach[:split]], vv[reach[split:] - nu]


def peel_community(g: AttributedBipartiteGraph, mask: SubgraphMask, q: VertexRef,
                   params: CoreParams) -> PeelResult:
    """Degree-constrained connected community of ``q`` inside ``mask``.

    Peels upper vertices of degree < alpha and lower vertices of degree
    < beta to a fixed point, then keeps q's connected component.
    """
    if q.layer != Layer.UPPER:
        raise ValueError("query vertex must be in the upper layer")
    if not mask.is_alive(q):
        return PeelResult.missing()
    eu, ev = alive_edges(g, mask)
    found = peel_edges(eu, ev, q.index, params.alpha, params.beta)
    if found is None:
        return PeelResult.missing()
    return PeelResult(found[0], found[1], True)


def core_mask(g: AttributedBipartiteGraph, params: CoreParams,
              mask: SubgraphMask | None = None, order: Sequence[VertexRef] | None = None) -> SubgraphMask:
    """(alpha, beta)-core of ``mask`` by queue peeling, one vertex at a time.

    ``order`` fixes the sequence in which vertices are first examined; the
    fixed point does not depend on it.
    """
    mask = SubgraphMask.full(g) if mask is None else mask
    out = mask.copy()
    deg_u = np.zeros(g.n_upper, dtype=np.int64)
    deg_v = np.zeros(g.n_lower, dtype=np.int64)
    eu, ev = alive_edges(g, mask)
    np.add.at(deg_u, eu, 1)
    np.add.at(deg_v, ev, 1)
    removed = mask.removed_edges
    if order is None:
        order = [VertexRef(Layer.UPPER, int(u)) for u in out.upper_indices()]
        order += [VertexRef(Layer.LOWER, int(v)) for v in out.lower_indices()]
    queue = deque(order)
    while queue:
        layer, x = queue.popleft()
        if layer == Layer.UPPER:
            if not out.alive_upper[x] or deg_u[x] >= params.alpha:
                continue
            out.alive_upper[x] = False
            for v in g.upper_neighbors(x).tolist():
                if out.alive_lower[v] and (x, v) not in removed:
                    deg_v[v] -= 1
                    if deg_v[v] < params.beta:
                        queue.append(VertexRef(Layer.LOWER, v))
        else:
            if not out.alive_lower[x] or deg_v[x] >= params.beta:
                continue
            out.alive_lower[x] = False
            for u in g.lower_neighbors(x).tolist():
                if out.alive_upper[u] and (u, x) not in removed:
                    deg_u[u] -= 1
                    if deg_u[u] < params.alpha:
                        queue.append(VertexRef(Layer.UPPER, u))
    return out


def core_decompose(g: AttributedBipartiteGraph, params: CoreParams,
                   mask: SubgraphMask | None = None) -> list[SubgraphMask]:
    """All maximal connected components of the (alpha, beta)-core.

    Components are ordered by their smallest upper index.
    """
    core = core_mask(g, params, mask)
    eu, ev = alive_edges(g, core)
    if len(eu) == 0:
        return []
    n = g.n_upper + g.n_lower
    graph = coo_matrix((np.ones(len(eu), dtype=np.int8), (eu, g.n_upper + ev)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    alive = np.concatenate([core.alive_upper, core.alive_lower])
    comps: dict[int, SubgraphMask] = {}
    for node in np.flatnonzero(alive).tolist():
        lab = int(labels[node])
        comp = comps.get(lab)
        if comp is None:
            comp = comps[lab] = SubgraphMask.empty(g)
        if node < g.n_upper:
            comp.alive_upper[node] = True
        else:
            comp.alive_lower[node - g.n_upper] = True
    return list(comps.values())


def upper_core_vertices(g: AttributedBipartiteGraph, params: CoreParams) -> np.ndarray:
    """Upper vertices whose (alpha, beta)-community exists."""
    return core_mask(g, params).upper_indices()
