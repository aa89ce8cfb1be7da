"""Attributed bipartite graph with dense per-layer ids and mask views."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class Layer(IntEnum):
    UPPER = 0
    LOWER = 1


class VertexRef(NamedTuple):
    layer: Layer
    index: int

    @classmethod
    def upper(cls, index: int) -> "VertexRef":
        return cls(Layer.UPPER, int(index))

    @classmethod
    def lower(cls, index: int) -> "VertexRef":
        return cls(Layer.LOWER, int(index))


class KeywordTable:
    """Bidirectional string <-> dense integer id map."""

    def __init__(self, words: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._words: list[str] = []
        for w in words:
            self.intern(w)

    def intern(self, word: str) -> int:
        kid = self._ids.get(word)
        if kid is None:
            kid = len(self._words)
            self._ids[word] = kid
            self._words.append(word)
        return kid

    def id(self, word: str) -> int:
        return self._ids[word]

    def get(self, word: str, default=None):
        return self._ids.get(word, default)

    def word(self, kid: int) -> str:
        return self._words[kid]

    def words(self, ids: Iterable[int]) -> list[str]:
        return [self._words[i] for i in ids]

    def __contains__(self, word: str) -> bool:
        return word in self._ids

    def __len__(self) -> int:
        return len(self._words)

    def __iter__(self):
        return iter(self._words)

    def copy(self) -> "KeywordTable":
        return KeywordTable(self._words)


def _pack_bits(keyword_sets: Sequence[tuple[int, ...]], n_words: int) -> np.ndarray:
    bits = np.zeros((len(keyword_sets), n_words), dtype=np.uint64)
    for i, kws in enumerate(keyword_sets):
        for k in kws:
            bits[i, k >> 6] |= np.uint64(1 << (k & 63))
    return bits


def _target_bits(ids: Iterable[int], n_words: int) -> np.ndarray | None:
    target = np.zeros(n_words, dtype=np.uint64)
    for k in ids:
        if (k >> 6) >= n_words:
            return None  # keyword unknown to the graph
        target[k >> 6] |= np.uint64(1 << (k & 63))
    return target


class AttributedBipartiteGraph:
    """Immutable two-layer graph; every edge joins an upper and a lower vertex.

    Edges are stored sorted by (upper, lower) and indexed both ways in CSR
    form. Keyword sets are sorted id tuples; a packed uint64 bitset copy of
    them backs the vectorized containment filters.
    """

    def __init__(
        self,
        n_upper: int,
        n_lower: int,
        edges: Iterable[tuple[int, int]],
        upper_keywords: Sequence[Iterable[int]] | None = None,
        lower_keywords: Sequence[Iterable[int]] | None = None,
        keywords: KeywordTable | None = None,
        upper_labels: Sequence[str] | None = None,
        lower_labels: Sequence[str] | None = None,
    ):
        self.n_upper = int(n_upper)
        self.n_lower = int(n_lower)
        pairs = np.asarray(sorted(set((int(u), int(v)) for u, v in edges)), dtype=np.int64)
        pairs = pairs.reshape(-1, 2)
        if len(pairs):
            if pairs[:, 0].min() < 0 or pairs[:, 0].max() >= self.n_upper:
                raise ValueError("upper endpoint out of range")
            if pairs[:, 1].min() < 0 or pairs[:, 1].max() >= self.n_lower:
                raise ValueError("lower endpoint out of range")
        self.edge_u = pairs[:, 0].copy()
        self.edge_v = pairs[:, 1].copy()
        self.m = len(pairs)

        self.upper_indptr = np.zeros(self.n_upper + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.edge_u, minlength=self.n_upper), out=self.upper_indptr[1:])
        self.upper_adj = self.edge_v.copy()

        order = np.lexsort((self.edge_u, self.edge_v))
        self.lower_indptr = np.zeros(self.n_lower + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.edge_v, minlength=self.n_lower), out=self.lower_indptr[1:])
        self.lower_adj = self.edge_u[order]

        self.keywords = keywords if keywords is not None else KeywordTable()
        self.upper_keywords = _normalize_sets(upper_keywords, self.n_upper)
        self.lower_keywords = _normalize_sets(lower_keywords, self.n_lower)
        top = max((k for s in self.upper_keywords + self.lower_keywords for k in s), default=-1)
        if top >= len(self.keywords):
            raise ValueError(f"keyword id {top} not in keyword table")
        self.n_words = max(1, (len(self.keywords) + 63) // 64)
        self.upper_bits = _pack_bits(self.upper_keywords, self.n_words)
        self.lower_bits = _pack_bits(self.lower_keywords, self.n_words)

        self.upper_labels = _labels(upper_labels, self.n_upper)
        self.lower_labels = _labels(lower_labels, self.n_lower)
        self._upper_lookup = {lab: i for i, lab in enumerate(self.upper_labels)}
        self._lower_lookup = {lab: i for i, lab in enumerate(self.lower_labels)}
        if len(self._upper_lookup) != self.n_upper or len(self._lower_lookup) != self.n_lower:
            raise ValueError("vertex labels must be unique within a layer")

        for arr in (self.edge_u, self.edge_v, self.upper_indptr, self.upper_adj,
                    self.lower_indptr, self.lower_adj, self.upper_bits, self.lower_bits):
            arr.setflags(write=False)

    @classmethod
    def from_labeled(
        cls,
        edges: Iterable[tuple[str, str]],
        upper_attrs: dict[str, Iterable[str]] | None = None,
        lower_attrs: dict[str, Iterable[str]] | None = None,
        keywords: KeywordTable | None = None,
    ) -> "AttributedBipartiteGraph":
        """Build from (upper_label, lower_label) pairs and label -> keywords maps.

        Vertices get dense ids in first-seen order: attribute maps first,
        then the edge list.
        """
        upper_attrs = upper_attrs or {}
        lower_attrs = lower_attrs or {}
        edges = [(str(u), str(v)) for u, v in edges]
        up: dict[str, int] = {}
        lo: dict[str, int] = {}
        for lab in upper_attrs:
            up.setdefault(str(lab), len(up))
        for lab in lower_attrs:
            lo.setdefault(str(lab), len(lo))
        for u, v in edges:
            up.setdefault(u, len(up))
            lo.setdefault(v, len(lo))
        table = keywords if keywords is not None else KeywordTable()
        ukw: list[list[int]] = [[] for _ in up]
        lkw: list[list[int]] = [[] for _ in lo]
        for lab, words in upper_attrs.items():
            ukw[up[str(lab)]] = [table.intern(w) for w in words]
        for lab, words in lower_attrs.items():
            lkw[lo[str(lab)]] = [table.intern(w) for w in words]
        return cls(
            len(up), len(lo), [(up[u], lo[v]) for u, v in edges],
            ukw, lkw, table, list(up), list(lo),
        )

    # -- basic accessors -------------------------------------------------

    def layer_size(self, layer: Layer) -> int:
        return self.n_upper if layer == Layer.UPPER else self.n_lower

    def upper_neighbors(self, u: int) -> np.ndarray:
        return self.upper_adj[self.upper_indptr[u]:self.upper_indptr[u + 1]]

    def lower_neighbors(self, v: int) -> np.ndarray:
        return self.lower_adj[self.lower_indptr[v]:self.lower_indptr[v + 1]]

    def neighbors(self, x: VertexRef) -> list[VertexRef]:
        if x.layer == Layer.UPPER:
            return [VertexRef(Layer.LOWER, int(v)) for v in self.upper_neighbors(x.index)]
        return [VertexRef(Layer.UPPER, int(u)) for u in self.lower_neighbors(x.index)]

    def degree(self, x: VertexRef) -> int:
        ptr = self.upper_indptr if x.layer == Layer.UPPER else self.lower_indptr
        return int(ptr[x.index + 1] - ptr[x.index])

    def upper_degrees(self) -> np.ndarray:
        return np.diff(self.upper_indptr)

    def lower_degrees(self) -> np.ndarray:
        return np.diff(self.lower_indptr)

    def keyword_ids(self, x: VertexRef) -> tuple[int, ...]:
        if x.layer == Layer.UPPER:
            return self.upper_keywords[x.index]
        return self.lower_keywords[x.index]

    def keywords_of(self, x: VertexRef) -> list[str]:
        return self.keywords.words(self.keyword_ids(x))

    def label(self, x: VertexRef) -> str:
        labels = self.upper_labels if x.layer == Layer.UPPER else self.lower_labels
        return labels[x.index]

    def upper_index(self, label: str) -> int:
        return self._upper_lookup[str(label)]

    def lower_index(self, label: str) -> int:
        return self._lower_lookup[str(label)]

    def vertex(self, label: str, layer: Layer = Layer.UPPER) -> VertexRef:
        if layer == Layer.UPPER:
            return VertexRef(Layer.UPPER, self.upper_index(label))
        return VertexRef(Layer.LOWER, self.lower_index(label))

    def ids_of(self, words: Iterable[str]) -> tuple[int, ...]:
        """Sorted keyword ids for ``words``; raises KeyError on unknown words."""
        return tuple(sorted({self.keywords.id(w) for w in words}))

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def upper_containing(self, kw: Iterable[int]) -> np.ndarray:
        """Boolean array over upper vertices: which contain every id in ``kw``."""
        return contains(self.upper_bits, kw, self.n_words)

    def lower_containing(self, kw: Iterable[int]) -> np.ndarray:
        return contains(self.lower_bits, kw, self.n_words)

    def lower_vocabulary(self) -> tuple[int, ...]:
        return tuple(sorted({k for s in self.lower_keywords for k in s}))

    def __repr__(self) -> str:
        return (f"AttributedBipartiteGraph(n_upper={self.n_upper}, n_lower={self.n_lower}, "
                f"m={self.m}, keywords={len(self.keywords)})")


def _normalize_sets(sets, n) -> tuple[tuple[int, ...], ...]:
    if sets is None:
        return tuple(() for _ in range(n))
    out = tuple(tuple(sorted(set(int(k) for k in s))) for s in sets)
    if len(out) != n:
        raise ValueError(f"expected {n} keyword sets, got {len(out)}")
    return out


def _labels(labels, n) -> list[str]:
    if labels is None:
        return [str(i + 1) for i in range(n)]
    labels = [str(x) for x in labels]
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    return labels


def contains(bits: np.ndarray, kw: Iterable[int], n_words: int) -> np.ndarray:
    target = _target_bits(kw, n_words)
    if target is None:
        return np.zeros(len(bits), dtype=bool)
    if not target.any():
        return np.ones(len(bits), dtype=bool)
    nz = np.flatnonzero(target)
    if len(nz) == 1:
        w = nz[0]
        return (bits[:, w] & target[w]) == target[w]
    return ((bits[:, nz] & target[nz]) == target[nz]).all(axis=1)


@dataclass
class SubgraphMask:
    """Vertex/edge liveness view over a graph; never a copy of it."""

    alive_upper: np.ndarray
    alive_lower: np.ndarray
    removed_edges: frozenset = field(default_factory=frozenset)

    @classmethod
    def full(cls, g: AttributedBipartiteGraph) -> "SubgraphMask":
        return cls(np.ones(g.n_upper, dtype=bool), np.ones(g.n_lower, dtype=bool))

    @classmethod
    def empty(cls, g: AttributedBipartiteGraph) -> "SubgraphMask":
        return cls(np.zeros(g.n_upper, dtype=bool), np.zeros(g.n_lower, dtype=bool))

    @classmethod
    def from_indices(cls, g: AttributedBipartiteGraph, upper, lower) -> "SubgraphMask":
        mask = cls.empty(g)
        mask.alive_upper[np.asarray(upper, dtype=np.int64)] = True
        mask.alive_lower[np.asarray(lower, dtype=np.int64)] = True
        return mask

    def copy(self) -> "SubgraphMask":
        return SubgraphMask(self.alive_upper.copy(), self.alive_lower.copy(), self.removed_edges)

    def is_alive(self, x: VertexRef) -> bool:
        arr = self.alive_upper if x.layer == Layer.UPPER else self.alive_lower
        return bool(arr[x.index])

    def kill(self, x: VertexRef) -> None:
        arr = self.alive_upper if x.layer == Layer.UPPER else self.alive_lower
        arr[x.index] = False

    def upper_indices(self) -> np.ndarray:
        return np.flatnonzero(self.alive_upper)

    def lower_indices(self) -> np.ndarray:
        return np.flatnonzero(self.alive_lower)

    def vertex_count(self) -> int:
        return int(self.alive_upper.sum() + self.alive_lower.sum())

    def is_empty(self) -> bool:
        return not (self.alive_upper.any() or self.alive_lower.any())

    def issubset(self, other: "SubgraphMask") -> bool:
        return bool(np.all(other.alive_upper[self.alive_upper])
                    and np.all(other.alive_lower[self.alive_lower]))

    def __and__(self, other: "SubgraphMask") -> "SubgraphMask":
        return SubgraphMask(self.alive_upper & other.alive_upper,
                            self.alive_lower & other.alive_lower,
                            self.removed_edges | other.removed_edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgraphMask):
            return NotImplemented
        return (np.array_equal(self.alive_upper, other.alive_upper)
                and np.array_equal(self.alive_lower, other.alive_lower)
                and self.removed_edges == other.removed_edges)

    def vertex_sets(self) -> tuple[frozenset[int], frozenset[int]]:
        return (frozenset(self.upper_indices().tolist()),
                frozenset(self.lower_indices().tolist()))


def alive_edges(g: AttributedBipartiteGraph, mask: SubgraphMask) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays (upper, lower) of the edges active under ``mask``."""
    keep = mask.alive_upper[g.edge_u] & mask.alive_lower[g.edge_v]
    if mask.removed_edges:
        for u, v in mask.removed_edges:
            lo, hi = g.upper_indptr[u], g.upper_indptr[u + 1]
            pos = lo + np.searchsorted(g.upper_adj[lo:hi], v)
            if pos < hi and g.upper_adj[pos] == v:
                keep[pos] = False
    return g.edge_u[keep], g.edge_v[keep]


def csr_gather(indptr: np.ndarray, adj: np.ndarray, rows: np.ndarray):
    """Concatenated adjacency of ``rows``: (position of owning row, neighbor)."""
    starts = indptr[rows]
    lens = indptr[rows + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    pos = np.repeat(starts - (np.cumsum(lens) - lens), lens) + np.arange(total)
    return np.repeat(np.arange(len(rows)), lens), adj[pos]


def induced_edges(g: AttributedBipartiteGraph, upper: np.ndarray,
                  lower_alive: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Edges between the upper index array ``upper`` and live lower vertices.

    Work is proportional to the summed degree of ``upper``.
    """
    owner, ev = csr_gather(g.upper_indptr, g.upper_adj, upper)
    keep = lower_alive[ev]
    return upper[owner[keep]], ev[keep]


def effective_degree(g: AttributedBipartiteGraph, mask: SubgraphMask, x: VertexRef) -> int:
    """Number of live, non-removed edges at ``x``; 0 for a dead vertex."""
    if not mask.is_alive(x):
        return 0
    if x.layer == Layer.UPPER:
        nbrs = g.upper_neighbors(x.index)
        alive = mask.alive_lower[nbrs]
        removed = {v for u, v in mask.removed_edges if u == x.index}
    else:
        nbrs = g.lower_neighbors(x.index)
        alive = mask.alive_upper[nbrs]
        removed = {u for u, v in mask.removed_edges if v == x.index}
    deg = int(alive.sum())
    if removed:
        deg -= sum(1 for y, a in zip(nbrs.tolist(), alive.tolist()) if a and y in removed)
    return deg


def keyword_filtered_mask(g: AttributedBipartiteGraph, upper_set: Iterable[int] = (),
                          lower_set: Iterable[int] = ()) -> SubgraphMask:
    """Keep upper vertices containing ``upper_set`` and lower ones containing ``lower_set``."""
    return SubgraphMask(g.upper_containing(upper_set), g.lower_containing(lower_set))


def connected_component_of(g: AttributedBipartiteGraph, mask: SubgraphMask,
                           q: VertexRef) -> SubgraphMask:
    """Restrict ``mask`` to the connected component containing ``q`` (BFS)."""
    out = SubgraphMask.empty(g)
    out.removed_edges = mask.removed_edges
    if not mask.is_alive(q):
        return out
    removed = mask.removed_edges
    seen_u, seen_v = out.alive_upper, out.alive_lower
    if q.layer == Layer.UPPER:
        seen_u[q.index] = True
    else:
        seen_v[q.index] = True
    queue = deque([q])
    while queue:
        layer, x = queue.popleft()
        if layer == Layer.UPPER:
            for v in g.upper_neighbors(x).tolist():
                if mask.alive_lower[v] and not seen_v[v] and (x, v) not in removed:
                    seen_v[v] = True
                    queue.append(VertexRef(Layer.LOWER, v))
        else:
            for u in g.lower_neighbors(x).tolist():
                if mask.alive_upper[u] and not seen_u[u] and (u, x) not in removed:
                    seen_u[u] = True
                    queue.append(VertexRef(Layer.UPPER, u))
    return out
