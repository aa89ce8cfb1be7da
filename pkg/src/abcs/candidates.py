"""Candidate keyword-pair generation, support lists and anti-monotone pruning."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import CoreParams, PeelResult
from .graph import AttributedBipartiteGraph, contains
from .timing import Deadline

KeywordSet = tuple[int, ...]

SUBSET_CAP = 20


class CapExceeded(ValueError):
    pass


class Scope(Enum):
    ALL_LOWER = "all"
    NEIGHBORS = "neighbors"


class Mode(Enum):
    SINGLETONS = "singletons"
    ALL_SUBSETS = "subsets"


@dataclass(frozen=True, order=True)
class CandidatePair:
    upper: KeywordSet
    lower: KeywordSet

    @property
    def size(self) -> int:
        return len(self.upper) + len(self.lower)

    def union(self, other: "CandidatePair") -> "CandidatePair":
        return CandidatePair(tuple(sorted(set(self.upper) | set(other.upper))),
                             tuple(sorted(set(self.lower) | set(other.lower))))

    def contains(self, other: "CandidatePair") -> bool:
        return set(other.upper) <= set(self.upper) and set(other.lower) <= set(self.lower)


def canonical_order(sets: Iterable[KeywordSet]) -> list[KeywordSet]:
    """Deduplicate and order by size, then lexicographically by id."""
    return sorted(set(sets), key=lambda s: (len(s), s))


def nonempty_subsets(words: Iterable[int], cap: int = SUBSET_CAP) -> list[KeywordSet]:
    items = sorted(set(words))
    if len(items) > cap:
        raise CapExceeded(f"{len(items)} keywords exceed the subset cap of {cap}; "
                          "use a smaller keyword set")
    return [c for k in range(1, len(items) + 1) for c in combinations(items, k)]


def enumerate_upper_subsets(query_keywords: Iterable[int], cap: int = SUBSET_CAP) -> list[KeywordSet]:
    """All 2^|S| - 1 nonempty subsets of the query keyword set."""
    return nonempty_subsets(query_keywords, cap)


def collect_lower_candidates(g: AttributedBipartiteGraph, scope: Scope = Scope.ALL_LOWER,
                             mode: Mode = Mode.ALL_SUBSETS, q: int | None = None,
                             cap: int = SUBSET_CAP, deadline: Deadline | None = None) -> list[KeywordSet]:
    """Distinct lower keyword sets drawn from all lower vertices or from N(q)."""
    if scope == Scope.NEIGHBORS:
        if q is None:
            raise ValueError("neighbor scope needs a query vertex")
        vertices = g.upper_neighbors(q).tolist()
    else:
        vertices = range(g.n_lower)
    seen: set[KeywordSet] = set()
    for i, v in enumerate(vertices):
        kws = g.lower_keywords[v]
        if mode == Mode.SINGLETONS:
            seen.update((k,) for k in kws)
            continue
        if len(kws) > cap:
            raise CapExceeded(f"lower vertex {g.lower_labels[v]!r} has {len(kws)} keywords, "
                              f"over the subset cap of {cap}")
        for k in range(1, len(kws) + 1):
            seen.update(combinations(kws, k))
        if deadline is not None and i % 64 == 0:
            deadline.check()
    return canonical_order(seen)


@dataclass
class SupportIndex:
    """Per-candidate support: the vertices of the relevant layer containing it.

    ``lower_local`` counts supporting vertices among N(q) when the index was
    built for a query vertex; pruning of lower candidates uses it.
    """

    upper_support: dict[KeywordSet, np.ndarray]
    lower_support: dict[KeywordSet, np.ndarray]
    lower_local: dict[KeywordSet, int] | None = None

    @property
    def upper_candidates(self) -> list[KeywordSet]:
        return list(self.upper_support)

    @property
    def lower_candidates(self) -> list[KeywordSet]:
        return list(self.lower_support)


def build_support(g: AttributedBipartiteGraph, upper_cands: Sequence[KeywordSet],
                  lower_cands: Sequence[KeywordSet], q: int | None = None,
                  deadline: Deadline | None = None,
                  local: dict[KeywordSet, int] | None = None,
                  upper_min: int = 0) -> SupportIndex:
    """Support lists for both candidate lists; ``local`` may carry precomputed N(q) counts.

    Upper sets with a subset held by fewer than ``upper_min`` vertices get an
    empty support without a scan; pruning at that threshold drops them anyway.
    """
    upper_support = _supports(g, g.upper_bits, upper_cands, deadline, upper_min)
    lower_support = _supports(g, g.lower_bits, lower_cands, deadline)
    if local is not None:
        local = {s: local.get(s, 0) for s in lower_cands}
    elif q is not None:
        local = neighbor_counts(g, q, lower_cands)
    return SupportIndex(upper_support, lower_support, local)


def _supports(g, bits, cands, deadline, minimum: int = 0) -> dict[KeywordSet, np.ndarray]:
    # a set's support lies inside the support of the set minus its last keyword
    out: dict[KeywordSet, np.ndarray] = {}
    everyone = np.arange(len(bits))
    for i, s in enumerate(sorted(cands, key=len)):
        pool = out.get(s[:-1], everyone)
        if len(pool) < minimum:
            out[s] = pool[:0]
            continue
        out[s] = pool[contains(bits[pool], s[-1:], g.n_words)]
        if deadline is not None and i % 64 == 0:
            deadline.check()
    return {s: out[s] for s in cands}


def neighbor_counts(g: AttributedBipartiteGraph, q: int,
                    lower_cands: Sequence[KeywordSet]) -> dict[KeywordSet, int]:
    """How many neighbors of upper vertex q contain each lower candidate."""
    bits = g.lower_bits[g.upper_neighbors(q)]
    return {s: int(contains(bits, s, g.n_words).sum()) for s in lower_cands}


def neighbor_subset_counts(g: AttributedBipartiteGraph, q: int,
                           cap: int = SUBSET_CAP) -> Counter:
    """For every nonempty subset of a neighbor's keywords, how many neighbors of q hold it."""
    counts: Counter = Counter()
    for v in g.upper_neighbors(q).tolist():
        counts.update(nonempty_subsets(g.lower_keywords[v], cap))
    return counts


def prune_by_support(index: SupportIndex, params: CoreParams) -> SupportIndex:
    """Drop upper candidates held by < beta vertices and lower ones held by < alpha.

    Lower counts come from N(q) when available: every lower vertex of a
    community needs beta upper neighbors containing the upper set, and q
    needs alpha neighbors containing the lower set.
    """
    upper = {s: p for s, p in index.upper_support.items() if len(p) >= params.beta}
    if index.lower_local is not None:
        lower = {s: p for s, p in index.lower_support.items()
                 if index.lower_local.get(s, 0) >= params.alpha}
        local = {s: index.lower_local[s] for s in lower}
    else:
        lower = {s: p for s, p in index.lower_support.items() if len(p) >= params.alpha}
        local = None
    return SupportIndex(upper, lower, local)


@dataclass
class QualifiedLevel:
    """Qualified pairs of one Inc level, each with its community."""

    level: int
    entries: dict[CandidatePair, PeelResult] = field(default_factory=dict)

    def add(self, pair: CandidatePair, community: PeelResult) -> None:
        self.entries[pair] = community

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)


@dataclass
class Combined:
    pair: CandidatePair
    upper_scope: np.ndarray
    lower_scope: np.ndarray


def combine_level(level: QualifiedLevel, visited: set[CandidatePair] | None = None) -> list[Combined]:
    """Pairwise unions of same-size qualified pairs that grow by exactly one keyword.

    Each union is scoped to the intersection of its two parents' communities;
    the first parent pair (in canonical order) to produce a union wins.
    ``visited`` is updated in place and suppresses repeats across levels.
    """
    visited = set() if visited is None else visited
    items = sorted(level.entries.items(), key=lambda kv: kv[0])
    if not items:
        return []
    size = items[0][0].size
    out = []
    for i, (c1, g1) in enumerate(items):
        for c2, g2 in items[i + 1:]:
            if c2.size != size or c1.size != size:
                raise ValueError("level entries must share one size")
            cand = c1.union(c2)
            if cand.size != size + 1 or cand in visited:
                continue
            visited.add(cand)
            out.append(Combined(cand,
                                np.intersect1d(g1.upper, g2.upper, assume_unique=True),
                                np.intersect1d(g1.lower, g2.lower, assume_unique=True)))
    return out
