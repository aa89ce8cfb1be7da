"""KONECT-style edge lists, attribute files, synthetic keywords and samplers."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import CoreParams, upper_core_vertices
from .graph import AttributedBipartiteGraph, KeywordTable

PathLike = str | os.PathLike


class FormatError(ValueError):
    pass


def read_edge_list(path: PathLike) -> list[tuple[str, str]]:
    """(upper_label, lower_label) pairs in file order, duplicates dropped.

    Lines starting with '%' are comments; columns past the second (KONECT
    weights, timestamps) are ignored.
    """
    edges = []
    seen = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise FormatError(f"{path}:{lineno}: expected two vertex ids, got {line!r}")
            e = (parts[0], parts[1])
            if e not in seen:
                seen.add(e)
                edges.append(e)
    return edges


def read_attributes(path: PathLike) -> dict[str, list[str]]:
    """``<id>\\t<kw1>,<kw2>,...`` per line; keywords deduplicated in order."""
    attrs: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("%"):
                continue
            vid, sep, rest = line.partition("\t")
            vid = vid.strip()
            if not vid or " " in vid:
                raise FormatError(f"{path}:{lineno}: malformed attribute line {line!r}")
            words = [w.strip() for w in rest.split(",")] if sep else []
            words = [w for w in words if w]
            if vid in attrs:
                raise FormatError(f"{path}:{lineno}: vertex {vid!r} listed twice")
            attrs[vid] = list(dict.fromkeys(words))
    return attrs


def load_graph(edges: PathLike, attrs_u: PathLike | None = None,
               attrs_v: PathLike | None = None) -> AttributedBipartiteGraph:
    """Load an edge list plus optional per-layer attribute files.

    Dense ids follow first appearance, attribute file first, then edge list.
    Vertices missing from an attribute file get an empty keyword set.
    """
    edge_list = read_edge_list(edges)
    upper_ids = {u for u, _ in edge_list}
    lower_ids = {v for _, v in edge_list}
    ua = read_attributes(attrs_u) if attrs_u else {}
    va = read_attributes(attrs_v) if attrs_v else {}
    for attrs, ids, path in ((ua, upper_ids, attrs_u), (va, lower_ids, attrs_v)):
        for vid in attrs:
            if vid not in ids:
                raise FormatError(f"{path}: vertex {vid!r} does not appear in {edges}")
    return AttributedBipartiteGraph.from_labeled(edge_list, ua, va)


def write_attributes(path: PathLike, labels, keyword_sets, table: KeywordTable) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for lab, kws in zip(labels, keyword_sets):
            f.write(f"{lab}\t{','.join(table.words(kws))}\n")


def write_graph(g: AttributedBipartiteGraph, edges: PathLike, attrs_u: PathLike,
                attrs_v: PathLike) -> None:
    """Serialize so that :func:`load_graph` rebuilds ``g`` exactly.

    Attribute files list every vertex in id order, which pins the dense ids
    on reload. Vertices without edges cannot be represented.
    """
    with open(edges, "w", encoding="utf-8") as f:
        f.write("% bip unweighted\n")
        f.write(f"% {g.m} {g.n_upper} {g.n_lower}\n")
        for u, v in g.edges():
            f.write(f"{g.upper_labels[u]} {g.lower_labels[v]}\n")
    write_attributes(attrs_u, g.upper_labels, g.upper_keywords, g.keywords)
    write_attributes(attrs_v, g.lower_labels, g.lower_keywords, g.keywords)


@dataclass(frozen=True)
class SyntheticAttrConfig:
    min_per_vertex: int = 8
    max_per_vertex: int = 13
    vocab_size_upper: int = 50
    vocab_size_lower: int = 50
    seed: int = 0

    def validate(self) -> None:
        if not 1 <= self.min_per_vertex <= self.max_per_vertex:
            raise ValueError(f"need 1 <= min <= max, got {self.min_per_vertex}..{self.max_per_vertex}")
        if min(self.vocab_size_upper, self.vocab_size_lower) < self.max_per_vertex:
            raise ValueError("vocabulary smaller than the per-vertex maximum")


def _draw_sets(rng: np.random.Generator, n: int, vocab: int, lo: int, hi: int) -> list[list[int]]:
    counts = rng.integers(lo, hi + 1, size=n)
    # first k columns of a random permutation = k draws without replacement
    perm = np.argsort(rng.random((n, vocab)), axis=1)
    return [sorted(perm[i, :counts[i]].tolist()) for i in range(n)]


def generate_attributes(g: AttributedBipartiteGraph,
                        cfg: SyntheticAttrConfig = SyntheticAttrConfig()) -> AttributedBipartiteGraph:
    """Replace all keywords with uniform random draws from disjoint layer vocabularies.

    Upper words are ``u0, u1, ...`` and lower words ``v0, v1, ...``; each
    vertex gets k ~ Uniform{min..max} distinct words.
    """
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    table = KeywordTable([f"u{i}" for i in range(cfg.vocab_size_upper)]
                         + [f"v{i}" for i in range(cfg.vocab_size_lower)])
    off = cfg.vocab_size_upper
    ukw = _draw_sets(rng, g.n_upper, cfg.vocab_size_upper, cfg.min_per_vertex, cfg.max_per_vertex)
    lkw = _draw_sets(rng, g.n_lower, cfg.vocab_size_lower, cfg.min_per_vertex, cfg.max_per_vertex)
    lkw = [[k + off for k in s] for s in lkw]
    return AttributedBipartiteGraph(g.n_upper, g.n_lower, g.edges(), ukw, lkw, table,
                                    g.upper_labels, g.lower_labels)


def _ceil_fraction(fraction: float, n: int) -> int:
    return min(n, math.ceil(fraction * n - 1e-9))


def _check_fraction(fraction: float) -> None:
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")


def sample_subgraph(g: AttributedBipartiteGraph, vertex_fraction: float,
                    seed: int = 0) -> AttributedBipartiteGraph:
    """Induced subgraph on ceil(fraction * n) random vertices of each layer."""
    _check_fraction(vertex_fraction)
    rng = np.random.default_rng(seed)
    keep_u = np.sort(rng.choice(g.n_upper, _ceil_fraction(vertex_fraction, g.n_upper), replace=False))
    keep_v = np.sort(rng.choice(g.n_lower, _ceil_fraction(vertex_fraction, g.n_lower), replace=False))
    new_u = np.full(g.n_upper, -1, dtype=np.int64)
    new_v = np.full(g.n_lower, -1, dtype=np.int64)
    new_u[keep_u] = np.arange(len(keep_u))
    new_v[keep_v] = np.arange(len(keep_v))
    sel = (new_u[g.edge_u] >= 0) & (new_v[g.edge_v] >= 0)
    edges = zip(new_u[g.edge_u[sel]].tolist(), new_v[g.edge_v[sel]].tolist())
    return AttributedBipartiteGraph(
        len(keep_u), len(keep_v), edges,
        [g.upper_keywords[i] for i in keep_u.tolist()],
        [g.lower_keywords[i] for i in keep_v.tolist()],
        g.keywords,
        [g.upper_labels[i] for i in keep_u.tolist()],
        [g.lower_labels[i] for i in keep_v.tolist()],
    )


def sample_keywords(g: AttributedBipartiteGraph, keyword_fraction: float,
                    seed: int = 0) -> AttributedBipartiteGraph:
    """Each vertex keeps a random ceil(fraction * |W(x)|)-subset of its keywords."""
    _check_fraction(keyword_fraction)
    rng = np.random.default_rng(seed)

    def thin(sets):
        out = []
        for kws in sets:
            k = _ceil_fraction(keyword_fraction, len(kws))
            out.append(sorted(rng.choice(kws, k, replace=False).tolist()) if k else [])
        return out

    return AttributedBipartiteGraph(g.n_upper, g.n_lower, g.edges(), thin(g.upper_keywords),
                                    thin(g.lower_keywords), g.keywords,
                                    g.upper_labels, g.lower_labels)


def sample_query_keywords(g: AttributedBipartiteGraph, q: int, fraction: float,
                          rng: np.random.Generator) -> tuple[int, ...]:
    own = g.upper_keywords[q]
    k = max(1, _ceil_fraction(fraction, len(own)))
    return tuple(sorted(rng.choice(own, k, replace=False).tolist()))


def select_query_vertices(g: AttributedBipartiteGraph, params: CoreParams, count: int,
                          seed: int = 0) -> list[int]:
    """Up to ``count`` random upper vertices of the (alpha, beta)-core holding keywords."""
    pool = [u for u in upper_core_vertices(g, params).tolist() if g.upper_keywords[u]]
    rng = np.random.default_rng(seed)
    if len(pool) <= count:
        return pool
    return sorted(rng.choice(pool, count, replace=False).tolist())


def random_graph(n_upper: int, n_lower: int, p: float, seed: int = 0) -> AttributedBipartiteGraph:
    """Bernoulli(p) bipartite graph without keywords."""
    rng = np.random.default_rng(seed)
    adj = rng.random((n_upper, n_lower)) < p
    u, v = np.nonzero(adj)
    return AttributedBipartiteGraph(n_upper, n_lower, zip(u.tolist(), v.tolist()))


def chung_lu_graph(n_upper: int, n_lower: int, m: int, exponent: float = 2.5,
                   seed: int = 0) -> AttributedBipartiteGraph:
    """Heavy-tailed bipartite graph with about ``m`` distinct edges.

    Endpoints are drawn independently with power-law weights on each layer.
    """
    rng = np.random.default_rng(seed)

    def weights(n):
        w = (np.arange(1, n + 1)) ** (-1.0 / (exponent - 1))
        return w / w.sum()

    wu, wv = weights(n_upper), weights(n_lower)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        need = m - len(edges)
        us = rng.choice(n_upper, need, p=wu)
        vs = rng.choice(n_lower, need, p=wv)
        edges.update(zip(us.tolist(), vs.tolist()))
    return AttributedBipartiteGraph(n_upper, n_lower, edges)
