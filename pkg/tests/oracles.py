"""Slow, obviously-correct reference implementations used by the tests."""
import itertools

from abcs.graph import AttributedBipartiteGraph


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def naive_core(g: AttributedBipartiteGraph, alpha, beta, upper=None, lower=None, order_seed=None):
    """Delete any violating vertex until none remain; returns (upper set, lower set)."""
    import random
    U = set(range(g.n_upper)) if upper is None else set(upper)
    V = set(range(g.n_lower)) if lower is None else set(lower)
    rng = random.Random(order_seed)
    while True:
        bad = [("u", u) for u in U if sum(v in V for v in g.upper_neighbors(u).tolist()) < alpha]
        bad += [("v", v) for v in V if sum(u in U for u in g.lower_neighbors(v).tolist()) < beta]
        if not bad:
            return U, V
        side, x = rng.choice(bad) if order_seed is not None else bad[0]
        (U if side == "u" else V).discard(x)


def components(g: AttributedBipartiteGraph, upper, lower):
    """Connected components of the subgraph induced on the given vertex sets."""
    uf = UnionFind([("u", u) for u in upper] + [("v", v) for v in lower])
    for u, v in g.edges():
        if u in upper and v in lower:
            uf.union(("u", u), ("v", v))
    groups = {}
    for x in uf.parent:
        groups.setdefault(uf.find(x), set()).add(x)
    out = []
    for grp in groups.values():
        us = frozenset(i for s, i in grp if s == "u")
        vs = frozenset(i for s, i in grp if s == "v")
        out.append((us, vs))
    return out


def component_of_upper(g, upper, lower, q):
    for us, vs in components(g, upper, lower):
        if q in us:
            return us, vs
    return frozenset(), frozenset()


def naive_community(g, alpha, beta, q, su=(), sv=()):
    """Connected (alpha, beta)-core component of q among vertices holding su / sv."""
    U = {u for u in range(g.n_upper) if set(su) <= set(g.upper_keywords[u])}
    V = {v for v in range(g.n_lower) if set(sv) <= set(g.lower_keywords[v])}
    U, V = naive_core(g, alpha, beta, U, V)
    if q not in U:
        return None
    return component_of_upper(g, U, V, q)


def powerset(items):
    items = sorted(items)
    return [c for k in range(1, len(items) + 1) for c in itertools.combinations(items, k)]
