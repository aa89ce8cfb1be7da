"""Attributed (alpha, beta)-community search: Basic, Basic+, Inc, Dec and an oracle."""
from __future__ import annotations

import time
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .candidates import (
    CandidatePair,
    KeywordSet,
    Mode,
    QualifiedLevel,
    Scope,
    SUBSET_CAP,
    SupportIndex,
    build_support,
    canonical_order,
    collect_lower_candidates,
    combine_level,
    enumerate_upper_subsets,
    neighbor_counts,
    neighbor_subset_counts,
    prune_by_support,
)
from .core import CoreParams, PeelResult, peel_community, peel_edges
from .graph import (
    AttributedBipartiteGraph,
    Layer,
    SubgraphMask,
    VertexRef,
    connected_component_of,
    contains,
    csr_gather,
    induced_edges,
    keyword_filtered_mask,
)
from .timing import Deadline, QueryTimeout

ALGORITHMS = ("basic", "basic+", "inc", "dec", "oracle")

# Re-verify keyword containment inside Inc's scoped masks and the
# shared-keyword fixed point of every result. Tests switch this on.
CHECK_INVARIANTS = False


@dataclass(frozen=True)
class QuerySpec:
    q: int
    params: CoreParams
    keywords: KeywordSet
    algorithm: str = "dec"

    @classmethod
    def build(cls, g: AttributedBipartiteGraph, q, alpha: int, beta: int,
              keywords: Iterable | None = None, algorithm: str = "dec") -> "QuerySpec":
        """Resolve ``q`` (label, index or VertexRef) and keyword words or ids.

        ``keywords=None`` means the whole of W_U(q).
        """
        if isinstance(q, VertexRef):
            if q.layer != Layer.UPPER:
                raise ValueError("query vertex must be in the upper layer")
            qi = q.index
        elif isinstance(q, str):
            qi = g.upper_index(q)
        else:
            qi = int(q)
        if keywords is None:
            ids = g.upper_keywords[qi]
        else:
            keywords = list(keywords)
            ids = tuple(sorted({g.keywords.id(k) if isinstance(k, str) else int(k) for k in keywords}))
        spec = cls(qi, CoreParams(alpha, beta), tuple(ids), algorithm)
        spec.validate(g)
        return spec

    def validate(self, g: AttributedBipartiteGraph) -> None:
        if not 0 <= self.q < g.n_upper:
            raise ValueError(f"query vertex {self.q} out of range")
        if not self.keywords:
            raise ValueError("query keyword set is empty")
        own = set(g.upper_keywords[self.q])
        extra = [k for k in self.keywords if k not in own]
        if extra:
            words = ", ".join(g.keywords.word(k) for k in extra)
            raise ValueError(f"keywords not held by the query vertex: {words}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass
class CommunityResult:
    pair: CandidatePair
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    shared_upper: KeywordSet
    shared_lower: KeywordSet

    @property
    def size(self) -> int:
        return len(self.shared_upper) + len(self.shared_lower)

    def key(self):
        return (self.pair.upper, self.pair.lower, self.upper, self.lower)


@dataclass
class QueryStats:
    algorithm: str
    candidates_generated: int = 0
    candidates_verified: int = 0
    peels_run: int = 0
    elapsed: float = 0.0
    # plain (alpha, beta)-community of q, reported only when nothing qualified
    plain_community: PeelResult | None = None


def shared_keywords(g: AttributedBipartiteGraph, upper: Sequence[int], lower: Sequence[int],
                    query_keywords: Iterable[int]) -> tuple[KeywordSet, KeywordSet]:
    su = set(query_keywords)
    for u in upper:
        su &= set(g.upper_keywords[u])
    sv: set[int] | None = None
    for v in lower:
        sv = set(g.lower_keywords[v]) if sv is None else sv & set(g.lower_keywords[v])
    return tuple(sorted(su)), tuple(sorted(sv or ()))


def _make_result(g, spec, pair, upper, lower) -> CommunityResult:
    upper = tuple(int(x) for x in upper)
    lower = tuple(int(x) for x in lower)
    su, sv = shared_keywords(g, upper, lower, spec.keywords)
    res = CommunityResult(pair, upper, lower, su, sv)
    if CHECK_INVARIANTS:
        assert (su, sv) == (pair.upper, pair.lower), f"shared keywords {su}/{sv} exceed {pair}"
        assert spec.q in upper
    return res


def _finish(g, spec, best: dict[CandidatePair, PeelResult], stats: QueryStats,
            deadline: Deadline) -> list[CommunityResult]:
    results = [_make_result(g, spec, pair, c.upper, c.lower) for pair, c in best.items()]
    results.sort(key=CommunityResult.key)
    if not results:
        stats.plain_community = peel_community(g, SubgraphMask.full(g), VertexRef.upper(spec.q),
                                               spec.params)
        stats.peels_run += 1
    stats.elapsed = deadline.elapsed()
    return results


_CHUNK_BYTES = 1 << 23
_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


class _HopFilter:
    """Necessary condition checked before peeling a support-induced subgraph.

    If {S_u, S_v} qualifies, q keeps at least alpha neighbors that contain
    S_v and that themselves keep at least beta upper neighbors containing
    S_u. Per candidate set this reduces to a boolean row over N(q), and a
    whole block of pairs is counted with one matrix product.
    """

    def __init__(self, g: AttributedBipartiteGraph, q: int, beta: int):
        self.g = g
        self.beta = beta
        self.nq = g.upper_neighbors(q)
        self.d = len(self.nq)
        self.hop_owner, self.hop_u = csr_gather(g.lower_indptr, g.lower_adj, self.nq)
        self.hop_bits = g.upper_bits[self.hop_u]
        self.nbr_bits = g.lower_bits[self.nq]
        self._upper_rows: dict[KeywordSet, np.ndarray] = {}
        self._lower_rows: dict[KeywordSet, np.ndarray] = {}

    def upper_row(self, su: KeywordSet) -> np.ndarray:
        row = self._upper_rows.get(su)
        if row is None:
            held = contains(self.hop_bits, su, self.g.n_words)
            counts = np.bincount(self.hop_owner, weights=held, minlength=self.d)
            row = self._upper_rows[su] = (counts >= self.beta).astype(np.float32)
        return row

    def lower_row(self, sv: KeywordSet) -> np.ndarray:
        row = self._lower_rows.get(sv)
        if row is None:
            row = self._lower_rows[sv] = contains(self.nbr_bits, sv, self.g.n_words).astype(np.float32)
        return row

    def counts(self, uppers: Sequence[KeywordSet], lowers: Sequence[KeywordSet]) -> np.ndarray:
        """Matrix of surviving-neighbor counts, rows ``uppers``, columns ``lowers``."""
        if not uppers or not lowers or self.d == 0:
            return np.zeros((len(uppers), len(lowers)), dtype=np.float32)
        a = np.stack([self.upper_row(s) for s in uppers])
        b = np.stack([self.lower_row(s) for s in lowers])
        return a @ b.T


class _TwoHop:
    """Edges from q's neighbors to their upper neighbors, as byte-aligned bitsets.

    Only edges reaching an upper vertex in one of ``uppers`` are kept, and
    each neighbor's edges start on a byte boundary, so per-neighbor counts
    are popcounts summed over whole bytes.
    """

    def __init__(self, hop: _HopFilter, uppers: list[np.ndarray]):
        self.d = hop.d
        inside = np.zeros(hop.g.n_upper, dtype=bool)
        for u in uppers:
            inside[u] = True
        sel = np.flatnonzero(inside[hop.hop_u])
        owner = hop.hop_owner[sel]
        self.upper = hop.hop_u[sel]
        self.bits = hop.hop_bits[sel]
        count = np.bincount(owner, minlength=self.d)
        padded = (count + 7) // 8 * 8
        start = np.cumsum(padded) - padded
        first = np.searchsorted(owner, owner)
        self.pos = start[owner] + np.arange(len(sel)) - first
        self.nbits = int(padded.sum())
        self.width = self.nbits // 8
        self.owners = np.flatnonzero(count)
        self.byte_start = start[self.owners] // 8

    def pack(self, flags: np.ndarray) -> np.ndarray:
        out = np.zeros(self.nbits, dtype=bool)
        out[self.pos] = flags
        return np.packbits(out)

    def counts(self, packed: np.ndarray) -> np.ndarray:
        """Per-neighbor set-bit counts for each row of ``packed``."""
        out = np.zeros((len(packed), self.d), dtype=np.int32)
        if len(self.owners):
            out[:, self.owners] = np.add.reduceat(_POPCOUNT[packed], self.byte_start, axis=1,
                                                  dtype=np.int32)
        return out


class _Verifier:
    """Verifies candidate pairs inside support- or scope-induced subgraphs."""

    def __init__(self, g: AttributedBipartiteGraph, spec: QuerySpec, stats: QueryStats,
                 deadline: Deadline, index: SupportIndex | None = None):
        self.g = g
        self.q = spec.q
        self.alpha = spec.params.alpha
        self.beta = spec.params.beta
        self.stats = stats
        self.deadline = deadline
        self.index = index
        self.hop = _HopFilter(g, spec.q, spec.params.beta)
        self._lower_masks: dict[KeywordSet, np.ndarray] = {}

    def lower_mask(self, kw: KeywordSet) -> np.ndarray:
        m = self._lower_masks.get(kw)
        if m is None:
            m = self._lower_masks[kw] = np.zeros(self.g.n_lower, dtype=bool)
            m[self.index.lower_support[kw]] = True
        return m

    def within(self, upper: np.ndarray, lower_alive: np.ndarray) -> PeelResult | None:
        self.deadline.check()
        self.stats.candidates_verified += 1
        self.stats.peels_run += 1
        eu, ev = induced_edges(self.g, upper, lower_alive)
        found = peel_edges(eu, ev, self.q, self.alpha, self.beta)
        if found is None:
            return None
        return PeelResult(found[0], found[1], True)

    def support(self, pair: CandidatePair) -> PeelResult | None:
        """Community of ``pair`` in the subgraph induced on its two support lists."""
        return self.within(self.index.upper_support[pair.upper], self.lower_mask(pair.lower))

    def grid(self, uppers: Sequence[KeywordSet], lowers: Sequence[KeywordSet]):
        """Yield (pair, community) for every pair of the block, in canonical order.

        Pairs failing the neighborhood check count as verified without a peel.
        """
        ok = self.hop.counts(uppers, lowers) >= self.alpha
        self.stats.candidates_verified += int(ok.size - ok.sum())
        pairs = sorted(CandidatePair(uppers[i], lowers[j]) for i, j in zip(*np.nonzero(ok)))
        for pair in pairs:
            yield pair, self.support(pair)


def _keep_max(best: dict, pair: CandidatePair, community: PeelResult) -> None:
    if best:
        size = next(iter(best)).size
        if pair.size < size:
            return
        if pair.size > size:
            best.clear()
    best[pair] = community


def run_basic(g: AttributedBipartiteGraph, spec: QuerySpec,
              time_limit: float | None = None) -> tuple[list[CommunityResult], QueryStats]:
    """Verify every (subset of S, lower keyword subset seen anywhere in V) pair on the full graph."""
    deadline = Deadline(time_limit)
    stats = QueryStats("basic")
    q = VertexRef.upper(spec.q)
    psi = enumerate_upper_subsets(spec.keywords)
    phi = collect_lower_candidates(g, Scope.ALL_LOWER, Mode.ALL_SUBSETS, deadline=deadline)
    stats.candidates_generated = len(psi) * len(phi)
    best: dict[CandidatePair, PeelResult] = {}
    for su in psi:
        for sv in phi:
            deadline.check()
            mask = keyword_filtered_mask(g, su, sv)
            mask = connected_component_of(g, mask, q)
            found = peel_community(g, mask, q, spec.params)
            stats.candidates_verified += 1
            stats.peels_run += 1
            if found.exists:
                _keep_max(best, CandidatePair(su, sv), found)
    return _finish(g, spec, best, stats, deadline), stats


def _pruned_index(g, spec, all_upper_subsets: bool, lower_mode: Mode,
                  deadline) -> SupportIndex:
    if all_upper_subsets:
        psi = enumerate_upper_subsets(spec.keywords)
    else:
        psi = [(k,) for k in spec.keywords]
    if lower_mode == Mode.ALL_SUBSETS:
        local = neighbor_subset_counts(g, spec.q)
        phi = list(local)
    else:
        phi = collect_lower_candidates(g, Scope.NEIGHBORS, lower_mode, q=spec.q, deadline=deadline)
        local = neighbor_counts(g, spec.q, phi)
    deadline.check()
    # local counts are cheap; skip global supports of sets that cannot survive
    phi = canonical_order(s for s in phi if local[s] >= spec.params.alpha)
    index = build_support(g, psi, phi, q=spec.q, deadline=deadline, local=local,
                          upper_min=spec.params.beta)
    return prune_by_support(index, spec.params)


def run_basic_plus(g: AttributedBipartiteGraph, spec: QuerySpec,
                   time_limit: float | None = None) -> tuple[list[CommunityResult], QueryStats]:
    """Basic's full cross product, with lower candidates taken from N(q),
    support pruning, and verification inside support-induced subgraphs."""
    deadline = Deadline(time_limit)
    stats = QueryStats("basic+")
    index = _pruned_index(g, spec, True, Mode.ALL_SUBSETS, deadline)
    verify = _Verifier(g, spec, stats, deadline, index)
    psi, phi = index.upper_candidates, index.lower_candidates
    stats.candidates_generated = len(psi) * len(phi)
    best: dict[CandidatePair, PeelResult] = {}
    for pair, found in verify.grid(psi, phi):
        if found is not None:
            _keep_max(best, pair, found)
    return _finish(g, spec, best, stats, deadline), stats


def run_inc(g: AttributedBipartiteGraph, spec: QuerySpec, time_limit: float | None = None,
            trace: list[QualifiedLevel] | None = None) -> tuple[list[CommunityResult], QueryStats]:
    """Level-wise search from qualified singleton pairs upward.

    Level l holds qualified pairs with l + 2 keywords. Each next-level
    candidate is verified inside the intersection of its parents'
    communities, so keywords need no re-check there. ``trace`` collects
    the levels when given.
    """
    deadline = Deadline(time_limit)
    stats = QueryStats("inc")
    index = _pruned_index(g, spec, False, Mode.SINGLETONS, deadline)
    verify = _Verifier(g, spec, stats, deadline, index)

    level = QualifiedLevel(0)
    psi, phi = index.upper_candidates, index.lower_candidates
    stats.candidates_generated = len(psi) * len(phi)
    visited = {CandidatePair(su, sv) for su in psi for sv in phi}
    for pair, found in verify.grid(psi, phi):
        if found is not None:
            level.add(pair, found)

    last = level
    while level:
        if trace is not None:
            trace.append(level)
        last = level
        nxt = QualifiedLevel(level.level + 1)
        for cand in combine_level(level, visited):
            stats.candidates_generated += 1
            lower_alive = np.zeros(g.n_lower, dtype=bool)
            lower_alive[cand.lower_scope] = True
            if CHECK_INVARIANTS:
                assert g.upper_containing(cand.pair.upper)[cand.upper_scope].all()
                assert g.lower_containing(cand.pair.lower)[cand.lower_scope].all()
            found = verify.within(cand.upper_scope, lower_alive)
            if found is not None:
                nxt.add(cand.pair, found)
        level = nxt

    best = dict(last.entries)
    return _finish(g, spec, best, stats, deadline), stats


def run_dec(g: AttributedBipartiteGraph, spec: QuerySpec,
            time_limit: float | None = None) -> tuple[list[CommunityResult], QueryStats]:
    """Verify pruned candidate pairs from largest to smallest; stop below the best size.

    Singleton pairs are verified first. A larger pair can only qualify if
    all singleton pairs inside it do, and its community lies within each of
    their communities, so it is peeled inside the smallest one. Before that,
    q must keep alpha neighbors inside all of them that pass the two-hop
    check there, which rejects most pairs without a peel. The cross product
    is walked one size class at a time rather than materialized.
    """
    deadline = Deadline(time_limit)
    stats = QueryStats("dec")
    index = _pruned_index(g, spec, True, Mode.ALL_SUBSETS, deadline)
    verify = _Verifier(g, spec, stats, deadline, index)

    uppers: dict[int, list[KeywordSet]] = defaultdict(list)
    lowers: dict[int, list[KeywordSet]] = defaultdict(list)
    for su in index.upper_candidates:
        uppers[len(su)].append(su)
    for sv in index.lower_candidates:
        lowers[len(sv)].append(sv)
    stats.candidates_generated = len(index.upper_support) * len(index.lower_support)

    # anti-monotone pruning keeps every singleton of a surviving set
    single_u, single_v = uppers.get(1, []), lowers.get(1, [])
    upos = {s[0]: i for i, s in enumerate(single_u)}
    vpos = {s[0]: j for j, s in enumerate(single_v)}
    base: dict[tuple[int, int], PeelResult] = {}
    for pair, found in verify.grid(single_u, single_v):
        if found is not None:
            base[upos[pair.upper[0]], vpos[pair.lower[0]]] = found
    failed = np.ones((len(single_u), len(single_v)), dtype=np.float32)
    size_of = np.full(failed.shape, np.inf)
    # which neighbors of q each singleton community keeps, packed 8 per byte
    hop = verify.hop
    kept = np.zeros(failed.shape + ((hop.d + 7) // 8,), dtype=np.uint8)
    for (i, j), found in base.items():
        failed[i, j] = 0
        size_of[i, j] = found.upper_size + found.lower_size
        kept[i, j] = np.packbits(np.isin(hop.nq, found.lower, assume_unique=True))
    # same for the edges from those neighbors to upper vertices
    two = _TwoHop(hop, [found.upper for found in base.values()])
    kept_hop = np.zeros(failed.shape + (two.width,), dtype=np.uint8)
    for (i, j), found in base.items():
        kept_hop[i, j] = two.pack(np.isin(two.upper, found.upper))

    def member_matrix(sets, pos):
        m = np.zeros((len(sets), len(pos)), dtype=np.float32)
        for r, s in enumerate(sets):
            m[r, [pos[k] for k in s]] = 1
        return m

    # per set size: membership matrix, singleton positions, and filter rows
    side_u: dict[int, tuple] = {}
    side_v: dict[int, tuple] = {}
    best: dict[CandidatePair, PeelResult] = {}
    top = max(uppers, default=0) + max(lowers, default=0)
    for size in range(top, 2, -1):
        found_here = []
        for a in sorted(uppers):
            b = size - a
            if b not in lowers:
                continue
            deadline.check()
            us, vs = uppers[a], lowers[b]
            if a not in side_u:
                side_u[a] = (member_matrix(us, upos),
                             np.array([[upos[k] for k in s] for s in us]).reshape(len(us), a),
                             np.stack([two.pack(contains(two.bits, s, g.n_words)) for s in us]))
            if b not in side_v:
                side_v[b] = (member_matrix(vs, vpos),
                             np.array([[vpos[k] for k in s] for s in vs]).reshape(len(vs), b),
                             np.stack([hop.lower_row(s) for s in vs]) > 0)
            (mu, ui, uheld), (mv, vj, vrows) = side_u[a], side_v[b]
            ok = (hop.counts(us, vs) >= spec.params.alpha) & ((mu @ failed @ mv.T) == 0)
            rows, cols = np.nonzero(ok)
            chunk = max(1, _CHUNK_BYTES // (a * b * (kept.shape[2] + two.width) + 1))
            survivors = []
            for lo in range(0, len(rows), chunk):
                deadline.check()
                r, c = rows[lo:lo + chunk], cols[lo:lo + chunk]
                ii, jj = ui[r][:, :, None], vj[c][:, None, :]
                # the community lies inside every singleton community the pair covers:
                # q needs alpha neighbors there holding S_v, each with beta uppers
                # there holding S_u
                near = np.bitwise_and.reduce(
                    kept[ii, jj].reshape(len(r), a * b, kept.shape[2]), axis=1)
                near = np.unpackbits(near, axis=1, count=hop.d).astype(bool) & vrows[c]
                live = np.flatnonzero(near.sum(axis=1) >= spec.params.alpha)
                if len(live) == 0:
                    continue
                far = np.bitwise_and.reduce(
                    kept_hop[ii[live], jj[live]].reshape(len(live), a * b, kept_hop.shape[2]), axis=1)
                enough = two.counts(far & uheld[r[live]]) >= spec.params.beta
                keep = live[(near[live] & enough).sum(axis=1) >= spec.params.alpha]
                smallest = size_of[ii, jj].reshape(len(r), a * b).argmin(axis=1)
                for x in keep:
                    k = smallest[x]
                    survivors.append((us[r[x]], vs[c[x]], ii[x, k // b, 0], jj[x, 0, k % b]))
            stats.candidates_verified += ok.size - len(survivors)
            for su, sv, i, j in sorted(survivors):
                scope = base[i, j]
                upper = scope.upper[contains(g.upper_bits[scope.upper], su, g.n_words)]
                lower_alive = np.zeros(g.n_lower, dtype=bool)
                lower_alive[scope.lower[contains(g.lower_bits[scope.lower], sv, g.n_words)]] = True
                found = verify.within(upper, lower_alive)
                if found is not None:
                    found_here.append((CandidatePair(su, sv), found))
        if found_here:
            best.update(found_here)
            break
    if not best:
        best = {CandidatePair(single_u[i], single_v[j]): f for (i, j), f in sorted(base.items())}
    return _finish(g, spec, best, stats, deadline), stats


# -- exhaustive reference ---------------------------------------------------

ORACLE_MAX_QUERY = 10
ORACLE_MAX_LOWER = 10
ORACLE_MAX_VOCAB = 16


def _naive_community(adj_u, adj_v, alive_u: set, alive_v: set, q: int, alpha: int, beta: int):
    changed = True
    while changed:
        changed = False
        for u in list(alive_u):
            if sum(1 for v in adj_u[u] if v in alive_v) < alpha:
                alive_u.discard(u)
                changed = True
        for v in list(alive_v):
            if sum(1 for u in adj_v[v] if u in alive_u) < beta:
                alive_v.discard(v)
                changed = True
    if q not in alive_u:
        return None
    seen_u, seen_v = {q}, set()
    todo = deque([(0, q)])
    while todo:
        side, x = todo.popleft()
        if side == 0:
            for v in adj_u[x]:
                if v in alive_v and v not in seen_v:
                    seen_v.add(v)
                    todo.append((1, v))
        else:
            for u in adj_v[x]:
                if u in alive_u and u not in seen_u:
                    seen_u.add(u)
                    todo.append((0, u))
    return seen_u, seen_v


def run_oracle(g: AttributedBipartiteGraph, spec: QuerySpec) -> list[CommunityResult]:
    """Exhaustive reference: every subset of S against every subset of the lower vocabulary.

    Plain Python sets throughout, from scratch per pair; desk-scale only.
    """
    vocab = sorted({k for s in g.lower_keywords for k in s})
    if (len(spec.keywords) > ORACLE_MAX_QUERY or len(vocab) > ORACLE_MAX_VOCAB
            or any(len(s) > ORACLE_MAX_LOWER for s in g.lower_keywords)):
        raise ValueError("graph too large for the exhaustive oracle")
    adj_u = [[] for _ in range(g.n_upper)]
    adj_v = [[] for _ in range(g.n_lower)]
    for u, v in g.edges():
        adj_u[u].append(v)
        adj_v[v].append(u)
    kw_u = [set(s) for s in g.upper_keywords]
    kw_v = [set(s) for s in g.lower_keywords]
    subsets_u = [c for k in range(1, len(spec.keywords) + 1) for c in combinations(spec.keywords, k)]
    subsets_v = [c for k in range(1, len(vocab) + 1) for c in combinations(vocab, k)]
    found: dict[CandidatePair, tuple] = {}
    for su in subsets_u:
        need_u = set(su)
        alive_u0 = {u for u in range(g.n_upper) if need_u <= kw_u[u]}
        for sv in subsets_v:
            need_v = set(sv)
            alive_v = {v for v in range(g.n_lower) if need_v <= kw_v[v]}
            comm = _naive_community(adj_u, adj_v, set(alive_u0), alive_v, spec.q,
                                    spec.params.alpha, spec.params.beta)
            if comm is not None:
                found[CandidatePair(tuple(su), tuple(sv))] = comm
    if not found:
        return []
    top = max(p.size for p in found)
    out = []
    for pair, (uu, vv) in found.items():
        if pair.size == top:
            su, sv = shared_keywords(g, sorted(uu), sorted(vv), spec.keywords)
            out.append(CommunityResult(pair, tuple(sorted(uu)), tuple(sorted(vv)), su, sv))
    out.sort(key=CommunityResult.key)
    return out


RUNNERS: dict[str, Callable] = {
    "basic": run_basic,
    "basic+": run_basic_plus,
    "inc": run_inc,
    "dec": run_dec,
}


def run_query(g: AttributedBipartiteGraph, spec: QuerySpec,
           time_limit: float | None = None) -> tuple[list[CommunityResult], QueryStats]:
    """Dispatch on ``spec.algorithm``; raises QueryTimeout past ``time_limit``."""
    if spec.algorithm == "oracle":
        start = time.perf_counter()
        results = run_oracle(g, spec)
        stats = QueryStats("oracle", elapsed=time.perf_counter() - start)
        return results, stats
    return RUNNERS[spec.algorithm](g, spec, time_limit=time_limit)


__all__ = [
    "ALGORITHMS", "CommunityResult", "QuerySpec", "QueryStats", "QueryTimeout",
    "run_basic", "run_basic_plus", "run_dec", "run_inc", "run_oracle",
    "shared_keywords", "SUBSET_CAP", "run_query",
]
