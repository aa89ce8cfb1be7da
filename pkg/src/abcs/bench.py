"""Parameter sweeps over datasets, one CSV row per (cell, query, algorithm).

Cells vary one knob at a time around a default point (alpha = beta = 3,
all fractions 1.0). Each query's keyword sample is seeded from
(plan seed, query label), so any row can be rerun on its own.
"""
from __future__ import annotations

import csv
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from statistics import fmean
from zlib import crc32

import numpy as np

from .core import CoreParams
from .graph import AttributedBipartiteGraph
from .ingest import (
    SyntheticAttrConfig,
    generate_attributes,
    load_graph,
    sample_keywords,
    sample_query_keywords,
    sample_subgraph,
    select_query_vertices,
)
from .search import ALGORITHMS, QuerySpec, run_query
from .timing import QueryTimeout

log = logging.getLogger(__name__)

DEFAULT_RANGE = (2, 3, 4, 5, 6)
DEFAULT_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)
KNOBS = ("alpha", "beta", "vfrac", "kfrac", "sfrac")
CSV_COLUMNS = ("dataset", "algorithm", "alpha", "beta", "vfrac", "kfrac", "sfrac", "query",
               "elapsed_ms", "result_size", "generated", "verified", "timeout")
SUMMARY_COLUMNS = ("dataset", "algorithm", "alpha", "beta", "vfrac", "kfrac", "sfrac",
                   "queries", "timeouts", "mean_elapsed_ms")


@dataclass(frozen=True)
class Dataset:
    name: str
    edges: str
    attrs_u: str | None = None
    attrs_v: str | None = None

    @classmethod
    def parse(cls, text: str) -> "Dataset":
        """``EDGES`` or ``EDGES:ATTRS_U:ATTRS_V``; the name is the edge file's stem."""
        parts = text.split(":")
        if len(parts) not in (1, 3):
            raise ValueError(f"dataset must be EDGES or EDGES:ATTRS_U:ATTRS_V, got {text!r}")
        edges = parts[0]
        au, av = (parts[1], parts[2]) if len(parts) == 3 else (None, None)
        return cls(Path(edges).stem, edges, au, av)


@dataclass(frozen=True)
class Cell:
    alpha: int
    beta: int
    vfrac: float = 1.0
    kfrac: float = 1.0
    sfrac: float = 1.0


@dataclass
class BenchPlan:
    datasets: list[Dataset]
    alpha_range: tuple[int, ...] = DEFAULT_RANGE
    beta_range: tuple[int, ...] = DEFAULT_RANGE
    vertex_fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    keyword_fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    s_fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    queries_per_cell: int = 300
    algorithms: tuple[str, ...] = ("dec", "inc", "basic+")
    seed: int = 0
    time_limit: float = 60.0
    default: Cell = Cell(3, 3)
    knobs: tuple[str, ...] = KNOBS

    def validate(self) -> None:
        for name in ("alpha_range", "beta_range", "vertex_fractions", "keyword_fractions",
                     "s_fractions", "algorithms"):
            if not getattr(self, name):
                raise ValueError(f"{name} is empty")
        if min(self.alpha_range + self.beta_range) < 1:
            raise ValueError("alpha and beta must be >= 1")
        for f in self.vertex_fractions + self.keyword_fractions + self.s_fractions:
            if not 0 < f <= 1:
                raise ValueError(f"fraction {f} outside (0, 1]")
        if self.queries_per_cell < 1:
            raise ValueError("queries_per_cell must be positive")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms: {', '.join(bad)}")
        bad = [k for k in self.knobs if k not in KNOBS]
        if bad:
            raise ValueError(f"unknown knobs: {', '.join(bad)}")

    def cells(self) -> list[Cell]:
        """The default cell, then each selected knob swept with the others at default."""
        d = self.default
        sweeps = {
            "alpha": [Cell(a, d.beta) for a in self.alpha_range],
            "beta": [Cell(d.alpha, b) for b in self.beta_range],
            "vfrac": [Cell(d.alpha, d.beta, vfrac=f) for f in self.vertex_fractions],
            "kfrac": [Cell(d.alpha, d.beta, kfrac=f) for f in self.keyword_fractions],
            "sfrac": [Cell(d.alpha, d.beta, sfrac=f) for f in self.s_fractions],
        }
        out = [d]
        for knob in self.knobs:
            out.extend(c for c in sweeps[knob] if c not in out)
        return out


@dataclass
class BenchRecord:
    dataset: str
    algorithm: str
    alpha: int
    beta: int
    vfrac: float
    kfrac: float
    sfrac: float
    query: str
    elapsed_ms: float
    result_size: int
    generated: int
    verified: int
    timeout: bool

    def row(self) -> list:
        return [getattr(self, c) if c != "timeout" else int(self.timeout) for c in CSV_COLUMNS]


@lru_cache(maxsize=4)
def load_dataset(ds: Dataset, seed: int = 0) -> AttributedBipartiteGraph:
    """Load a dataset; synthetic keywords are generated when it has no attribute files."""
    g = load_graph(ds.edges, ds.attrs_u, ds.attrs_v)
    if ds.attrs_u is None and ds.attrs_v is None:
        g = generate_attributes(g, SyntheticAttrConfig(seed=seed))
    return g


def query_rng(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng([seed, crc32(label.encode("utf-8"))])


def run_cell(g: AttributedBipartiteGraph, name: str, cell: Cell,
             plan: BenchPlan) -> list[BenchRecord]:
    """All queries of one cell against every planned algorithm."""
    if cell.vfrac < 1:
        g = sample_subgraph(g, cell.vfrac, plan.seed)
    if cell.kfrac < 1:
        g = sample_keywords(g, cell.kfrac, plan.seed)
    params = CoreParams(cell.alpha, cell.beta)
    records = []
    for q in select_query_vertices(g, params, plan.queries_per_cell, plan.seed):
        label = g.upper_labels[q]
        s = sample_query_keywords(g, q, cell.sfrac, query_rng(plan.seed, label))
        for algo in plan.algorithms:
            spec = QuerySpec(q, params, s, algo)
            try:
                results, stats = run_query(g, spec, plan.time_limit)
                rec = BenchRecord(name, algo, cell.alpha, cell.beta, cell.vfrac, cell.kfrac,
                                  cell.sfrac, label, round(stats.elapsed * 1000, 3),
                                  results[0].size if results else 0,
                                  stats.candidates_generated, stats.candidates_verified, False)
            except QueryTimeout:
                rec = BenchRecord(name, algo, cell.alpha, cell.beta, cell.vfrac, cell.kfrac,
                                  cell.sfrac, label, plan.time_limit * 1000, 0, 0, 0, True)
            records.append(rec)
    return records


def _cell_job(args) -> list[BenchRecord]:
    ds, cell, plan = args
    return run_cell(load_dataset(ds, plan.seed), ds.name, cell, plan)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("ABCS_THREADS", "1")))
    except ValueError:
        return 1


def run_plan(plan: BenchPlan, workers: int | None = None) -> list[BenchRecord]:
    """Every cell of every loadable dataset; a dataset that fails to load is skipped."""
    plan.validate()
    jobs = []
    for ds in plan.datasets:
        try:
            load_dataset(ds, plan.seed)
        except (OSError, ValueError) as e:
            log.error("skipping dataset %s: %s", ds.name, e)
            continue
        jobs.extend((ds, cell, plan) for cell in plan.cells())
    workers = worker_count() if workers is None else workers
    if workers == 1:
        batches = map(_cell_job, jobs)
        return [r for batch in batches for r in batch]
    with ProcessPoolExecutor(workers) as pool:
        # map keeps job order, so output does not depend on scheduling
        return [r for batch in pool.map(_cell_job, jobs) for r in batch]


def summarize(records: list[BenchRecord]) -> list[list]:
    """Per (dataset, algorithm, cell): query count, timeouts, mean elapsed of finished queries.

    The mean is ``INF`` when every query timed out.
    """
    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        key = (r.dataset, r.algorithm, r.alpha, r.beta, r.vfrac, r.kfrac, r.sfrac)
        groups.setdefault(key, []).append(r)
    rows = []
    for key, rs in groups.items():
        done = [r.elapsed_ms for r in rs if not r.timeout]
        mean = round(fmean(done), 3) if done else "INF"
        rows.append([*key, len(rs), len(rs) - len(done), mean])
    return rows


def write_csv(path, header, rows) -> None:
    out = sys.stdout if str(path) == "-" else open(path, "w", newline="", encoding="utf-8")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
