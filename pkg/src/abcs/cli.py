"""Command-line entry point: ``abcs query|core|bench|gen-attrs``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .bench import (
    CSV_COLUMNS,
    KNOBS,
    SUMMARY_COLUMNS,
    BenchPlan,
    Cell,
    Dataset,
    run_plan,
    summarize,
    write_csv,
)
from .candidates import CapExceeded
from .core import CoreParams, core_decompose
from .ingest import FormatError, SyntheticAttrConfig, generate_attributes, load_graph, write_attributes
from .search import ALGORITHMS, QuerySpec, run_query
from .timing import QueryTimeout

EXIT_OK = 0
EXIT_TIMEOUT = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _load(args):
    try:
        return load_graph(args.graph, args.attrs_u, args.attrs_v)
    except (OSError, FormatError) as e:
        raise InputError(str(e)) from e


def result_document(g, spec: QuerySpec, results, stats, timing: bool = True) -> dict:
    """The JSON result document; key order is part of the format."""
    def words(ids):
        return sorted(g.keywords.words(ids))

    return {
        "query": g.upper_labels[spec.q],
        "alpha": spec.params.alpha,
        "beta": spec.params.beta,
        "s": words(spec.keywords),
        "algorithm": spec.algorithm,
        "results": [
            {
                "keywords_u": words(r.shared_upper),
                "keywords_v": words(r.shared_lower),
                "vertices_u": [g.upper_labels[u] for u in r.upper],
                "vertices_v": [g.lower_labels[v] for v in r.lower],
                "size": r.size,
            }
            for r in results
        ],
        "stats": {
            "candidates_generated": stats.candidates_generated,
            "candidates_verified": stats.candidates_verified,
            "peels_run": stats.peels_run,
            "elapsed_ms": round(stats.elapsed * 1000, 3) if timing else 0,
        },
    }


def format_tsv(doc: dict) -> str:
    lines = ["keywords_u\tkeywords_v\tvertices_u\tvertices_v\tsize"]
    for r in doc["results"]:
        lines.append("\t".join([",".join(r["keywords_u"]), ",".join(r["keywords_v"]),
                                ",".join(r["vertices_u"]), ",".join(r["vertices_v"]),
                                str(r["size"])]))
    return "\n".join(lines) + "\n"


def cmd_query(args) -> int:
    g = _load(args)
    try:
        q = g.upper_index(args.q)
    except KeyError:
        raise InputError(f"unknown upper vertex {args.q!r}") from None
    if args.keywords.strip() == "all":
        keywords = None
    else:
        words = [w.strip() for w in args.keywords.split(",") if w.strip()]
        unknown = [w for w in words if w not in g.keywords]
        if unknown:
            raise InputError(f"keywords not held by {args.q}: {', '.join(unknown)}")
        keywords = words
    try:
        spec = QuerySpec.build(g, q, args.alpha, args.beta, keywords, args.algo)
        results, stats = run_query(g, spec, args.time_limit)
    except (ValueError, CapExceeded) as e:
        raise InputError(str(e)) from e
    doc = result_document(g, spec, results, stats, timing=not args.no_timing)
    if args.output == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(format_tsv(doc))
    return EXIT_OK


def cmd_core(args) -> int:
    g = _load(args)
    try:
        params = CoreParams(args.alpha, args.beta)
    except ValueError as e:
        raise InputError(str(e)) from e
    comps = core_decompose(g, params)
    print(f"components\t{len(comps)}")
    for i, c in enumerate(comps, start=1):
        print(f"{i}\t{len(c.upper_indices())}\t{len(c.lower_indices())}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        plan = BenchPlan(
            datasets=[Dataset.parse(d) for d in args.dataset],
            alpha_range=_ints(args.alphas),
            beta_range=_ints(args.betas),
            vertex_fractions=_floats(args.vfracs),
            keyword_fractions=_floats(args.kfracs),
            s_fractions=_floats(args.sfracs),
            queries_per_cell=args.queries,
            algorithms=tuple(args.algos.split(",")),
            seed=args.seed,
            time_limit=args.time_limit,
            default=Cell(args.default_alpha, args.default_beta),
            knobs=tuple(args.knobs.split(",")),
        )
        plan.validate()
    except ValueError as e:
        raise InputError(str(e)) from e
    records = run_plan(plan)
    write_csv(args.out, CSV_COLUMNS, [r.row() for r in records])
    if args.summary:
        write_csv(args.summary, SUMMARY_COLUMNS, summarize(records))
    return EXIT_OK


def cmd_gen_attrs(args) -> int:
    cfg = SyntheticAttrConfig(args.min, args.max, args.vocab_u, args.vocab_v, args.seed)
    try:
        cfg.validate()
    except ValueError as e:
        raise InputError(str(e)) from e
    g = generate_attributes(_load(args), cfg)
    write_attributes(args.out_u, g.upper_labels, g.upper_keywords, g.keywords)
    write_attributes(args.out_v, g.lower_labels, g.lower_keywords, g.keywords)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abcs", description="Attributed (alpha, beta)-community search")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, attrs=True):
        sp.add_argument("--graph", required=True, help="edge list, one 'upper lower' pair per line")
        if attrs:
            sp.add_argument("--attrs-u", help="upper-layer attribute file")
            sp.add_argument("--attrs-v", help="lower-layer attribute file")

    q = sub.add_parser("query", help="search the communities of one query vertex")
    graph_args(q)
    q.add_argument("--q", required=True, help="upper vertex label")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--beta", type=int, required=True)
    q.add_argument("--keywords", default="all", help="comma-separated keywords, or 'all'")
    q.add_argument("--algo", choices=ALGORITHMS, default="dec")
    q.add_argument("--output", choices=("json", "tsv"), default="json")
    q.add_argument("--time-limit", type=float, default=None, help="seconds")
    q.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")
    q.set_defaults(func=cmd_query)

    c = sub.add_parser("core", help="(alpha, beta)-core components")
    graph_args(c)
    c.add_argument("--alpha", type=int, required=True)
    c.add_argument("--beta", type=int, required=True)
    c.set_defaults(func=cmd_core)

    b = sub.add_parser("bench", help="parameter sweep, one CSV row per query and algorithm")
    b.add_argument("--dataset", action="append", required=True,
                   help="EDGES or EDGES:ATTRS_U:ATTRS_V; repeatable")
    b.add_argument("--alphas", default="2,3,4,5,6")
    b.add_argument("--betas", default="2,3,4,5,6")
    b.add_argument("--vfracs", default="0.2,0.4,0.6,0.8,1.0")
    b.add_argument("--kfracs", default="0.2,0.4,0.6,0.8,1.0")
    b.add_argument("--sfracs", default="0.2,0.4,0.6,0.8,1.0")
    b.add_argument("--knobs", default=",".join(KNOBS), help="which knobs to sweep")
    b.add_argument("--default-alpha", type=int, default=3)
    b.add_argument("--default-beta", type=int, default=3)
    b.add_argument("--queries", type=int, default=300)
    b.add_argument("--algos", default="dec,inc,basic+")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--time-limit", type=float, default=60.0)
    b.add_argument("--out", default="-", help="record CSV path, '-' for stdout")
    b.add_argument("--summary", help="per-cell summary CSV path")
    b.set_defaults(func=cmd_bench)

    a = sub.add_parser("gen-attrs", help="write synthetic attribute files for an edge list")
    graph_args(a, attrs=False)
    a.set_defaults(attrs_u=None, attrs_v=None)
    a.add_argument("--min", type=int, default=8)
    a.add_argument("--max", type=int, default=13)
    a.add_argument("--vocab-u", type=int, default=50)
    a.add_argument("--vocab-v", type=int, default=50)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out-u", required=True)
    a.add_argument("--out-v", required=True)
    a.set_defaults(func=cmd_gen_attrs)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except QueryTimeout as e:
        print(f"error: query timed out ({e})", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
