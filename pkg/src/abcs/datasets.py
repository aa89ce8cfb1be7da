"""Small bundled graphs used by the tests, demos and CLI examples.

``fig2``: two components; upper A B C D E J, lower F G H I K. Its
(2,2)-core is {A, C, D, E, G, H, I}; querying A with alpha = beta = 2 and
S = {a, b, c} yields shared keywords {b, c} / {x, y}.

``fig6``: an upper vertex Q with five lower neighbors, for lower-candidate
pruning at alpha = 3.

``southern_women``: the Davis Southern Women network (18 women A-R, 14
events w, x, y, z, m-v) with hand-written interest keywords.
"""
from __future__ import annotations

from importlib import resources

from .graph import AttributedBipartiteGraph
from .ingest import load_graph

FIG6_NEIGHBORS = {
    "N1": ["x", "y"],
    "N2": ["x", "y", "z"],
    "N3": ["x", "y"],
    "N4": ["z"],
    "N5": ["z", "w"],
}


def data_path(name: str):
    return resources.files("abcs") / "data" / name


def _load(stem: str) -> AttributedBipartiteGraph:
    with resources.as_file(data_path(f"{stem}.edges")) as e, \
            resources.as_file(data_path(f"{stem}.attr_u")) as au, \
            resources.as_file(data_path(f"{stem}.attr_v")) as av:
        return load_graph(e, au, av)


def fig2() -> AttributedBipartiteGraph:
    return _load("fig2")


def southern_women() -> AttributedBipartiteGraph:
    return _load("southern_women")


def fig6() -> AttributedBipartiteGraph:
    edges = [("Q", n) for n in FIG6_NEIGHBORS]
    return AttributedBipartiteGraph.from_labeled(edges, {"Q": ["q"]}, FIG6_NEIGHBORS)
