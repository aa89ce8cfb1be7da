"""A short tour: cores, a keyword query, and how the four algorithms compare.

Run with ``python notebooks/walkthrough.py``. Each block prints what it found.
"""
from abcs import datasets
from abcs.core import CoreParams, core_decompose, core_mask
from abcs.search import ALGORITHMS, QuerySpec, run_query

g = datasets.fig2()
print(f"fig2 fixture: {g.n_upper} upper, {g.n_lower} lower, {g.m} edges")


def names(upper, lower):
    return sorted(g.upper_labels[u] for u in upper) + sorted(g.lower_labels[v] for v in lower)


# the (2,2)-core drops B, F, J and K
core = core_mask(g, CoreParams(2, 2))
print("(2,2)-core:", names(core.upper_indices(), core.lower_indices()))

# at (1,1) every edge survives, so the components are just the connected pieces
for i, comp in enumerate(core_decompose(g, CoreParams(1, 1)), 1):
    print(f"(1,1) component {i}:", names(comp.upper_indices(), comp.lower_indices()))

# a query: community of A with the most shared keywords, from S = {a, b, c}
results, stats = run_query(g, QuerySpec.build(g, "A", 2, 2, ["a", "b", "c"]))
for r in results:
    print("community:", names(r.upper, r.lower),
          "shared", sorted(g.keywords.words(r.shared_upper)), "|", sorted(g.keywords.words(r.shared_lower)))

# every algorithm returns the same answer, they differ in how many pairs get peeled
print(f"{'algorithm':<8} {'generated':>9} {'verified':>8} {'peels':>5}")
for algo in ALGORITHMS:
    _, st = run_query(g, QuerySpec.build(g, "A", 2, 2, ["a", "b", "c"], algo))
    print(f"{algo:<8} {st.candidates_generated:>9} {st.candidates_verified:>8} {st.peels_run:>5}")
