"""Case study on the Southern Women network with hand-written topic keywords.

Women are the upper layer and events the lower layer. We ask which group of
women around A shares an interest in environmental events.
"""
from abcs import datasets
from abcs.search import QuerySpec, run_query

g = datasets.southern_women()
print(f"{g.n_upper} women, {g.n_lower} events, {g.m} attendances")

for kws in (["environmental"], None):
    spec = QuerySpec.build(g, "A", 2, 2, kws)
    results, stats = run_query(g, spec)
    print("\nS =", g.keywords.words(spec.keywords))
    for r in results:
        print("  women ", sorted(g.upper_labels[u] for u in r.upper))
        print("  events", sorted(g.lower_labels[v] for v in r.lower))
        print("  shared", sorted(g.keywords.words(r.shared_upper)), sorted(g.keywords.words(r.shared_lower)))
    if not results:
        print("  no attributed community")
