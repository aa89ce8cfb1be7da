"""Small timing sweep on a synthetic power-law graph.

Same machinery as ``abcs bench`` but small enough to finish in a few minutes.
Bump N and M to see the gaps widen.
"""
import sys
from statistics import fmean

from abcs.bench import BenchPlan, Cell, run_cell
from abcs.ingest import SyntheticAttrConfig, chung_lu_graph, generate_attributes

N, M = 4000, 20000
queries = int(sys.argv[1]) if len(sys.argv) > 1 else 10

g = chung_lu_graph(N, N, M, seed=1)
g = generate_attributes(g, SyntheticAttrConfig(vocab_size_upper=25, vocab_size_lower=25, seed=2))
print(f"graph: {g.n_upper}x{g.n_lower}, m={g.m}")

plan = BenchPlan([], queries_per_cell=queries, algorithms=("dec", "inc", "basic+"),
                 time_limit=10, seed=3)
for alpha in range(2, 7):
    records = run_cell(g, "synthetic", Cell(alpha, 3), plan)
    row = []
    for algo in plan.algorithms:
        mine = [r for r in records if r.algorithm == algo]
        done = [r.elapsed_ms for r in mine if not r.timeout]
        mean = f"{fmean(done):8.1f}" if done else "     INF"
        row.append(f"{algo} {mean} ms ({len(mine) - len(done)} t/o)")
    print(f"alpha={alpha}: " + " | ".join(row))
