"""Attributed (alpha, beta)-community search on bipartite graphs."""
from .candidates import CandidatePair, SupportIndex
from .core import CoreParams, PeelResult, core_decompose, core_mask, peel_community
from .graph import (
    AttributedBipartiteGraph,
    KeywordTable,
    Layer,
    SubgraphMask,
    VertexRef,
    connected_component_of,
    effective_degree,
    keyword_filtered_mask,
)
from .ingest import generate_attributes, load_graph, sample_keywords, sample_subgraph, write_graph
from .search import (
    CommunityResult,
    QuerySpec,
    QueryStats,
    run_basic,
    run_basic_plus,
    run_dec,
    run_inc,
    run_oracle,
    run_query,
)
from .timing import QueryTimeout

__version__ = "0.1.0"
