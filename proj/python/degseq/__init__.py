"""Exact degree sequence optimization over tree decompositions.

Vertex ids are 1-based throughout the Python API, matching the file formats.
"""

from ._degseq import (  # noqa: F401
    CostModel,
    Graph,
    NiceDecomposition,
    SolveReport,
    TreeDecomposition,
    brute_force_solve,
    cubic_gadget,
    cubic_subgraph_exists,
    emit_graph_file,
    emit_td_file,
    evaluate,
    from_b_matching,
    from_factor,
    from_interval,
    generate,
    min_fill_decompose,
    parse_costs_file,
    parse_graph_file,
    parse_td_file,
    solve,
    to_nice,
    validate_nice,
    validate_td,
)

__version__ = "0.1.0"
