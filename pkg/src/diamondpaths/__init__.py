"""Edge-disjoint and independent paths, recursive diamond graphs, and f(k) checks."""

from .connectivity import (
    PathSystem,
    UpperBoundCertificate,
    Verdict,
    check_path_system,
    max_edge_disjoint_paths,
    max_independent_paths,
    oracle_max_independent,
    split_vertices,
    verify_cut,
)
from .construct import IndependentWitness, find_three_independent, find_two_independent, tree_median
from .diamond import (
    DiamondHierarchy,
    DiamondNode,
    diamond_counts,
    generate_diamond,
    smallest_enclosing,
    structural_upper_bound,
)
from .errors import GraphError, GraphTooLargeError, ParseError, PreconditionError
from .experiments import (
    PlantedInstance,
    Report,
    f_table,
    plant_paths_graph,
    verify_lemma1,
    verify_lemma2,
    verify_oracle,
    verify_two_paths,
)
from .graph import (
    Graph,
    SpanningTree,
    bfs_tree,
    build_graph,
    component_containing,
    parse_graph,
    serialize_graph,
)

__version__ = "0.1.0"

__all__ = [
    "DiamondHierarchy",
    "DiamondNode",
    "Graph",
    "GraphError",
    "GraphTooLargeError",
    "IndependentWitness",
    "ParseError",
    "PathSystem",
    "PlantedInstance",
    "PreconditionError",
    "Report",
    "SpanningTree",
    "UpperBoundCertificate",
    "Verdict",
    "bfs_tree",
    "build_graph",
    "check_path_system",
    "component_containing",
    "diamond_counts",
    "f_table",
    "find_three_independent",
    "find_two_independent",
    "generate_diamond",
    "max_edge_disjoint_paths",
    "max_independent_paths",
    "oracle_max_independent",
    "parse_graph",
    "plant_paths_graph",
    "serialize_graph",
    "smallest_enclosing",
    "split_vertices",
    "structural_upper_bound",
    "tree_median",
    "verify_cut",
    "verify_lemma1",
    "verify_lemma2",
    "verify_oracle",
    "verify_two_paths",
]
