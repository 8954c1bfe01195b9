"""Exact Roman domination and Roman bondage computations on small graphs."""

from .bondage import (
    BondageResult,
    BondageStatus,
    Impact,
    VertexImpactPartition,
    classify_all,
    classify_vertex,
    is_roman_vertex_critical,
    roman_bondage,
    witness_from_critical_vertex,
    witness_three_low_neighbors,
)
from .bounds import (
    BoundEvaluation,
    BoundId,
    CheckId,
    CheckOutcome,
    CheckStatus,
    bound_avg_degree,
    bound_critical_vertex,
    bound_girth_euler,
    bound_path,
    bound_surface15,
    delta_max_bound,
    theorem_check,
)
from .graph import (
    INFINITY,
    DegreeProfile,
    EmbeddingInfo,
    Graph,
    GraphError,
    build_graph,
    degree_profile,
    edge_cut,
    enumerate_small_graphs,
    girth,
    is_connected,
    length2_paths,
    private_neighbors,
    remove_edges,
    remove_vertex,
)
from .graphio import (
    CorpusRecord,
    GraphIOError,
    generate,
    hat_construction,
    load_corpus,
    parse_graph6,
    write_graph6,
)
from .rdf import (
    RomanFunction,
    SolveResult,
    Status,
    gamma_exact,
    gamma_r_constrained,
    gamma_r_exact,
    gamma_r_oracle,
    is_rdf,
    weight,
)

__version__ = "0.1.0"
