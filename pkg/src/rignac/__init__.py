"""Exact toolkit for 2D combinatorial rigidity and NAC-colourings."""

from .catalog import (
    CatalogEntry,
    check_conjecture_61,
    enumerate_minimally_rigid,
    histogram_report,
    load_catalog,
    minimally_rigid_graph6,
    nnac_histogram,
    save_catalog,
)
from .colouring import (
    EdgeColouring,
    PartialNacState,
    TwoTreeCertificate,
    construct_nac_minimally_rigid,
    count_nac,
    count_nac_complete_bipartite,
    enumerate_nac,
    enumerate_nac_detailed,
    is_nac,
    is_nap,
    locally_nac_check,
    nap_from_separation,
    nnac_upper_bound,
    separation_from_nap,
    separation_from_stable_cut,
)
from .constructions import (
    Fixture,
    fixtures,
    glue_along_edge,
    make_2tree,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_gk,
    make_gk_prime,
    make_gsc,
    make_path,
    make_wheel,
)
from .graph import (
    Graph,
    GraphParseError,
    PreconditionError,
    Separation,
    are_isomorphic,
    blocks,
    canonical_form,
    canonical_graph,
    connected_components,
    contract_edge,
    emit_edge_list,
    emit_graph6,
    induced_subgraph,
    is_connected,
    is_cut,
    is_stable_set,
    parse_edge_list,
    parse_graph,
    parse_graph6,
)
from .rigidity import (
    GscDecomposition,
    GscNonMembership,
    GscStep,
    PebbleState,
    RigidityReport,
    count_prism_subgraphs,
    is_2tree,
    rank,
    recognize_0extension_graph,
    recognize_gsc,
    rigidity_report,
    rigidly_related_pairs,
    two_tree_peel,
    vertex_split,
    zero_extend,
)
from .stable_cut import (
    StableCutResult,
    algorithm1_stable_cut,
    exhaustive_stable_cut,
    is_biconnected,
    stable_cut_avoiding,
)

__version__ = "0.1.0"
