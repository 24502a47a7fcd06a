"""Exact computations for Turán-type problems on r-uniform hypergraphs."""

from .constructions import (
    balanced_union,
    catalog,
    crossing_construction,
    make_H1,
    make_H2,
    make_T_prime,
)
from .hypergraph import (
    FormatError,
    Hypergraph,
    HypergraphError,
    are_isomorphic,
    blow_up,
    complement,
    contains_copy,
    disjoint_union,
    find_copy,
    induced,
    make_hypergraph,
)
from .invariants import (
    check_hereditary,
    clique_number,
    excess,
    find_hole,
    has_property,
    hereditary_bound,
    independence_number,
)
from .proofs import (
    build_link_multigraph,
    extract_R_copy,
    find_heavy_triple,
    fk_threshold,
    run_hole_removal,
    verify_lemma1_step,
)
from .search import (
    density_sequence,
    max_edges_avoiding,
    min_edges_with_property,
    property_via_complement,
)

__version__ = "0.1.0"
