"""Disparate selections of set-valued mappings on simple graphs.

A disparate selection picks one color per vertex from its domain so that
adjacent vertices never share a color. This covers list coloring, systems of
distinct representatives, Latin rectangle extension and Sudoku.
"""
from .cascades import (
    Cascade,
    Collection,
    cascade_derive,
    cascade_structure,
    check_generalized_hall_tiny,
    derive_collection,
    enumerate_primitive_critical_cascades,
    induced_collection,
    is_hall_collection,
    is_w_distributed,
    restrict_collection,
    submap_from_collection,
    table_collection,
)
from .core import commit, compl, complement_mapping, hull, is_disparate_pair, is_disparate_set
from .instance import (
    FIXTURES,
    Instance,
    InstanceError,
    graph_of,
    parse_instance,
    restrict,
    serialize_instance,
    with_graph,
)
from .kernel import (
    KernelTrace,
    SolveTrace,
    calc_method_1,
    calc_method_2,
    elimination_points,
    find_elimination_set,
    has_unique_selection,
    is_disparate_mapping,
)
from .oracle import (
    count_selections,
    enumerate_selections,
    exists_selection,
    is_generalized_critical,
    kernel_bruteforce,
    max_disparate_size,
    minimal_critical_sets,
)
from .transitive import (
    clique_components,
    hall_check_transitive,
    is_t_critical,
    is_transitive,
    minimal_t_critical_sets,
    size_transitive,
    solve_transitive,
)

__version__ = "0.1.0"
