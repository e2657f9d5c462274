"""Pattern calculus for binary CSPs: patterns, subdivisions, sub-pattern and
topological-minor occurrence, augmented patterns, and the solvers and class
deciders built on them."""

from .core import (
    AugmentedPattern,
    Graph,
    Instance,
    Pattern,
    RelationSpec,
    augment,
    augmented_instance_pattern,
    canonical_key,
    instance_point_ids,
    instance_relation,
    is_complete,
    make_pattern,
    pattern_from_graph,
    pattern_from_instance,
    subdivide,
)
from .catalogue import (
    catalogue_names,
    make_named,
    make_p2_extension,
    make_pivot,
    make_pivot_neq,
)
from .occurrence import (
    Embedding,
    TmWitness,
    enumerate_subdivisions,
    find_sub_pattern,
    forbids,
    is_star_like,
    occurs_tm,
    pg_form_graph,
)
from .graphs import (
    DecompositionTree,
    articulation_vertices,
    biconnected_blocks,
    connected_components,
    constraint_graph,
    graph_topological_minor,
    is_acyclic,
    part_disjoint_positive_path,
    tutte_decompose,
    two_separations,
)
from .solvers import (
    SolveResult,
    brute_force_solve,
    check_polymorphism,
    classify,
    decide_ac_class,
    decide_sac_class,
    establish_ac,
    establish_sac,
    mac_solve,
    polymorphism_pattern,
    solve,
    solve_acyclic,
    solve_articulation,
    solve_tutte_scheme,
)
from .gadgets import (
    Cnf,
    build_gc_gadget,
    build_sat_gadget,
    make_globally_consistent,
    parse_dimacs,
    truth_table_sat,
    verify_gadget,
)
from .generator import gen_random, gen_random_tree
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
