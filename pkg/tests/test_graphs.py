"""Graph algorithms: constraint graphs, connectivity, topological minors,
separations, Tutte decomposition, and part-disjoint positive paths."""

import itertools
import random

import pytest

from minorcsp import (
    Graph,
    Instance,
    articulation_vertices,
    biconnected_blocks,
    constraint_graph,
    gen_random,
    graph_topological_minor,
    is_acyclic,
    make_named,
    part_disjoint_positive_path,
    pattern_from_graph,
    tutte_decompose,
    two_separations,
)
from minorcsp.errors import Disconnected, SizeLimitExceeded, UnknownPoint
from minorcsp.gadgets import Cnf, build_sat_gadget

from oracles import graph_tm_oracle, random_graph


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(range(n), itertools.combinations(range(n), 2))


# -- constraint graphs ---------------------------------------------------------


def test_constraint_graph_of_triangle_pattern():
    cg = constraint_graph(make_named("C3"))
    assert len(cg.vertices) == 3 and len(cg.edges) == 3
    assert not is_acyclic(cg)


def test_constraint_graph_round_trips_random_graphs():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, max_vertices=5)
        g_used = Graph([v for v in g.vertices if g.degree(v) > 0], g.edges)
        cg = constraint_graph(pattern_from_graph(g))
        # parts correspond to non-isolated vertices; compare up to relabeling
        assert len(cg.vertices) == len(g_used.vertices)
        assert len(cg.edges) == len(g_used.edges)
        assert sorted(cg.degree(v) for v in cg.vertices) == \
            sorted(g_used.degree(v) for v in g_used.vertices)


def test_all_trivial_instance_has_edgeless_constraint_graph():
    inst = Instance([0, 1, 2], {v: (0, 1) for v in range(3)})
    cg = constraint_graph(inst)
    assert not cg.edges


def test_pattern_l_gives_a_path():
    cg = constraint_graph(make_named("L"))
    assert sorted(cg.degree(v) for v in cg.vertices) == [1, 1, 2, 2]
    assert is_acyclic(cg)


# -- acyclicity and articulation --------------------------------------------------


def test_triangle_has_no_articulation():
    g = cycle(3)
    assert not is_acyclic(g)
    assert articulation_vertices(g) == frozenset()


def test_path_middle_is_articulation():
    g = Graph("abc", [("a", "b"), ("b", "c")])
    assert is_acyclic(g)
    assert articulation_vertices(g) == frozenset({"b"})


def test_two_triangles_sharing_a_vertex():
    g = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert articulation_vertices(g) == frozenset({2})
    blocks, cuts = biconnected_blocks(g)
    assert sorted(sorted(b) for b in blocks) == [[0, 1, 2], [2, 3, 4]]


# -- graph topological minors -------------------------------------------------------


def test_triangle_minor_of_larger_cycle():
    res = graph_topological_minor(cycle(3), cycle(5))
    assert res is not None
    bmap, paths = res
    assert len(set(bmap.values())) == 3
    internals = [v for p in paths.values() for v in p[1:-1]]
    assert len(internals) == len(set(internals)) == 2


def test_triangle_not_minor_of_tree():
    tree = Graph(range(5), [(0, 1), (1, 2), (2, 3), (2, 4)])
    assert graph_topological_minor(cycle(3), tree) is None


def test_k4_minor_of_itself():
    assert graph_topological_minor(complete(4), complete(4)) is not None


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        graph_topological_minor(complete(4), complete(5), max_host_vertices=3)


def test_graph_tm_matches_subdivision_oracle():
    rng = random.Random(17)
    for _ in range(60):
        h = random_graph(rng, max_vertices=4, p_edge=0.5)
        g = random_graph(rng, max_vertices=5, p_edge=0.55)
        got = graph_topological_minor(h, g) is not None
        assert got == graph_tm_oracle(h, g)


# -- separations and Tutte decomposition ----------------------------------------------


def test_reported_separators_disconnect():
    rng = random.Random(23)
    for _ in range(25):
        g = random_graph(rng, max_vertices=6, p_edge=0.5)
        adj = g.adjacency()
        for sep, side in two_separations(g):
            outside = set(g.vertices) - set(sep) - side
            assert outside  # the other side is nonempty
            for v in side:
                assert not any(w in outside for w in adj[v])


def test_tree_decomposes_into_small_torsos():
    tree = Graph(range(6), [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)])
    t = tutte_decompose(tree)
    assert all(n.kind == "SMALL" for n in t.nodes)
    assert all(len(a.separator) == 1 for a in t.arcs)
    assert t.replay() == tree


def test_two_triangles_joined_by_an_edge():
    g = Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    t = tutte_decompose(g)
    kinds = sorted(n.kind for n in t.nodes)
    assert kinds == ["CYCLE", "CYCLE", "SMALL"]
    assert t.replay() == g
    seps = sorted(a.separator for a in t.arcs)
    assert seps == [(2,), (3,)]


def test_k4_is_single_three_connected_node():
    t = tutte_decompose(complete(4))
    assert len(t.nodes) == 1 and t.nodes[0].kind == "THREE_CONNECTED"
    assert not t.arcs


def test_cycle_is_single_cycle_node():
    t = tutte_decompose(cycle(5))
    assert len(t.nodes) == 1 and t.nodes[0].kind == "CYCLE"


def test_decomposition_replay_reconstructs_random_graphs():
    rng = random.Random(99)
    done = 0
    while done < 30:
        g = random_graph(rng, max_vertices=7, p_edge=0.5)
        comps = [c for c in two_separations(g, 0)] if False else None
        from minorcsp.graphs import is_connected

        if not g.vertices or not is_connected(g):
            continue
        t = tutte_decompose(g)
        assert t.replay() == g
        for arc in t.arcs:
            assert 1 <= len(arc.separator) <= 2
        done += 1


def test_disconnected_input_rejected():
    with pytest.raises(Disconnected):
        tutte_decompose(Graph(range(4), [(0, 1), (2, 3)]))


# -- part-disjoint positive paths ---------------------------------------------------


def test_trivial_path_when_endpoints_coincide():
    inst = Instance([0], {0: (0,)})
    assert part_disjoint_positive_path(inst, (0, 0), (0, 0)) == ((0, 0),)


def test_single_allowed_pair_gives_length_one_path():
    inst = Instance([0, 1], {0: (0, 1), 1: (0, 1)}, {(0, 1): [(0, 1)]})
    path = part_disjoint_positive_path(inst, (0, 0), (1, 1))
    assert path == ((0, 0), (1, 1))
    assert part_disjoint_positive_path(inst, (0, 1), (1, 0)) is None


def test_gadget_path_for_simplest_formula():
    inst, _ = build_sat_gadget(Cnf(1, ((1, 1, 1),)))
    path = part_disjoint_positive_path(inst, ("p0", 0), ("p2", 0))
    assert path is not None
    anchors = [p for p in path if p[0].startswith("p")]
    assert anchors == [("p0", 0), ("p1", 0), ("p2", 0)]  # in order


def test_unknown_endpoints_rejected():
    inst = Instance([0], {0: (0,)})
    with pytest.raises(UnknownPoint):
        part_disjoint_positive_path(inst, (0, 5), (0, 0))


def test_min_edges_excludes_direct_hop():
    inst = Instance([0, 1], {0: (0,), 1: (0,)})
    assert part_disjoint_positive_path(inst, (0, 0), (1, 0)) is not None
    assert part_disjoint_positive_path(inst, (0, 0), (1, 0), min_edges=2) is None
