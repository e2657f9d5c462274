"""Core types, constructions, and the subdivision operation."""

import itertools
import random

import pytest

from minorcsp import (
    AugmentedPattern,
    Graph,
    Instance,
    Pattern,
    RelationSpec,
    augment,
    canonical_key,
    instance_point_ids,
    instance_relation,
    is_complete,
    make_named,
    make_pattern,
    pattern_from_graph,
    pattern_from_instance,
    subdivide,
)
from minorcsp.errors import (
    ArityMismatch,
    PartialTable,
    SamePart,
    SamePartEdge,
    UnknownPart,
    UnknownPoint,
)

from oracles import random_pattern


def triangle():
    return Graph((1, 2, 3), ((1, 2), (2, 3), (3, 1)))


# -- make_pattern ------------------------------------------------------------


def test_one_part_no_edges_is_valid():
    p = make_pattern([0, 1], {0: 0, 1: 0})
    assert p.n_parts == 1
    assert p.parts == {0: (0, 1)}


def test_edge_within_part_rejected():
    with pytest.raises(SamePartEdge):
        make_pattern([0, 1], {0: 0, 1: 0}, positive=[(0, 1)])
    with pytest.raises(SamePartEdge):
        make_pattern([0, 1], {0: 0, 1: 0}, negative=[(0, 1)])


def test_unknown_point_rejected():
    with pytest.raises(UnknownPoint):
        make_pattern([0, 1], {0: 0, 1: 1}, negative=[(0, 7)])
    with pytest.raises(UnknownPoint):
        make_pattern([0, 1], {0: 0})


def test_meeting_pattern_is_valid():
    j = make_pattern([0, 1, 2], {0: 0, 1: 1, 2: 2}, negative=[(0, 2), (1, 2)])
    assert j == make_named("J")


def test_pair_may_be_both_positive_and_negative():
    p = make_pattern([0, 1], {0: 0, 1: 1}, [(0, 1)], [(0, 1)])
    assert p.both_pairs == frozenset({(0, 1)})


# -- pattern_from_instance ----------------------------------------------------


def test_instance_pattern_matches_single_value_example():
    # three variables with one value each, one pair allowed, two disallowed
    inst = Instance("abc", {v: (0,) for v in "abc"},
                    {("a", "b"): [(0, 0)], ("a", "c"): [], ("b", "c"): []})
    pat = pattern_from_instance(inst)
    assert len(pat.points) == 3
    assert pat.n_parts == 3
    assert len(pat.positive) == 1
    assert len(pat.negative) == 2
    assert pat == make_named("fig1a")


def test_single_variable_three_values():
    inst = Instance(["v"], {"v": (0, 1, 2)})
    pat = pattern_from_instance(inst)
    assert len(pat.points) == 3
    assert pat.n_parts == 1
    assert not pat.positive and not pat.negative


def test_trivial_two_by_two_gives_four_positive_edges():
    inst = Instance([0, 1], {0: (0, 1), 1: (0, 1)})
    pat = pattern_from_instance(inst)
    assert len(pat.positive) == 4
    assert not pat.negative


def test_instance_pattern_is_complete_and_sized():
    rng = random.Random(11)
    for _ in range(25):
        n, d = rng.randint(1, 5), rng.randint(1, 3)
        from minorcsp import gen_random

        inst = gen_random(n, d, rng.random(), rng.randrange(10 ** 6))
        pat = pattern_from_instance(inst)
        assert is_complete(pat)
        assert len(pat.points) == sum(len(inst.domain[v]) for v in inst.variables)


# -- pattern_from_graph -------------------------------------------------------


def test_triangle_pattern_counts():
    pat = pattern_from_graph(triangle())
    assert len(pat.points) == 6
    assert pat.n_parts == 3
    assert len(pat.negative) == 3
    assert not pat.positive


def test_single_edge_graph():
    pat = pattern_from_graph(Graph("uv", [("u", "v")]))
    assert len(pat.points) == 2
    assert pat.n_parts == 2
    assert len(pat.negative) == 1


def test_star_graph_part_sizes():
    star = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    pat = pattern_from_graph(star)
    sizes = sorted(len(m) for m in pat.parts.values())
    assert sizes == [1, 1, 1, 3]


def test_graph_pattern_edge_count_property():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph(range(n), edges)
        pat = pattern_from_graph(g)
        assert not pat.positive
        assert len(pat.negative) == len(g.edges)


# -- subdivision ---------------------------------------------------------------


def test_subdivide_triangle_pattern_at_adjacent_parts():
    pat = pattern_from_graph(triangle())
    u, v = pat.part_pairs_with_edges()[0]
    out = subdivide(pat, u, v)
    assert len(out.points) == 8
    assert out.n_parts == 4
    assert len(out.negative) == 4


def test_subdivide_both_kind_pair_gives_midpoint_and_split_negatives():
    fig1c = make_pattern([0, 1], {0: 0, 1: 1}, [(0, 1)], [(0, 1)])
    fig1d = subdivide(fig1c, 0, 1)
    assert len(fig1d.points) == 5
    assert fig1d.n_parts == 3
    assert len(fig1d.positive) == 2
    assert len(fig1d.negative) == 2
    # the new part holds the positive midpoint plus the two negative stubs
    new_part = [m for rep, m in fig1d.parts.items() if rep > 1]
    assert len(new_part[0]) == 3


def test_subdivide_counts_over_random_draws():
    rng = random.Random(77)
    for _ in range(100):
        pat = random_pattern(rng)
        pairs = pat.part_pairs_with_edges()
        if not pairs:
            continue
        u, v = pairs[rng.randrange(len(pairs))]
        pos, neg = pat.edges_between(u, v)
        out = subdivide(pat, u, v)
        assert len(out.points) == len(pat.points) + len(pos) + 2 * len(neg)
        assert out.n_parts == pat.n_parts + 1


def test_subdivide_edgeless_pair_is_identity():
    pat = make_pattern([0, 1, 2], {0: 0, 1: 1, 2: 2}, negative=[(0, 1)])
    assert subdivide(pat, 0, 2) is pat


def test_subdivide_errors():
    pat = make_named("J")
    with pytest.raises(UnknownPart):
        subdivide(pat, 0, 99)
    with pytest.raises(SamePart):
        subdivide(pat, 1, 1)


# -- is_complete ----------------------------------------------------------------


def test_fig1a_complete_fig1b_not():
    fig1a = make_named("fig1a")
    assert is_complete(fig1a)
    # fig 1(b): subdivision shape plus the direct positive; missing pairs
    fig1b = make_pattern(range(5), {0: 0, 1: 1, 2: 2, 3: 2, 4: 2},
                         [(0, 1), (0, 2), (1, 2)], [(0, 3), (1, 4)])
    assert not is_complete(fig1b)


def test_pg_c3_not_complete():
    assert not is_complete(pattern_from_graph(triangle()))


# -- instance normalization ------------------------------------------------------


def test_normalization_is_idempotent():
    rng = random.Random(9)
    for _ in range(30):
        from minorcsp import gen_random

        inst = gen_random(rng.randint(1, 5), rng.randint(1, 3), 0.6,
                          rng.randrange(10 ** 6))
        again = Instance(inst.variables, inst.domain, inst.relation)
        assert again == inst


def test_symmetric_duplicate_scopes_are_intersected():
    inst = Instance([0, 1], {0: (0, 1), 1: (0, 1)},
                    {(0, 1): [(0, 0), (0, 1)], (1, 0): [(0, 0), (1, 1)]})
    assert inst.allowed(0, 1) == frozenset({(0, 0)})


def test_out_of_domain_pairs_are_clipped():
    inst = Instance([0, 1], {0: (0,), 1: (0,)}, {(0, 1): [(0, 0), (5, 5)]})
    assert inst.allowed(0, 1) == frozenset({(0, 0)})
    # clipping made it trivial, so it is not stored
    assert inst.is_trivial(0, 1)


def test_domain_restriction_renormalizes():
    inst = Instance([0, 1], {0: (0, 1), 1: (0, 1)}, {(0, 1): [(0, 0), (1, 0), (0, 1)]})
    shrunk = inst.with_domains({1: (0,)})
    assert shrunk.is_trivial(0, 1)  # all remaining pairs allowed


# -- augmentation -----------------------------------------------------------------


def test_neq_relation_on_two_value_variable():
    inst = Instance(["v"], {"v": (0, 1)})
    rel = instance_relation(RelationSpec.neq(), inst)
    assert rel == frozenset({(0, 1), (1, 0)})


def test_polymorphism_relation_tuples():
    table = {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1}  # binary min
    inst = Instance(["v"], {"v": (0, 1)})
    rel = instance_relation(RelationSpec.polymorphism(table), inst)
    ids = instance_point_ids(inst)
    assert (ids[("v", 0)], ids[("v", 1)], ids[("v", 0)]) in rel
    assert len(rel) == 4


def test_partial_table_rejected():
    with pytest.raises(PartialTable):
        RelationSpec.polymorphism({(0, 0): 1})  # 1 appears but (0,1) etc. missing


def test_augment_validations():
    pat = make_named("J")
    with pytest.raises(ArityMismatch):
        augment(pat, 2, [(0, 1, 2)])
    with pytest.raises(UnknownPoint):
        augment(pat, 2, [(0, 9)])
    aug = augment(pat, 2, [])
    assert aug.tuples == frozenset()


def test_empty_relation_augmentation_behaves_like_plain():
    from minorcsp import find_sub_pattern

    j = make_named("J")
    k = make_named("K")
    aug_j = augment(j, 2, [])
    aug_k = augment(k, 2, [(0, 1)])
    plain = find_sub_pattern(j, k)
    empty_rel = find_sub_pattern(aug_j, aug_k)
    assert (plain is None) == (empty_rel is None)


# -- canonical form ----------------------------------------------------------------


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(123)
    for _ in range(40):
        pat = random_pattern(rng)
        perm = list(pat.points)
        rng.shuffle(perm)
        rename = dict(zip(pat.points, perm))
        relabeled = Pattern(
            [rename[p] for p in pat.points],
            {rename[p]: rename[pat.part_of[p]] for p in pat.points},
            [(rename[x], rename[y]) for x, y in pat.positive],
            [(rename[x], rename[y]) for x, y in pat.negative],
        )
        assert canonical_key(pat) == canonical_key(relabeled)


def test_canonical_key_separates_nonisomorphic():
    # same sizes everywhere, different shape: edges meeting at a point vs not
    meeting = make_pattern([0, 1, 2, 3], {0: 0, 1: 1, 2: 2, 3: 2},
                           negative=[(0, 2), (1, 2)])
    disjoint = make_pattern([0, 1, 2, 3], {0: 0, 1: 1, 2: 2, 3: 2},
                            negative=[(0, 2), (1, 3)])
    assert canonical_key(meeting) != canonical_key(disjoint)


def test_canonical_key_identifies_isomorphic_meeting_shapes():
    # two negative edges sharing a middle point, written two different ways
    j = make_named("J")
    path = make_pattern([0, 1, 2], {0: 0, 1: 1, 2: 2}, negative=[(0, 1), (1, 2)])
    assert canonical_key(j) == canonical_key(path)
