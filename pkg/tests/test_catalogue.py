"""Named pattern encodings and parameterized constructors."""

import pytest

from minorcsp import (
    AugmentedPattern,
    is_complete,
    make_named,
    make_p2_extension,
    make_pivot,
    make_pivot_neq,
)
from minorcsp.catalogue import catalogue_names
from minorcsp.errors import PreconditionViolated, UnknownName


def test_j_structure():
    j = make_named("J")
    assert len(j.points) == 3 and j.n_parts == 3
    assert j.negative == frozenset({(0, 2), (1, 2)})
    assert not j.positive


def test_k_structure():
    k = make_named("K")
    sizes = sorted(len(m) for m in k.parts.values())
    assert sizes == [1, 2, 2]
    assert len(k.negative) == 3 and not k.positive
    # the two edges meeting at the singleton point use fresh points of A and B
    (c,) = [m[0] for m in k.parts.values() if len(m) == 1]
    meet = [e for e in k.negative if c in e]
    assert len(meet) == 2


def test_l_is_a_negative_path_on_four_singletons():
    l = make_named("L")
    assert len(l.points) == 4 and l.n_parts == 4
    assert l.negative == frozenset({(0, 1), (1, 2), (2, 3)})


def test_m_structure():
    m = make_named("M")
    assert len(m.points) == 8 and m.n_parts == 4
    assert len(m.positive) == 7 and len(m.negative) == 2
    # exactly two part pairs carry more than one positive edge
    pairs = {}
    for x, y in m.positive:
        key = (m.part_of[x], m.part_of[y])
        pairs[key] = pairs.get(key, 0) + 1
    assert sorted(pairs.values()) == [1, 3, 3]


def test_e_and_mprime():
    e = make_named("E")
    assert len(e.points) == 6 and e.n_parts == 2
    assert len(e.positive) == 6 and not e.negative
    mp = make_named("Mprime")
    assert len(mp.points) == 7 and mp.n_parts == 3
    assert len(mp.positive) == 8 and len(mp.negative) == 3
    # dropping the apex part of Mprime leaves E's positive edges
    apex_part = [rep for rep, ms in mp.parts.items() if len(ms) == 1]
    assert len(apex_part) == 1


def test_augmented_entries_carry_disequalities():
    k_neq = make_named("K_neq")
    assert isinstance(k_neq, AugmentedPattern)
    assert k_neq.arity == 2
    assert len(k_neq.tuples) == 4  # both orders over both two-point parts
    c3_neq = make_named("C3_neq")
    assert len(c3_neq.tuples) == 6
    jp = make_named("Jprime_neq")
    assert len(jp.tuples) == 2
    assert len(jp.pattern.negative) == 2


def test_pivot_counts():
    p1 = make_pivot(1)
    assert len(p1.points) == 5 and p1.n_parts == 4 and len(p1.negative) == 3
    p2 = make_pivot(2)
    assert len(p2.points) == 11 and p2.n_parts == 7 and len(p2.negative) == 6
    for k in (1, 2, 3):
        pk = make_pivot(k)
        assert len(pk.negative) == 3 * k
        # exactly one part holds a point whose negative edges reach two parts
        heavy = {pk.part_of[p] for p, nbrs in pk.neg_adj.items()
                 if len({pk.part_of[q] for q in nbrs}) == 2}
        assert heavy == {0}


def test_pivot_merged_point_sits_in_central_part():
    pk = make_pivot(2)
    heavy = [p for p, nbrs in pk.neg_adj.items() if len(nbrs) == 2]
    # only the merged central point reaches two distinct parts
    reach = {p for p in heavy
             if len({pk.part_of[q] for q in pk.neg_adj[p]}) == 2}
    assert reach == {0}


def test_pivot_neq_relation():
    pn = make_pivot_neq(1)
    assert pn.tuples == frozenset({(0, 1), (1, 0)})


def test_j_occurs_in_pivot_one():
    from oracles import raw_hom_search

    assert raw_hom_search(make_named("J"), make_pivot(1)) is not None


def test_p2_extension_of_meeting_pattern():
    j = make_named("J")
    ext = make_p2_extension(j)
    assert ext.n_parts == 4
    assert len(ext.points) == len(j.points) + 6
    assert len(ext.negative) == len(j.negative) + 3
    assert not ext.positive


def test_p2_extension_rejects_joined_outer_parts():
    from minorcsp import make_pattern

    bad = make_pattern([0, 1, 2], {0: 0, 1: 1, 2: 2},
                       negative=[(0, 1), (1, 2), (0, 2)])
    with pytest.raises(PreconditionViolated):
        make_p2_extension(bad)


def test_p2_extension_rejects_wrong_part_count():
    with pytest.raises(PreconditionViolated):
        make_p2_extension(make_named("L"))


def test_c3_entry_matches_graph_construction():
    c3 = make_named("C3")
    assert len(c3.points) == 6 and c3.n_parts == 3 and len(c3.negative) == 3
    assert not is_complete(c3)


def test_unknown_names():
    with pytest.raises(UnknownName):
        make_named("nope")
    with pytest.raises(UnknownName):
        make_named("pivot:zero")
    with pytest.raises(UnknownName):
        make_named("pivot:0")
    assert "pivot:k" in catalogue_names()
