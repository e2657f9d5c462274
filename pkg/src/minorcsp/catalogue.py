"""Named patterns used by the decision procedures and the CLI.

Encodings are fixed here once and for all; point ids are small consecutive
ints and the structural comments give the part layout.  Disequality-augmented
entries carry the symmetric pair relation over the points they constrain.
"""

from __future__ import annotations

from typing import Union

from .core import AugmentedPattern, Graph, Pattern, pattern_from_graph
from .errors import PreconditionViolated, UnknownName


def triangle_graph() -> Graph:
    return Graph((1, 2, 3), ((1, 2), (2, 3), (3, 1)))


def make_j() -> Pattern:
    # singleton parts a=0, b=1, c=2; two negative edges meeting at c
    return Pattern(range(3), {0: 0, 1: 1, 2: 2}, (), ((0, 2), (1, 2)))


def make_k() -> Pattern:
    # A={a1=0,a2=1}, B={b1=2,b2=3}, C={c=4}
    # negatives a1-b1, a2-c, b2-c: constraint graph is a triangle
    return Pattern(range(5), {0: "A", 1: "A", 2: "B", 3: "B", 4: "C"},
                   (), ((0, 2), (1, 4), (3, 4)))


def make_l() -> Pattern:
    # four singleton parts in a path of three negatives
    return Pattern(range(4), {i: i for i in range(4)}, (),
                   ((0, 1), (1, 2), (2, 3)))


def make_fig1a() -> Pattern:
    # three singleton parts; one positive a-b, negatives a-c and b-c
    return Pattern(range(3), {0: 0, 1: 1, 2: 2}, ((0, 1),), ((0, 2), (1, 2)))


def make_m() -> Pattern:
    """Four two-point parts in a row.  Each end block has three positives
    and one negative; a single positive bridge joins the block tops."""
    part_of = {0: "A", 1: "A", 2: "B", 3: "B", 4: "C", 5: "C", 6: "D", 7: "D"}
    positive = [(0, 2), (0, 3), (1, 2),   # A-B block, a1=0 top, b1=2 top
                (2, 4),                   # bridge b1-c1
                (4, 6), (4, 7), (5, 6)]   # C-D block, mirror
    negative = [(1, 3), (5, 7)]
    return Pattern(range(8), part_of, positive, negative)


def make_e() -> Pattern:
    """Two three-point parts (top=0/3, mid=1/4, bottom=2/5) carrying six
    positive edges: top-top, mid-mid, both top-mid crossings, and both
    top-bottom crossings."""
    part_of = {0: "L", 1: "L", 2: "L", 3: "R", 4: "R", 5: "R"}
    positive = [(0, 3), (1, 4), (0, 4), (1, 3), (0, 5), (2, 3)]
    return Pattern(range(6), part_of, positive, ())


def make_mprime() -> Pattern:
    """The six positives of ``make_e`` plus three negatives among the
    mid/bottom points and an apex singleton part positively joined to the
    top point of each side."""
    part_of = {0: "L", 1: "L", 2: "L", 3: "R", 4: "R", 5: "R", 6: "X"}
    positive = [(0, 3), (1, 4), (0, 4), (1, 3), (0, 5), (2, 3), (0, 6), (3, 6)]
    negative = [(2, 5), (1, 5), (2, 4)]
    return Pattern(range(7), part_of, positive, negative)


def make_jprime_neq() -> AugmentedPattern:
    # parts {p=0,q=1}, {r1=2}, {r2=3}; negatives q-r1 and p-r2; p != q
    pat = Pattern(range(4), {0: "A", 1: "A", 2: "B", 3: "C"}, (),
                  ((1, 2), (0, 3)))
    return AugmentedPattern(pat, 2, [(0, 1), (1, 0)])


def _part_disequalities(pattern: Pattern):
    tuples = []
    for members in pattern.parts.values():
        for x in members:
            for y in members:
                if x != y:
                    tuples.append((x, y))
    return tuples


def make_k_neq() -> AugmentedPattern:
    pat = make_k()
    return AugmentedPattern(pat, 2, _part_disequalities(pat))


def make_c3_neq() -> AugmentedPattern:
    pat = pattern_from_graph(triangle_graph())
    return AugmentedPattern(pat, 2, _part_disequalities(pat))


def make_pivot(k: int) -> Pattern:
    """The star pattern with three length-k branches and exactly two points
    merged in the central part.

    Center part {0, 1}: point 0 carries the first edges of branches one and
    two (the merge), point 1 the first edge of branch three.  Internal
    branch parts have an inward and an outward point; leaf parts one point.
    """
    if k < 1:
        raise PreconditionViolated("pivot branch length must be >= 1")
    points = [0, 1]
    part_of = {0: 0, 1: 0}
    negative = []
    nxt = 2
    for branch, root in ((1, 0), (2, 0), (3, 1)):
        attach = root
        for j in range(1, k + 1):
            if j < k:
                inward, outward = nxt, nxt + 1
                nxt += 2
                points.extend((inward, outward))
                part_of[inward] = inward
                part_of[outward] = inward
            else:
                inward = nxt
                nxt += 1
                points.append(inward)
                part_of[inward] = inward
            negative.append((attach, inward))
            attach = inward + 1 if j < k else None
    return Pattern(points, part_of, (), negative)


def make_pivot_neq(k: int) -> AugmentedPattern:
    return AugmentedPattern(make_pivot(k), 2, [(0, 1), (1, 0)])


def make_p2_extension(base: Pattern) -> Pattern:
    """Extend a three-part pattern by a fourth part and two negative paths.

    The base parts are labelled U1, U2, U3 so that U2 is the middle: at most
    one negative edge between U1-U2 and between U2-U3, and no edges at all
    between U1 and U3 (the least such labelling is used).  Six fresh points
    are added, p1,p2 in U1, q1,q2 in a new part U4, r1,r2 in U3, with
    negatives p1-r1, p2-q1, q2-r2.
    """
    reps = base.part_reps
    if len(reps) != 3:
        raise PreconditionViolated(f"base must have exactly 3 parts, has {len(reps)}")

    def edges_between(a, b):
        pos, neg = base.edges_between(a, b)
        return len(pos), len(neg)

    failures = []
    chosen = None
    for mid in reps:
        u1, u3 = sorted(r for r in reps if r != mid)
        p13, n13 = edges_between(u1, u3)
        if p13 or n13:
            failures.append(f"edges exist between {u1} and {u3}")
            continue
        _, n12 = edges_between(u1, mid)
        _, n23 = edges_between(mid, u3)
        if n12 > 1:
            failures.append(f"more than one negative edge between {u1} and {mid}")
            continue
        if n23 > 1:
            failures.append(f"more than one negative edge between {mid} and {u3}")
            continue
        chosen = (u1, mid, u3)
        break
    if chosen is None:
        raise PreconditionViolated("; ".join(failures))
    u1, _, u3 = chosen
    nxt = max(base.points) + 1
    p1, p2, q1, q2, r1, r2 = range(nxt, nxt + 6)
    points = list(base.points) + [p1, p2, q1, q2, r1, r2]
    part_of = dict(base.part_of)
    part_of.update({p1: u1, p2: u1, q1: q1, q2: q1, r1: u3, r2: u3})
    negative = list(base.negative) + [(p1, r1), (p2, q1), (q2, r2)]
    return Pattern(points, part_of, base.positive, negative)


_PLAIN = {
    "J": make_j,
    "K": make_k,
    "L": make_l,
    "M": make_m,
    "E": make_e,
    "Mprime": make_mprime,
    "fig1a": make_fig1a,
    "C3": lambda: pattern_from_graph(triangle_graph()),
}

_AUGMENTED = {
    "K_neq": make_k_neq,
    "C3_neq": make_c3_neq,
    "Jprime_neq": make_jprime_neq,
}


def make_named(name: str) -> Union[Pattern, AugmentedPattern]:
    """Catalogue lookup.  Parameterized entries: ``pivot:k``, ``pivot_neq:k``."""
    if name in _PLAIN:
        return _PLAIN[name]()
    if name in _AUGMENTED:
        return _AUGMENTED[name]()
    if name.startswith("pivot:") or name.startswith("pivot_neq:"):
        head, _, tail = name.partition(":")
        try:
            k = int(tail)
        except ValueError:
            raise UnknownName(f"bad branch length in {name!r}") from None
        if k < 1:
            raise UnknownName(f"branch length must be >= 1 in {name!r}")
        return make_pivot(k) if head == "pivot" else make_pivot_neq(k)
    raise UnknownName(f"no pattern named {name!r} in the catalogue")


def catalogue_names():
    return tuple(sorted(_PLAIN)) + tuple(sorted(_AUGMENTED)) + ("pivot:k", "pivot_neq:k")
