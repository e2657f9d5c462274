"""Core value types and constructions.

A pattern is a set of integer points grouped into parts, carrying symmetric
positive and negative edge sets between points of distinct parts.  A binary
CSP instance is the usual (variables, domains, pairwise relations) triple,
normalized so that each unordered variable pair stores at most one oriented
relation and trivial (full-product) relations are left implicit.

The two bridges between the worlds are ``pattern_from_instance`` (one point
per variable/value, positive edge iff the value pair is allowed) and
``pattern_from_graph`` (one point per edge incidence, one negative edge per
graph edge).  ``subdivide`` replaces all edges between two parts by
length-two connections through a single fresh part: positive edges gain one
midpoint, negative edges gain two endpoints with no middle connection.

All types are immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import (
    ArityMismatch,
    PartialTable,
    SamePart,
    SamePartEdge,
    UnknownPoint,
)

Pair = Tuple[int, int]

EDGE_NONE = 0
EDGE_POS = 1
EDGE_NEG = 2
EDGE_BOTH = 3


def _pair(x: int, y: int) -> Pair:
    return (x, y) if x <= y else (y, x)


def _norm_pairs(pairs: Iterable[Sequence[int]]) -> FrozenSet[Pair]:
    return frozenset(_pair(int(p), int(q)) for p, q in pairs)


class Pattern:
    """Points partitioned into parts, with positive and negative edge sets.

    Parts are stored as a representative map: every point maps to the least
    point id of its part.  A point pair may carry both a positive and a
    negative edge; it may never join two points of the same part.
    ``labels`` is optional provenance (point id -> source object) and takes
    no part in equality or hashing.
    """

    __slots__ = ("points", "part_of", "positive", "negative", "labels", "_cache")

    def __init__(
        self,
        points: Iterable[int],
        part_of: Mapping[int, Any],
        positive: Iterable[Sequence[int]] = (),
        negative: Iterable[Sequence[int]] = (),
        labels: Optional[Mapping[int, Any]] = None,
    ):
        pts = tuple(sorted(set(int(p) for p in points)))
        pts_set = frozenset(pts)
        for p in part_of:
            if p not in pts_set:
                raise UnknownPoint(f"part assignment for unknown point {p!r}")
        groups: Dict[Any, list] = {}
        for p in pts:
            if p not in part_of:
                raise UnknownPoint(f"point {p} has no part assignment")
            groups.setdefault(part_of[p], []).append(p)
        rep_of: Dict[int, int] = {}
        for members in groups.values():
            rep = min(members)
            for p in members:
                rep_of[p] = rep
        pos = _norm_pairs(positive)
        neg = _norm_pairs(negative)
        for x, y in itertools.chain(pos, neg):
            if x not in pts_set or y not in pts_set:
                raise UnknownPoint(f"edge ({x},{y}) uses an unknown point")
            if x == y or rep_of[x] == rep_of[y]:
                raise SamePartEdge(f"edge ({x},{y}) joins points of one part")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "part_of", rep_of)
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "negative", neg)
        object.__setattr__(self, "labels", dict(labels) if labels else None)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Pattern is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def parts(self) -> Dict[int, Tuple[int, ...]]:
        """Map part representative -> sorted tuple of member points."""
        c = self._cache
        if "parts" not in c:
            d: Dict[int, list] = {}
            for p in self.points:
                d.setdefault(self.part_of[p], []).append(p)
            c["parts"] = {rep: tuple(sorted(ms)) for rep, ms in sorted(d.items())}
        return c["parts"]

    @property
    def part_reps(self) -> Tuple[int, ...]:
        return tuple(self.parts.keys())

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def pos_adj(self) -> Dict[int, Tuple[int, ...]]:
        return self._adj("pos_adj", self.positive)

    @property
    def neg_adj(self) -> Dict[int, Tuple[int, ...]]:
        return self._adj("neg_adj", self.negative)

    @property
    def pos_adj_sets(self) -> Dict[int, FrozenSet[int]]:
        c = self._cache
        if "pos_sets" not in c:
            c["pos_sets"] = {p: frozenset(a) for p, a in self.pos_adj.items()}
        return c["pos_sets"]

    @property
    def neg_adj_sets(self) -> Dict[int, FrozenSet[int]]:
        c = self._cache
        if "neg_sets" not in c:
            c["neg_sets"] = {p: frozenset(a) for p, a in self.neg_adj.items()}
        return c["neg_sets"]

    def _adj(self, key, edges):
        c = self._cache
        if key not in c:
            d: Dict[int, set] = {p: set() for p in self.points}
            for x, y in edges:
                d[x].add(y)
                d[y].add(x)
            c[key] = {p: tuple(sorted(s)) for p, s in d.items()}
        return c[key]

    @property
    def both_pairs(self) -> FrozenSet[Pair]:
        c = self._cache
        if "both" not in c:
            c["both"] = self.positive & self.negative
        return c["both"]

    def edge_kind(self, x: int, y: int) -> int:
        pr = _pair(x, y)
        kind = EDGE_NONE
        if pr in self.positive:
            kind |= EDGE_POS
        if pr in self.negative:
            kind |= EDGE_NEG
        return kind

    def edges_between(self, u_rep: int, v_rep: int) -> Tuple[Tuple[Pair, ...], Tuple[Pair, ...]]:
        """Positive and negative edges between two parts, each oriented so
        the first endpoint lies in the part of ``u_rep``."""
        po = self.part_of
        pos = tuple(
            sorted((x, y) if po[x] == u_rep else (y, x)
                   for x, y in self.positive
                   if {po[x], po[y]} == {u_rep, v_rep})
        )
        neg = tuple(
            sorted((x, y) if po[x] == u_rep else (y, x)
                   for x, y in self.negative
                   if {po[x], po[y]} == {u_rep, v_rep})
        )
        return pos, neg

    def part_pairs_with_edges(self) -> Tuple[Pair, ...]:
        """Unordered part-representative pairs joined by at least one edge."""
        po = self.part_of
        seen = set()
        for x, y in itertools.chain(self.positive, self.negative):
            seen.add(_pair(po[x], po[y]))
        return tuple(sorted(seen))

    def resolve_part(self, point_or_rep: int) -> int:
        from .errors import UnknownPart

        if point_or_rep not in self.part_of:
            raise UnknownPart(f"{point_or_rep} is not a point of the pattern")
        return self.part_of[point_or_rep]

    # -- value semantics ----------------------------------------------------

    def _key(self):
        return (self.points, tuple(sorted(self.part_of.items())),
                self.positive, self.negative)

    def __eq__(self, other):
        return isinstance(other, Pattern) and self._key() == other._key()

    def __hash__(self):
        c = self._cache
        if "hash" not in c:
            c["hash"] = hash(self._key())
        return c["hash"]

    def __repr__(self):
        return (f"Pattern(points={len(self.points)}, parts={self.n_parts}, "
                f"pos={len(self.positive)}, neg={len(self.negative)})")


def make_pattern(points, part_of, positive=(), negative=(), labels=None) -> Pattern:
    """Validating constructor; rejects edges within a part."""
    return Pattern(points, part_of, positive, negative, labels)


class AugmentedPattern:
    """A pattern plus an m-ary relation over its points."""

    __slots__ = ("pattern", "arity", "tuples")

    def __init__(self, pattern: Pattern, arity: int, tuples: Iterable[Sequence[int]]):
        if arity < 1:
            raise ArityMismatch("relation arity must be >= 1")
        tps = frozenset(tuple(int(c) for c in t) for t in tuples)
        pts = frozenset(pattern.points)
        for t in tps:
            if len(t) != arity:
                raise ArityMismatch(f"tuple {t} does not have arity {arity}")
            for c in t:
                if c not in pts:
                    raise UnknownPoint(f"relation tuple {t} uses unknown point {c}")
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "tuples", tps)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("AugmentedPattern is immutable")

    def __eq__(self, other):
        return (isinstance(other, AugmentedPattern)
                and self.pattern == other.pattern
                and self.arity == other.arity
                and self.tuples == other.tuples)

    def __hash__(self):
        return hash((self.pattern, self.arity, self.tuples))

    def __repr__(self):
        return f"AugmentedPattern({self.pattern!r}, arity={self.arity}, tuples={len(self.tuples)})"


def augment(pattern: Pattern, arity: int, tuples: Iterable[Sequence[int]]) -> AugmentedPattern:
    return AugmentedPattern(pattern, arity, tuples)


def split_pattern(p) -> Tuple[Pattern, Optional[FrozenSet[tuple]], Optional[int]]:
    """(pattern, relation tuples or None, arity or None) for either kind."""
    if isinstance(p, AugmentedPattern):
        return p.pattern, p.tuples, p.arity
    return p, None, None


class RelationSpec:
    """Rule producing the matching relation over the points of an instance's
    pattern: either the all-points disequality, or the graph of a total
    operation ``f: D^k -> D`` given as an explicit table."""

    NEQ = "NEQ"
    POLYMORPHISM = "POLYMORPHISM"

    __slots__ = ("kind", "table", "op_arity", "op_domain")

    def __init__(self, kind: str, table: Optional[Mapping[tuple, int]] = None):
        op_domain = None
        if kind == self.NEQ:
            if table is not None:
                raise PartialTable("NEQ takes no operation table")
            op_arity = None
        elif kind == self.POLYMORPHISM:
            if not table:
                raise PartialTable("POLYMORPHISM needs a non-empty table")
            table = {tuple(int(a) for a in k): int(v) for k, v in table.items()}
            lens = {len(k) for k in table}
            if len(lens) != 1:
                raise ArityMismatch("operation table keys have mixed arity")
            op_arity = lens.pop()
            dom = set(itertools.chain.from_iterable(table)) | set(table.values())
            missing = [t for t in itertools.product(sorted(dom), repeat=op_arity)
                       if t not in table]
            if missing:
                raise PartialTable(f"table not total over {sorted(dom)}: missing {missing[0]}")
            op_domain = tuple(sorted(dom))
        else:
            raise ValueError(f"unknown relation kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "table", dict(table) if table else None)
        object.__setattr__(self, "op_arity", op_arity)
        object.__setattr__(self, "op_domain", op_domain)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RelationSpec is immutable")

    @classmethod
    def neq(cls) -> "RelationSpec":
        return cls(cls.NEQ)

    @classmethod
    def polymorphism(cls, table: Mapping[tuple, int]) -> "RelationSpec":
        return cls(cls.POLYMORPHISM, table)

    @property
    def arity(self) -> int:
        """Arity of the produced point relation."""
        return 2 if self.kind == self.NEQ else self.op_arity + 1

    def __repr__(self):
        if self.kind == self.NEQ:
            return "RelationSpec.neq()"
        return f"RelationSpec.polymorphism(<{self.op_arity}-ary table>)"


class Graph:
    """Simple undirected graph with hashable, mutually orderable vertex ids."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices: Iterable[Any], edges: Iterable[Sequence[Any]] = ()):
        vs = tuple(sorted(set(vertices)))
        vset = frozenset(vs)
        es = set()
        for u, v in edges:
            if u == v:
                raise SamePartEdge(f"self-loop at {u!r}")
            if u not in vset or v not in vset:
                raise UnknownPoint(f"edge ({u!r},{v!r}) uses an undeclared vertex")
            es.add((u, v) if u <= v else (v, u))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Graph is immutable")

    def adjacency(self) -> Dict[Any, Tuple[Any, ...]]:
        d: Dict[Any, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            d[u].add(v)
            d[v].add(u)
        return {v: tuple(sorted(s)) for v, s in d.items()}

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


class Instance:
    """Binary CSP instance.

    ``variables`` keeps declaration order, which is the tie-breaking order
    used by every solver.  Domains are finite sets of small non-negative
    ints.  Relations are stored once per unordered pair, oriented by
    declaration order; entries equal to the full domain product (trivial
    constraints) are dropped, so absent pairs mean "anything goes".
    Construction intersects symmetric duplicates and clips stray value
    pairs to the domains, and is idempotent.
    """

    __slots__ = ("variables", "domain", "relation", "_cache")

    def __init__(
        self,
        variables: Iterable[Any],
        domain: Mapping[Any, Iterable[int]],
        relation: Optional[Mapping[Tuple[Any, Any], Iterable[Sequence[int]]]] = None,
    ):
        vs = tuple(variables)
        if len(vs) != len(set(vs)):
            raise ValueError("duplicate variable ids")
        index = {v: i for i, v in enumerate(vs)}
        dom: Dict[Any, Tuple[int, ...]] = {}
        for v in vs:
            if v not in domain:
                raise UnknownPoint(f"variable {v!r} has no domain")
            dom[v] = tuple(sorted(set(int(a) for a in domain[v])))
        rel: Dict[Tuple[Any, Any], FrozenSet[Pair]] = {}
        if relation:
            collected: Dict[Tuple[Any, Any], list] = {}
            for (u, v), pairs in relation.items():
                if u not in index or v not in index:
                    raise UnknownPoint(f"relation scope ({u!r},{v!r}) not declared")
                if u == v:
                    raise SamePart(f"relation scope repeats variable {u!r}")
                if index[u] < index[v]:
                    oriented = set((int(a), int(b)) for a, b in pairs)
                    key = (u, v)
                else:
                    oriented = set((int(b), int(a)) for a, b in pairs)
                    key = (v, u)
                collected.setdefault(key, []).append(oriented)
            for (u, v), sets in collected.items():
                allowed = set.intersection(*sets)
                allowed &= set(itertools.product(dom[u], dom[v]))
                if len(allowed) == len(dom[u]) * len(dom[v]):
                    continue  # trivial
                rel[(u, v)] = frozenset(allowed)
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Instance is immutable")

    # -- access -------------------------------------------------------------

    def var_index(self, v) -> int:
        c = self._cache
        if "index" not in c:
            c["index"] = {v: i for i, v in enumerate(self.variables)}
        return c["index"][v]

    def oriented_key(self, u, v) -> Tuple[Any, Any]:
        return (u, v) if self.var_index(u) < self.var_index(v) else (v, u)

    def is_trivial(self, u, v) -> bool:
        return self.oriented_key(u, v) not in self.relation

    def allowed(self, u, v) -> FrozenSet[Pair]:
        """Allowed value pairs in argument order, materializing trivial pairs."""
        key = self.oriented_key(u, v)
        if key not in self.relation:
            pairs = frozenset(itertools.product(self.domain[u], self.domain[v]))
            return pairs
        stored = self.relation[key]
        if key == (u, v):
            return stored
        return frozenset((b, a) for a, b in stored)

    def constrained_pairs(self) -> Tuple[Tuple[Any, Any], ...]:
        """Oriented pairs carrying a non-trivial relation."""
        return tuple(sorted(self.relation.keys(),
                            key=lambda k: (self.var_index(k[0]), self.var_index(k[1]))))

    def neighbors(self, v) -> Tuple[Any, ...]:
        c = self._cache
        if "nbrs" not in c:
            d: Dict[Any, set] = {w: set() for w in self.variables}
            for u, w in self.relation:
                d[u].add(w)
                d[w].add(u)
            c["nbrs"] = {w: tuple(sorted(s, key=self.var_index)) for w, s in d.items()}
        return c["nbrs"][v]

    def points(self) -> Tuple[Tuple[Any, int], ...]:
        return tuple((v, a) for v in self.variables for a in self.domain[v])

    def assignment_space(self) -> int:
        n = 1
        for v in self.variables:
            n *= len(self.domain[v])
        return n

    # -- derived instances ---------------------------------------------------

    def with_domains(self, new_dom: Mapping[Any, Iterable[int]]) -> "Instance":
        dom = dict(self.domain)
        for v, vals in new_dom.items():
            if v not in dom:
                raise UnknownPoint(f"variable {v!r} not declared")
            dom[v] = tuple(sorted(set(vals) & set(self.domain[v])))
        return Instance(self.variables, dom, self.relation)

    def assigned(self, v, a: int) -> "Instance":
        return self.with_domains({v: (a,)})

    def subinstance(self, keep: Iterable[Any]) -> "Instance":
        keep_set = set(keep)
        vs = tuple(v for v in self.variables if v in keep_set)
        dom = {v: self.domain[v] for v in vs}
        rel = {k: pairs for k, pairs in self.relation.items()
               if k[0] in keep_set and k[1] in keep_set}
        return Instance(vs, dom, rel)

    def satisfies(self, assignment: Mapping[Any, int]) -> bool:
        """Full-assignment check against every stored constraint."""
        for v in self.variables:
            if v not in assignment or assignment[v] not in self.domain[v]:
                return False
        for (u, v), pairs in self.relation.items():
            if (assignment[u], assignment[v]) not in pairs:
                return False
        return True

    def _key(self):
        return (self.variables, tuple(sorted(self.domain.items(), key=lambda kv: self.var_index(kv[0]))),
                tuple(sorted(self.relation.items(), key=lambda kv: (self.var_index(kv[0][0]), self.var_index(kv[0][1])))))

    def __eq__(self, other):
        return isinstance(other, Instance) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"Instance(vars={len(self.variables)}, "
                f"constraints={len(self.relation)})")


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def instance_point_ids(instance: Instance) -> Dict[Tuple[Any, int], int]:
    """Canonical numbering of (variable, value) points: declaration order of
    variables, ascending values within each.  Variables with empty domains
    contribute no points."""
    ids = {}
    i = 0
    for v in instance.variables:
        for a in instance.domain[v]:
            ids[(v, a)] = i
            i += 1
    return ids


def pattern_from_instance(instance: Instance) -> Pattern:
    """The complete pattern of an instance: one point per (variable, value),
    one part per variable, positive edge iff the pair is allowed."""
    cached = instance._cache.get("pattern")
    if cached is not None:
        return cached
    ids = instance_point_ids(instance)
    part_of = {}
    for v in instance.variables:
        vals = instance.domain[v]
        if not vals:
            continue
        rep = ids[(v, vals[0])]
        for a in vals:
            part_of[ids[(v, a)]] = rep
    pos, neg = [], []
    vs = [v for v in instance.variables if instance.domain[v]]
    for u, v in itertools.combinations(vs, 2):
        allowed = instance.allowed(u, v)
        for a in instance.domain[u]:
            for b in instance.domain[v]:
                e = (ids[(u, a)], ids[(v, b)])
                if (a, b) in allowed:
                    pos.append(e)
                else:
                    neg.append(e)
    labels = {i: va for va, i in ids.items()}
    pattern = Pattern(ids.values(), part_of, pos, neg, labels=labels)
    instance._cache["pattern"] = pattern
    return pattern


def pattern_from_graph(graph: Graph) -> Pattern:
    """The negative pattern of a graph: one point per (edge, endpoint)
    incidence, parts grouping incidences by vertex, one negative edge per
    graph edge.  Isolated vertices contribute no points."""
    ids = {}
    i = 0
    for e in sorted(graph.edges):
        for v in e:
            ids[(e, v)] = i
            i += 1
    part_of = {}
    by_vertex: Dict[Any, list] = {}
    for (e, v), i in ids.items():
        by_vertex.setdefault(v, []).append(i)
    for members in by_vertex.values():
        rep = min(members)
        for i in members:
            part_of[i] = rep
    neg = [(ids[(e, e[0])], ids[(e, e[1])]) for e in sorted(graph.edges)]
    labels = {i: ev for ev, i in ids.items()}
    return Pattern(ids.values(), part_of, (), neg, labels=labels)


def subdivide(pattern: Pattern, u: int, v: int) -> Pattern:
    """Subdivision at the parts of ``u`` and ``v`` (any member point id).

    Every positive edge (x, y) between the parts is replaced by positive
    edges x-z and z-y through a fresh midpoint; every negative edge by
    x-z' and z''-y with no edge between z' and z''.  All fresh points form
    one new part.  A pair with no edges between leaves the pattern
    unchanged (the construction would otherwise create an empty part).
    """
    u_rep = pattern.resolve_part(u)
    v_rep = pattern.resolve_part(v)
    if u_rep == v_rep:
        raise SamePart(f"{u} and {v} are in the same part")
    pos_uv, neg_uv = pattern.edges_between(u_rep, v_rep)
    if not pos_uv and not neg_uv:
        return pattern
    next_id = max(pattern.points) + 1
    points = list(pattern.points)
    part_of = dict(pattern.part_of)
    positive = set(pattern.positive)
    negative = set(pattern.negative)
    new_points = []
    for x, y in pos_uv:  # oriented: x in part of u_rep
        z = next_id
        next_id += 1
        new_points.append(z)
        positive.discard(_pair(x, y))
        positive.add(_pair(x, z))
        positive.add(_pair(z, y))
    for x, y in neg_uv:
        z1, z2 = next_id, next_id + 1
        next_id += 2
        new_points.extend((z1, z2))
        negative.discard(_pair(x, y))
        negative.add(_pair(x, z1))
        negative.add(_pair(z2, y))
    new_rep = min(new_points)
    for z in new_points:
        part_of[z] = new_rep
    points.extend(new_points)
    return Pattern(points, part_of, positive, negative, labels=pattern.labels)


def is_complete(pattern: Pattern) -> bool:
    """True iff each cross-part point pair carries exactly one edge kind."""
    for x, y in itertools.combinations(pattern.points, 2):
        if pattern.part_of[x] == pattern.part_of[y]:
            continue
        if pattern.edge_kind(x, y) not in (EDGE_POS, EDGE_NEG):
            return False
    return True


def instance_relation(spec: RelationSpec, instance: Instance) -> FrozenSet[tuple]:
    """The relation over the points of the instance's pattern produced by a
    relation spec.

    NEQ yields every ordered pair of distinct points.  POLYMORPHISM with a
    k-ary table yields, per variable, every (k+1)-tuple of same-part points
    whose last value is the table image of the first k; tuples whose image
    value is not in the variable's domain are omitted.
    """
    ids = instance_point_ids(instance)
    if spec.kind == RelationSpec.NEQ:
        pts = list(ids.values())
        return frozenset((p, q) for p in pts for q in pts if p != q)
    out = []
    table = spec.table
    k = spec.op_arity
    for v in instance.variables:
        dom = instance.domain[v]
        dset = set(dom)
        for args in itertools.product(dom, repeat=k):
            if args not in table:
                raise PartialTable(f"table missing {args} needed for variable {v!r}")
            image = table[args]
            if image in dset:
                out.append(tuple(ids[(v, a)] for a in args) + (ids[(v, image)],))
    return frozenset(out)


def augmented_instance_pattern(instance: Instance, spec: RelationSpec) -> AugmentedPattern:
    """Instance pattern carrying the relation produced by ``spec``."""
    return AugmentedPattern(pattern_from_instance(instance), spec.arity,
                            instance_relation(spec, instance))


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def canonical_key(pattern: Pattern) -> tuple:
    """Isomorphism-invariant canonical certificate.

    Built as the lexicographically least row sequence over all point
    orderings, where a point's row records the index of its part among parts
    seen so far plus its edge kinds toward every earlier point.  The search
    keeps, level by level, every partial ordering achieving the minimal row,
    so symmetric patterns cost no more than their automorphism count.
    """
    c = pattern._cache
    if "canon" in c:
        return c["canon"]
    pts = pattern.points
    n = len(pts)
    if n == 0:
        c["canon"] = ("cf", 0)
        return c["canon"]
    kind = {}
    for x, y in pattern.positive:
        kind[(x, y)] = kind[(y, x)] = EDGE_POS
    for x, y in pattern.negative:
        pr = kind.get((x, y), EDGE_NONE) | EDGE_NEG
        kind[(x, y)] = kind[(y, x)] = pr
    part_of = pattern.part_of
    # frontier: (placed tuple, slot map part_rep -> slot index)
    frontier = [((), {})]
    rows = []
    remaining0 = set(pts)
    for _level in range(n):
        best_row = None
        extensions = []
        for placed, slots in frontier:
            placed_set = set(placed)
            for x in pts:
                if x in placed_set:
                    continue
                rep = part_of[x]
                slot = slots.get(rep, len(slots))
                row = (slot, tuple(kind.get((y, x), EDGE_NONE) for y in placed))
                if best_row is None or row < best_row:
                    best_row = row
                    extensions = [(placed, slots, x)]
                elif row == best_row:
                    extensions.append((placed, slots, x))
        rows.append(best_row)
        new_frontier = []
        seen_states = set()
        for placed, slots, x in extensions:
            rep = part_of[x]
            new_slots = slots if rep in slots else {**slots, rep: len(slots)}
            state = placed + (x,)
            if state not in seen_states:
                seen_states.add(state)
                new_frontier.append((state, new_slots))
        frontier = new_frontier
    c["canon"] = ("cf", n, tuple(rows))
    return c["canon"]
