"""Sub-pattern and topological-minor occurrence.

A sub-pattern occurrence is a part-preserving homomorphism: edges of every
kind are preserved, points in distinct parts land in distinct parts (so the
induced part map is injective), and points within a part may merge.  A
topological-minor occurrence is a sub-pattern occurrence of some subdivision
of the source.

``occurs_tm`` is exact: since part maps are injective and every effective
subdivision adds exactly one part, searching all subdivisions with at most
as many parts as the target covers every possible witness.  Subdivisions are
enumerated breadth-first and deduplicated by canonical form, so witnesses
come out at minimal depth.  Two fast paths dispatch first: sources that are
the negative pattern of a graph reduce to a graph topological-minor test on
the target's constraint graph, and star-like negative sources reduce to a
plain sub-pattern search.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from .core import (
    AugmentedPattern,
    Graph,
    Instance,
    Pattern,
    augmented_instance_pattern,
    canonical_key,
    instance_relation,
    pattern_from_instance,
    split_pattern,
    subdivide,
    RelationSpec,
    _pair,
)
from .errors import ArityMismatch, BudgetExceeded
from .graphs import constraint_graph, graph_topological_minor

PatternLike = Union[Pattern, AugmentedPattern]


@dataclass(frozen=True)
class Embedding:
    """A verified part-preserving homomorphism, as a point map."""

    point_map: Dict[int, int]

    def verify(self, source: PatternLike, target: PatternLike) -> bool:
        """Re-check every clause of the definition against source and target."""
        P, R, _ = split_pattern(source)
        Q, S, _ = split_pattern(target)
        h = self.point_map
        if set(h.keys()) != set(P.points):
            return False
        tpoints = set(Q.points)
        if any(v not in tpoints for v in h.values()):
            return False
        for x, y in P.positive:
            if _pair(h[x], h[y]) not in Q.positive:
                return False
        for x, y in P.negative:
            if _pair(h[x], h[y]) not in Q.negative:
                return False
        for x, y in itertools.combinations(P.points, 2):
            same_src = P.part_of[x] == P.part_of[y]
            same_tgt = Q.part_of[h[x]] == Q.part_of[h[y]]
            if same_src != same_tgt:
                return False
        if R is not None:
            if S is None:
                return False
            for t in R:
                if tuple(h[c] for c in t) not in S:
                    return False
        return True


@dataclass(frozen=True)
class TmWitness:
    """Subdivision steps applied to the source, plus an embedding of the
    final subdivision into the target.  Replaying the steps and checking the
    embedding verifies the witness in one pass."""

    steps: Tuple[Tuple[int, int], ...]
    embedding: Embedding

    def verify(self, source: PatternLike, target: PatternLike) -> bool:
        P, R, m = split_pattern(source)
        try:
            for u, v in self.steps:
                P = subdivide(P, u, v)
        except Exception:
            return False
        final: PatternLike = P if R is None else AugmentedPattern(P, m, R)
        return self.embedding.verify(final, target)


# ---------------------------------------------------------------------------
# Sub-pattern search
# ---------------------------------------------------------------------------


def find_sub_pattern(source: PatternLike, target: PatternLike) -> Optional[Embedding]:
    """Backtracking search for a part-preserving homomorphism.

    Point selection is most-constrained-first (points with an already
    assigned edge neighbor, then points of already mapped parts), with ties
    broken by (part size, id); candidate targets are tried in ascending id
    order, so the returned embedding is deterministic.  Homomorphisms need
    not be point-injective: points sharing a part may merge.
    """
    P, R, m1 = split_pattern(source)
    Q, S, m2 = split_pattern(target)
    if R is not None:
        if S is None:
            raise ArityMismatch("source is augmented but target carries no relation")
        if m1 != m2:
            raise ArityMismatch(f"relation arities differ ({m1} vs {m2})")
    if P.n_parts > Q.n_parts:
        return None
    if not P.points:
        return Embedding({})
    if P.positive and not Q.positive:
        return None
    if P.negative and not Q.negative:
        return None
    if P.both_pairs and not Q.both_pairs:
        return None

    spart = P.part_of
    spos = P.pos_adj
    sneg = P.neg_adj
    s_part_size = {x: len(P.parts[spart[x]]) for x in P.points}
    tpart = Q.part_of
    t_parts = Q.parts
    t_pos = Q.pos_adj_sets
    t_neg = Q.neg_adj_sets

    tuples_by_pt: Dict[int, List[tuple]] = {}
    if R is not None:
        for t in R:
            for c in set(t):
                tuples_by_pt.setdefault(c, []).append(t)

    h: Dict[int, int] = {}
    part_img: Dict[int, int] = {}
    img_used: set = set()
    unassigned = set(P.points)

    def pick_next():
        best, best_key = None, None
        for x in unassigned:
            if any(y in h for y in spos[x]) or any(y in h for y in sneg[x]):
                pr = 0
            elif spart[x] in part_img:
                pr = 1
            else:
                pr = 2
            key = (pr, s_part_size[x], x)
            if best_key is None or key < best_key:
                best, best_key = x, key
        return best

    def candidates(x):
        pools = []
        for y in spos[x]:
            if y in h:
                pools.append(t_pos[h[y]])
        for y in sneg[x]:
            if y in h:
                pools.append(t_neg[h[y]])
        rep = spart[x]
        if rep in part_img:
            members = t_parts[part_img[rep]]
            if not pools:
                return members
            keep = set(members).intersection(*pools)
            return sorted(keep)
        if pools:
            pools.sort(key=len)
            keep = set(pools[0]).intersection(*pools[1:]) if len(pools) > 1 else set(pools[0])
            return sorted(p for p in keep if tpart[p] not in img_used)
        out = []
        for rep_t, members in t_parts.items():
            if rep_t not in img_used:
                out.extend(members)
        return out

    def tuples_ok(x):
        for t in tuples_by_pt.get(x, ()):
            image = []
            for c in t:
                v = h.get(c)
                if v is None:
                    break
                image.append(v)
            else:
                if tuple(image) not in S:
                    return False
        return True

    def dfs():
        if not unassigned:
            return True
        x = pick_next()
        unassigned.discard(x)
        rep = spart[x]
        fresh_part = rep not in part_img
        for p in candidates(x):
            h[x] = p
            if fresh_part:
                part_img[rep] = tpart[p]
                img_used.add(tpart[p])
            if tuples_ok(x) and dfs():
                return True
            del h[x]
            if fresh_part:
                img_used.discard(part_img.pop(rep))
        unassigned.add(x)
        return False

    if dfs():
        emb = Embedding(dict(h))
        return emb
    return None


# ---------------------------------------------------------------------------
# Subdivision enumeration and exact TM search
# ---------------------------------------------------------------------------


def enumerate_subdivisions(pattern: Pattern, max_parts: int):
    """Yield every subdivision of ``pattern`` with at most ``max_parts``
    parts, exactly once up to isomorphism, as (pattern, steps) in
    breadth-first (minimal-depth-first) order.

    Steps are pairs of part ids valid at the moment of application, so a
    witness replays by applying ``subdivide`` in sequence.  Pairs with no
    edges between them are never subdivided (the operation would be the
    identity).
    """
    if max_parts < pattern.n_parts:
        raise ValueError("max_parts is below the pattern's own part count")
    seen = {canonical_key(pattern)}
    yield pattern, ()
    queue = deque([(pattern, ())])
    while queue:
        pat, steps = queue.popleft()
        if pat.n_parts >= max_parts:
            continue
        for u, v in pat.part_pairs_with_edges():
            child = subdivide(pat, u, v)
            key = canonical_key(child)
            if key in seen:
                continue
            seen.add(key)
            child_steps = steps + ((u, v),)
            yield child, child_steps
            queue.append((child, child_steps))


def pg_form_graph(pattern: Pattern) -> Optional[Graph]:
    """The graph G with ``pattern`` isomorphic to its negative pattern, if
    one exists: no positive edges, every point in exactly one negative edge,
    at most one negative edge between any two parts."""
    if pattern.positive or not pattern.negative:
        return None
    neg = pattern.neg_adj
    if any(len(nbrs) != 1 for nbrs in neg.values()):
        return None
    po = pattern.part_of
    edges = set()
    for x, y in pattern.negative:
        e = _pair(po[x], po[y])
        if e in edges:
            return None  # parallel part edges
        edges.add(e)
    return Graph(pattern.part_reps, edges)


def _tm_witness_from_graph(pattern: Pattern, minor: Graph, target: PatternLike,
                           branch_map, paths) -> TmWitness:
    """Turn a graph topological-minor witness into subdivision steps plus an
    embedding, for a PG-form source."""
    Q, _, _ = split_pattern(target)
    # Stretch each pattern edge to the length of its host path.
    pat = pattern
    steps: List[Tuple[int, int]] = []
    chains: Dict[Tuple[int, int], List[int]] = {}  # minor edge -> part rep chain
    for e in sorted(minor.edges):
        path = paths[e]
        chain = [e[0]]
        left = e[0]
        for _ in range(len(path) - 2):
            new_rep = max(pat.points) + 1
            steps.append((left, e[1]))
            pat = subdivide(pat, left, e[1])
            chain.append(new_rep)
            left = new_rep
        chain.append(e[1])
        chains[e] = chain
    # Assemble the point map chain segment by chain segment.
    neg_between: Dict[Tuple[int, int], Tuple[int, int]] = {}
    tpo = Q.part_of
    for x, y in sorted(Q.negative):
        neg_between.setdefault(_pair(tpo[x], tpo[y]), (x, y))
    h: Dict[int, int] = {}
    for e in sorted(minor.edges):
        chain = chains[e]
        path = paths[e]
        for i in range(len(chain) - 1):
            a_rep, b_rep = chain[i], chain[i + 1]
            pos_uv, neg_uv = pat.edges_between(a_rep, b_rep)
            x, y = neg_uv[0]  # oriented: x in part a_rep
            host_a, host_b = path[i], path[i + 1]
            qx, qy = neg_between[_pair(host_a, host_b)]
            if tpo[qx] != host_a:
                qx, qy = qy, qx
            h[x] = qx
            h[y] = qy
    return TmWitness(tuple(steps), Embedding(h))


def is_star_like(pattern: Pattern) -> bool:
    """Whether the negative reduct occurs in some star pattern.

    Decided structurally: the part-level negative graph must be acyclic and
    at most one part may be strong, where a part is strong if it has
    negative edges to three or more other parts, or contains a point with
    negative edges into two or more distinct parts.  (A point whose negative
    edges all lead to a single part is collapsible and does not make its
    part strong.)
    """
    po = pattern.part_of
    adj: Dict[int, set] = {rep: set() for rep in pattern.part_reps}
    point_nbr_parts: Dict[int, set] = {}
    for x, y in pattern.negative:
        a, b = po[x], po[y]
        adj[a].add(b)
        adj[b].add(a)
        point_nbr_parts.setdefault(x, set()).add(b)
        point_nbr_parts.setdefault(y, set()).add(a)
    # acyclicity of the part-level graph
    seen = set()
    for start in adj:
        if start in seen:
            continue
        comp, degs = 0, 0
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp += 1
            degs += len(adj[v])
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if degs // 2 >= comp:
            return False
    strong = 0
    for rep, members in pattern.parts.items():
        if len(adj[rep]) >= 3 or any(len(point_nbr_parts.get(p, ())) >= 2 for p in members):
            strong += 1
    return strong <= 1


def occurs_tm(
    source: PatternLike,
    target: PatternLike,
    max_parts: Optional[int] = None,
    use_fast_paths: bool = True,
) -> Optional[TmWitness]:
    """Exact topological-minor test; returns a minimal-depth witness or None.

    The exact bound on subdivision size is the target's part count.  If the
    caller supplies a lower ``max_parts`` and nothing is found within it,
    BudgetExceeded is raised since NotFound cannot be certified.
    """
    P, R, m = split_pattern(source)
    Q, _, _ = split_pattern(target)
    exact_bound = Q.n_parts
    budget = exact_bound if max_parts is None else min(max_parts, exact_bound)

    if R is None and use_fast_paths:
        g = pg_form_graph(P)
        if g is not None:
            cg = constraint_graph(Q)
            res = graph_topological_minor(
                g, cg,
                max_minor_vertices=len(g.vertices) + 1,
                max_host_vertices=len(cg.vertices) + 1)
            if res is None:
                return None
            return _tm_witness_from_graph(P, g, target, *res)
        if not P.positive and is_star_like(P):
            emb = find_sub_pattern(P, target)
            return TmWitness((), emb) if emb is not None else None

    if budget >= P.n_parts:
        for pat, steps in enumerate_subdivisions(P, budget):
            cand: PatternLike = pat if R is None else AugmentedPattern(pat, m, R)
            emb = find_sub_pattern(cand, target)
            if emb is not None:
                return TmWitness(steps, emb)
    if budget < exact_bound and P.n_parts <= exact_bound:
        raise BudgetExceeded(
            f"searched subdivisions up to {budget} parts but the exact bound is {exact_bound}")
    return None


# ---------------------------------------------------------------------------
# Forbidden-pattern class membership
# ---------------------------------------------------------------------------

SP = "SP"
TM = "TM"


def forbids(
    patterns: Iterable[PatternLike],
    instance: Instance,
    mode: str,
    rel: Optional[RelationSpec] = None,
):
    """True iff no pattern in the set occurs in the instance's pattern under
    the given mode; otherwise (False, (pattern, witness)) for the first
    violation in set order.  Augmented patterns are matched against the
    instance pattern augmented with ``rel``'s relation."""
    mode = mode.upper()
    if mode not in (SP, TM):
        raise ValueError(f"mode must be SP or TM, got {mode!r}")
    pats = list(patterns)
    plain_target = pattern_from_instance(instance)
    aug_target = None
    if any(isinstance(p, AugmentedPattern) for p in pats):
        if rel is None:
            raise ArityMismatch("augmented patterns require a relation spec")
        for p in pats:
            if isinstance(p, AugmentedPattern) and p.arity != rel.arity:
                raise ArityMismatch(
                    f"pattern arity {p.arity} does not match relation arity {rel.arity}")
        aug_target = AugmentedPattern(plain_target, rel.arity,
                                      instance_relation(rel, instance))
    for p in pats:
        tgt = aug_target if isinstance(p, AugmentedPattern) else plain_target
        if mode == SP:
            witness = find_sub_pattern(p, tgt)
        else:
            witness = occurs_tm(p, tgt)
        if witness is not None:
            return False, (p, witness)
    return True, None
