"""Independent brute-force oracles and random generators for the tests.

The oracles re-derive expected values straight from the definitions with
code that shares nothing with the engine: homomorphism search by exhaustive
enumeration over part injections and point products, topological minors of
graphs by subdivision enumeration plus networkx subgraph monomorphism, and
star-likeness by homomorphism search into one sufficiently large star
pattern that subsumes the whole family.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

import networkx as nx

from minorcsp import (
    Graph,
    Instance,
    Pattern,
    find_sub_pattern,
    gen_random,
)
from minorcsp.core import split_pattern


def raw_hom_search(source, target, part_preserving=True):
    """Exhaustive homomorphism search by direct definition checking.

    Iterates over all injective part maps and all point assignments within
    them, validating every edge and relation tuple at the end.  Tiny inputs
    only.
    """
    P, R, _ = split_pattern(source)
    Q, S, _ = split_pattern(target)
    src_parts = list(P.parts.items())
    tgt_reps = list(Q.parts.keys())
    if not P.points:
        return {}
    if part_preserving and len(src_parts) > len(tgt_reps):
        return None

    def check(h):
        for x, y in P.positive:
            if tuple(sorted((h[x], h[y]))) not in Q.positive:
                return False
        for x, y in P.negative:
            if tuple(sorted((h[x], h[y]))) not in Q.negative:
                return False
        for x, y in itertools.combinations(P.points, 2):
            same_s = P.part_of[x] == P.part_of[y]
            same_t = Q.part_of[h[x]] == Q.part_of[h[y]]
            if same_s and not same_t:
                return False
            if part_preserving and not same_s and same_t:
                return False
        if R is not None:
            for t in R:
                if tuple(h[c] for c in t) not in S:
                    return False
        return True

    if part_preserving:
        for image in itertools.permutations(tgt_reps, len(src_parts)):
            pools = []
            for (_, members), tgt_rep in zip(src_parts, image):
                pools.append([Q.parts[tgt_rep]] * len(members))
            flat_points = [p for _, members in src_parts for p in members]
            flat_pools = [pool for group in pools for pool in group]
            for combo in itertools.product(*flat_pools):
                h = dict(zip(flat_points, combo))
                if check(h):
                    return h
        return None
    for combo in itertools.product(Q.points, repeat=len(P.points)):
        h = dict(zip(P.points, combo))
        if check(h):
            return h
    return None


def to_nx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges)
    return g


def graph_tm_oracle(minor: Graph, host: Graph) -> bool:
    """Subdivision-enumeration oracle for graph topological minors: breadth
    first over subdivisions of the minor up to the host's vertex count,
    testing each for a subgraph monomorphism into the host via networkx."""
    host_nx = to_nx(host)
    limit = len(host.vertices)
    seen = []
    queue = deque()

    def push(g: nx.Graph):
        for other in seen:
            if nx.is_isomorphic(g, other):
                return
        seen.append(g)
        queue.append(g)

    push(to_nx(minor))
    while queue:
        g = queue.popleft()
        if nx.algorithms.isomorphism.GraphMatcher(host_nx, g).subgraph_is_monomorphic():
            return True
        if g.number_of_nodes() >= limit:
            continue
        for u, v in sorted(g.edges()):
            g2 = g.copy()
            g2.remove_edge(u, v)
            z = ("z", g2.number_of_nodes(), u, v)
            g2.add_edge(u, z)
            g2.add_edge(z, v)
            push(g2)
    return False


def full_star_pattern(branches: int, length: int) -> Pattern:
    """One large star pattern subsuming the whole search family: ``branches``
    branches of ``length`` edges with the central part fully merged to a
    single point.  Any star pattern with at most this many branches and this
    branch length occurs in it as a sub-pattern."""
    points = [0]
    part_of = {0: 0}
    negative = []
    nxt = 1
    for _ in range(branches):
        attach = 0
        for j in range(1, length + 1):
            if j < length:
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
            attach = inward + 1 if j < length else None
    return Pattern(points, part_of, (), negative)


def star_like_oracle(pattern: Pattern) -> bool:
    """Search-based star-likeness: strip positives, drop parts without
    negative edges (they embed anywhere along a long enough branch), and
    look for a part-preserving homomorphism into one maximal star pattern."""
    po = pattern.part_of
    touched = {po[x] for e in pattern.negative for x in e}
    keep = [p for p in pattern.points if po[p] in touched]
    reduct = Pattern(keep, {p: po[p] for p in keep}, (), pattern.negative)
    n_edges = len(reduct.negative)
    if n_edges == 0:
        return True
    star = full_star_pattern(max(3, n_edges), n_edges)
    return find_sub_pattern(reduct, star) is not None


def assignment_ok(instance: Instance, assignment) -> bool:
    if set(assignment) != set(instance.variables):
        return False
    for v, a in assignment.items():
        if a not in instance.domain[v]:
            return False
    for u, v in itertools.combinations(instance.variables, 2):
        if (assignment[u], assignment[v]) not in instance.allowed(u, v):
            return False
    return True


# ---------------------------------------------------------------------------
# Random structure generators (all seeded by the caller)
# ---------------------------------------------------------------------------


def random_pattern(rng: random.Random, max_parts=4, max_points=2,
                   p_pos=0.3, p_neg=0.3, p_both=0.05) -> Pattern:
    n_parts = rng.randint(1, max_parts)
    points = []
    part_of = {}
    nxt = 0
    for part in range(n_parts):
        size = rng.randint(1, max_points)
        rep = nxt
        for _ in range(size):
            points.append(nxt)
            part_of[nxt] = rep
            nxt += 1
    positive, negative = [], []
    for x, y in itertools.combinations(points, 2):
        if part_of[x] == part_of[y]:
            continue
        r = rng.random()
        if r < p_both:
            positive.append((x, y))
            negative.append((x, y))
        elif r < p_both + p_pos:
            positive.append((x, y))
        elif r < p_both + p_pos + p_neg:
            negative.append((x, y))
    return Pattern(points, part_of, positive, negative)


def random_graph(rng: random.Random, max_vertices=5, p_edge=0.5) -> Graph:
    n = rng.randint(1, max_vertices)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p_edge]
    return Graph(range(n), edges)


def random_instance(rng: random.Random, max_vars=6, max_dom=3,
                    density=0.5) -> Instance:
    n = rng.randint(1, max_vars)
    d = rng.randint(1, max_dom)
    return gen_random(n, d, density, rng.randrange(2 ** 30))
