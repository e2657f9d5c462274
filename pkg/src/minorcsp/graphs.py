"""Graph-level algorithms backing the occurrence engine and the solvers.

Everything here is exact and deliberately desk-scale: separator search is
brute force over candidate vertex pairs, and the topological-minor test is
a backtracking search over branch-vertex maps plus internally disjoint
connecting paths.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .core import Graph, Instance, Pattern, _pair
from .errors import Disconnected, SizeLimitExceeded, UnknownPoint


def constraint_graph(obj) -> Graph:
    """Parts as vertices, edges where a negative edge (for instances: a
    non-trivial constraint) joins them."""
    if isinstance(obj, Instance):
        return Graph(obj.variables, obj.relation.keys())
    if isinstance(obj, Pattern):
        po = obj.part_of
        edges = {(po[x], po[y]) for x, y in obj.negative}
        return Graph(obj.part_reps, edges)
    raise TypeError(f"expected Pattern or Instance, got {type(obj).__name__}")


def connected_components(graph: Graph) -> List[FrozenSet[Any]]:
    adj = graph.adjacency()
    seen = set()
    out = []
    for start in graph.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(graph: Graph) -> bool:
    return len(connected_components(graph)) <= 1


def is_acyclic(graph: Graph) -> bool:
    """No cycle in any component (undirected): |E| < |V| per component."""
    adj = graph.adjacency()
    seen = set()
    for start in graph.vertices:
        if start in seen:
            continue
        comp_vertices = 0
        comp_degree = 0
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp_vertices += 1
            comp_degree += len(adj[v])
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if comp_degree // 2 >= comp_vertices:
            return False
    return True


def articulation_vertices(graph: Graph) -> FrozenSet[Any]:
    """Vertices whose removal increases the component count."""
    blocks, cuts = biconnected_blocks(graph)
    return cuts


def biconnected_blocks(graph: Graph) -> Tuple[List[FrozenSet[Any]], FrozenSet[Any]]:
    """Biconnected blocks (as vertex sets) and cut vertices, Hopcroft-Tarjan
    style.  Isolated vertices form singleton blocks."""
    adj = graph.adjacency()
    visited = set()
    cuts = set()
    blocks: List[FrozenSet[Any]] = []
    for start in graph.vertices:
        if start in visited:
            continue
        if not adj[start]:
            visited.add(start)
            blocks.append(frozenset([start]))
            continue
        discovery = {start: 0}
        low = {start: 0}
        visited.add(start)
        edge_stack: List[Tuple[Any, Any]] = []
        root_children = 0
        stack = [(start, start, iter(adj[start]))]
        while stack:
            grandparent, parent, children = stack[-1]
            child = next(children, None)
            if child is not None:
                if child == grandparent:
                    continue
                if child in visited:
                    if discovery[child] <= discovery[parent]:
                        low[parent] = min(low[parent], discovery[child])
                        edge_stack.append((parent, child))
                else:
                    low[child] = discovery[child] = len(discovery)
                    visited.add(child)
                    edge_stack.append((parent, child))
                    stack.append((parent, child, iter(adj[child])))
                continue
            stack.pop()
            if len(stack) > 1:
                if low[parent] >= discovery[grandparent]:
                    cuts.add(grandparent)
                    ind = edge_stack.index((grandparent, parent))
                    blocks.append(frozenset(itertools.chain.from_iterable(edge_stack[ind:])))
                    del edge_stack[ind:]
                low[grandparent] = min(low[parent], low[grandparent])
            elif stack:
                root_children += 1
                ind = edge_stack.index((grandparent, parent))
                blocks.append(frozenset(itertools.chain.from_iterable(edge_stack[ind:])))
                del edge_stack[ind:]
        if root_children > 1:
            cuts.add(start)
    return blocks, frozenset(cuts)


# ---------------------------------------------------------------------------
# Topological minors of graphs
# ---------------------------------------------------------------------------


def graph_topological_minor(
    minor: Graph,
    host: Graph,
    *,
    max_minor_vertices: int = 8,
    max_host_vertices: int = 24,
) -> Optional[Tuple[Dict[Any, Any], Dict[Tuple[Any, Any], Tuple[Any, ...]]]]:
    """Exact test whether ``minor`` is a topological minor of ``host``.

    Returns ``(branch_map, paths)`` on success: an injective vertex map and,
    per minor edge, a host path whose internal vertices are fresh across all
    paths and distinct from every branch vertex.  Returns None when no such
    embedding exists.
    """
    if len(minor.vertices) > max_minor_vertices:
        raise SizeLimitExceeded(
            f"minor has {len(minor.vertices)} vertices (limit {max_minor_vertices})")
    if len(host.vertices) > max_host_vertices:
        raise SizeLimitExceeded(
            f"host has {len(host.vertices)} vertices (limit {max_host_vertices})")
    if len(minor.vertices) > len(host.vertices) or len(minor.edges) > len(host.edges):
        return None

    madj = minor.adjacency()
    hadj = host.adjacency()
    mdeg = {v: len(madj[v]) for v in minor.vertices}
    hdeg = {v: len(hadj[v]) for v in host.vertices}
    order = sorted(minor.vertices, key=lambda v: (-mdeg[v], v))
    hverts = sorted(host.vertices)
    edges = sorted(minor.edges)

    def realize(bmap):
        branch_targets = set(bmap.values())
        used_internal: set = set()
        paths: Dict[Tuple[Any, Any], Tuple[Any, ...]] = {}

        def connect(j):
            if j == len(edges):
                return dict(paths)
            a, b = edges[j]
            s, t = bmap[a], bmap[b]
            trail = [s]

            def extend():
                cur = trail[-1]
                for nxt in hadj[cur]:
                    if nxt == t:
                        paths[edges[j]] = tuple(trail) + (t,)
                        done = connect(j + 1)
                        if done is not None:
                            return done
                        del paths[edges[j]]
                    elif nxt not in branch_targets and nxt not in used_internal:
                        trail.append(nxt)
                        used_internal.add(nxt)
                        done = extend()
                        if done is not None:
                            return done
                        used_internal.discard(nxt)
                        trail.pop()
                return None

            return extend()

        return connect(0)

    def assign(i, bmap, used):
        if i == len(order):
            paths = realize(bmap)
            return (dict(bmap), paths) if paths is not None else None
        v = order[i]
        for w in hverts:
            if w in used or hdeg[w] < mdeg[v]:
                continue
            bmap[v] = w
            used.add(w)
            res = assign(i + 1, bmap, used)
            if res is not None:
                return res
            del bmap[v]
            used.discard(w)
        return None

    return assign(0, {}, set())


# ---------------------------------------------------------------------------
# Separations and the Tutte decomposition
# ---------------------------------------------------------------------------


def _components_of(vertices, adj, removed) -> List[Tuple[Any, ...]]:
    seen = set(removed)
    out = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


def two_separations(graph: Graph, max_order: int = 2) -> List[Tuple[Tuple[Any, ...], FrozenSet[Any]]]:
    """All separators of order <= max_order, paired with each side they cut
    off.  Order-1 separators come first, then pairs, both lexicographic."""
    adj = graph.adjacency()
    verts = graph.vertices
    out = []
    for k in range(1, max_order + 1):
        for sep in itertools.combinations(sorted(verts), k):
            if len(verts) - k < 2:
                continue
            comps = _components_of(verts, adj, set(sep))
            if len(comps) >= 2:
                for comp in comps:
                    out.append((sep, frozenset(comp)))
    return out


@dataclass(frozen=True)
class DecompNode:
    ident: int
    vertices: FrozenSet[Any]
    kind: str  # THREE_CONNECTED | CYCLE | SMALL
    torso_edges: FrozenSet[Tuple[Any, Any]]
    virtual_edges: FrozenSet[Tuple[Any, Any]]


@dataclass(frozen=True)
class DecompArc:
    a: int
    b: int
    separator: Tuple[Any, ...]


@dataclass(frozen=True)
class DecompositionTree:
    """Tree of vertex sets from recursive order-<=2 separations.

    Every arc induces a separation of the input graph of order at most two;
    every node's torso (induced edges plus virtual separator edges) is
    three-connected, a cycle, or has at most three vertices.
    """

    nodes: Tuple[DecompNode, ...]
    arcs: Tuple[DecompArc, ...]

    def node(self, ident: int) -> DecompNode:
        return self.nodes[ident]

    def arcs_of(self, ident: int) -> List[DecompArc]:
        return [a for a in self.arcs if ident in (a.a, a.b)]

    def leaves(self) -> List[int]:
        if len(self.nodes) == 1:
            return [self.nodes[0].ident]
        degree = {n.ident: 0 for n in self.nodes}
        for a in self.arcs:
            degree[a.a] += 1
            degree[a.b] += 1
        return [i for i, d in degree.items() if d == 1]

    def replay(self) -> Graph:
        """Reconstruct the decomposed graph: union of torsos minus virtuals."""
        verts = set()
        edges = set()
        for n in self.nodes:
            verts |= n.vertices
            edges |= n.torso_edges - n.virtual_edges
        return Graph(verts, edges)


def _edge_set(edges, vertset):
    return frozenset(e for e in edges if e[0] in vertset and e[1] in vertset)


def _least_separator(vertices, adj) -> Optional[Tuple[Any, ...]]:
    verts = sorted(vertices)
    if len(verts) - 1 >= 2:
        for v in verts:
            if len(_components_of(vertices, adj, {v})) >= 2:
                return (v,)
    if len(verts) - 2 >= 2:
        for pair in itertools.combinations(verts, 2):
            if len(_components_of(vertices, adj, set(pair))) >= 2:
                return pair
    return None


def tutte_decompose(graph: Graph) -> DecompositionTree:
    """Recursive splitting on order-<=2 separators, articulation vertices
    first, lexicographically least separator, smaller side first."""
    if not graph.vertices:
        raise Disconnected("empty graph")
    if not is_connected(graph):
        raise Disconnected("graph is not connected")

    real_edges = graph.edges
    nodes: List[DecompNode] = []
    arcs: List[DecompArc] = []

    def classify(vertset, extra_edges) -> Optional[str]:
        edges = _edge_set(real_edges, vertset) | _edge_set(extra_edges, vertset)
        adj: Dict[Any, set] = {v: set() for v in vertset}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        n = len(vertset)
        if n >= 3 and all(len(adj[v]) == 2 for v in vertset) \
                and len(_components_of(vertset, adj, set())) == 1:
            return "CYCLE"
        if n <= 3:
            return "SMALL"
        if _least_separator(vertset, adj) is None:
            return "THREE_CONNECTED"
        return None

    def make_node(vertset, extra_edges) -> int:
        kind = classify(vertset, extra_edges)
        torso = _edge_set(real_edges, vertset) | _edge_set(extra_edges, vertset)
        node = DecompNode(
            ident=len(nodes),
            vertices=frozenset(vertset),
            kind=kind,
            torso_edges=torso,
            virtual_edges=torso - real_edges,
        )
        nodes.append(node)
        return node.ident

    def build(vertset, extra_edges) -> List[int]:
        if classify(vertset, extra_edges) is not None:
            return [make_node(vertset, extra_edges)]
        edges = _edge_set(real_edges, vertset) | _edge_set(extra_edges, vertset)
        adj: Dict[Any, set] = {v: set() for v in vertset}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        sep = _least_separator(vertset, adj)
        comps = _components_of(vertset, adj, set(sep))
        comps.sort(key=lambda c: (len(c), c))
        small = set(sep) | set(comps[0])
        big = set(sep) | set(itertools.chain.from_iterable(comps[1:]))
        virt = extra_edges
        if len(sep) == 2:
            virt = extra_edges | {_pair_any(sep[0], sep[1])}
        ids_small = build(small, frozenset(e for e in virt if e[0] in small and e[1] in small))
        ids_big = build(big, frozenset(e for e in virt if e[0] in big and e[1] in big))
        sep_set = set(sep)
        n1 = next(i for i in ids_small if sep_set <= nodes[i].vertices)
        n2 = next(i for i in ids_big if sep_set <= nodes[i].vertices)
        arcs.append(DecompArc(n1, n2, tuple(sorted(sep))))
        return ids_small + ids_big

    build(set(graph.vertices), frozenset())
    return DecompositionTree(tuple(nodes), tuple(arcs))


def _pair_any(u, v):
    return (u, v) if u <= v else (v, u)


# ---------------------------------------------------------------------------
# Part-disjoint positive paths in an instance
# ---------------------------------------------------------------------------


def part_disjoint_positive_path(
    instance: Instance,
    src: Tuple[Any, int],
    dst: Tuple[Any, int],
    *,
    min_edges: int = 0,
    allowed_points=None,
) -> Optional[Tuple[Tuple[Any, int], ...]]:
    """A path of positive edges from src to dst visiting each variable at
    most once, or None.  Exact DFS; exponential in the worst case.

    ``allowed_points`` optionally restricts every point on the path.
    """
    for var, val in (src, dst):
        if var not in instance.domain or val not in instance.domain[var]:
            raise UnknownPoint(f"({var!r},{val}) is not a point of the instance")
    if allowed_points is not None:
        allowed_points = set(allowed_points)
        if src not in allowed_points or dst not in allowed_points:
            return None
    if src == dst:
        return (src,) if min_edges == 0 else None

    variables = instance.variables
    allowed_cache: Dict[Tuple[Any, Any], FrozenSet] = {}

    def positive_nbrs(point):
        var, val = point
        out = []
        for w in variables:
            if w == var:
                continue
            key = (var, w)
            if key not in allowed_cache:
                allowed_cache[key] = instance.allowed(var, w)
            for b in instance.domain[w]:
                if (val, b) in allowed_cache[key]:
                    p = (w, b)
                    if allowed_points is None or p in allowed_points:
                        out.append(p)
        return out

    path = [src]
    used_vars = {src[0]}

    def dfs():
        for nxt in positive_nbrs(path[-1]):
            if nxt == dst:
                if len(path) >= min_edges:
                    path.append(nxt)
                    return True
                continue
            if nxt[0] in used_vars or nxt[0] == dst[0]:
                continue
            path.append(nxt)
            used_vars.add(nxt[0])
            if dfs():
                return True
            used_vars.discard(nxt[0])
            path.pop()
        return False

    return tuple(path) if dfs() else None
