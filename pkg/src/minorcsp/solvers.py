"""Decision procedures and solvers.

``brute_force_solve`` is the ground-truth oracle: plain lexicographic
enumeration under a configurable cap.  ``mac_solve`` is the complete search
used wherever a sub-instance must be solved outright.  The structural
solvers (acyclic, articulation, Tutte scheme) are satisfiability-preserving
on every input; their polynomial-time claims only apply on the classes they
were designed for, which is not asserted here.  The class deciders check
membership exactly (exponential topological-minor search) before trusting
the propagation verdict.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .catalogue import make_named, make_pivot, make_pivot_neq
from .core import Instance, RelationSpec
from .errors import CapExceeded, DomainMismatch, NotAcyclic, NotInClass
from .graphs import (
    biconnected_blocks,
    connected_components,
    constraint_graph,
    is_acyclic,
)
from .occurrence import forbids

SAT = "SAT"
UNSAT = "UNSAT"

DEFAULT_CAP = 10_000_000


@dataclass
class SolveResult:
    status: str
    assignment: Optional[Dict[Any, int]] = None
    stats: Dict[str, int] = field(default_factory=dict)

    @property
    def is_sat(self) -> bool:
        return self.status == SAT


def _cap() -> int:
    raw = os.environ.get("MINORCSP_CAP")
    return int(raw) if raw else DEFAULT_CAP


def _wiped(instance: Instance) -> bool:
    return any(not instance.domain[v] for v in instance.variables)


def brute_force_solve(instance: Instance, cap: Optional[int] = None) -> SolveResult:
    """Exhaustive enumeration in lexicographic order; SAT iff a satisfying
    assignment exists.  Raises CapExceeded when the assignment space is
    larger than the cap (default 10^7, overridable via MINORCSP_CAP)."""
    cap = cap if cap is not None else _cap()
    space = instance.assignment_space()
    if space > cap:
        raise CapExceeded(f"assignment space {space} exceeds cap {cap}")
    variables = instance.variables
    index = {v: i for i, v in enumerate(variables)}
    checks = [(index[u], index[v], pairs) for (u, v), pairs in instance.relation.items()]
    nodes = 0
    for combo in itertools.product(*(instance.domain[v] for v in variables)):
        nodes += 1
        if all((combo[i], combo[j]) in pairs for i, j, pairs in checks):
            return SolveResult(SAT, dict(zip(variables, combo)), {"nodes": nodes})
    return SolveResult(UNSAT, None, {"nodes": nodes})


# ---------------------------------------------------------------------------
# Consistency operators
# ---------------------------------------------------------------------------


def establish_ac(instance: Instance) -> Instance:
    """The unique maximal arc-consistent subinstance, by removal only.

    Queue-based revision over constrained variable pairs.  If any domain
    wipes out, the maximal arc-consistent subinstance is entirely empty
    (a value cannot be supported by an empty neighbor domain), so all
    domains are emptied.  Idempotent.
    """
    dom = {v: set(instance.domain[v]) for v in instance.variables}

    def all_empty() -> Instance:
        return Instance(instance.variables, {v: () for v in instance.variables},
                        None)

    if any(not d for d in dom.values()):
        return all_empty() if instance.variables else instance

    allowed = {}
    for (u, v), pairs in instance.relation.items():
        allowed[(u, v)] = pairs
        allowed[(v, u)] = frozenset((b, a) for a, b in pairs)
    queue = deque(allowed.keys())
    in_queue = set(queue)
    while queue:
        u, v = queue.popleft()
        in_queue.discard((u, v))
        pairs = allowed[(u, v)]
        dv = dom[v]
        removed = [a for a in dom[u] if not any((a, b) in pairs for b in dv)]
        if removed:
            dom[u] -= set(removed)
            if not dom[u]:
                return all_empty()
            for w in instance.neighbors(u):
                if w != v and (w, u) in allowed and (w, u) not in in_queue:
                    queue.append((w, u))
                    in_queue.add((w, u))
    return Instance(instance.variables, {v: tuple(sorted(d)) for v, d in dom.items()},
                    instance.relation)


def establish_sac(instance: Instance) -> Instance:
    """Singleton arc consistency: repeatedly delete a value from a domain
    whenever asserting it makes arc consistency wipe out, until fixpoint."""
    cur = instance
    changed = True
    while changed:
        changed = False
        if _wiped(cur):
            return establish_ac(cur)  # cascades to all-empty
        for v in cur.variables:
            for a in list(cur.domain[v]):
                probe = establish_ac(cur.assigned(v, a))
                if _wiped(probe):
                    remaining = tuple(b for b in cur.domain[v] if b != a)
                    cur = cur.with_domains({v: remaining})
                    changed = True
                    if not remaining:
                        return establish_ac(cur)
    return cur


# ---------------------------------------------------------------------------
# Complete search
# ---------------------------------------------------------------------------


def mac_solve(instance: Instance) -> SolveResult:
    """Complete backtracking search maintaining arc consistency; assigns
    variables in declaration order, values ascending, so the returned
    assignment is the lexicographically least solution."""
    stats = {"nodes": 0, "ac_calls": 0}
    variables = instance.variables
    if not variables:
        return SolveResult(SAT, {}, stats)
    root = establish_ac(instance)
    stats["ac_calls"] += 1
    if _wiped(root):
        return SolveResult(UNSAT, None, stats)

    def go(cur: Instance, i: int) -> Optional[Dict[Any, int]]:
        if i == len(variables):
            return {v: cur.domain[v][0] for v in variables}
        v = variables[i]
        for a in cur.domain[v]:
            stats["nodes"] += 1
            nxt = establish_ac(cur.assigned(v, a))
            stats["ac_calls"] += 1
            if not _wiped(nxt):
                res = go(nxt, i + 1)
                if res is not None:
                    return res
        return None

    asg = go(root, 0)
    if asg is None:
        return SolveResult(UNSAT, None, stats)
    return SolveResult(SAT, asg, stats)


def solve_acyclic(instance: Instance) -> SolveResult:
    """Tree solver: directional arc consistency leaf-to-root per component,
    then a backtrack-free root-to-leaf greedy assignment."""
    cg = constraint_graph(instance)
    if not is_acyclic(cg):
        raise NotAcyclic("constraint graph has a cycle")
    stats = {"revisions": 0}
    if _wiped(instance):
        return SolveResult(UNSAT, None, stats)
    dom = {v: list(instance.domain[v]) for v in instance.variables}
    assignment: Dict[Any, int] = {}
    for comp in connected_components(cg):
        comp_vars = sorted(comp, key=instance.var_index)
        root = comp_vars[0]
        order = [root]
        parent: Dict[Any, Any] = {root: None}
        for v in order:
            for w in instance.neighbors(v):
                if w in comp and w not in parent:
                    parent[w] = v
                    order.append(w)
        for child in reversed(order[1:]):
            p = parent[child]
            allowed = instance.allowed(p, child)
            stats["revisions"] += 1
            dom[p] = [a for a in dom[p] if any((a, b) in allowed for b in dom[child])]
            if not dom[p]:
                return SolveResult(UNSAT, None, stats)
        assignment[root] = dom[root][0]
        for v in order[1:]:
            p = parent[v]
            allowed = instance.allowed(p, v)
            assignment[v] = next(b for b in dom[v] if (assignment[p], b) in allowed)
    return SolveResult(SAT, assignment, stats)


# ---------------------------------------------------------------------------
# Structural schemes
# ---------------------------------------------------------------------------


def solve_articulation(instance: Instance, leaf_solver=None) -> SolveResult:
    """Decompose at articulation variables; solve leaf blocks per value of
    their articulation variable, prune unsupported values, recurse.
    Complete for every input given a complete leaf solver."""
    leaf = leaf_solver or mac_solve
    stats = {"solver_calls": 0}

    def call_leaf(sub: Instance) -> SolveResult:
        stats["solver_calls"] += 1
        return leaf(sub)

    def solve(inst: Instance) -> Optional[Dict[Any, int]]:
        if _wiped(inst):
            return None
        out: Dict[Any, int] = {}
        cg = constraint_graph(inst)
        for comp in connected_components(cg):
            sub = inst.subinstance(comp)
            if len(comp) == 1:
                v = next(iter(comp))
                out[v] = sub.domain[v][0]
                continue
            res = solve_component(sub)
            if res is None:
                return None
            out.update(res)
        return out

    def solve_component(inst: Instance) -> Optional[Dict[Any, int]]:
        cg = constraint_graph(inst)
        blocks, cuts = biconnected_blocks(cg)
        if len(blocks) <= 1:
            r = call_leaf(inst)
            return r.assignment if r.is_sat else None
        leaf_blocks = [b for b in blocks if len(b & cuts) == 1]
        block = min(leaf_blocks, key=lambda b: tuple(sorted(b, key=inst.var_index)))
        (y,) = block & cuts
        sub = inst.subinstance(block)
        keep: Dict[int, Dict[Any, int]] = {}
        for p in inst.domain[y]:
            r = call_leaf(sub.assigned(y, p))
            if r.is_sat:
                keep[p] = r.assignment
        if not keep:
            return None
        rest_vars = [v for v in inst.variables if v not in block or v == y]
        rest = inst.subinstance(rest_vars).with_domains({y: tuple(sorted(keep))})
        res = solve(rest)
        if res is None:
            return None
        res.update(keep[res[y]])
        return res

    if not instance.variables:
        return SolveResult(SAT, {}, stats)
    asg = solve(instance)
    if asg is None:
        return SolveResult(UNSAT, None, stats)
    return SolveResult(SAT, asg, stats)


def solve_tutte_scheme(instance: Instance) -> SolveResult:
    """Generic decomposition scheme: repeatedly pick a leaf of the Tutte
    decomposition of the constraint graph, solve the leaf sub-instance for
    every assignment of its order-<=2 separator with the complete solver,
    tighten the separator constraint to the surviving assignments, delete
    the leaf interior, and finish the remaining piece completely.
    Satisfiability-preserving for every input."""
    from .graphs import tutte_decompose

    stats = {"solver_calls": 0}

    def call(sub: Instance) -> SolveResult:
        stats["solver_calls"] += 1
        return mac_solve(sub)

    if not instance.variables:
        return SolveResult(SAT, {}, stats)
    if _wiped(instance):
        return SolveResult(UNSAT, None, stats)

    assignment: Dict[Any, int] = {}
    patches: List[Tuple[Tuple[Any, ...], Dict[tuple, Dict[Any, int]], frozenset]] = []
    pending: List[Instance] = [instance]
    while pending:
        piece = pending.pop()
        if not piece.variables:
            continue
        if _wiped(piece):
            return SolveResult(UNSAT, None, stats)
        cg = constraint_graph(piece)
        comps = connected_components(cg)
        if len(comps) > 1:
            for comp in comps:
                pending.append(piece.subinstance(comp))
            continue
        if len(piece.variables) <= 3:
            r = call(piece)
            if not r.is_sat:
                return SolveResult(UNSAT, None, stats)
            assignment.update(r.assignment)
            continue
        tree = tutte_decompose(cg)
        chosen = None
        for ident in sorted(tree.leaves(),
                            key=lambda i: tuple(sorted(tree.node(i).vertices,
                                                       key=piece.var_index))):
            arcs = tree.arcs_of(ident)
            if not arcs:
                continue
            sep = arcs[0].separator
            interior = tree.node(ident).vertices - set(sep)
            if interior:
                chosen = (tree.node(ident), sep, interior)
                break
        if chosen is None:
            r = call(piece)
            if not r.is_sat:
                return SolveResult(UNSAT, None, stats)
            assignment.update(r.assignment)
            continue
        node, sep, interior = chosen
        sub = piece.subinstance(node.vertices)
        keep: Dict[tuple, Dict[Any, int]] = {}
        if len(sep) == 1:
            u = sep[0]
            for p in piece.domain[u]:
                r = call(sub.assigned(u, p))
                if r.is_sat:
                    keep[(p,)] = r.assignment
            if not keep:
                return SolveResult(UNSAT, None, stats)
            rest_vars = [v for v in piece.variables if v not in interior]
            rest = piece.subinstance(rest_vars).with_domains(
                {u: tuple(sorted(k[0] for k in keep))})
        else:
            u, v = sorted(sep, key=piece.var_index)
            for p in piece.domain[u]:
                for q in piece.domain[v]:
                    r = call(sub.with_domains({u: (p,), v: (q,)}))
                    if r.is_sat:
                        keep[(p, q)] = r.assignment
            if not keep:
                return SolveResult(UNSAT, None, stats)
            rest_vars = [w for w in piece.variables if w not in interior]
            rel = {key: pairs for key, pairs in piece.relation.items()
                   if key[0] in rest_vars and key[1] in rest_vars and set(key) != {u, v}}
            rel[(u, v)] = frozenset(keep.keys())
            rest = Instance(rest_vars, {w: piece.domain[w] for w in rest_vars}, rel)
        patches.append((tuple(sorted(sep, key=piece.var_index)), keep, interior))
        pending.append(rest)

    for sep_vars, table, interior in reversed(patches):
        key = tuple(assignment[w] for w in sep_vars)
        block = table[key]
        for w in interior:
            assignment[w] = block[w]
    return SolveResult(SAT, assignment, stats)


# ---------------------------------------------------------------------------
# Class deciders
# ---------------------------------------------------------------------------


def decide_ac_class(instance: Instance) -> SolveResult:
    """Decider for instances forbidding the disequality-augmented two-block
    pattern as a topological minor: arc consistency alone decides, and a
    witness is assembled by assigning greedily and recursing into the
    connected components the assignment leaves behind."""
    ok, _ = forbids([make_named("K_neq")], instance, "TM", RelationSpec.neq())
    if not ok:
        raise NotInClass("the disequality-augmented block pattern occurs as a topological minor")
    reduced = establish_ac(instance)
    if instance.variables and _wiped(reduced):
        return SolveResult(UNSAT, None, {})
    assignment = _extract_ac_solution(reduced)
    return SolveResult(SAT, assignment, {})


def _extract_ac_solution(inst: Instance) -> Dict[Any, int]:
    """Witness extraction for arc-consistent members: fix the least value of
    the first variable, prune its neighbors, then each component of what
    remains is again an arc-consistent member and recurses independently."""
    if not inst.variables:
        return {}
    v = inst.variables[0]
    a = inst.domain[v][0]
    out = {v: a}
    pruned = {}
    for w in inst.neighbors(v):
        allowed = inst.allowed(v, w)
        pruned[w] = tuple(b for b in inst.domain[w] if (a, b) in allowed)
    rest = inst.subinstance([w for w in inst.variables if w != v]).with_domains(pruned)
    cg = constraint_graph(rest)
    for comp in connected_components(cg):
        sub = establish_ac(rest.subinstance(comp))
        if _wiped(sub):
            raise AssertionError("arc-consistent class member lost all support; "
                                 "membership precondition violated")
        out.update(_extract_ac_solution(sub))
    return out


def decide_sac_class(instance: Instance) -> SolveResult:
    """Decider for instances forbidding the disequality-augmented triangle
    pattern as a topological minor: singleton arc consistency decides."""
    ok, _ = forbids([make_named("C3_neq")], instance, "TM", RelationSpec.neq())
    if not ok:
        raise NotInClass("the disequality-augmented triangle pattern occurs as a topological minor")
    reduced = establish_sac(instance)
    if instance.variables and _wiped(reduced):
        return SolveResult(UNSAT, None, {})
    return SolveResult(SAT, None, {})


def check_polymorphism(operation, instance: Instance) -> bool:
    """True iff every constraint relation is closed under coordinatewise
    application of the operation.

    The operation table must be total over the instance's shared domain
    (all variables must have equal domains matching the table's), which
    makes this check coincide with the absence of the two-part augmented
    pattern whose relation is the operation graph.
    """
    spec = operation if isinstance(operation, RelationSpec) else RelationSpec.polymorphism(operation)
    if spec.kind != RelationSpec.POLYMORPHISM:
        raise DomainMismatch("expected a POLYMORPHISM relation spec")
    shared = None
    for v in instance.variables:
        d = tuple(instance.domain[v])
        if shared is None:
            shared = d
        elif d != shared:
            raise DomainMismatch("variables do not share a single domain")
    if shared is not None and tuple(spec.op_domain) != shared:
        raise DomainMismatch(
            f"table domain {spec.op_domain} differs from instance domain {shared}")
    table = spec.table
    k = spec.op_arity
    for pairs in instance.relation.values():
        plist = sorted(pairs)
        for combo in itertools.product(plist, repeat=k):
            fa = table[tuple(a for a, _ in combo)]
            fb = table[tuple(b for _, b in combo)]
            if (fa, fb) not in pairs:
                return False
    return True


def polymorphism_pattern(k: int):
    """The two-part augmented pattern whose absence as a sub-pattern (with
    the operation-graph relation) characterizes closure under a k-ary
    operation: k positive rungs, one negative rung, and the two rows as
    relation tuples."""
    from .core import AugmentedPattern, Pattern

    u = list(range(k + 1))
    v = list(range(k + 1, 2 * k + 2))
    part_of = {p: "U" for p in u}
    part_of.update({q: "V" for q in v})
    positive = [(u[i], v[i]) for i in range(k)]
    negative = [(u[k], v[k])]
    pat = Pattern(u + v, part_of, positive, negative)
    return AugmentedPattern(pat, k + 1, [tuple(u), tuple(v)])


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_CLASS_SOLVERS = (
    ("acyclic", "acyclic"),
    ("forb_tm_K", "articulation"),
    ("forb_tm_L", "tutte"),
    ("forb_tm_K_neq", "ac-class"),
    ("forb_tm_C3_neq", "sac-class"),
)


def classify(instance: Instance, pivot_bound: int = 3) -> Dict[str, Any]:
    """Membership report over the tractable classes plus a recommended
    solver (first match in listed order; fallback is complete search)."""
    neq = RelationSpec.neq()
    checks: List[Tuple[str, bool]] = []
    checks.append(("acyclic", forbids([make_named("C3")], instance, "TM")[0]))
    checks.append(("forb_tm_K", forbids([make_named("K")], instance, "TM")[0]))
    checks.append(("forb_tm_L", forbids([make_named("L")], instance, "TM")[0]))
    checks.append(("forb_tm_K_neq", forbids([make_named("K_neq")], instance, "TM", neq)[0]))
    checks.append(("forb_tm_C3_neq", forbids([make_named("C3_neq")], instance, "TM", neq)[0]))
    for k in range(1, pivot_bound + 1):
        checks.append((f"forb_sp_pivot_{k}", forbids([make_pivot(k)], instance, "SP")[0]))
    for k in range(1, pivot_bound + 1):
        checks.append((f"forb_sp_pivot_neq_{k}",
                       forbids([make_pivot_neq(k)], instance, "SP", neq)[0]))
    membership = dict(checks)
    recommended = "mac"
    for name, solver in _CLASS_SOLVERS:
        if membership[name]:
            recommended = solver
            break
    return {"classes": membership, "recommended": recommended}


METHODS = ("auto", "bruteforce", "mac", "acyclic", "articulation", "tutte",
           "ac-class", "sac-class")


def solve(instance: Instance, method: str = "auto") -> SolveResult:
    """Dispatch a solve by method name; ``auto`` classifies first."""
    if method == "auto":
        method = classify(instance)["recommended"]
    if method == "bruteforce":
        return brute_force_solve(instance)
    if method == "mac":
        return mac_solve(instance)
    if method == "acyclic":
        return solve_acyclic(instance)
    if method == "articulation":
        return solve_articulation(instance)
    if method == "tutte":
        return solve_tutte_scheme(instance)
    if method == "ac-class":
        return decide_ac_class(instance)
    if method == "sac-class":
        return decide_sac_class(instance)
    raise ValueError(f"unknown method {method!r}")
