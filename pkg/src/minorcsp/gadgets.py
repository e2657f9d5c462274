"""Reduction gadgets from 3-CNF formulas to binary CSP instances.

The standard gadget chains one two-lane block per formula variable between
anchor variables p0..p{n+m} and hangs one three-slot fan per clause off the
tail anchors, with multi-positive end blocks at u and w; every value pair
not placed by a block is disallowed.  Satisfiability of the formula is then
equivalent to a positive path from p0 to p{n+m} visiting each variable at
most once, and (for the smallest sizes) to the four-block pattern occurring
as a topological minor.

The globally-consistent variant replaces the end blocks by a single
six-positive sub-instance directly between p0 and p{n+m} and then pads the
instance with one fresh mutually-compatible value family per original
(variable, value) point, which makes every point extend to a solution
without creating any new path between original points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

from .catalogue import make_named
from .core import Instance, Pattern, pattern_from_instance
from .errors import SizeLimitExceeded
from .graphs import part_disjoint_positive_path
from .occurrence import occurs_tm


@dataclass(frozen=True)
class Cnf:
    """A 3-CNF formula: exactly three literals per clause, repeats allowed."""

    num_vars: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        if len(self.clauses) < 1:
            raise ValueError("formula needs at least one clause")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} does not have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> Cnf:
    num_vars = None
    clauses: List[Tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if lits:
            clauses.append(tuple(lits))
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    return Cnf(num_vars, tuple(clauses))


def to_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    for clause in cnf.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def truth_table_sat(cnf: Cnf) -> bool:
    for combo in itertools.product((False, True), repeat=cnf.num_vars):
        if all(any((lit > 0) == combo[abs(lit) - 1] for lit in clause)
               for clause in cnf.clauses):
            return True
    return False


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

MAIN = 0      # path value of every anchor variable
CHAIN = 0     # lane value used by variable chains
CLAUSE = 1    # lane value used by clause fans


def _lane_var(lit: int, r: int) -> str:
    # a positive literal selects the complement lane, a negative one the
    # plain lane: the chain occupies the lane matching the chosen truth
    # value, and the clause fan must pass through the other one
    i = abs(lit)
    return f"vb{i}_{r}" if lit > 0 else f"v{i}_{r}"


def _gadget_variables(cnf: Cnf, with_ends: bool) -> List[str]:
    n, m = cnf.num_vars, cnf.num_clauses
    out = ["u", "w"] if with_ends else []
    out += [f"p{i}" for i in range(n + m + 1)]
    for i in range(1, n + 1):
        out += [f"v{i}_{r}" for r in range(1, m + 1)]
        out += [f"vb{i}_{r}" for r in range(1, m + 1)]
    return out


class _RelationBuilder:
    """Collects positive pairs per unordered variable pair; every pair not
    touched ends up with an empty (all-negative) relation."""

    def __init__(self, variables: List[str]):
        self.variables = variables
        self.index = {v: i for i, v in enumerate(variables)}
        self.pairs: Dict[Tuple[str, str], Set[Tuple[int, int]]] = {}

    def add(self, u: str, a: int, v: str, b: int):
        if self.index[u] > self.index[v]:
            u, v, a, b = v, u, b, a
        self.pairs.setdefault((u, v), set()).add((a, b))

    def relations(self) -> Dict[Tuple[str, str], Set[Tuple[int, int]]]:
        rel = dict(self.pairs)
        for u, v in itertools.combinations(self.variables, 2):
            rel.setdefault((u, v), set())
        return rel


def _build_core(cnf: Cnf, with_ends: bool) -> Instance:
    n, m = cnf.num_vars, cnf.num_clauses
    variables = _gadget_variables(cnf, with_ends)
    domains: Dict[str, Tuple[int, ...]] = {}
    anchor_vals = (0, 1) if with_ends else (0, 1, 2)
    for v in variables:
        if v in ("u", "w"):
            domains[v] = (0, 1)
        elif v in ("p0", f"p{n + m}"):
            domains[v] = anchor_vals
        elif v.startswith("p"):
            domains[v] = (0,)
        else:
            domains[v] = (CHAIN, CLAUSE)
    rb = _RelationBuilder(variables)
    if with_ends:
        # end blocks: the main anchor value sits in two positive edges
        rb.add("u", 0, "p0", 0)
        rb.add("u", 0, "p0", 1)
        rb.add("u", 1, "p0", 0)
        rb.add(f"p{n + m}", 0, "w", 0)
        rb.add(f"p{n + m}", 0, "w", 1)
        rb.add(f"p{n + m}", 1, "w", 0)
    else:
        # one six-positive block directly between the outer anchors
        for a, b in ((0, 0), (1, 1), (0, 1), (1, 0), (0, 2), (2, 0)):
            rb.add("p0", a, f"p{n + m}", b)
    for i in range(1, n + 1):
        for lane in (f"v{i}_", f"vb{i}_"):
            rb.add(f"p{i - 1}", MAIN, f"{lane}1", CHAIN)
            for r in range(1, m):
                rb.add(f"{lane}{r}", CHAIN, f"{lane}{r + 1}", CHAIN)
            rb.add(f"{lane}{m}", CHAIN, f"p{i}", MAIN)
    for r, clause in enumerate(cnf.clauses, start=1):
        for lit in clause:
            q = _lane_var(lit, r)
            rb.add(f"p{n + r - 1}", MAIN, q, CLAUSE)
            rb.add(q, CLAUSE, f"p{n + r}", MAIN)
    return Instance(variables, domains, rb.relations())


def build_sat_gadget(cnf: Cnf) -> Tuple[Instance, Pattern]:
    """Instance whose pattern contains the four-block pattern as a
    topological minor iff the formula is satisfiable."""
    return _build_core(cnf, with_ends=True), make_named("M")


def build_gc_gadget(cnf: Cnf):
    """Globally-consistent variant: end blocks replaced by the six-positive
    block, then every point given a fresh extending value family."""
    core = _build_core(cnf, with_ends=False)
    return make_globally_consistent(core), make_named("Mprime")


def make_globally_consistent(instance: Instance) -> Instance:
    """Pad an instance so every (variable, value) extends to a solution.

    For each point (v, a), one fresh value b(v,a,v') is added to every other
    variable v'; it is compatible with (v, a) and with the other members of
    its family, and incompatible with everything else.  The family plus its
    seed is a solution through (v, a), and original values gain no new
    mutual compatibilities.
    """
    variables = instance.variables
    rel: Dict[Tuple[Any, Any], Set[Tuple[int, int]]] = {}
    index = {v: i for i, v in enumerate(variables)}

    def add(u, a, v, b):
        if index[u] > index[v]:
            u, v, a, b = v, u, b, a
        rel.setdefault((u, v), set()).add((a, b))

    for u, v in itertools.combinations(variables, 2):
        rel[(u, v)] = set(instance.allowed(u, v))
    domains = {v: list(instance.domain[v]) for v in variables}
    fresh = {v: (max(domains[v]) + 1 if domains[v] else 0) for v in variables}
    for sv in variables:
        for sa in instance.domain[sv]:
            family = {}
            for v in variables:
                if v == sv:
                    continue
                b = fresh[v]
                fresh[v] += 1
                domains[v].append(b)
                family[v] = b
                add(sv, sa, v, b)
            for v1, v2 in itertools.combinations(sorted(family, key=index.get), 2):
                add(v1, family[v1], v2, family[v2])
    return Instance(variables, domains, rel)


def provenance(cnf: Cnf, variant: str = "standard") -> Dict[str, str]:
    """Role of each gadget variable, for emitted instance JSON."""
    n, m = cnf.num_vars, cnf.num_clauses
    roles = {}
    if variant == "standard":
        roles["u"] = "end block (left)"
        roles["w"] = "end block (right)"
    roles["p0"] = "path anchor (source)"
    roles[f"p{n + m}"] = "path anchor (sink)"
    for i in range(1, n + m):
        roles[f"p{i}"] = "path anchor"
    for i in range(1, n + 1):
        for r in range(1, m + 1):
            roles[f"v{i}_{r}"] = f"lane of x{i} slot {r} (chain = TRUE side complement)"
            roles[f"vb{i}_{r}"] = f"complement lane of x{i} slot {r}"
    for r, clause in enumerate(cnf.clauses, start=1):
        for lit in clause:
            q = _lane_var(lit, r)
            roles[q] += f"; clause {r} slot for literal {lit}"
    return roles


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_gadget(cnf: Cnf, variant: str = "standard",
                  tm_point_limit: int = 16, require_tm: bool = False) -> Dict[str, Any]:
    """Cross-check the gadget three ways: formula satisfiability by truth
    table, part-disjoint positive path existence, and (within the point
    limit) the exact topological-minor test.  On the globally-consistent
    variant a path/minor disagreement is reported as a finding rather than
    raised, since that pattern's encoding is reconstructed from a drawing.

    With ``require_tm`` the minor test is mandatory and exceeding the point
    limit raises SizeLimitExceeded instead of skipping it.
    """
    if variant not in ("standard", "gc"):
        raise ValueError(f"unknown variant {variant!r}")
    n, m = cnf.num_vars, cnf.num_clauses
    sat = truth_table_sat(cnf)
    src, dst = ("p0", MAIN), (f"p{n + m}", MAIN)
    if variant == "standard":
        instance, pattern = build_sat_gadget(cnf)
        path = part_disjoint_positive_path(instance, src, dst)
    else:
        instance, pattern = build_gc_gadget(cnf)
        core = _build_core(cnf, with_ends=False)
        originals = {(v, a) for v in core.variables for a in core.domain[v]}
        path = part_disjoint_positive_path(instance, src, dst,
                                           min_edges=2, allowed_points=originals)
    report: Dict[str, Any] = {
        "variant": variant,
        "num_vars": n,
        "num_clauses": m,
        "sat": sat,
        "path_found": path is not None,
        "tm_checked": False,
        "tm_found": None,
        "findings": [],
    }
    target = pattern_from_instance(instance)
    if len(target.points) > tm_point_limit:
        if require_tm:
            raise SizeLimitExceeded(
                f"{len(target.points)} points exceed the minor-test limit {tm_point_limit}")
    else:
        witness = occurs_tm(pattern, target)
        report["tm_checked"] = True
        report["tm_found"] = witness is not None
    if report["path_found"] != sat:
        report["findings"].append("path existence disagrees with satisfiability")
    if report["tm_checked"] and report["tm_found"] != sat:
        report["findings"].append("topological-minor verdict disagrees with satisfiability")
    report["agree"] = not report["findings"]
    return report
