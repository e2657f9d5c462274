"""JSON (de)serialization for instances, patterns, graphs, and witnesses.

Instance files list per-variable domains as label lists; constraints refer
to values by label and unlisted variable pairs are trivial.  Labels map to
internal small ints by position, so emitting always writes 0-based values.
``parse(emit(x)) == x`` holds for every type here.
"""

from __future__ import annotations

import json
from typing import Any, Dict

from .core import AugmentedPattern, Graph, Instance, Pattern
from .occurrence import Embedding, TmWitness


def instance_to_json(instance: Instance) -> Dict[str, Any]:
    variables = [{"name": v, "domain": list(instance.domain[v])}
                 for v in instance.variables]
    constraints = [{"scope": [u, v], "allowed": sorted(map(list, pairs))}
                   for (u, v), pairs in sorted(
                       instance.relation.items(),
                       key=lambda kv: (instance.var_index(kv[0][0]),
                                       instance.var_index(kv[0][1])))]
    return {"variables": variables, "constraints": constraints}


def instance_from_json(data: Dict[str, Any]) -> Instance:
    names = []
    domains = {}
    label_maps = {}
    for entry in data["variables"]:
        name = entry["name"]
        labels = list(entry["domain"])
        names.append(name)
        label_maps[name] = {lab: i for i, lab in enumerate(labels)}
        domains[name] = range(len(labels))
    relations = {}
    for c in data.get("constraints", ()):
        u, v = c["scope"]
        pairs = [(label_maps[u][a], label_maps[v][b]) for a, b in c["allowed"]]
        key = (u, v)
        if key in relations:
            relations[key] = [p for p in relations[key] if p in set(pairs)]
        else:
            relations[key] = pairs
    return Instance(names, domains, relations)


def pattern_to_json(pattern) -> Dict[str, Any]:
    if isinstance(pattern, AugmentedPattern):
        base = pattern_to_json(pattern.pattern)
        base["relation"] = {"arity": pattern.arity,
                            "tuples": sorted(map(list, pattern.tuples))}
        return base
    return {
        "points": list(pattern.points),
        "parts": [list(members) for members in pattern.parts.values()],
        "positive": sorted(map(list, pattern.positive)),
        "negative": sorted(map(list, pattern.negative)),
    }


def pattern_from_json(data: Dict[str, Any]):
    part_of = {}
    for members in data["parts"]:
        rep = min(members)
        for p in members:
            part_of[p] = rep
    pat = Pattern(data["points"], part_of,
                  data.get("positive", ()), data.get("negative", ()))
    rel = data.get("relation")
    if rel:
        return AugmentedPattern(pat, rel["arity"], [tuple(t) for t in rel["tuples"]])
    return pat


def graph_to_json(graph: Graph) -> Dict[str, Any]:
    return {"vertices": list(graph.vertices),
            "edges": sorted([list(e) for e in graph.edges])}


def graph_from_json(data: Dict[str, Any]) -> Graph:
    return Graph(data["vertices"], data.get("edges", ()))


def witness_to_json(witness) -> Dict[str, Any]:
    if isinstance(witness, TmWitness):
        return {"steps": [[str(u), str(v)] for u, v in witness.steps],
                "map": {str(s): str(t) for s, t in sorted(witness.embedding.point_map.items())}}
    if isinstance(witness, Embedding):
        return {"steps": [],
                "map": {str(s): str(t) for s, t in sorted(witness.point_map.items())}}
    raise TypeError(f"not a witness: {type(witness).__name__}")


def witness_from_json(data: Dict[str, Any]) -> TmWitness:
    steps = tuple((int(u), int(v)) for u, v in data.get("steps", ()))
    mapping = {int(s): int(t) for s, t in data["map"].items()}
    return TmWitness(steps, Embedding(mapping))


def dumps(obj: Dict[str, Any]) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=str)
