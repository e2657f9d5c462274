"""Seeded random instance generation.

The generator is Python's Mersenne Twister (``random.Random``) driven only
through ``random()`` and ``randrange()``, so a seed reproduces the same
instance on any platform.  Cross-language fixtures should be shared as
emitted JSON, not by seed.
"""

from __future__ import annotations

import random
from typing import Optional

from .core import Instance
from .errors import BadDensity


def gen_random(num_vars: int, dom: int, density: float, seed: int) -> Instance:
    """Random instance on variables 0..num_vars-1 with domains 0..dom-1.

    Each unordered variable pair independently becomes non-trivial with
    probability ``density``; its allowed set is then drawn uniformly from
    the proper non-empty subsets of the value-pair grid (bit i of the mask
    covers pair (i // dom, i % dom)).  Pairs over one-value domains stay
    trivial since no proper non-empty subset exists.
    """
    if not 0.0 <= density <= 1.0:
        raise BadDensity(f"density {density} outside [0, 1]")
    rng = random.Random(seed)
    variables = tuple(range(num_vars))
    domains = {v: tuple(range(dom)) for v in variables}
    relations = {}
    cells = dom * dom
    for u in range(num_vars):
        for v in range(u + 1, num_vars):
            if rng.random() >= density:
                continue
            if cells < 2:
                continue
            mask = rng.randrange(1, 2 ** cells - 1)
            allowed = [(i // dom, i % dom) for i in range(cells) if mask >> i & 1]
            relations[(u, v)] = allowed
    return Instance(variables, domains, relations)


def gen_random_tree(num_vars: int, dom: int, seed: int,
                    allow_empty: bool = True) -> Instance:
    """Random instance whose constraint graph is a forest: each variable
    beyond the first attaches to a random earlier variable with probability
    9/10, with a uniformly drawn proper (optionally non-empty) relation."""
    rng = random.Random(seed)
    variables = tuple(range(num_vars))
    domains = {v: tuple(range(dom)) for v in variables}
    relations = {}
    cells = dom * dom
    lo = 0 if allow_empty else 1
    for v in range(1, num_vars):
        if rng.random() < 0.1:
            continue
        u = rng.randrange(v)
        if cells < 2:
            continue
        mask = rng.randrange(lo, 2 ** cells - 1)
        if mask == 0:
            relations[(u, v)] = []
            continue
        allowed = [(i // dom, i % dom) for i in range(cells) if mask >> i & 1]
        relations[(u, v)] = allowed
    return Instance(variables, domains, relations)
