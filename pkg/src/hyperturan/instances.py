"""Seeded random instances for the randomized cross-checks."""

from __future__ import annotations

import random

from .hypergraph import Hypergraph, induced, subsets_colex
from .invariants import clique_number


def random_hypergraph(rng: random.Random, n: int, r: int, density: float) -> Hypergraph:
    return Hypergraph(n, r, frozenset(e for e in subsets_colex(n, r) if rng.random() < density))


def planted_hole_instance(rng: random.Random, max_n: int = 14):
    """A dense hypergraph with a few sparse blocks cut out of it.

    Returns (F, a, q, p, ell) with q in {n, n-1} and p the largest value for
    which F has property (q, p), so the removal procedure's hypothesis holds.
    """
    while True:
        r = rng.choice((2, 3))
        a = 2
        ell = r
        n = rng.randint(2 * a * ell, max_n)
        keep = rng.uniform(0.7, 1.0)
        edges = {e for e in subsets_colex(n, r) if rng.random() < keep}
        verts = list(range(n))
        rng.shuffle(verts)
        pos = 0
        for _ in range(rng.randint(1, 3)):
            size = rng.randint(a * (r - 1) + 1, a * ell)
            block = verts[pos:pos + size]
            pos += size
            if len(block) < size:
                break
            bmask = sum(1 << v for v in block)
            thin = rng.uniform(0.7, 1.0)
            edges = {e for e in edges if e & bmask != e or rng.random() > thin}
        f = Hypergraph(n, r, frozenset(edges))
        q = rng.choice((n, n - 1))
        p = min(clique_number(induced(f, z))[0] for z in subsets_colex(n, q))
        if p >= r:
            return f, a, q, p, ell
