"""Named hypergraphs: balanced clique unions, the R and T families, H1/H2."""

from __future__ import annotations

import re
from math import comb

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    blow_up,
    complement,
    complete,
    disjoint_union,
    make_hypergraph,
    subsets_colex,
)


def balanced_union(n: int, r: int, a: int) -> Hypergraph:
    """Disjoint cliques on a near-equal partition of [n] into a contiguous parts.

    Larger parts come first, so vertices 1..ceil(n/a) form the first part.
    """
    if a < 2:
        raise HypergraphError("need at least two parts")
    q, extra = divmod(n, a)
    sizes = [q + 1] * extra + [q] * (a - extra)
    edges = set()
    start = 0
    for size in sizes:
        edges.update(e << start for e in subsets_colex(size, r))
        start += size
    return Hypergraph(n, r, frozenset(edges))


def part_sizes(n: int, a: int) -> list[int]:
    q, extra = divmod(n, a)
    return [q + 1] * extra + [q] * (a - extra)


# transcribed edge lists; counts are asserted in the tests
_R0_EDGES = [
    (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4),
] + [(i, x, y) for i in range(1, 5) for (x, y) in ((5, 6), (5, 7), (6, 7))]

_R1_REMOVED = [(1, 5, 6), (2, 5, 7), (3, 6, 7)]
_R2_REMOVED = [(1, 5, 6), (1, 5, 7), (3, 6, 7)]
_R_REMOVED = [(1, 5, 6)]
_T_REMOVED = [(1, 5, 6), (2, 4, 6), (2, 5, 6), (3, 4, 6), (3, 4, 5)]
_T_MINUS_REMOVED = _T_REMOVED + [(1, 4, 5)]


def _minus(n: int, base: list[tuple[int, ...]], removed: list[tuple[int, ...]]) -> Hypergraph:
    base_set = {tuple(sorted(e)) for e in base}
    gone = {tuple(sorted(e)) for e in removed}
    if not gone <= base_set:
        raise AssertionError(f"{sorted(gone - base_set)} are not edges of the parent")
    return make_hypergraph(n, 3, sorted(base_set - gone))


def _all_triples(n: int) -> list[tuple[int, ...]]:
    return [(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(j + 1, n + 1)]


CATALOG_NAMES = ("R0", "R1", "R2", "R", "T", "T_minus", "T_prime")


def catalog(name: str) -> Hypergraph:
    """Look up a named hypergraph: R0, R1, R2, R, T, T_minus, T_prime or K<t>.

    ``K<t>`` is the complete 3-graph on t vertices; ``K<t>^<r>`` picks the
    uniformity explicitly.
    """
    if name == "R0":
        return make_hypergraph(7, 3, _R0_EDGES)
    if name == "R1":
        return _minus(7, _R0_EDGES, _R1_REMOVED)
    if name == "R2":
        return _minus(7, _R0_EDGES, _R2_REMOVED)
    if name == "R":
        return _minus(7, _R0_EDGES, _R_REMOVED)
    if name == "T":
        return _minus(6, _all_triples(6), _T_REMOVED)
    if name == "T_minus":
        return _minus(6, _all_triples(6), _T_MINUS_REMOVED)
    if name == "T_prime":
        return make_T_prime()
    m = re.fullmatch(r"K(\d+)(?:\^(\d+))?", name)
    if m:
        t = int(m.group(1))
        r = int(m.group(2) or 3)
        return complete(t, r)
    raise KeyError(f"unknown hypergraph name {name!r}")


def make_T_prime() -> Hypergraph:
    """T with vertices 1, 2, 3 doubled; ``labels`` projects back onto T."""
    return blow_up(catalog("T"), (2, 2, 2, 1, 1, 1))


def make_H1(p: int, *, special: Hypergraph | None = None) -> Hypergraph:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"H1 needs odd p >= 3, got {p}")
    base = special if special is not None else catalog("R")
    return disjoint_union(base, *[complete(4, 3)] * ((p - 3) // 2))


def make_H2(p: int, *, special: Hypergraph | None = None) -> Hypergraph:
    if p < 4 or p % 2 == 1:
        raise ValueError(f"H2 needs even p >= 4, got {p}")
    base = special if special is not None else make_T_prime()
    return disjoint_union(base, *[complete(4, 3)] * ((p - 4) // 2))


def crossing_construction(n: int) -> Hypergraph:
    """All triples on [2n] meeting both {1..n} and {n+1..2n}."""
    if not 2 <= n <= 32:
        raise HypergraphError(f"need 2 <= n <= 32, got {n}")
    return complement(balanced_union(2 * n, 3, 2))


def crossing_edge_count(n: int) -> int:
    return comb(2 * n, 3) - 2 * comb(n, 3)
