"""Independence and clique numbers, property (q, p), holes and counting bounds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    mask_of,
    popcount,
    subsets_colex,
    vertices_of,
)


# ---------------------------------------------------------------------------
# independence number: largest set containing no edge


def _max_free_set(h: Hypergraph, within: int, target: int | None = None) -> int:
    """Largest subset of ``within`` spanning no edge of ``h`` (first found wins).

    With ``target``, stops as soon as a free set of that size is found.
    """
    links = h.links
    best = 0
    best_size = 0
    stop = target if target is not None else h.n + 1

    def grow(chosen, size, cand):
        nonlocal best, best_size
        if size > best_size:
            best, best_size = chosen, size
            if best_size >= stop:
                return True
        while cand:
            if size + popcount(cand) <= best_size:
                return False
            low = cand & -cand
            cand ^= low
            new = chosen | low
            rest = 0
            c = cand
            while c:
                u = c & -c
                c ^= u
                # u is blocked if some edge through u lies inside new + u
                for l in links[u.bit_length() - 1]:
                    if l & ~new == 0:
                        break
                else:
                    rest |= u
            if grow(new, size + 1, rest):
                return True
        return False

    grow(0, 0, within)
    return best


def independence_number(h: Hypergraph) -> tuple[int, int]:
    """Return (alpha, witness mask)."""
    w = _max_free_set(h, h.vertex_mask)
    return popcount(w), w


# ---------------------------------------------------------------------------
# cliques, grown directly from the edge set


def _clique_search(h: Hypergraph, within: int, target: int | None = None) -> int:
    r = h.r
    edges = h.edges
    best = 0
    best_size = 0
    stop = target if target is not None else h.n + 1

    def compatible(chosen_list, v, u):
        pair = (1 << (v - 1)) | (1 << (u - 1))
        for rest in combinations(chosen_list, r - 2):
            if pair | mask_of(rest) not in edges:
                return False
        return True

    def grow(chosen_list, chosen, cand):
        nonlocal best, best_size
        size = len(chosen_list)
        if size > best_size:
            best, best_size = chosen, size
            if best_size >= stop:
                return True
        while cand:
            if size + popcount(cand) <= best_size:
                return False
            low = cand & -cand
            cand ^= low
            v = low.bit_length()
            rest = 0
            c = cand
            if size + 1 >= r - 1:
                while c:
                    u = c & -c
                    c ^= u
                    if compatible(chosen_list, v, u.bit_length()):
                        rest |= u
            else:
                # fewer than r vertices after adding u: vacuously a clique
                rest = cand
            if grow(chosen_list + [v], chosen | low, rest):
                return True
        return False

    grow([], 0, within)
    return best


def clique_number(h: Hypergraph) -> tuple[int, int]:
    """Return (omega, witness mask).  Sets smaller than r count as cliques."""
    w = _clique_search(h, h.vertex_mask)
    return popcount(w), w


def has_clique(h: Hypergraph, size: int, within: int | None = None) -> bool:
    if within is None:
        within = h.vertex_mask
    if size <= min(h.r - 1, popcount(within)):
        return True
    return popcount(_clique_search(h, within, target=size)) >= size


# ---------------------------------------------------------------------------
# property (q, p)


@dataclass(frozen=True)
class PropertyPair:
    q: int
    p: int

    def validate(self, h: Hypergraph) -> None:
        if not h.r <= self.p <= self.q <= h.n:
            raise HypergraphError(
                f"property ({self.q}, {self.p}) needs r={h.r} <= p <= q <= n={h.n}"
            )


def _check_qp(h: Hypergraph, q: int, p: int) -> None:
    # p below r is allowed: it arises after cutting holes and is vacuous
    if q > h.n:
        raise HypergraphError(f"q={q} exceeds n={h.n}")
    if not 0 <= p <= q:
        raise HypergraphError(f"need 0 <= p <= q, got q={q}, p={p}")


def property_counterexample(h: Hypergraph, q: int, p: int) -> int | None:
    """First q-set (colex order) with no p-clique, or None if H has property (q, p)."""
    _check_qp(h, q, p)
    for z in subsets_colex(h.n, q):
        if not has_clique(h, p, z):
            return z
    return None


def has_property(h: Hypergraph, q: int, p: int) -> bool:
    return property_counterexample(h, q, p) is None


# ---------------------------------------------------------------------------
# holes


@dataclass(frozen=True)
class HoleDescriptor:
    Z: int
    w: int
    v: int
    a: int

    def __post_init__(self):
        if self.w <= self.a * self.v:
            raise ValueError(f"not a hole: w={self.w} <= a*v={self.a * self.v}")

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.Z)


def find_hole(h: Hypergraph, a: int, max_w: int | None = None) -> HoleDescriptor | None:
    """Smallest-w hole with w <= max_w; among those, the colex-least Z.

    Z is a hole when the clique number v of H restricted to Z has w > a*v.
    """
    if a < 2:
        raise ValueError("a must be at least 2")
    if max_w is None:
        max_w = h.n
    if max_w > h.n:
        raise ValueError(f"max_w={max_w} exceeds n={h.n}")
    for w in range(1, max_w + 1):
        need = -(-w // a)  # a clique of size ceil(w/a) means no hole
        if need <= h.r - 1:
            continue
        for z in subsets_colex(h.n, w):
            if not has_clique(h, need, z):
                v = popcount(_clique_search(h, z))
                return HoleDescriptor(z, w, v, a)
    return None


def excess(q: int, p: int, a: int) -> int:
    return a * p - q


# ---------------------------------------------------------------------------
# hereditary counting bound


@dataclass(frozen=True)
class HereditaryParams:
    a: int
    s: int
    t: int
    b: int

    def __post_init__(self):
        if not 0 <= self.b < self.a:
            raise ValueError(f"need 0 <= b < a, got b={self.b}, a={self.a}")
        if self.s != (self.a - self.b) * self.t + self.b * (self.t - 1):
            raise ValueError(f"s={self.s} != (a-b)t + b(t-1)")

    @classmethod
    def for_size(cls, a: int, s: int) -> HereditaryParams:
        t = -(-s // a)
        return cls(a, s, t, a * t - s)


def hereditary_bound(hp: HereditaryParams, r: int) -> int:
    return (hp.a - hp.b) * comb(hp.t, r) + hp.b * comb(hp.t - 1, r)


@dataclass
class HereditaryRow:
    params: HereditaryParams
    bound: int
    min_edges: int
    witness: int
    checked: int
    mode: str  # "exhaustive" or "sampled"

    @property
    def slack(self) -> int:
        return self.min_edges - self.bound


@dataclass
class HereditaryReport:
    a: int
    ell: int
    hole: HoleDescriptor | None = None
    rows: list[HereditaryRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hole is None and all(row.slack >= 0 for row in self.rows)

    @property
    def min_slack(self) -> int | None:
        return min((row.slack for row in self.rows), default=None)

    @property
    def tight_witness(self) -> int | None:
        rows = [row for row in self.rows if row.slack == self.min_slack]
        return rows[0].witness if rows else None


def _edges_inside(h: Hypergraph, y: int) -> int:
    return sum(1 for e in h.edges if e & y == e)


def check_hereditary(
    h: Hypergraph,
    a: int,
    ell: int,
    *,
    exhaustive_limit: int = 10**6,
    samples: int = 10_000,
    seed: int = 0,
) -> HereditaryReport:
    """Check the counting bound on every Y of size s in [(r-1)a, a*ell].

    The hypothesis (no hole with w <= a*ell) is verified first; if it fails
    the report carries the hole and no rows.  Sizes with more than
    ``exhaustive_limit`` subsets are sampled instead and flagged as such.
    """
    report = HereditaryReport(a, ell)
    top = min(a * ell, h.n)
    report.hole = find_hole(h, a, top)
    if report.hole is not None:
        return report
    rng = random.Random(seed)
    for s in range((h.r - 1) * a, top + 1):
        hp = HereditaryParams.for_size(a, s)
        bound = hereditary_bound(hp, h.r)
        if comb(h.n, s) <= exhaustive_limit:
            family = subsets_colex(h.n, s)
            mode = "exhaustive"
        else:
            verts = list(range(1, h.n + 1))
            family = (mask_of(rng.sample(verts, s)) for _ in range(samples))
            mode = "sampled"
        best = None
        witness = 0
        checked = 0
        for y in family:
            checked += 1
            k = _edges_inside(h, y)
            if best is None or k < best:
                best, witness = k, y
        report.rows.append(HereditaryRow(hp, bound, best, witness, checked, mode))
    return report


def hereditary_slack(h: Hypergraph, a: int, y: int) -> int:
    """Edges inside Y minus the counting bound for |Y|."""
    hp = HereditaryParams.for_size(a, popcount(y))
    return _edges_inside(h, y) - hereditary_bound(hp, h.r)

