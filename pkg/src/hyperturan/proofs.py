"""Executable versions of two proof procedures.

* iterative hole removal: cut (w, v)-holes off a hypergraph with property
  (q, p), tracking how the pair and its excess a*p - q evolve;
* the link-multigraph argument for 3-graphs containing a 4-clique S: sum the
  link graphs of the vertices of S and look for a heavy triple, which yields
  a copy of R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .constructions import catalog
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    induced,
    is_copy,
    mask_of,
    popcount,
    subsets_colex,
    vertices_of,
)
from .invariants import HoleDescriptor, excess, find_hole, has_clique, has_property


class PreconditionError(ValueError):
    """The input does not satisfy the hypothesis the procedure runs under."""


class LemmaViolation(AssertionError):
    """A step produced a state the supporting lemma rules out: a bug signal."""


# ---------------------------------------------------------------------------
# hole removal


@dataclass(frozen=True)
class RemovalStep:
    Z: int  # in the original vertex labels
    w: int
    v: int
    q: int  # pair before the cut
    p: int
    excess: int


@dataclass
class RemovalTrace:
    a: int
    ell: int
    steps: list[RemovalStep] = field(default_factory=list)
    X: int = 0  # surviving vertices, original labels
    F: Hypergraph | None = None  # induced on X, relabelled
    q: int = 0
    p: int = 0
    outcome: str = ""  # "hole-free" or "excess-exhausted"

    @property
    def excesses(self) -> list[int]:
        return [s.excess for s in self.steps] + [excess(self.q, self.p, self.a)]

    def to_json_obj(self) -> dict:
        return {
            "a": self.a,
            "ell": self.ell,
            "steps": [
                {"Z": list(vertices_of(s.Z)), "w": s.w, "v": s.v, "q": s.q, "p": s.p, "excess": s.excess}
                for s in self.steps
            ],
            "terminal": {"X": list(vertices_of(self.X)), "q": self.q, "p": self.p,
                         "excess": excess(self.q, self.p, self.a)},
            "outcome": self.outcome,
        }


def verify_lemma1_step(f: Hypergraph, hole: HoleDescriptor, q: int, p: int) -> bool:
    """Does F minus the hole have property (q - w, p - v)?"""
    if hole.w >= q:
        raise PreconditionError(f"hole size {hole.w} must be below q={q}")
    rest = f.vertex_mask & ~hole.Z
    if popcount(rest) < f.r:
        # fewer than r vertices left: only vacuous cliques exist
        return p - hole.v <= min(q - hole.w, f.r - 1)
    return has_property(induced(f, rest), q - hole.w, p - hole.v)


def run_hole_removal(
    f: Hypergraph, a: int, q: int, p: int, ell: int, *, unchecked: bool = False
) -> RemovalTrace:
    """Cut minimum-size holes (w <= a*ell, colex-least Z) until none is left.

    Stops with "hole-free" when no hole remains, or "excess-exhausted" when a
    hole remains but q has dropped below 2*a*ell.  Every cut is checked to
    leave the reduced property and to raise the excess by at least one.
    """
    if ell < f.r:
        raise PreconditionError(f"ell={ell} must be at least r={f.r}")
    if q > f.n or not f.r <= p <= q:
        raise PreconditionError(f"bad pair ({q}, {p}) for n={f.n}, r={f.r}")
    if not unchecked and not has_property(f, q, p):
        raise PreconditionError(f"input lacks property ({q}, {p})")
    trace = RemovalTrace(a, ell)
    labels = list(range(1, f.n + 1))
    cur = f
    cap = a * ell
    while True:
        hole = find_hole(cur, a, min(cap, cur.n))
        if hole is None:
            trace.outcome = "hole-free"
            break
        if q < 2 * cap:
            trace.outcome = "excess-exhausted"
            break
        if not a * (f.r - 1) <= a * hole.v < hole.w <= cap:
            raise LemmaViolation(f"hole outside the expected size window: {hole}")
        if not unchecked and not verify_lemma1_step(cur, hole, q, p):
            raise LemmaViolation(f"removing {hole} loses property ({q - hole.w}, {p - hole.v})")
        e_before = excess(q, p, a)
        trace.steps.append(
            RemovalStep(mask_of(labels[i - 1] for i in vertices_of(hole.Z)), hole.w, hole.v, q, p, e_before)
        )
        keep = cur.vertex_mask & ~hole.Z
        kept = vertices_of(keep)
        labels = [labels[i - 1] for i in kept]
        cur = induced(cur, keep)
        q, p = q - hole.w, p - hole.v
        if excess(q, p, a) < e_before + 1:
            raise LemmaViolation("excess did not increase")
    trace.X = mask_of(labels)
    trace.F = cur
    trace.q, trace.p = q, p
    return trace


# ---------------------------------------------------------------------------
# link multigraph argument


@dataclass
class LinkMultigraph:
    base: int  # the 4-clique S
    pair_multiplicity: dict[tuple[int, int], int]

    @property
    def size(self) -> int:
        return sum(self.pair_multiplicity.values())

    def weight(self, triple: tuple[int, int, int]) -> int:
        x, y, z = sorted(triple)
        m = self.pair_multiplicity
        return m.get((x, y), 0) + m.get((x, z), 0) + m.get((y, z), 0)


def build_link_multigraph(h: Hypergraph, s: int | tuple[int, ...]) -> LinkMultigraph:
    if h.r != 3:
        raise HypergraphError("link multigraphs are defined for 3-graphs")
    if not isinstance(s, int):
        s = mask_of(s)
    if popcount(s) != 4 or not has_clique(h, 4, s):
        raise PreconditionError(f"{vertices_of(s)} does not span a 4-clique")
    base = vertices_of(s)
    outside = [v for v in range(1, h.n + 1) if not s >> (v - 1) & 1]
    mult = {}
    for x, y in combinations(outside, 2):
        mult[(x, y)] = sum(1 for i in base if mask_of((i, x, y)) in h.edges)
    return LinkMultigraph(s, mult)


@dataclass(frozen=True)
class HeavyTriple:
    vertices: tuple[int, int, int]
    weight: int


def find_heavy_triple(m: LinkMultigraph, threshold: int = 11) -> HeavyTriple | None:
    """First triple outside S (colex order) whose three pairs carry >= threshold."""
    outside = sorted({v for pair in m.pair_multiplicity for v in pair})
    for t in subsets_colex(outside, 3):
        triple = vertices_of(t)
        w = m.weight(triple)
        if w >= threshold:
            return HeavyTriple(triple, w)
    return None


def extract_R_copy(h: Hypergraph, s: int | tuple[int, ...], triple: tuple[int, int, int]) -> dict[int, int]:
    """Embed R into H using the 4-clique S and a triple of weight >= 11.

    At most one of the 12 (vertex of S, pair of the triple) incidences is
    missing; R's own missing incidence is placed on top of it.
    """
    if not isinstance(s, int):
        s = mask_of(s)
    base = vertices_of(s)
    r_graph = catalog("R")
    trip = tuple(sorted(triple))
    missing = [(i, pair) for i in base for pair in combinations(trip, 2)
               if mask_of((i,) + pair) not in h.edges]
    if len(missing) > 1:
        raise PreconditionError(f"triple {trip} has weight below 11 over S={base}")
    if missing:
        candidates = [missing[0]]
    else:
        candidates = [(i, pair) for i in base for pair in combinations(trip, 2)]
    for i, pair in candidates:
        # R misses {1,5,6}: send 1 -> i and {5,6} -> pair
        others = [b for b in base if b != i]
        third = next(x for x in trip if x not in pair)
        for o in permutations(others):
            mapping = {1: i, 2: o[0], 3: o[1], 4: o[2], 5: pair[0], 6: pair[1], 7: third}
            if is_copy(h, r_graph, mapping):
                return mapping
    raise LemmaViolation(f"no copy of R on S={base}, triple={trip}")


def fk_threshold(n: int) -> int:
    """Multigraph size above which some triple spans at least 11 edges."""
    if n < 7:
        raise ValueError("threshold is stated for n >= 7")
    return 3 * comb(n - 4, 2) + n - 6


@dataclass
class LinkArgument:
    clique: int
    multigraph: LinkMultigraph
    threshold: int | None
    heavy: HeavyTriple | None
    copy: dict[int, int] | None

    def to_json_obj(self) -> dict:
        return {
            "clique": list(vertices_of(self.clique)),
            "multigraph": [[x, y, k] for (x, y), k in sorted(self.multigraph.pair_multiplicity.items()) if k],
            "size": self.multigraph.size,
            "threshold": self.threshold,
            "above_threshold": None if self.threshold is None else self.multigraph.size > self.threshold,
            "heavy_triple": None if self.heavy is None else {"vertices": list(self.heavy.vertices),
                                                             "weight": self.heavy.weight},
            "R_copy": None if self.copy is None else {str(k): v for k, v in sorted(self.copy.items())},
        }


def link_argument(h: Hypergraph, s: int | tuple[int, ...], threshold: int = 11) -> LinkArgument:
    """Run the whole argument on one instance: multigraph, threshold, triple, copy."""
    m = build_link_multigraph(h, s)
    heavy = find_heavy_triple(m, threshold)
    copy = extract_R_copy(h, m.base, heavy.vertices) if heavy and threshold >= 11 else None
    fk = fk_threshold(h.n) if h.n >= 7 else None
    return LinkArgument(m.base, m, fk, heavy, copy)
