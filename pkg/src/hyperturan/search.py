"""Exact extremal values at small n by branch and bound over edge sets.

Both problems are solved as a covering problem over the r-subsets of [n],
indexed by colex rank: choose as few ranks as possible so that every
constraint has one of its options fully chosen.

* minimum edges with property (q, p): one constraint per q-set, whose
  options are the edge sets of its p-subsets;
* maximum edges avoiding patterns: choose the edges to *delete* from the
  complete hypergraph; one constraint per copy of a pattern, any single
  edge of the copy being an option.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    colex_unrank,
    complete,
    contains_copy,
    copy_edge_sets,
    induced,
    popcount,
    subsets_colex,
    to_json_obj,
    vertices_of,
)
from .invariants import has_property, independence_number

# number of open subproblems the root is split into; fixed so that results
# do not depend on the worker count
SPLIT_WIDTH = 8


class MonotonicityError(RuntimeError):
    """A density sequence moved against the direction the averaging argument forces."""


@dataclass
class SearchResult:
    value: int
    witness: Hypergraph
    nodes_explored: int
    proved_optimal: bool
    time: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "witness": to_json_obj(self.witness),
            "proved_optimal": self.proved_optimal,
            "nodes": self.nodes_explored,
        }


# ---------------------------------------------------------------------------
# covering engine


class _Cover:
    def __init__(self, nbits: int, constraints: list[tuple[int, tuple[int, ...] | None]], cap: int):
        self.nbits = nbits
        self.full = (1 << nbits) - 1
        self.cons = constraints
        self.cap = max(cap, 1)

    def evaluate(self, inc: int, exc: int, active: Sequence[int]):
        """Return None if some constraint can no longer be met, else
        (open constraints, lower bound on total size, branching edge)."""
        free = self.full & ~(inc | exc)
        opened = []
        pick = None
        pick_live = None
        for ci in active:
            union, options = self.cons[ci]
            if options is None:
                if union & inc:
                    continue
                und = union & free
                if not und:
                    return None
                live = popcount(und)
                first = und
            else:
                und = 0
                live = 0
                first = 0
                first_size = 0
                sat = False
                for o in options:
                    if o & exc:
                        continue
                    rest = o & ~inc
                    if not rest:
                        sat = True
                        break
                    live += 1
                    und |= rest
                    k = popcount(rest)
                    if not first or k < first_size:
                        first, first_size = rest, k
                if sat:
                    continue
                if not live:
                    return None
            opened.append((ci, und))
            if pick_live is None or live < pick_live:
                pick, pick_live = first, live
        if not opened:
            return [], popcount(inc), 0
        used = 0
        packed = 0
        for _, und in sorted(opened, key=lambda item: popcount(item[1])):
            if not und & used:
                used |= und
                packed += 1
        counted = -(-len(opened) // self.cap)
        bound = popcount(inc) + max(packed, counted)
        return [ci for ci, _ in opened], bound, pick & -pick

    def dive(self, inc: int, exc: int, active: Sequence[int]) -> int | None:
        while True:
            ev = self.evaluate(inc, exc, active)
            if ev is None:
                return None
            active, _, edge = ev
            if len(active) == 0:
                return inc
            inc |= edge

    def solve_subtree(self, inc, exc, active, best_value, budget):
        """Depth-first search below one node.

        Returns (best value, best set or None if not improved, nodes, exhausted).
        """
        best = None
        nodes = 0
        exhausted = False

        def visit(inc, exc, active):
            nonlocal best, best_value, nodes, exhausted
            if budget is not None and nodes >= budget:
                exhausted = True
                return
            nodes += 1
            ev = self.evaluate(inc, exc, active)
            if ev is None:
                return
            active, bound, edge = ev
            if len(active) == 0:
                if bound < best_value:
                    best_value, best = bound, inc
                return
            if bound >= best_value:
                return
            visit(inc | edge, exc, active)
            if exhausted:
                return
            visit(inc, exc | edge, active)

        visit(inc, exc, active)
        return best_value, best, nodes, exhausted


class _HittingArrays(_Cover):
    """Hitting-set form with at most 64 edge ranks, evaluated with numpy.

    Besides infeasibility it uses a degree bound: if the k free edges lying
    in the most open constraints together meet fewer than all of them, at
    least k + 1 more edges are needed.
    """

    def __init__(self, nbits: int, masks: list[int]):
        super().__init__(nbits, [(m, None) for m in masks], 1)
        self.masks = np.array(masks, dtype=np.uint64)

    def evaluate(self, inc, exc, active):
        active = np.asarray(active, dtype=np.intp)
        rows = self.masks[active]
        opened = active[(rows & np.uint64(inc)) == 0]
        if opened.size == 0:
            return opened, popcount(inc), 0
        free = self.full & ~(inc | exc)
        und = self.masks[opened] & np.uint64(free)
        if not und.all():
            return None
        live = np.bitwise_count(und)
        bits = np.unpackbits(und.view(np.uint8).reshape(-1, 8), axis=1, bitorder="little")
        degree = bits.sum(axis=0, dtype=np.int64)
        reach = np.cumsum(np.sort(degree)[::-1])
        needed = int(np.searchsorted(reach, opened.size)) + 1
        pick = int(und[int(np.argmin(live))])
        return opened, popcount(inc) + needed, pick & -pick


_WORKER: _Cover | None = None


def _init_worker(problem: _Cover) -> None:
    global _WORKER
    _WORKER = problem


def _run_worker(args):
    return _WORKER.solve_subtree(*args)


def _solve(problem: _Cover, root_inc: int, budget: int | None, threads: int):
    """Return (best set, nodes, proved_optimal)."""
    active0 = np.arange(len(problem.cons)) if isinstance(problem, _HittingArrays) else list(range(len(problem.cons)))
    best = problem.dive(root_inc, 0, active0)
    if best is None:
        raise RuntimeError("covering problem is infeasible")
    best_value = popcount(best)
    if budget == 0:
        return best, 0, False

    # breadth-first split of the root into a fixed frontier
    frontier = [(root_inc, 0, active0)]
    nodes = 0
    while frontier and len(frontier) < SPLIT_WIDTH:
        nxt = []
        for inc, exc, active in frontier:
            nodes += 1
            ev = problem.evaluate(inc, exc, active)
            if ev is None:
                continue
            active, bound, edge = ev
            if len(active) == 0:
                if bound < best_value:
                    best_value, best = bound, inc
                continue
            if bound >= best_value:
                continue
            nxt.append((inc | edge, exc, active))
            nxt.append((inc, exc | edge, active))
        frontier = nxt
    if budget is not None and nodes >= budget:
        return best, nodes, not frontier

    share = None if budget is None else max(1, (budget - nodes) // max(1, len(frontier)))
    jobs = [(inc, exc, active, best_value, share) for inc, exc, active in frontier]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(
            max_workers=min(threads, len(jobs)), initializer=_init_worker, initargs=(problem,)
        ) as pool:
            results = list(pool.map(_run_worker, jobs))
    else:
        results = [problem.solve_subtree(*job) for job in jobs]

    proved = True
    for value, found, sub_nodes, exhausted in results:
        nodes += sub_nodes
        proved = proved and not exhausted
        if found is None:
            continue
        if value < best_value or (value == best_value and found < best):
            best_value, best = value, found
    return best, nodes, proved


def _ranks_to_edges(bits: int, r: int) -> frozenset[int]:
    out = []
    rank = 0
    while bits:
        if bits & 1:
            out.append(colex_unrank(rank, r))
        bits >>= 1
        rank += 1
    return frozenset(out)


# ---------------------------------------------------------------------------
# the two extremal problems


def min_edges_with_property(
    n: int,
    r: int,
    q: int,
    p: int,
    *,
    budget: int | None = None,
    threads: int = 1,
    symmetry: bool = True,
) -> SearchResult:
    """Fewest edges of an r-graph on [n] in which every q-set has a p-clique."""
    if not 2 <= r <= p <= q <= n:
        raise HypergraphError(f"need 2 <= r <= p <= q <= n, got r={r}, p={p}, q={q}, n={n}")
    start = time.perf_counter()
    rank_of = {e: i for i, e in enumerate(subsets_colex(n, r))}

    def bits_of(vertex_mask):
        out = 0
        for e in subsets_colex(vertices_of(vertex_mask), r):
            out |= 1 << rank_of[e]
        return out

    constraints = []
    for qset in subsets_colex(n, q):
        union = bits_of(qset)
        if p == r:
            constraints.append((union, None))
        else:
            options = tuple(bits_of(y) for y in subsets_colex(vertices_of(qset), p))
            constraints.append((union, options))
    problem = _Cover(len(rank_of), constraints, comb(n - r, q - r))
    # every feasible set is nonempty and the problem is symmetric under S_n,
    # so some optimum contains the edge {1..r} (colex rank 0)
    root = 1 if symmetry else 0
    best, nodes, proved = _solve(problem, root, budget, threads)
    witness = Hypergraph(n, r, _ranks_to_edges(best, r))
    if not has_property(witness, q, p):
        raise RuntimeError("search witness lacks the required property")
    return SearchResult(witness.m, witness, nodes, proved, time.perf_counter() - start)


def max_edges_avoiding(
    n: int,
    patterns: Sequence[Hypergraph],
    *,
    budget: int | None = None,
    threads: int = 1,
    symmetry: bool = True,
) -> SearchResult:
    """Most edges of an r-graph on [n] containing no copy of any pattern."""
    if not patterns:
        raise HypergraphError("need at least one pattern")
    r = patterns[0].r
    if any(pat.r != r for pat in patterns):
        raise HypergraphError("patterns have different uniformities")
    if any(pat.m == 0 and pat.n <= n for pat in patterns):
        raise HypergraphError("an edgeless pattern is contained in every hypergraph")
    start = time.perf_counter()
    total = comb(n, r)
    copies: set[int] = set()
    for pat in patterns:
        copies |= copy_edge_sets(pat, n)
    if not copies:
        witness = complete(n, r)
        return SearchResult(total, witness, 0, True, time.perf_counter() - start)
    copies_list = _drop_supersets(sorted(copies))
    if total <= 64:
        problem = _HittingArrays(total, copies_list)
    else:
        counts = [0] * total
        for c in copies_list:
            rank = 0
            while c:
                if c & 1:
                    counts[rank] += 1
                c >>= 1
                rank += 1
        problem = _Cover(total, [(c, None) for c in copies_list], max(counts))
    # some copy exists, so any optimum deletes an edge; by symmetry {1..r}
    root = 1 if symmetry else 0
    best, nodes, proved = _solve(problem, root, budget, threads)
    kept = ((1 << total) - 1) & ~best
    witness = Hypergraph(n, r, _ranks_to_edges(kept, r))
    for pat in patterns:
        if contains_copy(witness, pat):
            raise RuntimeError("search witness contains a forbidden pattern")
    return SearchResult(witness.m, witness, nodes, proved, time.perf_counter() - start)


def _drop_supersets(copies: list[int]) -> list[int]:
    # hitting a copy also hits every copy containing it
    by_size = sorted(copies, key=popcount)
    kept: list[int] = []
    for c in by_size:
        if not any(k & c == k for k in kept):
            kept.append(c)
    return sorted(kept)


# ---------------------------------------------------------------------------
# density sequences


@dataclass(frozen=True)
class DensityPoint:
    n: int
    value: int
    density: Fraction
    proved_optimal: bool = True

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "density": str(self.density),
            "density_float": float(self.density),
            "proved_optimal": self.proved_optimal,
        }


@dataclass
class DensitySequence:
    kind: str
    points: list[DensityPoint] = field(default_factory=list)

    @property
    def direction(self) -> str:
        return "nondecreasing" if self.kind == "min-property" else "nonincreasing"

    @property
    def monotone(self) -> bool:
        ds = [pt.density for pt in self.points]
        if self.kind == "min-property":
            return all(x <= y for x, y in zip(ds, ds[1:]))
        return all(x >= y for x, y in zip(ds, ds[1:]))

    @property
    def all_proved(self) -> bool:
        return all(pt.proved_optimal for pt in self.points)


def density_sequence(
    kind: str,
    n_values: Sequence[int],
    *,
    r: int | None = None,
    q: int | None = None,
    p: int | None = None,
    patterns: Sequence[Hypergraph] | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> DensitySequence:
    """Exact extremal densities over a range of n.

    ``kind`` is "min-property" (needs r, q, p; densities must not decrease)
    or "max-avoiding" (needs patterns; densities must not increase).  A
    violation among proved-optimal points raises MonotonicityError.
    """
    seq = DensitySequence(kind)
    for n in sorted(n_values):
        if kind == "min-property":
            res = min_edges_with_property(n, r, q, p, budget=budget, threads=threads)
            rr = r
        elif kind == "max-avoiding":
            res = max_edges_avoiding(n, patterns, budget=budget, threads=threads)
            rr = patterns[0].r
        else:
            raise ValueError(f"unknown kind {kind!r}")
        seq.points.append(DensityPoint(n, res.value, Fraction(res.value, comb(n, rr)), res.proved_optimal))
    if seq.all_proved and not seq.monotone:
        raise MonotonicityError(
            f"{kind} densities are not {seq.direction}: "
            + ", ".join(f"n={pt.n}: {pt.density}" for pt in seq.points)
        )
    return seq


# ---------------------------------------------------------------------------
# property through the complement


def property_via_complement(h: Hypergraph, q: int, p: int) -> bool:
    """Property (q, p) decided as: every q-set induces a complement with alpha >= p."""
    if q > h.n or not 0 <= p <= q:
        raise HypergraphError(f"bad pair q={q}, p={p} for n={h.n}")
    if p <= min(h.r - 1, q):
        return True
    comp = h.complement_graph
    for qset in subsets_colex(h.n, q):
        if independence_number(induced(comp, qset))[0] < p:
            return False
    return True
