"""The checkable claims, run in three tiers and reported one line each.

Tier 1 covers the catalog and constructions, tier 2 exhaustive or small
searches, tier 3 the budget-capped stretch target.  Every comparison is an
exact equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator

from . import constructions
from .constructions import balanced_union, crossing_construction, make_H1, make_H2
from .hypergraph import Hypergraph, contains_copy, induced, is_copy, vertices_of
from .instances import planted_hole_instance, random_hypergraph
from .invariants import (
    HoleDescriptor,
    check_hereditary,
    find_hole,
    has_property,
    hereditary_slack,
    independence_number,
)
from .proofs import (
    build_link_multigraph,
    extract_R_copy,
    find_heavy_triple,
    fk_threshold,
    run_hole_removal,
    verify_lemma1_step,
)
from .search import (
    MonotonicityError,
    density_sequence,
    max_edges_avoiding,
    min_edges_with_property,
    property_via_complement,
)

DEFAULT_BUDGET = 200_000


@dataclass
class ClaimReport:
    claim: str
    source: str
    expected: str
    computed: str
    status: str  # "pass", "fail" or "skipped-budget"
    detail: str = ""
    tier: int = 1

    def line(self) -> str:
        text = f"[{self.status.upper():>14}] T{self.tier} {self.claim}: expected {self.expected}, computed {self.computed}"
        if self.detail:
            text += f" ({self.detail})"
        return text

    def to_json_obj(self) -> dict:
        return {
            "claim": self.claim,
            "source": self.source,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "detail": self.detail,
            "tier": self.tier,
        }


def _report(claim, source, expected, computed, tier, detail="") -> ClaimReport:
    status = "pass" if expected == computed else "fail"
    return ClaimReport(claim, source, str(expected), str(computed), status, detail, tier)


def _skipped(claim, source, expected, tier, detail) -> ClaimReport:
    return ClaimReport(claim, source, str(expected), "-", "skipped-budget", detail, tier)


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, vertices_of(mask))) + "}"


# ---------------------------------------------------------------------------
# tier 1


def _tier1(lookup: Callable[[str], Hypergraph]) -> Iterator[ClaimReport]:
    for name in ("R0", "R1", "R2", "R"):
        alpha, witness = independence_number(lookup(name))
        detail = "" if alpha == 3 else f"independent set {_fmt(witness)}"
        yield _report(f"alpha({name})", "independence number of the R family", 3, alpha, 1, detail)

    alpha, witness = independence_number(lookup("T_prime"))
    yield _report("alpha(T')", "blow-up of T", 4, alpha, 1,
                  "" if alpha == 4 else f"independent set {_fmt(witness)}")

    expected = {"R0": 16, "R1": 13, "R2": 13, "R": 15, "T": 15, "T_minus": 14}
    computed = {name: lookup(name).m for name in expected}
    yield _report("catalog edge counts", "transcribed edge lists",
                  _kv(expected), _kv(computed), 1)

    for family, ps, build in (("H1", (3, 5, 7), make_H1), ("H2", (4, 6, 8), make_H2)):
        special = lookup("R") if family == "H1" else lookup("T_prime")
        exp = {p: (2 * p + 1, p) for p in ps}
        got = {}
        for p in ps:
            h = build(p, special=special)
            got[p] = (h.n, independence_number(h)[0])
        yield _report(f"{family}(p) has 2p+1 vertices and alpha p", "lower-bound constructions",
                      _kv(exp), _kv(got), 1)


def _kv(d: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in d.items())


# ---------------------------------------------------------------------------
# tier 2


def _tier2(lookup, budget, threads, seed) -> Iterator[ClaimReport]:
    for a in (2, 3):
        bad = []
        for n in range(6, 13):
            h = balanced_union(n, 3, a)
            for p in range(1, n):
                for q, pp in ((a * p + 1, p + 1), (a * p, p)):
                    if pp >= 3 and q <= n and not has_property(h, q, pp):
                        bad.append(f"n={n} ({q},{pp})")
        yield _report(f"balanced unions (a={a}) have properties (ap+1,p+1) and (ap,p)",
                      "disjoint-clique construction", "no failures",
                      "no failures" if not bad else "; ".join(bad[:5]), 2)

    holes = {}
    tight = {}
    for ell in (3, 4, 5):
        h = balanced_union(2 * ell, 3, 2)
        hole = find_hole(h, 2, 2 * ell)
        holes[ell] = "none" if hole is None else _fmt(hole.Z)
        rep = check_hereditary(h, 2, ell)
        tight[ell] = (hereditary_slack(h, 2, h.vertex_mask), rep.ok)
    yield _report("balanced unions 2l vertices are hole-free", "hole definition",
                  _kv({ell: "none" for ell in holes}), _kv(holes), 2)
    yield _report("hereditary bound tight on the full set, never violated", "hereditary counting bound",
                  _kv({ell: (0, True) for ell in tight}), _kv(tight), 2)

    yield from _search_claims(budget, threads)

    # complement duality on the catalog and random hypergraphs
    rng = random.Random(seed)
    mismatches = []
    cases = []
    for name in ("R0", "R1", "R2", "R", "T", "T_minus", "T_prime"):
        h = lookup(name)
        for q in range(3, h.n + 1):
            for p in range(3, q + 1):
                cases.append((name, h, q, p))
    for i in range(200):
        n = rng.randint(4, 9)
        h = random_hypergraph(rng, n, 3, rng.uniform(0.3, 0.95))
        q = rng.randint(3, n)
        p = rng.randint(3, q)
        cases.append((f"random#{i}", h, q, p))
    for name, h, q, p in cases:
        if has_property(h, q, p) != property_via_complement(h, q, p):
            mismatches.append(f"{name} ({q},{p})")
    yield _report("property (q,p) agrees with the complement/independence route",
                  "complementation equivalence", f"0 mismatches in {len(cases)}",
                  f"{len(mismatches)} mismatches in {len(cases)}", 2, "; ".join(mismatches[:5]))

    # hole-removal traces
    failures = []
    total_steps = 0
    for i in range(50):
        f, a, q, p, ell = planted_hole_instance(rng)
        try:
            trace = run_hole_removal(f, a, q, p, ell)
        except AssertionError as exc:
            failures.append(f"#{i}: {exc}")
            continue
        es = trace.excesses
        if any(y < x + 1 for x, y in zip(es, es[1:])):
            failures.append(f"#{i}: excess sequence {es}")
        # replay every cut against the original hypergraph
        alive = f.vertex_mask
        for step in trace.steps:
            sub = induced(f, alive)
            z_local = 0
            for j, v in enumerate(vertices_of(alive)):
                if step.Z >> (v - 1) & 1:
                    z_local |= 1 << j
            hole = HoleDescriptor(z_local, step.w, step.v, a)
            if not verify_lemma1_step(sub, hole, step.q, step.p):
                failures.append(f"#{i}: cut {_fmt(step.Z)} fails the reduced property")
            alive &= ~step.Z
            total_steps += 1
    yield _report("hole-removal traces: excess rises by >= 1, reduced property holds",
                  "hole-removal procedure", "0 failures in 50 traces",
                  f"{len(failures)} failures in 50 traces", 2,
                  "; ".join(failures[:3]) or f"{total_steps} cuts checked")

    # link multigraph argument
    for name, weight in (("R0", 12), ("R", 11)):
        h = lookup(name)
        heavy = find_heavy_triple(build_link_multigraph(h, (1, 2, 3, 4)))
        got = None if heavy is None else (heavy.vertices, heavy.weight)
        ok_copy = False
        if heavy is not None:
            mapping = extract_R_copy(h, (1, 2, 3, 4), heavy.vertices)
            ok_copy = is_copy(h, lookup("R"), mapping)
        yield _report(f"link argument on {name}", "link multigraph argument",
                      ((5, 6, 7), weight, True), (*got, ok_copy) if got else None, 2)
    yield _report("multigraph threshold at n=7", "link multigraph argument", 10, fk_threshold(7), 2)

    for n in (4, 5):
        h = crossing_construction(n)
        got = (h.m, contains_copy(h, lookup("R1")), contains_copy(h, lookup("R2")))
        yield _report(f"crossing construction n={n}: edges, contains R1, contains R2",
                      "conjectured extremal construction",
                      (comb(2 * n, 3) - 2 * comb(n, 3), False, False), got, 2)


def _search_claims(budget, threads) -> Iterator[ClaimReport]:
    src = "exact extremal values"
    k4 = constructions.catalog("K4")
    if budget == 0:
        for claim, exp in (("T_3(5,4,3)", 3), ("ex(5,K4)", 7), ("T_3(5,4,3)+ex(5,K4)", 10),
                           ("T_2(6,3,2)", 6), ("T_3(5,5,3)", 1),
                           ("density of T_3(n,5,3), n=5..7", "nondecreasing"),
                           ("density of ex(n,K4), n=4..6", "nonincreasing")):
            yield _skipped(claim, src, exp, 2, "budget 0")
        return
    kw = {"budget": budget, "threads": threads}
    a = min_edges_with_property(5, 3, 4, 3, **kw)
    b = max_edges_avoiding(5, [k4], **kw)
    for claim, exp, res in (("T_3(5,4,3)", 3, a), ("ex(5,K4)", 7, b)):
        yield _search_report(claim, src, exp, res)
    if a.proved_optimal and b.proved_optimal:
        yield _report("T_3(5,4,3)+ex(5,K4)", "complement duality", comb(5, 3), a.value + b.value, 2)
    else:
        yield _skipped("T_3(5,4,3)+ex(5,K4)", "complement duality", comb(5, 3), 2, "budget exhausted")
    yield _search_report("T_2(6,3,2)", src, 6, min_edges_with_property(6, 2, 3, 2, **kw))
    yield _search_report("T_3(5,5,3)", src, 1, min_edges_with_property(5, 3, 5, 3, **kw))

    for claim, kind, ns, extra in (
        ("density of T_3(n,5,3), n=5..7", "min-property", (5, 6, 7), {"r": 3, "q": 5, "p": 3}),
        ("density of ex(n,K4), n=4..6", "max-avoiding", (4, 5, 6), {"patterns": [k4]}),
    ):
        direction = "nondecreasing" if kind == "min-property" else "nonincreasing"
        try:
            seq = density_sequence(kind, ns, **extra, **kw)
        except MonotonicityError as exc:
            yield _report(claim, "averaging monotonicity", direction, "violated", 2, str(exc))
            continue
        values = ", ".join(f"{pt.value}/{comb(pt.n, 3)}" for pt in seq.points)
        if not seq.all_proved:
            yield _skipped(claim, "averaging monotonicity", direction, 2, f"unproved points: {values}")
        else:
            yield _report(claim, "averaging monotonicity", direction,
                          direction if seq.monotone else "violated", 2, values)


def _search_report(claim, src, expected, res, tier=2) -> ClaimReport:
    if not res.proved_optimal:
        return _skipped(claim, src, expected, tier, f"best found {res.value} after {res.nodes_explored} nodes")
    return _report(claim, src, expected, res.value, tier, f"{res.nodes_explored} nodes")


# ---------------------------------------------------------------------------
# tier 3


def _tier3(lookup, budget, threads) -> Iterator[ClaimReport]:
    claim = "ex(8,{R1,R2}) vs crossing construction (48)"
    src = "conjectured extremal value, finite data point"
    construction = crossing_construction(4).m
    if budget == 0:
        yield _skipped(claim, src, f">= {construction}", 3, "budget 0")
        return
    res = max_edges_avoiding(8, [lookup("R1"), lookup("R2")], budget=budget, threads=threads)
    if not res.proved_optimal:
        yield _skipped(claim, src, f">= {construction}", 3,
                       f"best found {res.value} after {res.nodes_explored} nodes")
        return
    relation = "equal" if res.value == construction else "above"
    yield _report(claim, src, f">= {construction}",
                  f">= {construction}" if res.value >= construction else str(res.value), 3,
                  f"optimum {res.value} ({relation} the construction), {res.nodes_explored} nodes; "
                  "a single n, not evidence for or against the conjecture")


# ---------------------------------------------------------------------------


def run_claims(
    budget: int | None = DEFAULT_BUDGET,
    threads: int = 1,
    seed: int = 0,
    tiers: tuple[int, ...] = (1, 2, 3),
    overrides: dict[str, Hypergraph] | None = None,
) -> list[ClaimReport]:
    """Run the claim suite in a fixed order.

    ``overrides`` replaces catalog entries by name (used to check that a
    corrupted object is caught).
    """
    overrides = overrides or {}

    def lookup(name: str) -> Hypergraph:
        return overrides[name] if name in overrides else constructions.catalog(name)

    out: list[ClaimReport] = []
    if 1 in tiers:
        out.extend(_tier1(lookup))
    if 2 in tiers:
        out.extend(_tier2(lookup, budget, threads, seed))
    if 3 in tiers:
        out.extend(_tier3(lookup, budget, threads))
    return out

