import random
from math import comb

import pytest

from hyperturan.constructions import balanced_union, catalog
from hyperturan.hypergraph import (
    Hypergraph,
    HypergraphError,
    complete,
    disjoint_union,
    empty,
    induced,
    is_copy,
    mask_of,
    popcount,
)
from hyperturan.instances import planted_hole_instance
from hyperturan.invariants import HoleDescriptor, find_hole, has_property
from hyperturan.proofs import (
    LinkMultigraph,
    PreconditionError,
    build_link_multigraph,
    extract_R_copy,
    find_heavy_triple,
    fk_threshold,
    link_argument,
    run_hole_removal,
    verify_lemma1_step,
)

S = (1, 2, 3, 4)


def empty_block_instance():
    return disjoint_union(empty(5, 3), complete(9, 3))


# --- hole removal


def test_hole_free_input_gives_empty_trace():
    t = run_hole_removal(balanced_union(12, 3, 2), 2, 12, 6, 3)
    assert t.steps == [] and t.outcome == "hole-free"
    assert (t.q, t.p) == (12, 6) and t.X == (1 << 12) - 1


def test_empty_block_trace():
    f = empty_block_instance()
    t = run_hole_removal(f, 2, 14, 7, 3)
    assert len(t.steps) == 1
    step = t.steps[0]
    assert (step.Z, step.w, step.v, step.q, step.p) == (0b11111, 5, 2, 14, 7)
    assert t.outcome == "hole-free"
    assert (t.q, t.p) == (9, 5)
    assert t.F == complete(9, 3)
    assert t.X == mask_of(range(6, 15))
    assert t.excesses == [0, 1]


def test_reduced_property_after_empty_block_cut():
    f = empty_block_instance()
    hole = find_hole(f, 2, 6)
    assert hole == HoleDescriptor(0b11111, 5, 2, 2)
    assert verify_lemma1_step(f, hole, 14, 7)
    assert has_property(complete(9, 3), 9, 5)


def test_reduced_property_boundary_w_equals_q_minus_one():
    # hole of size q-1 leaves a single vertex, so only p - v <= 1 can hold
    f = empty(6, 3)
    hole = HoleDescriptor(0b11111, 5, 2, 2)
    assert verify_lemma1_step(f, hole, 6, 3)
    assert not verify_lemma1_step(f, hole, 6, 5)
    with pytest.raises(PreconditionError):
        verify_lemma1_step(f, hole, 5, 3)


def test_excess_exhausted_outcome():
    # q below 2*a*ell while a hole remains
    f = disjoint_union(empty(5, 3), complete(6, 3))
    t = run_hole_removal(f, 2, 11, 5, 3)
    assert t.outcome == "excess-exhausted" and t.steps == []


def test_preconditions():
    with pytest.raises(PreconditionError):
        run_hole_removal(empty(8, 3), 2, 8, 4, 3)
    with pytest.raises(PreconditionError):
        run_hole_removal(complete(8, 3), 2, 8, 4, 2)
    with pytest.raises(PreconditionError):
        run_hole_removal(complete(8, 3), 2, 9, 4, 3)


def test_unchecked_mode_allows_bad_input():
    t = run_hole_removal(empty(12, 3), 2, 12, 6, 3, unchecked=True)
    assert len(t.steps) >= 1
    assert all(b >= a + 1 for a, b in zip(t.excesses, t.excesses[1:]))


def test_planted_traces():
    rng = random.Random(7)
    total_steps = 0
    for _ in range(50):
        f, a, q, p, ell = planted_hole_instance(rng)
        t = run_hole_removal(f, a, q, p, ell)
        es = t.excesses
        assert all(b >= x + 1 for x, b in zip(es, es[1:]))
        assert sum(s.w for s in t.steps) <= len(t.steps) * a * ell
        assert popcount(t.X) == f.n - sum(s.w for s in t.steps)
        # replay every step independently on the original labels
        removed = 0
        for s in t.steps:
            assert removed & s.Z == 0
            cur = induced(f, f.vertex_mask & ~removed)
            local = 0
            keep = [v for v in range(1, f.n + 1) if not removed >> (v - 1) & 1]
            for i, v in enumerate(keep, start=1):
                if s.Z >> (v - 1) & 1:
                    local |= 1 << (i - 1)
            assert verify_lemma1_step(cur, HoleDescriptor(local, s.w, s.v, a), s.q, s.p)
            removed |= s.Z
        if t.outcome == "excess-exhausted":
            assert len(t.steps) <= (a - 1) * t.q
        total_steps += len(t.steps)
    assert total_steps > 0


def test_trace_json_shape():
    obj = run_hole_removal(empty_block_instance(), 2, 14, 7, 3).to_json_obj()
    assert obj["outcome"] == "hole-free"
    assert obj["steps"][0]["Z"] == [1, 2, 3, 4, 5]


# --- link multigraph


def test_link_multigraph_R0():
    m = build_link_multigraph(catalog("R0"), S)
    assert m.pair_multiplicity == {(5, 6): 4, (5, 7): 4, (6, 7): 4}
    assert m.size == 12
    assert find_heavy_triple(m).vertices == (5, 6, 7) and find_heavy_triple(m).weight == 12


def test_link_multigraph_R():
    m = build_link_multigraph(catalog("R"), S)
    assert m.pair_multiplicity[(5, 6)] == 3 and m.size == 11
    heavy = find_heavy_triple(m)
    assert (heavy.vertices, heavy.weight) == ((5, 6, 7), 11)


def test_link_multigraph_size_identity():
    h = catalog("R1")
    m = build_link_multigraph(h, S)
    links = sum(1 for e in h.edge_list() if len(set(e) & set(S)) == 1)
    assert m.size == links


def test_link_multigraph_degenerate():
    m = build_link_multigraph(complete(4, 3), S)
    assert m.size == 0 and find_heavy_triple(m) is None
    assert find_heavy_triple(LinkMultigraph(0b1111, {})) is None
    with pytest.raises(PreconditionError):
        build_link_multigraph(empty(7, 3), S)
    with pytest.raises(HypergraphError):
        build_link_multigraph(complete(5, 2), S)


@pytest.mark.parametrize("name", ["R0", "R"])
def test_extract_R_copy(name):
    h = catalog(name)
    mapping = extract_R_copy(h, S, (5, 6, 7))
    assert is_copy(h, catalog("R"), mapping)


def test_extract_R_copy_with_isolated_extras():
    h = disjoint_union(catalog("R0"), empty(3, 3))
    mapping = extract_R_copy(h, S, (5, 6, 7))
    assert is_copy(h, catalog("R"), mapping)
    assert set(mapping.values()) <= set(range(1, 8))


def test_extract_R_copy_rejects_light_triple():
    assert build_link_multigraph(catalog("R1"), S).weight((5, 6, 7)) == 9
    with pytest.raises(PreconditionError):
        extract_R_copy(catalog("R1"), S, (5, 6, 7))


def test_fk_threshold():
    assert fk_threshold(7) == 10
    assert fk_threshold(10) == 49
    vals = [fk_threshold(n) for n in range(7, 30)]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)
    assert all(fk_threshold(n) == 3 * comb(n - 4, 2) + n - 6 for n in range(7, 30))
    with pytest.raises(ValueError):
        fk_threshold(6)


def test_link_argument_end_to_end():
    arg = link_argument(catalog("R"), S)
    assert arg.threshold == 10 and arg.multigraph.size == 11
    assert arg.copy is not None and is_copy(catalog("R"), catalog("R"), arg.copy)
    obj = arg.to_json_obj()
    assert obj["above_threshold"] is True and obj["heavy_triple"]["weight"] == 11


def test_heavy_triple_always_yields_copy():
    rng = random.Random(3)
    hits = 0
    for _ in range(60):
        n = rng.randint(7, 9)
        edges = set(complete(4, 3).edges)
        for e in complete(n, 3).edges:
            if rng.random() < 0.85:
                edges.add(e)
        h = Hypergraph(n, 3, frozenset(edges))
        m = build_link_multigraph(h, S)
        heavy = find_heavy_triple(m)
        if heavy is None:
            continue
        hits += 1
        assert is_copy(h, catalog("R"), extract_R_copy(h, S, heavy.vertices))
    assert hits > 0
