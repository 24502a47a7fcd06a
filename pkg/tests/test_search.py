import random
from fractions import Fraction
from math import comb

import pytest

import oracles
from hyperturan.constructions import balanced_union, catalog
from hyperturan.hypergraph import HypergraphError, complete, contains_copy, empty, make_hypergraph
from hyperturan.instances import random_hypergraph
from hyperturan.invariants import has_property
from hyperturan.search import (
    DensityPoint,
    DensitySequence,
    MonotonicityError,
    density_sequence,
    max_edges_avoiding,
    min_edges_with_property,
    property_via_complement,
)
import hyperturan.search as search_mod

K4 = complete(4, 3)

# (n, r, q, p) -> value; each confirmed by oracles.min_edges_with_property
MIN_VALUES = {
    (5, 3, 4, 3): 3,
    (5, 3, 5, 3): 1,
    (6, 2, 3, 2): 6,
    (6, 3, 5, 3): 2,
    (5, 3, 5, 4): 4,
    (4, 2, 3, 2): 2,
}


@pytest.mark.parametrize("key", sorted(MIN_VALUES))
def test_min_edges_values(key):
    n, r, q, p = key
    res = min_edges_with_property(n, r, q, p)
    assert res.value == MIN_VALUES[key] and res.proved_optimal
    assert res.witness.m == res.value
    assert has_property(res.witness, q, p)


@pytest.mark.parametrize("key", [(5, 3, 4, 3), (5, 3, 5, 3), (5, 3, 5, 4), (4, 2, 3, 2)])
def test_min_edges_oracle(key):
    assert oracles.min_edges_with_property(*key) == MIN_VALUES[key]


def test_min_edges_oracle_turan_graph():
    assert oracles.min_edges_with_property(6, 2, 3, 2) == 6


def test_min_edges_n7():
    assert min_edges_with_property(7, 3, 5, 3).value == 5


def test_min_edges_rejects_bad_pair():
    with pytest.raises(HypergraphError):
        min_edges_with_property(5, 3, 6, 3)
    with pytest.raises(HypergraphError):
        min_edges_with_property(5, 3, 4, 2)


@pytest.mark.parametrize("n, value", [(4, 3), (5, 7), (6, 14)])
def test_max_avoiding_K4(n, value):
    res = max_edges_avoiding(n, [K4])
    assert res.value == value and res.proved_optimal
    assert not contains_copy(res.witness, K4)


@pytest.mark.parametrize("n", [4, 5])
def test_max_avoiding_K4_oracle(n):
    assert oracles.max_edges_avoiding(n, 3, [(4, oracles.edges_of(K4))]) == {4: 3, 5: 7}[n]


def test_max_avoiding_single_edge_pattern():
    res = max_edges_avoiding(6, [complete(3, 3)])
    assert res.value == 0 and res.witness.m == 0


def test_max_avoiding_pattern_larger_than_host():
    res = max_edges_avoiding(4, [complete(5, 3)])
    assert res.value == 4 and res.proved_optimal


def test_max_avoiding_errors():
    with pytest.raises(HypergraphError):
        max_edges_avoiding(5, [])
    with pytest.raises(HypergraphError):
        max_edges_avoiding(5, [K4, complete(3, 2)])
    with pytest.raises(HypergraphError):
        max_edges_avoiding(5, [empty(3, 3)])


def test_duality_sum():
    assert min_edges_with_property(5, 3, 4, 3).value + max_edges_avoiding(5, [K4]).value == comb(5, 3)


def test_symmetry_pruning_preserves_value():
    for args in [(5, 3, 4, 3), (6, 3, 5, 3), (6, 2, 3, 2)]:
        a = min_edges_with_property(*args)
        b = min_edges_with_property(*args, symmetry=False)
        assert a.value == b.value
    assert max_edges_avoiding(6, [K4]).value == max_edges_avoiding(6, [K4], symmetry=False).value


def test_thread_count_does_not_change_result():
    one = min_edges_with_property(6, 3, 5, 3, threads=1)
    two = min_edges_with_property(6, 3, 5, 3, threads=2)
    assert (one.value, one.witness, one.nodes_explored) == (two.value, two.witness, two.nodes_explored)
    one = max_edges_avoiding(6, [K4], threads=1)
    two = max_edges_avoiding(6, [K4], threads=2)
    assert (one.value, one.witness, one.nodes_explored) == (two.value, two.witness, two.nodes_explored)


def test_repeat_runs_are_identical():
    a = max_edges_avoiding(7, [catalog("R1"), catalog("R2")])
    b = max_edges_avoiding(7, [catalog("R1"), catalog("R2")])
    assert a.to_json_obj() == b.to_json_obj()
    assert a.value == 31 and a.proved_optimal


def test_budget_zero_gives_unproved_feasible_answer():
    res = min_edges_with_property(6, 3, 5, 3, budget=0)
    assert not res.proved_optimal
    assert res.value >= 2 and has_property(res.witness, 5, 3)
    res = max_edges_avoiding(6, [K4], budget=0)
    assert not res.proved_optimal and res.value <= 14


def test_result_json_fields():
    obj = min_edges_with_property(5, 3, 4, 3).to_json_obj()
    assert list(obj) == ["value", "witness", "proved_optimal", "nodes"]


# --- density sequences


def test_density_min_property_nondecreasing():
    seq = density_sequence("min-property", [5, 6, 7], r=3, q=5, p=3)
    assert [pt.value for pt in seq.points] == [1, 2, 5]
    assert [pt.density for pt in seq.points] == [Fraction(1, 10), Fraction(1, 10), Fraction(1, 7)]
    assert seq.monotone and seq.all_proved and seq.direction == "nondecreasing"


def test_density_max_avoiding_nonincreasing():
    seq = density_sequence("max-avoiding", [4, 5, 6], patterns=[K4])
    assert seq.points[0].density == Fraction(3, 4)
    assert [pt.value for pt in seq.points] == [3, 7, 14]
    assert seq.monotone and seq.direction == "nonincreasing"


def test_density_single_point_and_unknown_kind():
    assert density_sequence("max-avoiding", [5], patterns=[K4]).monotone
    with pytest.raises(ValueError):
        density_sequence("other", [5])


def test_monotonicity_violation_is_an_error(monkeypatch):
    from hyperturan.search import SearchResult

    fake = {5: 5, 6: 2}

    def fake_min(n, r, q, p, **kw):
        return SearchResult(fake[n], empty(n, r), 0, True, 0.0)

    monkeypatch.setattr(search_mod, "min_edges_with_property", fake_min)
    with pytest.raises(MonotonicityError):
        density_sequence("min-property", [5, 6], r=3, q=5, p=3)


def test_unproved_points_do_not_trigger_violation():
    seq = DensitySequence("min-property", [DensityPoint(5, 5, Fraction(1, 2), False),
                                           DensityPoint(6, 1, Fraction(1, 20), True)])
    assert not seq.monotone and not seq.all_proved


# --- complement route


def test_property_via_complement_examples():
    assert property_via_complement(balanced_union(8, 3, 2), 5, 3)
    assert not property_via_complement(empty(7, 3), 5, 3)


def test_property_via_complement_random_agreement():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(4, 9)
        h = random_hypergraph(rng, n, 3, rng.uniform(0.3, 0.95))
        q = rng.randint(3, n)
        p = rng.randint(3, q)
        assert property_via_complement(h, q, p) == has_property(h, q, p)


def test_property_via_complement_small_p_and_errors():
    h = make_hypergraph(5, 3, [])
    assert property_via_complement(h, 4, 2) and has_property(h, 4, 2)
    with pytest.raises(HypergraphError):
        property_via_complement(h, 6, 3)
