import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle_graph, random_hypergraph
from oracles import naive_min_transversals, naive_tau, naive_uniquely_tau_critical
from uksat.constructions import near_complete_construction
from uksat.hypercore import UniformHypergraph, complement_hypergraph, max_clique_size, members
from uksat.transversal import (
    _tau_side_dense,
    check_saturation_tau_equivalence,
    count_transversals_of_size,
    is_uniquely_tau_critical,
    least_minimum_transversal,
    nonexistence_bound,
    tau_side,
    transversal_number,
    tuza_bound,
)
from uksat.verify import FailureKind, verify_uniquely_saturated


def _frozen(H):
    return [frozenset(e) for e in H.edge_lists()]


def test_transversal_examples(c5):
    res = transversal_number(UniformHypergraph.empty(4, 2), all_minimum=True)
    assert res.tau == 0 and res.minimum_transversals == ((),) and res.count == 1
    assert transversal_number(c5).tau == 3
    assert transversal_number(near_complete_construction(4, 8)).tau == 2


def test_all_minimum_listing(c5):
    res = transversal_number(c5, all_minimum=True)
    assert res.count == 5
    assert res.minimum_transversals == tuple(sorted(
        naive_min_transversals(_frozen(c5), 5, 3), key=lambda x: sum(1 << (v - 1) for v in x)))
    short = transversal_number(c5, all_minimum=True, limit=2)
    assert len(short.minimum_transversals) == 2 and short.count == 5 and short.truncated


def test_uniquely_tau_critical_examples(c5):
    assert is_uniquely_tau_critical(UniformHypergraph.from_edges(2, 2, [(1, 2)])).ok
    assert is_uniquely_tau_critical(complement_hypergraph(c5)).ok
    v = is_uniquely_tau_critical(UniformHypergraph.from_edges(4, 2, [(1, 2), (3, 4)]))
    assert v.failure_kind is FailureKind.NON_UNIQUE_TRANSVERSAL
    assert v.witness == (1, 2)
    # a triangle with a pendant edge: deleting the pendant keeps tau at 2
    v = is_uniquely_tau_critical(UniformHypergraph.from_edges(4, 2, [(1, 2), (1, 3), (2, 3), (3, 4)]))
    assert v.failure_kind is FailureKind.NOT_CRITICAL
    with pytest.raises(ValueError):
        is_uniquely_tau_critical(UniformHypergraph.empty(3, 2))


def test_explicit_tau_is_checked(c5):
    v = is_uniquely_tau_critical(complement_hypergraph(c5), tau=2)
    assert v.failure_kind is FailureKind.WRONG_TAU
    assert "tau = 3" in v.detail


def test_tau_side_failures(c5):
    v = tau_side(UniformHypergraph.from_edges(4, 2, [(1, 2), (2, 3)]), 3)
    assert (v.failure_kind, v.witness) == (FailureKind.ISOLATED_VERTEX, 4)
    v = tau_side(complement_hypergraph(c5), 4)
    assert v.failure_kind is FailureKind.WRONG_TAU
    assert v.witness == (1, 2, 3)
    assert tau_side(complement_hypergraph(c5), 3).ok


def test_equivalence_examples(c5, petersen):
    assert check_saturation_tau_equivalence(c5, 3)
    assert check_saturation_tau_equivalence(UniformHypergraph.complete(5, 2), 3)
    assert check_saturation_tau_equivalence(petersen, 3)
    assert tau_side(complement_hypergraph(petersen), 3).ok


def test_bounds():
    assert tuza_bound(2, 2) == 5
    assert tuza_bound(2, 3) == 7
    assert tuza_bound(3, 2) == 9
    assert nonexistence_bound(2, 1) == 5
    assert nonexistence_bound(3, 2) == 16
    assert nonexistence_bound(2, 8) == 19
    with pytest.raises(ValueError):
        tuza_bound(1, 2)
    with pytest.raises(ValueError):
        nonexistence_bound(2, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 10), st.data())
def test_tau_matches_naive(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, min(n, 4)))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.2, 0.5])))
    res = transversal_number(H, all_minimum=True)
    assert res.tau == naive_tau(_frozen(H), n)
    naive = naive_min_transversals(_frozen(H), n, res.tau)
    assert sorted(res.minimum_transversals) == sorted(naive)
    assert res.count == len(naive)
    tau, least = least_minimum_transversal(list(H.edges))
    assert tau == res.tau
    assert members(least) == min(naive)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 8), st.data())
def test_uniquely_critical_matches_naive(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(2, min(n - 1, 4)))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.15, 0.3])))
    if not H.edges:
        return
    assert is_uniquely_tau_critical(H).ok == naive_uniquely_tau_critical(_frozen(H), n)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 9), st.data())
def test_transversals_are_clique_complements(seed, n, data):
    """tau(H^c) = n - (largest clique of H)."""
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 1))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.6, 0.85])))
    # sets smaller than k count as cliques, so the identity needs no guard
    assert transversal_number(complement_hypergraph(H)).tau == n - max_clique_size(H)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 9), st.data())
def test_edge_removal_changes_tau_by_at_most_one(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, min(n, 4)))
    H = random_hypergraph(rng, n, k)
    if not H.edges:
        return
    tau = transversal_number(H).tau
    e = data.draw(st.sampled_from(H.edges))
    assert transversal_number(H.without_edge(e)).tau in (tau - 1, tau)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 8), st.data())
def test_dense_tau_side_matches_branch_and_bound(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(2, n - 1))
    r = data.draw(st.integers(k + 1, n))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.8, 0.95])))
    Hc = complement_hypergraph(H)
    if not Hc.edges or Hc.isolated_vertices():
        return
    dense = _tau_side_dense(Hc, n - r + 1)
    tau, best = least_minimum_transversal(list(Hc.edges))
    if tau != n - r + 1:
        assert dense.failure_kind is FailureKind.WRONG_TAU
        assert dense.detail == f"tau = {tau}, expected {n - r + 1}"
        assert dense.witness == members(best)
    else:
        assert dense == is_uniquely_tau_critical(Hc)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 8), st.data())
def test_saturation_tau_equivalence(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 2))
    r = data.draw(st.integers(k + 1, n - 1))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.8, 0.95])))
    assert verify_uniquely_saturated(H, r).ok == tau_side(complement_hypergraph(H), r).ok


def test_counting_stops_early(c5):
    edges = list(complement_hypergraph(cycle_graph(7)).edges)
    assert count_transversals_of_size(edges, 5, stop=2) == 2
