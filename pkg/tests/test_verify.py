import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import clique_join_independent, cycle_graph, random_hypergraph
from oracles import naive_complementary_ok, naive_completions, naive_uniquely_saturated
from uksat.hypercore import UniformHypergraph, complementary_hypergraph, members, to_mask
from uksat.verify import (
    FailureKind,
    Verdict,
    _properties_dense,
    _properties_sparse,
    _saturated_dense,
    _saturated_sparse,
    completions,
    private_subsets_outside,
    verify_complementary,
    verify_uniquely_saturated,
)


def _frozen(H):
    return [frozenset(e) for e in H.edge_lists()]


# ---------------------------------------------------------------------------
# Verdict plumbing

def test_verdict_invariants():
    assert Verdict.success().ok and Verdict.success().witness is None
    with pytest.raises(ValueError):
        Verdict(True, FailureKind.CLIQUE_EXISTS)
    with pytest.raises(ValueError):
        Verdict(False, FailureKind.CLIQUE_EXISTS)
    v = Verdict(False, FailureKind.PROPERTY_VIOLATION, 1, 3)
    assert v.describe() == "Property 3, vertex 1"
    assert v.to_json()["witness"] == 1


# ---------------------------------------------------------------------------
# completions

def test_completions_examples(c5):
    S = (1, 3)
    minus_one = UniformHypergraph(6, 2, tuple(e for e in UniformHypergraph.complete(6, 2).edges
                                              if e != to_mask(S)))
    assert completions(minus_one, S, 1) == [(2,), (4,), (5,), (6,)]
    assert completions(c5, (1, 3), 1) == [(2,)]
    assert completions(UniformHypergraph.empty(5, 2), (1, 2), 2) == []
    with pytest.raises(ValueError):
        completions(c5, (1, 2), 1)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9), st.integers(4, 8), st.data())
def test_completions_match_naive(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(2, n - 2))
    H = random_hypergraph(rng, n, k)
    missing = [S for S in UniformHypergraph.complete(n, k).edges if S not in H.edge_set]
    if not missing:
        return
    S = members(rng.choice(missing))
    s = data.draw(st.integers(1, n - k))
    want = naive_completions(_frozen(H), n, k, S, s)
    assert sorted(completions(H, S, s)) == sorted(want)


# ---------------------------------------------------------------------------
# direct verifier

def test_five_cycle_and_petersen(c5, petersen):
    assert verify_uniquely_saturated(c5, 3).ok
    assert verify_uniquely_saturated(petersen, 3).ok


def test_odd_cycle_complements():
    from uksat.hypercore import complement_hypergraph
    for n in (5, 7, 9):
        assert verify_uniquely_saturated(complement_hypergraph(cycle_graph(n)), (n + 1) // 2).ok


def test_clique_joined_to_independent_set():
    H = clique_join_independent(6, 4)
    v = verify_uniquely_saturated(H, 4)
    assert not v.ok
    assert v.failure_kind is FailureKind.DOMINATING_VERTEX
    assert v.witness == 1


def test_clique_exists_witness():
    v = verify_uniquely_saturated(UniformHypergraph.complete(5, 2), 3)
    assert v.failure_kind is FailureKind.CLIQUE_EXISTS
    assert v.witness == (1, 2, 3)


def test_no_and_multiple_completions():
    v = verify_uniquely_saturated(UniformHypergraph.empty(5, 2), 3)
    assert v.failure_kind is FailureKind.NO_COMPLETION
    assert v.witness == (1, 2)
    # C6: adding {1,3} closes the triangle through 2 only, {1,4} closes nothing
    v = verify_uniquely_saturated(cycle_graph(6), 3)
    assert v.failure_kind is FailureKind.NO_COMPLETION
    assert v.witness == (1, 4)
    # K_{2,3}: the missing edge {1,2} inside the small side has three completions
    K23 = UniformHypergraph.from_edges(5, 2, [(a, b) for a in (1, 2) for b in (3, 4, 5)])
    v = verify_uniquely_saturated(K23, 3)
    assert v.failure_kind is FailureKind.MULTIPLE_COMPLETIONS
    assert v.witness == ((1, 2), (4,))


def test_parameter_errors(c5):
    with pytest.raises(ValueError):
        verify_uniquely_saturated(c5, 2)
    with pytest.raises(ValueError):
        verify_uniquely_saturated(c5, 6)


def test_r_equals_n():
    n, k = 5, 3
    K = UniformHypergraph.complete(n, k)
    assert verify_uniquely_saturated(K, n).failure_kind is FailureKind.CLIQUE_EXISTS
    # one missing k-set: the whole vertex set is its only completion, but the
    # vertices outside it dominate
    one = UniformHypergraph(n, k, K.edges[1:])
    v = verify_uniquely_saturated(one, n)
    assert v.failure_kind is FailureKind.DOMINATING_VERTEX
    # two missing k-sets: neither can be completed by the whole vertex set
    two = UniformHypergraph(n, k, K.edges[2:])
    assert verify_uniquely_saturated(two, n).failure_kind is FailureKind.NO_COMPLETION


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 7), st.data())
def test_direct_matches_naive(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 2))
    r = data.draw(st.integers(k + 1, n))
    H = random_hypergraph(rng, n, k)
    assert verify_uniquely_saturated(H, r).ok == naive_uniquely_saturated(_frozen(H), n, k, r)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 9), st.data())
def test_dense_and_sparse_paths_agree(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 2))
    r = data.draw(st.integers(k + 1, n))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.7, 0.9])))
    assert _saturated_dense(H, r) == _saturated_sparse(H, r)
    R = complementary_hypergraph(H)
    if R.edges and r - k < R.k:
        d = R.k - (r - k)
        assert _properties_dense(R, d) == _properties_sparse(R, d)


# ---------------------------------------------------------------------------
# three-property verifier

def test_double_star_graph():
    R = UniformHypergraph.from_edges(6, 2, [(1, 2), (1, 3), (4, 6), (5, 6)])
    assert verify_complementary(R, 2, 1).ok


def test_single_star():
    R = UniformHypergraph.from_edges(4, 2, [(1, 2), (1, 3), (1, 4)])
    v = verify_complementary(R, 2, 1)
    assert not v.ok
    assert v.failure_kind is FailureKind.PROPERTY_VIOLATION
    assert v.property_index == 3
    assert v.describe().startswith("Property 3, vertex 1")


def test_five_cycle_complementary(c5):
    assert verify_complementary(complementary_hypergraph(c5), 3, 1).ok


def test_property_witnesses():
    # {4} is covered by no edge
    R = UniformHypergraph.from_edges(4, 2, [(1, 2), (2, 3)])
    v = verify_complementary(R, 2, 1)
    assert (v.property_index, v.witness) == (1, (4,))
    # a path on four vertices: the middle edge has no private vertex
    P = UniformHypergraph.from_edges(4, 2, [(1, 2), (2, 3), (3, 4)])
    v = verify_complementary(P, 2, 1)
    assert (v.property_index, v.witness) == (2, (2, 3))
    assert "0 private" in v.detail
    # uniformity mismatch and s out of range
    with pytest.raises(ValueError):
        verify_complementary(P, 3, 1)
    with pytest.raises(ValueError):
        verify_complementary(P, 2, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 7), st.data())
def test_three_properties_match_naive(seed, n, data):
    rng = random.Random(seed)
    t = data.draw(st.integers(2, n - 1))
    s = data.draw(st.integers(1, t - 1))
    R = random_hypergraph(rng, n, t)
    assert verify_complementary(R, t, s).ok == naive_complementary_ok(_frozen(R), n, t, s)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 8), st.data())
def test_equivalence_on_random_instances(seed, n, data):
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 2))
    r = data.draw(st.integers(k + 1, n - 1))
    H = random_hypergraph(rng, n, k, p=data.draw(st.sampled_from([None, 0.8, 0.95])))
    R = complementary_hypergraph(H)
    assert verify_uniquely_saturated(H, r).ok == verify_complementary(R, n - k, r - k).ok


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(4, 8), st.data())
def test_completion_bijection(seed, n, data):
    """Completions of a non-edge S correspond to codegree-1 (t-s)-subsets of
    the complement of S."""
    rng = random.Random(seed)
    k = data.draw(st.integers(1, n - 2))
    s = data.draw(st.integers(1, n - k - 1))
    H = random_hypergraph(rng, n, k, p=0.8)
    R = complementary_hypergraph(H)
    for S in list(H.non_edges())[:6]:
        assert len(completions(H, S, s)) == private_subsets_outside(R, S, n - k - s)
