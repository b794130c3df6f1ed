"""Exact transversal numbers and the uniquely tau-critical check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hypercore import (
    DENSE_LIMIT,
    UniformHypergraph,
    complement_hypergraph,
    index_of,
    lex_first,
    lex_least,
    lex_rank,
    members,
    subset_array,
)
from .verify import FailureKind, Verdict, _fail, verify_uniquely_saturated


@dataclass(frozen=True)
class TransversalResult:
    tau: int
    minimum_transversals: tuple[tuple[int, ...], ...] = field(default=())
    count: int | None = None
    truncated: bool = False


def _disjoint_lower_bound(edges: list[int]) -> int:
    """Greedy packing of pairwise disjoint edges."""
    used = 0
    lb = 0
    for e in edges:
        if not e & used:
            used |= e
            lb += 1
    return lb


def _pick_branch_edge(edges: list[int], degree: dict[int, int]) -> int:
    # least-shared uncovered edge: fewest ways to cover it
    return min(edges, key=lambda e: (sum(degree[b] for b in _bits(e)), e))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def _ordered_vertices(e: int, degree: dict[int, int]) -> list[int]:
    # high degree first: a vertex covering many edges tends to reach the
    # optimum sooner; ties by label
    return sorted(_bits(e), key=lambda b: (-degree[b], b))


def _degrees(edges) -> dict[int, int]:
    deg: dict[int, int] = {}
    for e in edges:
        for b in _bits(e):
            deg[b] = deg.get(b, 0) + 1
    return deg


def _min_transversal(edges: list[int]) -> tuple[int, int]:
    """(tau, one minimum transversal mask) by branch and bound."""
    if not edges:
        return 0, 0
    deg = _degrees(edges)
    best = [len(edges) + 1, 0]
    # a trivial upper bound: one vertex per edge greedily
    chosen = 0
    for e in edges:
        if not e & chosen:
            chosen |= _ordered_vertices(e, deg)[0]
    best[0], best[1] = chosen.bit_count(), chosen

    def search(rest: list[int], chosen: int, size: int, banned: int) -> None:
        if not rest:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _disjoint_lower_bound(rest) >= best[0]:
            return
        e = _pick_branch_edge(rest, deg)
        options = [b for b in _ordered_vertices(e, deg) if not b & banned]
        for b in options:
            search([f for f in rest if not f & b], chosen | b, size + 1, banned)
            banned |= b

    search(edges, 0, 0, 0)
    return best[0], best[1]


def count_transversals_of_size(edges: list[int], size: int, stop: int | None = None,
                               collect: list | None = None) -> int:
    """Count the inclusion-minimal transversals with exactly ``size`` vertices,
    assuming none is smaller (so these are exactly the minimum ones).

    Each such set is produced once: on an uncovered edge (b1..bk) branch i
    takes b_i and bans b_1..b_{i-1}.
    """
    deg = _degrees(edges)
    total = [0]

    def search(rest: list[int], chosen: int, left: int, banned: int) -> bool:
        if not rest:
            total[0] += 1
            if collect is not None:
                collect.append(chosen)
            return stop is not None and total[0] >= stop
        if left == 0 or _disjoint_lower_bound(rest) > left:
            return False
        e = _pick_branch_edge(rest, deg)
        for b in sorted(_bits(e)):
            if b & banned:
                continue
            if search([f for f in rest if not f & b], chosen | b, left - 1, banned):
                return True
            banned |= b
        return False

    if size < 0:
        return 0
    search(list(edges), 0, size, 0)
    return total[0]


def transversal_number(H: UniformHypergraph, all_minimum: bool = False,
                       limit: int | None = None) -> TransversalResult:
    """Exact tau(H); optionally every minimum transversal (up to ``limit``
    listed, the count stays exact)."""
    edges = list(H.edges)
    tau, best = _min_transversal(edges)
    if not all_minimum:
        return TransversalResult(tau, (members(best),), None)
    found: list[int] = []
    count = count_transversals_of_size(edges, tau, collect=found)
    found.sort()
    listed = found if limit is None else found[:limit]
    return TransversalResult(tau, tuple(members(m) for m in listed), count,
                             truncated=len(listed) < count)


def least_minimum_transversal(edges: list[int]) -> tuple[int, int]:
    """(tau, the lexicographically least minimum transversal)."""
    tau, _ = _min_transversal(edges)
    found: list[int] = []
    count_transversals_of_size(edges, tau, collect=found)
    return tau, lex_least(found) if found else 0


def is_uniquely_tau_critical(H: UniformHypergraph, tau: int | None = None) -> Verdict:
    """Every edge deletion drops tau by one and leaves exactly one minimum
    transversal. Witness on failure is the lexicographically least offending
    edge."""
    if not H.edges:
        raise ValueError("uniquely tau-critical is defined for hypergraphs with edges")
    actual = _min_transversal(list(H.edges))[0]
    if tau is not None and tau != actual:
        _, best = least_minimum_transversal(list(H.edges))
        return _wrong_tau(actual, best, tau)
    tau = actual
    counts = _near_transversal_counts(list(H.edges), tau - 1)
    for e in sorted(H.edges, key=members):
        if counts[e] != 1:
            return _critical_failure(e, counts[e], tau)
    return Verdict.success()


def _near_transversal_counts(edges: list[int], size: int) -> dict[int, int]:
    """For each edge e, how many ``size``-sets meet every edge except e
    (capped at 2), given that no ``size``-set meets them all.

    One search covers every e: on an uncovered edge the extra first branch
    declares it the missed edge and bans its vertices, the others pick a
    vertex as in count_transversals_of_size. Since tau(H - e) >= size, every
    leaf has exactly ``size`` vertices.
    """
    deg = _degrees(edges)
    counts = dict.fromkeys(edges, 0)

    def search(rest: list[int], left: int, banned: int, missed: int) -> None:
        if not rest:
            if missed:
                counts[missed] += 1
            return
        if _disjoint_lower_bound(rest) > left + (0 if missed else 1):
            return
        e = _pick_branch_edge(rest, deg)
        if not missed and counts[e] < 2:
            search([f for f in rest if f != e], left, banned | e, e)
        if left == 0:
            return
        for b in sorted(_bits(e)):
            if b & banned:
                continue
            search([f for f in rest if not f & b], left - 1, banned, missed)
            banned |= b

    if size >= 0:
        search(list(edges), size, 0, 0)
    return counts


def _critical_failure(e: int, count: int, tau: int) -> Verdict:
    if count == 0:
        return _fail(FailureKind.NOT_CRITICAL, members(e),
                     detail=f"tau stays {tau} after deleting the edge")
    return _fail(FailureKind.NON_UNIQUE_TRANSVERSAL, members(e),
                 detail=f"several transversals of size {tau - 1}")


def _wrong_tau(tau: int, best: int, target: int) -> Verdict:
    return _fail(FailureKind.WRONG_TAU, members(best), detail=f"tau = {tau}, expected {target}")


def tau_side(Hc: UniformHypergraph, r: int) -> Verdict:
    """The transversal characterisation applied to the complement ``Hc``:
    no isolated vertex, tau = n - r + 1, uniquely tau-critical."""
    if not 1 <= r <= Hc.n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={Hc.n}")
    iso = Hc.isolated_vertices()
    if iso:
        return _fail(FailureKind.ISOLATED_VERTEX, iso[0])
    n = Hc.n
    target = n - r + 1
    size = len(Hc.edges) * max(math.comb(n, target), math.comb(n, target - 1))
    if n <= 63 and size <= DENSE_LIMIT:
        return _tau_side_dense(Hc, target)
    edges = list(Hc.edges)
    tau, _ = _min_transversal(edges)
    if tau != target:
        tau, best = least_minimum_transversal(edges)
        return _wrong_tau(tau, best, target)
    return is_uniquely_tau_critical(Hc, tau)


def _hits_all(n: int, size: int, E: np.ndarray) -> np.ndarray:
    """Colex positions of the size-sets meeting every edge."""
    X = subset_array(n, size)
    return np.flatnonzero(((X[:, None] & E[None, :]) != 0).all(axis=1))


def _tau_side_dense(Hc: UniformHypergraph, target: int) -> Verdict:
    """Enumerate all (target-1)-sets: each edge must be the only edge missed
    by exactly one of them, and none may miss nothing."""
    n = Hc.n
    E = np.asarray(Hc.edges, dtype=np.uint64)
    X = subset_array(n, target - 1)
    missed = (X[:, None] & E[None, :]) == 0
    per_set = missed.sum(axis=1)
    # tau is off target: scan sizes upward for the least transversal
    sizes = range(target) if (per_set == 0).any() else range(target, n + 1)
    for size in sizes:
        if math.comb(n, size) * len(E) > DENSE_LIMIT:
            tau, best = least_minimum_transversal(list(Hc.edges))
            return _wrong_tau(tau, best, target)
        hit = _hits_all(n, size, E)
        if len(hit):
            if size == target:
                break
            return _wrong_tau(size, lex_first(n, size, hit), target)
    per_edge = missed[per_set == 1].sum(axis=0)
    bad = np.flatnonzero(per_edge != 1)
    if len(bad):
        j = bad[np.argmin(lex_rank(n, Hc.k)[index_of(n, Hc.k, E[bad])])]
        return _critical_failure(Hc.edges[j], int(per_edge[j]), target)
    return Verdict.success()


def check_saturation_tau_equivalence(H: UniformHypergraph, r: int) -> bool:
    """Both characterisations of primitive unique saturation agree on H."""
    direct = verify_uniquely_saturated(H, r).ok
    return direct == tau_side(complement_hypergraph(H), r).ok


def tuza_bound(k: int, tau: int) -> int:
    """Strict upper bound on the vertex count of a k-uniform tau-critical
    hypergraph without isolated vertices."""
    if k < 2 or tau < 1:
        raise ValueError("need k >= 2 and tau >= 1")
    return math.comb(k + tau - 1, k - 1) + math.comb(k + tau - 2, k - 1)


def nonexistence_bound(k: int, ell: int) -> int:
    """No primitive uniquely K_{n-ell}^(k)-saturated hypergraph has at least
    this many vertices."""
    if k < 2 or ell < 1:
        raise ValueError("need k >= 2 and ell >= 1")
    return tuza_bound(k, ell + 1)

