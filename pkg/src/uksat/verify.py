"""Two independent checks for primitive unique saturation.

``verify_uniquely_saturated`` works from the definition on H itself;
``verify_complementary`` checks the three covering properties on the
complementary hypergraph R. The two must always agree, which is what makes
them useful as oracles for each other.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Any

import numpy as np

from .hypercore import (
    SetLike,
    UniformHypergraph,
    _find_clique,
    dense_ok,
    full_mask,
    inclusion_matrix,
    index_of,
    k_subsets,
    lex_first,
    lex_least,
    lex_rank,
    members,
    subset_array,
    subsets_of,
    to_mask,
)


class FailureKind(enum.Enum):
    CLIQUE_EXISTS = "CliqueExists"
    NO_COMPLETION = "NoCompletion"
    MULTIPLE_COMPLETIONS = "MultipleCompletions"
    DOMINATING_VERTEX = "DominatingVertex"
    PROPERTY_VIOLATION = "PropertyViolation"
    # transversal-side failures
    ISOLATED_VERTEX = "IsolatedVertex"
    WRONG_TAU = "WrongTau"
    NOT_CRITICAL = "NotCritical"
    NON_UNIQUE_TRANSVERSAL = "NonUniqueTransversal"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failure_kind: FailureKind | None = None
    witness: Any = None
    property_index: int | None = None
    detail: str = ""

    def __post_init__(self):
        if self.ok != (self.failure_kind is None):
            raise ValueError("ok must be True exactly when failure_kind is absent")
        if self.ok != (self.witness is None):
            raise ValueError("a witness is present exactly when ok is False")

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def success(cls) -> "Verdict":
        return cls(True)

    def describe(self) -> str:
        if self.ok:
            return "ok"
        kind = self.failure_kind.value
        if self.failure_kind is FailureKind.PROPERTY_VIOLATION:
            kind = f"Property {self.property_index}"
        return f"{kind}, {_format_witness(self.witness)}" + (
            f" ({self.detail})" if self.detail else "")

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failure_kind": None if self.ok else self.failure_kind.value,
            "property_index": self.property_index,
            "witness": _witness_json(self.witness),
            "detail": self.detail,
        }


def _format_witness(w) -> str:
    if isinstance(w, int):
        return f"vertex {w}"
    if w and isinstance(w[0], tuple):
        return " / ".join("{" + ",".join(map(str, x)) + "}" for x in w)
    return "{" + ",".join(map(str, w)) + "}"


def _witness_json(w):
    if w is None or isinstance(w, int):
        return w
    if w and isinstance(w[0], tuple):
        return [list(x) for x in w]
    return list(w)


def _fail(kind: FailureKind, witness, index: int | None = None, detail: str = "") -> Verdict:
    return Verdict(False, kind, witness, index, detail)


# ---------------------------------------------------------------------------
# direct definition
# ---------------------------------------------------------------------------

def _completion_masks(edge_set, n: int, k: int, S: int, s: int, stop: int | None = None):
    """s-sets T outside S such that every k-subset of S|T other than S is an edge."""
    outside = full_mask(n) & ~S
    cand = [1 << (v - 1) for v in members(outside)]
    found: list[int] = []

    def grow(T: int, start: int, size: int) -> bool:
        if size == s:
            found.append(T)
            return stop is not None and len(found) >= stop
        base = S | T
        for i in range(start, len(cand)):
            if len(cand) - i < s - size:
                break
            w = cand[i]
            # every k-set of base|w through w must be present
            if all((c | w) in edge_set for c in subsets_of(base, k - 1)):
                if grow(T | w, i + 1, size + 1):
                    return True
        return False

    grow(0, 0, 0)
    return found


def _completions_by_exclusion(nonedge_arr, n: int, S: int, s: int, stop: int | None = None):
    """Same result as :func:`_completion_masks`, computed from the non-edges:
    T completes S iff S | T contains no non-edge other than S.

    Each other non-edge N forbids T from containing D = N minus S whenever
    |D| <= s. Singletons just remove candidates; larger D are checked when
    their highest vertex joins T.
    """
    full = full_mask(n)
    outside = full & ~S
    diff = nonedge_arr & np.uint64(outside)
    size = np.bitwise_count(diff)
    banned = int(np.bitwise_or.reduce(diff[size == 1])) if s >= 1 else 0
    multi = diff[(size >= 2) & (size <= s)]
    top = np.log2(multi.astype(np.float64)).astype(np.int64) if len(multi) else multi
    groups: dict[int, np.ndarray] = {}
    cand = [1 << (v - 1) for v in members(outside & ~banned)]
    found: list[int] = []

    def blocked(w: int, Tw: int) -> bool:
        b = w.bit_length() - 1
        Dw = groups.get(b)
        if Dw is None:
            Dw = groups[b] = multi[top == b]
        if not len(Dw):
            return False
        return bool(np.any((Dw & np.uint64(full & ~Tw)) == 0))

    def grow(T: int, start: int, size: int) -> bool:
        if size == s:
            found.append(T)
            return stop is not None and len(found) >= stop
        for i in range(start, len(cand) - (s - size) + 1):
            w = cand[i]
            Tw = T | w
            if size and blocked(w, Tw):
                continue
            if grow(Tw, i + 1, size + 1):
                return True
        return False

    grow(0, 0, 0)
    return found


def completions(H: UniformHypergraph, S: SetLike, s: int) -> list[tuple[int, ...]]:
    """All completions of the non-edge ``S`` by s further vertices."""
    S = to_mask(S)
    if S.bit_count() != H.k:
        raise ValueError(f"S must be a {H.k}-set")
    if S in H.edge_set:
        raise ValueError(f"{members(S)} is an edge; completions are defined for non-edges")
    if s < 1:
        raise ValueError("s must be at least 1")
    return [members(T) for T in _completion_masks(H.edge_set, H.n, H.k, S, s)]


def verify_uniquely_saturated(H: UniformHypergraph, r: int) -> Verdict:
    """Check that H is a primitive uniquely K_r^(k)-saturated hypergraph.

    Failures are reported in the order clique, completions, dominating vertex;
    within each check the witness is the lexicographically least offender.
    """
    n, k = H.n, H.k
    if not 1 <= k < r <= n:
        raise ValueError(f"need 1 <= k < r <= n, got n={n}, k={k}, r={r}")
    if dense_ok(n, r, k):
        return _saturated_dense(H, r)
    return _saturated_sparse(H, r)


def _saturated_sparse(H: UniformHypergraph, r: int) -> Verdict:
    n, k = H.n, H.k
    es = H.edge_set
    clique = _find_clique(es, n, k, r)
    if clique is not None:
        return _fail(FailureKind.CLIQUE_EXISTS, members(clique))
    s = r - k
    nonedges = list(H.non_edges())
    # the exclusion route needs masks that fit in uint64
    arr = np.array(nonedges, dtype=np.uint64) if n <= 64 else None
    for S in sorted(nonedges, key=members):
        if arr is not None:
            found = _completions_by_exclusion(arr, n, S, s, stop=2)
        else:
            found = _completion_masks(es, n, k, S, s, stop=2)
        if len(found) != 1:
            return _completion_failure(S, found)
    return _dominating_check(n, nonedges)


def _saturated_dense(H: UniformHypergraph, r: int) -> Verdict:
    """Same verdict as the set-based route, by counting non-edges inside
    every r-set: S has exactly as many completions as there are r-sets
    containing S with no other non-edge."""
    n, k = H.n, H.k
    inc = inclusion_matrix(n, r, k)
    missing = np.ones(inc.shape[1], dtype=np.int32)
    if H.edges:
        missing[index_of(n, k, H.edges)] = 0
    per_rset = inc @ missing
    cliques = np.flatnonzero(per_rset == 0)
    if len(cliques):
        return _fail(FailureKind.CLIQUE_EXISTS, members(lex_first(n, r, cliques)))
    ncomp = (per_rset == 1).astype(np.int32) @ inc
    bad = np.flatnonzero((missing == 1) & (ncomp != 1))
    if len(bad):
        S = lex_first(n, k, bad)
        found = _completion_masks(H.edge_set, n, k, S, r - k, stop=2)
        return _completion_failure(S, found)
    covered = int(np.bitwise_or.reduce(subset_array(n, k)[missing == 1]))
    return _dominating_check(n, [covered])


def _completion_failure(S: int, found: list[int]) -> Verdict:
    if not found:
        return _fail(FailureKind.NO_COMPLETION, members(S))
    return _fail(FailureKind.MULTIPLE_COMPLETIONS, (members(S), members(found[1])),
                 detail=f"completions {members(found[0])} and {members(found[1])}")


def _dominating_check(n: int, nonedges) -> Verdict:
    covered = 0
    for S in nonedges:
        covered |= S
    dominating = full_mask(n) & ~covered
    if dominating:
        return _fail(FailureKind.DOMINATING_VERTEX, members(dominating)[0])
    return Verdict.success()


# ---------------------------------------------------------------------------
# three-property check on R
# ---------------------------------------------------------------------------

def codegree_table(R: UniformHypergraph, size: int) -> Counter:
    """Codegree of every ``size``-set that lies in at least one edge."""
    cnt: Counter = Counter()
    for e in R.edges:
        cnt.update(subsets_of(e, size))
    return cnt


def verify_complementary(R: UniformHypergraph, t: int, s: int) -> Verdict:
    """Check the three covering properties of a complementary hypergraph.

    1. every (t-s)-set has codegree >= 1;
    2. every edge contains exactly one (t-s)-subset of codegree 1;
    3. no vertex lies in every edge.

    The first failing property is reported, with its lexicographically least
    violator as the witness.
    """
    if R.k != t:
        raise ValueError(f"R is {R.k}-uniform, expected t={t}")
    if not 1 <= s < t:
        raise ValueError(f"need 1 <= s < t, got s={s}, t={t}")
    n, d = R.n, t - s
    if dense_ok(n, t, d):
        v = _properties_dense(R, d)
    else:
        v = _properties_sparse(R, d)
    if v is not None:
        return v
    common = full_mask(n)
    for e in R.edges:
        common &= e
    if R.edges and common:
        return _fail(FailureKind.PROPERTY_VIOLATION, members(common)[0], 3,
                     "vertex lies in every edge")
    return Verdict.success()


def _uncovered(W: int) -> Verdict:
    return _fail(FailureKind.PROPERTY_VIOLATION, members(W), 1, "not covered by any edge")


def _private_count(e: int, d: int, count: int) -> Verdict:
    return _fail(FailureKind.PROPERTY_VIOLATION, members(e), 2,
                 f"{count} private ({d})-subsets")


def _properties_sparse(R: UniformHypergraph, d: int) -> Verdict | None:
    n = R.n
    cnt = codegree_table(R, d)
    if len(cnt) < math.comb(n, d):
        return _uncovered(lex_least(W for W in k_subsets(n, d) if W not in cnt))
    bad = {}
    for e in R.edges:
        ones = sum(1 for W in subsets_of(e, d) if cnt[W] == 1)
        if ones != 1:
            bad[e] = ones
    if bad:
        e = lex_least(bad)
        return _private_count(e, d, bad[e])
    return None


def _properties_dense(R: UniformHypergraph, d: int) -> Verdict | None:
    n, t = R.n, R.k
    if not R.edges:
        return _uncovered(lex_least(k_subsets(n, d)))
    idx = index_of(n, t, R.edges)
    sub = inclusion_matrix(n, t, d)[idx]
    cnt = sub.sum(axis=0)
    zero = np.flatnonzero(cnt == 0)
    if len(zero):
        return _uncovered(lex_first(n, d, zero))
    ones = sub @ (cnt == 1).astype(np.int32)
    bad = np.flatnonzero(ones != 1)
    if len(bad):
        j = bad[np.argmin(lex_rank(n, t)[idx[bad]])]
        return _private_count(R.edges[j], d, int(ones[j]))
    return None


def private_subsets_outside(R: UniformHypergraph, S: SetLike, size: int) -> int:
    """Number of ``size``-subsets of V minus S with codegree exactly 1 in R."""
    S = to_mask(S)
    outside = full_mask(R.n) & ~S
    cnt = codegree_table(R, size)
    return sum(1 for W in subsets_of(outside, size) if cnt.get(W, 0) == 1)
