"""Explicit constructions of primitive uniquely saturated hypergraphs.

Three families:

* ``double_star`` builds the complementary hypergraph R for k >= 4 and
  k < r <= 2k - 3 (any n > r);
* ``tau_critical_construction`` builds a uniquely tau-critical H^c from a
  coloring of the Johnson graph J(ell + k - 1, k - 1);
* ``near_complete_construction`` builds H^c with tau = 2 for n - r = 1.

Every output is certified by an independent verifier before it is returned.
A failed certification raises :class:`ConstructionDefect`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypercore import (
    UniformHypergraph,
    complement_hypergraph,
    complementary_hypergraph,
    full_mask,
    k_subsets,
    to_mask,
)
from .johnson import Coloring, chromatic_number
from .transversal import tau_side
from .verify import Verdict, verify_complementary, verify_uniquely_saturated


class OutOfRange(ValueError):
    """Parameters outside the range a construction covers."""


class ConstructionDefect(RuntimeError):
    """A construction produced an object that failed its own certification."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        self.verdict = verdict
        super().__init__(message if verdict is None else f"{message}: {verdict.describe()}")


class PreconditionFailed(ValueError):
    def __init__(self, message: str, verdict: Verdict):
        self.verdict = verdict
        super().__init__(f"{message}: {verdict.describe()}")


def _interval(lo: int, hi: int) -> int:
    """Mask of the vertices lo..hi (inclusive, 1-based); empty if hi < lo."""
    if hi < lo:
        return 0
    return full_mask(hi) & ~full_mask(lo - 1)


# ---------------------------------------------------------------------------
# double star
# ---------------------------------------------------------------------------

def double_star(n: int, k: int, r: int, certify: bool = True) -> UniformHypergraph:
    """The t-uniform complementary hypergraph R = A + B on [n] (t = n - k)."""
    if k < 4:
        raise OutOfRange(f"double star needs k >= 4 (got k={k})")
    if not k < r:
        raise OutOfRange(f"double star needs k < r (got k={k}, r={r})")
    if not r <= 2 * k - 3:
        raise OutOfRange(f"double star needs r <= 2k - 3 = {2 * k - 3} (got r={r})")
    if not n > r:
        raise OutOfRange(f"double star needs n > r (got n={n}, r={r})")
    t, s = n - k, r - k
    center_a = full_mask(s)
    low = _interval(s + 1, n - t - 1)        # elements s < i < n - t
    edges = []
    # A: [s] + (t-s)-subsets of {s+1..n} meeting {s+1..n-t-1}
    for S in k_subsets(n, t - s):
        if S & center_a or not S & low:
            continue
        edges.append(center_a | S)
    # B: X + (t-s)-subsets of {n-t..n-s}, X = {n-s+1..n}
    X = _interval(n - s + 1, n)
    window = _interval(n - t, n - s)
    for S in k_subsets(n, t - s):
        if S & ~window == 0:
            edges.append(X | S)
    R = UniformHypergraph(n, t, tuple(edges))
    if certify:
        v = verify_complementary(R, t, s)
        if not v.ok:
            raise ConstructionDefect(f"double star ({n}, {k}, {r}) failed", v)
    return R


def star_forest(n: int, star_sizes: list[int]) -> UniformHypergraph:
    """A graph on [n] made of disjoint stars with the given numbers of leaves.

    With t = 2, s = 1 these are exactly the valid complementary graphs when
    each star has at least two leaves and there are at least two stars.
    """
    if sum(sz + 1 for sz in star_sizes) != n:
        raise ValueError("star sizes (plus centers) must add up to n")
    edges = []
    v = 1
    for sz in star_sizes:
        c = v
        for leaf in range(c + 1, c + sz + 1):
            edges.append(to_mask((c, leaf)))
        v = c + sz + 1
    return UniformHypergraph(n, 2, tuple(edges))


# ---------------------------------------------------------------------------
# tau-critical construction from a Johnson coloring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TauConstructionPlan:
    k: int
    ell: int
    n: int
    u: int
    w: int
    A: int
    B: tuple[int, ...]                      # b_1..b_{u+w} as vertex labels
    classes: tuple[tuple[int, ...], ...]    # refined classes of (k-1)-subsets of A

    def edges(self) -> list[int]:
        out = []
        for b, cls in zip(self.B, self.classes):
            bit = 1 << (b - 1)
            out.extend(x | bit for x in cls)
        return out


def tau_construction_range(k: int, ell: int, colors: int) -> tuple[int, int]:
    a = ell + k - 1
    return colors + a, math.comb(a, k - 1) + a


def refine_classes(classes, total: int) -> tuple[tuple[int, ...], ...]:
    """Split classes until there are ``total`` of them: repeatedly move the
    colex-largest set of the largest class into a new singleton class."""
    out = [list(c) for c in classes]
    while len(out) < total:
        i = max(range(len(out)), key=lambda j: (len(out[j]), -j))
        if len(out[i]) < 2:
            raise ValueError("cannot refine further: every class is a singleton")
        moved = out[i].pop()
        out.append([moved])
    return tuple(tuple(c) for c in out)


def tau_critical_plan(k: int, ell: int, n: int, coloring: Coloring | None = None,
                      budget: int = 200_000) -> TauConstructionPlan:
    if k < 3:
        raise OutOfRange(f"tau-critical construction needs k >= 3 (got k={k})")
    if ell < 1:
        raise OutOfRange(f"tau-critical construction needs ell >= 1 (got ell={ell})")
    a = ell + k - 1
    if coloring is None:
        coloring = chromatic_number(a, k - 1, budget).coloring
    else:
        if (coloring.ground, coloring.block_size) != (a, k - 1):
            raise ValueError(
                f"coloring must be of J({a}, {k - 1}), got J({coloring.ground}, {coloring.block_size})")
        coloring.validate()
    u = coloring.num_colors
    lo, hi = tau_construction_range(k, ell, u)
    if not lo <= n <= hi:
        raise OutOfRange(
            f"need {lo} <= n <= {hi} (chi bound {u} + {a} <= n <= C({a},{k - 1}) + {a}), got n={n}")
    w = n - u - a
    classes = refine_classes(coloring.classes, u + w)
    B = tuple(range(a + 1, n + 1))
    return TauConstructionPlan(k, ell, n, u, w, full_mask(a), B, classes)


def tau_critical_construction(k: int, ell: int, n: int, coloring: Coloring | None = None,
                              certify: bool = True, budget: int = 200_000) -> UniformHypergraph:
    """A uniquely tau-critical k-uniform hypergraph on n vertices, tau = ell + 1,
    without isolated vertices."""
    plan = tau_critical_plan(k, ell, n, coloring, budget)
    H = UniformHypergraph(n, k, tuple(plan.edges()))
    if certify:
        v = tau_side(H, n - ell)
        if not v.ok:
            raise ConstructionDefect(f"tau-critical construction ({k}, {ell}, {n}) failed", v)
    return H


def to_saturated(Hc: UniformHypergraph, r: int) -> UniformHypergraph:
    """Complement a uniquely tau-critical hypergraph (tau = n - r + 1, no
    isolated vertices) into a primitive uniquely K_r^(k)-saturated one."""
    pre = tau_side(Hc, r)
    if not pre.ok:
        raise PreconditionFailed("input is not uniquely tau-critical with the required tau", pre)
    H = complement_hypergraph(Hc)
    v = verify_uniquely_saturated(H, r)
    if not v.ok:
        raise ConstructionDefect("complement failed the saturation check", v)
    return H


# ---------------------------------------------------------------------------
# n - r = 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NearCompletePlan:
    k: int
    n: int
    m: int
    outer_parts: tuple[int, ...]     # e_i minus A, one mask per i in [m]

    @property
    def A(self) -> int:
        return full_mask(self.m)

    def edges(self) -> list[int]:
        A = self.A
        return [(A ^ (1 << i)) | part for i, part in enumerate(self.outer_parts)]


def near_complete_range(k: int) -> tuple[int, int]:
    return k + 2, (k + 2) ** 2 // 4


def near_complete_plan(k: int, n: int) -> NearCompletePlan:
    lo, hi = near_complete_range(k)
    if k < 3:
        raise OutOfRange(f"near-complete construction needs k >= 3 (got k={k})")
    if not lo <= n <= hi:
        raise OutOfRange(f"need k+2 <= n <= (k+2)^2/4, i.e. {lo} <= n <= {hi} (got n={n})")
    if k == 3 and n != 6:
        raise OutOfRange("for k = 3 only n = 6 is constructible (n = 5 has no solution)")
    if n <= 2 * k:
        m = k
        outer = list(range(k + 1, n + 1))
        parts = tuple(1 << (outer[i % len(outer)] - 1) for i in range(m))
        return NearCompletePlan(k, n, m, parts)
    m = (k + 3) // 2
    p = k - m + 1
    parts = [_interval(m + 1, k + 1), _interval(k + 2, 2 * k - m + 2)]
    pool = list(range(2 * k - m + 3, n + 1))
    q = len(pool)
    if q < p or (m - 2) * p < q:
        raise ConstructionDefect(f"no covering of the outer pool for k={k}, n={n}")
    for j in range(m - 2):
        parts.append(to_mask(pool[(j * p + i) % q] for i in range(p)))
    return NearCompletePlan(k, n, m, tuple(parts))


def near_complete_construction(k: int, n: int, certify: bool = True) -> UniformHypergraph:
    """H^c with tau = 2 whose complement is uniquely K_{n-1}^(k)-saturated."""
    plan = near_complete_plan(k, n)
    H = UniformHypergraph(n, k, tuple(plan.edges()))
    if certify:
        v = tau_side(H, n - 1)
        if not v.ok:
            raise ConstructionDefect(f"near-complete construction ({k}, {n}) failed", v)
    return H


def quadratic_feasible(k: int, n: int, x: int) -> bool:
    """x(n - x - t + 1) >= n - x with t = n - k."""
    t = n - k
    return x * (n - x - t + 1) >= n - x


def saturated_from_complementary(R: UniformHypergraph) -> UniformHypergraph:
    return complementary_hypergraph(R)
