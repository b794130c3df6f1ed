"""Johnson graphs J(m, k) and their colorings.

Vertices of J(m, k) are the k-subsets of [m] (bitmasks, colex order); two
are adjacent when they share exactly k - 1 elements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .hypercore import k_subsets, members


@dataclass(frozen=True)
class JohnsonGraph:
    m: int
    k: int
    vertices: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]   # indices into ``vertices``

    @property
    def degree(self) -> int:
        return self.k * (self.m - self.k)

    def adjacent(self, a: int, b: int) -> bool:
        return (a & b).bit_count() == self.k - 1


def johnson_graph(m: int, k: int) -> JohnsonGraph:
    if not 0 < k <= m:
        raise ValueError(f"need 0 < k <= m, got m={m}, k={k}")
    verts = k_subsets(m, k)
    index = {v: i for i, v in enumerate(verts)}
    nbrs = []
    for v in verts:
        out = []
        inside = [1 << (x - 1) for x in members(v)]
        outside = [1 << i for i in range(m) if not v >> i & 1]
        for a in inside:
            for b in outside:
                out.append(index[v ^ a | b])
        nbrs.append(tuple(sorted(out)))
    return JohnsonGraph(m, k, verts, tuple(nbrs))


@dataclass(frozen=True)
class Coloring:
    """A partition of the k-subsets of [m] into independent classes of J(m, k)."""

    ground: int
    block_size: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def num_colors(self) -> int:
        return len(self.classes)

    def class_lists(self) -> list[list[tuple[int, ...]]]:
        return [[members(x) for x in c] for c in self.classes]

    def validate(self) -> None:
        """Raise ValueError unless this is a proper coloring of J(ground, block_size)."""
        all_sets = k_subsets(self.ground, self.block_size)
        seen = [x for c in self.classes for x in c]
        if any(not c for c in self.classes):
            raise ValueError("empty color class")
        if sorted(seen) != list(all_sets):
            raise ValueError("classes do not partition the "
                             f"{self.block_size}-subsets of [{self.ground}]")
        kk = self.block_size - 1
        for i, c in enumerate(self.classes):
            for a_i, a in enumerate(c):
                for b in c[a_i + 1:]:
                    if (a & b).bit_count() == kk:
                        raise ValueError(
                            f"class {i} holds adjacent sets {members(a)} and {members(b)}")

    def is_proper(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True


def graham_sloane_coloring(m: int, k: int) -> Coloring:
    """Color each k-set by the sum of its elements mod m (at most m colors).

    Adjacent sets differ by swapping one element for another, which changes
    the sum by a nonzero residue.
    """
    if not 0 < k <= m:
        raise ValueError(f"need 0 < k <= m, got m={m}, k={k}")
    buckets: dict[int, list[int]] = {}
    for v in k_subsets(m, k):
        buckets.setdefault(sum(members(v)) % m, []).append(v)
    return Coloring(m, k, tuple(tuple(buckets[c]) for c in sorted(buckets)))


class ChromaticStatus(enum.Enum):
    EXACT = "exact"
    UPPER_BOUND_ONLY = "upper_bound_only"


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    status: ChromaticStatus
    coloring: Coloring
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.status is ChromaticStatus.EXACT


def _coloring_from_assignment(m, k, verts, colors) -> Coloring:
    classes: dict[int, list[int]] = {}
    for v, c in zip(verts, colors):
        classes.setdefault(c, []).append(v)
    return Coloring(m, k, tuple(tuple(classes[c]) for c in sorted(classes)))


def _common_core_clique(G: JohnsonGraph) -> list[int]:
    """Sets through a common (k-1)-core, or all k-subsets of a (k+1)-set;
    both are cliques of J(m, k). Returns the larger one as indices."""
    m, k = G.m, G.k
    index = {v: i for i, v in enumerate(G.vertices)}
    core = (1 << (k - 1)) - 1
    a = [index[core | 1 << j] for j in range(k - 1, m)]
    b = []
    if k + 1 <= m:
        top = (1 << (k + 1)) - 1
        b = [index[top ^ 1 << j] for j in range(k + 1)]
    return a if len(a) >= len(b) else b


class _BudgetExhausted(Exception):
    pass


def exact_chromatic_number(G: JohnsonGraph, budget: int = 1_000_000):
    """DSATUR branch and bound. Returns (chi, colors, nodes) or raises
    _BudgetExhausted carrying the best coloring seen."""
    nv = len(G.vertices)
    nbrs = G.neighbors
    clique = _common_core_clique(G)
    lower = len(clique)
    # initial upper bound from the mod-m coloring
    gs = graham_sloane_coloring(G.m, G.k)
    idx = {v: i for i, v in enumerate(G.vertices)}
    best_colors = [0] * nv
    for c, cls in enumerate(gs.classes):
        for v in cls:
            best_colors[idx[v]] = c
    best = [gs.num_colors, best_colors]
    colors = [-1] * nv
    # neighbor color counts: sat[v][c]
    sat = [dict() for _ in range(nv)]
    nodes = [0]

    def assign(v, c):
        colors[v] = c
        for w in nbrs[v]:
            d = sat[w]
            d[c] = d.get(c, 0) + 1

    def unassign(v, c):
        colors[v] = -1
        for w in nbrs[v]:
            d = sat[w]
            if d[c] == 1:
                del d[c]
            else:
                d[c] -= 1

    for c, v in enumerate(clique):
        assign(v, c)
    remaining = nv - len(clique)

    def search(used: int, left: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _BudgetExhausted
        if left == 0:
            best[0], best[1] = used, colors[:]
            return best[0] == lower
        # most distinctly-colored neighbors, then lowest colex label
        v = -1
        key = (-1, 0)
        for u in range(nv):
            if colors[u] < 0:
                kk = (len(sat[u]), -u)
                if kk > key:
                    key, v = kk, u
        forbidden = sat[v]
        for c in range(min(used + 1, best[0] - 1)):
            if c in forbidden:
                continue
            assign(v, c)
            done = search(max(used, c + 1), left - 1)
            unassign(v, c)
            if done:
                return True
        return False

    try:
        search(len(clique), remaining)
    except _BudgetExhausted:
        raise _BudgetExhausted(best[0], best[1], nodes[0]) from None
    return best[0], best[1], nodes[0]


def chromatic_number(m: int, k: int, budget: int = 1_000_000) -> ChromaticResult:
    """chi(J(m, k)). Closed forms where known, else exact search within
    ``budget`` nodes, else the Graham-Sloane bound marked upper_bound_only."""
    if not 0 < k <= m:
        raise ValueError(f"need 0 < k <= m, got m={m}, k={k}")
    if k == m:
        return ChromaticResult(1, ChromaticStatus.EXACT, Coloring(m, k, ((k_subsets(m, k)[0],),)))
    if k in (1, m - 1):
        # J(m, 1) and J(m, m-1) are both K_m
        return ChromaticResult(m, ChromaticStatus.EXACT,
                               Coloring(m, k, tuple((v,) for v in k_subsets(m, k))))
    if 2 * k > m:
        # J(m, k) and J(m, m - k) are isomorphic via complementation
        dual = chromatic_number(m, m - k, budget)
        full = (1 << m) - 1
        classes = tuple(tuple(sorted(full ^ v for v in c)) for c in dual.coloring.classes)
        return ChromaticResult(dual.value, dual.status, Coloring(m, k, classes), dual.nodes)
    if k == 2:
        return ChromaticResult(m - 1 if m % 2 == 0 else m, ChromaticStatus.EXACT,
                               _round_robin_edge_coloring(m))
    G = johnson_graph(m, k)
    try:
        chi, colors, nodes = exact_chromatic_number(G, budget)
    except _BudgetExhausted as exc:
        value, colors, nodes = exc.args
        coloring = _coloring_from_assignment(m, k, G.vertices, colors)
        return ChromaticResult(coloring.num_colors, ChromaticStatus.UPPER_BOUND_ONLY,
                               coloring, nodes)
    return ChromaticResult(chi, ChromaticStatus.EXACT,
                           _coloring_from_assignment(m, k, G.vertices, colors), nodes)


def _round_robin_edge_coloring(m: int) -> Coloring:
    """Optimal proper edge coloring of K_m (circle method)."""
    if m % 2 == 1:
        # color {i, j} by i + j mod m: m matchings
        return graham_sloane_coloring(m, 2)
    # vertex m sits at the center, the rest on a circle of m - 1 points
    p = m - 1
    classes = []
    for c in range(p):
        cls = [(1 << c) | (1 << (m - 1))]
        for d in range(1, p // 2 + 1):
            a, b = (c + d) % p, (c - d) % p
            cls.append((1 << a) | (1 << b))
        classes.append(tuple(sorted(cls)))
    return Coloring(m, 2, tuple(classes))
