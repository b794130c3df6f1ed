"""Uniform hypergraphs on the labeled vertex set {1, ..., n}.

Vertex sets are stored as int bitmasks: vertex ``i`` is bit ``i - 1``.
With that encoding the natural integer order of two masks of equal size is
the colex order of the underlying sets, which is the order edges are kept in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

SetLike = Union[int, Iterable[int]]


# ---------------------------------------------------------------------------
# bitmask helpers
# ---------------------------------------------------------------------------

def to_mask(vertices: SetLike) -> int:
    """Encode an iterable of 1-based vertex labels (or pass a mask through)."""
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertex labels are 1-based, got {v}")
        m |= 1 << (v - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted 1-based labels of the vertices in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=None)
def k_subsets(n: int, k: int) -> tuple[int, ...]:
    """All k-subsets of [n] as masks, in colex order."""
    if k < 0 or k > n:
        return ()
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(n), k)))


def subsets_of(mask: int, size: int) -> Iterator[int]:
    """All ``size``-subsets of the set ``mask`` (as masks)."""
    bits = [1 << (v - 1) for v in members(mask)]
    for c in combinations(bits, size):
        yield sum(c)


def colex_key(vertices: Iterable[int]) -> int:
    return to_mask(vertices)


def lex_least(masks: Iterable[int]) -> int:
    """The set that comes first when sets are compared as sorted tuples."""
    return min(masks, key=members)


# dense 0/1 matrices are used for small ground sets; past this many entries
# the set-based code paths take over
DENSE_LIMIT = 1 << 21


def dense_ok(n: int, a: int, b: int) -> bool:
    return n <= 63 and math.comb(n, a) * math.comb(n, b) <= DENSE_LIMIT


@lru_cache(maxsize=None)
def subset_array(n: int, k: int) -> np.ndarray:
    """``k_subsets(n, k)`` as a read-only uint64 array (sorted)."""
    arr = np.array(k_subsets(n, k), dtype=np.uint64)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=128)
def inclusion_matrix(n: int, a: int, b: int) -> np.ndarray:
    """0/1 matrix with rows the a-subsets and columns the b-subsets of [n]
    (colex order); entry 1 when the column set lies inside the row set."""
    A = subset_array(n, a)[:, None]
    B = subset_array(n, b)[None, :]
    m = ((A & B) == B).astype(np.int32)
    m.flags.writeable = False
    return m


@lru_cache(maxsize=None)
def lex_rank(n: int, k: int) -> np.ndarray:
    """Rank in lexicographic order of each k-subset, indexed by colex position."""
    order = sorted(range(math.comb(n, k)), key=lambda i: members(k_subsets(n, k)[i]))
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    rank.flags.writeable = False
    return rank


def lex_first(n: int, k: int, positions: np.ndarray) -> int:
    """Mask of the lexicographically least k-set among the given colex positions."""
    pos = positions[np.argmin(lex_rank(n, k)[positions])]
    return k_subsets(n, k)[int(pos)]


def index_of(n: int, k: int, masks) -> np.ndarray:
    """Positions of the given k-set masks in colex order."""
    return np.searchsorted(subset_array(n, k), np.asarray(masks, dtype=np.uint64))


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemParams:
    """Saturation parameters (n, k, r) with the derived t, s and ell."""

    n: int
    k: int
    r: int

    def __post_init__(self):
        if not (2 <= self.k < self.r < self.n):
            raise ValueError(
                f"need 2 <= k < r < n, got n={self.n}, k={self.k}, r={self.r}")

    @property
    def t(self) -> int:
        return self.n - self.k

    @property
    def s(self) -> int:
        return self.r - self.k

    @property
    def ell(self) -> int:
        return self.n - self.r

    @classmethod
    def from_complementary(cls, n: int, t: int, s: int) -> "ProblemParams":
        k = n - t
        return cls(n=n, k=k, r=k + s)


@dataclass(frozen=True, eq=False)
class UniformHypergraph:
    """An immutable k-uniform hypergraph on [n].

    ``edges`` is a tuple of bitmasks in colex order. Use :meth:`from_edges`
    to build one from vertex lists.
    """

    n: int
    k: int
    edges: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.k <= self.n):
            raise ValueError(f"uniformity k={self.k} must satisfy 0 <= k <= n={self.n}")
        edges = tuple(sorted(self.edges))
        limit = 1 << self.n
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise ValueError(f"repeated edge {members(a)}")
        for e in edges:
            if e >= limit or e < 0:
                raise ValueError(f"edge {members(e)} has a vertex outside [1, {self.n}]")
            if e.bit_count() != self.k:
                raise ValueError(f"edge {members(e)} does not have {self.k} vertices")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_edge_set", frozenset(edges))

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[SetLike]) -> "UniformHypergraph":
        return cls(n, k, tuple(to_mask(e) for e in edges))

    @classmethod
    def complete(cls, n: int, k: int) -> "UniformHypergraph":
        return cls(n, k, k_subsets(n, k))

    @classmethod
    def empty(cls, n: int, k: int) -> "UniformHypergraph":
        return cls(n, k, ())

    @property
    def edge_set(self) -> frozenset:
        return self._edge_set

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, vertices: SetLike) -> bool:
        return to_mask(vertices) in self._edge_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniformHypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"UniformHypergraph(n={self.n}, k={self.k}, m={len(self.edges)})"

    def edge_lists(self) -> list[tuple[int, ...]]:
        return [members(e) for e in self.edges]

    def degree(self, v: int) -> int:
        bit = 1 << (v - 1)
        return sum(1 for e in self.edges if e & bit)

    def isolated_vertices(self) -> tuple[int, ...]:
        covered = 0
        for e in self.edges:
            covered |= e
        return members(self.vertex_mask & ~covered)

    def without_edge(self, edge: SetLike) -> "UniformHypergraph":
        e = to_mask(edge)
        if e not in self._edge_set:
            raise ValueError(f"{members(e)} is not an edge")
        return UniformHypergraph(self.n, self.k, tuple(x for x in self.edges if x != e))

    def non_edges(self) -> Iterator[int]:
        """k-sets of [n] that are not edges, colex order."""
        es = self._edge_set
        return (S for S in k_subsets(self.n, self.k) if S not in es)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def complement_hypergraph(H: UniformHypergraph) -> UniformHypergraph:
    """The k-uniform complement: all k-sets of [n] that are not edges of H."""
    return UniformHypergraph(H.n, H.k, tuple(H.non_edges()))


def complementary_hypergraph(H: UniformHypergraph) -> UniformHypergraph:
    """The (n-k)-uniform hypergraph whose edges are the complements of the
    non-edges of ``H``. Applying it twice returns ``H``."""
    if H.k == H.n:
        raise ValueError("complementary hypergraph is degenerate for k = n (t = 0)")
    full = H.vertex_mask
    return UniformHypergraph(H.n, H.n - H.k, tuple(full ^ S for S in H.non_edges()))


def codegree(R: UniformHypergraph, S: SetLike) -> int:
    """Number of edges of ``R`` containing ``S``."""
    S = to_mask(S)
    if S.bit_count() > R.k:
        raise ValueError(f"|S| = {S.bit_count()} exceeds the uniformity {R.k}")
    return sum(1 for e in R.edges if e & S == S)


def is_dominating_vertex(H: UniformHypergraph, v: int) -> bool:
    """True iff every k-set through ``v`` is an edge of ``H``."""
    if not 1 <= v <= H.n:
        raise ValueError(f"vertex {v} outside [1, {H.n}]")
    if H.k == 0:
        return True
    return H.degree(v) == math.comb(H.n - 1, H.k - 1)


def contains_clique(H: UniformHypergraph, r: int) -> tuple[int, ...] | None:
    """Return some r-set all of whose k-subsets are edges, or None.

    The search grows a candidate clique in increasing vertex order and keeps
    the set of vertices that are still compatible with every (k-1)-subset of
    the partial clique.
    """
    n, k = H.n, H.k
    if not k <= r <= n:
        raise ValueError(f"clique size r={r} must satisfy k={k} <= r <= n={n}")
    found = _find_clique(H.edge_set, n, k, r)
    return None if found is None else members(found)


def _find_clique(edge_set, n: int, k: int, r: int) -> int | None:
    if r == 0:
        return 0
    start = full_mask(n)
    if k == 0:
        return full_mask(r)
    if k == 1:
        start = sum(e for e in edge_set)

    def extend(clique: int, size: int, cand: int) -> int | None:
        if size == r:
            return clique
        while cand:
            if cand.bit_count() < r - size:
                return None
            low = cand & -cand
            cand ^= low
            new = clique | low
            if k == 1 or size + 1 < k - 1:
                nxt = cand
            else:
                # w survives iff D | w is an edge for every (k-1)-subset D of
                # the new clique that contains low; the others were checked
                # when their largest vertex was added
                cores = [c | low for c in subsets_of(clique, k - 2)]
                nxt = 0
                rest = cand
                while rest:
                    w = rest & -rest
                    rest ^= w
                    if all((c | w) in edge_set for c in cores):
                        nxt |= w
            got = extend(new, size + 1, nxt)
            if got is not None:
                return got
        return None

    return extend(0, 0, start)


def max_clique_size(H: UniformHypergraph) -> int:
    """Largest r (>= k) such that H contains K_r^(k); k - 1 if no edge."""
    best = H.k - 1
    for r in range(H.k, H.n + 1):
        if _find_clique(H.edge_set, H.n, H.k, r) is None:
            break
        best = r
    return best


# ---------------------------------------------------------------------------
# ".uhg" text format
# ---------------------------------------------------------------------------

class UHGFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def dumps_uhg(H: UniformHypergraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{H.n} {H.k} {len(H.edges)}")
    lines.extend(" ".join(map(str, members(e))) for e in H.edges)
    return "\n".join(lines) + "\n"


def loads_uhg(text: str) -> UniformHypergraph:
    """Parse the ``.uhg`` format; errors carry 1-based line numbers."""
    header = None
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise UHGFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 3:
                raise UHGFormatError("header must be 'n k m'", lineno)
            header = (lineno, nums)
        else:
            rows.append((lineno, nums))
    if header is None:
        raise UHGFormatError("empty file: missing 'n k m' header")
    hline, (n, k, m) = header
    if n < 1 or not 0 <= k <= n or m < 0:
        raise UHGFormatError(f"invalid header values n={n} k={k} m={m}", hline)
    if len(rows) != m:
        last = rows[-1][0] if rows else hline
        raise UHGFormatError(f"expected {m} edge lines, found {len(rows)}", last)
    edges = []
    prev = -1
    for lineno, nums in rows:
        if len(nums) != k:
            raise UHGFormatError(f"edge has {len(nums)} vertices, expected {k}", lineno)
        if any(b <= a for a, b in zip(nums, nums[1:])):
            raise UHGFormatError("edge labels must be strictly increasing", lineno)
        if nums and (nums[0] < 1 or nums[-1] > n):
            raise UHGFormatError(f"vertex label outside [1, {n}]", lineno)
        e = to_mask(nums)
        if e <= prev:
            raise UHGFormatError("edges must be distinct and in colex order", lineno)
        prev = e
        edges.append(e)
    return UniformHypergraph(n, k, tuple(edges))


def read_uhg(path) -> UniformHypergraph:
    with open(path, encoding="utf-8") as fh:
        return loads_uhg(fh.read())


def write_uhg(H: UniformHypergraph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_uhg(H, comment))


def binom(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def edges_from_lists(lists: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(to_mask(e) for e in lists)
