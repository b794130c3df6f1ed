"""Exact existence search for complementary hypergraphs R with parameters
(n, t, s), and the existence-table generator built on top of it.

The model has one 0/1 variable x_T per t-subset T of [n] (is T an edge of R)
and a derived indicator y_S per (t-s)-subset S (does S have codegree 1).
Constraints:

  C1  every S has at least one selected cover
  C2  y_S = 1  iff  exactly one selected T contains S
  C3  every selected T contains exactly one S with y_S = 1
  C4  every vertex is avoided by at least one selected T

The solver is a DFS over the x_T with propagation driven by per-S counters
(selected covers, unassigned covers). y_S is never branched on.
"""

from __future__ import annotations

import enum
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _engine
from .hypercore import UniformHypergraph, complementary_hypergraph, k_subsets
from .verify import Verdict, verify_complementary, verify_uniquely_saturated

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

@dataclass
class ConstraintModel:
    n: int
    t: int
    s: int
    edge_sets: tuple[int, ...]               # x_T, colex order
    codegree_sets: tuple[int, ...]           # y_S, colex order
    subs: list[list[int]]                    # S indices inside each T
    covers: list[list[int]]                  # T indices containing each S
    avoid: list[list[int]]                   # T indices missing each vertex

    @property
    def num_edge_vars(self) -> int:
        return len(self.edge_sets)

    @property
    def num_codegree_vars(self) -> int:
        return len(self.codegree_sets)

    def constraints(self):
        """Yield the constraints as (kind, data) tuples referencing variable
        indices; mainly for inspection and tests."""
        for j, cov in enumerate(self.covers):
            yield ("C1", j, tuple(cov))
            yield ("C2", j, tuple(cov))
        for i, sub in enumerate(self.subs):
            yield ("C3", i, tuple(sub))
        for v, av in enumerate(self.avoid):
            yield ("C4", v + 1, tuple(av))


def _check_params(n: int, t: int, s: int) -> None:
    if not 1 <= s < t < n:
        raise ValueError(f"need 1 <= s < t < n, got n={n}, t={t}, s={s}")


def build_model(n: int, t: int, s: int) -> ConstraintModel:
    _check_params(n, t, s)
    d = t - s
    Ts = k_subsets(n, t)
    Ss = k_subsets(n, d)
    s_index = {S: j for j, S in enumerate(Ss)}
    subs: list[list[int]] = []
    covers: list[list[int]] = [[] for _ in Ss]
    from .hypercore import subsets_of
    for i, T in enumerate(Ts):
        sub = sorted(s_index[S] for S in subsets_of(T, d))
        subs.append(sub)
        for j in sub:
            covers[j].append(i)
    avoid = [[i for i, T in enumerate(Ts) if not T >> v & 1] for v in range(n)]
    return ConstraintModel(n, t, s, Ts, Ss, subs, covers, avoid)


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    LIMIT = "LIMIT"       # resource limit hit; says nothing about existence


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    conflicts: int = 0
    wall_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.propagations += other.propagations
        self.conflicts += other.conflicts

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "propagations": self.propagations,
                "conflicts": self.conflicts, "wall_time": round(self.wall_time, 3)}


@dataclass
class SearchResult:
    status: Status
    n: int
    t: int
    s: int
    certificate: UniformHypergraph | None = None
    all_certificates: list[UniformHypergraph] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def k(self) -> int:
        return self.n - self.t

    @property
    def r(self) -> int:
        return self.k + self.s


@dataclass
class SearchConfig:
    symmetry: bool = False          # see symmetry_assumptions
    all_solutions: bool = False     # n <= 7 only
    node_limit: int | None = None
    time_limit: float | None = None
    parallel: int = 1
    deterministic: bool = True
    split_depth: int = 3


def symmetry_assumptions(model: ConstraintModel) -> list[tuple[int, int]]:
    """Fix {1..t} as an edge whose private (t-s)-subset is {1..t-s}.

    Any solution can be relabeled into this form: send one of its edges to
    {1..t} and, inside it, send that edge's unique codegree-1 subset to
    {1..t-s}. The private subset has no other cover, so every other t-set
    containing {1..t-s} is excluded.
    """
    d = model.t - model.s
    j0 = model.codegree_sets.index((1 << d) - 1)
    return [(0, 1)] + [(i, 0) for i in model.covers[j0] if i != 0]


class _Engine:
    """Python handle on the compiled search state for one model."""

    def __init__(self, model: ConstraintModel, config: SearchConfig):
        self.m = model
        self.cfg = config
        outside = [[v for v in range(model.n) if not T >> v & 1] for T in model.edge_sets]
        self.mdl = _engine.make_model(model.subs, model.covers, outside, model.avoid)
        zc0 = math.comb(model.t, model.t - model.s)
        self.st = _engine.make_state(model.num_edge_vars, model.covers, model.avoid, zc0)
        self.solutions: list[list[int]] = []

    @property
    def info(self):
        return self.st[-1]

    def stats(self) -> SearchStats:
        info = self.info
        return SearchStats(int(info[_engine.NODES]), int(info[_engine.PROPS]),
                           int(info[_engine.CONFL]))

    def root(self, assumptions=()) -> bool:
        queue = list(assumptions)
        if self.cfg.symmetry:
            queue[:0] = symmetry_assumptions(self.m)
        for i, value in queue:
            if not _engine.assume(self.mdl, self.st, i, value):
                return False
        return True

    def selected(self) -> list[int]:
        val = self.st[0]
        if (val < 0).any():
            raise AssertionError("leaf reached with unassigned variables")
        return [int(i) for i in np.flatnonzero(val == 1)]

    def search(self) -> Status:
        """Run to completion or to a limit. Solutions are collected in
        ``self.solutions``; only the first one unless all_solutions is set."""
        cfg = self.cfg
        deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit
        chunk = _CHUNK
        while True:
            if cfg.node_limit is not None:
                left = cfg.node_limit - int(self.info[_engine.NODES])
                if left <= 0:
                    return Status.LIMIT
                chunk = min(_CHUNK, left)
            code = _engine.run(self.mdl, self.st, chunk)
            if code == _engine.SOLUTION:
                self.solutions.append(self.selected())
                if not cfg.all_solutions:
                    return Status.SAT
            elif code == _engine.EXHAUSTED:
                return Status.SAT if self.solutions else Status.UNSAT
            if deadline is not None and time.monotonic() > deadline:
                return Status.LIMIT

    def frontier(self, depth: int) -> list[list[tuple[int, int]]]:
        """Decision prefixes of the first ``depth`` branching levels whose
        propagation does not fail outright."""
        out: list[list[tuple[int, int]]] = []
        mdl, st = self.mdl, self.st

        def walk(prefix, level):
            i = int(_engine.pick(mdl, st))
            if level == depth or i < 0:
                out.append(list(prefix))
                return
            for value in (1, 0):
                mark = int(self.info[_engine.TL])
                if _engine.assume(mdl, st, i, value):
                    walk(prefix + [(i, value)], level + 1)
                _engine.undo_to(mdl, st, mark)

        walk([], 0)
        return out


# decisions per compiled call; the time limit is checked between calls
_CHUNK = 20_000


def _certificate(model: ConstraintModel, selected: list[int]) -> UniformHypergraph:
    return UniformHypergraph(model.n, model.t, tuple(model.edge_sets[i] for i in selected))


def _solve_serial(model: ConstraintModel, config: SearchConfig, assumptions=()):
    engine = _Engine(model, config)
    status = Status.UNSAT
    if engine.root(assumptions):
        status = engine.search()
    if engine.solutions:
        status = Status.SAT
    return status, engine.solutions, engine.stats()


def _solve_task(args):
    n, t, s, config, assumptions = args
    model = build_model(n, t, s)
    status, sols, stats = _solve_serial(model, config, assumptions)
    return status, sols, stats


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("UKSAT_THREADS", "1")))
    except ValueError:
        return 1


def solve_existence(n: int, t: int, s: int, config: SearchConfig | None = None) -> SearchResult:
    """Decide whether a t-uniform R on [n] with the three properties exists.

    SAT results carry a certificate that has passed ``verify_complementary``
    and whose complementary hypergraph passed ``verify_uniquely_saturated``.
    UNSAT is only reported after the search space is exhausted.
    """
    _check_params(n, t, s)
    config = config or SearchConfig()
    if config.all_solutions and n > 7:
        raise ValueError("all-solutions mode is limited to n <= 7")
    t0 = time.monotonic()
    model = build_model(n, t, s)
    if config.parallel > 1:
        status, sols, stats = _solve_parallel(model, config)
    else:
        status, sols, stats = _solve_serial(model, config)
    stats.wall_time = time.monotonic() - t0
    result = SearchResult(status, n, t, s, stats=stats)
    if sols:
        certs = [_certificate(model, sel) for sel in sols]
        for R in certs:
            _certify(R, t, s)
        result.certificate = certs[0]
        if config.all_solutions:
            result.all_certificates = certs
    log.debug("solve_existence(%d,%d,%d): %s in %.2fs, %d nodes", n, t, s,
              status.value, stats.wall_time, stats.nodes)
    return result


def _certify(R: UniformHypergraph, t: int, s: int) -> None:
    v = verify_complementary(R, t, s)
    if not v.ok:
        raise AssertionError(f"solver returned an invalid certificate: {v.describe()}")
    H = complementary_hypergraph(R)
    v2 = verify_uniquely_saturated(H, H.k + s)
    if not v2.ok:
        raise AssertionError(f"certificate reconstruction is not saturated: {v2.describe()}")


def _solve_parallel(model: ConstraintModel, config: SearchConfig):
    probe = _Engine(model, config)
    stats = SearchStats()
    if not probe.root():
        return Status.UNSAT, [], probe.stats()
    prefixes = probe.frontier(config.split_depth)
    stats.merge(probe.stats())
    sub_cfg = SearchConfig(symmetry=config.symmetry, all_solutions=config.all_solutions,
                           node_limit=config.node_limit, time_limit=config.time_limit)
    tasks = [(model.n, model.t, model.s, sub_cfg, p) for p in prefixes]
    solutions: list[list[int]] = []
    limited = False
    with ProcessPoolExecutor(max_workers=config.parallel) as pool:
        futures = [pool.submit(_solve_task, task) for task in tasks]
        # results are consumed in frontier order, so the first certificate
        # is the same one the serial search would reach first
        for fut in futures:
            status, sols, st = fut.result()
            stats.merge(st)
            if status is Status.LIMIT:
                limited = True
            solutions.extend(sols)
            if sols and not config.all_solutions and config.deterministic:
                for f in futures:
                    f.cancel()
                break
    if solutions:
        return Status.SAT, solutions if config.all_solutions else solutions[:1], stats
    return (Status.LIMIT if limited else Status.UNSAT), [], stats


# ---------------------------------------------------------------------------
# existence tables
# ---------------------------------------------------------------------------

class CellStatus(enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    BOUND_EXCLUDED = "bound_excluded"
    UNKNOWN = "unknown"


# provenance labels used in table output
PROV_BOUND = "bound"
PROV_DOUBLE_STAR = "thm3.2"
PROV_TAU = "thm4.5"
PROV_NEAR_COMPLETE = "thm5.1"
PROV_SEARCH = "search"


@dataclass
class TableCell:
    k: int
    ell: int
    s: int
    status: CellStatus
    provenance: str | None = None
    stats: SearchStats | None = None
    certificate: UniformHypergraph | None = None

    @property
    def r(self) -> int:
        return self.k + self.s

    @property
    def n(self) -> int:
        return self.r + self.ell

    @property
    def glyph(self) -> str:
        if self.status is CellStatus.UNKNOWN:
            return "?"
        mark = "Y" if self.status is CellStatus.EXISTS else "N"
        return f"{mark}:{self.provenance}"

    def to_json(self) -> dict:
        if self.status is CellStatus.UNKNOWN:
            prov = "unknown"
        elif self.provenance in (PROV_BOUND, PROV_SEARCH):
            prov = self.provenance
        elif self.status is CellStatus.EXISTS:
            prov = f"construction:{self.provenance}"
        else:
            prov = f"theorem:{self.provenance}"
        out = {"k": self.k, "n": self.n, "r": self.r, "ell": self.ell, "s": self.s,
               "status": self.status.value, "glyph": self.glyph, "provenance": prov,
               "stats": None if self.stats is None else self.stats.to_json()}
        if self.certificate is not None:
            out["certificate"] = {"n": self.certificate.n, "t": self.certificate.k,
                                  "edges": [list(e) for e in self.certificate.edge_lists()]}
        return out


@dataclass
class ExistenceTable:
    k: int
    ell_values: list[int]
    s_values: list[int]
    cells: dict[tuple[int, int], TableCell]

    def cell(self, ell: int, s: int) -> TableCell:
        return self.cells[(ell, s)]

    def to_tsv(self) -> str:
        head = [f"k={self.k}"] + [f"r={self.k + s}" for s in self.s_values]
        lines = ["\t".join(head)]
        for ell in self.ell_values:
            row = [f"n=r+{ell}"] + [self.cells[(ell, s)].glyph for s in self.s_values]
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"

    def monotonicity_report(self) -> list[dict]:
        """Per row: does every known exists-cell come before every known
        non-existence cell? Reported, never enforced."""
        out = []
        for ell in self.ell_values:
            seen_no = None
            broken = []
            for s in self.s_values:
                st = self.cells[(ell, s)].status
                if st is CellStatus.UNKNOWN:
                    continue
                if st is CellStatus.EXISTS:
                    if seen_no is not None:
                        broken.append({"no_at_r": self.k + seen_no, "yes_at_r": self.k + s})
                elif seen_no is None:
                    seen_no = s
            out.append({"ell": ell, "monotone": not broken, "exceptions": broken})
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell_values": list(self.ell_values),
            "s_values": list(self.s_values),
            "cells": [self.cells[(ell, s)].to_json()
                      for ell in self.ell_values for s in self.s_values],
            "row_monotonicity": self.monotonicity_report(),
        }


def _construction_for(k: int, ell: int, s: int, colorings: dict, chi_budget: int):
    """Provenance label of a construction covering the cell, or None."""
    from .constructions import OutOfRange, near_complete_plan, tau_construction_range
    from .johnson import chromatic_number

    r = k + s
    n = r + ell
    if k >= 4 and r <= 2 * k - 3:
        return PROV_DOUBLE_STAR
    if ell == 1 and k >= 3:
        try:
            near_complete_plan(k, n)
            return PROV_NEAR_COMPLETE
        except OutOfRange:
            pass
    if k >= 3:
        key = (ell + k - 1, k - 1)
        if key not in colorings:
            colorings[key] = chromatic_number(*key, budget=chi_budget).value
        lo, hi = tau_construction_range(k, ell, colorings[key])
        if lo <= n <= hi:
            return PROV_TAU
    return None


def _build_construction(prov: str, k: int, ell: int, s: int) -> UniformHypergraph:
    """The complementary hypergraph R for a construction-covered cell."""
    from .constructions import (double_star, near_complete_construction,
                                tau_critical_construction)
    from .hypercore import complement_hypergraph

    r = k + s
    n = r + ell
    if prov == PROV_DOUBLE_STAR:
        return double_star(n, k, r)
    if prov == PROV_NEAR_COMPLETE:
        Hc = near_complete_construction(k, n)
    else:
        Hc = tau_critical_construction(k, ell, n)
    return complementary_hypergraph(complement_hypergraph(Hc))


def existence_table(k: int, ell_range, s_range, budget: float | None = 60.0,
                    certify: bool = False, chi_budget: int = 200_000,
                    parallel: int = 1, symmetry: bool = False) -> ExistenceTable:
    """Classify every cell (ell = n - r, s = r - k) of an existence table.

    Cells are settled, in order, by the n - r = 1 necessity condition, the
    nonexistence bound, one of the three constructions, or an exact search
    limited to ``budget`` seconds (unknown when the limit is hit). With
    ``certify`` the construction cells are built and verified as well;
    ``symmetry`` is passed on to the searches.
    """
    from .transversal import nonexistence_bound

    if k < 2:
        raise ValueError("k must be at least 2")
    ells = [e for e in ell_range if e >= 1]
    ss = [s for s in s_range if s >= 1]
    colorings: dict = {}
    cells: dict[tuple[int, int], TableCell] = {}
    for ell in ells:
        for s in ss:
            r = k + s
            n = r + ell
            if ell == 1 and k >= 3 and 4 * n > (k + 2) ** 2:
                cells[(ell, s)] = TableCell(k, ell, s, CellStatus.NOT_EXISTS, PROV_NEAR_COMPLETE)
                continue
            if n >= nonexistence_bound(k, ell):
                cells[(ell, s)] = TableCell(k, ell, s, CellStatus.BOUND_EXCLUDED, PROV_BOUND)
                continue
            prov = _construction_for(k, ell, s, colorings, chi_budget)
            if prov is not None:
                cert = _build_construction(prov, k, ell, s) if certify else None
                if cert is not None:
                    _certify(cert, n - k, s)
                cells[(ell, s)] = TableCell(k, ell, s, CellStatus.EXISTS, prov, certificate=cert)
                continue
            res = solve_existence(n, n - k, s, SearchConfig(time_limit=budget, parallel=parallel,
                                                             symmetry=symmetry))
            if res.status is Status.SAT:
                cell = TableCell(k, ell, s, CellStatus.EXISTS, PROV_SEARCH, res.stats, res.certificate)
            elif res.status is Status.UNSAT:
                cell = TableCell(k, ell, s, CellStatus.NOT_EXISTS, PROV_SEARCH, res.stats)
            else:
                cell = TableCell(k, ell, s, CellStatus.UNKNOWN, None, res.stats)
            cells[(ell, s)] = cell
            log.info("k=%d n=%d r=%d: %s", k, n, r, cell.glyph)
    return ExistenceTable(k, ells, ss, cells)
