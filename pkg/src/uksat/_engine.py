"""Compiled DFS core for the existence search.

All state lives in flat int64 arrays so the search can be stopped after a
node budget and resumed later; the Python side owns time limits.

Model tuple (CSR pairs):
    sub_ptr, sub_idx    S indices inside each T
    cov_ptr, cov_idx    T indices containing each S
    out_ptr, out_idx    vertices missing from each T
    av_ptr, av_idx      T indices missing each vertex

State tuple:
    val      -1 unassigned, 0/1 assigned
    ones     processed selected covers per S
    free     covers per S not yet processed as 0 or 1
    zc       per T, number of its S with ones == 0
    vones    processed selected T avoiding each vertex
    vfree    T avoiding each vertex not yet processed
    trail    assignment order; entries below qhead have been applied
    dirty    selected T whose (C2, C3) check is pending, plus in-stack flags
    dvar, dval, dmark   decision stack
    info     scalars, see the indices below

Assignments are written to ``val`` right away and applied to the counters
when propagation reaches them on the trail, so counters treat pending
entries as free. Every rule that forces a value only touches unassigned
variables, so conflicts always surface through the counters.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - plain Python fallback
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

TL, QH, DL, DN, NODES, PROPS, CONFL, PHASE = range(8)
INFO_SIZE = 8

EXHAUSTED, SOLUTION, BUDGET = 0, 1, 2


@njit(cache=True)
def _set(st, i, v):
    val, trail, info = st[0], st[6], st[12]
    cur = val[i]
    if cur == v:
        return True
    if cur >= 0:
        return False
    val[i] = v
    trail[info[TL]] = i
    info[TL] += 1
    return True


@njit(cache=True)
def _mark(st, i):
    dirty, indirty, info = st[7], st[8], st[12]
    if indirty[i] == 0:
        indirty[i] = 1
        dirty[info[DN]] = i
        info[DN] += 1


@njit(cache=True)
def _clear_dirty(st):
    dirty, indirty, info = st[7], st[8], st[12]
    for d in range(info[DN]):
        indirty[dirty[d]] = 0
    info[DN] = 0


@njit(cache=True)
def _apply(mdl, st, i):
    sub_ptr, sub_idx, cov_ptr, cov_idx, out_ptr, out_idx, av_ptr, av_idx = mdl
    val, ones, free, zc, vones, vfree = st[0], st[1], st[2], st[3], st[4], st[5]
    ok = True
    if val[i] == 1:
        _mark(st, i)
        for p in range(sub_ptr[i], sub_ptr[i + 1]):
            j = sub_idx[p]
            free[j] -= 1
            ones[j] += 1
            if ones[j] == 1:
                for q in range(cov_ptr[j], cov_ptr[j + 1]):
                    i2 = cov_idx[q]
                    zc[i2] -= 1
                    # selecting i2 now would leave it without a private S
                    if zc[i2] == 0 and val[i2] < 0:
                        _set(st, i2, 0)
            elif ones[j] == 2:
                for q in range(cov_ptr[j], cov_ptr[j + 1]):
                    i2 = cov_idx[q]
                    if val[i2] == 1:
                        _mark(st, i2)
        for p in range(out_ptr[i], out_ptr[i + 1]):
            v = out_idx[p]
            vfree[v] -= 1
            vones[v] += 1
    else:
        for p in range(sub_ptr[i], sub_ptr[i + 1]):
            j = sub_idx[p]
            free[j] -= 1
            if ones[j] == 0:
                if free[j] == 0:
                    ok = False
                elif free[j] == 1:
                    for q in range(cov_ptr[j], cov_ptr[j + 1]):
                        i2 = cov_idx[q]
                        if val[i2] < 0:
                            _set(st, i2, 1)
                            break
            elif ones[j] == 1:
                for q in range(cov_ptr[j], cov_ptr[j + 1]):
                    i2 = cov_idx[q]
                    if val[i2] == 1:
                        _mark(st, i2)
        for p in range(out_ptr[i], out_ptr[i + 1]):
            v = out_idx[p]
            vfree[v] -= 1
            if vones[v] == 0:
                if vfree[v] == 0:
                    ok = False
                elif vfree[v] == 1:
                    for q in range(av_ptr[v], av_ptr[v + 1]):
                        i2 = av_idx[q]
                        if val[i2] < 0:
                            _set(st, i2, 1)
                            break
    return ok


@njit(cache=True)
def _unapply(mdl, st, i):
    sub_ptr, sub_idx, cov_ptr, cov_idx, out_ptr, out_idx, av_ptr, av_idx = mdl
    val, ones, free, zc, vones, vfree = st[0], st[1], st[2], st[3], st[4], st[5]
    if val[i] == 1:
        for p in range(sub_ptr[i], sub_ptr[i + 1]):
            j = sub_idx[p]
            free[j] += 1
            ones[j] -= 1
            if ones[j] == 0:
                for q in range(cov_ptr[j], cov_ptr[j + 1]):
                    zc[cov_idx[q]] += 1
        for p in range(out_ptr[i], out_ptr[i + 1]):
            v = out_idx[p]
            vfree[v] += 1
            vones[v] -= 1
    else:
        for p in range(sub_ptr[i], sub_ptr[i + 1]):
            free[sub_idx[p]] += 1
        for p in range(out_ptr[i], out_ptr[i + 1]):
            vfree[out_idx[p]] += 1


@njit(cache=True)
def undo_to(mdl, st, mark):
    val, trail, info = st[0], st[6], st[12]
    qh = info[QH]
    for p in range(info[TL] - 1, mark - 1, -1):
        i = trail[p]
        if p < qh:
            _unapply(mdl, st, i)
        val[i] = -1
    info[TL] = mark
    if qh > mark:
        info[QH] = mark


@njit(cache=True)
def _check(mdl, st, i):
    """(C2, C3) on a selected, applied T: exactly one S may end at codegree 1."""
    sub_ptr, sub_idx, cov_ptr, cov_idx = mdl[0], mdl[1], mdl[2], mdl[3]
    val, ones, free = st[0], st[1], st[2]
    sure = 0
    maybe = 0
    last = -1
    for p in range(sub_ptr[i], sub_ptr[i + 1]):
        j = sub_idx[p]
        if ones[j] == 1:
            if free[j] == 0:
                sure += 1
            else:
                maybe += 1
                last = j
    if sure >= 2:
        return False
    if sure == 1:
        # every other candidate needs a second cover
        if maybe:
            for p in range(sub_ptr[i], sub_ptr[i + 1]):
                j = sub_idx[p]
                if ones[j] == 1 and free[j] == 1:
                    for q in range(cov_ptr[j], cov_ptr[j + 1]):
                        i2 = cov_idx[q]
                        if val[i2] < 0:
                            _set(st, i2, 1)
                            break
        return True
    if maybe == 0:
        return False
    if maybe == 1:
        for q in range(cov_ptr[last], cov_ptr[last + 1]):
            i2 = cov_idx[q]
            if val[i2] < 0:
                _set(st, i2, 0)
    return True


@njit(cache=True)
def propagate(mdl, st):
    val, trail, dirty, indirty, info = st[0], st[6], st[7], st[8], st[12]
    while True:
        while info[QH] < info[TL]:
            i = trail[info[QH]]
            info[QH] += 1
            info[PROPS] += 1
            if not _apply(mdl, st, i):
                _clear_dirty(st)
                info[CONFL] += 1
                return False
        if info[DN] == 0:
            return True
        info[DN] -= 1
        i = dirty[info[DN]]
        indirty[i] = 0
        if val[i] == 1 and not _check(mdl, st, i):
            _clear_dirty(st)
            info[CONFL] += 1
            return False


@njit(cache=True)
def _most_constrained(st):
    ones, free = st[1], st[2]
    best_j = -1
    best_f = 1 << 62
    for j in range(ones.shape[0]):
        if ones[j] == 0 and free[j] < best_f:
            best_j = j
            best_f = free[j]
            if best_f <= 2:
                break
    return best_j


@njit(cache=True)
def pick(mdl, st):
    """An unassigned cover of the uncovered S with the fewest free covers,
    preferring the one that covers the most uncovered S."""
    cov_ptr, cov_idx = mdl[2], mdl[3]
    val, zc = st[0], st[3]
    best_j = _most_constrained(st)
    if best_j < 0:
        return -1
    best_i = -1
    best_z = -1
    for q in range(cov_ptr[best_j], cov_ptr[best_j + 1]):
        i2 = cov_idx[q]
        if val[i2] < 0 and zc[i2] > best_z:
            best_i = i2
            best_z = zc[i2]
    return best_i


@njit(cache=True)
def assume(mdl, st, i, v):
    """Assign x_i = v at the current level and propagate."""
    if not _set(st, i, v):
        st[12][CONFL] += 1
        return False
    return propagate(mdl, st)


@njit(cache=True)
def run(mdl, st, max_nodes):
    """Continue the DFS for at most ``max_nodes`` decisions.

    Returns SOLUTION with the assignment left in ``val`` (the next call
    resumes by backtracking), EXHAUSTED when the space is done, or BUDGET.
    """
    dvar, dval, dmark, info = st[9], st[10], st[11], st[12]
    budget = max_nodes
    while True:
        if info[PHASE] == 0:
            i = pick(mdl, st)
            if i < 0:
                info[PHASE] = 1
                return SOLUTION
            if budget <= 0:
                return BUDGET
            budget -= 1
            info[NODES] += 1
            d = info[DL]
            dvar[d] = i
            dval[d] = 1
            dmark[d] = info[TL]
            info[DL] = d + 1
            _set(st, i, 1)
            if propagate(mdl, st):
                continue
            info[PHASE] = 1
        while True:
            d = info[DL]
            if d == 0:
                return EXHAUSTED
            d -= 1
            undo_to(mdl, st, dmark[d])
            if dval[d] == 1:
                dval[d] = 0
                _set(st, dvar[d], 0)
                if propagate(mdl, st):
                    info[PHASE] = 0
                    break
            else:
                info[DL] = d


def _csr(rows):
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    idx = np.fromiter((x for r in rows for x in r), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def make_model(subs, covers, outside, avoid):
    return (*_csr(subs), *_csr(covers), *_csr(outside), *_csr(avoid))


def make_state(num_t: int, covers, avoid, zc0: int):
    N = num_t
    val = np.full(N, -1, dtype=np.int64)
    ones = np.zeros(len(covers), dtype=np.int64)
    free = np.array([len(c) for c in covers], dtype=np.int64)
    zc = np.full(N, zc0, dtype=np.int64)
    vones = np.zeros(len(avoid), dtype=np.int64)
    vfree = np.array([len(a) for a in avoid], dtype=np.int64)
    trail = np.zeros(N, dtype=np.int64)
    dirty = np.zeros(N, dtype=np.int64)
    indirty = np.zeros(N, dtype=np.int64)
    dvar = np.zeros(N + 1, dtype=np.int64)
    dval = np.zeros(N + 1, dtype=np.int64)
    dmark = np.zeros(N + 1, dtype=np.int64)
    info = np.zeros(INFO_SIZE, dtype=np.int64)
    return (val, ones, free, zc, vones, vfree, trail, dirty, indirty,
            dvar, dval, dmark, info)
