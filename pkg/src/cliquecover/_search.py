"""Array form of the candidate-clique-set search tree.

The recursion of ``fpt._CandidateSearch.run`` is unrolled into explicit
per-depth frames so the whole search state lives in numpy arrays.  A call runs
at most ``node_cap`` nodes and then returns ``PAUSED``; the caller checks its
deadline and calls again, and the search resumes where it stopped.  Node
visits, branch counts and the returned cover match the set-based search
exactly.
"""
from __future__ import annotations

import numpy as np

from ._kernels import HAS_NUMBA

if HAS_NUMBA:
    from numba import njit

EXHAUSTED = 0
FOUND = 1
PAUSED = 2

# slots of the scalar state vector
_DEPTH, _ENTER, _NODES, _MAXD, _NCOV, _NCL, _WTOP, _FTOP, _BESTW, _BESTN, _STOT, _SPEAK = range(12)
N_SCALARS = 12

# Rough ceiling on array cells before the caller should prefer the set-based search.
MAX_CELLS = 50_000_000


def _eid(indptr, indices, csr_eid, u, v):
    lo, hi = indptr[u], indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    if lo < indptr[u + 1] and indices[lo] == v:
        return csr_eid[lo]
    return -1


def _mark(u, v, indptr, indices, csr_eid, pos, covered, pending, frstack, sc):
    e = _eid(indptr, indices, csr_eid, u, v)
    if covered[e] == 0:
        covered[e] = 1
        sc[_NCOV] += 1
        frstack[sc[_FTOP]] = e
        sc[_FTOP] += 1
        if pos[u] < pos[v]:
            pending[u] -= 1
        else:
            pending[v] -= 1


def _unmark_to(start, frstack, eu, ev, pos, covered, pending, sc):
    for i in range(start, sc[_FTOP]):
        e = frstack[i]
        covered[e] = 0
        u, v = eu[e], ev[e]
        if pos[u] < pos[v]:
            pending[u] += 1
        else:
            pending[v] += 1
    sc[_NCOV] -= sc[_FTOP] - start
    sc[_FTOP] = start


def _in_clique(cl_mem, cl_size, l, v):
    for i in range(cl_size[l]):
        if cl_mem[l, i] == v:
            return True
    return False


def _adjacent(indptr, indices, u, v):
    lo, hi = indptr[u], indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[u + 1] and indices[lo] == v


def _new_clique(x, y, indptr, indices, csr_eid, pos, covered, pending, frstack, inS, cl_mem, cl_size, sc):
    p = sc[_NCL]
    sc[_NCL] += 1
    cl_mem[p, 0] = x
    cl_mem[p, 1] = y
    cl_size[p] = 2
    _mark(x, y, indptr, indices, csr_eid, pos, covered, pending, frstack, sc)
    added = 2
    a, a_end = indptr[x], indptr[x + 1]
    b, b_end = indptr[y], indptr[y + 1]
    while a < a_end and b < b_end:
        if indices[a] == indices[b]:
            inS[indices[a], p] = 1
            added += 1
            a += 1
            b += 1
        elif indices[a] < indices[b]:
            a += 1
        else:
            b += 1
    inS[x, p] = 1
    inS[y, p] = 1
    sc[_STOT] += added
    if sc[_STOT] > sc[_SPEAK]:
        sc[_SPEAK] = sc[_STOT]


def _drop_clique(indptr, indices, inS, cl_mem, cl_size, sc):
    # Everything holding the last clique as candidate is its first member or a neighbour of it.
    p = sc[_NCL] - 1
    c0 = cl_mem[p, 0]
    dropped = 0
    if inS[c0, p]:
        dropped += 1
    inS[c0, p] = 0
    for j in range(indptr[c0], indptr[c0 + 1]):
        if inS[indices[j], p]:
            dropped += 1
        inS[indices[j], p] = 0
    sc[_STOT] -= dropped
    cl_size[p] = 0
    sc[_NCL] = p


def _select_latest(order, pending, lat_ptr, lat_idx, indptr, indices, csr_eid, covered):
    for i in range(order.shape[0] - 1, -1, -1):
        x = order[i]
        if pending[x] > 0:
            for j in range(lat_ptr[x], lat_ptr[x + 1]):
                y = lat_idx[j]
                if covered[_eid(indptr, indices, csr_eid, x, y)] == 0:
                    return x, y
    return -1, -1


def _next_common(inS, x, y, after, ncl):
    for l in range(after + 1, ncl):
        if inS[x, l] and inS[y, l]:
            return l
    return -1


def run_candidate_search(indptr, indices, csr_eid, eu, ev, order, pos, lat_ptr, lat_idx,
                         covered, pending, inS, cl_mem, cl_size,
                         fx, fy, fk, fl, fstage, fxl, fyl, fw0, ffr0,
                         wstack, frstack, hist, best_mem, best_size, sc,
                         m, assignment, node_cap):
    """Advance the search by at most ``node_cap`` nodes; see module docstring for the protocol."""
    visited = 0
    while True:
        t = sc[_DEPTH]
        if sc[_ENTER] == 1:
            if visited >= node_cap:
                return PAUSED
            visited += 1
            sc[_NODES] += 1
            if t > sc[_MAXD]:
                sc[_MAXD] = t
            sc[_ENTER] = 0
            if sc[_NCOV] == m:
                if assignment == 0:
                    return FOUND
                w = 0
                for l in range(sc[_NCL]):
                    w += cl_size[l]
                if sc[_BESTW] < 0 or w < sc[_BESTW]:
                    sc[_BESTW] = w
                    sc[_BESTN] = sc[_NCL]
                    for l in range(sc[_NCL]):
                        best_size[l] = cl_size[l]
                        for i in range(cl_size[l]):
                            best_mem[l, i] = cl_mem[l, i]
                fstage[t] = 2
            else:
                x, y = _select_latest(order, pending, lat_ptr, lat_idx, indptr, indices, csr_eid, covered)
                fx[t] = x
                fy[t] = y
                cnt = 0
                for l in range(sc[_NCL]):
                    if inS[x, l] and inS[y, l]:
                        cnt += 1
                if fk[t] > 0:
                    cnt += 1
                hist[cnt] += 1
                fl[t] = -1
                fstage[t] = 0
        # pick the next branch of frame t
        x, y, k = fx[t], fy[t], fk[t]
        descended = False
        if fstage[t] == 0:
            l = _next_common(inS, x, y, fl[t], sc[_NCL])
            if l >= 0:
                fl[t] = l
                # prepare: drop l from candidates that stop qualifying once x and y join
                fw0[t] = sc[_WTOP]
                c0 = cl_mem[l, 0]
                for j in range(indptr[c0] - 1, indptr[c0 + 1]):
                    z = c0 if j < indptr[c0] else indices[j]
                    if z == x or z == y or inS[z, l] == 0:
                        continue
                    if not (_adjacent(indptr, indices, z, x) and _adjacent(indptr, indices, z, y)):
                        inS[z, l] = 0
                        wstack[sc[_WTOP]] = z
                        sc[_WTOP] += 1
                sc[_STOT] -= sc[_WTOP] - fw0[t]
                xl = _in_clique(cl_mem, cl_size, l, x)
                yl = _in_clique(cl_mem, cl_size, l, y)
                fxl[t] = 1 if xl else 0
                fyl[t] = 1 if yl else 0
                ffr0[t] = sc[_FTOP]
                if not xl:
                    for i in range(cl_size[l]):
                        _mark(x, cl_mem[l, i], indptr, indices, csr_eid, pos, covered, pending, frstack, sc)
                    cl_mem[l, cl_size[l]] = x
                    cl_size[l] += 1
                if not yl:
                    for i in range(cl_size[l]):
                        _mark(y, cl_mem[l, i], indptr, indices, csr_eid, pos, covered, pending, frstack, sc)
                    cl_mem[l, cl_size[l]] = y
                    cl_size[l] += 1
                fk[t + 1] = k
                descended = True
            elif k > 0:
                fstage[t] = 1
                ffr0[t] = sc[_FTOP]
                _new_clique(x, y, indptr, indices, csr_eid, pos, covered, pending, frstack, inS, cl_mem, cl_size, sc)
                fk[t + 1] = k - 1
                descended = True
        if descended:
            sc[_DEPTH] = t + 1
            sc[_ENTER] = 1
            continue
        # frame t is exhausted: return to the parent and undo its current branch
        if t == 0:
            return EXHAUSTED
        t -= 1
        sc[_DEPTH] = t
        if fstage[t] == 0:
            l = fl[t]
            for i in range(fw0[t], sc[_WTOP]):
                inS[wstack[i], l] = 1
            sc[_STOT] += sc[_WTOP] - fw0[t]
            sc[_WTOP] = fw0[t]
            cl_size[l] -= (1 - fxl[t]) + (1 - fyl[t])
            _unmark_to(ffr0[t], frstack, eu, ev, pos, covered, pending, sc)
        else:
            _drop_clique(indptr, indices, inS, cl_mem, cl_size, sc)
            _unmark_to(ffr0[t], frstack, eu, ev, pos, covered, pending, sc)
            fstage[t] = 2


if HAS_NUMBA:
    _eid = njit(cache=True, inline="always")(_eid)
    _mark = njit(cache=True)(_mark)
    _unmark_to = njit(cache=True)(_unmark_to)
    _in_clique = njit(cache=True)(_in_clique)
    _adjacent = njit(cache=True)(_adjacent)
    _new_clique = njit(cache=True)(_new_clique)
    _drop_clique = njit(cache=True)(_drop_clique)
    _select_latest = njit(cache=True)(_select_latest)
    _next_common = njit(cache=True)(_next_common)
    run_candidate_search_jit = njit(cache=True)(run_candidate_search)


class CandidateArrays:
    """Graph arrays plus resumable search state for one decision run."""

    def __init__(self, g, dv, trivial, k: int, assignment: bool = False):
        n, m = g.n, g.m
        indptr, indices = g.csr()
        self.g = g
        self.indptr, self.indices = indptr, indices
        csr_eid = np.empty(indices.shape[0], dtype=np.int64)
        for u in range(n):
            for j in range(indptr[u], indptr[u + 1]):
                csr_eid[j] = g.edge_id(u, int(indices[j]))
        self.csr_eid = csr_eid
        edges = g.edges()
        self.eu = np.array([e[0] for e in edges], dtype=np.int64)
        self.ev = np.array([e[1] for e in edges], dtype=np.int64)
        self.order = np.array(dv.order, dtype=np.int64)
        self.pos = np.array(dv.position, dtype=np.int64)
        lat_ptr = np.zeros(n + 1, dtype=np.int64)
        for x in range(n):
            lat_ptr[x + 1] = lat_ptr[x] + len(dv.later[x])
        self.lat_ptr = lat_ptr
        self.lat_idx = np.array([y for x in range(n) for y in dv.later[x]], dtype=np.int64)

        maxcl = max(len(trivial) + max(k, 0), 1)
        cap = dv.degeneracy + 2
        depth = m + 2
        delta = g.max_degree
        self.covered = np.zeros(m, dtype=np.uint8)
        self.pending = np.array([len(dv.later[x]) for x in range(n)], dtype=np.int64)
        self.inS = np.zeros((n, maxcl), dtype=np.uint8)
        self.cl_mem = np.full((maxcl, cap), -1, dtype=np.int64)
        self.cl_size = np.zeros(maxcl, dtype=np.int64)
        self.frames = [np.zeros(depth, dtype=np.int64) for _ in range(9)]
        self.wstack = np.zeros(maxcl * (delta + 1) + 1, dtype=np.int64)
        self.frstack = np.zeros(m + 1, dtype=np.int64)
        self.hist = np.zeros(maxcl + 2, dtype=np.int64)
        self.best_mem = np.full((maxcl, cap), -1, dtype=np.int64) if assignment else np.zeros((1, 1), dtype=np.int64)
        self.best_size = np.zeros(maxcl, dtype=np.int64)
        self.sc = np.zeros(N_SCALARS, dtype=np.int64)
        self.sc[_ENTER] = 1
        self.sc[_BESTW] = -1
        self.assignment = 1 if assignment else 0
        self.m = m

        for x, y in sorted(trivial):
            _new_clique(x, y, indptr, indices, csr_eid, self.pos, self.covered, self.pending,
                        self.frstack, self.inS, self.cl_mem, self.cl_size, self.sc)
        self.n_fixed = int(self.sc[_NCL])
        # preloaded cliques are never undone
        self.sc[_FTOP] = 0
        self.frames[2][0] = k - self.n_fixed

    @staticmethod
    def fits(g, dv, n_trivial: int, k: int) -> bool:
        maxcl = n_trivial + max(k, 0) + 1
        return g.n * maxcl + maxcl * (g.max_degree + dv.degeneracy + 3) + 12 * g.m < MAX_CELLS

    def step(self, node_cap: int, use_jit: bool = True) -> int:
        fn = run_candidate_search_jit if (use_jit and HAS_NUMBA) else run_candidate_search
        fx, fy, fk, fl, fstage, fxl, fyl, fw0, ffr0 = self.frames
        return int(fn(self.indptr, self.indices, self.csr_eid, self.eu, self.ev, self.order, self.pos,
                      self.lat_ptr, self.lat_idx, self.covered, self.pending, self.inS, self.cl_mem,
                      self.cl_size, fx, fy, fk, fl, fstage, fxl, fyl, fw0, ffr0, self.wstack,
                      self.frstack, self.hist, self.best_mem, self.best_size, self.sc,
                      self.m, self.assignment, node_cap))

    @property
    def nodes(self) -> int:
        return int(self.sc[_NODES])

    @property
    def ccs_peak(self) -> int:
        return int(self.sc[_SPEAK])

    @property
    def max_depth(self) -> int:
        return int(self.sc[_MAXD])

    def branch_counts(self):
        return {int(b): int(c) for b, c in enumerate(self.hist) if c}

    def cliques(self) -> list[set[int]]:
        return [set(int(v) for v in self.cl_mem[l, :self.cl_size[l]]) for l in range(int(self.sc[_NCL]))]

    def best(self) -> list[set[int]] | None:
        if self.sc[_BESTW] < 0:
            return None
        return [set(int(v) for v in self.best_mem[l, :self.best_size[l]]) for l in range(int(self.sc[_BESTN]))]
