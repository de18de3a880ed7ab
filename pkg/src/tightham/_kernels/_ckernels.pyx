# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Semantics match ``_pykernels`` exactly."""
from libc.stdint cimport uint8_t, uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"
MAX_HAMILTON_N = 24


def hamilton_cycle(g):
    n = g.n
    if n < 5:
        return None
    if n > MAX_HAMILTON_N:
        raise ValueError(f"n={n} exceeds the compiled search limit {MAX_HAMILTON_N}")
    words = np.zeros((n, n), dtype=np.uint64)
    for x in range(n):
        row = g.nbr[x]
        for y in range(n):
            words[x, y] = row[y]
    return _hamilton_words(words)


cdef object _hamilton_words(uint64_t[:, ::1] nbr):
    cdef int n = nbr.shape[0]
    cdef size_t nbits = (<size_t>1 << n) * n * n
    cdef size_t nbytes = (nbits + 7) // 8
    cdef uint8_t* dead = <uint8_t*>malloc(nbytes)
    cdef int seq[64]
    cdef uint64_t cand[65]
    cdef int u, depth, p, q, r, i
    cdef uint64_t mask, c, nm
    cdef size_t idx
    if dead == NULL:
        raise MemoryError()
    try:
        for u in range(1, n):
            if nbr[0, u] == 0:
                continue
            memset(dead, 0, nbytes)
            seq[0] = 0
            seq[1] = u
            mask = 1 | (<uint64_t>1 << u)
            depth = 2
            cand[2] = nbr[0, u] & ~mask
            while True:
                if depth == n:
                    p = seq[n - 2]
                    q = seq[n - 1]
                    if (nbr[p, q] & 1) and ((nbr[q, 0] >> u) & 1):
                        return [seq[i] for i in range(n)]
                    depth -= 1
                    mask ^= <uint64_t>1 << seq[depth]
                    continue
                c = cand[depth]
                if c == 0:
                    idx = (<size_t>mask * n + seq[depth - 2]) * n + seq[depth - 1]
                    dead[idx >> 3] |= <uint8_t>(1 << (idx & 7))
                    if depth == 2:
                        break
                    depth -= 1
                    mask ^= <uint64_t>1 << seq[depth]
                    continue
                r = __builtin_ctzll(c)
                cand[depth] = c & (c - 1)
                nm = mask | (<uint64_t>1 << r)
                q = seq[depth - 1]
                idx = (<size_t>nm * n + q) * n + r
                if (dead[idx >> 3] >> (idx & 7)) & 1:
                    continue
                seq[depth] = r
                mask = nm
                depth += 1
                if depth < n:
                    cand[depth] = nbr[q, r] & ~mask
        return None
    finally:
        free(dead)


def count_absorbers(g, int v):
    if g.n == 0:
        return 0
    return _count_absorbers(g.packed(), v)


cdef int64_t _count_absorbers(const uint64_t[:, :, ::1] nb, int v) nogil:
    # same bitset identity as the fallback: |X||W| - |X & W| per edge vyz
    cdef int n = nb.shape[0]
    cdef int nw = nb.shape[2]
    cdef int y, z, k, t
    cdef int64_t total = 0, cx, cw, cxw
    cdef uint64_t yz, xs, ws, zs, vbit
    for y in range(n):
        if y == v:
            continue
        for k in range(nw):
            zs = nb[v, y, k]
            while zs:
                z = k * 64 + __builtin_ctzll(zs)
                zs &= zs - 1
                cx = 0
                cw = 0
                cxw = 0
                for t in range(nw):
                    yz = nb[y, z, t]
                    vbit = (<uint64_t>1 << (v & 63)) if (v >> 6) == t else 0
                    xs = nb[v, y, t] & yz & ~vbit
                    ws = nb[v, z, t] & yz
                    cx += __builtin_popcountll(xs)
                    cw += __builtin_popcountll(ws)
                    cxw += __builtin_popcountll(xs & ws)
                total += cx * cw - cxw
    return total


def purge_removed(g, double tau):
    """Edges deleted by purging ``g`` at codegree threshold ``tau``."""
    adj = np.array(g.dense(), dtype=np.uint8, copy=True)
    removed = []
    _purge(adj, tau, removed)
    return removed


cdef void _purge(uint8_t[:, :, ::1] adj, double tau, list removed):
    cdef int n = adj.shape[0]
    cdef int i, j, z, k, a, b, c
    cdef int64_t[:, ::1] cod = np.zeros((n, n), dtype=np.int64)
    cdef list bad
    for i in range(n):
        for j in range(n):
            k = 0
            for z in range(n):
                k += adj[i, j, z]
            cod[i, j] = k
    while True:
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                if cod[i, j] > 0 and cod[i, j] < tau:
                    bad.append((i, j))
        if not bad:
            return
        for i, j in bad:
            for z in range(n):
                if not adj[i, j, z]:
                    continue
                a = i
                b = j
                c = z
                adj[a, b, c] = 0
                adj[a, c, b] = 0
                adj[b, a, c] = 0
                adj[b, c, a] = 0
                adj[c, a, b] = 0
                adj[c, b, a] = 0
                cod[a, b] -= 1
                cod[b, a] -= 1
                cod[a, c] -= 1
                cod[c, a] -= 1
                cod[b, c] -= 1
                cod[c, b] -= 1
                if c < a:
                    removed.append((c, a, b))
                elif c < b:
                    removed.append((a, c, b))
                else:
                    removed.append((a, b, c))
