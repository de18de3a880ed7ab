"""Pure-Python kernels; the reference semantics for the compiled module."""
from __future__ import annotations

BACKEND = "python"


def hamilton_cycle(g):
    """Lexicographically least tight Hamilton cycle starting at vertex 0.

    Depth-first search in ascending vertex order over states
    ``(visited, last two)``, memoising dead states per choice of second
    vertex. Returns the vertex order or ``None``.
    """
    n = g.n
    if n < 5:
        return None
    nbr = g.nbr
    for u in range(1, n):
        if not nbr[0][u]:
            continue
        dead = set()
        seq = [0, u]
        mask = 1 | (1 << u)
        cand = [0] * (n + 1)
        cand[2] = nbr[0][u] & ~mask
        depth = 2
        while True:
            if depth == n:
                p, q = seq[n - 2], seq[n - 1]
                if nbr[p][q] & 1 and nbr[q][0] >> u & 1:
                    return seq[:]
                depth -= 1
                mask ^= 1 << seq.pop()
                continue
            c = cand[depth]
            if not c:
                dead.add((mask, seq[depth - 2], seq[depth - 1]))
                if depth == 2:
                    break
                depth -= 1
                mask ^= 1 << seq.pop()
                continue
            low = c & -c
            r = low.bit_length() - 1
            cand[depth] = c ^ low
            nm = mask | low
            q = seq[depth - 1]
            if (nm, q, r) in dead:
                continue
            seq.append(r)
            mask = nm
            depth += 1
            if depth < n:
                cand[depth] = nbr[q][r] & ~mask
    return None


def count_absorbers(g, v):
    nbr = g.nbr
    bv = 1 << v
    total = 0
    row_v = nbr[v]
    for y in range(g.n):
        if y == v:
            continue
        zs = row_v[y]
        while zs:
            low = zs & -zs
            z = low.bit_length() - 1
            zs ^= low
            yz = nbr[y][z]
            xs = row_v[y] & yz & ~bv
            ws = row_v[z] & yz
            total += xs.bit_count() * ws.bit_count() - (xs & ws).bit_count()
    return total


def purge_removed(g, tau):
    h = g.copy()
    nbr = h.nbr
    n = h.n
    removed = []
    while True:
        bad = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if 0 < nbr[i][j].bit_count() < tau
        ]
        if not bad:
            return removed
        for i, j in bad:
            zs = nbr[i][j]
            while zs:
                low = zs & -zs
                z = low.bit_length() - 1
                zs ^= low
                e = tuple(sorted((i, j, z)))
                h.remove_edge(e)
                removed.append(e)
