"""Pure-Python versions of the hot kernels.

The compiled module ``unitdist._kernels`` implements the same functions with
the same traversal order, so both backends return identical results.

Matrices are passed as row bitmasks (bit ``j`` of ``rows[i]`` is entry
``(i, j)``) or, for the obtuse scan, as integer rank matrices.
"""

from itertools import combinations

import numpy as np

BACKEND = "python"


def contains(host, ncols, pat, pcols):
    """Embedding of ``pat`` into ``host`` as ``(row_sel, col_sel)``, or None.

    Column selections are tried in lexicographic order; for each one the rows
    are matched greedily (earliest host row that covers the pattern row),
    which finds an embedding whenever one exists for that column selection.
    """
    nrows, prows = len(host), len(pat)
    if prows > nrows or pcols > ncols:
        return None
    for csel in combinations(range(ncols), pcols):
        need = []
        for prow in pat:
            m = 0
            for v in range(pcols):
                if (prow >> v) & 1:
                    m |= 1 << csel[v]
            need.append(m)
        rsel = []
        h = 0
        for u in range(prows):
            nu = need[u]
            while h < nrows and (host[h] & nu) != nu:
                h += 1
            if h == nrows:
                break
            rsel.append(h)
            h += 1
        if len(rsel) == prows:
            return tuple(rsel), csel
    return None


def _contains_using_column(host, ncols, pat, pcols, col):
    """True iff some embedding uses column ``col`` (the cell just set)."""
    nrows, prows = len(host), len(pat)
    for csel in combinations(range(ncols), pcols):
        if col not in csel:
            continue
        need = []
        for prow in pat:
            m = 0
            for v in range(pcols):
                if (prow >> v) & 1:
                    m |= 1 << csel[v]
            need.append(m)
        h = 0
        u = 0
        while u < prows and h < nrows:
            if (host[h] & need[u]) == need[u]:
                u += 1
            h += 1
        if u == prows:
            return True
    return False


class _Budget(Exception):
    pass


def ex_search(a, b, pat, pcols, budget):
    """Branch and bound for the maximum number of ones avoiding ``pat``.

    Cells are decided in row-major order, 1 before 0. A branch is cut when
    even filling every remaining cell cannot beat the incumbent. Returns
    ``(best, best_rows, nodes, complete)``; ``complete`` is False when the
    node budget ran out, in which case ``best`` is only a lower bound.
    """
    ncells = a * b
    host = [0] * a
    best = [-1, [0] * a]
    nodes = [0]
    prows = len(pat)
    if prows > a or pcols > b:
        return ncells, [(1 << b) - 1] * a, 1, True

    def rec(t, ones):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if ones + (ncells - t) <= best[0]:
            return
        if t == ncells:
            best[0] = ones
            best[1] = list(host)
            return
        r, c = divmod(t, b)
        bit = 1 << c
        host[r] |= bit
        if not _contains_using_column(host, b, pat, pcols, c):
            rec(t + 1, ones + 1)
        host[r] &= ~bit
        rec(t + 1, ones)

    try:
        rec(0, 0)
    except _Budget:
        return max(best[0], 0), best[1], nodes[0] - 1, False
    return best[0], best[1], nodes[0], True


def _first_le_after(col_vals, start, limit, pivot):
    for k in range(start, limit):
        if col_vals[k] <= pivot:
            return k
    return -1


def obtuse_scan(rank):
    """Lexicographically first acute-angle witness in a rank matrix.

    Returns ``(m1, n1, m2, n2, p1, q1, p2, q2)`` or None. See
    :func:`unitdist.checks.obtuse_check` for the witness conditions.

    For each bottom-right corner cell ``(p2, q2)`` only the largest usable
    ``p1`` and ``q1`` matter, and for each top-left cell ``(m1, n1)`` only the
    smallest usable ``m2`` and ``n2``. A suffix-maximum table over
    ``(p2, q2, m1)`` then answers "is there a compatible bottom-right corner"
    in constant time per top-left cell.
    """
    r = len(rank)
    c = len(rank[0])
    if r < 2 or c < 2:
        return None
    M = [list(row) for row in rank]

    # largest p1 < p2 with M[p1][q2] <= M[p2][q2]; largest q1 < q2 likewise
    P1 = [[-1] * c for _ in range(r)]
    Q1 = [[-1] * c for _ in range(r)]
    for p2 in range(r):
        row = M[p2]
        for q2 in range(c):
            v = row[q2]
            for p1 in range(p2 - 1, -1, -1):
                if M[p1][q2] <= v:
                    P1[p2][q2] = p1
                    break
            for q1 in range(q2 - 1, -1, -1):
                if row[q1] <= v:
                    Q1[p2][q2] = q1
                    break
    P1 = np.asarray(P1, dtype=np.int64)
    Q1 = np.asarray(Q1, dtype=np.int64)

    # T[a, b, m] = max Q1 over corners p2 >= a, q2 >= b with P1 >= m
    ms = np.arange(r)
    T = np.where(ms[None, None, :] <= P1[:, :, None], Q1[:, :, None], -1)
    T = np.where(Q1[:, :, None] >= 0, T, -1)
    T = np.maximum.accumulate(T[::-1], axis=0)[::-1]
    T = np.maximum.accumulate(T[:, ::-1], axis=1)[:, ::-1]

    cols = [list(col) for col in zip(*M)]
    for m1 in range(r - 1):
        for n1 in range(c - 1):
            v = M[m1][n1]
            m2 = _first_le_after(cols[n1], m1 + 1, r, v)
            if m2 < 0:
                continue
            n2 = _first_le_after(M[m1], n1 + 1, c, v)
            if n2 < 0:
                continue
            if T[m2, n2, m1] >= n1:
                return (m1, n1, m2, n2) + _first_bottom_right(M, r, c, m1, n1, m2, n2)
    return None


def _first_bottom_right(M, r, c, m1, n1, m2, n2):
    for p1 in range(m1, r):
        for q1 in range(n1, c):
            for p2 in range(max(m2, p1 + 1), r):
                row = M[p2]
                for q2 in range(max(n2, q1 + 1), c):
                    v = row[q2]
                    if v >= row[q1] and v >= M[p1][q2]:
                        return (p1, q1, p2, q2)
    raise AssertionError("suffix table promised a bottom-right corner")
