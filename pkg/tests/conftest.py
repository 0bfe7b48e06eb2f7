"""Shared brute-force oracles and hypothesis strategies.

The oracles here are deliberately naive: full enumeration straight from the
definitions, with no pruning and no shared code with the package.
"""

import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from unitdist.matrix import ValueMatrix, ZeroOneMatrix

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


# -- oracles -------------------------------------------------------------------


def naive_diagonal(a):
    """First (i, j, k, l) in lex order with a[i][j] + a[k][l] >= a[i][l] + a[k][j]."""
    r, c = len(a), len(a[0])
    for i, j, k, l in itertools.product(range(r), range(c), range(r), range(c)):
        if i < k and j < l and a[i][j] + a[k][l] >= a[i][l] + a[k][j]:
            return (i, j, k, l)
    return None


def naive_obtuse(a):
    """First acute-angle configuration in lex order of (m1, n1, m2, n2, p1, q1, p2, q2).

    Top-left corner (m1, n1) with partners (m1, n2) to its right and (m2, n1)
    below; bottom-right corner (p2, q2) with partners (p2, q1) to its left and
    (p1, q2) above; the second corner sits weakly below-right of the first.
    """
    r, c = len(a), len(a[0])
    R, C = range(r), range(c)
    for m1, n1, m2, n2, p1, q1, p2, q2 in itertools.product(R, C, R, C, R, C, R, C):
        if not (m1 < m2 and n1 < n2 and p1 < p2 and q1 < q2):
            continue
        if not (m1 <= p1 and m2 <= p2 and n1 <= q1 and n2 <= q2):
            continue
        if a[m1][n1] >= a[m1][n2] and a[m1][n1] >= a[m2][n1] and a[p2][q2] >= a[p2][q1] and a[p2][q2] >= a[p1][q2]:
            return (m1, n1, m2, n2, p1, q1, p2, q2)
    return None


def enumerated_obtuse(a):
    """Same answer as ``naive_obtuse`` with the two corners enumerated separately.

    Lists every dominating top-left quadruple and every dominating
    bottom-right quadruple, then scans pairs in lex order. Still a full
    enumeration, just quick enough for thousands of 6x6 matrices.
    """
    r, c = len(a), len(a[0])
    quads = sorted(
        (m1, n1, m2, n2)
        for m1, m2 in itertools.combinations(range(r), 2)
        for n1, n2 in itertools.combinations(range(c), 2)
    )
    top = [q for q in quads if a[q[0]][q[1]] >= a[q[0]][q[3]] and a[q[0]][q[1]] >= a[q[2]][q[1]]]
    bottom = [q for q in quads if a[q[2]][q[3]] >= a[q[2]][q[1]] and a[q[2]][q[3]] >= a[q[0]][q[3]]]
    for m1, n1, m2, n2 in top:
        for p1, q1, p2, q2 in bottom:
            if m1 <= p1 and n1 <= q1 and m2 <= p2 and n2 <= q2:
                return (m1, n1, m2, n2, p1, q1, p2, q2)
    return None


def naive_contains(host, pat):
    hr, hc = len(host), len(host[0])
    pr, pc = len(pat), len(pat[0])
    for rows in itertools.combinations(range(hr), pr):
        for cols in itertools.combinations(range(hc), pc):
            if all(host[rows[x]][cols[y]] for x in range(pr) for y in range(pc) if pat[x][y]):
                return True
    return False


def naive_ex(a, b, pat):
    """Maximum ones over all 2^(ab) matrices avoiding ``pat``."""
    best = 0
    cells = a * b
    for bits in range(1 << cells):
        ones = bin(bits).count("1")
        if ones <= best:
            continue
        grid = [[(bits >> (i * b + j)) & 1 for j in range(b)] for i in range(a)]
        if not naive_contains(grid, pat):
            best = ones
    return best


def dfs_cycles(edges):
    """Simple cycles of an undirected graph as frozensets of edges."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    found = set()

    def walk(start, v, path, seen):
        for w in adj[v]:
            if w == start and len(path) >= 3:
                cyc = path + [start]
                found.add(frozenset(frozenset(e) for e in zip(cyc, cyc[1:])))
            elif w > start and w not in seen:
                walk(start, w, path + [w], seen | {w})

    for s in adj:
        walk(s, s, [s], {s})
    return found


def hull(points):
    """Convex hull by monotone chain, counter-clockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def naive_antipodal(vertices):
    """Vertex pairs that are the max and min of some edge-normal projection.

    A supporting line pair through two vertices can always be rotated until
    it is flush with an edge incident to one of them, so edge normals at the
    two vertices are enough.
    """
    n = len(vertices)
    normals = []
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        normals.append((b[1] - a[1], a[0] - b[0]))
    out = set()
    for i, j in itertools.combinations(range(n), 2):
        for nv in (normals[i], normals[i - 1], normals[j], normals[j - 1]):
            vals = [nv[0] * q[0] + nv[1] * q[1] for q in vertices]
            hi, lo = max(vals), min(vals)
            if (vals[i] == hi and vals[j] == lo) or (vals[j] == hi and vals[i] == lo):
                out.add((i, j))
                break
    return sorted(out)


# -- strategies ----------------------------------------------------------------


@st.composite
def value_matrices(draw, max_rows=6, max_cols=6, values=None):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = values if values is not None else st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4)
    rows = [[draw(vals) for _ in range(c)] for _ in range(r)]
    return ValueMatrix(rows)


@st.composite
def zero_one_matrices(draw, max_rows=5, max_cols=5, min_rows=1, min_cols=1):
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    return ZeroOneMatrix([[draw(st.integers(0, 1)) for _ in range(c)] for _ in range(r)])
