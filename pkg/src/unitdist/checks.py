"""Forbidden-configuration checkers for distance-type matrices.

Two properties are checked exactly on rational matrices:

*diagonal property*
    for all ``i < k`` and ``j < l``: ``M[i][j] + M[k][l] < M[i][l] + M[k][j]``.

*obtuse angle property*
    no acute-angle submatrix, i.e. no top-left corner ``(m1, n1)`` that is
    ``>=`` both ``M[m1][n2]`` and ``M[m2][n1]`` combined with a bottom-right
    corner ``(p2, q2)`` that is ``>=`` both ``M[p2][q1]`` and ``M[p1][q2]``,
    where ``m1 < m2``, ``n1 < n2``, ``p1 < p2``, ``q1 < q2`` and
    ``m1 <= p1``, ``m2 <= p2``, ``n1 <= q1``, ``n2 <= q2``.

Both checkers return ``None`` when the property holds and otherwise the
lexicographically first witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from . import kernels
from .matrix import Sign, SignMatrix, ValueMatrix, ZeroOneMatrix

MAX_DIM = 256


class SizeError(ValueError):
    """Matrix exceeds the supported size for a checker."""


class DiagonalWitness(NamedTuple):
    i: int
    j: int
    k: int
    l: int


class ObtuseWitness(NamedTuple):
    m1: int
    n1: int
    m2: int
    n2: int
    p1: int
    q1: int
    p2: int
    q2: int


@dataclass(frozen=True)
class Embedding:
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def _size_guard(rows: int, cols: int) -> None:
    if rows > MAX_DIM or cols > MAX_DIM:
        raise SizeError(f"{rows}x{cols} exceeds the {MAX_DIM}x{MAX_DIM} cap")


def contains_pattern(host: ZeroOneMatrix, pattern: ZeroOneMatrix) -> Embedding | None:
    """Find ``pattern`` as a submatrix of ``host``.

    A 1 in the pattern needs a 1 in the host at the selected position; a 0 in
    the pattern is unconstrained. Returns the row and column selection, or
    None when there is no embedding (including when the pattern is larger).
    """
    found = kernels.contains(host.row_masks(), host.cols, pattern.row_masks(), pattern.cols)
    if found is None:
        return None
    return Embedding(tuple(found[0]), tuple(found[1]))


def diagonal_check(m: ValueMatrix) -> DiagonalWitness | None:
    _size_guard(m.rows, m.cols)
    a = m.integer_scaled()
    r, c = m.rows, m.cols
    # the cross difference of any quadruple is a sum of adjacent ones
    if not any(
        a[i][j] + a[i + 1][j + 1] >= a[i][j + 1] + a[i + 1][j]
        for i in range(r - 1)
        for j in range(c - 1)
    ):
        return None
    return _first_diagonal_witness(a, r, c)


def _first_diagonal_witness(a, r, c):
    # violation at (i, j, k, l) iff d[j] >= d[l] where d = row_i - row_k
    for i in range(r - 1):
        diffs = []
        for k in range(i + 1, r):
            d = [a[i][j] - a[k][j] for j in range(c)]
            suffix_min = [None] * c
            cur = None
            for j in range(c - 1, -1, -1):
                suffix_min[j] = cur
                cur = d[j] if cur is None else min(cur, d[j])
            diffs.append((k, d, suffix_min))
        for j in range(c - 1):
            for k, d, smin in diffs:
                if smin[j] is not None and smin[j] <= d[j]:
                    for l in range(j + 1, c):
                        if d[l] <= d[j]:
                            return DiagonalWitness(i, j, k, l)
    raise AssertionError("adjacent test found a violation the full scan missed")


def obtuse_check(m: ValueMatrix) -> ObtuseWitness | None:
    """Lexicographically first acute-angle submatrix, or None.

    Only order comparisons matter, so the scan runs on dense ranks of the
    exact entries in ``O(r^2 c)`` time and space.
    """
    _size_guard(m.rows, m.cols)
    found = kernels.obtuse_scan(m.ranks())
    return None if found is None else ObtuseWitness(*found)


def to_sign_matrix(m: ValueMatrix) -> SignMatrix:
    out = []
    for row in m.entries:
        signs = []
        for v in row:
            if m.policy.is_one(v):
                signs.append(Sign.ONE)
            elif v > 1:
                signs.append(Sign.PLUS)
            else:
                signs.append(Sign.MINUS)
        out.append(signs)
    return SignMatrix(out)


def is_rectilinear_polygon_matrix(m: ZeroOneMatrix) -> bool:
    """True iff the ones trace a single simple rectilinear polygon.

    Each row and column must hold 0 or 2 ones; joining the two ones of every
    row and every column must give one closed cycle through all ones; and
    with ones placed at lattice points ``(col, -row)`` no two segments may
    meet except consecutive ones at their shared vertex.
    """
    rows_of = {}
    cols_of = {}
    for i, j in m.one_positions():
        rows_of.setdefault(i, []).append(j)
        cols_of.setdefault(j, []).append(i)
    if not rows_of:
        return False
    if any(len(v) != 2 for v in rows_of.values()) or any(len(v) != 2 for v in cols_of.values()):
        return False

    total = m.ones()
    start = m.one_positions()[0]
    cur = start
    horizontal = True
    seen = 0
    while True:
        i, j = cur
        if horizontal:
            a, b = rows_of[i]
            cur = (i, b if j == a else a)
        else:
            a, b = cols_of[j]
            cur = (a if i == b else b, j)
        horizontal = not horizontal
        seen += 1
        if cur == start and horizontal:
            break
        if seen > 2 * total:
            return False
    if seen != total:
        return False

    hsegs = [(i, min(v), max(v)) for i, v in rows_of.items()]
    vsegs = [(j, min(v), max(v)) for j, v in cols_of.items()]
    for i, c0, c1 in hsegs:
        for j, r0, r1 in vsegs:
            if c0 <= j <= c1 and r0 <= i <= r1:
                # meeting at a 1 is the shared corner of consecutive segments
                if not m.entries[i][j]:
                    return False
    return True


def polygon_matrices(rows: int, cols: int):
    """Yield every rectilinear polygon matrix of the given shape."""
    for bits in itertools.product((0, 1), repeat=rows * cols):
        if sum(bits) < 4:
            continue
        m = ZeroOneMatrix([bits[i * cols:(i + 1) * cols] for i in range(rows)])
        if is_rectilinear_polygon_matrix(m):
            yield m
