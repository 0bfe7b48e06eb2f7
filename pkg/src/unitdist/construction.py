"""Skeleton matrices and the distance-like matrix built on them.

``skeleton(m)`` is the ``2^m x 2^m`` 0-1 matrix

    A_1     = [[0, 1], [1, 0]]
    A_{m+1} = [[J, A_m], [A_m, 0]]      (J = reversed identity)

with ``2^(m-1) (m+1)`` ones. The distance-like matrix has entry
``1 + sum_k layer(k, m)[i][j] * x_k``; every layer vanishes on the skeleton's
ones, so those entries are exactly 1, and the weights ``x_k`` are chosen by
an exact search so that the matrix is positive and has both the diagonal and
the obtuse angle property.

Block formulas use 1-based ``i, j`` as in their closed forms; the returned
matrices are ordinary 0-based :class:`ValueMatrix` objects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .checks import diagonal_check, obtuse_check
from .matrix import ValueMatrix, ZeroOneMatrix, format_matrix, format_rational, parse_matrix, parse_rational

MAX_SKELETON_LEVEL = 12
MAX_BLOCK_LEVEL = 5
MAX_DLM_LEVEL = 4


class LevelError(ValueError):
    pass


class NonRepresentable(ArithmeticError):
    """The literal constant cannot be stored exactly."""


class SearchFailure(RuntimeError):
    def __init__(self, msg, last_failed):
        super().__init__(msg)
        self.last_failed = last_failed


class Mode(enum.Enum):
    FORMULA = "formula"
    ADAPTIVE = "adaptive"


def _check_level(name, value, lo, hi):
    if not lo <= value <= hi:
        raise LevelError(f"{name} must be in [{lo}, {hi}], got {value}")


def _block(rows):
    return [list(r) for r in rows]


@lru_cache(maxsize=None)
def _skeleton_rows(m: int) -> tuple:
    if m == 1:
        return ((0, 1), (1, 0))
    prev = _skeleton_rows(m - 1)
    n = len(prev)
    top = [(0,) * (n - 1 - i) + (1,) + (0,) * i + prev[i] for i in range(n)]
    zeros = (0,) * n
    bottom = [prev[i] + zeros for i in range(n)]
    return tuple(top + bottom)


def skeleton(m: int) -> ZeroOneMatrix:
    _check_level("m", m, 1, MAX_SKELETON_LEVEL)
    return ZeroOneMatrix._trusted(_skeleton_rows(m))


def skeleton_ones(m: int) -> int:
    """Closed form ``2^(m-1) (m+1)``."""
    return (1 << (m - 1)) * (m + 1)


@lru_cache(maxsize=None)
def _y_rows(r: int) -> tuple:
    n = 1 << (r - 1)
    z = Fraction(1, 5 ** (5 ** r))
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            s = i + j
            if s == n + 1:
                row.append(Fraction(0))
            elif s > n + 1:
                l = s - n - 1
                e = (1 << (i - 1)) - j
                scale = Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)
                row.append(i + scale * l * z)
            else:
                row.append(Fraction(-(1 << (5 ** r - 2 * i - 2 * j))))
        rows.append(tuple(row))
    return tuple(rows)


def y_block(r: int) -> ValueMatrix:
    """The ``2^(r-1)``-square block on the top-left of level ``r``.

    Zero on the anti-diagonal ``i + j = 2^(r-1) + 1``; below it
    ``i + 2^(2^(i-1) - j) * l * z`` with ``l = i + j - 2^(r-1) - 1`` and
    ``z = 5^(-5^r)``; above it ``-2^(5^r - 2i - 2j)``.
    """
    _check_level("r", r, 1, MAX_BLOCK_LEVEL)
    return ValueMatrix(_y_rows(r))


@lru_cache(maxsize=None)
def _z_rows(r: int) -> tuple:
    n = 1 << (r - 1)
    big = 5 ** (5 ** r)
    return tuple(tuple(Fraction(-big * i * j) for j in range(1, n + 1)) for i in range(1, n + 1))


def z_block(r: int) -> ValueMatrix:
    """``-5^(5^r) * i * j`` on a ``2^(r-1)`` square."""
    _check_level("r", r, 1, MAX_BLOCK_LEVEL)
    return ValueMatrix(_z_rows(r))


@dataclass(frozen=True)
class SimplifiedLayer:
    s: int
    t: int
    matrix: ValueMatrix


@lru_cache(maxsize=None)
def _layer_rows(s: int, t: int, blocks: str) -> tuple:
    if s == t:
        if blocks != "literal" and t == 1:
            return ((Fraction(BASE_PATCH), Fraction(0)), (Fraction(0), _z_rows(1)[0][0]))
        if blocks in ("literal", "patched"):
            y, z = _y_rows(t), _z_rows(t)
        else:
            y, z = _surrogate_rows(t)
        n = len(y)
        zero = (Fraction(0),) * n
        return tuple(y[i] + zero for i in range(n)) + tuple(zero + z[i] for i in range(n))
    prev = _layer_rows(s, t - 1, blocks)
    n = len(prev)
    zero = (Fraction(0),) * n
    return tuple(zero + prev[i] for i in range(n)) + tuple(prev[i] + zero for i in range(n))


def simplified_layer(s: int, t: int, blocks: str = "literal") -> SimplifiedLayer:
    """Coefficient of ``x_s`` in every cell of the level-``t`` matrix."""
    _check_level("t", t, 1, MAX_BLOCK_LEVEL)
    _check_level("s", s, 1, t)
    return SimplifiedLayer(s, t, ValueMatrix(_layer_rows(s, t, blocks)))


# The 1x1 block Y at level 1 is [0], which puts an extra exact 1 on the
# 0-cell of every copy of A_1. The patched variant uses the value the
# "above the zeros" branch of the formula gives at i = j = 1 instead.
BASE_PATCH = -2


@lru_cache(maxsize=None)
def _surrogate_rows(r: int) -> tuple:
    """Replacement blocks that keep only the order structure.

    ``y[i][j] = 1 - 2^(n + 1 - i - j)`` is zero on the same anti-diagonal,
    strictly increasing along rows and columns and strictly concave in
    ``i + j``, so the block has the diagonal property on its own. The second
    block is the literal one.
    """
    n = 1 << (r - 1)
    y = tuple(
        tuple(1 - Fraction(2) ** (n + 1 - i - j) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    return y, _z_rows(r)


# -- distance-like matrix ------------------------------------------------------

LITERAL_X_DESCRIPTION = "x_m = 10^(-10^(10^(10^m)))"
MAX_EXPONENT = 1 << 14


@dataclass
class DistanceLikeMatrix:
    m: int
    matrix: ValueMatrix
    x_values: list  # x_1 .. x_m
    provenance: Mode = Mode.ADAPTIVE
    blocks: str = "literal"
    exponents: list = field(default_factory=list)  # c_m, then gaps g_{m-1} .. g_1

    def to_text(self) -> str:
        comments = [
            f"distance-like m={self.m} provenance={self.provenance.name} blocks={self.blocks}",
        ]
        if self.exponents:
            comments.append("exponents " + " ".join(str(e) for e in self.exponents))
        for k, x in enumerate(self.x_values, start=1):
            comments.append(f"x_{k} = {format_rational(x)}")
        return format_matrix(self.matrix, comments)

    @classmethod
    def from_text(cls, text: str) -> "DistanceLikeMatrix":
        m = None
        provenance = Mode.ADAPTIVE
        blocks = "literal"
        xs = {}
        exponents = []
        for line in text.splitlines():
            s = line.strip()
            if not s.startswith("#"):
                continue
            body = s[1:].strip()
            if body.startswith("distance-like"):
                for tok in body.split()[1:]:
                    key, _, val = tok.partition("=")
                    if key == "m":
                        m = int(val)
                    elif key == "provenance":
                        provenance = Mode[val]
                    elif key == "blocks":
                        blocks = val
            elif body.startswith("exponents"):
                exponents = [int(t) for t in body.split()[1:]]
            elif body.startswith("x_"):
                key, _, val = body.partition("=")
                xs[int(key.strip()[2:])] = parse_rational(val)
        matrix = parse_matrix(text)
        if not isinstance(matrix, ValueMatrix):
            raise ValueError("distance-like matrix file must be of kind VAL")
        if m is None:
            n = matrix.rows
            m = n.bit_length() - 1
            if n != 1 << m or m < 1:
                raise ValueError("cannot infer level from a non power-of-two size")
        x_values = [xs[k] for k in sorted(xs)]
        return cls(m, matrix, x_values, provenance, blocks, exponents)


def _assemble(m: int, xs: list, blocks: str) -> ValueMatrix:
    n = 1 << m
    acc = [[Fraction(1)] * n for _ in range(n)]
    for k in range(1, m + 1):
        layer = _layer_rows(k, m, blocks)
        x = xs[k - 1]
        for i in range(n):
            row = layer[i]
            out = acc[i]
            for j in range(n):
                if row[j]:
                    out[j] += row[j] * x
    return ValueMatrix(acc)


def _failed_property(mat: ValueMatrix, skel: ZeroOneMatrix):
    for i in range(mat.rows):
        for j in range(mat.cols):
            v = mat.entries[i][j]
            if v <= 0:
                return "positivity"
            if (v == 1) != bool(skel.entries[i][j]):
                return "unit placement"
    if diagonal_check(mat) is not None:
        return "diagonal"
    if obtuse_check(mat) is not None:
        return "obtuse"
    return None


def _positivity_exponent(m: int, blocks: str) -> int:
    """Smallest c with 1 + coef * 2^-c > 0 for every top-level coefficient."""
    worst = max(-v for row in _layer_rows(m, m, blocks) for v in row if v < 0)
    c = 1
    while Fraction(1, 1 << c) * worst >= 1:
        c += 1
    return c


def _xs_from_exponents(exponents):
    # exponents = [c_m, g_{m-1}, ..., g_1]: x_m = 2^-c_m, x_k = x_{k+1} 2^-g_k
    xs = []
    e = 0
    for k, g in enumerate(exponents):
        e += g
        xs.append(Fraction(1, 1 << e))
    return xs[::-1]


def _search(m: int, blocks: str):
    """Exponents ``[c_m, g_{m-1}, ..., g_1]`` and the matrix they give.

    The lower levels come from the level ``m - 1`` search and keep their
    relative weights; they are moved down as one block by the gap ``g_{m-1}``.
    ``c_m`` starts at the smallest value that keeps the new blocks positive
    and both exponents are doubled until the exact checks pass.
    """
    skel = skeleton(m)
    prev_exps = _search(m - 1, blocks)[0] if m > 1 else []
    c = _positivity_exponent(m, blocks)
    failed = None
    while c <= MAX_EXPONENT:
        gap = c
        while gap <= MAX_EXPONENT:
            exps = [c] + ([gap] + prev_exps[1:] if m > 1 else [])
            mat = _assemble(m, _xs_from_exponents(exps), blocks)
            failed = _failed_property(mat, skel)
            if failed is None:
                return exps, mat
            if failed == "unit placement":
                # the exact ones come from the block zeros, not from the weights
                raise SearchFailure(f"level {m}: {blocks} blocks put a 1 off the skeleton", failed)
            if failed == "positivity" or m == 1:
                break
            gap *= 2
        c *= 2
    raise SearchFailure(f"level {m}: no weights with exponents up to {MAX_EXPONENT}; last failure: {failed}", failed)


def exit_certificate(d: "DistanceLikeMatrix") -> list:
    """Re-check with each exponent doubled in turn; True entries mean the
    weights were already small enough at that position."""
    out = []
    skel = skeleton(d.m)
    for k in range(len(d.exponents)):
        exps = list(d.exponents)
        exps[k] *= 2
        mat = _assemble(d.m, _xs_from_exponents(exps), d.blocks)
        out.append(_failed_property(mat, skel) is None)
    return out


def build_distance_like(m: int, mode: Mode | str = Mode.ADAPTIVE, blocks: str = "auto") -> DistanceLikeMatrix:
    """Build and validate the level-``m`` distance-like matrix.

    ADAPTIVE mode replaces the non-representable "sufficiently small"
    weights by powers of 1/2 found by doubling exponents until the exact
    checks pass. With ``blocks="auto"`` three block sets are tried in order
    and the first that passes is recorded in ``blocks``: the literal
    formulas, the literal formulas with the level-1 block patched, and the
    monotone surrogate blocks.
    """
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    if mode is Mode.FORMULA:
        _check_level("m", m, 1, MAX_DLM_LEVEL)
        raise NonRepresentable(
            f"{LITERAL_X_DESCRIPTION} has an exponent with more than 10^(10^10) digits; use ADAPTIVE mode"
        )
    _check_level("m", m, 1, MAX_DLM_LEVEL)
    choices = ["literal", "patched", "surrogate"] if blocks == "auto" else [blocks]
    last = None
    for b in choices:
        try:
            exps, mat = _search(m, b)
        except SearchFailure as exc:
            last = exc
            continue
        return DistanceLikeMatrix(m, mat, _xs_from_exponents(exps), Mode.ADAPTIVE, b, exps)
    raise last


@dataclass
class DlmReport:
    checks: dict  # name -> (passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def to_dict(self):
        return {name: {"passed": ok, "detail": detail} for name, (ok, detail) in self.checks.items()}


def verify_distance_like(d: DistanceLikeMatrix) -> DlmReport:
    mat = d.matrix
    checks = {}
    n = 1 << d.m
    if mat.shape != (n, n):
        skel = None
        checks["shape"] = (False, f"expected {n}x{n}, got {mat.rows}x{mat.cols}")
    else:
        skel = skeleton(d.m)

    bad = [(i, j) for i in range(mat.rows) for j in range(mat.cols) if mat.entries[i][j] <= 0]
    checks["positivity"] = (not bad, f"first nonpositive entry at {bad[0]}" if bad else "all entries > 0")

    ones = [(i, j) for i in range(mat.rows) for j in range(mat.cols) if mat.entries[i][j] == 1]
    if skel is not None:
        expected = set(skel.one_positions())
        mismatch = sorted(set(ones) ^ expected)
        checks["unit placement"] = (
            not mismatch,
            f"mismatch at {mismatch[0]}" if mismatch else "ones exactly at skeleton ones",
        )
    want = skeleton_ones(d.m)
    checks["ones count"] = (len(ones) == want, f"{len(ones)} ones, formula gives {want}")

    w = diagonal_check(mat)
    checks["diagonal"] = (w is None, "no witness" if w is None else f"witness {tuple(w)}")
    w = obtuse_check(mat)
    checks["obtuse"] = (w is None, "no witness" if w is None else f"witness {tuple(w)}")
    return DlmReport(checks)
