"""Exact linear feasibility of the diagonal property over a 0-1 skeleton.

Given a skeleton, the question is whether some positive matrix with entries
exactly 1 at the skeleton's ones (and free rationals elsewhere) has the
diagonal property. Strict inequalities are handled with a margin variable
``delta`` that is maximized by an exact-rational simplex with Bland's rule
over the box ``0 <= x <= U``.

Only the diagonal property is encoded. The obtuse-angle property forbids an
existential pattern and is not a linear condition, so a FEASIBLE verdict
says nothing about it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .checks import diagonal_check
from .matrix import ValueMatrix, ZeroOneMatrix, format_rational

MAX_CELLS = 36
DEFAULT_BOX = Fraction(3)
OBTUSE_NOTE = "obtuse-angle property not encoded (not a linear condition)"


class ProblemTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    """``sum coeffs[cell] * a[cell] + const  (< or <=)  0``.

    ``kind`` is ``diagonal`` (strict, from a quadruple), ``positive``
    (strict, ``-a < 0``) or ``box`` (weak, ``a - U <= 0``).
    """

    kind: str
    key: tuple
    coeffs: tuple  # ((cell, coef), ...) sorted by cell
    const: Fraction

    @property
    def strict(self) -> bool:
        return self.kind != "box"


def _quad_form(skel, i, j, k, l):
    # a_ij + a_kl - a_il - a_kj < 0
    coeffs = {}
    const = Fraction(0)
    for (r, c), sgn in (((i, j), 1), ((k, l), 1), ((i, l), -1), ((k, j), -1)):
        if skel.entries[r][c]:
            const += sgn
        else:
            coeffs[(r, c)] = coeffs.get((r, c), 0) + sgn
    return tuple(sorted((cell, Fraction(v)) for cell, v in coeffs.items() if v)), const


@dataclass
class FeasibilityProblem:
    skeleton: ZeroOneMatrix
    box: Fraction = DEFAULT_BOX
    variables: list = field(init=False)
    constraints: list = field(init=False)

    def __post_init__(self):
        s = self.skeleton
        self.box = Fraction(self.box)
        self.variables = [(i, j) for i in range(s.rows) for j in range(s.cols) if not s.entries[i][j]]
        cons = []
        for i, k in itertools.combinations(range(s.rows), 2):
            for j, l in itertools.combinations(range(s.cols), 2):
                coeffs, const = _quad_form(s, i, j, k, l)
                cons.append(Constraint("diagonal", (i, j, k, l), coeffs, const))
        for cell in self.variables:
            cons.append(Constraint("positive", cell, ((cell, Fraction(-1)),), Fraction(0)))
        self.constraints = cons

    @property
    def strict_count(self) -> int:
        return sum(1 for c in self.constraints if c.strict)

    def box_constraint(self, cell) -> Constraint:
        return Constraint("box", cell, ((cell, Fraction(1)),), -self.box)


@dataclass
class Certificate:
    """Nonnegative multipliers on constraints plus on ``a >= 0``.

    Applied to the system they give a linear form that vanishes identically
    and a constant that contradicts the sign the strict rows force.
    """

    multipliers: dict  # (kind, key) -> Fraction
    nonneg: dict  # cell -> Fraction, weights on -a <= 0
    box: Fraction

    @property
    def box_independent(self) -> bool:
        return not any(kind == "box" for kind, _ in self.multipliers)

    def to_dict(self):
        return {
            "multipliers": [
                {"kind": kind, "key": list(key), "weight": format_rational(w)}
                for (kind, key), w in sorted(self.multipliers.items())
            ],
            "nonneg": [{"cell": list(c), "weight": format_rational(w)} for c, w in sorted(self.nonneg.items())],
            "box_independent": self.box_independent,
        }


@dataclass
class FeasibilityVerdict:
    feasible: bool
    box: Fraction
    margin: Fraction  # optimal delta (<= 0 when infeasible)
    witness: ValueMatrix | None = None
    certificate: Certificate | None = None
    pivots: int = 0
    note: str = OBTUSE_NOTE

    @property
    def status(self) -> str:
        return "FEASIBLE" if self.feasible else "INFEASIBLE"

    def to_dict(self):
        out = {
            "status": self.status,
            "box": format_rational(self.box),
            "margin": format_rational(self.margin),
            "note": self.note,
        }
        if self.witness is not None:
            out["witness"] = [[format_rational(v) for v in row] for row in self.witness.entries]
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
            out["scope"] = "infeasible for every box" if self.certificate.box_independent else "infeasible within box"
        return out


# -- exact simplex -------------------------------------------------------------


class _Tableau:
    """Maximize ``obj . x`` s.t. ``A x <= b``, ``x >= 0`` with ``b >= 0``.

    Rows are sparse dicts. Slack ``i`` has column index ``nvars + i`` and
    starts basic, so the origin is the initial vertex.
    """

    def __init__(self, nvars, rows, rhs, obj):
        self.nvars = nvars
        self.rows = [dict(r) for r in rows]
        for i, r in enumerate(self.rows):
            r[nvars + i] = Fraction(1)
        self.rhs = [Fraction(b) for b in rhs]
        self.basis = [nvars + i for i in range(len(rows))]
        self.obj = {j: Fraction(v) for j, v in obj.items() if v}
        self.value = Fraction(0)
        self.pivots = 0

    def solve(self):
        while True:
            entering = min((j for j, v in self.obj.items() if v > 0), default=None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ArithmeticError("unbounded objective")
            self._pivot(best[1], entering)

    def _pivot(self, r, j):
        self.pivots += 1
        row = self.rows[r]
        a = row[j]
        for col in row:
            row[col] /= a
        self.rhs[r] /= a
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(j)
            if f is None:
                continue
            for col, v in row.items():
                nv = other.get(col, 0) - f * v
                if nv:
                    other[col] = nv
                else:
                    other.pop(col, None)
            self.rhs[i] -= f * self.rhs[r]
        f = self.obj.get(j)
        if f is not None:
            for col, v in row.items():
                nv = self.obj.get(col, 0) - f * v
                if nv:
                    self.obj[col] = nv
                else:
                    self.obj.pop(col, None)
            self.value += f * self.rhs[r]
        self.basis[r] = j

    def primal(self):
        x = [Fraction(0)] * self.nvars
        for i, b in enumerate(self.basis):
            if b < self.nvars:
                x[b] = self.rhs[i]
        return x

    def duals(self):
        return [-self.obj.get(self.nvars + i, Fraction(0)) for i in range(len(self.rows))]


_SHIFT = Fraction(2)  # delta = delta' - _SHIFT keeps the origin feasible


def realizable_diagonal(skeleton: ZeroOneMatrix, box=DEFAULT_BOX) -> FeasibilityVerdict:
    """Decide whether ``skeleton`` has a diagonal-property realization.

    Only adjacent quadruples enter the LP: every quadruple's inequality is a
    sum of adjacent ones, so the optimum margin is the same, and the
    certificate still refers to constraints of the full problem.
    """
    if skeleton.rows * skeleton.cols > MAX_CELLS:
        raise ProblemTooLarge(f"{skeleton.rows}x{skeleton.cols} exceeds {MAX_CELLS} cells")
    box = Fraction(box)
    if box <= 0:
        raise ValueError("box bound must be positive")
    prob = FeasibilityProblem(skeleton, box)
    col = {cell: n for n, cell in enumerate(prob.variables)}
    nx = len(prob.variables)
    d = nx  # delta' column

    rows, rhs, tags = [], [], []
    for i in range(skeleton.rows - 1):
        for j in range(skeleton.cols - 1):
            coeffs, const = _quad_form(skeleton, i, j, i + 1, j + 1)
            r = {col[c]: v for c, v in coeffs}
            r[d] = Fraction(1)
            rows.append(r)
            rhs.append(-const + _SHIFT)
            tags.append(("diagonal", (i, j, i + 1, j + 1)))
    for cell in prob.variables:
        rows.append({col[cell]: Fraction(-1), d: Fraction(1)})
        rhs.append(_SHIFT)
        tags.append(("positive", cell))
    for cell in prob.variables:
        rows.append({col[cell]: Fraction(1)})
        rhs.append(box)
        tags.append(("box", cell))
    # cap delta <= 1 so the maximum is finite
    rows.append({d: Fraction(1)})
    rhs.append(1 + _SHIFT)
    tags.append(("cap", ()))

    tab = _Tableau(nx + 1, rows, rhs, {d: 1})
    tab.solve()
    delta = tab.value - _SHIFT

    if delta > 0:
        x = tab.primal()
        # a free cell sitting at exactly 1 would add a stray unit entry; each
        # row touches at most four cells, so moving by delta/8 keeps delta/2
        for n in range(nx):
            if x[n] == 1:
                x[n] -= delta / 8
        vals = [[Fraction(1) if skeleton.entries[i][j] else x[col[(i, j)]] for j in range(skeleton.cols)]
                for i in range(skeleton.rows)]
        return FeasibilityVerdict(True, box, delta, witness=ValueMatrix(vals), pivots=tab.pivots)

    y = tab.duals()
    mult = {}
    for (kind, key), w in zip(tags, y):
        if w and kind != "cap":
            mult[(kind, key)] = w
    # whatever is left of the x-part of y^T A is carried by a >= 0
    nonneg = {}
    for cell in prob.variables:
        total = sum((w * rows[n].get(col[cell], 0) for n, w in enumerate(y) if w), Fraction(0))
        if total:
            nonneg[cell] = total
    cert = Certificate(mult, nonneg, box)
    return FeasibilityVerdict(False, box, delta, certificate=cert, pivots=tab.pivots)


# -- independent checks --------------------------------------------------------


def evaluate_certificate(skeleton: ZeroOneMatrix, cert: Certificate) -> tuple[bool, str]:
    """Re-derive the contradiction from the skeleton alone.

    Builds every constraint directly from its key, combines with the
    multipliers and checks that the variable part cancels and the constant
    contradicts the combined sign.
    """
    rows, cols = skeleton.rows, skeleton.cols
    linear = {}
    const = Fraction(0)
    strict_weight = Fraction(0)

    def add(cell, v):
        linear[cell] = linear.get(cell, 0) + v

    for (kind, key), w in cert.multipliers.items():
        if w < 0:
            return False, f"negative multiplier on {kind} {key}"
        if kind == "diagonal":
            i, j, k, l = key
            if not (0 <= i < k < rows and 0 <= j < l < cols):
                return False, f"bad quadruple {key}"
            for (r, c), sgn in (((i, j), 1), ((k, l), 1), ((i, l), -1), ((k, j), -1)):
                if skeleton.entries[r][c]:
                    const += w * sgn
                else:
                    add((r, c), w * sgn)
            strict_weight += w
        elif kind == "positive":
            if skeleton.entries[key[0]][key[1]]:
                return False, f"positivity row on a fixed cell {key}"
            add(tuple(key), -w)
            strict_weight += w
        elif kind == "box":
            add(tuple(key), w)
            const -= w * cert.box
        else:
            return False, f"unknown constraint kind {kind}"
    for cell, w in cert.nonneg.items():
        if w < 0:
            return False, f"negative weight on {cell} >= 0"
        add(tuple(cell), -w)
    leftover = {c: v for c, v in linear.items() if v}
    if leftover:
        return False, f"variables do not cancel: {sorted(leftover)[:3]}"
    # combined: const (< or <=) 0 must be false
    if strict_weight > 0:
        ok = const >= 0
        return ok, f"combination reads {format_rational(const)} < 0"
    ok = const > 0
    return ok, f"combination reads {format_rational(const)} <= 0"


def check_witness(skeleton: ZeroOneMatrix, witness: ValueMatrix) -> bool:
    if witness.shape != skeleton.shape:
        return False
    for i in range(skeleton.rows):
        for j in range(skeleton.cols):
            v = witness.entries[i][j]
            if v <= 0 or (v == 1) != bool(skeleton.entries[i][j]):
                return False
    return diagonal_check(witness) is None
