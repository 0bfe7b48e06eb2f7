"""Convex polygons, their antipodal chain split and unit-distance audits.

Coordinates are always stored as exact rationals. Decimal tokens in the input
are converted exactly (``"0.1"`` becomes ``1/10``), so every orientation test
and every squared distance is exact; only comparisons that need actual
distances (sums of square roots) go through certified interval bounds.

Chain convention: for the diameter pair ``(a, b)`` the ``v`` chain is
``a, a+1, ..., b`` counter-clockwise, both endpoints included, and the ``u``
chain is every other vertex listed from ``a - 1`` backwards. The two chains
partition the vertices, and with this orientation two cross segments
``v_i u_l`` and ``v_k u_j`` cross exactly when ``i < k`` and ``j < l``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

import networkx as nx

from .checks import ObtuseWitness, DiagonalWitness, obtuse_check
from .extremal import theorem1_bound
from .intervals import sign_of_root_sum
from .matrix import ValueMatrix, ZeroOneMatrix, format_rational

DECIMAL_TOLERANCE = Fraction(1, 10**9)
MAX_CROSS_EDGES = 64
MAX_CYCLES = 100_000


class PolygonError(ValueError):
    """Base class for invalid polygon input."""


class PolygonParseError(PolygonError):
    pass


class DuplicateVertexError(PolygonError):
    pass


class CollinearError(PolygonError):
    pass


class NonConvexError(PolygonError):
    pass


class OrientationError(PolygonError):
    pass


class CycleCapExceeded(RuntimeError):
    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


# -- input ---------------------------------------------------------------------


def parse_coordinate(token) -> tuple[Fraction, bool]:
    """Exact value of a coordinate token and whether it was a decimal."""
    if isinstance(token, bool):
        raise PolygonParseError(f"bad coordinate {token!r}")
    if isinstance(token, int):
        return Fraction(token), False
    if isinstance(token, Fraction):
        return token, False
    text = str(token).strip()
    if "/" in text:
        try:
            return Fraction(text), False
        except (ValueError, ZeroDivisionError):
            raise PolygonParseError(f"bad rational {text!r}") from None
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise PolygonParseError(f"bad coordinate {text!r}") from None
    if not value.is_finite():
        raise PolygonParseError(f"non-finite coordinate {text!r}")
    is_decimal = any(ch in text for ch in ".eE")
    return Fraction(value), is_decimal


def orient(p, q, r) -> int:
    """Sign of the turn p -> q -> r (1 for counter-clockwise)."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def sqdist(p, q) -> Fraction:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with vertices in counter-clockwise order."""

    vertices: tuple
    decimal: bool = False  # some coordinate was written as a decimal

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def exact(self) -> bool:
        return not self.decimal

    def default_tolerance(self) -> Fraction:
        return DECIMAL_TOLERANCE if self.decimal else Fraction(0)

    def rotated(self, k: int) -> "ConvexPolygon":
        k %= self.n
        return ConvexPolygon(self.vertices[k:] + self.vertices[:k], self.decimal)

    def transformed(self, cos, sin, dx, dy) -> "ConvexPolygon":
        """Rotation by the rational unit vector ``(cos, sin)`` then translation."""
        if cos * cos + sin * sin != 1:
            raise ValueError("(cos, sin) must be a unit vector")
        pts = tuple((cos * x - sin * y + dx, sin * x + cos * y + dy) for x, y in self.vertices)
        return ConvexPolygon(pts, self.decimal)

    def to_text(self) -> str:
        lines = [f"POLY {self.n}"]
        lines += [f"{format_rational(x)} {format_rational(y)}" for x, y in self.vertices]
        return "\n".join(lines) + "\n"


def make_polygon(points, strict: bool = False, decimal: bool = False) -> ConvexPolygon:
    """Validate points and return a counter-clockwise polygon.

    Clockwise input is reversed (keeping the first vertex first) unless
    ``strict`` is set, in which case it is rejected.
    """
    pts = tuple((Fraction(x), Fraction(y)) for x, y in points)
    n = len(pts)
    if n < 3:
        raise PolygonError(f"a polygon needs at least 3 vertices, got {n}")
    if len(set(pts)) != n:
        seen = set()
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicateVertexError(f"vertex {i} repeats {_fmt_point(p)}")
            seen.add(p)
    area2 = sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n))
    if area2 == 0:
        raise CollinearError("all vertices are collinear")
    if area2 < 0:
        if strict:
            raise OrientationError("vertices are in clockwise order")
        pts = (pts[0],) + tuple(reversed(pts[1:]))
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        for k in range(n):
            if k == i or k == (i + 1) % n:
                continue
            s = orient(p, q, pts[k])
            if s == 0:
                raise CollinearError(f"vertices {i}, {(i + 1) % n}, {k} are collinear")
            if s < 0:
                raise NonConvexError(f"vertex {k} lies right of edge {i}-{(i + 1) % n}")
    return ConvexPolygon(pts, decimal)


def _fmt_point(p):
    return f"({format_rational(p[0])}, {format_rational(p[1])})"


def parse_polygon(text: str, strict: bool = False) -> ConvexPolygon:
    """Read the ``POLY n`` text format or a JSON object with ``vertices``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text, parse_float=str)
        except json.JSONDecodeError as exc:
            raise PolygonParseError(f"bad JSON: {exc}") from None
        raw = doc.get("vertices") if isinstance(doc, dict) else None
        if not isinstance(raw, list):
            raise PolygonParseError('JSON polygon needs a "vertices" array')
        rows = []
        for item in raw:
            if not isinstance(item, list) or len(item) != 2:
                raise PolygonParseError(f"vertex must be an [x, y] pair, got {item!r}")
            rows.append(item)
    else:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise PolygonParseError("empty polygon file")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "POLY":
            raise PolygonParseError(f"expected 'POLY n' header, got {lines[0]!r}")
        try:
            n = int(head[1])
        except ValueError:
            raise PolygonParseError(f"bad vertex count {head[1]!r}") from None
        body = lines[1:]
        if len(body) != n:
            raise PolygonParseError(f"header says {n} vertices, found {len(body)} lines")
        rows = []
        for ln in body:
            toks = ln.split()
            if len(toks) != 2:
                raise PolygonParseError(f"expected 'x y', got {ln!r}")
            rows.append(toks)
    decimal = False
    pts = []
    for x, y in rows:
        fx, dx = parse_coordinate(x)
        fy, dy = parse_coordinate(y)
        decimal = decimal or dx or dy
        pts.append((fx, fy))
    return make_polygon(pts, strict=strict, decimal=decimal)


def load_polygon(source, strict: bool = False) -> ConvexPolygon:
    """Load from a path, or parse directly if given polygon text."""
    if isinstance(source, ConvexPolygon):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and not source.lstrip().startswith(("{", "POLY"))):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise PolygonParseError(f"cannot read {source}: {exc}") from None
        return parse_polygon(text, strict=strict)
    return parse_polygon(str(source), strict=strict)


# -- chains --------------------------------------------------------------------


def antipodal_pairs(p: ConvexPolygon) -> list[tuple[int, int]]:
    """All antipodal vertex pairs ``(i, j)``, ``i < j``, by rotating calipers.

    For each edge the farthest vertex (or two, if an edge is parallel) is
    found by advancing a pointer; every vertex between the farthest vertices
    of consecutive edges is antipodal to their shared endpoint.
    """
    pts = p.vertices
    n = p.n

    def area(i, j, k):
        a, b, c = pts[i % n], pts[j % n], pts[k % n]
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    # farthest vertices from edge (i, i+1)
    far = []
    j = 1
    for i in range(n):
        if j == i or j == i + 1:
            j = i + 2
        while area(i, i + 1, j + 1) > area(i, i + 1, j):
            j += 1
        lo = j % n
        hi = lo
        if area(i, i + 1, j + 1) == area(i, i + 1, j):
            hi = (j + 1) % n
        far.append((lo, hi))
    pairs = set()
    for i in range(n):
        # vertex i+1 is the shared endpoint of edges i and i+1
        v = (i + 1) % n
        start = far[i][0]
        end = far[(i + 1) % n][1]
        k = start
        while True:
            pairs.add((min(v, k), max(v, k)))
            if k == end:
                break
            k = (k + 1) % n
    return sorted(pairs)


@dataclass(frozen=True)
class ChainDecomposition:
    diameter_pair: tuple  # (v_1 vertex, v_k vertex)
    chain_v: tuple
    chain_u: tuple

    def side(self) -> dict:
        out = {i: "v" for i in self.chain_v}
        out.update({i: "u" for i in self.chain_u})
        return out


def decompose(p: ConvexPolygon) -> ChainDecomposition:
    """Split at the diameter pair (largest squared distance among antipodal
    pairs, lexicographically smallest on ties)."""
    pts = p.vertices
    n = p.n
    best = None
    for i, j in antipodal_pairs(p):
        key = (-sqdist(pts[i], pts[j]), i, j)
        if best is None or key < best:
            best = key
    _, a, b = best
    chain_v = _arc(a, b, n)
    if len(chain_v) == n:
        a, b = b, a
        chain_v = _arc(a, b, n)
    rest = set(range(n)) - set(chain_v)
    chain_u = tuple((a - s) % n for s in range(1, n) if (a - s) % n in rest)
    return ChainDecomposition((a, b), chain_v, chain_u)


def _arc(a, b, n):
    out = [a]
    k = a
    while k != b:
        k = (k + 1) % n
        out.append(k)
    return tuple(out)


# -- distances -----------------------------------------------------------------


@dataclass(frozen=True)
class DistanceMatrix:
    """Chain-to-chain distances, stored as exact squared values.

    ``squared`` is the exact matrix of squared distances. Order comparisons
    (the obtuse check, unit tests) work on it directly; the diagonal check
    needs the distances themselves and uses certified root bounds.
    """

    squared: ValueMatrix
    decomposition: ChainDecomposition
    exact: bool = True

    @property
    def shape(self):
        return self.squared.shape

    def entry_text(self, i, j) -> str:
        from .intervals import exact_sqrt

        q = self.squared.entries[i][j]
        r = exact_sqrt(q)
        return format_rational(r) if r is not None else f"sqrt({format_rational(q)})"


def distance_matrix(p: ConvexPolygon, d: ChainDecomposition | None = None) -> DistanceMatrix:
    d = decompose(p) if d is None else d
    pts = p.vertices
    rows = [[sqdist(pts[v], pts[u]) for u in d.chain_u] for v in d.chain_v]
    return DistanceMatrix(ValueMatrix(rows), d, p.exact)


def diagonal_check_distances(dm: DistanceMatrix, cap: int | None = None) -> DiagonalWitness | None:
    """Lexicographically first quadruple with ``d_ij + d_kl >= d_il + d_kj``."""
    sq = dm.squared.entries
    r, c = dm.shape
    for i, k in itertools.combinations(range(r), 2):
        for j, l in itertools.combinations(range(c), 2):
            terms = [(1, sq[i][j]), (1, sq[k][l]), (-1, sq[i][l]), (-1, sq[k][j])]
            if sign_of_root_sum(terms, cap) >= 0:
                return DiagonalWitness(i, j, k, l)
    return None


def obtuse_check_distances(dm: DistanceMatrix) -> ObtuseWitness | None:
    # square roots preserve order, so squared values give the same witness
    return obtuse_check(dm.squared)


# -- unit graph ----------------------------------------------------------------


def _as_tolerance(tol, p):
    if tol is None:
        return p.default_tolerance()
    t = tol if isinstance(tol, Fraction) else Fraction(str(tol))
    if t < 0:
        raise ValueError("tolerance must be nonnegative")
    return t


def is_unit(sq: Fraction, tol: Fraction) -> bool:
    """``|d - 1| <= tol`` for ``d = sqrt(sq)``, decided on squares exactly."""
    if tol == 0:
        return sq == 1
    low = max(Fraction(0), 1 - tol)
    return low * low <= sq <= (1 + tol) ** 2


@dataclass(frozen=True)
class UnitGraph:
    edges: frozenset
    cross_edges: frozenset
    intra_edges: frozenset
    tolerance: Fraction

    def __len__(self):
        return len(self.edges)


def unit_graph(p: ConvexPolygon, tolerance=None, d: ChainDecomposition | None = None) -> UnitGraph:
    tol = _as_tolerance(tolerance, p)
    d = decompose(p) if d is None else d
    side = d.side()
    pts = p.vertices
    edges, cross, intra = set(), set(), set()
    for i, j in itertools.combinations(range(p.n), 2):
        if is_unit(sqdist(pts[i], pts[j]), tol):
            edges.add((i, j))
            (cross if side[i] != side[j] else intra).add((i, j))
    return UnitGraph(frozenset(edges), frozenset(cross), frozenset(intra), tol)


def cross_unit_skeleton(p: ConvexPolygon, tolerance=None, d: ChainDecomposition | None = None) -> ZeroOneMatrix:
    tol = _as_tolerance(tolerance, p)
    d = decompose(p) if d is None else d
    pts = p.vertices
    return ZeroOneMatrix([[int(is_unit(sqdist(pts[v], pts[u]), tol)) for u in d.chain_u] for v in d.chain_v])


# -- audits --------------------------------------------------------------------


@dataclass
class AuditReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"audit": self.name, "passed": self.passed, **self.details}


def _perp(v):
    return (-v[1], v[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _strip_frame(p, d, intra):
    """Direction ``w`` near the diameter direction such that the diameter
    endpoints stay the strict extremes along ``w`` and no intra unit edge is
    parallel or perpendicular to ``w``."""
    pts = p.vertices
    a, b = d.diameter_pair
    base = (pts[b][0] - pts[a][0], pts[b][1] - pts[a][1])
    others = [k for k in range(p.n) if k not in (a, b)]
    for k in range(0, 200):
        t = Fraction(0) if k == 0 else Fraction(1, 1 << k)
        w = (base[0] + t * _perp(base)[0], base[1] + t * _perp(base)[1])
        wp = _perp(w)
        xa, xb = _dot(w, pts[a]), _dot(w, pts[b])
        if not all(xa < _dot(w, pts[q]) < xb for q in others):
            continue
        ok = True
        for i, j in intra:
            e = (pts[j][0] - pts[i][0], pts[j][1] - pts[i][1])
            if _dot(w, e) == 0 or _dot(wp, e) == 0:
                ok = False
                break
        if ok:
            return w, t
    raise ArithmeticError("no admissible strip direction found")


def audit_proposition1(p: ConvexPolygon, tolerance=None) -> AuditReport:
    """Intra-chain unit edges, at most ``2n``, with the assignment argument.

    In a frame whose x-axis points from ``v_1`` to ``v_k`` the ``v`` chain is
    the lower chain. Each intra edge is white if it rises left to right and
    black otherwise. On the lower chain white edges are charged to their left
    endpoint and black edges to their right endpoint; on the upper chain the
    other way round. Every vertex must be charged at most one edge of each
    colour. The simpler "always charge the left endpoint" rule is also
    evaluated and reported, but only informationally.
    """
    d = decompose(p)
    g = unit_graph(p, tolerance, d)
    pts = p.vertices
    side = d.side()
    intra = sorted(g.intra_edges)
    w, t = _strip_frame(p, d, intra)
    wp = _perp(w)
    charged = {}
    leftmost = {}
    for i, j in intra:
        xi, xj = _dot(w, pts[i]), _dot(w, pts[j])
        left, right = (i, j) if xi < xj else (j, i)
        rising = _dot(wp, pts[right]) > _dot(wp, pts[left])
        colour = "white" if rising else "black"
        lower = side[i] == "v"
        if lower == rising:
            owner = left
        else:
            owner = right
        charged.setdefault((owner, colour), []).append((i, j))
        leftmost.setdefault((left, colour), []).append((i, j))
    overloaded = sorted(k for k, v in charged.items() if len(v) > 1)
    literal_over = sorted(k for k, v in leftmost.items() if len(v) > 1)
    count = len(intra)
    bound = 2 * p.n
    passed = count <= bound and not overloaded
    return AuditReport(
        "prop1",
        passed,
        {
            "intra_unit_edges": count,
            "bound": bound,
            "direction_tilt": format_rational(t),
            "assignment_ok": not overloaded,
            "overloaded": [[v, c] for v, c in overloaded],
            "leftmost_rule_ok": not literal_over,
        },
    )


def audit_theorem1(p: ConvexPolygon, tolerance=None) -> AuditReport:
    d = decompose(p)
    g = unit_graph(p, tolerance, d)
    bound = theorem1_bound(p.n)
    total = len(g.edges)
    return AuditReport(
        "thm1",
        total <= bound,
        {
            "n": p.n,
            "unit_edges": total,
            "cross": len(g.cross_edges),
            "intra": len(g.intra_edges),
            "bound": format_rational(bound),
            "bound_float": float(bound),
        },
    )


def segments_cross(p, q, r, s) -> bool:
    """Open segments ``pq`` and ``rs`` share a point (no shared endpoints)."""
    if len({p, q, r, s}) < 4:
        return False
    d1, d2 = orient(p, q, r), orient(p, q, s)
    d3, d4 = orient(r, s, p), orient(r, s, q)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    # collinear overlaps cannot happen for vertices of a strictly convex polygon
    return False


def _canonical_cycle(cyc):
    """Rotate to the smallest vertex first, then head toward its smaller neighbour."""
    k = cyc.index(min(cyc))
    cyc = cyc[k:] + cyc[:k]
    if cyc[1] > cyc[-1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


def _simple_cycles(adj, cap):
    """Simple cycles (length >= 4 in a bipartite graph), each once, canonical."""
    g = nx.Graph()
    g.add_edges_from((v, w) for v, ws in adj.items() for w in ws)
    cycles = []
    for cyc in nx.simple_cycles(g):
        if len(cyc) < 3:
            continue
        cycles.append(_canonical_cycle(list(cyc)))
        if len(cycles) > cap:
            raise CycleCapExceeded(f"more than {cap} cycles", sorted(cycles[:cap], key=lambda c: (len(c), c)))
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def audit_theorem3(p: ConvexPolygon, tolerance=None, cap: int = MAX_CYCLES) -> AuditReport:
    """Every cycle of cross unit edges must have each edge crossed by another
    edge of the same cycle; a cycle with an uncrossed edge is a violation."""
    d = decompose(p)
    g = unit_graph(p, tolerance, d)
    cross = sorted(g.cross_edges)
    if len(cross) > MAX_CROSS_EDGES:
        raise CycleCapExceeded(f"{len(cross)} cross unit edges exceed the cap of {MAX_CROSS_EDGES}", [])
    adj = {}
    for i, j in cross:
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
    pts = p.vertices
    vpos = {v: k for k, v in enumerate(d.chain_v)}
    upos = {u: k for k, u in enumerate(d.chain_u)}
    partial = None
    try:
        cycles = _simple_cycles(adj, cap)
    except CycleCapExceeded as exc:
        cycles = exc.partial
        partial = str(exc)
    reports = []
    violations = 0
    for cyc in cycles:
        edges = [(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))]
        uncrossed = []
        for e in edges:
            hit = any(
                segments_cross(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])
                for f in edges
                if f is not e
            )
            if not hit:
                uncrossed.append(list(e))
        rows = sorted(vpos[v] for v in cyc if v in vpos)
        cols = sorted(upos[u] for u in cyc if u in upos)
        sub = [[0] * len(cols) for _ in rows]
        for a, b in edges:
            v, u = (a, b) if a in vpos else (b, a)
            sub[rows.index(vpos[v])][cols.index(upos[u])] = 1
        violations += bool(uncrossed)
        reports.append(
            {
                "cycle": cyc,
                "uncrossed_edges": uncrossed,
                "matrix": sub,
                "top_left_one": bool(sub[0][0]),
                "bottom_right_one": bool(sub[-1][-1]),
            }
        )
    details = {"cross_edges": len(cross), "cycles": reports, "violations": violations}
    if partial:
        details["truncated"] = partial
    return AuditReport("thm3", violations == 0 and partial is None, details)


def audit_properties(p: ConvexPolygon) -> AuditReport:
    """Diagonal and obtuse checks on the chain distance matrix."""
    dm = distance_matrix(p)
    dw = diagonal_check_distances(dm)
    ow = obtuse_check_distances(dm)
    return AuditReport(
        "props",
        dw is None and ow is None,
        {
            "shape": list(dm.shape),
            "diagonal_witness": None if dw is None else list(dw),
            "obtuse_witness": None if ow is None else list(ow),
        },
    )


AUDITS = {"prop1": audit_proposition1, "thm1": audit_theorem1, "thm3": audit_theorem3}
