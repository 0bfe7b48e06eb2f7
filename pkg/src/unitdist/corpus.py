"""Fixture polygons and seeded random families of convex polygons.

Families are chosen to produce many unit distances: fans of unit spokes,
centrally symmetric polygons with unit sides, Reuleaux-type polygons with
points on their arcs, and rational hexagons whose cross unit edges form the
3x3 intertwining cycle. Plain random polygons (rational points on a circle
and perturbed points on the unit circle) cover the generic case.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .geometry import ConvexPolygon, PolygonError, make_polygon, parse_polygon

MAX_N = 12


def _dec(x: float) -> str:
    return repr(float(x))


def _from_floats(points) -> ConvexPolygon:
    text = f"POLY {len(points)}\n" + "".join(f"{_dec(x)} {_dec(y)}\n" for x, y in points)
    return parse_polygon(text)


def regular_polygon(n: int, side: float = 1.0) -> ConvexPolygon:
    """Regular ``n``-gon with the given side, decimal coordinates."""
    r = side / (2 * math.sin(math.pi / n))
    return _from_floats([(r * math.cos(2 * math.pi * k / n), r * math.sin(2 * math.pi * k / n)) for k in range(n)])


def regular_hexagon() -> ConvexPolygon:
    """Unit hexagon with exact integer/half coordinates where possible."""
    h = math.sqrt(3) / 2
    return _from_floats([(1, 0), (0.5, h), (-0.5, h), (-1, 0), (-0.5, -h), (0.5, -h)])


def unit_square() -> ConvexPolygon:
    return make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def unit_triangle() -> ConvexPolygon:
    return _from_floats([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])


INTERTWINE_HEXAGONS = [
    ["-21/29 -20/29", "-13/145 -156/145", "3/5 -4/5", "11/145 -13/145", "0 0", "-13/145 -11/145"],
    ["-15/17 -8/17", "-114/325 -327/325", "7/25 -24/25", "9/221 -19/221", "0 0", "-34/325 -12/325"],
    ["-21/29 -20/29", "-174/425 -443/425", "8/17 -15/17", "78/493 -108/493", "0 0", "-11/85 -7/85"],
]


def intertwine_hexagon(k: int = 0) -> ConvexPolygon:
    """Rational hexagon whose cross unit edges form the 3x3 intertwining cycle."""
    rows = INTERTWINE_HEXAGONS[k]
    return parse_polygon(f"POLY 6\n" + "\n".join(rows) + "\n")


def fixtures() -> dict:
    return {
        "hexagon": regular_hexagon(),
        "square": unit_square(),
        "triangle": unit_triangle(),
        "intertwine": intertwine_hexagon(0),
    }


# -- random families -----------------------------------------------------------


def _circle_point(t: Fraction, r: Fraction = Fraction(1)):
    d = 1 + t * t
    return (r * (1 - t * t) / d, r * 2 * t / d)


def _rational_params(rng, k, lo, hi, den=60):
    vals = set()
    while len(vals) < k:
        vals.add(Fraction(rng.randint(int(lo * den), int(hi * den)), den))
    return sorted(vals)


def rational_circle(rng: random.Random, n: int) -> ConvexPolygon:
    """``n`` rational points on a circle of random rational radius."""
    r = Fraction(rng.randint(3, 12), rng.randint(2, 8))
    ts = _rational_params(rng, n, -5, 5, den=rng.choice([4, 12, 60]))
    pts = sorted((_circle_point(t, r) for t in ts), key=lambda p: math.atan2(p[1], p[0]))
    return make_polygon(pts)


def rational_fan(rng: random.Random, n: int) -> ConvexPolygon:
    """A centre vertex joined by unit spokes to ``n - 1`` points on an arc."""
    ts = _rational_params(rng, n - 1, Fraction(-9, 10), Fraction(9, 10), den=rng.choice([10, 30, 60]))
    pts = [(Fraction(0), Fraction(0))] + [_circle_point(t) for t in ts]
    return make_polygon(pts)


def _unit_vectors(rng, k):
    """``k`` rational unit vectors with distinct angles in ``[0, pi)``."""
    seen = {}
    while len(seen) < k:
        t = Fraction(rng.randint(0, 400), rng.randint(1, 400))
        x, y = _circle_point(t)
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        seen[math.atan2(y, x)] = (x, y)
    return [seen[a] for a in sorted(seen)]


def symmetric_equilateral(rng: random.Random, n: int) -> ConvexPolygon:
    """Centrally symmetric ``n``-gon (``n`` even) with all sides of length 1."""
    k = n // 2
    vecs = _unit_vectors(rng, k)
    steps = vecs + [(-x, -y) for x, y in vecs]
    pts = [(Fraction(0), Fraction(0))]
    for x, y in steps[:-1]:
        pts.append((pts[-1][0] + x, pts[-1][1] + y))
    return make_polygon(pts)


def reuleaux(rng: random.Random, m: int, extra: int) -> ConvexPolygon:
    """Regular odd ``m``-gon of diameter 1 with ``extra`` points on its arcs.

    Each arc is centred at a vertex and joins the two vertices opposite it,
    so every arc point is at distance 1 from that centre.
    """
    ang = [2 * math.pi * k / m for k in range(m)]
    r = 1 / (2 * math.sin(math.pi * (m - 1) / (2 * m)))
    verts = [(r * math.cos(a), r * math.sin(a)) for a in ang]
    pts = [(a, p) for a, p in zip(ang, verts)]
    half = (m - 1) // 2
    for _ in range(extra):
        c = rng.randrange(m)
        a1, a2 = verts[(c + half) % m], verts[(c + half + 1) % m]
        start = math.atan2(a1[1] - verts[c][1], a1[0] - verts[c][0])
        end = math.atan2(a2[1] - verts[c][1], a2[0] - verts[c][0])
        if end < start:
            end += 2 * math.pi
        s = start + (end - start) * rng.uniform(0.1, 0.9)
        q = (verts[c][0] + math.cos(s), verts[c][1] + math.sin(s))
        pts.append((math.atan2(q[1], q[0]), q))
    pts.sort()
    return _from_floats([p for _, p in pts])


def perturbed_circle(rng: random.Random, n: int) -> ConvexPolygon:
    """Points near the unit circle with decimal coordinates."""
    angs = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    pts = []
    for a in angs:
        rad = 1 + rng.uniform(-1e-3, 1e-3)
        pts.append((rad * math.cos(a), rad * math.sin(a)))
    return _from_floats(pts)


def moved_intertwine(rng: random.Random) -> ConvexPolygon:
    """A random rational rigid motion (possibly mirrored) of an intertwine hexagon."""
    base = intertwine_hexagon(rng.randrange(len(INTERTWINE_HEXAGONS)))
    c, s = _circle_point(Fraction(rng.randint(-50, 50), rng.randint(1, 50)))
    pts = base.vertices
    if rng.random() < 0.5:
        pts = [(-x, y) for x, y in pts]
    dx = Fraction(rng.randint(-100, 100), rng.randint(1, 20))
    dy = Fraction(rng.randint(-100, 100), rng.randint(1, 20))
    pts = [(c * x - s * y + dx, s * x + c * y + dy) for x, y in pts]
    k = rng.randrange(len(pts))
    return make_polygon(pts[k:] + pts[:k])


FAMILIES = ("circle", "fan", "equilateral", "reuleaux", "perturbed", "intertwine")


def random_polygon(rng: random.Random, family: str | None = None) -> ConvexPolygon:
    family = family or rng.choice(FAMILIES)
    for _ in range(100):
        try:
            if family == "circle":
                return rational_circle(rng, rng.randint(3, MAX_N))
            if family == "fan":
                return rational_fan(rng, rng.randint(3, MAX_N))
            if family == "equilateral":
                return symmetric_equilateral(rng, 2 * rng.randint(2, MAX_N // 2))
            if family == "reuleaux":
                m = rng.choice([3, 5, 7])
                return reuleaux(rng, m, rng.randint(0, MAX_N - m))
            if family == "intertwine":
                return moved_intertwine(rng)
            if family == "perturbed":
                return perturbed_circle(rng, rng.randint(3, MAX_N))
        except PolygonError:
            continue
        raise ValueError(f"unknown family {family!r}")
    raise RuntimeError(f"could not draw a valid {family} polygon")


def corpus(count: int = 1000, seed: int = 0):
    """Fixtures then ``count`` seeded random polygons, as ``(name, polygon)``."""
    for name, p in fixtures().items():
        yield name, p
    for k in range(len(INTERTWINE_HEXAGONS)):
        yield f"intertwine-{k}", intertwine_hexagon(k)
    rng = random.Random(seed)
    for i in range(count):
        family = FAMILIES[i % len(FAMILIES)]
        yield f"{family}-{i}", random_polygon(rng, family)
