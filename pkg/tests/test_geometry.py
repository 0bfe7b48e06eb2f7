import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dfs_cycles, hull, naive_antipodal
from unitdist import corpus
from unitdist.extremal import INTERTWINE_3
from unitdist.geometry import (
    CollinearError,
    DistanceMatrix,
    DuplicateVertexError,
    NonConvexError,
    OrientationError,
    PolygonParseError,
    antipodal_pairs,
    audit_properties,
    audit_proposition1,
    audit_theorem1,
    audit_theorem3,
    cross_unit_skeleton,
    decompose,
    diagonal_check_distances,
    distance_matrix,
    load_polygon,
    make_polygon,
    parse_coordinate,
    parse_polygon,
    segments_cross,
    sqdist,
    unit_graph,
)
from unitdist.matrix import ValueMatrix, ZeroOneMatrix

F = Fraction


@st.composite
def rational_polygons(draw, max_points=14):
    """Hull of random small rationals; at least a triangle."""
    pts = draw(
        st.lists(
            st.tuples(st.fractions(-5, 5, max_denominator=6), st.fractions(-5, 5, max_denominator=6)),
            min_size=3,
            max_size=max_points,
            unique=True,
        )
    )
    h = hull(pts)
    if len(h) < 3:
        h = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    return make_polygon(h)


# -- input ---------------------------------------------------------------------


def test_unit_square_valid():
    p = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert p.n == 4 and p.exact


def test_collinear_rejected():
    with pytest.raises(CollinearError):
        make_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])


def test_clockwise_policy():
    cw = [(0, 0), (0, 1), (1, 1), (1, 0)]
    p = make_polygon(cw)
    assert p.vertices[0] == (0, 0)
    assert p.vertices[1] == (1, 0)
    with pytest.raises(OrientationError):
        make_polygon(cw, strict=True)


def test_other_rejections():
    with pytest.raises(DuplicateVertexError):
        make_polygon([(0, 0), (1, 0), (0, 0), (0, 1)])
    with pytest.raises(NonConvexError):
        make_polygon([(0, 0), (4, 0), (1, 1), (0, 4)])
    with pytest.raises(CollinearError):
        make_polygon([(0, 0), (1, 1), (2, 2)])


@pytest.mark.parametrize(
    "text",
    ["", "POLY x\n", "POLY 3\n0 0\n1 0\n", "POLY 3\n0 0\n1 0\n1 a\n", "SQUARE 3\n", "{", '{"v": []}', '{"vertices": [[0, 0, 1]]}'],
)
def test_parse_errors(text):
    with pytest.raises(PolygonParseError):
        parse_polygon(text)


def test_decimal_parsing_is_exact():
    assert parse_coordinate("0.1") == (F(1, 10), True)
    assert parse_coordinate("3/7") == (F(3, 7), False)
    assert parse_coordinate("2") == (F(2), False)
    assert parse_coordinate("1e-2") == (F(1, 100), True)
    with pytest.raises(PolygonParseError):
        parse_coordinate("inf")


def test_load_files(data_dir):
    hexagon = load_polygon(data_dir / "hexagon.poly")
    assert hexagon.n == 6 and hexagon.decimal
    tri = load_polygon(data_dir / "triangle.json")
    assert tri.n == 3 and tri.vertices[2][0] == F(1, 2)
    with pytest.raises(OrientationError):
        load_polygon(data_dir / "square_cw.poly", strict=True)
    assert load_polygon(str(data_dir / "square_cw.poly")).n == 4
    with pytest.raises(PolygonParseError):
        load_polygon(data_dir / "missing.poly")


def test_text_round_trip():
    p = corpus.intertwine_hexagon(1)
    assert parse_polygon(p.to_text()) == p


# -- antipodal pairs and chains ------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(rational_polygons())
def test_antipodal_matches_oracle(p):
    assert antipodal_pairs(p) == naive_antipodal(p.vertices)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.data())
def test_antipodal_centrally_symmetric(k, data):
    # parallel edge pairs everywhere
    vecs = data.draw(st.lists(st.tuples(st.integers(1, 9), st.integers(-9, 9)), min_size=k, max_size=k, unique_by=lambda v: F(v[1], v[0])))
    vecs.sort(key=lambda v: F(v[1], v[0]))
    steps = vecs + [(-a, -b) for a, b in vecs]
    pts = [(F(0), F(0))]
    for a, b in steps[:-1]:
        pts.append((pts[-1][0] + a, pts[-1][1] + b))
    p = make_polygon(pts)
    assert antipodal_pairs(p) == naive_antipodal(p.vertices)


@settings(max_examples=200, deadline=None)
@given(rational_polygons())
def test_decomposition_partitions_at_diameter(p):
    d = decompose(p)
    a, b = d.diameter_pair
    assert sorted(d.chain_v + d.chain_u) == list(range(p.n))
    assert d.chain_v[0] == a and d.chain_v[-1] == b
    assert d.chain_u
    diam = max(sqdist(x, y) for x, y in itertools.combinations(p.vertices, 2))
    assert sqdist(p.vertices[a], p.vertices[b]) == diam
    # v runs counter-clockwise from a, u runs clockwise from a - 1
    assert all((y - x) % p.n == 1 for x, y in zip(d.chain_v, d.chain_v[1:]))
    assert d.chain_u[0] == (a - 1) % p.n
    assert all((x - y) % p.n == 1 for x, y in zip(d.chain_u, d.chain_u[1:]))


def test_fixture_chain_sizes():
    fx = corpus.fixtures()
    sizes = {name: (len(decompose(p).chain_v), len(decompose(p).chain_u)) for name, p in fx.items()}
    assert sizes["hexagon"] == (4, 2)
    assert sizes["square"] == (3, 1)
    assert sizes["triangle"] == (2, 1)
    assert sizes["intertwine"] == (3, 3)


@settings(max_examples=150, deadline=None)
@given(rational_polygons(10))
def test_cross_segments_follow_chain_order(p):
    d = decompose(p)
    pts = p.vertices
    V, U = d.chain_v, d.chain_u
    for (i, k), (j, l) in itertools.product(itertools.combinations(range(len(V)), 2), itertools.permutations(range(len(U)), 2)):
        crosses = segments_cross(pts[V[i]], pts[U[l]], pts[V[k]], pts[U[j]])
        assert crosses == (j < l), (i, j, k, l)


# -- distances -----------------------------------------------------------------


def test_square_distances():
    dm = distance_matrix(corpus.unit_square())
    assert {v for row in dm.squared for v in row} <= {F(1), F(2)}
    assert dm.shape == (3, 1)


def test_triangle_distance_matrix():
    dm = distance_matrix(corpus.unit_triangle())
    assert dm.shape == (2, 1)


def test_hexagon_distances():
    dm = distance_matrix(corpus.regular_hexagon())
    tol = F(1, 10**8)
    for row in dm.squared:
        for v in row:
            assert any(abs(v - t) < tol for t in (1, 3, 4))


def test_entry_text():
    dm = distance_matrix(corpus.unit_square())
    texts = {dm.entry_text(i, 0) for i in range(3)}
    assert texts == {"1", "sqrt(2)"}


@settings(max_examples=100, deadline=None)
@given(rational_polygons(10))
def test_distance_matrices_have_both_properties(p):
    assert audit_properties(p).passed


def test_diagonal_distance_check_flags_bad_input():
    # value matrices that no convex pair of chains can produce
    d = decompose(corpus.unit_square())
    dm = DistanceMatrix(ValueMatrix([[1, 1], [1, 1]]), d)
    assert diagonal_check_distances(dm) == (0, 0, 1, 1)
    dm = DistanceMatrix(ValueMatrix([[4, 2], [3, 5]]), d)
    assert diagonal_check_distances(dm) == (0, 0, 1, 1)


# -- unit graph ----------------------------------------------------------------


@pytest.mark.parametrize("name,count", [("triangle", 3), ("hexagon", 6), ("square", 4), ("intertwine", 6)])
def test_unit_edge_counts(name, count):
    p = corpus.fixtures()[name]
    assert len(unit_graph(p).edges) == count


def test_exact_input_has_zero_tolerance():
    assert unit_graph(corpus.unit_square()).tolerance == 0
    assert unit_graph(corpus.regular_hexagon()).tolerance == F(1, 10**9)
    # with zero tolerance the float hexagon loses its slanted sides
    assert len(unit_graph(corpus.regular_hexagon(), tolerance=0).edges) == 2
    with pytest.raises(ValueError):
        unit_graph(corpus.unit_square(), tolerance=-1)


def _unit_distance_multiset(p):
    return sorted(
        (sqdist(p.vertices[i], p.vertices[j]) == 1) for i, j in itertools.combinations(range(p.n), 2)
    )


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 5), st.fractions(-20, 20, max_denominator=9), st.fractions(-20, 20, max_denominator=9), st.integers(0, 11), st.booleans())
def test_unit_graph_invariant_under_rigid_motion_and_relabeling(family_seed, dx, dy, shift, mirror):
    rng = random.Random(family_seed)
    p = corpus.random_polygon(rng, corpus.FAMILIES[family_seed % len(corpus.FAMILIES)])
    t = F(family_seed * 7 + 1, 13)
    c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    q = p.transformed(c, s, dx, dy).rotated(shift)
    if mirror:
        q = make_polygon([(-x, y) for x, y in q.vertices], decimal=q.decimal)
    g, h = unit_graph(p), unit_graph(q)
    assert len(g.edges) == len(h.edges)
    # the edge set maps to itself under the vertex relabeling
    key = lambda poly, e: frozenset(poly.vertices[k] for k in e)
    moved = {frozenset((c * x - s * y + dx, s * x + c * y + dy) for x, y in key(p, e)) for e in g.edges}
    if mirror:
        moved = {frozenset((-x, y) for x, y in e) for e in moved}
    assert moved == {key(q, e) for e in h.edges}


def test_cross_skeleton_examples():
    assert cross_unit_skeleton(corpus.intertwine_hexagon(0)) == INTERTWINE_3
    assert cross_unit_skeleton(corpus.unit_square()) == ZeroOneMatrix([[1], [0], [1]])
    p = make_polygon([(0, 0), (F(1, 3), 0), (0, F(1, 3))])
    assert cross_unit_skeleton(p) == ZeroOneMatrix.zeros(2, 1)


# -- audits --------------------------------------------------------------------


def test_prop1_examples():
    h = audit_proposition1(corpus.regular_hexagon())
    assert h.passed and h.details["intra_unit_edges"] <= 12
    s = audit_proposition1(corpus.unit_square())
    assert s.passed and s.details["intra_unit_edges"] <= 8
    rng = random.Random(10)
    assert audit_proposition1(corpus.perturbed_circle(rng, 10)).passed


def test_prop1_literal_rule_can_fail():
    # the informational left-endpoint rule overloads a vertex somewhere in the corpus
    fails = 0
    for _, p in itertools.islice(corpus.corpus(60, seed=1), 80):
        rep = audit_proposition1(p)
        assert rep.passed
        fails += not rep.details["leftmost_rule_ok"]
    assert fails > 0


def test_thm1_examples():
    h = audit_theorem1(corpus.regular_hexagon())
    assert h.passed and h.details["unit_edges"] == 6
    assert 39 < h.details["bound_float"] < 40
    t = audit_theorem1(corpus.unit_triangle())
    assert t.passed and t.details["unit_edges"] == 3


def test_thm3_vacuous_cases():
    for p in (corpus.regular_hexagon(), corpus.unit_square()):
        rep = audit_theorem3(p)
        assert rep.passed and rep.details["cycles"] == []


def test_thm3_intertwine_cycle():
    rep = audit_theorem3(corpus.intertwine_hexagon(0))
    assert rep.passed
    (cyc,) = rep.details["cycles"]
    assert len(cyc["cycle"]) == 6
    assert cyc["uncrossed_edges"] == []
    assert cyc["matrix"] == INTERTWINE_3.tolist()
    assert not cyc["top_left_one"] and not cyc["bottom_right_one"]


def test_thm3_cycle_cap():
    rep = audit_theorem3(corpus.intertwine_hexagon(0), cap=0)
    assert not rep.passed and "truncated" in rep.details


def test_thm3_regular_polygon_cycle_is_not_a_cross_cycle():
    # sides of a regular polygon form a non-crossing unit cycle, but it uses intra edges
    rep = audit_theorem3(corpus.regular_polygon(8))
    assert rep.passed


def test_segments_cross_basics():
    a, b, c, d = (F(0), F(0)), (F(2), F(2)), (F(0), F(2)), (F(2), F(0))
    assert segments_cross(a, b, c, d)
    assert not segments_cross(a, c, b, d)
    assert not segments_cross(a, b, a, d)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cycles_match_dfs_oracle(seed):
    rng = random.Random(seed)
    p = corpus.random_polygon(rng, rng.choice(["intertwine", "equilateral", "fan"]))
    rep = audit_theorem3(p)
    g = unit_graph(p)
    expect = dfs_cycles(g.cross_edges)
    got = {
        frozenset(frozenset(e) for e in zip(c["cycle"], c["cycle"][1:] + c["cycle"][:1]))
        for c in rep.details["cycles"]
    }
    assert got == expect
