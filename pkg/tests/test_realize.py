import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_diagonal, zero_one_matrices
from unitdist import corpus, geometry
from unitdist.checks import polygon_matrices
from unitdist.extremal import FUREDI, INTERTWINE_3, INTERTWINE_4, SQUARE, THEOREM1_CORE
from unitdist.matrix import ZeroOneMatrix
from unitdist.realize import (
    MAX_CELLS,
    Certificate,
    ProblemTooLarge,
    check_witness,
    evaluate_certificate,
    realizable_diagonal,
)


def contradiction_from_scratch(skel, cert):
    """Rebuild each multiplied row from its key and sum them.

    Rows: a_ij + a_kl - a_il - a_kj < 0 per quadruple, -a < 0 per free cell,
    a - U <= 0 per box row, and -a <= 0 for the extra nonnegativity weights.
    Cells of the skeleton are the constant 1.
    """
    lin = {}
    const = Fraction(0)
    strict = Fraction(0)

    def add(cell, w):
        nonlocal const
        if skel[cell]:
            const += w
        else:
            lin[cell] = lin.get(cell, 0) + w

    for (kind, key), w in cert.multipliers.items():
        assert w >= 0
        if kind == "diagonal":
            i, j, k, l = key
            assert i < k and j < l
            for cell, sgn in (((i, j), 1), ((k, l), 1), ((i, l), -1), ((k, j), -1)):
                add(cell, sgn * w)
            strict += w
        elif kind == "positive":
            assert not skel[key]
            add(key, -w)
            strict += w
        elif kind == "box":
            add(key, w)
            const -= w * cert.box
        else:
            raise AssertionError(kind)
    for cell, w in cert.nonneg.items():
        assert w >= 0
        add(cell, -w)
    if any(v != 0 for v in lin.values()):
        return False
    return const >= 0 if strict > 0 else const > 0


def witness_ok(skel, w, box):
    for i in range(skel.rows):
        for j in range(skel.cols):
            v = w[i, j]
            if skel[i, j] and v != 1:
                return False
            if v <= 0 or v > box:
                return False
    return naive_diagonal(w.tolist()) is None


# -- examples ------------------------------------------------------------------


def test_all_ones_square_infeasible_single_quadruple():
    v = realizable_diagonal(SQUARE)
    assert not v.feasible and v.status == "INFEASIBLE"
    cert = v.certificate
    assert list(cert.multipliers) == [("diagonal", (0, 0, 1, 1))]
    assert not cert.nonneg
    assert cert.box_independent
    ok, msg = evaluate_certificate(SQUARE, cert)
    assert ok and "0 < 0" in msg
    assert contradiction_from_scratch(SQUARE, cert)


@pytest.mark.parametrize("skel", [INTERTWINE_3, INTERTWINE_4, THEOREM1_CORE, FUREDI, ZeroOneMatrix.zeros(2, 2)])
def test_feasible_examples(skel):
    v = realizable_diagonal(skel)
    assert v.feasible
    assert v.margin > 0
    assert check_witness(skel, v.witness)
    assert witness_ok(skel, v.witness, v.box)


def test_intertwine_realized_by_a_hexagon():
    p = corpus.intertwine_hexagon(0)
    assert geometry.cross_unit_skeleton(p) == INTERTWINE_3
    assert geometry.audit_properties(p).passed


def test_verdict_dict():
    d = realizable_diagonal(SQUARE).to_dict()
    assert d["status"] == "INFEASIBLE"
    assert d["scope"] == "infeasible for every box"
    assert "obtuse" in d["note"]


def test_size_cap():
    with pytest.raises(ProblemTooLarge):
        realizable_diagonal(ZeroOneMatrix.zeros(1, MAX_CELLS + 1))


def test_bad_box():
    with pytest.raises(ValueError):
        realizable_diagonal(SQUARE, box=0)


def test_evaluator_rejects_bogus_certificates():
    cert = Certificate({("diagonal", (0, 0, 1, 1)): Fraction(1)}, {}, Fraction(3))
    # the zero skeleton leaves free cells in the combination
    assert not evaluate_certificate(ZeroOneMatrix.zeros(2, 2), cert)[0]
    assert not contradiction_from_scratch(ZeroOneMatrix.zeros(2, 2), cert)
    neg = Certificate({("diagonal", (0, 0, 1, 1)): Fraction(-1)}, {}, Fraction(3))
    assert not evaluate_certificate(SQUARE, neg)[0]


@pytest.mark.parametrize("rows,cols", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_polygon_matrices_infeasible(rows, cols):
    for m in polygon_matrices(rows, cols):
        v = realizable_diagonal(m)
        assert not v.feasible, m
        assert contradiction_from_scratch(m, v.certificate)


# -- properties ----------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(zero_one_matrices(4, 4, min_rows=2, min_cols=2))
def test_lp_soundness(skel):
    v = realizable_diagonal(skel)
    if v.feasible:
        assert witness_ok(skel, v.witness, v.box)
    else:
        assert evaluate_certificate(skel, v.certificate)[0]
        assert contradiction_from_scratch(skel, v.certificate)


@settings(max_examples=60, deadline=None)
@given(zero_one_matrices(4, 4, min_rows=2, min_cols=2), st.data())
def test_removing_a_one_keeps_feasibility(skel, data):
    ones = skel.one_positions()
    if not ones or not realizable_diagonal(skel).feasible:
        return
    i, j = data.draw(st.sampled_from(ones))
    rows = skel.tolist()
    rows[i][j] = 0
    assert realizable_diagonal(ZeroOneMatrix(rows)).feasible


@settings(max_examples=60, deadline=None)
@given(zero_one_matrices(4, 4, min_rows=2, min_cols=2))
def test_larger_box_keeps_feasibility(skel):
    if realizable_diagonal(skel, box=3).feasible:
        assert realizable_diagonal(skel, box=10).feasible


@settings(max_examples=60, deadline=None)
@given(zero_one_matrices(4, 4, min_rows=2, min_cols=2))
def test_verdict_invariant_under_transpose_and_reversal(skel):
    feasible = realizable_diagonal(skel).feasible
    assert realizable_diagonal(skel.transpose()).feasible == feasible
    rev = ZeroOneMatrix([r[::-1] for r in skel.tolist()[::-1]])
    assert realizable_diagonal(rev).feasible == feasible


def test_square_contained_means_infeasible():
    # any skeleton with a 2x2 all-ones submatrix is infeasible
    for bits in itertools.product((0, 1), repeat=6):
        m = ZeroOneMatrix([bits[:3], bits[3:]])
        if sum(bits) >= 4 and any(
            m[0, a] and m[0, b] and m[1, a] and m[1, b] for a, b in itertools.combinations(range(3), 2)
        ):
            assert not realizable_diagonal(m).feasible
