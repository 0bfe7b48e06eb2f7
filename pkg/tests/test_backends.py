"""The compiled and pure-Python kernels must agree exactly."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import value_matrices, zero_one_matrices
from unitdist import _purekernels as pure
from unitdist import kernels

compiled = pytest.importorskip("unitdist._kernels")


@settings(max_examples=300, deadline=None)
@given(zero_one_matrices(6, 6), zero_one_matrices(3, 3))
def test_contains_agrees(host, pat):
    args = (host.row_masks(), host.cols, pat.row_masks(), pat.cols)
    assert compiled.contains(*args) == pure.contains(*args)


@settings(max_examples=40, deadline=None)
@given(zero_one_matrices(3, 3), st.integers(1, 4), st.integers(1, 4), st.sampled_from([50, 10**6]))
def test_ex_search_agrees(pat, a, b, budget):
    if pat.ones() == 0:
        return
    c = compiled.ex_search(a, b, pat.row_masks(), pat.cols, budget)
    p = pure.ex_search(a, b, pat.row_masks(), pat.cols, budget)
    # value, example rows, node count and completion flag all match
    assert tuple(c[0:1]) + (list(c[1]),) + tuple(c[2:]) == tuple(p[0:1]) + (list(p[1]),) + tuple(p[2:])


@settings(max_examples=300, deadline=None)
@given(value_matrices(7, 7, values=st.integers(0, 5)))
def test_obtuse_scan_agrees(m):
    rank = m.ranks()
    c = compiled.obtuse_scan(rank)
    p = pure.obtuse_scan(rank)
    assert (None if c is None else tuple(c)) == (None if p is None else tuple(p))


def test_dispatcher_uses_pure_for_wide_rows():
    host = [(1 << 70) | 1]
    assert kernels.contains(host, 71, [1], 1) == pure.contains(host, 71, [1], 1)


def test_backend_names():
    assert pure.BACKEND == "python"
    assert compiled.BACKEND == "cython"
