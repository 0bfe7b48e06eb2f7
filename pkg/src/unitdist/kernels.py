"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``UNITDIST_PURE`` is set to a non-empty value, the
pure-Python module is used. Both expose ``contains``, ``ex_search`` and
``obtuse_scan`` with identical results.
"""

import os

from . import _purekernels as pure

compiled = None
if not os.environ.get("UNITDIST_PURE"):
    try:
        from . import _kernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else pure
BACKEND = _active.BACKEND

# the compiled kernels pack a row into one 64-bit word
_MAX_COMPILED_COLS = 64


def contains(host, ncols, pat, pcols):
    if _active is pure or ncols > _MAX_COMPILED_COLS:
        return pure.contains(host, ncols, pat, pcols)
    return _active.contains(host, ncols, pat, pcols)


def ex_search(a, b, pat, pcols, budget):
    if _active is pure or b > _MAX_COMPILED_COLS:
        return pure.ex_search(a, b, pat, pcols, budget)
    return _active.ex_search(a, b, pat, pcols, budget)


def obtuse_scan(rank):
    return _active.obtuse_scan(rank)
