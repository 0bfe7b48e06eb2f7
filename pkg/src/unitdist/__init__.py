"""Exact checks and constructions for unit distances in convex polygons."""

from .checks import contains_pattern, diagonal_check, is_rectilinear_polygon_matrix, obtuse_check, to_sign_matrix
from .construction import build_distance_like, skeleton, verify_distance_like
from .extremal import ex_bruteforce, enumerate_corollary2, glue, tardos_bound, theorem1_bound, verify_lemma1
from .geometry import audit_properties, decompose, distance_matrix, load_polygon, unit_graph
from .kernels import BACKEND
from .matrix import SignMatrix, ValueMatrix, ZeroOneMatrix, format_matrix, parse_matrix
from .realize import realizable_diagonal

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "SignMatrix",
    "ValueMatrix",
    "ZeroOneMatrix",
    "audit_properties",
    "build_distance_like",
    "contains_pattern",
    "decompose",
    "diagonal_check",
    "distance_matrix",
    "enumerate_corollary2",
    "ex_bruteforce",
    "format_matrix",
    "glue",
    "is_rectilinear_polygon_matrix",
    "load_polygon",
    "obtuse_check",
    "parse_matrix",
    "realizable_diagonal",
    "skeleton",
    "tardos_bound",
    "theorem1_bound",
    "to_sign_matrix",
    "unit_graph",
    "verify_distance_like",
    "verify_lemma1",
]
