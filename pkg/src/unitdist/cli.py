"""Command-line tools for unit-distance matrices and convex polygons.

Exit codes: 0 pass / feasible / nothing found, 1 violation / infeasible /
found, 2 usage or input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import checks, construction, corpus, extremal, geometry, realize
from .intervals import PrecisionError
from .matrix import (
    MatrixFormatError,
    SignMatrix,
    ValueMatrix,
    ZeroOneMatrix,
    format_matrix,
    format_rational,
    read_matrix,
)

SCHEMA = 1
EXIT_OK, EXIT_FOUND, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


class Outcome:
    def __init__(self, code: int, data: dict, text: str):
        self.code = code
        self.data = data
        self.text = text


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, ZeroOneMatrix):
        return x.tolist()
    if isinstance(x, SignMatrix):
        return [[str(v) for v in row] for row in x.entries]
    if isinstance(x, ValueMatrix):
        return [[format_rational(v) for v in row] for row in x.entries]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        return format_rational(Fraction(x))
    return x


# -- helpers -------------------------------------------------------------------


def _load_matrix(path):
    try:
        return read_matrix(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


NAMED_PATTERNS = {
    **extremal.CATALOG,
    "SQUARE": extremal.SQUARE,
    "GLUE_EXAMPLE_A": extremal.GLUE_EXAMPLE_A,
    "GLUE_EXAMPLE_B": extremal.GLUE_EXAMPLE_B,
}


def _load_pattern(arg):
    """A named pattern (e.g. ``INTERTWINE_3``) or a 0-1 matrix file."""
    if arg.upper() in NAMED_PATTERNS:
        return NAMED_PATTERNS[arg.upper()]
    m = _load_matrix(arg)
    if not isinstance(m, ZeroOneMatrix):
        raise InputError(f"{arg}: pattern must be a 0-1 matrix")
    return m


def _as_values(m):
    if isinstance(m, ZeroOneMatrix):
        return m.to_values()
    if isinstance(m, ValueMatrix):
        return m
    raise InputError("sign matrices carry no values to check")


def _write_or_print(text, out):
    if out:
        Path(out).write_text(text)
        return f"wrote {out}\n"
    return text


# -- subcommands ---------------------------------------------------------------


def cmd_check(args):
    m = _load_matrix(args.file)
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    unknown = set(props) - {"diagonal", "obtuse", "polygon"}
    if unknown:
        raise InputError(f"unknown properties: {', '.join(sorted(unknown))}")
    data, lines, found = {}, [], False
    for prop in props:
        if prop == "diagonal":
            w = checks.diagonal_check(_as_values(m))
            data["diagonal"] = None if w is None else w._asdict()
            lines.append("diagonal: holds" if w is None else f"diagonal: violated at (i,j,k,l) = {tuple(w)}")
        elif prop == "obtuse":
            w = checks.obtuse_check(_as_values(m))
            data["obtuse"] = None if w is None else w._asdict()
            lines.append("obtuse: holds" if w is None else f"obtuse: acute submatrix at {tuple(w)}")
        else:
            if not isinstance(m, ZeroOneMatrix):
                raise InputError("polygon recognition needs a 0-1 matrix")
            w = checks.is_rectilinear_polygon_matrix(m) or None
            data["polygon"] = bool(w)
            lines.append("polygon: non-self-intersecting polygon matrix (forbidden)" if w else "polygon: not a polygon matrix")
        found = found or w is not None
    return Outcome(EXIT_FOUND if found else EXIT_OK, data, "\n".join(lines) + "\n")


def cmd_sign(args):
    m = _load_matrix(args.file)
    s = checks.to_sign_matrix(_as_values(m))
    return Outcome(EXIT_OK, {"sign": s}, format_matrix(s))


def cmd_pattern(args):
    host = _load_pattern(args.host)
    pat = _load_pattern(args.pattern)
    emb = checks.contains_pattern(host, pat)
    if emb is None:
        return Outcome(EXIT_OK, {"contains": False}, "pattern not contained\n")
    data = {"contains": True, "rows": list(emb.rows), "cols": list(emb.cols)}
    return Outcome(EXIT_FOUND, data, f"contained at rows {list(emb.rows)} cols {list(emb.cols)}\n")


def cmd_ex(args):
    pat = _load_pattern(args.pattern)
    try:
        res = extremal.ex_bruteforce(args.a, args.b, pat, budget=args.budget)
    except extremal.BudgetExhausted as exc:
        data = {"exact": False, "lower_bound": exc.lower_bound, "example": exc.example, "nodes": exc.nodes}
        return Outcome(EXIT_CAP, data, f"{exc}\n")
    text = f"ex({args.a},{args.b}) = {res.value}\n" + format_matrix(res.extremal_example)
    return Outcome(EXIT_OK, res.to_dict(), text)


def cmd_glue(args):
    try:
        c = extremal.glue(_load_pattern(args.A), _load_pattern(args.B))
    except extremal.GlueError as exc:
        raise InputError(str(exc)) from None
    return Outcome(EXIT_OK, {"glued": c}, format_matrix(c))


def cmd_lemma1(args):
    try:
        rep = extremal.verify_lemma1(args.a, args.b, _load_pattern(args.A), _load_pattern(args.B), budget=args.budget)
    except extremal.GlueError as exc:
        raise InputError(str(exc)) from None
    except extremal.BudgetExhausted as exc:
        return Outcome(EXIT_CAP, {"exact": False, "nodes": exc.nodes}, f"{exc}\n")
    verdict = "holds" if rep.holds else "FAILS"
    text = f"ex(A) + ex(B) = {rep.ex_a} + {rep.ex_b} >= ex(C) = {rep.ex_glued}: {verdict}\n"
    return Outcome(EXIT_OK if rep.holds else EXIT_FOUND, rep.to_dict(), text)


def cmd_bounds(args):
    if args.tardos is None and args.theorem1 is None:
        raise InputError("give --tardos A B or --theorem1 N")
    data, lines = {}, []
    try:
        if args.tardos is not None:
            a, b = args.tardos
            v = extremal.tardos_bound(a, b, args.which)
            data["tardos"] = {"a": a, "b": b, "which": args.which.upper(), "bound": v}
            lines.append(f"tardos {args.which.upper()} ({a},{b}) <= {format_rational(v)} ~ {float(v):.6f}")
        if args.theorem1 is not None:
            v = extremal.theorem1_bound(args.theorem1)
            data["theorem1"] = {"n": args.theorem1, "bound": v}
            lines.append(f"theorem1 n={args.theorem1} <= {format_rational(v)} ~ {float(v):.6f}")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return Outcome(EXIT_OK, data, "\n".join(lines) + "\n")


def cmd_corollary2(args):
    audit = extremal.Corollary2Audit()
    survivors = extremal.enumerate_corollary2(audit)
    text = f"{audit.candidates} candidates, {len(audit.discarded)} discarded, {len(survivors)} survive\n"
    text += "".join(format_matrix(m) for m in survivors)
    return Outcome(EXIT_OK, audit.to_dict(), text)


def cmd_skeleton(args):
    try:
        s = construction.skeleton(args.m)
    except construction.LevelError as exc:
        raise InputError(str(exc)) from None
    text = format_matrix(s)
    return Outcome(EXIT_OK, {"m": args.m, "ones": s.ones(), "skeleton": s}, _write_or_print(text, args.output))


def cmd_block(args):
    try:
        if args.kind == "y":
            m = construction.y_block(args.r)
        elif args.kind == "z":
            m = construction.z_block(args.r)
        else:
            m = construction.simplified_layer(args.s or args.r, args.r).matrix
    except construction.LevelError as exc:
        raise InputError(str(exc)) from None
    return Outcome(EXIT_OK, {"block": m}, format_matrix(m))


def cmd_distance_like(args):
    try:
        d = construction.build_distance_like(args.m, args.mode, blocks=args.blocks)
    except construction.LevelError as exc:
        raise InputError(str(exc)) from None
    except construction.NonRepresentable as exc:
        return Outcome(EXIT_CAP, {"error": str(exc)}, f"{exc}\n")
    except construction.SearchFailure as exc:
        return Outcome(EXIT_CAP, {"error": str(exc)}, f"{exc}\n")
    data = {
        "m": d.m,
        "blocks": d.blocks,
        "provenance": d.provenance.name,
        "exponents": d.exponents,
        "x_values": d.x_values,
        "matrix": d.matrix,
    }
    return Outcome(EXIT_OK, data, _write_or_print(d.to_text(), args.output))


def cmd_verify_dlm(args):
    try:
        d = construction.DistanceLikeMatrix.from_text(Path(args.file).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except (MatrixFormatError, ValueError, KeyError) as exc:
        raise InputError(f"{args.file}: {exc}") from None
    rep = construction.verify_distance_like(d)
    lines = [f"{name}: {'pass' if ok else 'FAIL'} ({detail})" for name, (ok, detail) in rep.checks.items()]
    return Outcome(EXIT_OK if rep.passed else EXIT_FOUND, rep.to_dict(), "\n".join(lines) + "\n")


def cmd_realize(args):
    m = _load_matrix(args.file)
    if not isinstance(m, ZeroOneMatrix):
        raise InputError("realize needs a 0-1 skeleton")
    try:
        v = realize.realizable_diagonal(m, box=Fraction(args.box))
    except realize.ProblemTooLarge as exc:
        return Outcome(EXIT_CAP, {"error": str(exc)}, f"{exc}\n")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    lines = [f"{v.status} (box U = {format_rational(v.box)}, margin {format_rational(v.margin)})"]
    if v.witness is not None:
        lines.append(format_matrix(v.witness).rstrip("\n"))
    if v.certificate is not None:
        ok, msg = realize.evaluate_certificate(m, v.certificate)
        scope = "every box" if v.certificate.box_independent else "this box only"
        lines.append(f"certificate: {msg} ({'checks' if ok else 'does NOT check'}; valid for {scope})")
    lines.append(f"note: {v.note}")
    return Outcome(EXIT_OK if v.feasible else EXIT_FOUND, v.to_dict(), "\n".join(lines) + "\n")


def _load_polygon(args):
    try:
        return geometry.load_polygon(Path(args.file), strict=args.strict)
    except geometry.PolygonError as exc:
        raise InputError(f"{args.file}: {type(exc).__name__}: {exc}") from None


def cmd_polygon_analyze(args):
    p = _load_polygon(args)
    tol = None if args.tolerance is None else Fraction(args.tolerance)
    d = geometry.decompose(p)
    g = geometry.unit_graph(p, tol, d)
    skel = geometry.cross_unit_skeleton(p, tol, d)
    data = {
        "n": p.n,
        "exact_input": p.exact,
        "tolerance": g.tolerance,
        "diameter_pair": list(d.diameter_pair),
        "chain_v": list(d.chain_v),
        "chain_u": list(d.chain_u),
        "unit_edges": sorted(list(e) for e in g.edges),
        "cross_edges": len(g.cross_edges),
        "intra_edges": len(g.intra_edges),
        "skeleton": skel,
    }
    lines = [
        f"n = {p.n}, {'exact' if p.exact else 'decimal'} input, tolerance {format_rational(g.tolerance)}",
        f"chains v = {list(d.chain_v)}, u = {list(d.chain_u)} (diameter {list(d.diameter_pair)})",
        f"unit edges: {len(g.edges)} ({len(g.cross_edges)} cross, {len(g.intra_edges)} intra)",
    ]
    passed = True
    try:
        props = geometry.audit_properties(p)
        data["properties"] = props.to_dict()
        passed &= props.passed
        lines.append(f"distance matrix {props.details['shape']}: {'diagonal and obtuse hold' if props.passed else 'VIOLATION'}")
        audits = [a.strip() for a in args.audit.split(",") if a.strip()] if args.audit else []
        for name in audits:
            if name not in geometry.AUDITS:
                raise InputError(f"unknown audit {name!r}")
            rep = geometry.AUDITS[name](p, tol)
            data[name] = rep.to_dict()
            if rep.details.get("truncated"):
                lines.append(rep.details["truncated"])
                return Outcome(EXIT_CAP, data, "\n".join(lines) + "\n")
            passed &= rep.passed
            lines.append(_audit_line(rep))
    except geometry.CycleCapExceeded as exc:
        data["error"] = str(exc)
        return Outcome(EXIT_CAP, data, "\n".join(lines + [str(exc)]) + "\n")
    except PrecisionError as exc:
        data["error"] = str(exc)
        return Outcome(EXIT_CAP, data, "\n".join(lines + [str(exc)]) + "\n")
    if args.emit_skeleton:
        Path(args.emit_skeleton).write_text(format_matrix(skel))
        lines.append(f"wrote {args.emit_skeleton}")
    return Outcome(EXIT_OK if passed else EXIT_FOUND, data, "\n".join(lines) + "\n")


def _audit_line(rep):
    d = rep.details
    status = "pass" if rep.passed else "FAIL"
    if rep.name == "thm1":
        return f"thm1: {d['unit_edges']} unit edges <= {d['bound_float']:.4f}: {status}"
    if rep.name == "prop1":
        return f"prop1: {d['intra_unit_edges']} intra edges <= {d['bound']}, assignment {'ok' if d['assignment_ok'] else 'overloaded'}: {status}"
    return f"thm3: {len(d['cycles'])} cycles over {d['cross_edges']} cross edges, {d['violations']} violations: {status}"


def cmd_polygon_sample(args):
    rng = random.Random(args.seed)
    p = corpus.random_polygon(rng, args.family)
    return Outcome(EXIT_OK, {"vertices": [list(v) for v in p.vertices]}, _write_or_print(p.to_text(), args.output))


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized harnesses")

    summary, exit_codes = __doc__.strip().split("\n\n")
    parser = argparse.ArgumentParser(
        prog="unitdist",
        description=summary,
        epilog=exit_codes,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, "diagonal / obtuse / polygon-matrix checks")
    p.add_argument("file")
    p.add_argument("--properties", default="diagonal,obtuse")

    p = add("sign", cmd_sign, "(1,+,-) classification of a value matrix")
    p.add_argument("file")

    p = add("pattern", None, "pattern containment")
    psub = p.add_subparsers(dest="action", required=True)
    c = psub.add_parser("contains", parents=[common])
    c.add_argument("host")
    c.add_argument("pattern")
    c.set_defaults(func=cmd_pattern)

    p = add("ex", cmd_ex, "exact extremal function by branch and bound")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--pattern", required=True, help="0-1 matrix file or catalog name")
    p.add_argument("--budget", type=int, default=extremal.DEFAULT_BUDGET)

    p = add("glue", cmd_glue, "glue two patterns corner to corner")
    p.add_argument("A")
    p.add_argument("B")

    p = add("lemma1", cmd_lemma1, "check ex(A) + ex(B) >= ex(glue(A, B))")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--budget", type=int, default=extremal.DEFAULT_BUDGET)

    p = add("bounds", cmd_bounds, "closed-form upper bounds")
    p.add_argument("--tardos", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--which", default="A", choices=["A", "B", "a", "b"])
    p.add_argument("--theorem1", type=int, metavar="N")

    add("corollary2", cmd_corollary2, "3x3 classification with at least six ones")

    p = add("skeleton", cmd_skeleton, "skeleton matrix A_m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("block", cmd_block, "construction blocks")
    p.add_argument("kind", choices=["y", "z", "layer"])
    p.add_argument("-r", type=int, required=True, help="level")
    p.add_argument("-s", type=int, help="layer index (layer only)")

    p = add("distance-like", cmd_distance_like, "build a distance-like matrix")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--mode", choices=["adaptive", "formula"], default="adaptive")
    p.add_argument("--blocks", choices=["auto", "literal", "patched", "surrogate"], default="auto")
    p.add_argument("-o", "--output")

    p = add("verify-dlm", cmd_verify_dlm, "re-verify a distance-like matrix file")
    p.add_argument("file")

    p = add("realize", cmd_realize, "exact LP: can a skeleton carry the diagonal property")
    p.add_argument("file")
    p.add_argument("--box", default="3")

    p = add("polygon", None, "polygon analysis")
    psub = p.add_subparsers(dest="action", required=True)
    a = psub.add_parser("analyze", parents=[common])
    a.add_argument("file")
    a.add_argument("--tolerance")
    a.add_argument("--audit", default="", help="comma list of prop1,thm1,thm3")
    a.add_argument("--strict", action="store_true", help="reject clockwise input")
    a.add_argument("--emit-skeleton")
    a.set_defaults(func=cmd_polygon_analyze)
    s = psub.add_parser("sample", parents=[common])
    s.add_argument("--family", choices=corpus.FAMILIES)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_polygon_sample)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except InputError as exc:
        out = Outcome(EXIT_INPUT, {"error": str(exc)}, f"error: {exc}\n")
    except (ValueError, ZeroDivisionError) as exc:
        out = Outcome(EXIT_INPUT, {"error": str(exc)}, f"error: {exc}\n")
    if args.format == "structured":
        doc = {"schema": SCHEMA, "command": args.command, "exit_code": out.code, "result": _jsonable(out.data)}
        stdout.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        stdout.write(out.text)
    return out.code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
