"""``polycalc`` command-line front end.

Each command reads its operands from files (``-`` for standard input),
prints the canonical text of the result and exits with 0 on success, 1 on
a domain error and 2 on a parse or usage error.  Errors are reported on
standard error as ``error: CODE: message``.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr
from typing import Callable, Optional, Sequence

from . import faces as fc
from . import functions as fn
from . import oracles
from . import polyhedra as ph
from .errors import DimensionMismatchError, DomainError, ParseError, PolycalcError
from .functions import GPCFunction
from .polyhedra import Intersecting, LinearMap, Polyhedron
from .rational import format_rational, parse_rational
from .textformat import (
    Document,
    format_function,
    format_polyhedron,
    format_vector,
    parse,
)


class UsageError(PolycalcError):
    code = "USAGE"


# -- operand loading -----------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load(path: str) -> Document:
    return parse(_read(path), name=path)


def load_set(path: str) -> Polyhedron:
    doc = load(path)
    if doc.kind not in ("hrep", "vrep"):
        raise UsageError(f"{path}: expected hrep or vrep, got {doc.kind}")
    return doc.body


def load_function(path: str) -> GPCFunction:
    doc = load(path)
    if doc.kind != "function":
        raise UsageError(f"{path}: expected function, got {doc.kind}")
    return doc.body


def load_map(path: str) -> LinearMap:
    doc = load(path)
    if doc.kind != "map":
        raise UsageError(f"{path}: expected map, got {doc.kind}")
    return doc.body


def load_vector(arg: str, dim: int):
    """A vector file, or an inline comma-separated literal such as ``1/2,-1``."""
    if "," in arg or _looks_rational(arg):
        try:
            x = tuple(parse_rational(t) for t in arg.split(","))
        except ValueError as exc:
            raise ParseError(f"bad vector literal {arg!r}: {exc}") from None
    else:
        doc = load(arg)
        if doc.kind != "vector":
            raise UsageError(f"{arg}: expected vector, got {doc.kind}")
        x = doc.body
    if len(x) != dim:
        raise DimensionMismatchError(f"vector has dimension {len(x)}, expected {dim}")
    return x


def _looks_rational(arg: str) -> bool:
    try:
        parse_rational(arg)
        return True
    except ValueError:
        return False


# -- commands ------------------------------------------------------------------


def _set_out(P: Polyhedron, args, default: str) -> str:
    return format_polyhedron(P, args.rep or default)


def _bool(b: bool) -> str:
    return "true\n" if b else "false\n"


def _value(v) -> str:
    return "+inf\n" if v is fn.INF else format_rational(v) + "\n"


def cmd_convert(args) -> str:
    doc = load(args.set)
    if doc.kind not in ("hrep", "vrep"):
        raise UsageError(f"{args.set}: convert needs hrep or vrep input")
    return format_polyhedron(doc.body, args.rep or ("vrep" if doc.kind == "hrep" else "hrep"))


def cmd_canonical(args) -> str:
    doc = load(args.file)
    if doc.kind in ("hrep", "vrep"):
        return format_polyhedron(doc.body, args.rep or doc.kind)
    if doc.kind == "function":
        return format_function(doc.body.canonical(), args.rep or "hrep")
    if doc.kind == "vector":
        return format_vector(doc.body)
    raise UsageError("canonical needs a set, function or vector")


def cmd_contains(args) -> str:
    P = load_set(args.set)
    return _bool(ph.contains(P, load_vector(args.point, P.dim)))


def cmd_empty(args) -> str:
    return _bool(load_set(args.set).is_empty())


def cmd_equal(args) -> str:
    a, b = load(args.a), load(args.b)
    if a.kind == "function" and b.kind == "function":
        return _bool(fn.equal(a.body, b.body))
    if a.kind in ("hrep", "vrep") and b.kind in ("hrep", "vrep"):
        if a.body.dim != b.body.dim:
            raise DimensionMismatchError("sets have different dimensions")
        return _bool(ph.set_equal(a.body, b.body))
    raise UsageError("equal compares two sets or two functions")


def cmd_sum(args) -> str:
    return _set_out(ph.minkowski_sum(load_set(args.a), load_set(args.b)), args, "vrep")


def cmd_intersect(args) -> str:
    return _set_out(ph.intersect(load_set(args.a), load_set(args.b)), args, "hrep")


def cmd_hull_union(args) -> str:
    return _set_out(ph.hull_union(*[load_set(p) for p in args.sets]), args, "vrep")


def cmd_image(args) -> str:
    return _set_out(ph.image(load_map(args.map), load_set(args.set)), args, "vrep")


def cmd_preimage(args) -> str:
    return _set_out(ph.preimage(load_map(args.map), load_set(args.set)), args, "hrep")


def cmd_recession(args) -> str:
    return _set_out(ph.recession_cone(load_set(args.set)), args, "vrep")


def cmd_cone(args) -> str:
    return _set_out(ph.cone_of(load_set(args.set)), args, "vrep")


def cmd_tangent(args) -> str:
    P = load_set(args.set)
    return _set_out(ph.tangent_cone(P, load_vector(args.point, P.dim)), args, "hrep")


def cmd_normal(args) -> str:
    P = load_set(args.set)
    return _set_out(ph.normal_cone(P, load_vector(args.point, P.dim)), args, "vrep")


def cmd_polar(args) -> str:
    return _set_out(ph.polar(load_set(args.set)), args, "hrep")


def cmd_separate(args) -> str:
    res = ph.separate(load_set(args.a), load_set(args.b))
    if isinstance(res, Intersecting):
        return "intersecting\n" + format_vector(res.witness)
    return (
        "separated\n"
        + format_vector(res.functional)
        + f"sup {format_rational(res.upper)}\n"
        + f"inf {format_rational(res.lower)}\n"
    )


def _format_face(face: fc.Face, rep: str) -> str:
    J = ",".join(str(j) for j in face.indices)
    return f"# face dim={face.dim} J={{{J}}}\n" + format_polyhedron(face.body, rep)


def cmd_faces(args) -> str:
    P = load_set(args.set)
    found = fc.enumerate_faces(P)
    if args.oracle:
        oracles.check_faces(P, found)
    blocks = [_format_face(f, args.rep or "vrep") for f in found]
    return f"# {len(found)} faces\n" + "\n".join(blocks)


def cmd_expose(args) -> str:
    P = load_set(args.set)
    F = load_set(args.face)
    face = fc.canonical_face(P, F)
    y = fc.exposing_functional(P, face)
    J = ",".join(str(j) for j in face.indices)
    return f"# J={{{J}}}\n" + format_vector(y) + f"min {format_rational(fc.exposed_value(P, face))}\n"


def cmd_ripoint(args) -> str:
    return format_vector(fc.relative_interior_point(load_set(args.set)))


def cmd_feval(args) -> str:
    f = load_function(args.function)
    return _value(fn.evaluate(f, load_vector(args.point, f.dim)))


def cmd_fsum(args) -> str:
    return format_function(fn.add(load_function(args.a), load_function(args.b)).canonical())


def cmd_fconj(args) -> str:
    f = load_function(args.function)
    g = fn.conjugate(f)
    if args.oracle:
        oracles.check_conjugate(f, g)
    return format_function(g)


def cmd_fsubdiff(args) -> str:
    f = load_function(args.function)
    return _set_out(fn.subdifferential(f, load_vector(args.point, f.dim)), args, "vrep")


def cmd_fdirderiv(args) -> str:
    f = load_function(args.function)
    x = load_vector(args.point, f.dim)
    d = fn.directional_derivative(f, x)
    if args.oracle:
        oracles.check_directional_derivative(f, x, d)
    return format_function(d.canonical())


def cmd_finfconv(args) -> str:
    return format_function(fn.inf_convolution(load_function(args.a), load_function(args.b)))


def cmd_findicator(args) -> str:
    return format_function(fn.indicator(load_set(args.set)))


def cmd_fycheck(args) -> str:
    f = load_function(args.function)
    return _bool(fn.fenchel_young_check(f, load_vector(args.x, f.dim), load_vector(args.y, f.dim)))


# -- argument parsing ----------------------------------------------------------


COMMANDS: dict[str, tuple[Callable, Sequence[str], str]] = {
    "convert": (cmd_convert, ["set"], "switch between hrep and vrep"),
    "canonical": (cmd_canonical, ["file"], "print the canonical form"),
    "contains": (cmd_contains, ["set", "point"], "membership test"),
    "empty": (cmd_empty, ["set"], "emptiness test"),
    "equal": (cmd_equal, ["a", "b"], "set or function equality"),
    "sum": (cmd_sum, ["a", "b"], "Minkowski sum"),
    "intersect": (cmd_intersect, ["a", "b"], "intersection"),
    "hull-union": (cmd_hull_union, ["sets+"], "closed convex hull of a union"),
    "image": (cmd_image, ["map", "set"], "image under a linear map"),
    "preimage": (cmd_preimage, ["map", "set"], "preimage under a linear map"),
    "recession": (cmd_recession, ["set"], "recession cone"),
    "cone": (cmd_cone, ["set"], "cone generated by the set"),
    "tangent": (cmd_tangent, ["set", "point"], "tangent cone at a point"),
    "normal": (cmd_normal, ["set", "point"], "normal cone at a point"),
    "polar": (cmd_polar, ["set"], "polar set"),
    "separate": (cmd_separate, ["a", "b"], "strict separation or a common point"),
    "faces": (cmd_faces, ["set"], "all nonempty faces"),
    "expose": (cmd_expose, ["set", "face"], "exposing functional of a face"),
    "ripoint": (cmd_ripoint, ["set"], "a relative interior point"),
    "feval": (cmd_feval, ["function", "point"], "evaluate a function"),
    "fsum": (cmd_fsum, ["a", "b"], "sum of two functions"),
    "fconj": (cmd_fconj, ["function"], "conjugate function"),
    "fsubdiff": (cmd_fsubdiff, ["function", "point"], "subdifferential at a point"),
    "fdirderiv": (cmd_fdirderiv, ["function", "point"], "directional derivative at a point"),
    "finfconv": (cmd_finfconv, ["a", "b"], "infimal convolution"),
    "findicator": (cmd_findicator, ["set"], "indicator function of a set"),
    "fycheck": (cmd_fycheck, ["function", "x", "y"], "Fenchel-Young equality test"),
}

_ORACLE_COMMANDS = {"faces", "fconj", "fdirderiv"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycalc",
        description="Exact polyhedral convex sets and functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (func, operands, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        for op in operands:
            if op.endswith("+"):
                p.add_argument(op[:-1], nargs="+", metavar=op[:-1].upper())
            else:
                p.add_argument(op, metavar=op.upper())
        p.add_argument("--as", dest="rep", choices=("hrep", "vrep"), help="output representation")
        if name in _ORACLE_COMMANDS:
            p.add_argument("--oracle", action="store_true", help="cross-check against a brute-force oracle")
        p.set_defaults(func=func)
    return parser


def run(argv: Sequence[str]) -> tuple[str, str, int]:
    """Run one command and return ``(stdout, stderr, exit_code)``."""
    parser = build_parser()
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return "", err.getvalue(), int(exc.code or 0)
    try:
        out = args.func(args)
    except DomainError as exc:
        return "", f"error: {exc.code}: {exc}\n", 1
    except PolycalcError as exc:
        return "", f"error: {exc.code}: {exc}\n", 2
    except ValueError as exc:
        return "", f"error: INVALID_INPUT: {exc}\n", 2
    return out, "", 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    out, err, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
