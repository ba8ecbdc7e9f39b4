"""Line-oriented text format for sets, functions, vectors and maps.

::

    hrep dim=2              vrep dim=2            function dim=1
    eq 0 1 = 0              point 0 0             domain hrep dim=1
    ineq -1 0 <= 0          ray 1 0               ineq -1 <= 0
                            lin 0 1               piece 1 0
    vector dim=2                                  piece -1 0
    value 1/2 1/2           map rows=1 cols=2
                            row 1 0

Rationals are written ``p/q``.  ``#`` starts a comment; blank lines are
ignored.  A function without a ``domain`` line is defined everywhere; its
domain may also be given as ``domain vrep dim=N`` followed by generator
rows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Optional

from .errors import DimensionMismatchError, ParseError
from .forms import ConstraintForm, GeneratorForm
from .functions import GPCFunction
from .polyhedra import LinearMap, Polyhedron
from .rational import format_rational, parse_rational

KINDS = ("hrep", "vrep", "function", "vector", "map")

_HEADER_RE = re.compile(r"^(hrep|vrep|function|vector)\s+dim=(\d+)$")
_MAP_RE = re.compile(r"^map\s+rows=(\d+)\s+cols=(\d+)$")
_DOMAIN_RE = re.compile(r"^domain\s+(hrep|vrep)\s+dim=(\d+)$")


@dataclass(frozen=True)
class Document:
    kind: str
    body: Any
    name: str = ""


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _numbers(tokens, lineno, raw, expected: Optional[int] = None):
    out = []
    for tok in tokens:
        try:
            out.append(parse_rational(tok))
        except ValueError:
            raise ParseError(f"bad rational {tok!r}", lineno, raw.find(tok) + 1) from None
    if expected is not None and len(out) != expected:
        raise DimensionMismatchError(
            f"line {lineno}: expected {expected} numbers, got {len(out)}"
        )
    return out


def _row(rest: str, dim: int, sep: str, lineno: int, raw: str):
    lhs, s, rhs = rest.partition(sep)
    if not s:
        raise ParseError(f"missing {sep!r}", lineno, len(raw.rstrip()) + 1)
    a = _numbers(lhs.split(), lineno, raw, dim)
    b = _numbers(rhs.split(), lineno, raw, 1)
    return tuple(a), b[0]


class _SetBuilder:
    def __init__(self, kind: str, dim: int):
        self.kind = kind
        self.dim = dim
        self.eqs: list = []
        self.ineqs: list = []
        self.points: list = []
        self.rays: list = []
        self.lin: list = []

    def accepts(self, key: str) -> bool:
        if self.kind == "hrep":
            return key in ("eq", "ineq")
        return key in ("point", "ray", "lin")

    def add(self, key, rest, lineno, raw):
        if key == "eq":
            self.eqs.append(_row(rest, self.dim, "=", lineno, raw))
        elif key == "ineq":
            self.ineqs.append(_row(rest, self.dim, "<=", lineno, raw))
        else:
            v = tuple(_numbers(rest.split(), lineno, raw, self.dim))
            {"point": self.points, "ray": self.rays, "lin": self.lin}[key].append(v)

    def build(self) -> Polyhedron:
        if self.kind == "hrep":
            return Polyhedron.hrep(self.dim, self.eqs, self.ineqs)
        return Polyhedron.from_generators(GeneratorForm(self.dim, self.points, self.rays, self.lin))


def parse(text: str, name: str = "") -> Document:
    """Parse exactly one document."""
    docs = parse_all(text, name)
    if len(docs) != 1:
        raise ParseError(f"expected one document, found {len(docs)}")
    return docs[0]


def parse_all(text: str, name: str = "") -> list[Document]:
    docs: list[Document] = []
    state = None  # (kind, payload)

    def finish():
        if state is None:
            return
        kind, data = state
        if kind in ("hrep", "vrep"):
            body = data.build()
        elif kind == "function":
            dom_builder, pieces, dim = data
            domain = dom_builder.build() if dom_builder else Polyhedron.universe(dim)
            if not pieces:
                raise ParseError("function without pieces")
            body = GPCFunction(domain, pieces)
        elif kind == "vector":
            values, dim = data
            if len(values) != 1:
                raise ParseError("vector needs exactly one 'value' line")
            body = values[0]
        else:
            rows, nrows, ncols = data
            if len(rows) != nrows:
                raise DimensionMismatchError(f"map declares {nrows} rows, found {len(rows)}")
            body = LinearMap(tuple(rows), ncols)
        docs.append(Document(kind, body, name))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        m = _HEADER_RE.match(line)
        mm = _MAP_RE.match(line)
        if m or mm:
            finish()
            if mm:
                state = ("map", ([], int(mm.group(1)), int(mm.group(2))))
                continue
            kind, dim = m.group(1), int(m.group(2))
            if kind in ("hrep", "vrep"):
                state = (kind, _SetBuilder(kind, dim))
            elif kind == "function":
                state = ("function", [None, [], dim])
            else:
                state = ("vector", ([], dim))
            continue
        if state is None:
            raise ParseError("expected a header line (hrep/vrep/function/vector/map)", lineno, col)
        key, _, rest = line.partition(" ")
        kind, data = state
        if kind in ("hrep", "vrep"):
            if not data.accepts(key):
                raise ParseError(f"unexpected row {key!r} in {kind}", lineno, col)
            data.add(key, rest, lineno, raw)
        elif kind == "function":
            dim = data[2]
            dm = _DOMAIN_RE.match(line)
            if dm:
                if data[0] is not None:
                    raise ParseError("duplicate domain line", lineno, col)
                if int(dm.group(2)) != dim:
                    raise DimensionMismatchError(f"line {lineno}: domain dimension differs from function")
                data[0] = _SetBuilder(dm.group(1), dim)
            elif key == "piece":
                nums = _numbers(rest.split(), lineno, raw, dim + 1)
                data[1].append((tuple(nums[:dim]), nums[dim]))
            elif data[0] is not None and data[0].accepts(key):
                data[0].add(key, rest, lineno, raw)
            else:
                raise ParseError(f"unexpected row {key!r} in function", lineno, col)
        elif kind == "vector":
            if key != "value":
                raise ParseError(f"unexpected row {key!r} in vector", lineno, col)
            data[0].append(tuple(_numbers(rest.split(), lineno, raw, data[1])))
        else:
            if key != "row":
                raise ParseError(f"unexpected row {key!r} in map", lineno, col)
            data[0].append(tuple(_numbers(rest.split(), lineno, raw, data[2])))
    finish()
    return docs


# -- printing ------------------------------------------------------------------


def _nums(values) -> str:
    return " ".join(format_rational(v) for v in values)


def _constraint_lines(cf: ConstraintForm) -> list[str]:
    lines = [f"eq {_nums(a)} = {format_rational(b)}" for a, b in cf.equalities]
    lines += [f"ineq {_nums(a)} <= {format_rational(b)}" for a, b in cf.inequalities]
    return lines


def _generator_lines(gf: GeneratorForm) -> list[str]:
    lines = [f"point {_nums(u)}" for u in gf.points]
    lines += [f"ray {_nums(v)}" for v in gf.rays]
    lines += [f"lin {_nums(w)}" for w in gf.lineality]
    return lines


def format_hrep(P: Polyhedron) -> str:
    return "\n".join([f"hrep dim={P.dim}"] + _constraint_lines(P.constraints)) + "\n"


def format_vrep(P: Polyhedron) -> str:
    return "\n".join([f"vrep dim={P.dim}"] + _generator_lines(P.generators)) + "\n"


def format_polyhedron(P: Polyhedron, rep: str = "hrep") -> str:
    return format_hrep(P) if rep == "hrep" else format_vrep(P)


def format_function(f: GPCFunction, domain_rep: str = "hrep") -> str:
    lines = [f"function dim={f.dim}"]
    if f.domain.constraints != ConstraintForm.universe(f.dim):
        lines.append(f"domain {domain_rep} dim={f.dim}")
        if domain_rep == "hrep":
            lines += _constraint_lines(f.domain.constraints)
        else:
            lines += _generator_lines(f.domain.generators)
    lines += [f"piece {_nums(v)} {format_rational(b)}" for v, b in f.pieces]
    return "\n".join(lines) + "\n"


def format_vector(x) -> str:
    return f"vector dim={len(x)}\nvalue {_nums(x)}\n"


def format_map(T: LinearMap) -> str:
    lines = [f"map rows={T.out_dim} cols={T.in_dim}"] + [f"row {_nums(r)}" for r in T.matrix]
    return "\n".join(lines) + "\n"


def format_document(doc: Document) -> str:
    if doc.kind in ("hrep", "vrep"):
        return format_polyhedron(doc.body, doc.kind)
    if doc.kind == "function":
        return format_function(doc.body)
    if doc.kind == "vector":
        return format_vector(doc.body)
    return format_map(doc.body)
