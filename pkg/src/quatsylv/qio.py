"""Plain-text formats for quaternion matrices (``.qmat``) and systems (``.qsys``).

Grammar
-------
Blank lines and everything after ``#`` on a line are ignored.

``.qmat``::

    qmat   := header row*
    header := INT INT                     # rows m, columns n
    row    := entry{n}                    # exactly m rows
    entry  := NUM NUM NUM NUM             # a0 a1 a2 a3 of a0 + a1 i + a2 j + a3 k

A row is one line holding ``4 n`` numbers.  A matrix with ``n = 0`` still has
``m`` (empty) rows, written as the literal ``-`` so they are not skipped as
blank lines.

``.qsys``::

    qsys   := KIND block*
    block  := NAME ":" qmat               # NAME is A1, B1, C1, A2, ...

The writer emits every number with 17 significant digits (``%.17g``), which
round-trips IEEE doubles exactly; negative zero is written as ``0``.
"""
import math
import os
import re

import numpy as np

from .errors import ParseError, ShapeError
from .quaternion import QuatMatrix
from .systems import PATTERNS, CoupledSystem, EquationSystem, PairSystem

__all__ = [
    "format_qmat",
    "parse_qmat",
    "read_qmat",
    "write_qmat",
    "format_qsys",
    "parse_qsys",
    "read_qsys",
    "write_qsys",
]

_NAME = re.compile(r"^([ABC][1-9][0-9]*):$")


def _fmt(x):
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".17g")


def format_qmat(A):
    """Text of one matrix in ``.qmat`` form (ends with a newline)."""
    comps = A.components
    lines = [f"{A.rows} {A.cols}"]
    for row in comps:
        if not len(row):
            lines.append("-")
            continue
        lines.append("  ".join(" ".join(_fmt(v) for v in q) for q in row))
    return "\n".join(lines) + "\n"


def _tokens(text):
    """``(line_no, [(col, token), ...])`` for every non-blank line."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            out.append((n, toks))
    return out


class _Reader:
    def __init__(self, text, source):
        self.lines = _tokens(text)
        self.pos = 0
        self.source = source
        self.last_line = len(text.splitlines())

    def error(self, msg, line=None, col=None):
        return ParseError(msg, line, col, self.source)

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self, what):
        item = self.peek()
        if item is None:
            raise self.error(f"unexpected end of input, expected {what}", self.last_line + 1, 1)
        self.pos += 1
        return item

    def read_matrix(self):
        n, toks = self.next("a matrix header 'm n'")
        if len(toks) != 2:
            raise self.error(f"matrix header needs 2 integers, got {len(toks)} tokens", n, toks[0][0])
        dims = []
        for col, tok in toks:
            if not re.fullmatch(r"[0-9]+", tok):
                raise self.error(f"bad dimension {tok!r}", n, col)
            dims.append(int(tok))
        m, k = dims
        comps = np.zeros((m, k, 4))
        for i in range(m):
            line, toks = self.next(f"row {i + 1} of {m}")
            if k == 0:
                if [t for _, t in toks] != ["-"]:
                    raise self.error("a row of a 0-column matrix must be '-'", line, toks[0][0])
                continue
            if len(toks) != 4 * k:
                # point at the first surplus token, or just past the last one
                if len(toks) > 4 * k:
                    col = toks[4 * k][0]
                else:
                    col = toks[-1][0] + len(toks[-1][1])
                raise self.error(
                    f"row {i + 1} needs {4 * k} numbers ({k} quaternions), got {len(toks)}", line, col
                )
            vals = []
            for col, tok in toks:
                try:
                    v = float(tok)
                except ValueError:
                    raise self.error(f"bad number {tok!r}", line, col) from None
                if not math.isfinite(v):
                    raise self.error(f"non-finite number {tok!r}", line, col)
                vals.append(v)
            comps[i] = np.reshape(vals, (k, 4))
        return QuatMatrix(comps)


def parse_qmat(text, source=None):
    """Parse ``.qmat`` text.

    Raises
    ------
    ParseError
        With the 1-based line and column of the offending token.
    """
    r = _Reader(text, source)
    A = r.read_matrix()
    extra = r.peek()
    if extra is not None:
        line, toks = extra
        raise r.error("trailing content after matrix", line, toks[0][0])
    return A


def read_qmat(path):
    with open(path, encoding="utf-8") as fh:
        return parse_qmat(fh.read(), source=os.fspath(path))


def write_qmat(path, A):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_qmat(A))


def format_qsys(sys):
    """Text of a system in ``.qsys`` form: kind, then ``A1:``, ``B1:``, ``C1:``, ..."""
    parts = [sys.kind + "\n"]
    for i in range(1, sys.n_equations + 1):
        for c in "ABC":
            name = f"{c}{i}"
            parts.append(f"{name}:\n" + format_qmat(sys[name]))
    return "".join(parts)


def parse_qsys(text, source=None):
    """Parse ``.qsys`` text into a :class:`CoupledSystem` or :class:`PairSystem`.

    Raises
    ------
    ParseError
        Malformed text, unknown kind, missing or duplicate blocks, or
        nonconformable coefficients (the latter reported at the kind line).
    """
    r = _Reader(text, source)
    line, toks = r.next("a system kind")
    if len(toks) != 1:
        raise r.error("the first line must hold only the system kind", line, toks[1][0])
    kind_line, (kind_col, kind) = line, toks[0]
    if kind not in PATTERNS:
        raise r.error(f"unknown kind {kind!r}; expected one of {', '.join(PATTERNS)}", line, kind_col)
    coeffs = {}
    while r.peek() is not None:
        line, toks = r.next("a block label")
        m = _NAME.match(toks[0][1]) if len(toks) == 1 else None
        if m is None:
            raise r.error(f"expected a block label like 'A1:', got {toks[0][1]!r}", line, toks[0][0])
        name = m.group(1)
        if name in coeffs:
            raise r.error(f"duplicate block {name}", line, toks[0][0])
        coeffs[name] = r.read_matrix()
    cls = PairSystem if kind in PairSystem.kinds else CoupledSystem
    try:
        return cls(kind, **coeffs)
    except ShapeError as exc:
        raise r.error(str(exc), kind_line, kind_col) from None


def read_qsys(path):
    with open(path, encoding="utf-8") as fh:
        return parse_qsys(fh.read(), source=os.fspath(path))


def write_qsys(path, sys):
    if not isinstance(sys, EquationSystem):
        raise TypeError("write_qsys needs an EquationSystem")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_qsys(sys))
