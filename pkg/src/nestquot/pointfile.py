"""The textual point file format.

A point file describes a nested framed point over exact rationals:

    nestquot point v1
    m 2
    r 2
    lengths 1 2
    level 1
    action 1
    0
    action 2
    0
    framing 1
    1
    framing 2
    0
    level 2
    action 1
    0 0
    0 0
    action 2
    0 0
    0 0
    framing 1
    1 0
    framing 2
    0 1
    map 1
    1 0

Scalars are written "p/q", or "p" when the denominator is 1; fractions are
reduced on load.  Blank lines and "#" comments are ignored.  ``map i`` is
the quotient map from level i+1 onto level i (an n_i x n_{i+1} matrix).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .linalg import QMatrix
from .modules import FiniteModule
from .ncquot import NCQuotPoint
from .points import NestedQuotPoint, QuotPoint

HEADER = "nestquot point v1"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_rational(token: str) -> Fraction:
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"malformed rational {token!r}")
    value = Fraction(token)
    if "/" in token and token.split("/")[1] == "0":
        raise ParseError(f"zero denominator in {token!r}")
    return value


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((lineno, line))
        self.pos = 0

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)


def _expect_keyword(lines: _Lines, keyword: str, arg_count: int) -> list[str]:
    lineno, line = lines.next(keyword)
    parts = line.split()
    if parts[0] != keyword or len(parts) != 1 + arg_count:
        raise ParseError(f"line {lineno}: expected '{keyword}' with "
                         f"{arg_count} argument(s), got {line!r}")
    return parts[1:]


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {token!r}")


def _parse_matrix(lines: _Lines, rows: int, cols: int, what: str) -> QMatrix:
    flat = []
    for _ in range(rows):
        lineno, line = lines.next(f"a row of {what}")
        tokens = line.split()
        if len(tokens) != cols:
            raise ParseError(f"line {lineno}: expected {cols} entries "
                             f"for {what}, got {len(tokens)}")
        for tok in tokens:
            try:
                flat.append(parse_rational(tok))
            except ParseError as err:
                raise ParseError(f"line {lineno}: {err}") from None
    return QMatrix(rows, cols, flat)


def _parse_raw(text: str):
    lines = _Lines(text)
    lineno, line = lines.next("header")
    if line != HEADER:
        raise ParseError(f"line {lineno}: expected header {HEADER!r}")
    m = _parse_int(_expect_keyword(lines, "m", 1)[0], lineno)
    r = _parse_int(_expect_keyword(lines, "r", 1)[0], lineno)
    if m < 1 or r < 1:
        raise ParseError("m and r must be positive")
    lineno, line = lines.next("lengths")
    parts = line.split()
    if parts[0] != "lengths" or len(parts) < 2:
        raise ParseError(f"line {lineno}: expected 'lengths n_1 ... n_d'")
    lengths = [_parse_int(tok, lineno) for tok in parts[1:]]
    if any(n < 1 for n in lengths):
        raise ParseError("lengths must be positive (zero levels carry no data)")
    levels = []
    for i, n in enumerate(lengths, start=1):
        idx = _parse_int(_expect_keyword(lines, "level", 1)[0], 0)
        if idx != i:
            raise ParseError(f"expected 'level {i}', got 'level {idx}'")
        actions = []
        for var in range(1, m + 1):
            a_idx = _parse_int(_expect_keyword(lines, "action", 1)[0], 0)
            if a_idx != var:
                raise ParseError(f"level {i}: expected 'action {var}'")
            actions.append(_parse_matrix(lines, n, n, f"action {var} of level {i}"))
        framing = []
        for j in range(1, r + 1):
            f_idx = _parse_int(_expect_keyword(lines, "framing", 1)[0], 0)
            if f_idx != j:
                raise ParseError(f"level {i}: expected 'framing {j}'")
            row = _parse_matrix(lines, 1, n, f"framing {j} of level {i}")
            framing.append(row.row(0))
        levels.append((actions, framing))
    maps = []
    for i in range(1, len(lengths)):
        m_idx = _parse_int(_expect_keyword(lines, "map", 1)[0], 0)
        if m_idx != i:
            raise ParseError(f"expected 'map {i}'")
        maps.append(_parse_matrix(lines, lengths[i - 1], lengths[i], f"map {i}"))
    if not lines.done():
        lineno, line = lines.next("")
        raise ParseError(f"line {lineno}: unexpected trailing content {line!r}")
    return m, r, lengths, levels, maps


def loads_point(text: str) -> NestedQuotPoint:
    """Parse a nested point; structural invariants are checked by the caller
    through validate()."""
    m, r, lengths, levels, maps = _parse_raw(text)
    quot_levels = []
    for actions, framing in levels:
        T = FiniteModule(m, actions)
        quot_levels.append(QuotPoint(T, framing))
    return NestedQuotPoint(quot_levels, maps)


def load_point_file(path) -> NestedQuotPoint:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_point(fh.read())


def loads_nc_point(text: str) -> NCQuotPoint:
    """Parse single-level data without requiring the actions to commute."""
    m, r, lengths, levels, maps = _parse_raw(text)
    if len(lengths) != 1:
        raise ParseError("NCQuot data must have a single level")
    actions, framing = levels[0]
    return NCQuotPoint(m, actions, framing)


def load_nc_point_file(path) -> NCQuotPoint:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_nc_point(fh.read())


def dumps_point(z: NestedQuotPoint) -> str:
    """Serialize; loads_point(dumps_point(z)) reproduces z exactly."""
    if any(n < 1 for n in z.lengths):
        raise ValueError("cannot serialize zero-length levels")
    out = [HEADER]
    out.append(f"m {z.num_vars}")
    out.append(f"r {z.r}")
    out.append("lengths " + " ".join(str(n) for n in z.lengths))
    for i, lv in enumerate(z.levels, start=1):
        out.append(f"level {i}")
        for var, a in enumerate(lv.module.actions, start=1):
            out.append(f"action {var}")
            out.extend(_matrix_lines(a))
        for j, v in enumerate(lv.framing, start=1):
            out.append(f"framing {j}")
            out.append(" ".join(format_rational(x) for x in v) if v else "")
    for i, pi in enumerate(z.maps, start=1):
        out.append(f"map {i}")
        out.extend(_matrix_lines(pi))
    return "\n".join(out) + "\n"


def _matrix_lines(M: QMatrix) -> list[str]:
    lines = []
    for i in range(M.rows):
        lines.append(" ".join(format_rational(x) for x in M.row(i)))
    return lines


def save_point_file(z: NestedQuotPoint, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_point(z))
