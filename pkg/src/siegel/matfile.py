"""Matrix file format: field header, dimensions, whitespace-separated entries.

    # optional comment lines
    field Q(sqrt -1)
    rows 3
    cols 2
    1 1/2+3*w
    0 -1*w
    2/5 1-1/2*w

A missing `field` line means field Q; that headerless form doubles as the
integer sensing-matrix format. Parse errors carry the 1-based line and
column plus a stable error code.
"""

from __future__ import annotations

import re

from .field import FieldCtx, is_squarefree, parse_qnum, qnum_str
from .linalg import QMatrix


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, code: str):
        super().__init__(f"line {line}, col {col}: {message} [{code}]")
        self.line = line
        self.col = col
        self.code = code


_FIELD_RE = re.compile(r"^field\s+(?:Q|Q\(\s*sqrt\s+(-?\d+)\s*\))$")
_ROWS_RE = re.compile(r"^rows\s+(\d+)$")
_COLS_RE = re.compile(r"^cols\s+(\d+)$")


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw, stripped


def parse_matrix_text(text: str) -> QMatrix:
    lines = list(_significant_lines(text))
    pos = 0

    def need_line(what: str, code: str):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"missing {what}", len(text.splitlines()) + 1, 1, code)
        out = lines[pos]
        pos += 1
        return out

    lineno, raw, stripped = need_line("header", "header")
    ctx = FieldCtx()
    if stripped.startswith("field"):
        m = _FIELD_RE.match(stripped)
        if not m:
            raise ParseError(f"bad field declaration {stripped!r}", lineno, 1, "header")
        if m.group(1) is not None:
            d = int(m.group(1))
            if d in (0, 1) or not is_squarefree(d):
                raise ParseError(f"d = {d} is not squarefree", lineno, 1, "squarefree")
            ctx = FieldCtx(d)
        lineno, raw, stripped = need_line("rows line", "dims")
    m = _ROWS_RE.match(stripped)
    if not m:
        raise ParseError(f"expected 'rows <N>', got {stripped!r}", lineno, 1, "dims")
    nrows = int(m.group(1))
    lineno, raw, stripped = need_line("cols line", "dims")
    m = _COLS_RE.match(stripped)
    if not m:
        raise ParseError(f"expected 'cols <L>', got {stripped!r}", lineno, 1, "dims")
    ncols = int(m.group(1))
    if nrows < 1 or ncols < 1:
        raise ParseError("rows and cols must be at least 1", lineno, 1, "dims")

    tokens: list[tuple[str, int, int]] = []
    for lineno, raw, _ in lines[pos:]:
        for m in re.finditer(r"\S+", raw):
            tokens.append((m.group(), lineno, m.start() + 1))
    want = nrows * ncols
    if len(tokens) != want:
        if len(tokens) < want:
            raise ParseError(
                f"expected {want} entries, found {len(tokens)}",
                tokens[-1][1] if tokens else lineno,
                tokens[-1][2] if tokens else 1,
                "count",
            )
        tok, tline, tcol = tokens[want]
        raise ParseError(f"unexpected extra entry {tok!r}", tline, tcol, "count")

    entries = []
    for tok, tline, tcol in tokens:
        try:
            entries.append(parse_qnum(tok, ctx))
        except ValueError as e:
            raise ParseError(str(e), tline, tcol, "entry") from None
    rows = [entries[i * ncols : (i + 1) * ncols] for i in range(nrows)]
    return QMatrix(ctx, rows, cols=ncols)


def parse_matrix_file(path: str) -> QMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


def render_matrix(m: QMatrix, header: bool = True, comment: str | None = None) -> str:
    """Serialize so that parse_matrix_text round-trips entrywise."""
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    if header:
        lines.append(f"field {m.ctx}")
    lines.append(f"rows {m.rows}")
    lines.append(f"cols {m.cols}")
    cells = [[qnum_str(x) for x in m.row(i)] for i in range(m.rows)]
    widths = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    for row in cells:
        lines.append(" ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
