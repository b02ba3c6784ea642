"""Text format for arrangements.

    dim 3
    field cyclo 8
    # one normal per line
    1 0 0
    cos(1,8) sin(1,8) 0
"""

from __future__ import annotations

import logging
from pathlib import Path

from .arrangement import Arrangement, canonical_normal
from .scalar import QQ, ParseError, field_of, natural_order, parse_row, to_expr

log = logging.getLogger(__name__)


def _content(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _header(lines, want: str):
    for no, raw in lines:
        text = _content(raw)
        if not text:
            continue
        words = text.split()
        if words[0] != want:
            raise ParseError(f"expected '{want}' header, got {words[0]!r}", no, raw.index(words[0]) + 1)
        return no, raw, words
    raise ParseError(f"missing '{want}' header", 0, 0)


def parse_arrangement(text: str) -> Arrangement:
    lines = iter(enumerate(text.splitlines(), start=1))
    no, raw, words = _header(lines, "dim")
    if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
        raise ParseError("dim needs one positive integer", no, 1)
    dim = int(words[1])
    no, raw, words = _header(lines, "field")
    if words[1:] == ["QQ"]:
        order = 1
    elif len(words) == 3 and words[1] == "cyclo" and words[2].isdigit() and int(words[2]) >= 1:
        order = int(words[2])
    else:
        raise ParseError("field must be 'QQ' or 'cyclo <N>'", no, 1)

    rows: list[tuple[int, list]] = []
    for no, raw in lines:
        if not _content(raw):
            continue
        row = parse_row(raw, no)
        if len(row) != dim:
            raise ParseError(f"row has {len(row)} entries, expected {dim}", no, 1)
        for x in row:
            d = natural_order(x)
            if order % d:
                raise ParseError(f"scalar {to_expr(x)} is not in the declared field", no, 1)
        if not any(row):
            raise ParseError("zero normal", no, 1)
        rows.append((no, row))

    values = [x for _, r in rows for x in r]
    field = QQ if order == 1 else field_of(values, order)
    seen: dict[tuple, int] = {}
    out = []
    for no, row in rows:
        key = canonical_normal(tuple(field.coerce(x) for x in row))
        if key in seen:
            log.warning("line %d is proportional to line %d; dropped", no, seen[key])
            continue
        seen[key] = no
        out.append(key)
    return Arrangement(dim, field, tuple(out))


def parse_arrangement_file(path: str | Path) -> Arrangement:
    return parse_arrangement(Path(path).read_text())


def write_arrangement(A: Arrangement) -> str:
    """Canonical text: header lines, then the stored normals."""
    lines = [f"dim {A.dim}", A.field.header()]
    for a in A.normals:
        lines.append(" ".join(to_expr(x) for x in a))
    return "\n".join(lines) + "\n"


def write_arrangement_file(A: Arrangement, path: str | Path) -> None:
    Path(path).write_text(write_arrangement(A))

