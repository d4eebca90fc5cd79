"""Burmeister ``.cxt`` files.

Layout: ``B``, a name line (possibly empty), the object and attribute
counts, the object names, the attribute names, then one row of ``.``/``X``
per object. One blank line after the counts is tolerated on input since many
existing files carry it; the writer never emits it.
"""

from __future__ import annotations

from ..errors import CxtFormatError
from ..lattice import Polarity


def write_cxt(P: Polarity, name: str = "") -> str:
    """Serialize ``P``; names must be nonempty single lines so the file reads back unchanged."""
    for label in (*P.objects, *P.features):
        text = str(label)
        if not text.strip() or "\n" in text or "\r" in text or text != text.rstrip():
            raise ValueError(f"name {label!r} cannot be stored in a .cxt file")
    if "\n" in name:
        raise ValueError("context name must be a single line")
    lines = ["B", name, str(P.n_objects), str(P.n_features)]
    lines += [str(o) for o in P.objects]
    lines += [str(f) for f in P.features]
    for row in P.incidence:
        lines.append("".join("X" if v else "." for v in row))
    return "\n".join(lines) + "\n"


def _count(lines: list[str], i: int, what: str) -> int:
    if i >= len(lines):
        raise CxtFormatError("header", f"missing {what} count", i + 1)
    text = lines[i].strip()
    if not text.isdigit():
        raise CxtFormatError("header", f"{what} count {lines[i]!r} is not a nonnegative integer", i + 1)
    return int(text)


def read_cxt_named(data: str | bytes) -> tuple[str, Polarity]:
    """Parse a ``.cxt`` document into its name and polarity; line numbers in errors are 1-based."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = data.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines or lines[0].strip() != "B":
        raise CxtFormatError("header", "first line must be 'B'", 1)
    if len(lines) < 2:
        raise CxtFormatError("header", "missing name line", 2)
    name = lines[1]
    n_obj = _count(lines, 2, "object")
    n_att = _count(lines, 3, "attribute")
    i = 4
    if i < len(lines) and lines[i].strip() == "" and n_obj + n_att > 0:
        i += 1
    need = n_obj + n_att
    names = lines[i : i + need]
    if len(names) < need:
        raise CxtFormatError("count-mismatch", f"expected {n_obj} object and {n_att} attribute names", len(lines) + 1)
    objects, features = names[:n_obj], names[n_obj:]
    i += need
    rows = []
    for r in range(n_obj):
        if i + r >= len(lines):
            raise CxtFormatError("count-mismatch", f"expected {n_obj} rows, found {r}", i + r + 1)
        text = lines[i + r].rstrip()
        if len(text) != n_att:
            raise CxtFormatError("row-length", f"row has {len(text)} entries, expected {n_att}", i + r + 1)
        bad = set(text) - {".", "X", "x"}
        if bad:
            raise CxtFormatError("row-length", f"unexpected characters {sorted(bad)}", i + r + 1)
        rows.append([ch in "Xx" for ch in text])
    extra = [k for k in range(i + n_obj, len(lines)) if lines[k].strip()]
    if extra:
        raise CxtFormatError("count-mismatch", "unexpected content after the last row", extra[0] + 1)
    return name, Polarity(objects, features, rows if rows else [[False] * n_att for _ in range(n_obj)])


def read_cxt(data: str | bytes) -> Polarity:
    return read_cxt_named(data)[1]
