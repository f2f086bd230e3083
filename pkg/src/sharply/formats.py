"""Text formats: group files and near-structure tables.

Group file::

    degree: 3
    gen: 1 2 0
    gen: 1 0 2

Table file::

    order: 2
    zero: 0
    one: 1
    add:
    0 1
    1 0
    mul:
    0 0
    0 1

Blank lines and ``#`` comments are ignored in both.
"""
from __future__ import annotations

from sharply.nearfield import NearFieldError, NearStructure
from sharply.perm import GroupError, Permutation, generate_group


class FormatError(ValueError):
    def __init__(self, message, lineno=None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(text, lineno):
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {text!r}", lineno) from None


def parse_group_text(text):
    """(degree, generators) from a group file."""
    degree = None
    gens = []
    for lineno, line in _content_lines(text):
        key, sep, rest = line.partition(":")
        if not sep:
            raise FormatError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        if key == "degree":
            if degree is not None:
                raise FormatError("duplicate degree line", lineno)
            vals = _ints(rest, lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise FormatError("degree must be one positive integer", lineno)
            degree = vals[0]
        elif key == "gen":
            if degree is None:
                raise FormatError("gen line before degree line", lineno)
            images = _ints(rest, lineno)
            if len(images) != degree:
                raise FormatError(f"gen has {len(images)} images, expected {degree}", lineno)
            try:
                gens.append(Permutation(images))
            except GroupError as exc:
                raise FormatError(str(exc), lineno) from None
        else:
            raise FormatError(f"unknown key {key!r}", lineno)
    if degree is None:
        raise FormatError("missing degree line")
    return degree, gens


def read_group_text(text, label=""):
    degree, gens = parse_group_text(text)
    return generate_group(gens or [Permutation.identity(degree)], label=label)


def format_group(degree, gens):
    lines = [f"degree: {degree}"]
    lines += ["gen: " + " ".join(map(str, g)) for g in gens]
    return "\n".join(lines) + "\n"


def write_group(G):
    return format_group(G.degree, G.generators)


def _read_rows(lines, i, n, name):
    rows = []
    for r in range(n):
        if i + r >= len(lines):
            raise FormatError(f"{name} table is missing row {r}")
        lineno, line = lines[i + r]
        if ":" in line:
            raise FormatError(f"{name} table is missing row {r}", lineno)
        row = _ints(line, lineno)
        if len(row) != n:
            raise FormatError(f"{name} row {r} has {len(row)} entries, expected {n}", lineno)
        rows.append(tuple(row))
    return tuple(rows), i + n


def parse_table_text(text):
    lines = list(_content_lines(text))
    fields = {}
    tables = {}
    i = 0
    while i < len(lines):
        lineno, line = lines[i]
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError(f"expected 'key: value', got {line!r}", lineno)
        if key in ("order", "zero", "one"):
            vals = _ints(rest, lineno)
            if len(vals) != 1:
                raise FormatError(f"{key} takes one integer", lineno)
            fields[key] = vals[0]
            i += 1
        elif key in ("add", "mul"):
            if "order" not in fields:
                raise FormatError(f"{key} table before order line", lineno)
            if rest.strip():
                raise FormatError(f"rows of {key} go on the following lines", lineno)
            tables[key], i = _read_rows(lines, i + 1, fields["order"], key)
        else:
            raise FormatError(f"unknown key {key!r}", lineno)
    for need in ("order", "add", "mul"):
        if need not in fields and need not in tables:
            raise FormatError(f"missing {need!r} section")
    try:
        return NearStructure(fields["order"], tables["add"], tables["mul"],
                             zero=fields.get("zero", 0), one=fields.get("one", 1))
    except NearFieldError as exc:
        raise FormatError(str(exc)) from None


def write_table(S):
    lines = [f"order: {S.order}", f"zero: {S.zero}", f"one: {S.one}", "add:"]
    lines += [" ".join(map(str, row)) for row in S.add]
    lines.append("mul:")
    lines += [" ".join(map(str, row)) for row in S.mul]
    return "\n".join(lines) + "\n"


__all__ = [
    "FormatError",
    "format_group",
    "parse_group_text",
    "parse_table_text",
    "read_group_text",
    "write_group",
    "write_table",
]
