"""Plain-text family and code files.

Family files start with ``#family n=<n> k=<k>`` and list one edge per line as
space-separated 1-based vertices. Code files start with ``#code n=<n> q=<q>``
and list one codeword per line as space-separated symbols in ``1..q``.
"""

from __future__ import annotations

import io as _io
import os
import re
from pathlib import Path
from typing import IO, Union

from .core import QaryCode, UniformFamily

Source = Union[str, os.PathLike, IO[str]]

_HEADER = re.compile(r"^#(family|code)\s+n=(\d+)\s+(k|q)=(\d+)\s*$")


class FormatError(ValueError):
    """A malformed family/code file; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _read_text(src: Source) -> str:
    if hasattr(src, "read"):
        return src.read()
    return Path(src).read_text(encoding="utf-8")


def _write_text(dst: Source, text: str) -> None:
    if hasattr(dst, "write"):
        dst.write(text)
    else:
        Path(dst).write_text(text, encoding="utf-8", newline="\n")


def _parse(text: str, kind: str | None, n: int | None, size: int | None):
    lines = text.split("\n")
    header = None
    body_start = 0
    if lines and lines[0].startswith("#"):
        m = _HEADER.match(lines[0].rstrip("\r"))
        if not m:
            raise FormatError(f"bad header {lines[0]!r}", 1)
        header = (m.group(1), int(m.group(2)), int(m.group(4)))
        body_start = 1
    if header is not None:
        if kind is not None and header[0] != kind:
            raise FormatError(f"expected a {kind} file, found {header[0]}", 1)
        kind = header[0]
        if n is not None and n != header[1]:
            raise FormatError(f"header n={header[1]} disagrees with requested n={n}", 1)
        if size is not None and size != header[2]:
            raise FormatError(f"header parameter {header[2]} disagrees with requested {size}", 1)
        n, size = header[1], header[2]
    if kind is None or n is None or size is None:
        raise FormatError("no header and no explicit parameters given")

    rows: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(lines[body_start:], start=body_start + 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"non-integer token in {line!r}", lineno) from None
        if kind == "family":
            if len(vals) != size:
                raise FormatError(f"edge has {len(vals)} elements, expected k={size}", lineno)
            if len(set(vals)) != len(vals):
                raise FormatError("repeated vertex inside an edge", lineno)
            if any(v < 1 or v > n for v in vals):
                raise FormatError(f"vertex outside [1, {n}]", lineno)
            key = tuple(sorted(vals))
            what = "edge"
        else:
            if len(vals) != n:
                raise FormatError(f"word has length {len(vals)}, expected n={n}", lineno)
            if any(v < 1 or v > size for v in vals):
                raise FormatError(f"symbol outside [1, {size}]", lineno)
            key = vals
            what = "word"
        if key in seen:
            raise FormatError(f"duplicate {what} (first seen at line {seen[key]})", lineno)
        seen[key] = lineno
        rows.append(key)
    if kind == "family":
        return UniformFamily(n, size, tuple(rows))
    return QaryCode(n, size, tuple(rows))


def read_family(src: Source, n: int | None = None, k: int | None = None) -> UniformFamily:
    return _parse(_read_text(src), "family", n, k)


def read_code(src: Source, n: int | None = None, q: int | None = None) -> QaryCode:
    return _parse(_read_text(src), "code", n, q)


def read_any(src: Source) -> UniformFamily | QaryCode:
    """Read a file whose header decides whether it holds a family or a code."""
    return _parse(_read_text(src), None, None, None)


def format_family(fam: UniformFamily) -> str:
    out = [f"#family n={fam.n} k={fam.k}"]
    out.extend(" ".join(map(str, e)) for e in fam.edges)
    return "\n".join(out) + "\n"


def format_code(code: QaryCode) -> str:
    out = [f"#code n={code.n} q={code.q}"]
    out.extend(" ".join(map(str, w)) for w in code.words)
    return "\n".join(out) + "\n"


def write_family(fam: UniformFamily, dst: Source) -> None:
    _write_text(dst, format_family(fam))


def write_code(code: QaryCode, dst: Source) -> None:
    _write_text(dst, format_code(code))


def write_any(obj: UniformFamily | QaryCode, dst: Source) -> None:
    if isinstance(obj, UniformFamily):
        write_family(obj, dst)
    else:
        write_code(obj, dst)


def loads(text: str) -> UniformFamily | QaryCode:
    return read_any(_io.StringIO(text))
