import io

import pytest

from focal_lab.core import QaryCode, UniformFamily
from focal_lab.io import (
    FormatError,
    format_code,
    format_family,
    loads,
    read_code,
    read_family,
    write_any,
)


def test_family_round_trip(tmp_path):
    f = UniformFamily(7, 3, ((1, 2, 4), (2, 3, 5), (1, 5, 6)))
    p = tmp_path / "f.txt"
    write_any(f, p)
    assert p.read_text() == "#family n=7 k=3\n1 2 4\n1 5 6\n2 3 5\n"
    assert read_family(p) == f
    assert loads(format_family(f)) == f


def test_code_round_trip():
    c = QaryCode(3, 4, ((4, 1, 2), (1, 1, 1)))
    text = format_code(c)
    assert text.splitlines()[0] == "#code n=3 q=4"
    assert loads(text) == c
    buf = io.StringIO()
    write_any(c, buf)
    assert read_code(io.StringIO(buf.getvalue())) == c


def test_empty_objects_round_trip():
    assert loads("#family n=5 k=2\n") == UniformFamily(5, 2, ())
    assert loads("#code n=2 q=3\n") == QaryCode(2, 3, ())


def test_blank_lines_and_comments_ignored():
    f = loads("#family n=4 k=2\n\n1 2\n# note\n3 4\n")
    assert f.edges == ((1, 2), (3, 4))


def test_headerless_needs_parameters():
    with pytest.raises(FormatError):
        loads("1 2\n")
    assert read_family(io.StringIO("2 1\n"), n=3, k=2).edges == ((1, 2),)


@pytest.mark.parametrize(
    "text,fragment,line",
    [
        ("#family n=4 k=2\n1 2\n1 2\n", "duplicate", 3),
        ("#family n=4 k=2\n1 5\n", "outside", 2),
        ("#family n=4 k=2\n1 2 3\n", "expected k=2", 2),
        ("#family n=4 k=2\n1 x\n", "non-integer", 2),
        ("#family n=4 k=2\n2 2\n", "repeated", 2),
        ("#code n=2 q=2\n1 3\n", "symbol", 2),
        ("#code n=2 q=2\n1\n", "length", 2),
        ("#famly n=4 k=2\n", "bad header", 1),
    ],
)
def test_format_errors(text, fragment, line):
    with pytest.raises(FormatError, match=fragment) as e:
        loads(text)
    assert e.value.line == line


def test_kind_mismatch():
    with pytest.raises(FormatError, match="expected a code"):
        read_code(io.StringIO("#family n=3 k=2\n1 2\n"))
