import io

import pytest

from yellowstone import BFileFormatError
from yellowstone.bfile import read_bfile, write_bfile


def test_roundtrip():
    values = [1, 2, 3, 4, 9, 8, 15, 14]
    buf = io.StringIO()
    write_bfile(buf, values)
    first, back = read_bfile(io.StringIO(buf.getvalue()))
    assert first == 1
    assert back == values
    assert buf.getvalue().splitlines()[0] == "1 1"


def test_comments_and_blanks_ignored():
    text = "# header\n\n1 10\n2 20\n# trailing\n3 30\n"
    first, values = read_bfile(io.StringIO(text))
    assert (first, values) == (1, [10, 20, 30])


def test_gap_in_indices_rejected():
    with pytest.raises(BFileFormatError):
        read_bfile(io.StringIO("1 1\n3 2\n"))


def test_malformed_lines_rejected():
    with pytest.raises(BFileFormatError):
        read_bfile(io.StringIO("1 2 3\n"))
    with pytest.raises(BFileFormatError):
        read_bfile(io.StringIO("one 1\n"))
    with pytest.raises(BFileFormatError):
        read_bfile(io.StringIO("1 0\n"))
    with pytest.raises(BFileFormatError):
        read_bfile(io.StringIO("# nothing\n"))


def test_nonstandard_start_index_allowed_by_reader():
    first, values = read_bfile(io.StringIO("5 50\n6 60\n"))
    assert (first, values) == (5, [50, 60])
