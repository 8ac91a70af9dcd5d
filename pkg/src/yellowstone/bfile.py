"""OEIS b-file reading and writing.

A b-file is plain text, one `index value` pair per line separated by a
single space, indices consecutive, with `#` comment lines ignored.  It
is the interchange format the OEIS publishes sequence data in, which
makes it the natural way to cross-check generated terms against the
catalogued ones.
"""

from .errors import BFileFormatError

__all__ = ["read_bfile", "write_bfile"]


def write_bfile(fh, values, start_index: int = 1) -> None:
    for i, v in enumerate(values, start_index):
        fh.write(f"{i} {v}\n")


def read_bfile(fh) -> tuple[int, list[int]]:
    """Parse a b-file; returns (first_index, values).

    Raises BFileFormatError on malformed lines, non-consecutive indices
    or non-positive values.
    """
    first = None
    expected = None
    values: list[int] = []
    for lineno, raw in enumerate(fh, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileFormatError(f"line {lineno}: expected 'index value', got {line!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileFormatError(f"line {lineno}: non-integer field in {line!r}") from None
        if expected is None:
            first = expected = idx
        if idx != expected:
            raise BFileFormatError(
                f"line {lineno}: index {idx} breaks the run (expected {expected})"
            )
        if val < 1:
            raise BFileFormatError(f"line {lineno}: value {val} not positive")
        values.append(val)
        expected += 1
    if first is None:
        raise BFileFormatError("no data lines found")
    return first, values
