"""Orbits of the sequence viewed as a permutation n -> a(n).

Known fixed points are 1, 2, 3, 4, 12, 50, 86; a handful of finite
cycles exist (6 sits on the 5-cycle 6, 8, 14, 16, 10) and everything
else is conjectured to wander forever.  Tracing is bounded by the
generated prefix: a lookup that would need more terms marks the orbit as
escaped rather than forcing unbounded generation.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidArgumentError
from .generator import SequenceState

__all__ = [
    "OrbitStatus",
    "OrbitReport",
    "trace_orbit",
    "orbit_offsets",
    "find_fixed_points",
    "CycleRecord",
    "CycleSurvey",
    "enumerate_cycles",
]


class OrbitStatus(Enum):
    FIXED_POINT = "fixed-point"
    CYCLE = "cycle"
    ESCAPED = "escaped-horizon"


@dataclass
class OrbitReport:
    """Forward and backward trajectory of one starting value.

    forward_path[0] == backward_path[0] == start.  For a finite cycle the
    forward path holds one full period (without repeating the start).
    """

    start: int
    forward_path: list[int]
    backward_path: list[int]
    status: OrbitStatus
    horizon: int
    cycle_length: int | None = None
    cycle_min: int | None = None
    note: str = ""


def trace_orbit(state: SequenceState, start: int, horizon: int | None = None,
                extend: bool = False) -> OrbitReport:
    """Iterate n -> a(n) forward and n -> position of n backward.

    Both directions stop at the horizon (default: the generated length).
    With extend=True the state is first grown to the requested horizon;
    otherwise the horizon is capped at what exists.
    """
    n = len(state)
    if horizon is None:
        horizon = n
    if horizon > n:
        if extend:
            state.extend_to(horizon)
            n = horizon
        else:
            horizon = n
    if start < 1 or start > horizon:
        raise InvalidArgumentError(f"start {start} outside [1, {horizon}]")

    note = ""
    fwd = [start]
    status = None
    x = start
    while True:
        if x > horizon:
            status = OrbitStatus.ESCAPED
            note = f"forward value {x} exceeds horizon {horizon}"
            break
        x = state.term(x)
        if x == start:
            status = OrbitStatus.CYCLE
            break
        fwd.append(x)

    bwd = [start]
    x = start
    while True:
        pos = state.inverse_position(x)
        if pos is None:
            if status is not OrbitStatus.CYCLE:
                note += ("; " if note else "") + f"backward stopped: {x} not generated"
            break
        x = pos
        if x == start:
            break
        if x > horizon:
            if status is not OrbitStatus.CYCLE:
                status = OrbitStatus.ESCAPED
                note += ("; " if note else "") + f"backward value {x} exceeds horizon {horizon}"
            bwd.append(x)
            break
        bwd.append(x)

    if status is OrbitStatus.CYCLE and len(fwd) == 1:
        status = OrbitStatus.FIXED_POINT
    length = len(fwd) if status in (OrbitStatus.CYCLE, OrbitStatus.FIXED_POINT) else None
    cmin = min(fwd) if length is not None else None
    return OrbitReport(
        start=start, forward_path=fwd, backward_path=bwd, status=status,
        horizon=horizon, cycle_length=length, cycle_min=cmin, note=note,
    )


def orbit_offsets(report: OrbitReport) -> list[tuple[int, int]]:
    """(offset, value) pairs with the smallest value observed at offset 0.

    Backward steps sit at negative offsets relative to the start, forward
    steps at positive ones; the whole walk is then shifted so its minimum
    lands on zero, which is the layout used to draw orbit pictures.
    """
    timeline = [(-i, v) for i, v in enumerate(report.backward_path)]
    timeline.reverse()
    timeline += [(i, v) for i, v in enumerate(report.forward_path)][1:]
    t_min = min(timeline, key=lambda tv: tv[1])[0]
    return [(t - t_min, v) for t, v in timeline]


def find_fixed_points(state: SequenceState, limit: int | None = None) -> list[int]:
    """All n <= limit with a(n) = n, ascending."""
    n = len(state)
    limit = n if limit is None else limit
    if limit > n:
        raise InvalidArgumentError(f"limit {limit} exceeds generated length {n}")
    val = state.as_array()[:limit]
    return (np.flatnonzero(val == np.arange(1, limit + 1)) + 1).tolist()


@dataclass
class CycleRecord:
    min_element: int
    length: int
    elements: tuple[int, ...]


@dataclass
class CycleSurvey:
    """Every finite cycle with minimum <= search_limit closing inside the
    prefix, plus the number of distinct orbits that escaped it."""

    cycles: list[CycleRecord]
    unresolved_orbits: int
    search_limit: int
    horizon: int


def enumerate_cycles(state: SequenceState, search_limit: int,
                     include_fixed_points: bool = True) -> CycleSurvey:
    """Trace every start <= search_limit and collect the finite cycles.

    In a permutation, in-degree is one, so a forward walk can only close
    by returning to its own start; reaching an already-visited value
    means the walk belongs to an orbit counted earlier.  Each cycle is
    reported once, keyed by its minimum element.
    """
    n = len(state)
    if search_limit > n:
        raise InvalidArgumentError(f"search_limit {search_limit} exceeds length {n}")
    terms = state._terms
    seen = bytearray(n + 1)
    cycles: list[CycleRecord] = []
    unresolved = 0
    for s in range(1, search_limit + 1):
        if seen[s]:
            continue
        path = [s]
        seen[s] = 1
        x = terms[s - 1]
        while True:
            if x == s:
                if len(path) > 1 or include_fixed_points:
                    cycles.append(CycleRecord(min(path), len(path), tuple(path)))
                break
            if x > n:
                unresolved += 1
                break
            if seen[x]:
                break
            seen[x] = 1
            path.append(x)
            x = terms[x - 1]
    cycles.sort(key=lambda c: c.min_element)
    return CycleSurvey(
        cycles=cycles, unresolved_orbits=unresolved,
        search_limit=search_limit, horizon=n,
    )
