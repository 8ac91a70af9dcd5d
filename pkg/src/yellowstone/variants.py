"""Generalized start triples and merge detection between two sequences.

Two sequences built from start triples (1, x, y) merge exactly when some
index m has the first m - 2 terms forming the same set and the terms at
m - 1 and m equal; from m - 1 on they then agree forever.  The detector
reports that smallest m and verifies the termwise agreement across the
searched horizon.
"""

from collections import Counter

from dataclasses import dataclass

from .errors import InternalConsistencyError, InvalidArgumentError
from .generator import Domain, SequenceState, VariantConfig

__all__ = ["MergeResult", "detect_merge", "make_variant"]


@dataclass
class MergeResult:
    merged: bool
    merge_index: int | None
    agreement_start: int | None
    horizon: int


def make_variant(x: int, y: int, domain: Domain = Domain.ALL_POSITIVE) -> VariantConfig:
    """Config for the sequence starting 1, x, y over the given domain."""
    if domain is Domain.ODD_ONLY:
        return VariantConfig(start_terms=(1, x, y), domain=domain)
    return VariantConfig(start_terms=(1, x, y))


def detect_merge(a: SequenceState, b: SequenceState, horizon: int) -> MergeResult:
    """Find the smallest m <= horizon satisfying the merge criterion.

    The prefix-set comparison runs incrementally on a signed multiset
    counter, so the whole scan is linear in the horizon.  When a merge is
    found, termwise agreement over [m - 1, horizon] is verified before
    reporting.
    """
    if horizon < 3:
        raise InvalidArgumentError(f"horizon must be >= 3, got {horizon}")
    if len(a) < horizon or len(b) < horizon:
        raise InvalidArgumentError(
            f"horizon {horizon} exceeds a generated length ({len(a)}, {len(b)})"
        )
    ta = a.terms(horizon)
    tb = b.terms(horizon)
    diff: Counter = Counter()
    imbalance = 0

    def add(v: int, d: int) -> None:
        nonlocal imbalance
        before = diff[v]
        after = before + d
        diff[v] = after
        if before == 0 and after != 0:
            imbalance += 1
        elif before != 0 and after == 0:
            imbalance -= 1

    merge_at = None
    for m in range(3, horizon + 1):
        add(ta[m - 3], +1)
        add(tb[m - 3], -1)
        if imbalance == 0 and ta[m - 2] == tb[m - 2] and ta[m - 1] == tb[m - 1]:
            merge_at = m
            break
    if merge_at is None:
        return MergeResult(merged=False, merge_index=None,
                           agreement_start=None, horizon=horizon)
    for i in range(merge_at - 2, horizon):
        if ta[i] != tb[i]:
            raise InternalConsistencyError(
                f"merge criterion met at m={merge_at} but terms diverge at {i + 1}"
            )
    return MergeResult(merged=True, merge_index=merge_at,
                       agreement_start=merge_at - 1, horizon=horizon)
