"""Term classification, alternation checking, kappa statistics, frontiers.

Terms fall into five kinds: the initial 1, even terms, odd primes (the
downward spikes), geyser terms two steps after a prime (kappa * p, the
upward spikes), and the remaining odd composites.  The geyser assignment
is positional: whenever a(i) is prime, index i + 2 is a geyser slot, and
that wins over the parity-based kinds.

From term 213 on the sequence is conjectured to alternate between even
and odd composite terms except at terms 2p (p an odd prime), where five
successive terms read 2p, odd, p, 2j, kappa*p with kappa the least odd
prime not dividing j.  check_hypothesis_a verifies exactly that and
reports every deviation; the first 212 terms are expected to deviate.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import InsufficientDataError, InvalidArgumentError
from .generator import Domain, SequenceState
from .numtheory import least_odd_prime_not_dividing

__all__ = [
    "TermKind",
    "TermClass",
    "TermClassification",
    "classify_terms",
    "HypothesisAReport",
    "Violation",
    "check_hypothesis_a",
    "event_starts",
    "kappa_distribution",
    "FrontierSnapshot",
    "frontier_track",
]

HYPOTHESIS_A_START = 213


class TermKind(IntEnum):
    INITIAL_ONE = 0
    EVEN = 1
    PRIME = 2
    KAPPA_P = 3
    ODD_COMPOSITE = 4


@dataclass(frozen=True)
class TermClass:
    kind: TermKind
    kappa: int | None = None


class TermClassification:
    """One kind per term, with kappa multipliers for the geyser slots.

    kinds and kappa are 0-based numpy arrays (entry i describes a(i+1));
    the 1-based accessors are the user-facing surface.  anomalies lists
    the 1-based geyser-slot indexes where the prime two back does not
    divide the term, which Hypothesis A forbids beyond term 212.
    """

    def __init__(self, kinds: np.ndarray, kappa: np.ndarray, anomalies: list[int]):
        self.kinds = kinds
        self.kappa = kappa
        self.anomalies = anomalies

    def __len__(self):
        return self.kinds.size

    def __getitem__(self, n: int) -> TermClass:
        return TermClass(self.kind_of(n), self.kappa_of(n))

    def kind_of(self, n: int) -> TermKind:
        if n < 1 or n > self.kinds.size:
            raise InvalidArgumentError(f"index {n} outside [1, {self.kinds.size}]")
        return TermKind(int(self.kinds[n - 1]))

    def kappa_of(self, n: int) -> int | None:
        k = int(self.kappa[n - 1])
        return k if k else None

    def counts(self) -> dict[TermKind, int]:
        vals, cnts = np.unique(self.kinds, return_counts=True)
        return {TermKind(int(v)): int(c) for v, c in zip(vals, cnts)}


def _prime_mask(state: SequenceState, values: np.ndarray) -> np.ndarray:
    """Primality per entry, using the state's sieve plus trial division for
    the few values past it."""
    sieve = state.sieve
    mask = np.zeros(values.size, dtype=bool)
    small = values <= sieve.limit
    sv = values[small]
    mask[small] = (sv >= 2) & (sieve.spf[sv] == sv)
    for i in np.flatnonzero(~small):
        mask[i] = state._is_prime_value(int(values[i]))
    return mask


def classify_terms(state: SequenceState) -> TermClassification:
    """Classify every generated term."""
    if len(state) == 0:
        raise InvalidArgumentError("empty state")
    val = state.as_array()
    n = val.size
    is_even = (val & 1) == 0
    is_prime = _prime_mask(state, val)
    kinds = np.where(is_even, TermKind.EVEN, TermKind.ODD_COMPOSITE).astype(np.int8)
    kinds[is_prime] = TermKind.PRIME
    kinds[val == 1] = TermKind.INITIAL_ONE
    kappa = np.zeros(n, dtype=np.int64)
    anomalies: list[int] = []
    slots = np.flatnonzero(is_prime[: n - 2] if n > 2 else np.zeros(0, bool)) + 2
    if slots.size:
        divisible = val[slots] % val[slots - 2] == 0
        good = slots[divisible]
        kinds[good] = TermKind.KAPPA_P
        kappa[good] = val[good] // val[good - 2]
        anomalies = (slots[~divisible] + 1).tolist()
    # the classification of 1 and of primes is never overridden
    kinds[val == 1] = TermKind.INITIAL_ONE
    kinds[is_prime] = TermKind.PRIME
    kappa[kinds != TermKind.KAPPA_P] = 0
    return TermClassification(kinds, kappa, anomalies)


@dataclass
class Violation:
    index: int
    expected: str
    observed: tuple


@dataclass
class HypothesisAReport:
    checked_range: tuple[int, int]
    violations: list[Violation]
    five_term_events: int
    kappa_histogram: dict[int, int]

    @property
    def holds(self) -> bool:
        return not self.violations


def event_starts(state: SequenceState, start: int = HYPOTHESIS_A_START,
                 end: int | None = None) -> np.ndarray:
    """1-based indexes in [start, end] whose term is twice an odd prime.

    Each one opens a five-term pattern; patterns may chain when the even
    term in slot four is itself twice a prime.
    """
    val = state.as_array()
    end = val.size if end is None else min(end, val.size)
    sieve = state.sieve
    half = val >> 1
    hp = np.minimum(half, sieve.limit)
    mask = ((val & 1) == 0) & (half >= 3) & ((half & 1) == 1) \
        & (half <= sieve.limit) & (sieve.spf[hp] == hp)
    starts = np.flatnonzero(mask) + 1
    return starts[(starts >= start) & (starts <= end)]


def check_hypothesis_a(state: SequenceState, start: int = HYPOTHESIS_A_START,
                       end: int | None = None) -> HypothesisAReport:
    """Verify alternation plus the five-term pattern on [start, end].

    Windows that would run past `end` are not checked (and not counted as
    events).  All deviations come back as report content, never errors.
    """
    val = state.as_array()
    end = val.size if end is None else min(end, val.size)
    if end < start:
        raise InvalidArgumentError(f"empty range [{start}, {end}]")
    starts = event_starts(state, start, end)
    violations: list[Violation] = []
    kappa_hist: dict[int, int] = {}
    events = 0
    terms = state._terms
    for s in starts.tolist():
        if s + 4 > end:
            continue
        w = terms[s - 1 : s + 4].tolist()
        p = w[0] // 2
        ok = True
        if w[1] % 2 == 0:
            ok = False
        if w[2] != p:
            ok = False
        if w[3] % 2 != 0:
            ok = False
        else:
            kexp = least_odd_prime_not_dividing(w[3] // 2)
            if w[4] != kexp * p or kexp >= p:
                ok = False
        if ok:
            events += 1
            k = w[4] // p
            kappa_hist[k] = kappa_hist.get(k, 0) + 1
        else:
            violations.append(Violation(
                index=s,
                expected="2p, odd, p, 2j, kappa*p with kappa the least odd "
                         "prime not dividing j",
                observed=tuple(w),
            ))
    # parity must alternate on every transition not inside slot 2 -> 3 of
    # a pattern (odd, then the prime: the one sanctioned repeat of parity)
    par = (val & 1).astype(np.int8)
    same = par[start:end] == par[start - 1 : end - 1]  # transition n -> n+1, n = start..end-1
    exempt = np.zeros(same.size, dtype=bool)
    ss = starts[starts + 2 <= end]
    exempt[ss + 1 - start] = True
    for t in (np.flatnonzero(same & ~exempt) + start).tolist():
        violations.append(Violation(
            index=t + 1,
            expected="parity alternation",
            observed=(int(val[t - 1]), int(val[t])),
        ))
    violations.sort(key=lambda v: v.index)
    return HypothesisAReport(
        checked_range=(start, end),
        violations=violations,
        five_term_events=events,
        kappa_histogram=dict(sorted(kappa_hist.items())),
    )


def kappa_distribution(state: SequenceState, start: int = HYPOTHESIS_A_START,
                       min_events: int = 100) -> dict[int, float]:
    """Empirical frequency of each multiplier kappa over geyser terms with
    index >= start.  Frequencies sum to 1."""
    cls = classify_terms(state)
    sel = cls.kappa[start - 1 :]
    sel = sel[sel > 0]
    if sel.size < min_events:
        raise InsufficientDataError(
            f"only {sel.size} geyser events at index >= {start}; need {min_events}"
        )
    ks, cnts = np.unique(sel, return_counts=True)
    total = cnts.sum()
    return {int(k): float(c) / total for k, c in zip(ks, cnts)}


@dataclass
class FrontierSnapshot:
    """Both frontiers as of term n.

    even_lo is the smallest even number not yet used; even_hi is 2 more
    than the largest even term.  comp_lo is the smallest odd composite
    not yet used; comp_hi the smallest unused odd composite above the
    largest plain odd-composite term.  even_gap_fill is the used fraction
    of the even values in [even_lo, even_hi].
    """

    n: int
    even_lo: int | None
    even_hi: int | None
    comp_lo: int
    comp_hi: int
    even_gap_fill: float | None


def frontier_track(state: SequenceState, at: int | None = None) -> FrontierSnapshot:
    """Frontier snapshot as of term `at`.

    at = len(state) reads the streaming trackers; anything earlier is
    recomputed from scratch, so the two paths can be checked against each
    other.
    """
    n = len(state)
    at = n if at is None else at
    if at < 1 or at > n:
        raise InvalidArgumentError(f"at={at} outside [1, {n}]")
    if at == n:
        even_lo, even_hi, comp_lo, comp_hi = state.frontier_raw()
        return _with_gap_fill(state.contains_value, at, even_lo, even_hi, comp_lo, comp_hi)
    val = state.as_array()[:at]
    used = np.zeros(int(val.max()) + 4, dtype=bool)
    used[val] = True
    prime = state._is_prime_value
    odd_only = state.config.domain is Domain.ODD_ONLY
    if odd_only:
        even_lo = even_hi = None
    else:
        even_lo = 2
        while used[even_lo]:
            even_lo += 2
        evens = val[(val & 1) == 0]
        even_hi = int(evens.max()) + 2 if evens.size else even_lo
    is_prime = _prime_mask(state, val)
    comp_lo = 9
    while (comp_lo < used.size and used[comp_lo]) or prime(comp_lo):
        comp_lo += 2
    plain = np.ones(at, dtype=bool)
    slot = np.flatnonzero(is_prime[: at - 2] if at > 2 else np.zeros(0, bool)) + 2
    plain[slot] = False
    comp_vals = val[((val & 1) == 1) & ~is_prime & (val > 1) & plain]
    comp_hi = max(int(comp_vals.max()) + 2 if comp_vals.size else 0, comp_lo)
    if comp_hi % 2 == 0:
        comp_hi += 1
    while (comp_hi < used.size and used[comp_hi]) or prime(comp_hi):
        comp_hi += 2
    contains = lambda v: v < used.size and bool(used[v])
    return _with_gap_fill(contains, at, even_lo, even_hi, comp_lo, comp_hi)


def _with_gap_fill(contains, at, even_lo, even_hi, comp_lo, comp_hi) -> FrontierSnapshot:
    if even_lo is None:
        fill = None
    else:
        window = range(even_lo, even_hi + 1, 2)
        fill = sum(1 for v in window if contains(v)) / len(window)
    return FrontierSnapshot(
        n=at, even_lo=even_lo, even_hi=even_hi,
        comp_lo=comp_lo, comp_hi=comp_hi, even_gap_fill=fill,
    )
