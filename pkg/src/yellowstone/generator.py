"""Greedy generator for the Yellowstone permutation and its variants.

The rule: after the start terms, each term is the smallest unused number
in the domain that shares a factor with the term two back and is coprime
to the previous term.

The fast path keeps, for every prime q that has ever divided a
"two-back" term, two cursors: the smallest even multiple of q and the
smallest odd multiple of q not yet confirmed used.  A cursor advances
permanently only past used multiples; a multiple rejected for sharing a
factor with the previous term stays reachable, because it may be the
right choice at a later step.  Splitting by parity matters: when the
previous term is even, every even candidate is dead on arrival, and a
single cursor would crawl across the whole gap between the even and odd
frontiers on each such step.

A naive re-derivation (verify_prefix) doubles as the correctness oracle
for the fast path.
"""

from array import array
from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

from .errors import InternalLimitError, InvalidArgumentError
from .numtheory import SieveTable, build_sieve

__all__ = [
    "Domain",
    "VariantConfig",
    "SequenceState",
    "VerificationReport",
    "generate",
    "verify_prefix",
]

_HUGE = 1 << 62


class Domain(Enum):
    """Value domain the sequence is drawn from."""

    ALL_POSITIVE = "all"
    ODD_ONLY = "odd"


@dataclass(frozen=True)
class VariantConfig:
    """Start terms, domain and optional default length for one sequence.

    Start triples of the shape (1, x, y) must have x > 1, y > 1 and
    gcd(x, y) = 1; that is exactly the family whose merge behaviour the
    variants module analyzes.
    """

    start_terms: tuple[int, ...] = (1, 2, 3)
    domain: Domain = Domain.ALL_POSITIVE
    limit: int | None = None

    def __post_init__(self):
        terms = tuple(int(t) for t in self.start_terms)
        object.__setattr__(self, "start_terms", terms)
        if len(terms) < 2:
            raise InvalidArgumentError("need at least two start terms")
        if len(set(terms)) != len(terms):
            raise InvalidArgumentError(f"start terms must be distinct: {terms}")
        if any(t < 1 for t in terms):
            raise InvalidArgumentError(f"start terms must be positive: {terms}")
        if not isinstance(self.domain, Domain):
            raise InvalidArgumentError(f"unsupported domain: {self.domain!r}")
        if self.domain is Domain.ODD_ONLY and any(t % 2 == 0 for t in terms):
            raise InvalidArgumentError(f"start terms {terms} not all odd")
        if len(terms) == 3 and terms[0] == 1:
            x, y = terms[1], terms[2]
            if x <= 1 or y <= 1:
                raise InvalidArgumentError("start triple (1, x, y) needs x > 1 and y > 1")
            if gcd(x, y) != 1:
                raise InvalidArgumentError(
                    f"start triple (1, {x}, {y}) needs gcd(x, y) = 1, got {gcd(x, y)}"
                )
        if self.limit is not None and self.limit < len(terms):
            raise InvalidArgumentError("limit smaller than the start terms")


@dataclass
class VerificationReport:
    """Outcome of re-deriving a prefix with the naive oracle."""

    checked_upto: int
    matched: bool
    first_mismatch: int | None = None
    expected: int | None = None
    observed: int | None = None

    def __str__(self):
        if self.matched:
            return f"match through n={self.checked_upto}"
        return (
            f"mismatch at n={self.first_mismatch}: "
            f"expected {self.expected}, observed {self.observed}"
        )


class SequenceState:
    """Generated prefix of one sequence, extendable in place.

    All user-facing indices are 1-based: term(1) is the first term.  A
    state that is no longer being extended is effectively immutable and
    safe to read from any number of threads; generation itself is
    strictly sequential.
    """

    def __init__(self, config: VariantConfig | None = None, scan_value_factor: int = 64):
        self.config = config or VariantConfig()
        self._odd_only = self.config.domain is Domain.ODD_ONLY
        self._terms = array("q", self.config.start_terms)
        self._scan_value_factor = scan_value_factor
        self._value_cap = 0  # raised by _ensure_sieve
        self._sieve: SieveTable | None = None
        self._spf = None
        cap = 1 << 14
        self._used = bytearray(cap)
        self._ecur: dict[int, int] = {}
        self._ocur: dict[int, int] = {}
        self._max_value = 0
        for t in self.config.start_terms:
            while t >= len(self._used):
                self._used.extend(bytes(len(self._used)))
            self._used[t] = 1
            self._max_value = max(self._max_value, t)
        self._ensure_sieve(max(2 * self._max_value + 100, 2000))
        # even frontier: smallest unused even, largest even used
        if self._odd_only:
            self._even_lo = None
            self._max_even = 0
        else:
            m = 2
            while self._used[m]:
                m += 2
            self._even_lo = m
            evens = [t for t in self.config.start_terms if t % 2 == 0]
            self._max_even = max(evens) if evens else 0
        # odd-composite frontier: smallest unused odd composite, largest
        # plain odd-composite term (terms in a geyser slot do not count)
        spf = self._spf
        m = 9
        while self._used[m] or spf[m] == m:
            m += 2
        self._comp_lo = m
        self._max_comp = 0
        start = self.config.start_terms
        for i, t in enumerate(start):
            if t > 2 and t % 2 == 1 and not self._is_prime_value(t):
                two_back_prime = i >= 2 and self._is_prime_value(start[i - 2])
                if not two_back_prime and t > self._max_comp:
                    self._max_comp = t
        # rotating factor state for the last two terms
        self._prev2 = self._terms[-2]
        self._prev = self._terms[-1]
        self._qt2 = self._distinct_primes(self._prev2)
        self._qt1 = self._distinct_primes(self._prev)
        self._isp2 = self._is_prime_value(self._prev2)
        self._isp1 = self._is_prime_value(self._prev)
        self._arr_cache: np.ndarray | None = None
        self._inv_cache: np.ndarray | None = None

    # -- basic access ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def term(self, n: int) -> int:
        """a(n), 1-based."""
        if n < 1 or n > len(self._terms):
            raise InvalidArgumentError(f"term index {n} outside [1, {len(self._terms)}]")
        return self._terms[n - 1]

    def terms(self, upto: int | None = None) -> list[int]:
        """The prefix a(1..upto) as a list."""
        upto = len(self._terms) if upto is None else upto
        return self._terms[:upto].tolist()

    def as_array(self) -> np.ndarray:
        """The full prefix as an int64 array (cached copy; a[i] = a(i+1))."""
        if self._arr_cache is None or self._arr_cache.size != len(self._terms):
            self._arr_cache = np.array(self._terms, dtype=np.int64)
            self._arr_cache.setflags(write=False)
            self._inv_cache = None
        return self._arr_cache

    def contains_value(self, v: int) -> bool:
        return 0 <= v < len(self._used) and bool(self._used[v])

    def max_value(self) -> int:
        return self._max_value

    @property
    def sieve(self) -> SieveTable:
        return self._sieve

    def inverse_position(self, value: int) -> int | None:
        """Index n with a(n) = value, or None if value has not been emitted.

        None means "not generated yet", not "never appears": every domain
        element eventually shows up.
        """
        if value < 1 or value > self._max_value:
            return None
        inv = self._inverse_array()
        n = int(inv[value])
        return n if n else None

    def _inverse_array(self) -> np.ndarray:
        if self._inv_cache is None or self._arr_cache is None \
                or self._arr_cache.size != len(self._terms):
            arr = self.as_array()
            inv = np.zeros(self._max_value + 1, dtype=np.int64)
            inv[arr] = np.arange(1, arr.size + 1, dtype=np.int64)
            self._inv_cache = inv
        return self._inv_cache

    # -- internal helpers -----------------------------------------------

    def _ensure_sieve(self, needed: int) -> None:
        if self._sieve is None or self._sieve.limit < needed:
            self._sieve = build_sieve(needed)
            self._spf = self._sieve.spf
        self._value_cap = max(
            self._value_cap, self._scan_value_factor * needed + 1_000_000
        )

    def _is_prime_value(self, v: int) -> bool:
        if v < 2:
            return False
        if v <= self._sieve.limit:
            return int(self._spf[v]) == v
        fs = self._distinct_primes(v)
        return len(fs) == 1 and fs[0] == v

    def _distinct_primes(self, v: int) -> tuple[int, ...]:
        """Distinct prime divisors, increasing.  Values beyond the sieve are
        reduced by trial division until the cofactor fits the table."""
        spf = self._spf
        limit = self._sieve.limit
        fs = []
        if v > limit:
            d = 3
            while v > limit:
                if d * d > v:
                    fs.append(v)
                    fs.sort()
                    return tuple(fs)
                if v % d == 0:
                    fs.append(d)
                    while v % d == 0:
                        v //= d
                else:
                    d += 2
        while v > 1:
            q = int(spf[v])
            fs.append(q)
            v //= q
            while v % q == 0:
                v //= q
        fs.sort()
        return tuple(fs)

    # -- generation -----------------------------------------------------

    def next_term(self) -> int:
        """Append and return the next term."""
        self.extend_to(len(self._terms) + 1)
        return self._terms[-1]

    def extend_to(self, target: int) -> "SequenceState":
        """Generate until the state holds `target` terms (no-op if it does)."""
        if target <= len(self._terms):
            return self
        self._ensure_sieve(max(int(1.18 * target) + 10_000, self._sieve.limit))

        # Hot loop: everything in locals.  See module docstring for the
        # cursor discipline.
        terms = self._terms
        append = terms.append
        used = self._used
        cap = len(used)
        ecur = self._ecur
        ocur = self._ocur
        spf = self._spf
        sieve_limit = self._sieve.limit
        value_cap = self._value_cap
        odd_only = self._odd_only
        _gcd = gcd
        prev2, prev = self._prev2, self._prev
        qt2, qt1 = self._qt2, self._qt1
        isp2, isp1 = self._isp2, self._isp1
        even_lo, max_even = self._even_lo, self._max_even
        comp_lo, max_comp = self._comp_lo, self._max_comp
        max_value = self._max_value
        count = len(terms)
        distinct_primes = self._distinct_primes

        def grow(need):
            nonlocal cap
            if need > value_cap:
                raise InternalLimitError(
                    f"candidate scan passed {need} (cap {value_cap}) at n={count + 1}, "
                    f"prev={prev}, prev2={prev2}"
                )
            while need >= cap:
                used.extend(bytes(cap))
                cap *= 2

        while count < target:
            if prev2 == 1:
                raise InvalidArgumentError(
                    "no candidate exists: nothing shares a factor with 1 "
                    f"(term {count - 1} of the start configuration)"
                )
            best = _HUGE
            if prev & 1:
                # previous term odd: candidates of both parities allowed
                for q in qt2:
                    if q == 2:
                        w = even_lo
                        while w < best:
                            if w >= cap:
                                grow(w)
                            if not used[w] and _gcd(w, prev) == 1:
                                best = w
                                break
                            w += 2
                        continue
                    qq = q + q
                    v = ocur.get(q, q)
                    if v < best:
                        while True:
                            if v >= cap:
                                grow(v)
                            if not used[v]:
                                break
                            v += qq
                        ocur[q] = v
                        w = v
                        while w < best:
                            if w >= cap:
                                grow(w)
                            if not used[w] and _gcd(w, prev) == 1:
                                best = w
                                break
                            w += qq
                    if odd_only:
                        continue
                    v = ecur.get(q, qq)
                    if v < best:
                        while True:
                            if v >= cap:
                                grow(v)
                            if not used[v]:
                                break
                            v += qq
                        ecur[q] = v
                        w = v
                        while w < best:
                            if w >= cap:
                                grow(w)
                            if not used[w] and _gcd(w, prev) == 1:
                                best = w
                                break
                            w += qq
            else:
                # previous term even: even candidates share 2 with it, so
                # only odd multiples can win (and prev2 is odd, coprime to prev)
                for q in qt2:
                    qq = q + q
                    v = ocur.get(q, q)
                    if v < best:
                        while True:
                            if v >= cap:
                                grow(v)
                            if not used[v]:
                                break
                            v += qq
                        ocur[q] = v
                        w = v
                        while w < best:
                            if w >= cap:
                                grow(w)
                            if not used[w] and _gcd(w, prev) == 1:
                                best = w
                                break
                            w += qq
            if best >= _HUGE:
                raise InternalLimitError(
                    f"no candidate found at n={count + 1} (prev={prev}, prev2={prev2})"
                )
            v = best
            used[v] = 1
            append(v)
            count += 1
            if v > max_value:
                max_value = v
            qt = distinct_primes(v)
            visp = len(qt) == 1 and qt[0] == v
            if v & 1 == 0:
                if v > max_even:
                    max_even = v
                if v == even_lo:
                    even_lo += 2
                    while True:
                        if even_lo >= cap:
                            grow(even_lo)
                        if not used[even_lo]:
                            break
                        even_lo += 2
            else:
                if not visp and not isp2 and v > max_comp:
                    max_comp = v
                if v == comp_lo:
                    comp_lo += 2
                    while comp_lo <= sieve_limit and (used[comp_lo] or spf[comp_lo] == comp_lo):
                        comp_lo += 2
                    if comp_lo > sieve_limit:
                        self._ensure_sieve(2 * sieve_limit)
                        spf = self._spf
                        sieve_limit = self._sieve.limit
                        value_cap = self._value_cap
                        while used[comp_lo] or spf[comp_lo] == comp_lo:
                            comp_lo += 2
            prev2, prev = prev, v
            qt2, qt1 = qt1, qt
            isp2, isp1 = isp1, visp

        self._prev2, self._prev = prev2, prev
        self._qt2, self._qt1 = qt2, qt1
        self._isp2, self._isp1 = isp2, isp1
        self._even_lo, self._max_even = even_lo, max_even
        self._comp_lo, self._max_comp = comp_lo, max_comp
        self._max_value = max_value
        return self

    # -- streaming frontier view -----------------------------------------

    def frontier_raw(self) -> tuple[int | None, int | None, int, int]:
        """(even_lo, even_hi, comp_lo, comp_hi) from the streaming trackers.

        even_hi is 2 + the largest even term.  comp_hi is the smallest
        unused odd composite above the largest plain odd-composite term;
        that coincides with "largest + 2" whenever no geyser value sits
        right there, and keeps comp_lo <= comp_hi degenerate-safe.
        """
        if self._odd_only:
            even = (None, None)
        else:
            even = (self._even_lo, max(self._max_even + 2, self._even_lo))
        hi = max(self._max_comp + 2, self._comp_lo)
        if hi % 2 == 0:
            hi += 1
        while True:
            if hi > self._sieve.limit:
                self._ensure_sieve(2 * self._sieve.limit)
            if not self.contains_value(hi) and int(self._spf[hi]) != hi:
                break
            hi += 2
        return even[0], even[1], self._comp_lo, hi


def generate(config: VariantConfig | None = None, n: int | None = None) -> SequenceState:
    """Generate the first n terms under `config` (default: the main sequence).

    The returned state can be extended later with extend_to().
    """
    config = config or VariantConfig()
    if n is None:
        n = config.limit
    if n is None:
        raise InvalidArgumentError("term count required (argument n or config.limit)")
    if n < len(config.start_terms):
        raise InvalidArgumentError(
            f"n={n} smaller than the {len(config.start_terms)} start terms"
        )
    return SequenceState(config).extend_to(n)


def verify_prefix(state: SequenceState, upto: int) -> VerificationReport:
    """Re-derive a(1..upto) by naive linear scan and compare.

    For each position the oracle walks the domain from the smallest
    element, takes the first unused value passing both gcd constraints
    directly, and compares with the stored term.  Independent of the
    cursor machinery on purpose: this is the correctness oracle.
    """
    if upto > len(state):
        raise InvalidArgumentError(f"upto={upto} exceeds generated length {len(state)}")
    terms = state.terms(upto)
    odd_only = state.config.domain is Domain.ODD_ONLY
    nstart = len(state.config.start_terms)
    used = bytearray(1 << 14)
    step = 2 if odd_only else 1
    lowest = 1
    for n in range(1, upto + 1):
        actual = terms[n - 1]
        if n > nstart:
            p2 = terms[n - 3]
            p1 = terms[n - 2]
            v = lowest
            while True:
                if v < len(used) and used[v]:
                    v += step
                    continue
                if gcd(v, p2) > 1 and gcd(v, p1) == 1:
                    break
                v += step
            if v != actual:
                return VerificationReport(
                    checked_upto=upto, matched=False,
                    first_mismatch=n, expected=v, observed=actual,
                )
        while actual >= len(used):
            used.extend(bytes(len(used)))
        used[actual] = 1
        while lowest < len(used) and used[lowest]:
            lowest += step
    return VerificationReport(checked_upto=upto, matched=True)
