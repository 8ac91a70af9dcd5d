"""Sieve-backed number theory primitives.

One smallest-prime-factor sieve serves every consumer in the package:
it answers primality, factorization and exact prime counts from a single
construction pass.  Prime counting is exact by table lookup; queries past
the table raise instead of estimating.
"""

from math import gcd, isqrt

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError

__all__ = [
    "SieveTable",
    "build_sieve",
    "gcd",
    "least_odd_prime_not_dividing",
]

# Rough bytes per sieved integer during construction (spf + pi + transients).
_BYTES_PER_ENTRY = 14
DEFAULT_SIEVE_BUDGET_BYTES = 4 * 1024**3


class SieveTable:
    """Smallest-prime-factor sieve over [0, limit] with a cumulative prime count.

    Immutable after construction; safe to share across concurrent readers.

    Attributes:
        limit: inclusive upper bound of the table.
        spf: int32 array, spf[n] = smallest prime factor of n (spf[n] = n
            iff n is prime; entries 0 and 1 are sentinels).
        pi_cumulative: int64 array, pi_cumulative[x] = number of primes <= x.
    """

    __slots__ = ("limit", "spf", "_pi")

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = limit
        spf.setflags(write=False)
        self.spf = spf
        self._pi = None

    @property
    def pi_cumulative(self) -> np.ndarray:
        if self._pi is None:
            isp = np.zeros(self.limit + 1, dtype=bool)
            isp[2:] = self.spf[2:] == np.arange(2, self.limit + 1, dtype=np.int64)
            pi = np.cumsum(isp, dtype=np.int64)
            pi.setflags(write=False)
            self._pi = pi
        return self._pi

    def prime_pi(self, x: int) -> int:
        """Exact count of primes <= x.  Raises past the table, never estimates."""
        if x > self.limit:
            raise OutOfRangeError(
                f"prime_pi({x}) exceeds sieve limit {self.limit}; "
                f"build_sieve(limit>={x}) is required"
            )
        if x < 2:
            return 0
        return int(self.pi_cumulative[x])

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise OutOfRangeError(
                f"is_prime({n}) exceeds sieve limit {self.limit}; "
                f"build_sieve(limit>={n}) is required"
            )
        return n >= 2 and int(self.spf[n]) == n

    def smallest_prime_factor(self, n: int) -> int:
        if n < 2 or n > self.limit:
            raise OutOfRangeError(f"smallest_prime_factor({n}) outside [2, {self.limit}]")
        return int(self.spf[n])

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization as (prime, exponent) pairs, primes increasing.

        n = 1 yields the empty factorization; anything outside [1, limit]
        is an error.
        """
        if n == 1:
            return []
        if n < 1 or n > self.limit:
            raise OutOfRangeError(f"factorize({n}) outside [1, {self.limit}]")
        spf = self.spf
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def distinct_prime_factors(self, n: int) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorize(n))

    def primes(self) -> np.ndarray:
        """All primes <= limit as an int64 array."""
        idx = np.arange(2, self.limit + 1, dtype=np.int64)
        return idx[self.spf[2:] == idx]


def build_sieve(limit: int, max_bytes: int = DEFAULT_SIEVE_BUDGET_BYTES) -> SieveTable:
    """Build a SieveTable for [0, limit].

    Raises InvalidArgumentError for limit < 2 and ResourceLimitError when
    the construction would exceed the configured memory budget.
    """
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    if (limit + 1) * _BYTES_PER_ENTRY > max_bytes:
        raise ResourceLimitError(
            f"sieve of limit {limit} needs ~{(limit + 1) * _BYTES_PER_ENTRY} bytes, "
            f"budget is {max_bytes}"
        )
    spf = np.zeros(limit + 1, dtype=np.int32)
    spf[2::2] = 2
    for p in range(3, isqrt(limit) + 1, 2):
        if spf[p] == 0:
            # Only odd multiples need marking: even ones already carry 2.
            sl = spf[p * p :: 2 * p]
            sl[sl == 0] = p
    odd = spf[3::2]
    unmarked = odd == 0
    odd[unmarked] = np.arange(3, limit + 1, 2, dtype=np.int32)[unmarked]
    spf[1] = 1
    return SieveTable(limit, spf)


_odd_primes_cache = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]


def _extend_odd_primes() -> None:
    k = _odd_primes_cache[-1] + 2
    while True:
        if all(k % p for p in _odd_primes_cache if p * p <= k):
            _odd_primes_cache.append(k)
            return
        k += 2


def least_odd_prime_not_dividing(j: int) -> int:
    """Smallest odd prime that does not divide j.

    Always terminates: j has finitely many prime factors, so some prime in
    3, 5, 7, 11, ... misses it.
    """
    if j < 1:
        raise InvalidArgumentError(f"expected a positive integer, got {j}")
    i = 0
    while True:
        if i == len(_odd_primes_cache):
            _extend_odd_primes()
        p = _odd_primes_cache[i]
        if j % p:
            return p
        i += 1
