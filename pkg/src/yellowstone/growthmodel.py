"""Solved growth curves for each term type, and residuals against them.

The even terms track the curve y solving y + pi(y/2) = x.  The odd
composites track the curve y solving

    y - 2 pi(y) - 2 sum_kappa sigma(kappa) pi(y / kappa)
        = x - 3 pi(even_curve(x) / 2),

with the sum over odd primes kappa <= sqrt(y) and sigma the measured
multiplier distribution.  Primes ride at half the even curve and the
geyser terms at kappa/2 times it.

Both equations are solved over the integers as "minimal y whose left
side meets or exceeds the right side", which pins the rounding and makes
residuals reproducible.  The even left side is strictly increasing.  The
composite left side is increasing in the large but dips where y hits a
prime (pi jumps while y steps by one), so the solver binary-searches the
running maximum; at a first crossing the running maximum equals the raw
left side, which keeps the minimal-y semantics exact.  That equality is
asserted at solve time.
"""

from dataclasses import dataclass

import numpy as np

from .classify import TermKind, classify_terms, event_starts
from .errors import (
    InsufficientDataError,
    InternalConsistencyError,
    InvalidArgumentError,
    OutOfRangeError,
)
from .generator import SequenceState
from .numtheory import SieveTable, build_sieve

__all__ = [
    "GrowthModel",
    "curve_value",
    "ResidualSeries",
    "residuals",
    "alpha_estimate",
    "TERM_FILTERS",
]

TERM_FILTERS = ("normal-even", "event-even", "odd-composite")


def _validate_sigma(sigma: dict[int, float]) -> dict[int, float]:
    out = {}
    for k, v in sorted(sigma.items()):
        k = int(k)
        if k < 3 or k % 2 == 0:
            raise InvalidArgumentError(f"sigma keys must be odd primes >= 3, got {k}")
        if v < 0:
            raise InvalidArgumentError(f"sigma({k}) = {v} negative")
        out[k] = float(v)
    if sum(out.values()) > 1 + 1e-9:
        raise InvalidArgumentError(f"sigma sums to {sum(out.values())} > 1")
    return out


class GrowthModel:
    """Curve evaluator over one sieve and one multiplier distribution.

    Read-only after construction; the lazily built solve tables are the
    memoization the curves need.  Multipliers absent from sigma simply
    contribute nothing (the measured table only covers observed kappa).
    """

    def __init__(self, sieve: SieveTable, sigma: dict[int, float] | None = None):
        self.sieve = sieve
        self.sigma = _validate_sigma(sigma or {})
        self._even_table: np.ndarray | None = None
        self._comp_raw: np.ndarray | None = None
        self._comp_env: np.ndarray | None = None

    @classmethod
    def for_scale(cls, n: int, sigma: dict[int, float] | None = None) -> "GrowthModel":
        """Model sized up front to evaluate curves at indexes up to n."""
        return cls(build_sieve(max(int(1.25 * n) + 1000, 2000)), sigma)

    # -- solve tables -----------------------------------------------------

    def _even(self) -> np.ndarray:
        if self._even_table is None:
            pi = self.sieve.pi_cumulative
            y = np.arange(0, self.sieve.limit + 1, dtype=np.int64)
            self._even_table = y + pi[y >> 1]
        return self._even_table

    def _comp(self) -> tuple[np.ndarray, np.ndarray]:
        if self._comp_env is None:
            pi = self.sieve.pi_cumulative
            y = np.arange(0, self.sieve.limit + 1, dtype=np.int64)
            left = (y - 2 * pi[y]).astype(np.float64)
            for k, s in self.sigma.items():
                if k * k > self.sieve.limit or s == 0.0:
                    continue
                # kappa enters once y >= kappa^2 (the sqrt(y) bound)
                idx = np.arange(k * k, self.sieve.limit + 1, dtype=np.int64)
                left[idx] -= 2.0 * s * pi[idx // k]
            self._comp_raw = left
            self._comp_env = np.maximum.accumulate(left)
        return self._comp_raw, self._comp_env

    # -- curves -----------------------------------------------------------

    def even_curve_array(self, xs: np.ndarray) -> np.ndarray:
        """Minimal y with y + pi(y/2) >= x, per entry."""
        table = self._even()
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size and int(xs.max()) > int(table[-1]):
            raise OutOfRangeError(
                f"even curve at x={int(xs.max())} needs a sieve of limit "
                f">= {int(1.1 * xs.max()) + 1000}, have {self.sieve.limit}"
            )
        return np.searchsorted(table, xs, side="left")

    def even_curve(self, x: int) -> int:
        return int(self.even_curve_array(np.array([x]))[0])

    def prime_curve(self, x: int) -> int:
        return self.even_curve(x) // 2

    def kappa_curve(self, kappa: int, x: int) -> int:
        if kappa < 2:
            raise InvalidArgumentError(f"kappa must be >= 2, got {kappa}")
        return kappa * self.even_curve(x) // 2

    def composite_curve_array(self, xs: np.ndarray) -> np.ndarray:
        """Minimal y meeting the composite functional equation, per entry."""
        raw, env = self._comp()
        xs = np.asarray(xs, dtype=np.int64)
        pi = self.sieve.pi_cumulative
        rhs = xs - 3 * pi[self.even_curve_array(xs) >> 1]
        if rhs.size and float(rhs.max()) > float(env[-1]):
            raise OutOfRangeError(
                f"composite curve at x={int(xs.max())} exceeds the solve table; "
                f"a sieve of limit >= {int(1.25 * xs.max()) + 1000} is required"
            )
        ys = np.searchsorted(env, rhs, side="left")
        # at a first crossing the envelope and the raw left side agree
        bad = raw[ys] != env[ys]
        if np.any(bad):
            raise InternalConsistencyError(
                f"composite solve landed off a first crossing at x={xs[bad][:5]}"
            )
        return np.maximum(ys, 1)

    def composite_curve(self, x: int) -> int:
        return int(self.composite_curve_array(np.array([x]))[0])


def curve_value(model: GrowthModel, kind, x: int) -> int:
    """Evaluate one curve; kind is 'even', 'prime', 'composite', 'kappa:K'
    or the pair ('kappa', K)."""
    if isinstance(kind, tuple) and len(kind) == 2 and kind[0] == "kappa":
        return model.kappa_curve(int(kind[1]), x)
    if isinstance(kind, str):
        if kind == "even":
            return model.even_curve(x)
        if kind == "prime":
            return model.prime_curve(x)
        if kind == "composite":
            return model.composite_curve(x)
        if kind.startswith("kappa:"):
            return model.kappa_curve(int(kind.split(":", 1)[1]), x)
    raise InvalidArgumentError(f"unknown curve kind {kind!r}")


@dataclass
class ResidualSeries:
    """Residuals a(n) - curve(n) over one class of terms."""

    term_filter: str
    curve: str
    n: np.ndarray
    value: np.ndarray
    curve_value: np.ndarray
    residual: np.ndarray

    @property
    def max_abs(self) -> int:
        return int(np.abs(self.residual).max())

    def summary(self) -> dict:
        res = self.residual.astype(np.float64)
        ratio = np.abs(res) / np.sqrt(self.n.astype(np.float64))
        q = np.percentile(res, [1, 50, 99])
        return {
            "count": int(res.size),
            "max_abs": self.max_abs,
            "q01": float(q[0]),
            "q50": float(q[1]),
            "q99": float(q[2]),
            "max_ratio_sqrt": float(ratio.max()),
        }

    def write_csv(self, fh) -> None:
        fh.write("n,value,curve,residual\n")
        for n, v, c, r in zip(self.n, self.value, self.curve_value, self.residual):
            fh.write(f"{n},{v},{c},{r}\n")


def residuals(state: SequenceState, model: GrowthModel, term_filter: str,
              curve: str | None = None, start: int = 213,
              end: int | None = None) -> ResidualSeries:
    """Residual series for one term class on [start, end].

    normal-even and event-even measure against the even curve,
    odd-composite against the composite curve; pass `curve` to override.
    The first 212 terms are outside the model, so start defaults to 213.
    """
    if term_filter not in TERM_FILTERS:
        raise InvalidArgumentError(f"term_filter must be one of {TERM_FILTERS}")
    val = state.as_array()
    end = val.size if end is None else min(end, val.size)
    cls = classify_terms(state)
    n_idx = np.arange(1, end + 1, dtype=np.int64)
    window = slice(0, end)
    starts = event_starts(state, 213, end)
    in_event_even = np.zeros(end, dtype=bool)
    in_event_even[starts - 1] = True
    s3 = starts + 2
    s3 = s3[s3 < end]
    in_event_even[s3] = True
    if term_filter == "normal-even":
        mask = (cls.kinds[window] == TermKind.EVEN) & ~in_event_even
        curve = curve or "even"
    elif term_filter == "event-even":
        mask = in_event_even
        curve = curve or "even"
    else:
        mask = cls.kinds[window] == TermKind.ODD_COMPOSITE
        curve = curve or "composite"
    mask &= n_idx >= start
    ns = n_idx[mask]
    if ns.size == 0:
        raise InsufficientDataError(
            f"no {term_filter} terms in [{start}, {end}]"
        )
    if curve == "even":
        cv = model.even_curve_array(ns)
    elif curve == "composite":
        cv = model.composite_curve_array(ns)
    elif curve == "prime":
        cv = model.even_curve_array(ns) // 2
    else:
        raise InvalidArgumentError(f"unknown curve {curve!r} for residuals")
    vals = val[ns - 1]
    return ResidualSeries(
        term_filter=term_filter, curve=curve,
        n=ns, value=vals, curve_value=cv, residual=vals - cv,
    )


def alpha_estimate(sigma: dict[int, float]) -> float:
    """Linear growth coefficient of the composite curve:
    1/2 + 2 * sum over kappa of sigma(kappa) / kappa."""
    if not sigma:
        raise InvalidArgumentError("sigma is empty")
    sigma = _validate_sigma(sigma)
    return 0.5 + 2.0 * sum(v / k for k, v in sigma.items())
