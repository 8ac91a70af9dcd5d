import numpy as np
import pytest

from yellowstone import (
    InsufficientDataError,
    TermKind,
    check_hypothesis_a,
    classify_terms,
    frontier_track,
    generate,
    kappa_distribution,
    least_odd_prime_not_dividing,
)
from yellowstone.classify import event_starts


@pytest.fixture(scope="module")
def cls300(state300):
    return classify_terms(state300)


def test_geyser_slots_table_row_zero(cls300):
    # blue entries in the opening run: 4, 9, 25, 21 at indexes 4, 5, 11, 17
    for n, kappa in [(4, 2), (5, 3), (11, 5), (17, 3)]:
        assert cls300.kind_of(n) == TermKind.KAPPA_P
        assert cls300.kappa_of(n) == kappa


def test_geyser_at_217(cls300):
    assert cls300.kind_of(217) == TermKind.KAPPA_P
    assert cls300.kappa_of(217) == 5


def test_plain_kinds(cls300, state300):
    assert cls300.kind_of(1) == TermKind.INITIAL_ONE
    assert cls300.kind_of(10) == TermKind.EVEN          # a(10) = 6
    assert cls300.kind_of(2) == TermKind.PRIME          # a(2) = 2
    assert cls300.kind_of(215) == TermKind.PRIME        # a(215) = 101
    assert cls300.kind_of(7) == TermKind.ODD_COMPOSITE  # a(7) = 15
    # kappa = 2 geysers exist in the exceptional region: a(25) = 26 = 2 * 13
    assert state300.term(25) == 26
    assert cls300.kind_of(25) == TermKind.KAPPA_P
    assert cls300.kappa_of(25) == 2


def test_kind_partition(cls300):
    counts = cls300.counts()
    assert sum(counts.values()) == 300
    assert counts[TermKind.INITIAL_ONE] == 1


def test_no_anomalies_in_prefix(cls300):
    assert cls300.anomalies == []


def test_kappa_only_on_geysers(cls300):
    kp = cls300.kinds == TermKind.KAPPA_P
    assert np.all((cls300.kappa > 0) == kp)


def test_hypothesis_a_exceptional_region(state3k):
    report = check_hypothesis_a(state3k, start=1, end=212)
    assert not report.holds
    # twice-a-prime at a(8) = 14 is not followed by 7 two steps later
    assert any(v.index == 8 for v in report.violations)


def test_hypothesis_a_window_at_213(state3k):
    report = check_hypothesis_a(state3k, start=213, end=3000)
    assert report.holds
    assert report.five_term_events > 0
    starts = event_starts(state3k, 213, 3000)
    assert 213 in starts.tolist()


def test_hypothesis_a_kappa_rule(state3k):
    # every event's multiplier equals the least odd prime missing from j
    report = check_hypothesis_a(state3k, start=213, end=3000)
    terms = state3k.terms()
    for s in event_starts(state3k, 213, 3000).tolist():
        if s + 4 > 3000:
            continue
        p = terms[s - 1] // 2
        j = terms[s + 2] // 2
        assert terms[s + 3] == least_odd_prime_not_dividing(j) * p
    assert sum(report.kappa_histogram.values()) == report.five_term_events


def test_kappa_distribution_small(state3k):
    sigma = kappa_distribution(state3k, min_events=10)
    assert abs(sum(sigma.values()) - 1.0) < 1e-12
    assert set(sigma) <= {3, 5, 7, 11, 13, 17, 19, 23}
    assert sigma[3] > 0.2 and sigma[5] > 0.2


def test_kappa_distribution_insufficient(state300):
    with pytest.raises(InsufficientDataError):
        kappa_distribution(state300)


def test_kappa_distribution_excludes_exceptional(state3k):
    # kappa = 2 happens only before term 213 and must not show up
    sigma = kappa_distribution(state3k, min_events=10)
    assert 2 not in sigma


def test_frontier_at_3():
    s = generate(n=3)
    snap = frontier_track(s, 3)
    assert snap.even_lo == 4
    assert snap.even_hi == 4


def test_frontier_streaming_equals_recompute(state3k):
    # the streaming trackers and the from-scratch recomputation must agree
    full = frontier_track(state3k)
    for at in (50, 213, 1000, 2999):
        snap = frontier_track(state3k, at)
        fresh = frontier_track(generate(n=at))
        assert (snap.even_lo, snap.even_hi, snap.comp_lo, snap.comp_hi) == \
               (fresh.even_lo, fresh.even_hi, fresh.comp_lo, fresh.comp_hi)
    recomputed = frontier_track(state3k, len(state3k) - 1)
    assert recomputed.n == 2999
    assert full.n == 3000


def test_frontier_gap_fill_range(state3k):
    snap = frontier_track(state3k)
    assert 0.0 <= snap.even_gap_fill <= 1.0
    assert snap.even_lo <= snap.even_hi
    assert snap.comp_lo <= snap.comp_hi


def test_frontier_odd_domain(odd_state3k):
    snap = frontier_track(odd_state3k)
    assert snap.even_lo is None and snap.even_hi is None
    assert snap.even_gap_fill is None
    assert snap.comp_lo <= snap.comp_hi


def test_frontier_separation_small(state3k):
    for at in (1000, 2000, 3000):
        snap = frontier_track(state3k, at)
        assert snap.even_hi < snap.comp_lo
