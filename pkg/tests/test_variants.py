import pytest

from yellowstone import (
    Domain,
    InvalidArgumentError,
    detect_merge,
    generate,
    make_variant,
)


def test_make_variant_examples():
    assert make_variant(3, 2).start_terms == (1, 3, 2)
    assert make_variant(2, 5).start_terms == (1, 2, 5)
    odd = make_variant(3, 5, Domain.ODD_ONLY)
    assert odd.domain == Domain.ODD_ONLY and odd.start_terms == (1, 3, 5)
    with pytest.raises(InvalidArgumentError):
        make_variant(4, 6)


def test_merge_149_with_main():
    a = generate(n=120)
    b = generate(make_variant(4, 9), 120)
    result = detect_merge(a, b, 100)
    assert result.merged
    # frozen from the criterion itself: first five terms differ as sets,
    # the sets agree from length 5 on and the terms agree from index 6
    assert result.merge_index == 7
    assert result.agreement_start == 6
    assert a.terms()[5:100] == b.terms()[5:100]


def test_merge_symmetric():
    a = generate(n=150)
    b = generate(make_variant(4, 9), 150)
    fwd = detect_merge(a, b, 150)
    rev = detect_merge(b, a, 150)
    assert (fwd.merged, fwd.merge_index) == (rev.merged, rev.merge_index)


def test_identical_sequences_merge_at_3():
    a = generate(n=50)
    b = generate(n=50)
    assert detect_merge(a, b, 50).merge_index == 3


def test_non_merging_starts_short_horizon():
    a = generate(n=500)
    for cfg in (make_variant(3, 2), make_variant(2, 5)):
        b = generate(cfg, 500)
        assert not detect_merge(a, b, 500).merged


def test_merge_horizon_validation():
    a = generate(n=50)
    b = generate(n=60)
    with pytest.raises(InvalidArgumentError):
        detect_merge(a, b, 60)
    with pytest.raises(InvalidArgumentError):
        detect_merge(a, b, 2)


def test_odd_variant_is_permutation_of_odds(odd_state3k):
    seen = set(odd_state3k.terms())
    assert all(v % 2 == 1 for v in seen)
    assert all(v in seen for v in range(1, 1000, 2))


def test_post_merge_agreement_verified():
    a = generate(n=200)
    b = generate(make_variant(4, 9), 200)
    res = detect_merge(a, b, 200)
    assert res.merged
    start = res.agreement_start
    assert a.terms()[start - 1 : 200] == b.terms()[start - 1 : 200]
