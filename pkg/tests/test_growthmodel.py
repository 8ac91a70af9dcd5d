import io
import random

import numpy as np
import pytest

from yellowstone import (
    GrowthModel,
    InsufficientDataError,
    InvalidArgumentError,
    OutOfRangeError,
    alpha_estimate,
    build_sieve,
    curve_value,
    kappa_distribution,
    residuals,
)

from oracles import linear_scan_min_y, trial_division_pi


@pytest.fixture(scope="module")
def model10k():
    return GrowthModel.for_scale(10**4, {3: 0.334, 5: 0.451, 7: 0.174})


def test_even_curve_examples(model10k):
    assert model10k.even_curve(2) == 2
    assert model10k.even_curve(10) == 8


def test_even_curve_exact_solve(model10k):
    # minimal-y semantics: y reaches x, y - 1 does not
    sieve = model10k.sieve
    rng = random.Random(3)
    for _ in range(300):
        x = rng.randint(2, 10**4)
        y = model10k.even_curve(x)
        assert y + sieve.prime_pi(y // 2) >= x
        assert (y - 1) + sieve.prime_pi((y - 1) // 2) < x


def test_even_curve_against_linear_scan(model10k):
    pi = trial_division_pi
    table = [pi(k) for k in range(0, 400)]
    for x in (2, 3, 10, 50, 99, 250, 333):
        expect = linear_scan_min_y(lambda y: y + table[y // 2], x, 399)
        assert model10k.even_curve(x) == expect


def test_even_curve_monotone(model10k):
    rng = random.Random(5)
    xs = sorted(rng.randint(2, 10**4) for _ in range(1000))
    ys = model10k.even_curve_array(np.array(xs))
    assert np.all(np.diff(ys) >= 0)
    for x in (17, 1234, 9876):
        assert model10k.even_curve(x + 1) >= model10k.even_curve(x)


def test_scalar_matches_array(model10k):
    xs = np.array([2, 17, 100, 5000, 9999])
    arr = model10k.even_curve_array(xs)
    assert [model10k.even_curve(int(x)) for x in xs] == arr.tolist()
    arrc = model10k.composite_curve_array(xs)
    assert [model10k.composite_curve(int(x)) for x in xs] == arrc.tolist()


def test_derived_curves(model10k):
    x = 500
    fe = model10k.even_curve(x)
    assert model10k.prime_curve(x) == fe // 2
    assert model10k.kappa_curve(5, x) == 5 * fe // 2
    assert curve_value(model10k, "kappa:3", x) == 3 * fe // 2
    assert curve_value(model10k, ("kappa", 7), x) == 7 * fe // 2
    assert curve_value(model10k, "even", x) == fe
    with pytest.raises(InvalidArgumentError):
        curve_value(model10k, "nope", x)


def test_prime_curve_near_prime_101(state300):
    model = GrowthModel.for_scale(300)
    # a(215) = 101 sits close to half the even curve
    assert abs(model.prime_curve(215) - 101) <= 15


def test_composite_degenerate_small_x():
    model = GrowthModel(build_sieve(2000), {})
    pi = trial_division_pi
    table = [pi(k) for k in range(0, 100)]
    expect = linear_scan_min_y(lambda y: y - 2 * table[y], 3 - 3 * pi(3 // 2), 99)
    got = model.composite_curve(3)
    assert got == max(expect, 1)
    assert got == 15


def test_composite_more_skipping_larger_curve():
    heavy = GrowthModel(build_sieve(40000), {3: 1.0})
    none = GrowthModel(build_sieve(40000), {})
    for x in (1000, 5000, 20000):
        assert heavy.composite_curve(x) > none.composite_curve(x)


def test_composite_against_linear_scan():
    sigma = {3: 0.5, 5: 0.5}
    model = GrowthModel(build_sieve(3000), sigma)
    pi = trial_division_pi
    table = [pi(k) for k in range(0, 2000)]

    def left(y):
        acc = y - 2 * table[y]
        for k, s in sigma.items():
            if k * k <= y:
                acc -= 2 * s * table[y // k]
        return acc

    for x in (10, 100, 500, 900):
        fe = model.even_curve(x)
        target = x - 3 * table[fe // 2]
        expect = max(linear_scan_min_y(left, target, 1999), 1)
        assert model.composite_curve(x) == expect


def test_out_of_range_names_required_size(model10k):
    with pytest.raises(OutOfRangeError) as ei:
        model10k.even_curve(10**8)
    assert "limit" in str(ei.value)


def test_sigma_validation():
    with pytest.raises(InvalidArgumentError):
        GrowthModel(build_sieve(100), {4: 0.5})
    with pytest.raises(InvalidArgumentError):
        GrowthModel(build_sieve(100), {3: -0.1})
    with pytest.raises(InvalidArgumentError):
        GrowthModel(build_sieve(100), {3: 0.9, 5: 0.2})


def test_alpha_examples():
    assert round(alpha_estimate({3: 0.334, 5: 0.451, 7: 0.174}), 3) == 0.953
    assert alpha_estimate({3: 1.0}) == pytest.approx(0.5 + 2 / 3)
    with pytest.raises(InvalidArgumentError):
        alpha_estimate({})


def test_residual_series_small(state3k):
    sigma = kappa_distribution(state3k, min_events=10)
    model = GrowthModel.for_scale(3000, sigma)
    normal = residuals(state3k, model, "normal-even")
    event = residuals(state3k, model, "event-even")
    comp = residuals(state3k, model, "odd-composite")
    assert normal.n.min() >= 213
    total_even = normal.n.size + event.n.size
    arr = state3k.as_array()
    assert total_even == int(np.count_nonzero((arr[212:] & 1) == 0))
    assert np.all(normal.residual == normal.value - normal.curve_value)
    summary = comp.summary()
    assert summary["count"] == comp.n.size
    assert summary["max_abs"] >= 0
    with pytest.raises(InvalidArgumentError):
        residuals(state3k, model, "everything")
    with pytest.raises(InsufficientDataError):
        residuals(state3k, model, "event-even", start=2995)


def test_residual_csv_header(state3k):
    sigma = kappa_distribution(state3k, min_events=10)
    model = GrowthModel.for_scale(3000, sigma)
    series = residuals(state3k, model, "normal-even")
    buf = io.StringIO()
    series.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,value,curve,residual"
    n, v, c, r = lines[1].split(",")
    assert int(v) - int(c) == int(r)


def test_curve_ordering_midscale(state3k):
    sigma = kappa_distribution(state3k, min_events=10)
    model = GrowthModel.for_scale(3000, sigma)
    x = 3000
    fp = model.prime_curve(x)
    fe = model.even_curve(x)
    fc = model.composite_curve(x)
    assert fp < fe < x < fc < model.kappa_curve(3, x) < model.kappa_curve(5, x)
