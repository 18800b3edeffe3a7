import csv
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from recurlab.circle import RotationSystem, closest_returns, return_time_ball
from recurlab.diophantine import random_partial_quotients
from recurlab.interval_maps import as_system, doubling, random_point
from recurlab.recurrence import (
    ClosestReturnRecord,
    ClosestReturnScan,
    RateCurve,
    SystemInterface,
    TieError,
    empirical_pointwise_dimension,
    identity_system,
    scan_closest_returns,
    scan_return_time_ball,
    tail_extrema,
)

from oracles import cantor_samples, fibonacci


def rational_rotation(alpha: Fraction) -> SystemInterface:
    def dist(a, b):
        d = (b - a) % 1
        return min(d, 1 - d)

    return SystemInterface(iterate=lambda x: (x + alpha) % 1, distance=dist, name="rational rotation")


def test_scan_golden_rotation_is_fibonacci():
    S = RotationSystem("(1)")
    rec = scan_closest_returns(S.as_system(), S.form(0), 100)
    assert list(rec.tau) == fibonacci(10)
    assert list(rec.d) == [S.f(n) for n in range(1, 11)]
    assert list(rec.tau) == list(closest_returns(S, 10).tau)


def test_scan_is_independent_of_start_for_rotation():
    S = RotationSystem("2,(1,3)")
    base = scan_closest_returns(S.as_system(), S.form(0), 500)
    for x in (Fraction(1, 3), Fraction(5, 7)):
        assert scan_closest_returns(S.as_system(), S.form(x), 500) == base


def test_identity_is_degenerate():
    rec = scan_closest_returns(identity_system(), 0.25, 10)
    assert rec.tau == (1,) and rec.d == (0,) and rec.degenerate


def test_periodic_orbit_reaches_zero_then_stops():
    cycle = {0: 3, 3: 1, 1: 0}
    sys = SystemInterface(iterate=cycle.__getitem__, distance=lambda a, b: abs(a - b))
    rec = scan_closest_returns(sys, 0, 50)
    assert rec.tau == (1, 2, 3) and rec.d == (3, 1, 0) and rec.degenerate


def test_exact_tie_raises():
    # distances 1/4, 1/2, 1/4: the third step ties the record
    with pytest.raises(TieError) as info:
        scan_closest_returns(rational_rotation(Fraction(1, 4)), Fraction(0), 4)
    assert info.value.step == 3


def test_resumed_scan_equals_single_scan():
    S = RotationSystem("(2)")
    scan = ClosestReturnScan(S.as_system(), S.form(0))
    for stop in (5, 40, 200, 1000):
        scan.advance(stop)
    assert scan.record == scan_closest_returns(S.as_system(), S.form(0), 1000)


@given(st.integers(0, 200), st.integers(1, 12))
@settings(max_examples=50, deadline=None)
def test_record_prefix_closed(seed, k):
    S = RotationSystem(random_partial_quotients(np.random.default_rng(seed), 10, 4).value())
    rec = scan_closest_returns(S.as_system(), S.form(0), 2000)
    cut = rec.truncate(min(k, len(rec)))
    assert cut.tau == rec.tau[: len(cut)]
    ClosestReturnRecord(cut.tau, cut.d)


def test_record_validation():
    with pytest.raises(ValueError):
        ClosestReturnRecord((1, 1), (0.5, 0.25))
    with pytest.raises(ValueError):
        ClosestReturnRecord((1, 2), (0.25, 0.5))
    with pytest.raises(ValueError):
        ClosestReturnRecord((1,), ())


def test_record_csv(tmp_path):
    S = RotationSystem("(1)")
    closest_returns(S, 5).to_csv(tmp_path / "rec.csv")
    rows = list(csv.reader(open(tmp_path / "rec.csv")))
    assert rows[0] == ["n", "tau_n", "d_n"]
    assert [int(r[1]) for r in rows[1:]] == [1, 2, 3, 5, 8]


def test_doubling_scan_diagnostic():
    # distances shrink; the growth of tau_n is only reported
    m = doubling(precision=128)
    x = random_point(np.random.default_rng(0), 128)
    rec = scan_closest_returns(as_system(m), x, 5000)
    assert len(rec) >= 3 and rec.d[-1] < rec.d[0]


# return time to a ball


@pytest.mark.parametrize("seed", range(50))
def test_ball_scan_matches_rotation_formula(seed):
    rng = np.random.default_rng(seed)
    S = RotationSystem(random_partial_quotients(rng, 12, 5).value())
    r = Fraction(int(rng.integers(1, 10**6)), 10**6) / 2 + Fraction(1, 10**4)
    x = S.form(Fraction(int(rng.integers(0, 100)), 100))
    res = scan_return_time_ball(S.as_system(), x, r, 10**5)
    assert not res.exceeded
    assert res.time == return_time_ball(S, r)


def test_ball_larger_than_space_returns_at_once():
    S = RotationSystem("(1)")
    assert scan_return_time_ball(S.as_system(), S.form(0), 1, 10).time == 1


def test_ball_horizon_is_reported():
    S = RotationSystem("(1)")
    res = scan_return_time_ball(S.as_system(), S.form(0), Fraction(1, 10**9), 100)
    assert res.exceeded and res.time is None and res.horizon == 100


def test_ball_doubling_diagnostic():
    # a dyadic start with more bits than the horizon keeps every step exact and nonperiodic
    m = doubling(precision=256)
    times = []
    for seed in range(20):
        x = random_point(np.random.default_rng(seed), 40_000)
        res = scan_return_time_ball(as_system(m), x, Fraction(1, 2**10), 30_000)
        assert not res.exceeded
        times.append(res.time)
    # order 2^10 on average
    assert 2**6 < np.median(times) < 2**14


def test_ball_radius_must_be_positive():
    with pytest.raises(ValueError):
        scan_return_time_ball(identity_system(), 0, 0, 10)


# pointwise dimension


def test_dimension_uniform():
    samples = np.random.default_rng(0).random(200_000)
    est = empirical_pointwise_dimension(samples, 0.5, 2.0 ** -np.arange(2, 12))
    assert abs(est.slope - 1) < 0.1
    assert est.lower <= est.slope <= est.upper


def test_dimension_cantor():
    rng = np.random.default_rng(1)
    samples = cantor_samples(rng, 200_000)
    x = cantor_samples(rng, 1)[0]
    est = empirical_pointwise_dimension(samples, x, 3.0 ** -np.arange(1, 8))
    assert abs(est.slope - np.log(2) / np.log(3)) < 0.1


def test_dimension_atom():
    est = empirical_pointwise_dimension(np.full(2000, 0.3), 0.3, [0.1, 0.01, 0.001, 0.0001])
    assert est.slope == pytest.approx(0.0, abs=1e-12)


def test_dimension_empty_ball_dropped_with_warning():
    samples = np.random.default_rng(2).random(1000)
    with pytest.warns(RuntimeWarning):
        est = empirical_pointwise_dimension(samples, 0.5, [0.1, 0.01, 1e-3, 1e-7, 1e-9])
    assert len(est.radii) < 5


def test_dimension_input_checks():
    with pytest.raises(ValueError):
        empirical_pointwise_dimension(np.zeros(10), 0, [0.1, 0.01, 0.001, 0.0001])
    with pytest.raises(ValueError):
        empirical_pointwise_dimension(np.zeros(2000), 0, [0.1, 0.2, 0.01, 0.001])


# curves


def test_tail_extrema_and_curve(tmp_path):
    values = np.array([5.0, 0.1, 3.0, 2.0, 4.0, 1.0])
    assert tail_extrema(values) == (1.0, 4.0)
    curve = RateCurve.from_values(np.arange(1, 7), values, label="v")
    assert (curve.liminf, curve.limsup) == (1.0, 4.0)
    curve.to_csv(tmp_path / "c.csv")
    rows = list(csv.reader(open(tmp_path / "c.csv")))
    assert rows[0] == ["n", "v"] and float(rows[2][1]) == 0.1
    with pytest.raises(ValueError):
        tail_extrema([])
