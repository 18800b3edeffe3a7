import json
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from recurlab.circle import (
    Arc,
    BoundaryHit,
    RotationSystem,
    arc_decompose,
    closest_returns,
    cylinder_arc,
    gap_value_counts,
    nu_s,
    pointwise_recurrence_rate,
    poincare_return_time_arc,
    refinement_lengths,
    refinement_value_counts,
    return_time_ball,
    sample_return_times,
    symbolic_orbit,
    three_gap_return_structure,
    z_recurrence_rate,
)
from recurlab.diophantine import PartialQuotients, random_partial_quotients
from recurlab.reals import AlphaForm, DomainError, EnclosedReal
from recurlab.recurrence import scan_closest_returns

from oracles import cf_value_mp, fibonacci, first_return_scan_mp, rotation_word_mp

mpmath.mp.dps = 80

GOLDEN = RotationSystem("(1)")
GOLDEN_MP = (mpmath.sqrt(5) - 1) / 2


def random_system(seed, depth=14, max_quotient=5, cuts=None):
    a = random_partial_quotients(np.random.default_rng(seed), depth, max_quotient=max_quotient)
    return RotationSystem(a.value(), cuts), cf_value_mp(a.head, a.period)


def mp(x):
    return mpmath.mpf(x.numerator) / x.denominator


def form_mp(f: AlphaForm, alpha_mp):
    return mp(f.u) + mp(f.v) * alpha_mp


# construction


def test_rational_rotation_rejected():
    with pytest.raises(DomainError):
        RotationSystem(Fraction(2, 5))
    with pytest.raises(DomainError):
        RotationSystem("2/5")


def test_cuts_must_increase_in_unit_interval():
    with pytest.raises(ValueError):
        RotationSystem("(1)", cuts=(Fraction(1, 2), 0))
    with pytest.raises(ValueError):
        RotationSystem("(1)", cuts=(0, 1))


def test_partition_arcs_cover_circle():
    S = RotationSystem("(2)", cuts=(0, Fraction(1, 5), Fraction(3, 4)))
    for x, idx in ((0, 0), (Fraction(1, 10), 0), (Fraction(1, 5), 1), (Fraction(7, 10), 1), (Fraction(3, 4), 2), (Fraction(99, 100), 2)):
        assert S.arc_index(x) == idx


# closest returns


def test_closest_returns_golden_are_fibonacci():
    rec = closest_returns(GOLDEN, 10)
    assert list(rec.tau) == fibonacci(10)
    assert all(d == GOLDEN.f(n) for n, d in enumerate(rec.d, start=1))


def test_closest_returns_silver():
    assert list(closest_returns(RotationSystem("(2)"), 5).tau) == [2, 5, 12, 29, 70]


@pytest.mark.parametrize("seed", range(20))
def test_closest_returns_match_orbit_scan(seed):
    S, alpha_mp = random_system(seed)
    rec = closest_returns(S, 8)
    scan = scan_closest_returns(S.as_system(), S.form(0), S.q(8))
    tau = list(scan.tau)
    if S.quotient(1) >= 2:
        assert tau[0] == 1
        tau = tau[1:]
    assert tau == list(rec.tau)
    # independent high-precision scan of ||k alpha|| records
    best, mp_tau = mpmath.mpf(1), []
    for k in range(1, S.q(8) + 1):
        d = min(k * alpha_mp % 1, 1 - k * alpha_mp % 1)
        if d < best:
            best = d
            mp_tau.append(k)
    assert mp_tau[-len(rec.tau):] == list(rec.tau)


def test_nu_one_golden_liminf():
    est = nu_s(GOLDEN, 1, 30)
    assert abs(est.liminf - 1 / np.sqrt(5)) < 1e-6


def test_nu_half_golden_decays():
    est = nu_s(GOLDEN, 0.5, 40)
    assert np.all(np.diff(est.values) < 0)
    assert est.values[-1] < 1e-4


def test_nu_one_type_two_dips():
    head = tuple(2 ** (2**k) for k in range(1, 7))
    S = RotationSystem(PartialQuotients(head, (1,)).value())
    est = nu_s(S, 1, 6)
    # q_n f_n is about 1/a_{n+1}
    for n in range(1, 6):
        exact = S.f(n) * S.q(n)
        assert Fraction(1, head[n] + 2) < exact < Fraction(1, head[n])
        assert est.values[n - 1] == pytest.approx(float(exact), rel=1e-9)
    assert est.values[4] < 1e-9


# return time of balls


def test_return_time_ball_golden_midpoint():
    # with q_0 = q_1 = 1 the midpoint of f_1, f_2 returns at q_2 = 2; one index later gives 3
    for n, expected in ((2, 2), (3, 3), (4, 5)):
        r = (GOLDEN.f(n - 1) + GOLDEN.f(n)) / 2
        assert return_time_ball(GOLDEN, r) == GOLDEN.q(n) == expected
        assert first_return_scan_mp(GOLDEN_MP, form_mp(r, GOLDEN_MP), 10) == expected


def test_return_time_ball_above_boundary():
    for n in range(1, 12):
        r = GOLDEN.f(n - 1) * Fraction(1000001, 1000000)
        assert return_time_ball(GOLDEN, r) == GOLDEN.q(n - 1)
        # at exactly f_{n-1} the strict inequality moves to q_n
        assert return_time_ball(GOLDEN, GOLDEN.f(n - 1)) == GOLDEN.q(n)


@pytest.mark.parametrize("seed", range(50))
def test_return_time_ball_matches_scan(seed):
    S, alpha_mp = random_system(seed)
    rng = np.random.default_rng(1000 + seed)
    r = Fraction(int(rng.integers(1, 10**6)), 10**6) * Fraction(1, 2)
    r = max(r, Fraction(1, 10**5))
    assert return_time_ball(S, r) == first_return_scan_mp(alpha_mp, mp(r), S.q(12))


@pytest.mark.slow
def test_pointwise_rate_golden_near_one():
    est = pointwise_recurrence_rate(GOLDEN, 120)
    assert abs(est.lower - 1) < 0.05 and abs(est.upper - 1) < 0.05


def test_pointwise_rate_golden_depth_25_bias():
    # the lower estimate at tail start n is about 1 - 2.67/(n+1)
    est = pointwise_recurrence_rate(GOLDEN, 25)
    assert 0.85 < est.lower < est.upper < 1.05


def test_pointwise_rate_type_two():
    head = tuple(2 ** (2**k) for k in range(1, 11))
    S = RotationSystem(PartialQuotients(head, (1,)).value())
    est = pointwise_recurrence_rate(S, 10)
    assert abs(est.lower - 0.5) < 0.15


@pytest.mark.parametrize("seed", range(10))
def test_pointwise_rate_lower_below_upper(seed):
    S, _ = random_system(seed, max_quotient=30)
    est = pointwise_recurrence_rate(S, 12)
    assert est.lower <= est.upper


# arcs


def test_arc_decompose_length_f_k_minus_one():
    S = RotationSystem(PartialQuotients((2, 3, 1, 4, 2), (1, 3)).value())
    for k in range(1, 8):
        if S.quotient(k + 1) < 2:
            continue
        dec = arc_decompose(S, S.f(k - 1))
        assert (dec.k, dec.c, dec.g) == (k, S.quotient(k + 1) - 1, S.f(k))
        assert poincare_return_time_arc(S, S.f(k - 1)) == S.q(k)


def test_arc_decompose_direct_instance():
    S = RotationSystem(PartialQuotients((1, 3, 2, 5), (2,)).value())
    for k in range(1, 6):
        L = S.f(k) + S.f(k + 1) + S.f(k) / 2
        dec = arc_decompose(S, L)
        assert (dec.k, dec.c, dec.g) == (k, 1, S.f(k) / 2)


def test_arc_decompose_domain():
    with pytest.raises(DomainError):
        arc_decompose(GOLDEN, Fraction(3, 5))
    with pytest.raises(DomainError):
        arc_decompose(GOLDEN, 0)


@given(st.integers(0, 30), st.fractions(min_value=Fraction(1, 10**7), max_value=Fraction(1, 2), max_denominator=10**8))
@settings(max_examples=100, deadline=None)
def test_arc_decompose_reconstructs_exactly(seed, L):
    S, _ = random_system(seed)
    dec = arc_decompose(S, L)
    assert dec.length == L
    assert 0 < dec.g <= dec.f_k and 1 <= dec.c <= dec.a_next
    assert dec.f_k + dec.f_next < L
    if dec.k >= 1:
        assert L <= S.f(dec.k - 1) + dec.f_k


def test_poincare_return_golden_point_two():
    tau = poincare_return_time_arc(GOLDEN, Fraction(1, 5))
    assert tau == first_return_scan_mp(GOLDEN_MP, mpmath.mpf(1) / 5, GOLDEN.q(10))


def test_poincare_return_just_above_two_gaps():
    S = RotationSystem(PartialQuotients((2, 3, 4, 2, 5), (3,)).value())
    for k in range(1, 6):
        L = (S.f(k) + S.f(k + 1)) * Fraction(1000001, 1000000)
        assert S.quotient(k + 1) >= 2
        assert poincare_return_time_arc(S, L) == S.q(k)


@pytest.mark.parametrize("seed", range(12))
def test_poincare_return_matches_scan(seed):
    S, alpha_mp = random_system(seed)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        L = Fraction(int(rng.integers(1, 10**9)), 2 * 10**9)
        if L < S.f(11):
            continue
        assert poincare_return_time_arc(S, L) == first_return_scan_mp(alpha_mp, mp(L), S.q(12))


def test_long_arcs_return_at_once():
    assert poincare_return_time_arc(GOLDEN, Fraction(3, 4)) == 1


def test_three_gap_equality_case_has_empty_third_class():
    S = RotationSystem(PartialQuotients((2, 3, 1, 4), (2,)).value())
    for k in range(1, 6):
        t = three_gap_return_structure(S, S.f(k - 1))
        assert t.freq3 == 0


@pytest.mark.parametrize("seed", range(10))
def test_three_gap_structure_invariants(seed):
    S, _ = random_system(seed)
    L = Fraction(1, 3 + seed)
    t = three_gap_return_structure(S, L)
    assert t.r3 == t.r1 + t.r2
    assert t.freq1 + t.freq2 + t.freq3 == L
    assert all(f.sign() >= 0 for f in t.frequencies)
    assert min(t.r1, t.r2) == poincare_return_time_arc(S, L) or t.freq2 == 0


def test_three_gap_golden_sampling():
    A = Fraction(3, 10)
    t = three_gap_return_structure(GOLDEN, A)
    times = sample_return_times(GOLDEN, A, 100_000, np.random.default_rng(0))
    assert set(np.unique(times)) <= set(t.times)
    for r, f in zip(t.times, t.frequencies):
        assert abs(np.mean(times == r) - float(f) / float(A)) < 0.02
    json.loads(t.to_json())


@pytest.mark.parametrize("L", [Fraction(1, 10), Fraction(3, 10), Fraction(1, 2)])
def test_kac_mean_return_time(L):
    times = sample_return_times(GOLDEN, L, 100_000, np.random.default_rng(1))
    assert abs(times.mean() * float(L) - 1) < 0.02


# three and five distances


def _float_gap_count(alpha, n):
    pts = np.sort((np.arange(n) * alpha) % 1.0)
    gaps = np.diff(np.concatenate([pts, [pts[0] + 1]]))
    gaps = np.sort(gaps)
    return 1 + int(np.sum(np.diff(gaps) > 1e-9))


def test_gap_counts_golden_three_distance():
    counts = gap_value_counts(GOLDEN, 10_000)
    assert counts.max() <= 3
    alpha = float(GOLDEN_MP)
    for n in (1, 2, 3, 4, 5, 8, 13, 50, 100, 377, 500):
        assert counts[n - 1] == _float_gap_count(alpha, n)


@pytest.mark.parametrize("seed", range(5))
def test_gap_counts_random_three_distance(seed):
    S, alpha_mp = random_system(seed)
    counts = gap_value_counts(S, 10_000)
    assert counts.max() <= 3
    for n in (2, 7, 31, 200):
        assert counts[n - 1] == _float_gap_count(float(alpha_mp), n)


def test_refinement_first_partition():
    lengths = refinement_lengths(GOLDEN, 1)
    assert sorted(float(x) for x in lengths) == [0.5, 0.5]


def test_refinement_golden_twenty():
    lengths = refinement_lengths(GOLDEN, 20)
    assert len(lengths) == 40
    assert sum(lengths, AlphaForm(0, 0, GOLDEN.alpha)) == 1
    assert len(set(lengths)) <= 5


@pytest.mark.parametrize("seed", range(50))
def test_refinement_distinct_lengths_at_most_five(seed):
    S, _ = random_system(seed, cuts=(0, Fraction(1, 3)) if seed % 2 else None)
    counts, _ = refinement_value_counts(S, 1000 if seed < 10 else 200)
    assert counts.max() <= 5


def test_refinement_three_one_two_prefix():
    S = RotationSystem(PartialQuotients((3, 1, 2), (1, 2)).value(), cuts=(0, Fraction(1, 3)))
    counts, largest = refinement_value_counts(S, 50)
    assert counts.max() <= 5
    assert counts.max() == 5


# symbolic coding


def test_symbolic_golden_from_zero():
    w = symbolic_orbit(GOLDEN, 0, 10)
    expected = rotation_word_mp(GOLDEN_MP, mpmath.mpf(0), [0, mpmath.mpf(1) / 2], 10)
    assert list(w.symbols) == expected == [0, 1, 0, 1, 0, 0, 1, 0, 1, 1]
    with pytest.raises(BoundaryHit):
        symbolic_orbit(GOLDEN, 0, 10, strict=True)


def test_symbolic_empty_word():
    assert len(symbolic_orbit(GOLDEN, Fraction(1, 4), 0)) == 0


def test_symbolic_enclosed_alpha_agrees_with_quadratic():
    enc = RotationSystem(EnclosedReal.from_interval_function(lambda iv: (iv.sqrt(5) - 1) / 2))
    a = symbolic_orbit(GOLDEN, Fraction(1, 4), 3000)
    b = symbolic_orbit(enc, Fraction(1, 4), 3000)
    assert np.array_equal(a.symbols, b.symbols)


@pytest.mark.parametrize("seed", range(4))
def test_symbolic_matches_high_precision_oracle(seed):
    cuts = (0, Fraction(2, 7), Fraction(3, 5))
    S, alpha_mp = random_system(seed, cuts=cuts)
    x = Fraction(seed + 1, 11)
    w = symbolic_orbit(S, x, 2000)
    expected = rotation_word_mp(alpha_mp, mp(x), [mp(c) for c in cuts], 2000)
    assert list(w.symbols) == expected


def test_symbolic_hits_endpoint_exactly():
    # x = 1/2 - 3 alpha lands on the cut 1/2 at step 3
    x = (Fraction(1, 2) - AlphaForm(0, 3, GOLDEN.alpha)).frac()
    with pytest.raises(BoundaryHit) as info:
        symbolic_orbit(GOLDEN, x, 10, strict=True)
    assert info.value.step == 3
    assert symbolic_orbit(GOLDEN, x, 10).symbols[3] == 1


def test_cylinder_first_arc():
    arc = cylinder_arc(GOLDEN, Fraction(1, 4), 1)
    assert arc.left == 0 and arc.length == Fraction(1, 2)


def test_cylinder_golden_length_is_refinement_length():
    arc = cylinder_arc(GOLDEN, 0, 8)
    assert arc.length in set(refinement_lengths(GOLDEN, 8))


@pytest.mark.parametrize("n", [5, 13, 40])
def test_cylinder_members_share_word(n):
    x = GOLDEN.form(Fraction(2, 9))
    arc = cylinder_arc(GOLDEN, x, n)
    assert arc.contains(x)
    word = symbolic_orbit(GOLDEN, x, n).symbols
    for t in range(100):
        y = (arc.left + arc.length * Fraction(t, 100)).frac()
        assert np.array_equal(symbolic_orbit(GOLDEN, y, n).symbols, word)
    # the points just outside do not
    outside = (arc.left + arc.length).frac()
    assert not np.array_equal(symbolic_orbit(GOLDEN, outside, n).symbols, word)


def test_z_rate_golden_lower_bound():
    curve = z_recurrence_rate(GOLDEN, 0, 2000)
    assert curve.values.min() >= (3 - np.sqrt(5)) / 2


def test_z_rate_matches_cylinder_route():
    S, _ = random_system(3)
    curve = z_recurrence_rate(S, Fraction(1, 7), 60)
    for n in range(1, 61):
        tau = poincare_return_time_arc(S, cylinder_arc(S, Fraction(1, 7), n))
        assert curve.values[n - 1] == tau / n


def test_z_rate_bounded_quotients_positive():
    S = RotationSystem(PartialQuotients((3, 1, 2), (1, 2, 3)).value())
    assert z_recurrence_rate(S, 0, 2000).liminf > 0.1


def test_z_rate_type_four_near_zero():
    # a_{n+1} = q_n^3 makes q_{n+1} about q_n^4
    S = RotationSystem(PartialQuotients((2, 8, 4913), (1,)).value())
    assert z_recurrence_rate(S, 0, 5000).liminf < 0.01


def test_arc_validation():
    with pytest.raises(ValueError):
        Arc(GOLDEN.form(0), GOLDEN.form(0))
