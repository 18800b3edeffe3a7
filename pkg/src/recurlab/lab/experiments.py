"""Registered experiments.

Each experiment reads its parameters from an :class:`ExperimentConfig`,
writes CSV curves into the output directory and returns one
:class:`CriterionResult` per checked criterion.  Random draws come from
generators seeded by ``(seed, stream, trial)``, so reruns are identical.
List-valued parameters are separated by ``;``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from numba import njit

from .. import circle, iet, interval_maps
from ..complexity import (
    HEADER_BITS,
    ProxyCoder,
    aic_proxy_curve,
    block_entropy,
    fit_exponent,
    log2_squared_bound_check,
    ratio_exponent,
)
from ..diophantine import (
    PartialQuotients,
    convergents,
    golden_mean,
    nearest_int_distance,
    parse_partial_quotients,
    random_partial_quotients,
)
from ..reals import AlphaForm
from ..recurrence import scan_closest_returns, scan_return_time_ball, write_csv
from .config import ConfigError, ExperimentConfig


@dataclass
class CriterionResult:
    """Outcome of one criterion; ``criterion`` is ``None`` for diagnostics."""

    criterion: Optional[int]
    measured: Any
    threshold: Any
    passed: bool
    trajectory: Dict[str, Any] = field(default_factory=dict)

    def record(self, experiment: str) -> Dict[str, Any]:
        return {
            "experiment": experiment,
            "criterion": self.criterion,
            "measured": self.measured,
            "threshold": self.threshold,
            "pass": bool(self.passed),
        }


@dataclass(frozen=True)
class Experiment:
    name: str
    criteria: tuple
    summary: str
    defaults: Dict[str, str]
    run: Callable[[ExperimentConfig, Path], List[CriterionResult]]


REGISTRY: Dict[str, Experiment] = {}


def register(name: str, criteria: tuple, summary: str, defaults: Dict[str, str]):
    def wrap(fn):
        REGISTRY[name] = Experiment(name, criteria, summary, defaults, fn)
        return fn

    return wrap


def _param(cfg: ExperimentConfig, exp: str, key: str, kind=str):
    return cfg.get(key, REGISTRY[exp].defaults[key], kind)


def _fraction(s: str) -> Fraction:
    return Fraction(s)


def _rotation(spec: str) -> circle.RotationSystem:
    try:
        return circle.RotationSystem(parse_partial_quotients(spec).value())
    except ValueError as exc:
        raise ConfigError(f"invalid rotation spec {spec!r}: {exc}") from exc


def _random_dyadic(rng: np.random.Generator, bits: int) -> Fraction:
    return interval_maps.random_point(rng, bits)


def _log_uniform_rational(rng: np.random.Generator, lo: float, hi: float, bits: int = 40) -> Fraction:
    v = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return Fraction(max(1, int(v * (1 << bits))), 1 << bits)


# ---------------------------------------------------------------- rotations


@register(
    "closest-returns",
    (1, 2, 3),
    "closest returns (q_n, f_n), nu_1 and the two-sided bound on q_n f_n",
    {
        "alpha": "1,(1)",
        "N": "25",
        "scan_N": "12",
        "runtime_limit": "5",
        "nu_N": "30",
        "nu_tol": "1e-6",
        "bound_trials": "100",
        "bound_depth": "20",
        "bound_max_quotient": "9",
    },
)
def _closest_returns(cfg, out):
    E = "closest-returns"
    spec = _param(cfg, E, "alpha")
    N, scan_N = _param(cfg, E, "N", int), _param(cfg, E, "scan_N", int)
    t0 = time.perf_counter()
    sys_ = _rotation(spec)
    rec = circle.closest_returns(sys_, N)
    a = parse_partial_quotients(spec)
    expected_q = [c.q for c in convergents(a, N)]
    tau_ok = list(rec.tau) == expected_q
    d_ok = all(d == nearest_int_distance(sys_.alpha, q) for d, q in zip(rec.d, rec.tau))
    scan_len = sys_.q(scan_N)
    scan = scan_closest_returns(sys_.as_system(), sys_.form(0), scan_len)
    scan_tau = list(scan.tau)
    if sys_.quotient(1) >= 2:
        scan_tau = scan_tau[1:]
    scan_ok = scan_tau[:scan_N] == list(rec.tau[:scan_N])
    elapsed = time.perf_counter() - t0
    rec.to_csv(out / "closest_returns.csv")
    results = [
        CriterionResult(
            1,
            {"tau_matches_convergents": tau_ok, "d_exact": d_ok, "scan_agrees": scan_ok, "runtime_s": round(elapsed, 3)},
            {"N": N, "scan_N": scan_N, "runtime_limit_s": _param(cfg, E, "runtime_limit", float)},
            tau_ok and d_ok and scan_ok and elapsed < _param(cfg, E, "runtime_limit", float),
            {"tau": list(rec.tau)},
        )
    ]

    nu_N = _param(cfg, E, "nu_N", int)
    nu = circle.nu_s(sys_, 1, nu_N)
    write_csv(out / "nu_1.csv", ("n", "value"), ((int(n), repr(float(v))) for n, v in zip(nu.n, nu.values)))
    target = 1 / math.sqrt(5)
    err = abs(nu.liminf - target)
    tol = _param(cfg, E, "nu_tol", float)
    results.append(CriterionResult(2, {"liminf": nu.liminf, "abs_error": err}, {"target": target, "tol": tol}, err <= tol, {"values": nu.values.tolist()}))

    trials, depth = _param(cfg, E, "bound_trials", int), _param(cfg, E, "bound_depth", int)
    amax = _param(cfg, E, "bound_max_quotient", int)
    violations, rows = 0, []
    for t, rng in enumerate(cfg.rngs(trials, stream=3)):
        pq = random_partial_quotients(rng, depth, amax)
        s = circle.RotationSystem(pq.value())
        for n in range(0, depth):
            qf = s.f(n) * s.q(n)
            a_next = s.quotient(n + 1)
            ok = qf > Fraction(1, a_next + 2) and qf < Fraction(1, a_next)
            violations += not ok
            rows.append((t, n, a_next, repr(float(qf)), int(ok)))
    write_csv(out / "distance_bounds.csv", ("trial", "n", "a_next", "q_n_f_n", "holds"), rows)
    results.append(CriterionResult(3, {"violations": violations, "checked": len(rows)}, {"violations": 0}, violations == 0))
    return results


@register(
    "three-gap",
    (4, 6),
    "Poincare return time of arcs against a brute-force scan, and the return-time triple",
    {
        "pairs": "200",
        "depth": "20",
        "max_quotient": "9",
        "min_length": "1e-3",
        "runtime_limit": "30",
        "alpha": "1,(1)",
        "arc_length": "3/10",
        "samples": "100000",
        "freq_tol": "0.02",
    },
)
def _three_gap(cfg, out):
    E = "three-gap"
    pairs = _param(cfg, E, "pairs", int)
    depth, amax = _param(cfg, E, "depth", int), _param(cfg, E, "max_quotient", int)
    lo = _param(cfg, E, "min_length", float)
    rows, mismatches = [], 0
    t0 = time.perf_counter()
    for t, rng in enumerate(cfg.rngs(pairs, stream=4)):
        s = circle.RotationSystem(random_partial_quotients(rng, depth, amax).value())
        L = _log_uniform_rational(rng, lo, 0.5)
        formula = circle.poincare_return_time_arc(s, L)
        scan = scan_return_time_ball(s.as_system(), s.form(0), s.form(L), s.q(depth - 2))
        mismatches += scan.time != formula
        rows.append((t, repr(float(L)), formula, scan.time if scan.time is not None else -1))
    elapsed = time.perf_counter() - t0
    write_csv(out / "arc_return_times.csv", ("pair", "length", "formula", "scan"), rows)
    limit = _param(cfg, E, "runtime_limit", float)
    results = [
        CriterionResult(
            4,
            {"mismatches": mismatches, "pairs": pairs, "runtime_s": round(elapsed, 3)},
            {"mismatches": 0, "runtime_limit_s": limit},
            mismatches == 0 and elapsed < limit,
        )
    ]

    s = _rotation(_param(cfg, E, "alpha"))
    L = _param(cfg, E, "arc_length", _fraction)
    triple = circle.three_gap_return_structure(s, L)
    (out / "return_triple.json").write_text(triple.to_json() + "\n")
    samples = _param(cfg, E, "samples", int)
    times = circle.sample_return_times(s, L, samples, cfg.rngs(1, stream=6)[0])
    values, counts = np.unique(times, return_counts=True)
    write_csv(out / "return_time_histogram.csv", ("time", "count"), zip(values.tolist(), counts.tolist()))
    support_ok = set(values.tolist()) <= set(triple.times)
    tol = _param(cfg, E, "freq_tol", float)
    rel = {}
    ok = support_ok
    for r, f in zip(triple.times, triple.frequencies):
        pred = float(f) / float(L)
        emp = float(counts[values == r].sum()) / samples
        if pred == 0:
            rel[str(r)] = emp
            ok &= emp == 0
        else:
            rel[str(r)] = abs(emp - pred) / pred
            ok &= rel[str(r)] <= tol
    results.append(CriterionResult(6, {"support_ok": support_ok, "relative_errors": rel, "triple": triple.as_dict()}, {"relative_tol": tol}, ok))
    return results


@register(
    "five-distance",
    (5,),
    "distinct gap lengths of {j alpha} and of the refined two-arc partitions",
    {
        "alphas": "50",
        "depth": "40",
        "max_quotient": "9",
        "gap_N": "10000",
        "refine_N": "1000",
        "cuts": "1/2;1/3",
    },
)
def _five_distance(cfg, out):
    E = "five-distance"
    count = _param(cfg, E, "alphas", int)
    depth, amax = _param(cfg, E, "depth", int), _param(cfg, E, "max_quotient", int)
    gap_N, refine_N = _param(cfg, E, "gap_N", int), _param(cfg, E, "refine_N", int)
    cuts = [Fraction(c) for c in cfg.params.get("cuts", REGISTRY[E].defaults["cuts"]).split(";")]
    rows = []
    worst_gap = worst_refine = bound_violations = 0
    for t, rng in enumerate(cfg.rngs(count, stream=5)):
        alpha = random_partial_quotients(rng, depth, amax).value()
        g = circle.gap_value_counts(circle.RotationSystem(alpha), gap_N)
        worst_gap = max(worst_gap, int(g.max()))
        row = [t, int(g.max())]
        for c in cuts:
            s = circle.RotationSystem(alpha, cuts=(0, c))
            counts, largest = circle.refinement_value_counts(s, refine_N)
            worst_refine = max(worst_refine, int(counts.max()))
            k = 0
            for n in range(2, refine_N + 1):
                while s.q(k + 1) < n:
                    k += 1
                bound = s.f(k) * (1 + s.quotient(k + 1)) + s.f(k + 1)
                bound_violations += not largest[n - 1] <= bound
            row.append(int(counts.max()))
        rows.append(tuple(row))
    write_csv(out / "distinct_lengths.csv", ("alpha", "max_gap_values") + tuple(f"max_refinement_values_cut_{c}" for c in cuts), rows)
    ok = worst_gap <= 3 and worst_refine <= 5 and bound_violations == 0
    return [
        CriterionResult(
            5,
            {"max_gap_values": worst_gap, "max_refinement_values": worst_refine, "largest_arc_bound_violations": bound_violations},
            {"gap_values": 3, "refinement_values": 5},
            ok,
        )
    ]


def _double_exponential_alpha(depth: int) -> PartialQuotients:
    return PartialQuotients(tuple(2 ** (2**k) for k in range(1, depth + 1)), (1,))


@register(
    "rec-rate-vs-type",
    (8,),
    "lower pointwise recurrence rate against the Diophantine type",
    {
        "type2_depth": "10",
        "type2_range": "0.35;0.65",
        "golden_depth": "60",
        "golden_range": "0.9;1.05",
    },
)
def _rec_rate_vs_type(cfg, out):
    E = "rec-rate-vs-type"
    d2, dg = _param(cfg, E, "type2_depth", int), _param(cfg, E, "golden_depth", int)
    r2 = cfg.floats("type2_range", REGISTRY[E].defaults["type2_range"])
    rg = cfg.floats("golden_range", REGISTRY[E].defaults["golden_range"])
    est2 = circle.pointwise_recurrence_rate(circle.RotationSystem(_double_exponential_alpha(d2).value()), d2)
    estg = circle.pointwise_recurrence_rate(circle.RotationSystem(golden_mean()), dg)
    for name, est in (("double_exponential", est2), ("golden", estg)):
        write_csv(
            out / f"recurrence_rate_{name}.csv",
            ("n", "log_r", "value"),
            ((int(n), repr(float(l)), repr(float(v))) for n, l, v in zip(est.n, est.log_r, est.values)),
        )
    ok = r2[0] <= est2.lower <= r2[1] and rg[0] <= estg.lower <= rg[1]
    return [
        CriterionResult(
            8,
            {"double_exponential_lower": est2.lower, "golden_lower": estg.lower, "golden_upper": estg.upper},
            {"double_exponential": r2, "golden": rg},
            ok,
            {"double_exponential": est2.values.tolist(), "golden": estg.values.tolist()},
        )
    ]


@register(
    "golden-cylinder-bound",
    (7,),
    "min of tau(Z_n(x))/n for the golden rotation",
    {"points": "20", "N": "2000", "slack": "0.01", "bits": "40"},
)
def _golden_cylinder_bound(cfg, out):
    E = "golden-cylinder-bound"
    s = circle.RotationSystem(golden_mean())
    N, bits = _param(cfg, E, "N", int), _param(cfg, E, "bits", int)
    threshold = (3 - math.sqrt(5)) / 2 - _param(cfg, E, "slack", float)
    minima, rows = [], []
    for t, rng in enumerate(cfg.rngs(_param(cfg, E, "points", int), stream=7)):
        x = _random_dyadic(rng, bits)
        curve = circle.z_recurrence_rate(s, x, N)
        minima.append(float(curve.values.min()))
        rows.append((t, str(x), repr(minima[-1]), repr(curve.liminf), repr(curve.limsup)))
        if t == 0:
            curve.to_csv(out / "tau_over_n_first_point.csv")
    write_csv(out / "cylinder_minima.csv", ("point", "x", "min", "tail_min", "tail_max"), rows)
    return [CriterionResult(7, {"min": min(minima)}, {"min_at_least": threshold}, min(minima) >= threshold, {"minima": minima})]


@register(
    "kac-check",
    (15,),
    "|A| times the mean first-return time of sampled points",
    {"arcs": "10", "samples": "100000", "depth": "20", "max_quotient": "9", "min_length": "0.01", "range": "0.98;1.02"},
)
def _kac_check(cfg, out):
    E = "kac-check"
    lo_hi = cfg.floats("range", REGISTRY[E].defaults["range"])
    samples = _param(cfg, E, "samples", int)
    rows, products = [], []
    for t, rng in enumerate(cfg.rngs(_param(cfg, E, "arcs", int), stream=15)):
        s = circle.RotationSystem(random_partial_quotients(rng, _param(cfg, E, "depth", int), _param(cfg, E, "max_quotient", int)).value())
        L = Fraction(int(rng.uniform(_param(cfg, E, "min_length", float), 0.5) * (1 << 40)), 1 << 40)
        times = circle.sample_return_times(s, L, samples, rng)
        products.append(float(L) * float(times.mean()))
        rows.append((t, repr(float(L)), repr(float(times.mean())), repr(products[-1])))
    write_csv(out / "kac.csv", ("arc", "length", "mean_return_time", "product"), rows)
    ok = all(lo_hi[0] <= p <= lo_hi[1] for p in products)
    return [CriterionResult(15, {"min": min(products), "max": max(products)}, {"range": lo_hi}, ok, {"products": products})]


@register(
    "conjecture-probe",
    (),
    "lower Z-recurrence rates for rotations of several Diophantine types (reported only)",
    {"points": "5", "N": "2000", "alphas": "1,(1);(2);4,16,256,65536,(1);1,8,(1)", "bits": "40"},
)
def _conjecture_probe(cfg, out):
    E = "conjecture-probe"
    specs = cfg.params.get("alphas", REGISTRY[E].defaults["alphas"]).split(";")
    N, bits = _param(cfg, E, "N", int), _param(cfg, E, "bits", int)
    rows, measured = [], {}
    for i, spec in enumerate(specs):
        s = _rotation(spec)
        tails = []
        for t, rng in enumerate(cfg.rngs(_param(cfg, E, "points", int), stream=100 + i)):
            curve = circle.z_recurrence_rate(s, _random_dyadic(rng, bits), N)
            tails.append(curve.liminf)
            rows.append((spec, t, repr(curve.liminf), repr(curve.limsup)))
        measured[spec] = {"tail_min_median": float(np.median(tails))}
    write_csv(out / "conjecture_probe.csv", ("alpha", "point", "tail_min", "tail_max"), rows)
    return [CriterionResult(None, measured, None, True)]


# ---------------------------------------------------------------- interval maps


def _manneville_word(z: Fraction, n: int, rng: np.random.Generator, precision: int):
    m = interval_maps.manneville(z, precision)
    return interval_maps.iterate_symbolic(m, interval_maps.random_point(rng, precision), n)


def _doubling_word(n: int, rng: np.random.Generator):
    bits = n + 64
    return interval_maps.iterate_symbolic(interval_maps.doubling(bits), interval_maps.random_point(rng, bits), n)


@register(
    "doubling-baseline",
    (9,),
    "recurrence rate, proxy-AIC rate and block entropy of a doubling-map orbit",
    {
        "rate_N": "10000",
        "rate_min": "0.95",
        "n": "100000",
        "bits_range": "0.9;1.1",
        "block": "8",
        "entropy_range": "0.95;1.02",
    },
)
def _doubling_baseline(cfg, out):
    E = "doubling-baseline"
    rng_rate, rng_word = cfg.rngs(2, stream=9)
    N = _param(cfg, E, "rate_N", int)
    curve = interval_maps.r_rate_curve(interval_maps.doubling(N + 64), None, N, word=_doubling_word(N, rng_rate))
    curve.to_csv(out / "doubling_tau_over_n.csv")
    n = _param(cfg, E, "n", int)
    w = _doubling_word(n, rng_word)
    coder = ProxyCoder(w)
    cps = np.unique(np.round(np.logspace(2, math.log10(n), 13)).astype(int))
    aic_proxy_curve(w, cps, coder).to_csv(out / "doubling_proxy_aic.csv")
    per_symbol = coder.bits(n) / n
    entropy = block_entropy(w, _param(cfg, E, "block", int))
    br = cfg.floats("bits_range", REGISTRY[E].defaults["bits_range"])
    er = cfg.floats("entropy_range", REGISTRY[E].defaults["entropy_range"])
    rmin = _param(cfg, E, "rate_min", float)
    ok = curve.limsup >= rmin and br[0] <= per_symbol <= br[1] and er[0] <= entropy <= er[1]
    return [
        CriterionResult(
            9,
            {"limsup": curve.limsup, "bits_per_symbol": per_symbol, "block_entropy": entropy},
            {"limsup_min": rmin, "bits_range": br, "entropy_range": er},
            ok,
        )
    ]


def _checkpoints(lo_exp: float, hi_exp: float, per_decade: int) -> np.ndarray:
    k = int(round((hi_exp - lo_exp) * per_decade)) + 1
    return np.unique(np.round(np.logspace(lo_exp, hi_exp, k)).astype(np.int64))


@register(
    "manneville-exponent",
    (10,),
    "growth exponent of proxy-AIC for Manneville maps against 1/(z-1)",
    {"z": "5/2;3;4", "seeds": "20", "n": "1000000", "per_decade": "4", "tol": "0.15", "runtime_limit": "600"},
)
def _manneville_exponent(cfg, out):
    E = "manneville-exponent"
    zs = [Fraction(z) for z in cfg.params.get("z", REGISTRY[E].defaults["z"]).split(";")]
    seeds, n = _param(cfg, E, "seeds", int), _param(cfg, E, "n", int)
    tol = _param(cfg, E, "tol", float)
    cps = _checkpoints(3, math.log10(n), _param(cfg, E, "per_decade", int))
    t0 = time.perf_counter()
    rows, measured, ok = [], {}, True
    for i, z in enumerate(zs):
        betas = []
        for t, rng in enumerate(cfg.rngs(seeds, stream=1000 + i)):
            curve = aic_proxy_curve(_manneville_word(z, n, rng, cfg.precision), cps)
            fit = fit_exponent(curve)
            betas.append(fit.beta)
            rows += [(str(z), t, int(c), int(b)) for c, b in zip(curve.checkpoints, curve.bits)]
        median = float(np.median(betas))
        target = 1 / (float(z) - 1)
        measured[str(z)] = {"median_beta": median, "target": target, "betas": betas}
        ok &= abs(median - target) <= tol
    elapsed = time.perf_counter() - t0
    write_csv(out / "manneville_proxy_aic.csv", ("z", "seed", "n", "bits"), rows)
    limit = _param(cfg, E, "runtime_limit", float)
    measured["runtime_s"] = round(elapsed, 1)
    return [CriterionResult(10, measured, {"tol": tol, "runtime_limit_s": limit}, ok and elapsed < limit)]


@register(
    "manneville-rbar",
    (11,),
    "upper Z-recurrence rate of Manneville orbits",
    {"z": "3", "seeds": "20", "N": "10000", "min": "0.9"},
)
def _manneville_rbar(cfg, out):
    E = "manneville-rbar"
    z = _param(cfg, E, "z", _fraction)
    N = _param(cfg, E, "N", int)
    m = interval_maps.manneville(z, cfg.precision)
    sups, rows = [], []
    for t, rng in enumerate(cfg.rngs(_param(cfg, E, "seeds", int), stream=11)):
        w = _manneville_word(z, N, rng, cfg.precision)
        curve = interval_maps.r_rate_curve(m, None, N, word=w)
        sups.append(curve.limsup)
        rows.append((t, repr(curve.liminf), repr(curve.limsup), ";".join(curve.flags)))
    write_csv(out / "manneville_rates.csv", ("seed", "tail_min", "tail_max", "flags"), rows)
    median = float(np.median(sups))
    threshold = _param(cfg, E, "min", float)
    return [CriterionResult(11, {"median_limsup": median}, {"min": threshold}, median >= threshold, {"limsups": sups})]


@register(
    "basic-bound",
    (13,),
    "proxy(n) <= proxy(tau(Z_n)) + ceil(log2 n) + C on every prefix",
    {"n": "10000", "seeds": "3", "z": "3"},
)
def _basic_bound(cfg, out):
    E = "basic-bound"
    n, seeds = _param(cfg, E, "n", int), _param(cfg, E, "seeds", int)
    z = _param(cfg, E, "z", _fraction)
    words = [("doubling", _doubling_word(n, rng)) for rng in cfg.rngs(seeds, stream=13)]
    words += [(f"manneville-{z}", _manneville_word(z, n, rng, cfg.precision)) for rng in cfg.rngs(seeds, stream=14)]
    m = np.arange(1, n + 1)
    log_n = np.array([max(0, (int(k) - 1).bit_length()) for k in m])
    violations, rows = 0, []
    for name, w in words:
        coder = ProxyCoder(w)
        tau = coder.periods
        lhs = coder.proxy_bits[1:]
        rhs = coder.proxy_bits[tau] + log_n + HEADER_BITS
        bad = int(np.sum(lhs > rhs))
        violations += bad
        rows.append((name, bad, int(np.max(lhs - rhs))))
    write_csv(out / "basic_bound.csv", ("word", "violations", "max_excess"), rows)
    return [CriterionResult(13, {"violations": violations, "coder_constant": HEADER_BITS}, {"violations": 0}, violations == 0)]


# ---------------------------------------------------------------- complexity classes


def _ratio_checks(bits, cps):
    logsq = [b / math.log(n) ** 2 for b, n in zip(bits, cps)]
    power = [b / n**0.1 for b, n in zip(bits, cps)]
    return logsq, power, all(b <= a for a, b in zip(logsq, logsq[1:])), all(b < a for a, b in zip(power, power[1:]))


@register(
    "sturmian-complexity",
    (12,),
    "proxy-AIC of rotation and interval-exchange codings against log^2 n and n^0.1",
    {"checkpoints": "1000;10000;100000;1000000", "x": "0", "iet_bits": "30"},
)
def _sturmian_complexity(cfg, out):
    E = "sturmian-complexity"
    cps = cfg.ints("checkpoints", REGISTRY[E].defaults["checkpoints"])
    n = max(cps)
    s = circle.RotationSystem(golden_mean())
    words = {"golden": circle.symbolic_orbit(s, _param(cfg, E, "x", _fraction), n)}
    T = iet.build_iet([Fraction(3, 10), Fraction(4, 10), Fraction(3, 10)], (3, 2, 1))
    words["iet"] = iet.symbolic_orbit(T, _random_dyadic(cfg.rngs(1, stream=12)[0], _param(cfg, E, "iet_bits", int)), n)
    measured, ok, rows = {}, True, []
    for name, w in words.items():
        curve = aic_proxy_curve(w, cps)
        bits = curve.bits.tolist()
        logsq, power, mono, dec = _ratio_checks(bits, cps)
        measured[name] = {"bits": bits, "over_log2": logsq, "over_n_0.1": power, "log2_nonincreasing": mono, "power_decreasing": dec}
        ok &= mono and dec
        rows += [(name, c, int(b), repr(a), repr(p)) for c, b, a, p in zip(cps, bits, logsq, power)]
    write_csv(out / "sturmian_complexity.csv", ("word", "n", "bits", "bits_over_log2", "bits_over_n_0.1"), rows)
    return [CriterionResult(12, measured, {"log2": "nonincreasing", "n^0.1": "decreasing"}, ok)]


@njit(cache=True)
def _mos_sequence(N, C):
    spf = np.zeros(N + 1, np.int64)
    for p in range(2, N + 1):
        if spf[p] == 0:
            for k in range(p, N + 1, p):
                if spf[k] == 0:
                    spf[k] = p
    a = np.zeros(N + 1)
    for n in range(2, N + 1):
        a[n] = a[n // spf[n]] + math.log(n) + C
    return a


@register(
    "mos-lemma",
    (16,),
    "a_n = a_{n/d_n} + ln n + C with d_n the least divisor >= 2, against 1/ln 2",
    {"N": "1000000", "C": "1", "d": "2", "slack": "0.1"},
)
def _mos_lemma(cfg, out):
    E = "mos-lemma"
    N, C = _param(cfg, E, "N", int), _param(cfg, E, "C", float)
    a = _mos_sequence(N, C)
    n = np.arange(1, N + 1)
    check = log2_squared_bound_check(n, a[1:], _param(cfg, E, "d", float), _param(cfg, E, "slack", float))
    idx = np.unique(np.round(np.logspace(0.5, math.log10(N), 40)).astype(int))
    write_csv(out / "mos_ratio.csv", ("n", "a_n", "ratio"), ((int(k), repr(float(a[k])), repr(float(a[k] / math.log(k) ** 2))) for k in idx))
    return [CriterionResult(16, {"tail_max_ratio": check.max_ratio}, {"bound": check.bound, "slack": check.slack}, check.passed)]


# ---------------------------------------------------------------- interval exchanges


@register(
    "iet-hitting",
    (14,),
    "growth of dyadic-window minima of n^a times the distance to the discontinuities",
    {
        "lengths": "3/10;2/5;3/10",
        "permutation": "3;2;1",
        "points": "100",
        "N": "1000000",
        "alpha_exp": "1.1",
        "windows": "4",
        "min_fraction": "0.95",
        "bits": "30",
        "aperiodic_check": "1",
    },
)
def _iet_hitting(cfg, out):
    E = "iet-hitting"
    lengths = [Fraction(v) for v in cfg.params.get("lengths", REGISTRY[E].defaults["lengths"]).split(";")]
    perm = cfg.ints("permutation", REGISTRY[E].defaults["permutation"])
    try:
        T = iet.build_iet(lengths, perm)
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(f"invalid exchange: {exc}") from exc
    N, a = _param(cfg, E, "N", int), _param(cfg, E, "alpha_exp", float)
    windows, bits = _param(cfg, E, "windows", int), _param(cfg, E, "bits", int)
    points = _param(cfg, E, "points", int)

    def probe(T, stream):
        good, rows = 0, []
        for t, rng in enumerate(cfg.rngs(points, stream=stream)):
            h = iet.hitting_exponent_probe(T, _random_dyadic(rng, bits), N, a)
            good += h.nondecreasing_tail(windows)
            rows += [(t, int(s), repr(float(v))) for s, v in zip(h.window_starts, h.window_minima)]
        return good / points, rows

    frac, rows = probe(T, 14)
    write_csv(out / "window_minima.csv", ("point", "window_start", "minimum"), rows)
    measured = {"fraction": frac, "exchange": T.to_json()}
    if _param(cfg, E, "aperiodic_check", int):
        g = AlphaForm(0, 1, golden_mean())
        Tg = iet.build_iet([g / 2, Fraction(1, 2), Fraction(1, 2) - g / 2], (3, 2, 1))
        frac_g, rows_g = probe(Tg, 15)
        write_csv(out / "window_minima_aperiodic.csv", ("point", "window_start", "minimum"), rows_g)
        measured["aperiodic_fraction"] = frac_g
    threshold = _param(cfg, E, "min_fraction", float)
    return [CriterionResult(14, measured, {"min_fraction": threshold}, frac >= threshold)]


@register(
    "constructive-iet-logn",
    (),
    "proxy-AIC over ln n for an exchange with quadratic-irrational lengths (reported only)",
    {"n": "1000000", "per_decade": "4", "tol": "0.05", "bits": "40"},
)
def _constructive_iet_logn(cfg, out):
    E = "constructive-iet-logn"
    n = _param(cfg, E, "n", int)
    g = AlphaForm(0, 1, golden_mean())
    T = iet.build_iet([g / 2, Fraction(1, 2), Fraction(1, 2) - g / 2], (3, 2, 1))
    w = iet.symbolic_orbit(T, _random_dyadic(cfg.rngs(1, stream=20)[0], _param(cfg, E, "bits", int)), n)
    cps = _checkpoints(3, math.log10(n), _param(cfg, E, "per_decade", int))
    curve = aic_proxy_curve(w, cps)
    curve.to_csv(out / "constructive_iet_proxy_aic.csv")
    ratio = (curve.bits / np.log(cps)).tolist()
    exp_log = ratio_exponent(cps, curve.bits, np.log(cps))
    exp_log2 = ratio_exponent(cps, curve.bits, np.log(cps) ** 2)
    tol = _param(cfg, E, "tol", float)
    return [
        CriterionResult(
            None,
            {"ratio_exponent_log": exp_log, "ratio_exponent_log2": exp_log2, "bits_over_ln_n": ratio},
            {"ratio_exponent_tol": tol},
            abs(exp_log) <= tol,
        )
    ]
