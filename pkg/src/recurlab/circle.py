"""Recurrence of the circle rotation ``T(x) = x + alpha mod 1``.

All lengths and positions are exact :class:`~recurlab.reals.AlphaForm`
values ``u + v*alpha``.  With ``f_n = |q_n alpha - p_n|`` (see
:mod:`recurlab.diophantine` for the seed convention):

* closest returns are ``tau_n = q_n`` with ``d_n = f_n`` for every ``x``;
* the return time to a ball of radius ``r`` is ``q_n`` for the first ``n``
  with ``f_n < r``;
* an arc of length ``L <= 1/2`` decomposes uniquely as
  ``L = c f_k + f_{k+1} + g`` with ``0 < g <= f_k`` and
  ``1 <= c <= a_{k+1}``; its Poincare return time is ``q_k`` if
  ``c < a_{k+1}`` and ``q_{k-1}`` otherwise, and first returns take the
  three values ``q_k``, ``q_{k+1} - c q_k`` and their sum.

Arcs are left-closed and right-open.  The strict inequality in
``tau(A) = min{r > 0 : ||r alpha|| < |A|}`` is applied literally, so an arc
whose length equals some ``f_n`` is well defined.
"""
from __future__ import annotations

import bisect
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .complexity import SymbolicWord
from .diophantine import cf_expand, parse_real
from .reals import AlphaForm, ArithmeticReal, DomainError, InsufficientPrecision, as_real
from .recurrence import ClosestReturnRecord, RateCurve, SystemInterface, tail_extrema

__all__ = [
    "RotationSystem",
    "Arc",
    "GapDecomposition",
    "ReturnTriple",
    "NuEstimate",
    "RateEstimate",
    "BoundaryHit",
    "closest_returns",
    "nu_s",
    "return_time_ball",
    "pointwise_recurrence_rate",
    "arc_decompose",
    "poincare_return_time_arc",
    "three_gap_return_structure",
    "sample_return_times",
    "refinement_lengths",
    "gap_value_counts",
    "refinement_value_counts",
    "symbolic_orbit",
    "cylinder_arc",
    "z_recurrence_rate",
]


class BoundaryHit(ArithmeticError):
    """An orbit point coincides exactly with a partition endpoint."""

    def __init__(self, step: int):
        super().__init__(f"boundary hit at step {step}")
        self.step = step


class RotationSystem:
    """Rotation by an irrational ``alpha`` in ``(0, 1)`` with a finite arc partition.

    Parameters
    ----------
    alpha : ArithmeticReal, str or number
        Strings are parsed by :func:`recurlab.diophantine.parse_real`.
    cuts : sequence, optional
        Increasing endpoints in ``[0, 1)``; arc ``i`` is ``[cuts[i], cuts[i+1])``
        and the last arc wraps around to ``cuts[0] + 1``.  Entries may be
        rationals or forms over ``alpha``.  Defaults to ``(0, 1/2)``.
    """

    def __init__(self, alpha, cuts: Optional[Sequence] = None):
        if isinstance(alpha, str):
            alpha = parse_real(alpha)
        alpha = as_real(alpha)
        if alpha.rational is not None:
            raise DomainError("rotation number must be irrational")
        if alpha.compare(0) <= 0 or alpha.compare(1) >= 0:
            raise DomainError("alpha must lie in (0,1)")
        self.alpha = alpha
        cuts = (0, Fraction(1, 2)) if cuts is None else cuts
        forms = [self.form(c) for c in cuts]
        if not forms:
            raise ValueError("at least one cut is needed")
        for c in forms:
            if c.sign() < 0 or c.compare(1) >= 0:
                raise ValueError("cuts must lie in [0,1)")
        for a, b in zip(forms, forms[1:]):
            if not a < b:
                raise ValueError("cuts must strictly increase")
        self.cuts: Tuple[AlphaForm, ...] = tuple(forms)
        self._a: List[int] = []
        self._p: List[int] = [1, 0]
        self._q: List[int] = [0, 1]

    def __repr__(self):
        return f"RotationSystem({self.alpha!r}, cuts={[str(c) for c in self.cuts]})"

    # ---------------------------------------------------------- arithmetic

    def form(self, x) -> AlphaForm:
        """``x`` as a form over this system's ``alpha``."""
        if isinstance(x, AlphaForm):
            if x.alpha is not self.alpha:
                raise DomainError("form over a different alpha")
            return x
        if isinstance(x, ArithmeticReal):
            r = x.rational
            if r is None:
                raise DomainError("points must be rational or forms over alpha")
            x = r
        if isinstance(x, str):
            x = Fraction(x)
        return AlphaForm(Fraction(x), 0, self.alpha)

    def _extend(self, n: int) -> None:
        if len(self._a) >= n:
            return
        want = max(n, 2 * len(self._a), 16)
        self._a = cf_expand(self.alpha, want).take(want)
        self._p, self._q = [1, 0], [0, 1]
        for a in self._a:
            self._p.append(a * self._p[-1] + self._p[-2])
            self._q.append(a * self._q[-1] + self._q[-2])

    def quotient(self, i: int) -> int:
        """Partial quotient ``a_i`` (1-based)."""
        self._extend(i)
        return self._a[i - 1]

    def p(self, n: int) -> int:
        self._extend(n)
        return self._p[n + 1]

    def q(self, n: int) -> int:
        """Convergent denominator ``q_n`` for ``n >= -1``."""
        self._extend(n)
        return self._q[n + 1]

    def f(self, n: int) -> AlphaForm:
        """``f_n = (-1)**n (q_n alpha - p_n)`` for ``n >= -1``."""
        return AlphaForm(-self.p(n), self.q(n), self.alpha) * (-1) ** n

    def norm(self, x: AlphaForm) -> AlphaForm:
        """Distance to the nearest integer."""
        d = x.frac()
        e = 1 - d
        return d if d <= e else e

    def as_system(self) -> SystemInterface:
        """Exact generic interface over forms, for the orbit-scan oracles."""
        alpha1 = AlphaForm(0, 1, self.alpha)

        def iterate(x: AlphaForm) -> AlphaForm:
            y = x + alpha1
            return y - 1 if y.compare(1) >= 0 else y

        def distance(x: AlphaForm, y: AlphaForm) -> AlphaForm:
            return self.norm(y - x)

        return SystemInterface(iterate=iterate, distance=distance, encode=self.arc_index, name="rotation")

    def arc_index(self, x) -> int:
        """Index of the partition arc containing ``x`` (taken mod 1)."""
        x = self.form(x).frac()
        i = -1
        for j, c in enumerate(self.cuts):
            s = (x - c).sign()
            if s == 0:
                return j
            if s > 0:
                i = j
        return i % len(self.cuts)

    def fixed_point(self, bits: int) -> Tuple[int, int]:
        """``(A, err)`` with ``|alpha * 2**bits - A| <= err``."""
        lo, hi = self.alpha.enclosure(bits + 2)
        A = math.floor((lo + hi) / 2 * (1 << bits))
        return A, 1


def _form_key(x: AlphaForm, A: int, P: int) -> Tuple[int, int]:
    """Fixed-point value of ``x`` (not reduced) and an error bound, in units of ``2**-P``."""
    U = math.floor(x.u * (1 << P))
    V = x.v
    if V.denominator == 1:
        return U + int(V) * A, 2 + abs(int(V))
    return math.floor(x.u * (1 << P) + V * A), 2 + math.ceil(abs(V))


@dataclass(frozen=True)
class Arc:
    """The half-open arc ``[left, left + length)`` taken mod 1."""

    left: AlphaForm
    length: AlphaForm

    def __post_init__(self):
        if self.length.sign() <= 0 or self.length.compare(1) > 0:
            raise ValueError("arc length must lie in (0,1]")

    def contains(self, x: AlphaForm) -> bool:
        return (x - self.left).frac() < self.length

    def __str__(self):
        return f"[{self.left}, {self.left} + {self.length})"


def _arc(sys: RotationSystem, A) -> Arc:
    if isinstance(A, Arc):
        return A
    return Arc(sys.form(0), sys.form(A))


@dataclass(frozen=True)
class GapDecomposition:
    """``|A| = c f_k + f_{k+1} + g`` with ``0 < g <= f_k`` and ``1 <= c <= a_{k+1}``."""

    k: int
    c: int
    g: AlphaForm
    a_next: int
    f_k: AlphaForm
    f_next: AlphaForm

    @property
    def length(self) -> AlphaForm:
        return self.f_k * self.c + self.f_next + self.g


@dataclass(frozen=True)
class ReturnTriple:
    """First-return times of an arc and the measure of the points taking each."""

    r1: int
    r2: int
    r3: int
    freq1: AlphaForm
    freq2: AlphaForm
    freq3: AlphaForm

    def as_dict(self) -> Dict[str, float]:
        return {
            "r1": self.r1,
            "r2": self.r2,
            "r3": self.r3,
            "freq1": float(self.freq1),
            "freq2": float(self.freq2),
            "freq3": float(self.freq3),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @property
    def times(self) -> Tuple[int, int, int]:
        return self.r1, self.r2, self.r3

    @property
    def frequencies(self) -> Tuple[AlphaForm, AlphaForm, AlphaForm]:
        return self.freq1, self.freq2, self.freq3


# ---------------------------------------------------------------- closest returns


def closest_returns(sys: RotationSystem, N: int) -> ClosestReturnRecord:
    """``(tau_n, d_n) = (q_n, f_n)`` for ``n = 1..N``.

    A direct orbit scan started at ``k = 1`` produces the same record,
    preceded by ``(q_0, f_0) = (1, alpha)`` when ``a_1 >= 2``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    return ClosestReturnRecord(tuple(sys.q(n) for n in range(1, N + 1)), tuple(sys.f(n) for n in range(1, N + 1)))


@dataclass(frozen=True)
class NuEstimate:
    """``q_n^s f_n`` for ``n = 1..N`` with its minimum and tail minimum."""

    s: float
    n: np.ndarray
    values: np.ndarray
    log_values: np.ndarray
    minimum: float
    liminf: float


def nu_s(sys: RotationSystem, s: float, N: int) -> NuEstimate:
    """Closest-return products ``tau_n^s d_n`` along ``n = 1..N``.

    ``liminf`` is the minimum over the deepest half of the range.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    n = np.arange(1, N + 1)
    logs = []
    for k in n:
        if s == 1:
            logs.append((sys.f(int(k)) * sys.q(int(k))).log_abs())
        else:
            logs.append(s * math.log(sys.q(int(k))) + sys.f(int(k)).log_abs())
    logs = np.array(logs)
    values = np.exp(logs)
    lo, _ = tail_extrema(values)
    return NuEstimate(float(s), n, values, logs, float(values.min()), lo)


def return_time_ball(sys: RotationSystem, r) -> int:
    """``tau(x, r) = inf{k > 0 : ||k alpha|| < r}``, the same for every ``x``."""
    r = sys.form(r)
    if r.sign() <= 0:
        raise ValueError("radius must be positive")
    n = 0
    while not sys.f(n) < r:
        n += 1
    return sys.q(n)


@dataclass(frozen=True)
class RateEstimate:
    """``log tau(x, r) / (-log r)`` along a grid of radii, with tail extrema."""

    lower: float
    upper: float
    n: np.ndarray
    log_r: np.ndarray
    values: np.ndarray


def pointwise_recurrence_rate(sys: RotationSystem, depth: int, eps: Fraction = Fraction(1, 1000)) -> RateEstimate:
    """Recurrence-rate estimates along ``r = f_n (1 +- eps)`` and ``(f_n + f_{n-1})/2``.

    ``lower``/``upper`` are the min/max over the grid points with
    ``n >= depth/2``.
    """
    if depth < 3:
        raise ValueError("depth must be at least 3")
    ns, logr, vals = [], [], []
    for n in range(1, depth + 1):
        fn, fp = sys.f(n), sys.f(n - 1)
        for r in (fn * (1 + eps), fn * (1 - eps), (fn + fp) / 2):
            if r.compare(1) >= 0:
                continue
            tau = return_time_ball(sys, r)
            lr = r.log_abs()
            ns.append(n)
            logr.append(lr)
            vals.append(math.log(tau) / -lr)
    ns, logr, vals = np.array(ns), np.array(logr), np.array(vals)
    tail = ns >= depth / 2
    return RateEstimate(float(vals[tail].min()), float(vals[tail].max()), ns, logr, vals)


# ---------------------------------------------------------------- arcs


def _floor_ratio(x: AlphaForm, y: AlphaForm) -> int:
    """An estimate of ``floor(x / y)`` for positive forms."""
    bits = 64
    while bits <= 8 * x.max_bits:
        xl, xh = x.enclosure(bits)
        yl, yh = y.enclosure(bits)
        if yl > 0 and xl > 0 and (xh - xl) * (1 << 40) < xl and (yh - yl) * (1 << 40) < yl:
            return math.floor((xl + xh) / (yl + yh))
        bits *= 2
    raise InsufficientPrecision("cannot estimate ratio")


def arc_decompose(sys: RotationSystem, length, k_start: int = 0) -> GapDecomposition:
    """The unique ``(k, c, g)`` with ``length = c f_k + f_{k+1} + g``.

    ``k`` is the first index with ``f_k + f_{k+1} < length``; ``k = 0`` is
    possible when ``a_1 >= 3``.  ``k_start`` may skip indices known to be
    too small.

    Raises
    ------
    DomainError
        ``length`` is not in ``(0, 1/2]``.
    """
    L = sys.form(length)
    if L.sign() <= 0 or L.compare(Fraction(1, 2)) > 0:
        raise DomainError("arc length must lie in (0, 1/2]")
    k = max(k_start, 0)
    while k > 0 and not (sys.f(k - 1) + sys.f(k) >= L):
        k -= 1
    while not (sys.f(k) + sys.f(k + 1) < L):
        k += 1
    fk, fk1 = sys.f(k), sys.f(k + 1)
    rest = L - fk1
    c = _floor_ratio(rest, fk)
    # c f_k < rest <= (c+1) f_k
    while not (fk * c < rest):
        c -= 1
    while not (rest <= fk * (c + 1)):
        c += 1
    a_next = sys.quotient(k + 1)
    if not 1 <= c <= a_next:
        raise ArithmeticError("decomposition out of range")
    g = rest - fk * c
    return GapDecomposition(k, c, g, a_next, fk, fk1)


def poincare_return_time_arc(sys: RotationSystem, A, k_start: int = 0) -> int:
    """``tau(A) = min{n > 0 : T^n A meets A}``.

    Arcs longer than 1/2 return at time 1.
    """
    arc = _arc(sys, A)
    if arc.length.compare(Fraction(1, 2)) > 0:
        return 1
    dec = arc_decompose(sys, arc.length, k_start)
    return sys.q(dec.k) if dec.c < dec.a_next else sys.q(dec.k - 1)


def three_gap_return_structure(sys: RotationSystem, A) -> ReturnTriple:
    """First-return times of points of ``A`` and the measure taking each value."""
    arc = _arc(sys, A)
    dec = arc_decompose(sys, arc.length)
    k, c, g, fk = dec.k, dec.c, dec.g, dec.f_k
    r1 = sys.q(k)
    r2 = sys.q(k + 1) - c * sys.q(k)
    return ReturnTriple(r1, r2, r1 + r2, fk * (c - 1) + dec.f_next + g, g, fk - g)


def sample_return_times(sys: RotationSystem, A, samples: int, rng: np.random.Generator, max_time: int = 10**7) -> np.ndarray:
    """First-return times of ``samples`` uniform points of ``A`` (floating point)."""
    arc = _arc(sys, A)
    alpha = float(sys.alpha)
    left, length = float(arc.left) % 1.0, float(arc.length)
    offset = rng.random(samples) * length
    times = np.zeros(samples, np.int64)
    active = np.arange(samples)
    pos = offset.copy()
    t = 0
    while active.size and t < max_time:
        t += 1
        pos = (pos + alpha) % 1.0
        hit = pos < length
        times[active[hit]] = t
        active, pos = active[~hit], pos[~hit]
    if active.size:
        raise RuntimeError(f"{active.size} samples did not return within {max_time} steps")
    return times


# ---------------------------------------------------------------- point sets on the circle


class _CirclePoints:
    """Exactly ordered finite point set on the circle with a gap multiset.

    Points ``u + v alpha`` (mod 1) are ordered by fixed-point keys with
    certified error; gaps are kept as exact coefficient pairs.
    """

    def __init__(self, sys: RotationSystem, P: int = 160):
        self.sys = sys
        self.P = P
        self.one = 1 << P
        self.A, _ = sys.fixed_point(P)
        self.keys: List[int] = []
        self.errs: Dict[int, int] = {}
        self.vals: Dict[int, Tuple[Fraction, Fraction]] = {}
        self.gaps: Counter = Counter()

    def _gap(self, a: int, b: int, wrap: bool) -> Tuple[Fraction, Fraction]:
        ua, va = self.vals[a]
        ub, vb = self.vals[b]
        return (ub - ua + (1 if wrap else 0), vb - va)

    def _add_gap(self, g, d):
        self.gaps[g] += d
        if self.gaps[g] == 0:
            del self.gaps[g]

    def insert(self, x: AlphaForm) -> bool:
        """Add ``x`` mod 1; returns ``False`` if already present."""
        raw, err = _form_key(x, self.A, self.P)
        key = raw % self.one
        if key < err or self.one - key < err:
            m = x.floor()
        else:
            m = raw >> self.P
        val = (x.u - m, x.v)
        keys = self.keys
        i = bisect.bisect_left(keys, key)
        for j in (i - 1, i, i + 1):
            if 0 <= j < len(keys):
                kj = keys[j]
                if abs(kj - key) <= err + self.errs[kj] or self.one - abs(kj - key) <= err + self.errs[kj]:
                    if self.vals[kj] == val:
                        return False
                    raise InsufficientPrecision("points too close to order")
        n = len(keys)
        if n == 0:
            keys.append(key)
            self.errs[key], self.vals[key] = err, val
            self._add_gap((Fraction(1), Fraction(0)), 1)
            return True
        prev = keys[i - 1] if i > 0 else keys[-1]
        nxt = keys[i] if i < n else keys[0]
        # the gap prev -> nxt wraps when nxt is the first key
        if n == 1:
            self._add_gap((Fraction(1), Fraction(0)), -1)
        else:
            self._add_gap(self._gap(prev, nxt, nxt == keys[0]), -1)
        keys.insert(i, key)
        self.errs[key], self.vals[key] = err, val
        first = keys[0]
        self._add_gap(self._gap(prev, key, key == first), 1)
        self._add_gap(self._gap(key, nxt, nxt == first), 1)
        return True

    def lengths(self) -> List[AlphaForm]:
        keys = self.keys
        out = []
        for i, k in enumerate(keys):
            nxt = keys[(i + 1) % len(keys)]
            u, v = self._gap(k, nxt, i == len(keys) - 1)
            out.append(AlphaForm(u, v, self.sys.alpha))
        return out

    def gap_forms(self) -> List[AlphaForm]:
        return [AlphaForm(u, v, self.sys.alpha) for (u, v) in self.gaps]


def gap_value_counts(sys: RotationSystem, N: int) -> np.ndarray:
    """Distinct gap lengths of ``{j alpha mod 1 : 0 <= j < n}`` for ``n = 1..N``."""
    pts = _CirclePoints(sys)
    out = np.zeros(N, np.int64)
    for n in range(1, N + 1):
        pts.insert(AlphaForm(0, n - 1, sys.alpha))
        out[n - 1] = len(pts.gaps)
    return out


def _refinement_points(sys: RotationSystem, j: int) -> List[AlphaForm]:
    return [c - AlphaForm(0, j, sys.alpha) for c in sys.cuts]


def refinement_value_counts(sys: RotationSystem, N: int) -> Tuple[np.ndarray, List[AlphaForm]]:
    """Distinct arc lengths of the ``n``-th refined partition for ``n = 1..N``.

    Also returns the largest arc length at each ``n``.
    """
    pts = _CirclePoints(sys)
    counts = np.zeros(N, np.int64)
    largest = []
    for n in range(1, N + 1):
        for x in _refinement_points(sys, n - 1):
            pts.insert(x)
        counts[n - 1] = len(pts.gaps)
        largest.append(max(pts.gap_forms()))
    return counts, largest


def refinement_lengths(sys: RotationSystem, n: int) -> List[AlphaForm]:
    """Arc lengths of the partition into ``n``-cylinders, in circular order from the smallest endpoint."""
    if n < 1:
        raise ValueError("n must be positive")
    pts = _CirclePoints(sys)
    for j in range(n):
        for x in _refinement_points(sys, j):
            pts.insert(x)
    return pts.lengths()


# ---------------------------------------------------------------- symbolic coding

_P64 = 64
_MASK = (1 << 64) - 1


def _uint64_keys(sys: RotationSystem, x: AlphaForm, n: int):
    A, _ = sys.fixed_point(_P64)
    raw, err0 = _form_key(x, A, _P64)
    j = np.arange(n, dtype=np.uint64)
    with np.errstate(over="ignore"):
        pts = np.uint64(raw & _MASK) + j * np.uint64(A & _MASK)
    errs = err0 + 2 + np.arange(n, dtype=np.float64)
    return pts, errs, A


def _cut_keys(sys: RotationSystem, A: int) -> Tuple[np.ndarray, np.ndarray]:
    keys, errs = [], []
    for c in sys.cuts:
        raw, e = _form_key(c, A, _P64)
        keys.append(raw & _MASK)
        errs.append(e)
    return np.array(keys, dtype=np.uint64), np.array(errs, dtype=np.float64)


def _circ_dist(a: np.ndarray, b) -> np.ndarray:
    with np.errstate(over="ignore"):
        d1 = a - b
        d2 = b - a
    return np.minimum(d1, d2).astype(np.float64)


def symbolic_orbit(sys: RotationSystem, x, n: int, strict: bool = False) -> SymbolicWord:
    """Symbols ``w_j`` = index of the arc containing ``x + j alpha mod 1``.

    Symbols are read from 64-bit fixed-point positions with a certified error
    bound; undecided symbols are settled by exact comparison.  A point equal
    to an endpoint takes the symbol of the arc it opens.

    Raises
    ------
    BoundaryHit
        ``strict`` is set and an orbit point is exactly a partition endpoint.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = len(sys.cuts)
    if n == 0:
        return SymbolicWord(np.zeros(0, np.uint8), m)
    x = sys.form(x)
    pts, errs, A = _uint64_keys(sys, x, n)
    ckeys, cerrs = _cut_keys(sys, A)
    order = np.argsort(ckeys)
    sym = (np.searchsorted(ckeys[order], pts, side="right") - 1) % m
    sym = order[sym] if not np.array_equal(order, np.arange(m)) else sym
    unsure = np.zeros(n, bool)
    for i in range(m):
        unsure |= _circ_dist(pts, ckeys[i]) <= errs + cerrs[i] + 2
    for j in np.flatnonzero(unsure):
        p = x + AlphaForm(0, int(j), sys.alpha)
        if strict and any((p - c).frac().sign() == 0 for c in sys.cuts):
            raise BoundaryHit(int(j))
        sym[j] = sys.arc_index(p)
    return SymbolicWord(sym.astype(np.uint8 if m <= 256 else np.int64), max(m, 2))


def _nearest_endpoints(sys: RotationSystem, x: AlphaForm, j_lo: int, j_hi: int):
    """Exact nearest endpoints ``c - j alpha`` (``j_lo <= j < j_hi``) to the left and right of ``x``."""
    count = j_hi - j_lo
    A, _ = sys.fixed_point(_P64)
    X, xerr = _form_key(x, A, _P64)
    ckeys, cerrs = _cut_keys(sys, A)
    j = np.arange(j_lo, j_hi, dtype=np.uint64)
    best_left, best_right = None, None
    for i, c in enumerate(sys.cuts):
        with np.errstate(over="ignore"):
            e = np.uint64(int(ckeys[i])) - j * np.uint64(A & _MASK)
            dl = (np.uint64(X & _MASK) - e).astype(np.float64)
            dr = (e - np.uint64(X & _MASK)).astype(np.float64)
        err = xerr + cerrs[i] + 4 + np.arange(j_lo, j_hi, dtype=np.float64)
        for dist, side in ((dl, "left"), (dr, "right")):
            lo = dist - err
            cand = np.flatnonzero(lo <= (dist + err).min())
            for jj in cand:
                jv = j_lo + int(jj)
                ep = c - AlphaForm(0, jv, sys.alpha)
                if side == "left":
                    d = (x - ep).frac()
                    if best_left is None or d < best_left:
                        best_left = d
                else:
                    d = (ep - x).frac()
                    if d.sign() == 0:
                        d = AlphaForm(1, 0, sys.alpha)
                    if best_right is None or d < best_right:
                        best_right = d
    return best_left, best_right


def cylinder_arc(sys: RotationSystem, x, n: int) -> Arc:
    """The arc of points whose first ``n`` symbols agree with those of ``x``."""
    if n < 1:
        raise ValueError("n must be positive")
    x = sys.form(x).frac()
    dl, dr = _nearest_endpoints(sys, x, 0, n)
    return Arc((x - dl).frac(), dl + dr)


def z_recurrence_rate(sys: RotationSystem, x, N: int) -> RateCurve:
    """``n -> tau(Z_n(x)) / n`` for ``n = 1..N`` with exact return times."""
    if N < 2:
        raise ValueError("N must be at least 2")
    x = sys.form(x).frac()
    dl = dr = None
    k_hint = 0
    values = np.zeros(N)
    block = 64
    for start in range(0, N, block):
        stop = min(start + block, N)
        for n in range(start + 1, stop + 1):
            l, r = _nearest_endpoints(sys, x, n - 1, n)
            if dl is None or l < dl:
                dl = l
            if dr is None or r < dr:
                dr = r
            length = dl + dr
            if length.compare(Fraction(1, 2)) > 0:
                tau = 1
            else:
                dec = arc_decompose(sys, length, k_hint)
                k_hint = dec.k
                tau = sys.q(dec.k) if dec.c < dec.a_next else sys.q(dec.k - 1)
            values[n - 1] = tau / n
    return RateCurve.from_values(np.arange(1, N + 1), values, label="tau_over_n")
