"""Continued fractions, convergents and nearest-integer distances.

Conventions
-----------
``alpha = [a_1, a_2, ...] = 1/(a_1 + 1/(a_2 + ...))`` lies in ``(0, 1)``.
Convergents use the seeds ``p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1`` so that
``p_1/q_1 = 1/a_1`` and

    p_k = a_k p_{k-1} + p_{k-2},   q_k = a_k q_{k-1} + q_{k-2}.

With these seeds ``f_n = |q_n alpha - p_n| = (-1)**n (q_n alpha - p_n)``,
``f_{-1} = 1`` and ``f_0 = alpha``, and the two-sided bound

    1/(a_{n+1} + 2) < q_n f_n < 1/a_{n+1}

holds for every ``n >= 0``.  When ``a_1 = 1`` one has ``q_0 = q_1 = 1``, so
``f_0 = alpha > 1/2`` differs from ``||alpha|| = f_1``; ``f_n = ||q_n alpha||``
holds for ``n >= 1`` in every case and for ``n = 0`` when ``a_1 >= 2``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .reals import (
    START_BITS,
    AlphaForm,
    ArithmeticReal,
    DomainError,
    EnclosedReal,
    InsufficientPrecision,
    MobiusReal,
    QuadraticReal,
    RationalReal,
    as_real,
)

__all__ = [
    "PartialQuotients",
    "Convergent",
    "TruncationError",
    "TypeEstimate",
    "parse_partial_quotients",
    "parse_real",
    "cf_expand",
    "convergents",
    "nearest_int_distance",
    "f_sequence",
    "gauss_orbit",
    "type_estimate",
    "golden_mean",
    "random_partial_quotients",
    "tail_window",
]


class TruncationError(ValueError):
    """More quotients were requested than a finite expansion provides."""

    def __init__(self, message: str, prefix: Sequence = ()):
        super().__init__(message)
        self.prefix = list(prefix)


@dataclass(frozen=True)
class PartialQuotients:
    """A finite or eventually periodic continued fraction ``[a_1, a_2, ...]``.

    Parameters
    ----------
    head : tuple of int
        Leading quotients.
    period : tuple of int, optional
        Quotients repeated forever after ``head``.
    exhausted : bool
        ``head`` is the complete expansion of a rational number.
    """

    head: Tuple[int, ...]
    period: Optional[Tuple[int, ...]] = None
    exhausted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(a) for a in self.head))
        if self.period is not None:
            object.__setattr__(self, "period", tuple(int(a) for a in self.period))
            if not self.period:
                raise ValueError("period must be nonempty")
            if self.exhausted:
                raise ValueError("an exhausted expansion has no period")
        if any(a < 1 for a in self.head + (self.period or ())):
            raise ValueError("partial quotients must be positive")
        if self.exhausted and not self.head:
            raise ValueError("an exhausted expansion needs at least one quotient")
        if self.exhausted and len(self.head) > 1 and self.head[-1] < 2:
            raise ValueError("the last quotient of a rational expansion must be >= 2")

    @property
    def available(self) -> Optional[int]:
        """Number of known quotients, ``None`` if unbounded."""
        return None if self.period is not None else len(self.head)

    def quotient(self, i: int) -> int:
        """The ``i``-th quotient ``a_i`` (1-based)."""
        if i < 1:
            raise IndexError("quotients are indexed from 1")
        if i <= len(self.head):
            return self.head[i - 1]
        if self.period is None:
            raise TruncationError(f"quotient a_{i} not available", self.head)
        return self.period[(i - len(self.head) - 1) % len(self.period)]

    def take(self, n: int) -> List[int]:
        """The first ``n`` quotients."""
        avail = self.available
        if avail is not None and n > avail:
            raise TruncationError(f"only {avail} quotients available", self.head)
        return [self.quotient(i) for i in range(1, n + 1)]

    def value(self) -> ArithmeticReal:
        """The represented number, exactly when rational or quadratic."""
        if self.exhausted:
            return RationalReal(_evaluate(self.head))
        if self.period is not None:
            return _quadratic_from_cf(self.head, self.period)
        # the tail t in (0,1) sits between a_m and a_m + 1
        closed = self.head[:-1] + (self.head[-1] + 1,)
        lo, hi = sorted((_evaluate(self.head), _evaluate(closed)))

        def hook(bits):
            return lo, hi

        r = EnclosedReal(hook, label=f"prefix {format_partial_quotients(self)}", max_bits=START_BITS)
        r.partial_quotients = self
        return r

    def __str__(self):
        return format_partial_quotients(self)


def _evaluate(quotients: Sequence[int]) -> Fraction:
    x = Fraction(0)
    for a in reversed(quotients):
        x = 1 / (a + x)
    return x


def _pq(quotients: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Convergent numerators and denominators for indices -1..n (offset by one)."""
    p, q = [1, 0], [0, 1]
    for a in quotients:
        p.append(a * p[-1] + p[-2])
        q.append(a * q[-1] + q[-2])
    return p, q


def _quadratic_from_cf(head: Sequence[int], period: Sequence[int]) -> QuadraticReal:
    p, q = _pq(period)
    pm, pm1, qm, qm1 = p[-1], p[-2], q[-1], q[-2]
    # tail y = (pm + pm1 y)/(qm + qm1 y)  =>  qm1 y^2 + (qm - pm1) y - pm = 0
    b = qm - pm1
    disc = b * b + 4 * qm1 * pm
    y = QuadraticReal(Fraction(-b, 2 * qm1), Fraction(1, 2 * qm1), disc)
    if head:
        hp, hq = _pq(head)
        x = (hp[-1] + hp[-2] * y) / (hq[-1] + hq[-2] * y)
    else:
        x = y
    x.partial_quotients = PartialQuotients(tuple(head), tuple(period))
    return x


_PQ_RE = re.compile(r"^\s*([0-9,\s]*?)\s*(?:,?\s*\(([0-9,\s]+)\))?\s*(,\s*\.\.\.)?\s*$")


def parse_partial_quotients(text: str) -> PartialQuotients:
    """Parse ``"1,(1)"``, ``"2,4,16,(1)"``, ``"3,1,2"`` or ``"p/q"``.

    A plain comma list (optionally ending in ``...``) is a known prefix of an
    expansion; rationals are written ``"p/q"`` and expand exhaustively.
    """
    text = text.strip()
    if "/" in text:
        x = Fraction(text)
        if not 0 < x < 1:
            raise DomainError("rational must lie in (0,1)")
        return cf_expand(RationalReal(x), 1 << 30)
    m = _PQ_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse partial quotients {text!r}")
    head_s, period_s, dots = m.groups()
    head = tuple(int(t) for t in head_s.replace(" ", "").split(",") if t)
    period = tuple(int(t) for t in period_s.replace(" ", "").split(",") if t) if period_s else None
    return PartialQuotients(head, period)


def format_partial_quotients(a: PartialQuotients) -> str:
    """Inverse of :func:`parse_partial_quotients`; rationals are written ``"p/q"``."""
    if a.exhausted:
        x = _evaluate(a.head)
        return f"{x.numerator}/{x.denominator}"
    parts = [str(v) for v in a.head]
    if a.period is not None:
        parts.append("(" + ",".join(str(v) for v in a.period) + ")")
    return ",".join(parts)


def parse_real(text: str) -> ArithmeticReal:
    """Parse a number given as ``"p/q"``, an integer, or a continued fraction."""
    text = text.strip()
    if "," in text or "(" in text:
        return parse_partial_quotients(text).value()
    return RationalReal(Fraction(text))


def golden_mean() -> QuadraticReal:
    """``(sqrt(5) - 1)/2 = [1, 1, 1, ...]``."""
    return parse_partial_quotients("(1)").value()


def random_partial_quotients(rng, depth: int, max_quotient: int = 9, tail: Sequence[int] = (1,)) -> PartialQuotients:
    """A random head ``a_1..a_depth`` uniform on ``1..max_quotient`` with a periodic ``tail``.

    The tail keeps the value an exact quadratic irrational.
    """
    head = tuple(int(a) for a in rng.integers(1, max_quotient + 1, size=depth))
    return PartialQuotients(head, tuple(tail))


def cf_expand(x, count: int) -> PartialQuotients:
    """The first ``count`` partial quotients of ``x`` in ``(0, 1)``.

    Rationals with a shorter expansion return it with ``exhausted=True``.
    Enclosed reals are expanded by running the Euclidean algorithm on both
    enclosure endpoints, refining while they disagree.

    Raises
    ------
    DomainError
        ``x`` is not in ``(0, 1)``.
    InsufficientPrecision
        The enclosure cannot be refined enough to fix a quotient.
    """
    if count < 1:
        raise ValueError("count must be positive")
    x = as_real(x)
    if x.compare(0) <= 0 or x.compare(1) >= 0:
        raise DomainError("x must lie in (0,1)")
    known = getattr(x, "partial_quotients", None)
    if known is not None and (known.available is None or known.available >= count or known.exhausted):
        if known.exhausted:
            return PartialQuotients(known.head[:count], exhausted=len(known.head) <= count)
        return PartialQuotients(tuple(known.take(count)))
    r = x.rational
    if r is not None:
        out = []
        while r != 0 and len(out) < count:
            t = 1 / r
            a = math.floor(t)
            out.append(a)
            r = t - a
        return PartialQuotients(tuple(out), exhausted=(r == 0))
    if isinstance(x, QuadraticReal):
        out, y = [], x
        for _ in range(count):
            t = 1 / y
            a = t.floor()
            out.append(a)
            y = t - a
        return PartialQuotients(tuple(out))
    bits = START_BITS
    while True:
        lo, hi = x.enclosure(bits)
        out = _interval_cf(lo, hi, count)
        if len(out) >= count:
            return PartialQuotients(tuple(out[:count]))
        bits *= 2
        if bits > x.max_bits:
            raise InsufficientPrecision(f"only {len(out)} quotients certified at {x.max_bits} bits")


def _interval_cf(lo: Fraction, hi: Fraction, count: int) -> List[int]:
    """Quotients shared by every number in ``[lo, hi]`` (at most ``count``)."""
    out = []
    while len(out) < count:
        if lo <= 0:
            break
        tlo, thi = 1 / hi, 1 / lo
        a = math.floor(tlo)
        if math.floor(thi) != a or (thi == a + 1 and lo != hi):
            break
        out.append(a)
        lo, hi = tlo - a, thi - a
        if lo == hi == 0:
            break
    return out


@dataclass(frozen=True)
class Convergent:
    """The convergent ``p/q`` of index ``index``."""

    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def _quotients(a, n: int) -> List[int]:
    if isinstance(a, PartialQuotients):
        return a.take(n)
    return list(a)[:n]


def convergents(a: PartialQuotients, n: int) -> List[Convergent]:
    """Convergents ``p_1/q_1, ..., p_n/q_n`` of ``a``.

    Raises
    ------
    TruncationError
        ``a`` is finite with fewer than ``n`` quotients; ``err.prefix`` holds
        the convergents that do exist.
    """
    avail = a.available
    if avail is not None and n > avail:
        p, q = _pq(a.head)
        prefix = [Convergent(p[k + 1], q[k + 1], k) for k in range(1, avail + 1)]
        raise TruncationError(f"expansion has only {avail} quotients", prefix)
    p, q = _pq(a.take(n))
    return [Convergent(p[k + 1], q[k + 1], k) for k in range(1, n + 1)]


def _alpha_quotients(alpha: ArithmeticReal, n: int) -> List[int]:
    return cf_expand(alpha, n).take(n) if n > 0 else []


def nearest_int_distance(alpha, k: int) -> AlphaForm:
    """``||k alpha||`` as an exact form ``u + v alpha``.

    The result supports :meth:`~recurlab.reals.ArithmeticReal.enclosure` at any
    width and exact comparisons; for rational ``alpha`` it is a rational.
    """
    if k < 1:
        raise ValueError("k must be positive")
    alpha = as_real(alpha)
    x = AlphaForm(0, k, alpha)
    m = x.floor()
    lower = x - m
    upper = (m + 1) - x
    return lower if lower <= upper else upper


def f_sequence(alpha, N: int) -> List[AlphaForm]:
    """``f_0, ..., f_N`` with ``f_n = (-1)**n (q_n alpha - p_n)``.

    Raises
    ------
    DomainError
        ``alpha`` is rational.
    """
    alpha = as_real(alpha)
    if alpha.rational is not None:
        raise DomainError("f_sequence needs an irrational alpha")
    quotients = _alpha_quotients(alpha, N)
    p, q = _pq(quotients)
    return [AlphaForm(-p[n + 1], q[n + 1], alpha) * (-1) ** n for n in range(0, N + 1)]


def gauss_orbit(alpha, n: int) -> List[ArithmeticReal]:
    """``G^0(alpha), ..., G^n(alpha)`` for the Gauss map ``G(x) = {1/x}``, ``G(0) = 0``.

    Each iterate is the exact Mobius image
    ``G^k(alpha) = (p_k - q_k alpha)/(q_{k-1} alpha - p_{k-1})``.
    """
    alpha = as_real(alpha)
    if alpha.compare(0) < 0 or alpha.compare(1) >= 0:
        raise DomainError("alpha must lie in [0,1)")
    r = alpha.rational
    if r is not None:
        out = [RationalReal(r)]
        for _ in range(n):
            r = (1 / r) % 1 if r != 0 else Fraction(0)
            out.append(RationalReal(r))
        return out
    quotients = _alpha_quotients(alpha, n)
    p, q = _pq(quotients)
    out: List[ArithmeticReal] = [alpha]
    for k in range(1, n + 1):
        if isinstance(alpha, QuadraticReal):
            out.append((p[k + 1] - q[k + 1] * alpha) / (q[k] * alpha - p[k]))
        else:
            out.append(MobiusReal(p[k + 1], -q[k + 1], -p[k], q[k], alpha))
    return out


def tail_window(n_values: int, fraction: float = 0.5) -> slice:
    """Slice selecting the deepest ``fraction`` of a range of ``n_values`` entries."""
    start = int(math.floor(n_values * (1 - fraction)))
    return slice(min(start, max(n_values - 1, 0)), n_values)


@dataclass(frozen=True)
class TypeEstimate:
    """Estimates of the type ``gamma`` of an irrational.

    Attributes
    ----------
    gamma : float
        Max over the deepest half of ``ratios`` (limsup proxy).
    ratios : tuple of float
        ``log q_{n+1} / log q_n`` for the indices with ``q_n > 1``.
    direct : float
        Max over the deepest half of ``-log f_n / log q_n``, the exponent
        at which ``q_n^beta f_n`` stops tending to 0 (liminf probe).
    direct_values : tuple of float
        The raw ``-log f_n / log q_n`` sequence.
    last : float
        The deepest ratio.
    """

    gamma: float
    ratios: Tuple[float, ...]
    direct: float
    direct_values: Tuple[float, ...]
    last: float


def type_estimate(a: PartialQuotients, depth: int) -> TypeEstimate:
    """Estimate the type of ``a`` from its first ``depth`` quotients.

    The ratio estimator ``log q_{n+1}/log q_n`` is equivalent to the liminf
    definition because ``1/(q_{n+1} + q_n) < f_n < 1/q_{n+1}``.  The liminf
    probe ``-log f_n / log q_n`` is reported alongside so any disagreement at
    finite depth is visible.
    """
    if depth < 3:
        raise ValueError("depth must be at least 3")
    quotients = a.take(depth)
    p, q = _pq(quotients)
    logs = [math.log(v) for v in q[2:]]
    ratios = [logs[i + 1] / logs[i] for i in range(len(logs) - 1) if q[i + 2] > 1]
    alpha = a.value() if a.period is not None else None
    direct = []
    if alpha is not None:
        fs = f_sequence(alpha, depth - 1)
        direct = [-fs[n].log_abs() / math.log(q[n + 1]) for n in range(1, depth) if q[n + 1] > 1]
    else:
        # f_n = 1/(q_{n+1} + q_n G^{n+1}) lies within a factor 2 of 1/q_{n+1}
        direct = [math.log(q[n + 2]) / math.log(q[n + 1]) for n in range(1, depth - 1) if q[n + 1] > 1]
    tail = ratios[tail_window(len(ratios))]
    dtail = direct[tail_window(len(direct))] if direct else [float("nan")]
    return TypeEstimate(
        gamma=max(tail),
        ratios=tuple(ratios),
        direct=max(dtail),
        direct_values=tuple(direct),
        last=ratios[-1],
    )
