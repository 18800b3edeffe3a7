"""Interval exchange transformations, optionally with flips.

An exchange of ``r`` intervals ``I_1, ..., I_r`` (left to right, lengths
``l_i``) is given by a permutation ``sigma``: the images appear in ``[0, 1)``
in the order ``I'_{sigma_1}, ..., I'_{sigma_r}``.  Without a flip, ``T`` moves
``I_i`` by

    t_i = sum_{k < sigma^{-1}(i)} l_{sigma_k} - sum_{k < i} l_k.

A flipped piece is reversed, ``T x = K_i - x`` with ``K_i = d_i + l_i + d'_i``
(``d_i`` and ``d'_i`` the left ends of ``I_i`` and ``I'_i``).

Lengths are rationals or exact forms over one common irrational (see
:class:`~recurlab.reals.AlphaForm`).  Orbits that land exactly on an interior
discontinuity raise :class:`DiscontinuityHit`.
"""
from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from numba import njit

from .complexity import SymbolicWord
from .reals import AlphaForm, ArithmeticReal, DomainError

__all__ = [
    "IntervalExchange",
    "Interval",
    "TargetSet",
    "HittingCurve",
    "AperiodicityVerdict",
    "DiscontinuityHit",
    "build_iet",
    "rotation_iet",
    "iterate",
    "symbolic_orbit",
    "cylinder_interval",
    "preimage",
    "hitting_exponent_probe",
    "aperiodicity_probe",
    "dyadic_window_minima",
]

Number = Union[Fraction, AlphaForm]


class DiscontinuityHit(ArithmeticError):
    """An orbit landed exactly on a discontinuity."""

    def __init__(self, step: int):
        super().__init__(f"discontinuity hit at step {step}")
        self.step = step


def _coerce(values: Sequence) -> Tuple[List[Number], Optional[ArithmeticReal]]:
    alpha = None
    for v in values:
        if isinstance(v, AlphaForm):
            if alpha is not None and v.alpha is not alpha:
                raise DomainError("lengths use different irrationals")
            alpha = v.alpha
    out = []
    for v in values:
        if isinstance(v, AlphaForm):
            out.append(v)
            continue
        if isinstance(v, ArithmeticReal):
            q = v.rational
            if q is None:
                raise DomainError("irrational lengths must be forms over one common real")
            v = q
        f = Fraction(v) if not isinstance(v, str) else Fraction(v)
        out.append(AlphaForm(f, 0, alpha) if alpha is not None else f)
    return out, alpha


def _sign(x: Number) -> int:
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    return x.sign()


def _key(x: Number, P: int) -> Tuple[int, int]:
    """``(floor(x 2**P), err)`` with ``|x 2**P - key| <= err``."""
    if isinstance(x, Fraction):
        return math.floor(x * (1 << P)), 1
    lo, hi = x.enclosure(P + 8)
    return math.floor(lo * (1 << P)), 2


class IntervalExchange:
    """An interval exchange on ``[0, 1)``.

    Parameters
    ----------
    lengths : sequence
        Positive lengths summing to 1: rationals, ``"p/q"`` strings or forms
        over one irrational.
    permutation : sequence of int
        ``sigma_1, ..., sigma_r``, a permutation of ``1..r``.
    flips : sequence of bool, optional
        Orientation reversal per interval.
    """

    def __init__(self, lengths: Sequence, permutation: Sequence[int], flips: Optional[Sequence[bool]] = None):
        lengths, alpha = _coerce(lengths)
        r = len(lengths)
        if r == 0:
            raise ValueError("at least one interval is needed")
        perm = tuple(int(s) for s in permutation)
        if sorted(perm) != list(range(1, r + 1)):
            raise ValueError("permutation must be a bijection of 1..r")
        flips = tuple(bool(f) for f in flips) if flips is not None else (False,) * r
        if len(flips) != r:
            raise ValueError("one flip flag per interval")
        for l in lengths:
            if _sign(l) <= 0:
                raise ValueError("lengths must be positive")
        if _sign(sum(lengths[1:], lengths[0]) - 1) != 0:
            raise ValueError("lengths must sum to 1")
        self.lengths: Tuple[Number, ...] = tuple(lengths)
        self.permutation = perm
        self.flips = flips
        self.alpha = alpha
        self.r = r
        zero = lengths[0] - lengths[0]
        lefts = [zero]
        for l in lengths[:-1]:
            lefts.append(lefts[-1] + l)
        self.discontinuities: Tuple[Number, ...] = tuple(lefts)
        image = [zero] * r
        pos = zero
        for s in perm:
            image[s - 1] = pos
            pos = pos + lengths[s - 1]
        self.image_lefts: Tuple[Number, ...] = tuple(image)
        self.translations: Tuple[Number, ...] = tuple(image[i] - lefts[i] for i in range(r))
        self.reflections: Tuple[Number, ...] = tuple(lefts[i] + lengths[i] + image[i] for i in range(r))
        self._check_tiling()

    def _check_tiling(self) -> None:
        order = sorted(range(self.r), key=lambda i: self.permutation.index(i + 1))
        pos = self.lengths[0] - self.lengths[0]
        for i in order:
            if _sign(self.image_lefts[i] - pos) != 0:
                raise ArithmeticError("image intervals do not tile [0,1)")
            pos = pos + self.lengths[i]
        if _sign(pos - 1) != 0:
            raise ArithmeticError("image intervals do not tile [0,1)")

    def __repr__(self):
        return f"IntervalExchange(lengths={[str(l) for l in self.lengths]}, permutation={self.permutation}, flips={self.flips})"

    @property
    def rational(self) -> bool:
        return self.alpha is None

    def point(self, x) -> Number:
        """``x`` in the arithmetic of this exchange."""
        if isinstance(x, AlphaForm):
            if self.alpha is None:
                q = x.rational
                if q is None:
                    raise DomainError("irrational point for a rational exchange")
                return q
            return x
        if isinstance(x, ArithmeticReal):
            q = x.rational
            if q is None:
                raise DomainError("points must be rational or forms over the lengths' irrational")
            x = q
        x = Fraction(x) if not isinstance(x, str) else Fraction(x)
        return AlphaForm(x, 0, self.alpha) if self.alpha is not None else x

    def locate(self, x: Number) -> int:
        """0-based index of the interval containing ``x``."""
        if _sign(x) < 0 or _sign(x - 1) >= 0:
            raise DomainError("point outside [0,1)")
        return bisect.bisect_right(self.discontinuities, x) - 1

    def is_hit(self, x: Number, i: int) -> bool:
        """``x`` is an interior discontinuity, or the left end of a flipped piece."""
        if i == 0 and not self.flips[0]:
            return False
        return _sign(x - self.discontinuities[i]) == 0

    def apply(self, x: Number, i: Optional[int] = None) -> Number:
        """``T x`` without the discontinuity check."""
        i = self.locate(x) if i is None else i
        if self.flips[i]:
            return self.reflections[i] - x
        return x + self.translations[i]

    def inverse(self) -> "IntervalExchange":
        """The inverse exchange; its intervals are the images in order."""
        lengths = [self.lengths[s - 1] for s in self.permutation]
        inv = [0] * self.r
        for k, s in enumerate(self.permutation):
            inv[s - 1] = k + 1
        flips = [self.flips[s - 1] for s in self.permutation]
        return IntervalExchange(lengths, inv, flips)

    def to_json(self) -> str:
        if self.alpha is not None:
            raise ValueError("only rational exchanges serialise")
        return json.dumps(
            {
                "lengths": [f"{l.numerator}/{l.denominator}" for l in self.lengths],
                "permutation": list(self.permutation),
                "flips": list(self.flips),
            }
        )

    @classmethod
    def from_json(cls, data: Union[str, Dict]) -> "IntervalExchange":
        d = json.loads(data) if isinstance(data, str) else dict(data)
        return cls([Fraction(s) for s in d["lengths"]], d["permutation"], d.get("flips"))


def build_iet(lengths: Sequence, permutation: Sequence[int], flips: Optional[Sequence[bool]] = None) -> IntervalExchange:
    """Construct and validate an interval exchange."""
    return IntervalExchange(lengths, permutation, flips)


def rotation_iet(alpha) -> IntervalExchange:
    """The two-interval exchange ``(1 - alpha, alpha)``, ``sigma = (2, 1)``, i.e. rotation by ``alpha``."""
    if isinstance(alpha, AlphaForm):
        a = alpha
    elif isinstance(alpha, ArithmeticReal) and alpha.rational is None:
        a = AlphaForm(0, 1, alpha)
    else:
        a = Fraction(alpha.rational if isinstance(alpha, ArithmeticReal) else alpha)
    return IntervalExchange([1 - a, a], (2, 1))


def iterate(T: IntervalExchange, x, n: int) -> List[Number]:
    """The exact orbit ``x, Tx, ..., T^n x``.

    Raises
    ------
    DiscontinuityHit
        Some ``T^j x`` (``j < n``) is an interior discontinuity.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = T.point(x)
    out = [x]
    for j in range(n):
        i = T.locate(x)
        if T.is_hit(x, i):
            raise DiscontinuityHit(j)
        x = T.apply(x, i)
        out.append(x)
    return out


# ---------------------------------------------------------------- fast symbolic coding

_P = 60


@njit(cache=True)
def _orbit_kernel(X, err, start, n, disc, consts, flipped, out, m, sgn):
    r = disc.shape[0]
    for j in range(start, n):
        i = r - 1
        while i > 0 and X < disc[i]:
            i -= 1
        if (i > 0 or flipped[0]) and X - disc[i] <= err + 2:
            return j, X, err, sgn
        if i + 1 < r and disc[i + 1] - X <= err + 2:
            return j, X, err, sgn
        out[j] = i
        if flipped[i]:
            X = consts[i] - X
            sgn = -sgn
            for k in range(r):
                m[k] = -m[k]
        else:
            X = X + consts[i]
        m[i] += 1
        err += 2
    return n, X, err, sgn


class _FastOrbit:
    """Fixed-point orbit with an exact affine shadow ``sgn x0 + sum m_k C_k``."""

    def __init__(self, T: IntervalExchange, x0: Number):
        self.T = T
        self.x0 = x0
        self.disc = np.array([_key(d, _P)[0] for d in T.discontinuities], dtype=np.int64)
        derr = max(_key(d, _P)[1] for d in T.discontinuities)
        consts = [T.reflections[i] if T.flips[i] else T.translations[i] for i in range(T.r)]
        self.consts_exact = consts
        self.consts = np.array([_key(c, _P)[0] for c in consts], dtype=np.int64)
        self.flipped = np.array(T.flips, dtype=np.bool_)
        self.m = np.zeros(T.r, np.int64)
        self.sgn = 1
        self.derr = derr

    def exact(self) -> Number:
        x = self.x0 if self.sgn > 0 else -self.x0
        for k in range(self.T.r):
            if self.m[k]:
                x = x + self.consts_exact[k] * int(self.m[k])
        return x

    def run(self, n: int, out: np.ndarray) -> None:
        T = self.T
        X, err = _key(self.x0, _P)
        j = 0
        while j < n:
            j, X, err, self.sgn = _orbit_kernel(
                np.int64(X), np.int64(err + self.derr), j, n, self.disc, self.consts, self.flipped, out, self.m, self.sgn
            )
            if j >= n:
                break
            x = self.exact()
            i = T.locate(x)
            if T.is_hit(x, i):
                raise DiscontinuityHit(j)
            out[j] = i
            if T.flips[i]:
                self.sgn = -self.sgn
                self.m[:] = -self.m
            self.m[i] += 1
            X, err = _key(T.apply(x, i), _P)
            j += 1


def symbolic_orbit(T: IntervalExchange, x, n: int) -> SymbolicWord:
    """Symbols ``w_k = j`` iff ``T^k x`` lies in ``I_{j+1}`` (0-based letters).

    Raises
    ------
    DiscontinuityHit
        The orbit lands exactly on an interior discontinuity.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = T.point(x)
    T.locate(x)
    out = np.zeros(n, np.int64)
    if n:
        _FastOrbit(T, x).run(n, out)
    return SymbolicWord(out.astype(np.uint8), max(T.r, 2))


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[lo, hi)``."""

    lo: Number
    hi: Number

    @property
    def length(self) -> Number:
        return self.hi - self.lo

    def contains(self, x: Number) -> bool:
        return _sign(x - self.lo) >= 0 and _sign(self.hi - x) > 0


def cylinder_interval(T: IntervalExchange, x, n: int) -> Interval:
    """The points whose first ``n`` symbols agree with those of ``x``.

    The cylinder is traced forward: ``K_0`` is the interval of ``x`` and
    ``K_{j+1} = T(K_j)`` cut to the next symbol's interval, then pulled back
    through the accumulated isometry.  Endpoints of flipped images are kept
    half-open; only their closure status can differ.
    """
    if n < 1:
        raise ValueError("n must be positive")
    x = T.point(x)
    d = T.discontinuities
    ends = list(d) + [T.lengths[0] - T.lengths[0] + 1]
    i = T.locate(x)
    lo, hi = ends[i], ends[i + 1]
    sgn, shift = 1, x - x  # T^j y = sgn * y + shift on the cylinder
    y = x
    for j in range(1, n):
        if T.is_hit(y, i):
            raise DiscontinuityHit(j - 1)
        if T.flips[i]:
            c = T.reflections[i]
            lo, hi = c - hi, c - lo
            sgn, shift = -sgn, c - shift
        else:
            t = T.translations[i]
            lo, hi = lo + t, hi + t
            shift = shift + t
        y = T.apply(y, i)
        i = T.locate(y)
        a, b = ends[i], ends[i + 1]
        if _sign(a - lo) > 0:
            lo = a
        if _sign(hi - b) > 0:
            hi = b
    if sgn > 0:
        return Interval(lo - shift, hi - shift)
    return Interval(shift - hi, shift - lo)


def preimage(T: IntervalExchange, lo, hi) -> List[Interval]:
    """``T^{-1}[lo, hi)`` as a list of intervals."""
    lo, hi = T.point(lo), T.point(hi)
    out = []
    for i in range(T.r):
        a = T.image_lefts[i]
        b = a + T.lengths[i]
        s = lo if _sign(lo - a) > 0 else a
        e = hi if _sign(b - hi) > 0 else b
        if _sign(e - s) <= 0:
            continue
        if T.flips[i]:
            c = T.reflections[i]
            out.append(Interval(c - e, c - s))
        else:
            t = T.translations[i]
            out.append(Interval(s - t, e - t))
    return out


# ---------------------------------------------------------------- hitting probes


@dataclass(frozen=True)
class TargetSet:
    """Finite set of pairwise distinct target points."""

    points: Tuple[Number, ...]

    def __post_init__(self):
        for i, a in enumerate(self.points):
            for b in self.points[i + 1 :]:
                if _sign(a - b) == 0:
                    raise ValueError("target points must be distinct")

    @classmethod
    def discontinuities(cls, T: IntervalExchange) -> "TargetSet":
        """Interior discontinuities ``d_2, ..., d_r``."""
        return cls(tuple(T.discontinuities[1:]))


@dataclass(frozen=True)
class HittingCurve:
    """``n -> n**alpha_exp * min_i |x_i - T^n x|`` with dyadic-window minima.

    ``windows[j]`` covers ``[2**j, 2**(j+1))`` cut to ``[1, N]``.
    """

    n: np.ndarray
    values: np.ndarray
    window_starts: np.ndarray
    window_minima: np.ndarray
    alpha_exp: float
    exact: bool
    degenerate: bool

    def nondecreasing_tail(self, windows: int = 4) -> bool:
        """Window minima are nondecreasing over the last ``windows`` windows."""
        tail = self.window_minima[-windows:]
        return bool(np.all(np.diff(tail) >= 0)) and not self.degenerate

    def rows(self):
        return zip(self.n.tolist(), self.values.tolist())


@njit(cache=True)
def _hitting_kernel(X, n, disc, consts, flipped, targets, scale, a, values, check_hits):
    r = disc.shape[0]
    for j in range(1, n + 1):
        i = r - 1
        while i > 0 and X < disc[i]:
            i -= 1
        if check_hits and (i > 0 or flipped[0]) and X == disc[i]:
            return j - 1
        if flipped[i]:
            X = consts[i] - X
        else:
            X = X + consts[i]
        best = abs(X - targets[0])
        for k in range(1, targets.shape[0]):
            dd = abs(X - targets[k])
            if dd < best:
                best = dd
        values[j - 1] = (j ** a) * (best / scale)
    return -1


def dyadic_window_minima(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Minima of ``values[n-1]`` over ``n`` in ``[2**j, 2**(j+1))``."""
    N = values.size
    starts = 1 << np.arange(int(math.floor(math.log2(N))) + 1)
    return starts, np.minimum.reduceat(values, starts - 1)


def _common_denominator(vals: Sequence[Fraction]) -> int:
    D = 1
    for v in vals:
        D = D * v.denominator // math.gcd(D, v.denominator)
    return D


def hitting_exponent_probe(
    T: IntervalExchange, x, N: int, alpha_exp: float, targets: Optional[TargetSet] = None
) -> HittingCurve:
    """The scaled distance of ``T^n x`` to ``targets`` for ``n = 1..N``.

    Rational data whose common denominator fits in 61 bits is iterated
    exactly in integers; otherwise the orbit runs in 60-bit fixed point and
    the result is marked inexact.

    Raises
    ------
    DiscontinuityHit
        Exact mode only: the orbit lands on an interior discontinuity.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    x = T.point(x)
    targets = TargetSet.discontinuities(T) if targets is None else targets
    if not targets.points:
        raise ValueError("empty target set")
    tpoints = [T.point(t) for t in targets.points]
    consts = [T.reflections[i] if T.flips[i] else T.translations[i] for i in range(T.r)]
    exact = False
    if T.rational and isinstance(x, Fraction):
        D = _common_denominator(list(T.discontinuities) + consts + tpoints + [x])
        if 4 * D < (1 << 62):
            exact = True
            conv = lambda v: int(v * D)
            scale = float(D)
    if not exact:
        conv = lambda v: _key(v, _P)[0]
        scale = float(1 << _P)
    values = np.empty(N)
    hit = _hitting_kernel(
        np.int64(conv(x)),
        N,
        np.array([conv(d) for d in T.discontinuities], dtype=np.int64),
        np.array([conv(c) for c in consts], dtype=np.int64),
        np.array(T.flips, dtype=np.bool_),
        np.array([conv(t) for t in tpoints], dtype=np.int64),
        scale,
        float(alpha_exp),
        values,
        exact,
    )
    if hit >= 0:
        raise DiscontinuityHit(int(hit))
    starts, minima = dyadic_window_minima(values)
    return HittingCurve(np.arange(1, N + 1), values, starts, minima, float(alpha_exp), exact, bool(np.any(values == 0)))


@dataclass(frozen=True)
class AperiodicityVerdict:
    """Outcome of :func:`aperiodicity_probe`.

    ``verdict`` is ``"periodic-interval-found"`` when some discontinuity's
    forward orbit returns to itself within ``N`` steps, with the least such
    ``period``; otherwise ``"no-collision-up-to-N"``.
    """

    verdict: str
    N: int
    period: Optional[int] = None
    point: Optional[Number] = None

    @property
    def periodic(self) -> bool:
        return self.verdict == "periodic-interval-found"


def aperiodicity_probe(T: IntervalExchange, N: int) -> AperiodicityVerdict:
    """Search the forward orbits of ``d_1, ..., d_r`` for an exact return.

    Landing on a discontinuity is allowed here; the half-open convention
    decides the branch.
    """
    if N < 1:
        raise ValueError("N must be positive")
    best: Optional[Tuple[int, Number]] = None
    for d in T.discontinuities:
        y = d
        for k in range(1, N + 1):
            if best is not None and k >= best[0]:
                break
            y = T.apply(y)
            if _sign(y - d) == 0:
                best = (k, d)
                break
    if best is None:
        return AperiodicityVerdict("no-collision-up-to-N", N)
    return AperiodicityVerdict("periodic-interval-found", N, best[0], best[1])
