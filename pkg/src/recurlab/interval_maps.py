"""Full-branch Markov maps of the unit interval.

Two maps are provided, both coded by the partition ``{[0,1/2), [1/2,1)}``:

* the doubling map ``x -> 2x mod 1``;
* the Manneville map ``T_z(x) = x + x**z mod 1`` with a neutral fixed point
  at 0 (infinite invariant measure when ``z > 2``).

Orbits are computed in binary fixed point with ``precision`` fractional
bits.  Doubling of a dyadic starting point is exact.  Manneville orbits are
rounded at every step, so their symbols are typical rather than certified;
a symbol is reported as uncertain only when the rounded point lies within a
few units in the last place of ``1/2``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .complexity import SymbolicWord, prefix_periods, minimal_period
from .reals import ArithmeticReal, DomainError
from .recurrence import RateCurve, SystemInterface

__all__ = [
    "MarkovMap",
    "UncertainSymbol",
    "LaminarStats",
    "doubling",
    "manneville",
    "to_fixed",
    "step_fixed",
    "iterate_symbolic",
    "cylinder_return_time_word",
    "r_rate_curve",
    "laminar_statistics",
    "random_point",
    "as_system",
]

GUARD_ULPS = 4


class UncertainSymbol(ArithmeticError):
    """A symbol could not be decided at the working precision."""

    def __init__(self, step: int):
        super().__init__(f"uncertain symbol at step {step}")
        self.step = step


@dataclass(frozen=True)
class MarkovMap:
    """A two-branch Markov map.

    Parameters
    ----------
    variant : {"doubling", "manneville"}
    z : Fraction, optional
        Manneville exponent, ``z > 1``.
    precision : int
        Fractional bits of the fixed-point orbit.
    """

    variant: str
    z: Optional[Fraction] = None
    precision: int = 256

    def __post_init__(self):
        if self.variant not in ("doubling", "manneville"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "manneville":
            if self.z is None:
                raise ValueError("manneville needs z")
            z = Fraction(str(self.z)) if not isinstance(self.z, Fraction) else self.z
            if z <= 1:
                raise DomainError("z must exceed 1")
            object.__setattr__(self, "z", z)
        elif self.z is not None:
            raise ValueError("doubling takes no z")
        if self.precision < 8:
            raise ValueError("precision too small")

    @property
    def intermittent(self) -> bool:
        """Infinite invariant measure regime ``z > 2``."""
        return self.variant == "manneville" and self.z > 2

    def with_precision(self, bits: int) -> "MarkovMap":
        return MarkovMap(self.variant, self.z, bits)

    def to_json(self) -> str:
        d = {"variant": self.variant}
        if self.z is not None:
            d["z"] = str(self.z)
        return json.dumps(d)

    @classmethod
    def from_json(cls, data: Union[str, Dict], precision: int = 256) -> "MarkovMap":
        d = json.loads(data) if isinstance(data, str) else dict(data)
        z = d.get("z")
        return cls(d["variant"], Fraction(str(z)) if z is not None else None, int(d.get("precision", precision)))


def doubling(precision: int = 256) -> MarkovMap:
    return MarkovMap("doubling", None, precision)


def manneville(z, precision: int = 256) -> MarkovMap:
    return MarkovMap("manneville", Fraction(str(z)), precision)


def to_fixed(x, P: int) -> Tuple[int, bool]:
    """``(floor(x * 2**P), exact)`` for ``x`` in ``[0, 1)``."""
    if isinstance(x, ArithmeticReal):
        r = x.rational
        if r is None:
            lo, hi = x.enclosure(P + 2)
            X = math.floor(lo * (1 << P))
            return X, False
        x = r
    if isinstance(x, str):
        x = Fraction(x)
    x = Fraction(x)
    if not 0 <= x < 1:
        raise DomainError("x must lie in [0,1)")
    scaled = x * (1 << P)
    X = math.floor(scaled)
    return X, X == scaled


def _iroot(y: int, q: int) -> int:
    """``floor(y ** (1/q))``."""
    if y < 2:
        return y
    x = 1 << -(-y.bit_length() // q)
    while True:
        nx = ((q - 1) * x + y // x ** (q - 1)) // q
        if nx >= x:
            break
        x = nx
    while x ** q > y:
        x -= 1
    while (x + 1) ** q <= y:
        x += 1
    return x


def _power_fn(z: Fraction, P: int):
    """``X -> floor(2**P * (X / 2**P) ** z)``."""
    p, q = z.numerator, z.denominator
    if q == 1:
        shift = P * (p - 1)
        return lambda X: (X ** p) >> shift
    if q == 2 and p > 2:
        shift = P * (p - 2)
        isqrt = math.isqrt
        return lambda X: isqrt((X ** p) >> shift)
    if p >= q:
        shift = P * (p - q)
        return lambda X: _iroot((X ** p) >> shift, q)
    raise DomainError("z must exceed 1")


def step_fixed(m: MarkovMap, X: int, P: Optional[int] = None) -> int:
    """One application of ``m`` to the fixed-point number ``X``."""
    P = m.precision if P is None else P
    one = 1 << P
    if m.variant == "doubling":
        return (X << 1) & (one - 1)
    Y = X + _power_fn(m.z, P)(X)
    return Y - one if Y >= one else Y


def _doubling_word(X: int, exact: bool, P: int, n: int) -> np.ndarray:
    out = np.zeros(n, np.uint8)
    k = min(n, P)
    if k:
        bits = bin(X)[2:].zfill(P)[:k]
        out[:k] = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    if not exact:
        # the starting error of one ulp doubles at every step
        half = 1 << (P - 1)
        one = 1 << P
        Xj = X
        for j in range(n):
            err = 1 << j if j < P else one
            d = min(abs(Xj - half), Xj, one - Xj)
            if d <= err:
                raise UncertainSymbol(j)
            Xj = (Xj << 1) & (one - 1)
    return out


def _manneville_word(X: int, z: Fraction, P: int, n: int) -> np.ndarray:
    out = bytearray(n)
    half = 1 << (P - 1)
    one = 1 << P
    lo, hi = half - GUARD_ULPS, half + GUARD_ULPS
    power = _power_fn(z, P)
    for j in range(n):
        if X >= half:
            if X <= hi:
                raise UncertainSymbol(j)
            out[j] = 1
        elif X >= lo:
            raise UncertainSymbol(j)
        X += power(X)
        if X >= one:
            X -= one
    return np.frombuffer(bytes(out), dtype=np.uint8)


def iterate_symbolic(m: MarkovMap, x, n: int, precision: Optional[int] = None) -> SymbolicWord:
    """The first ``n`` symbols of the orbit of ``x``; ``w_j = 0`` iff ``T^j x < 1/2``.

    Parameters
    ----------
    m : MarkovMap
    x : Fraction, int, str or ArithmeticReal
        Starting point in ``[0, 1)``.
    n : int
        Word length.
    precision : int, optional
        Overrides ``m.precision``.

    Raises
    ------
    UncertainSymbol
        The working precision cannot decide the symbol at some step.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    P = m.precision if precision is None else precision
    X, exact = to_fixed(x, P)
    if m.variant == "doubling":
        return SymbolicWord(_doubling_word(X, exact, P, n), 2)
    return SymbolicWord(_manneville_word(X, m.z, P, n), 2)


def random_point(rng: np.random.Generator, bits: int) -> Fraction:
    """A uniformly random dyadic rational with ``bits`` binary digits."""
    words = -(-bits // 64)
    raw = rng.bytes(words * 8)
    v = int.from_bytes(raw, "big") >> (words * 64 - bits)
    return Fraction(v, 1 << bits)


def cylinder_return_time_word(w: SymbolicWord) -> int:
    """Minimal overlap period of ``w``; equals the cylinder return time for full shifts.

    Raises
    ------
    DomainError
        ``w`` is empty.
    """
    return minimal_period(w)


def r_rate_curve(m: MarkovMap, x, N: int, word: Optional[SymbolicWord] = None) -> RateCurve:
    """``n -> tau(Z_n(x)) / n`` for ``n = 1..N``.

    The curve is flagged ``"atypical"`` when the word is constant.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    w = word if word is not None else iterate_symbolic(m, x, N)
    taus = prefix_periods(w[:N])
    n = np.arange(1, N + 1)
    flags = ("atypical",) if np.all(w.symbols[:N] == w.symbols[0]) else ()
    return RateCurve.from_values(n, taus / n, label="tau_over_n", flags=flags)


@dataclass(frozen=True)
class LaminarStats:
    """Lengths of maximal runs of the symbol 0."""

    histogram: Dict[int, int]
    max_run: int
    mean_run: float
    tail_exponent: float

    @property
    def count(self) -> int:
        return sum(self.histogram.values())


def laminar_statistics(w: SymbolicWord, min_tail_count: int = 10) -> LaminarStats:
    """Histogram of maximal 0-runs plus a fitted survival-tail exponent.

    ``tail_exponent`` is minus the log-log slope of ``P(run >= k)`` over run
    lengths whose survival count is at least ``min_tail_count``; it is a
    diagnostic and ``nan`` when fewer than three such lengths exist.
    """
    s = np.asarray(w.symbols, dtype=np.int8)
    if s.size == 0:
        return LaminarStats({}, 0, 0.0, float("nan"))
    zero = np.concatenate(([0], (s == 0).astype(np.int8), [0]))
    edges = np.diff(zero)
    runs = np.flatnonzero(edges == -1) - np.flatnonzero(edges == 1)
    if runs.size == 0:
        return LaminarStats({}, 0, 0.0, float("nan"))
    lengths, counts = np.unique(runs, return_counts=True)
    hist = {int(a): int(b) for a, b in zip(lengths, counts)}
    survival = counts[::-1].cumsum()[::-1]
    keep = survival >= min_tail_count
    exponent = float("nan")
    if keep.sum() >= 3:
        k, sv = lengths[keep].astype(float), survival[keep].astype(float)
        exponent = float(-np.polyfit(np.log(k), np.log(sv / runs.size), 1)[0])
    return LaminarStats(hist, int(runs.max()), float(runs.mean()), exponent)


def as_system(m: MarkovMap) -> SystemInterface:
    """Exact dyadic-rational view of ``m`` for the generic scans (doubling only)."""
    if m.variant != "doubling":
        raise ValueError("exact interface available for the doubling map only")

    def iterate(x: Fraction) -> Fraction:
        return (2 * x) % 1

    return SystemInterface(iterate=iterate, distance=lambda a, b: abs(a - b), encode=lambda x: int(x >= Fraction(1, 2)), name="doubling")
