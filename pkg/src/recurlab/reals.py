"""Exact and enclosure-based real numbers.

Every irrational used by the package is one of three kinds:

* a rational number (:class:`RationalReal`),
* a real quadratic irrational ``a + b*sqrt(d)`` with exact sign tests
  (:class:`QuadraticReal`),
* a black-box real given by a hook ``bits -> (lo, hi)`` returning rational
  enclosures (:class:`EnclosedReal`).

Quantities that are affine in a fixed irrational ``alpha`` (distances
``|q*alpha - p|``, arc endpoints, gap lengths) are carried exactly as
:class:`AlphaForm` objects ``u + v*alpha`` with rational ``u, v``.  Their
sign is decided by a floating-point filter first and by an exact comparison
of ``alpha`` against the rational ``-u/v`` when the filter is inconclusive.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Optional, Tuple, Union

START_BITS = 32
MAX_BITS = 4096

Number = Union[int, Fraction]


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class InsufficientPrecision(ArithmeticError):
    """An enclosure could not be refined enough to decide a comparison."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _is_rational_number(x) -> bool:
    return isinstance(x, (int, Fraction, Rational)) and not isinstance(x, bool)


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


class ArithmeticReal:
    """Base class for real numbers that support certified comparison."""

    max_bits: int = MAX_BITS

    def enclosure(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Return rationals ``lo <= self <= hi`` with ``hi - lo`` about ``2**-bits``."""
        raise NotImplementedError

    @property
    def rational(self) -> Optional[Fraction]:
        """The exact value if it is known to be rational, else ``None``."""
        return None

    def compare(self, q) -> int:
        """Return the sign of ``self - q`` for a rational ``q``.

        Raises
        ------
        InsufficientPrecision
            If the enclosure still straddles ``q`` at ``max_bits``.
        """
        q = _to_fraction(q)
        bits = START_BITS
        while bits <= self.max_bits:
            lo, hi = self.enclosure(bits)
            if lo > q:
                return 1
            if hi < q:
                return -1
            if lo == hi == q:
                return 0
            bits *= 2
        raise InsufficientPrecision(f"cannot separate {self!r} from {q} at {self.max_bits} bits")

    def sign(self) -> int:
        return self.compare(0)

    def floor(self) -> int:
        lo, hi = self.enclosure(64)
        m = math.floor((lo + hi) / 2)
        while self.compare(m) < 0:
            m -= 1
        while self.compare(m + 1) >= 0:
            m += 1
        return m

    def __float__(self) -> float:
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def log_abs(self) -> float:
        """Natural log of ``|self|`` to about double precision."""
        bits = 64
        while bits <= 4 * self.max_bits:
            lo, hi = self.enclosure(bits)
            if lo > 0 or hi < 0:
                a, b = sorted((abs(lo), abs(hi)))
                if b - a <= a / (1 << 48):
                    return _log_fraction((a + b) / 2)
            bits *= 2
        raise InsufficientPrecision("cannot bound the magnitude away from zero")

    def _cmp_other(self, other) -> int:
        if _is_rational_number(other):
            return self.compare(other)
        if isinstance(other, ArithmeticReal) and other.rational is not None:
            return self.compare(other.rational)
        return NotImplemented

    def __lt__(self, other):
        c = self._cmp_other(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp_other(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp_other(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp_other(other)
        return c if c is NotImplemented else c >= 0


class RationalReal(ArithmeticReal):
    """An exact rational number."""

    def __init__(self, value):
        self.value = _to_fraction(value)

    @property
    def rational(self) -> Fraction:
        return self.value

    def enclosure(self, bits):
        return self.value, self.value

    def compare(self, q) -> int:
        return _sign(self.value - _to_fraction(q))

    def floor(self) -> int:
        return math.floor(self.value)

    def __float__(self):
        return float(self.value)

    def __eq__(self, other):
        if isinstance(other, RationalReal):
            return self.value == other.value
        if _is_rational_number(other):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"RationalReal({self.value})"


def _squarefree_split(n: int) -> Tuple[int, int]:
    """Write ``n = s*s*d`` with ``d`` squarefree; return ``(s, d)``."""
    s, d, f = 1, n, 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


class QuadraticReal(ArithmeticReal):
    """The real number ``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d > 1``."""

    def __init__(self, a, b, d: int):
        a, b = _to_fraction(a), _to_fraction(b)
        if d < 2:
            raise DomainError("d must be at least 2")
        s, d0 = _squarefree_split(d)
        if d0 == 1:
            a, b, d0 = a + b * s, Fraction(0), 2
            s = 1
        self.a, self.b, self.d = a, b * s, d0
        self.partial_quotients = None

    @property
    def rational(self) -> Optional[Fraction]:
        return self.a if self.b == 0 else None

    def compare(self, q) -> int:
        x = self.a - _to_fraction(q)
        s1, s2 = _sign(x), _sign(self.b)
        if s2 == 0 or s1 == s2:
            return s1 if s1 else s2
        if s1 == 0:
            return s2
        lhs, rhs = x * x, self.b * self.b * self.d
        if lhs > rhs:
            return s1
        if lhs < rhs:
            return s2
        return 0

    def enclosure(self, bits):
        if self.b == 0:
            return self.a, self.a
        k = bits + max(abs(self.b).numerator.bit_length() - self.b.denominator.bit_length(), 0) + 2
        r = math.isqrt(self.d << (2 * k))
        lo, hi = Fraction(r, 1 << k), Fraction(r + 1, 1 << k)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def conjugate(self) -> "QuadraticReal":
        return QuadraticReal(self.a, -self.b, self.d)

    def _coerce(self, other):
        if isinstance(other, QuadraticReal):
            if other.b != 0 and self.b != 0 and other.d != self.d:
                raise DomainError("quadratic reals over different fields")
            return other
        if isinstance(other, RationalReal):
            return QuadraticReal(other.value, 0, self.d)
        if _is_rational_number(other):
            return QuadraticReal(other, 0, self.d)
        return None

    def _field(self, other) -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticReal(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return QuadraticReal(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadraticReal({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    man = int(man)
    if man == 0:
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


class EnclosedReal(ArithmeticReal):
    """A real given by a hook ``bits -> (lo, hi)`` of rational enclosures.

    The hook must return ``lo <= x <= hi`` with width at most about
    ``2**-bits``.  Results are cached per precision.
    """

    def __init__(self, hook: Callable[[int], Tuple], label: str = "", max_bits: int = MAX_BITS):
        self._hook = hook
        self._cache: dict = {}
        self.label = label
        self.max_bits = max_bits

    def enclosure(self, bits):
        if bits not in self._cache:
            lo, hi = self._hook(bits)
            lo, hi = _to_fraction(lo), _to_fraction(hi)
            if lo > hi:
                raise ValueError("enclosure hook returned lo > hi")
            self._cache[bits] = (lo, hi)
        return self._cache[bits]

    @classmethod
    def from_interval_function(cls, fn, label: str = "", max_bits: int = MAX_BITS) -> "EnclosedReal":
        """Build from ``fn(iv)`` evaluated in mpmath interval arithmetic."""
        from mpmath import iv

        def hook(bits):
            old = iv.prec
            try:
                iv.prec = bits + 24
                r = fn(iv)
                if not isinstance(r, type(iv.mpf(0))):
                    r = iv.mpf(r)
                lo, hi = r._mpi_
                return _mpf_tuple_to_fraction(lo), _mpf_tuple_to_fraction(hi)
            finally:
                iv.prec = old

        return cls(hook, label=label, max_bits=max_bits)

    @classmethod
    def from_real(cls, x: ArithmeticReal, label: str = "") -> "EnclosedReal":
        """Hide the exact structure of ``x`` behind its enclosures."""
        return cls(x.enclosure, label=label or repr(x), max_bits=x.max_bits)

    def __repr__(self):
        return f"EnclosedReal({self.label})" if self.label else "EnclosedReal(...)"


def as_real(x) -> ArithmeticReal:
    """Coerce ints, Fractions, ``"p/q"`` strings and floats to an :class:`ArithmeticReal`.

    Floats are taken at their exact binary value.
    """
    if isinstance(x, ArithmeticReal):
        return x
    return RationalReal(_to_fraction(x))


class AlphaForm(ArithmeticReal):
    """The exact number ``u + v*alpha`` with rational ``u, v``.

    Forms over the same ``alpha`` object support addition, subtraction,
    rational scaling, exact comparison, hashing and equality.  If ``alpha``
    is rational the form is folded into its constant term, so equality of
    coefficient pairs coincides with equality of values whenever ``alpha``
    is irrational or rational.
    """

    __slots__ = ("u", "v", "alpha")

    def __init__(self, u, v, alpha: ArithmeticReal):
        u, v = _to_fraction(u), _to_fraction(v)
        r = alpha.rational
        if r is not None and v != 0:
            u, v = u + v * r, Fraction(0)
        self.u, self.v, self.alpha = u, v, alpha

    @property
    def max_bits(self):
        return self.alpha.max_bits

    @property
    def rational(self) -> Optional[Fraction]:
        return self.u if self.v == 0 else None

    def _lift(self, other) -> Optional["AlphaForm"]:
        if isinstance(other, AlphaForm):
            if other.alpha is not self.alpha:
                raise DomainError("forms over different irrationals")
            return other
        if _is_rational_number(other):
            return AlphaForm(other, 0, self.alpha)
        if isinstance(other, RationalReal):
            return AlphaForm(other.value, 0, self.alpha)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlphaForm(self.u + o.u, self.v + o.v, self.alpha)

    __radd__ = __add__

    def __neg__(self):
        return AlphaForm(-self.u, -self.v, self.alpha)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlphaForm(self.u - o.u, self.v - o.v, self.alpha)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlphaForm(o.u - self.u, o.v - self.v, self.alpha)

    def __mul__(self, other):
        if _is_rational_number(other):
            k = _to_fraction(other)
            return AlphaForm(self.u * k, self.v * k, self.alpha)
        if isinstance(other, AlphaForm) and other.v == 0:
            return self * other.u
        if isinstance(other, AlphaForm) and self.v == 0:
            return other * self.u
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_rational_number(other):
            k = _to_fraction(other)
            return AlphaForm(self.u / k, self.v / k, self.alpha)
        if isinstance(other, AlphaForm) and other.v == 0:
            return self / other.u
        return NotImplemented

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _float_filter(self) -> int:
        alpha = self.alpha
        cache = getattr(alpha, "_float_cache", None)
        if cache is None:
            lo, hi = alpha.enclosure(64)
            cache = (float((lo + hi) / 2), float(hi - lo) + 1e-300)
            try:
                alpha._float_cache = cache
            except AttributeError:
                pass
        af, aerr = cache
        try:
            fu, fv = float(self.u), float(self.v)
        except OverflowError:
            return 0
        approx = fu + fv * af
        err = abs(fv) * (aerr + abs(af) * 4e-16) + abs(fu) * 4e-16 + 1e-300
        if abs(approx) > 8 * err and math.isfinite(approx):
            return 1 if approx > 0 else -1
        return 0

    def sign(self) -> int:
        if self.v == 0:
            return _sign(self.u)
        s = self._float_filter()
        if s:
            return s
        return _sign(self.v) * self.alpha.compare(-self.u / self.v)

    def compare(self, q) -> int:
        return (self - _to_fraction(q)).sign()

    def enclosure(self, bits):
        if self.v == 0:
            return self.u, self.u
        extra = max(abs(self.v).numerator.bit_length() - self.v.denominator.bit_length(), 0) + 2
        lo, hi = self.alpha.enclosure(bits + extra)
        a, b = self.u + self.v * lo, self.u + self.v * hi
        return (a, b) if a <= b else (b, a)

    def floor(self) -> int:
        if self.v == 0:
            return math.floor(self.u)
        try:
            m = math.floor(float(self))
        except OverflowError:
            return ArithmeticReal.floor(self)
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    def frac(self) -> "AlphaForm":
        """The fractional part, as a form in ``[0, 1)``."""
        return self - self.floor()

    def __float__(self):
        if self.v == 0:
            return float(self.u)
        af = getattr(self.alpha, "_float_cache", None)
        if af is not None:
            try:
                val = float(self.u) + float(self.v) * af[0]
                if abs(val) > 1e-6 * (abs(float(self.v)) + 1):
                    return val
            except OverflowError:
                pass
        return ArithmeticReal.__float__(self) if abs(self.v) < (1 << 40) else self._float_precise()

    def _float_precise(self) -> float:
        bits = 64 + abs(self.v).numerator.bit_length()
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0 or hi < 0 or bits > 4 * self.max_bits:
                return float((lo + hi) / 2)
            bits *= 2

    def _cmp_other(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, AlphaForm):
            return other.alpha is self.alpha and self.u == other.u and self.v == other.v
        if _is_rational_number(other):
            return self.v == 0 and self.u == other
        return NotImplemented

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"AlphaForm({self.u}, {self.v})"

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        return f"{self.u} + {self.v}*alpha"


class MobiusReal(ArithmeticReal):
    """The real ``(a + b*alpha) / (c + d*alpha)`` with integer coefficients."""

    def __init__(self, a, b, c, d, alpha: ArithmeticReal):
        self.num = AlphaForm(a, b, alpha)
        self.den = AlphaForm(c, d, alpha)
        self.alpha = alpha
        self._den_sign = self.den.sign()
        if self._den_sign == 0:
            raise ZeroDivisionError("vanishing denominator")

    @property
    def max_bits(self):
        return self.alpha.max_bits

    @property
    def rational(self):
        n, d = self.num.rational, self.den.rational
        if n is not None and d is not None:
            return n / d
        return None

    def compare(self, q) -> int:
        q = _to_fraction(q)
        return (self.num - self.den * q).sign() * self._den_sign

    def enclosure(self, bits):
        extra = 8
        while True:
            nlo, nhi = self.num.enclosure(bits + extra)
            dlo, dhi = self.den.enclosure(bits + extra)
            if dlo > 0 or dhi < 0:
                cands = [nlo / dlo, nlo / dhi, nhi / dlo, nhi / dhi]
                lo, hi = min(cands), max(cands)
                if hi - lo <= Fraction(1, 1 << bits) or extra > self.max_bits:
                    return lo, hi
            elif extra > self.max_bits:
                raise InsufficientPrecision("denominator not separated from zero")
            extra *= 2

    def __repr__(self):
        return f"MobiusReal({self.num}, {self.den})"
