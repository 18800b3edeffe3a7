"""Computable stand-ins for algorithmic information content.

All values are *proxy-AIC*: bit lengths of explicit, decodable codes.  The
true information content is uncomputable; the codes here only bound it from
above and reproduce its growth class.

Encoding
--------
Every code starts with a ``HEADER_BITS = 2`` bit coder tag.  The decoder is
told the word length ``n`` and the alphabet size ``r``.  Three coders exist.

``raw``
    ``n * ceil(log2 r)`` bits, one fixed-width field per symbol.

``lz76``
    The word is parsed left to right; the phrase starting at ``i`` copies the
    longest factor ``w[i:i+L]`` that also starts at some ``j < i`` (overlap
    allowed), followed by one literal symbol.  With ``b_i = floor(log_r i)``
    (``b_i = 0`` if ``r = 1``) a phrase at ``i >= 1`` costs

    * ``gamma(zigzag(L - b_i) + 1)`` bits for its length, where ``gamma(m) =
      2*floor(log2 m) + 1`` is the Elias gamma length and ``zigzag(d)`` is
      ``2d`` for ``d >= 0`` and ``-2d - 1`` otherwise;
    * ``ceil(log2 i)`` pointer bits when ``L > 0``;
    * a literal of ``ceil(log2 r)`` bits when ``L = 0`` and
      ``ceil(log2(r - 1))`` bits when ``L > 0`` (the symbol that would have
      extended the copy is excluded).

    The phrase at ``i = 0`` is a bare literal.  A final phrase that reaches
    the end of the word carries no literal, and its length field is the
    cheapest code for any length at least the remaining length, which the
    decoder clips to ``n``.  This last rule makes the cost of a prefix never
    exceed the cost of the word.

``periodic``
    For the minimal overlap period ``tau`` of ``w`` with ``tau < n``:
    ``ceil(log2 n)`` bits for ``tau`` followed by the proxy code of
    ``w[:tau]``.

``proxy_bits(w)`` is the minimum of the three, so the periodicity bound
``proxy(w) <= proxy(w[:tau]) + ceil(log2 n) + HEADER_BITS`` holds exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple

import numba
import numpy as np

__all__ = [
    "HEADER_BITS",
    "SymbolicWord",
    "ComplexityCurve",
    "ExponentFit",
    "BoundCheck",
    "LZParse",
    "lz76_parse",
    "lz76_bits",
    "lz76_prefix_bits",
    "raw_bits",
    "prefix_periods",
    "minimal_period",
    "periodic_coder_bits",
    "proxy_bits",
    "ProxyCoder",
    "aic_proxy_curve",
    "fit_exponent",
    "ratio_exponent",
    "log2_squared_bound_check",
    "block_entropy",
    "distinct_factor_counts",
    "read_word",
    "write_word",
]

HEADER_BITS = 2


@dataclass(frozen=True, eq=False)
class SymbolicWord:
    """A finite word over ``{0, ..., alphabet - 1}``."""

    symbols: np.ndarray
    alphabet: int = 2

    def __post_init__(self):
        s = np.asarray(self.symbols)
        if s.ndim != 1:
            raise ValueError("a word is one-dimensional")
        if self.alphabet < 1:
            raise ValueError("alphabet size must be positive")
        if s.size and (s.min() < 0 or s.max() >= self.alphabet):
            raise ValueError("symbol outside the alphabet")
        dtype = np.uint8 if self.alphabet <= 256 else np.int64
        s = np.ascontiguousarray(s, dtype=dtype)
        s.setflags(write=False)
        object.__setattr__(self, "symbols", s)

    def __len__(self):
        return int(self.symbols.size)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return SymbolicWord(self.symbols[item], self.alphabet)
        return int(self.symbols[item])

    def __eq__(self, other):
        if not isinstance(other, SymbolicWord):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.symbols, other.symbols)

    def __hash__(self):
        return hash((self.alphabet, self.symbols.tobytes()))

    def __repr__(self):
        head = self.to_text()[:40]
        return f"SymbolicWord({head!r}{'...' if len(self) > 40 else ''}, alphabet={self.alphabet})"

    @classmethod
    def from_text(cls, text: str, alphabet: Optional[int] = None) -> "SymbolicWord":
        """Parse digits such as ``"0100101"``; whitespace is ignored."""
        digits = [c for c in text if not c.isspace()]
        if any(not c.isdigit() for c in digits):
            raise ValueError("text words use decimal digit symbols")
        s = np.array([int(c) for c in digits], dtype=np.int64)
        r = alphabet if alphabet is not None else max(2, int(s.max()) + 1 if s.size else 2)
        return cls(s, r)

    def to_text(self) -> str:
        if self.alphabet > 10:
            raise ValueError("text format holds single-digit symbols only")
        return (self.symbols.astype(np.uint8) + ord("0")).tobytes().decode("ascii")

    @classmethod
    def from_bytes(cls, data: bytes, alphabet: Optional[int] = None) -> "SymbolicWord":
        s = np.frombuffer(data, dtype=np.uint8)
        r = alphabet if alphabet is not None else max(2, int(s.max()) + 1 if s.size else 2)
        return cls(s, r)

    def to_bytes(self) -> bytes:
        if self.alphabet > 256:
            raise ValueError("byte format holds symbols below 256 only")
        return self.symbols.astype(np.uint8).tobytes()


def read_word(path, fmt: str = "auto", alphabet: Optional[int] = None) -> SymbolicWord:
    """Read a word stored as raw bytes (one symbol per byte) or as ``0/1`` text."""
    data = Path(path).read_bytes()
    if fmt == "auto":
        fmt = "text" if data and all(c in b"0123456789 \r\n\t" for c in data[:4096]) else "bytes"
    if fmt == "text":
        return SymbolicWord.from_text(data.decode("ascii"), alphabet)
    if fmt == "bytes":
        return SymbolicWord.from_bytes(data, alphabet)
    raise ValueError(f"unknown word format {fmt!r}")


def write_word(w: SymbolicWord, path, fmt: str = "text") -> None:
    if fmt == "text":
        Path(path).write_text(w.to_text() + "\n")
    elif fmt == "bytes":
        Path(path).write_bytes(w.to_bytes())
    else:
        raise ValueError(f"unknown word format {fmt!r}")


def _ceil_log2(x: int) -> int:
    return (int(x) - 1).bit_length() if x > 1 else 0


# ---------------------------------------------------------------- parsing


def _suffix_array(s: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling."""
    n = s.size
    rank = s.astype(np.int64)
    order = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        step = np.empty(n, np.int64)
        step[0] = 0
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        rank = np.empty(n, np.int64)
        rank[order] = np.cumsum(step)
        if rank[order[-1]] == n - 1 or k >= n:
            return order
        k *= 2


@numba.njit(cache=True)
def _match_length(s, i, j):
    n = s.size
    h = 0
    while i + h < n and s[i + h] == s[j + h]:
        h += 1
    return h


@numba.njit(cache=True)
def _lz76_kernel(s, sa):
    n = s.size
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[sa[r]] = r
    # nearest suffix-array neighbours that start earlier in the text
    psv = np.full(n, -1, np.int64)
    nsv = np.full(n, -1, np.int64)
    stack = np.empty(n + 1, np.int64)
    top = 0
    for r in range(n):
        while top > 0 and sa[stack[top - 1]] > sa[r]:
            top -= 1
        if top > 0:
            psv[r] = sa[stack[top - 1]]
        stack[top] = r
        top += 1
    top = 0
    for r in range(n - 1, -1, -1):
        while top > 0 and sa[stack[top - 1]] > sa[r]:
            top -= 1
        if top > 0:
            nsv[r] = sa[stack[top - 1]]
        stack[top] = r
        top += 1
    starts = np.empty(n, np.int64)
    lengths = np.empty(n, np.int64)
    sources = np.empty(n, np.int64)
    c = 0
    i = 0
    while i < n:
        r = rank[i]
        best, src = 0, -1
        if psv[r] >= 0:
            h = _match_length(s, i, psv[r])
            if h > best:
                best, src = h, psv[r]
        if nsv[r] >= 0:
            h = _match_length(s, i, nsv[r])
            if h > best:
                best, src = h, nsv[r]
        starts[c] = i
        lengths[c] = best
        sources[c] = src
        c += 1
        i += best + 1
    return starts[:c], lengths[:c], sources[:c]


@dataclass(frozen=True)
class LZParse:
    """Phrase structure of a word.

    ``starts[j]`` is where phrase ``j`` begins, ``lengths[j]`` its copied
    length and ``sources[j]`` an earlier start of the copied factor (``-1``
    for a bare literal).  Only the last phrase may be truncated, meaning it
    reaches the end of the word without a literal.
    """

    n: int
    alphabet: int
    starts: np.ndarray
    lengths: np.ndarray
    sources: np.ndarray

    @property
    def truncated(self) -> bool:
        return bool(self.starts.size) and int(self.starts[-1] + self.lengths[-1]) == self.n

    def __len__(self):
        return int(self.starts.size)


def lz76_parse(w: SymbolicWord) -> LZParse:
    """Self-referential longest-previous-factor parse of ``w``."""
    s = np.asarray(w.symbols, dtype=np.int64)
    if s.size == 0:
        e = np.zeros(0, np.int64)
        return LZParse(0, w.alphabet, e, e, e)
    starts, lengths, sources = _lz76_kernel(s, _suffix_array(s))
    return LZParse(int(s.size), w.alphabet, starts, lengths, sources)


def _gamma_bits(m: np.ndarray) -> np.ndarray:
    """Elias gamma code lengths for positive integers."""
    m = np.asarray(m, dtype=np.int64)
    return 2 * (np.floor(np.log2(m)).astype(np.int64)) + 1


def _floor_log(i: np.ndarray, r: int) -> np.ndarray:
    i = np.asarray(i, dtype=np.int64)
    if r < 2:
        return np.zeros_like(i)
    b = np.floor(np.log(np.maximum(i, 1)) / math.log(r)).astype(np.int64)
    b = np.where(r ** (b + 1).astype(float) <= i, b + 1, b)
    b = np.where(r ** b.astype(float) > i, b - 1, b)
    return b


def _ceil_log2_array(i: np.ndarray) -> np.ndarray:
    i = np.asarray(i, dtype=np.int64)
    out = np.zeros_like(i)
    big = i > 1
    out[big] = np.ceil(np.log2(i[big])).astype(np.int64)
    # guard the float rounding at exact powers of two
    fix = big & ((np.int64(1) << np.maximum(out - 1, 0)) >= i)
    out[fix] -= 1
    fix = big & ((np.int64(1) << np.minimum(out, 62)) < i)
    out[fix] += 1
    return out


def _zigzag(d: np.ndarray) -> np.ndarray:
    return np.where(d >= 0, 2 * d, -2 * d - 1)


def _full_phrase_bits(starts: np.ndarray, lengths: np.ndarray, r: int) -> np.ndarray:
    lit0, lit1 = _ceil_log2(r), _ceil_log2(r - 1) if r > 1 else 0
    b = _floor_log(starts, r)
    cost = _gamma_bits(_zigzag(lengths - b) + 1)
    cost = cost + np.where(lengths > 0, _ceil_log2_array(starts) + lit1, lit0)
    return np.where(starts == 0, lit0, cost)


def _truncated_phrase_bits(starts: np.ndarray, copied: np.ndarray, r: int) -> np.ndarray:
    b = _floor_log(starts, r)
    best = np.where(copied <= b, 1, _gamma_bits(_zigzag(copied - b) + 1))
    return best + _ceil_log2_array(starts)


class _PrefixCost:
    """LZ76 bit cost of every prefix of a parsed word."""

    def __init__(self, parse: LZParse):
        self.parse = parse
        r = parse.alphabet
        self.full = _full_phrase_bits(parse.starts, parse.lengths, r)
        self.cum = np.concatenate(([0], np.cumsum(self.full)))
        self.ends = parse.starts + parse.lengths + 1

    def __call__(self, m) -> np.ndarray:
        m = np.atleast_1d(np.asarray(m, dtype=np.int64))
        p = self.parse
        if np.any(m < 0) or np.any(m > p.n):
            raise ValueError("prefix length out of range")
        out = np.zeros(m.shape, np.int64)
        pos = m > 0
        mm = m[pos]
        J = np.searchsorted(p.starts, mm, side="left") - 1
        base = self.cum[J]
        whole = self.ends[J] == mm
        tail = np.where(
            whole,
            self.full[J],
            _truncated_phrase_bits(p.starts[J], mm - p.starts[J], p.alphabet),
        )
        out[pos] = base + tail
        return out


def lz76_prefix_bits(w: SymbolicWord, lengths: Iterable[int], parse: Optional[LZParse] = None) -> np.ndarray:
    """LZ76 costs (without header) of the prefixes ``w[:m]`` for each ``m``."""
    parse = parse if parse is not None else lz76_parse(w)
    return _PrefixCost(parse)(np.asarray(list(lengths), dtype=np.int64))


def lz76_bits(w: SymbolicWord) -> int:
    """LZ76 code length of ``w`` including the coder tag."""
    if len(w) == 0:
        return HEADER_BITS
    return int(lz76_prefix_bits(w, [len(w)])[0]) + HEADER_BITS


def raw_bits(w: SymbolicWord) -> int:
    """Fixed-width code length including the coder tag."""
    return len(w) * _ceil_log2(w.alphabet) + HEADER_BITS


@numba.njit(cache=True)
def _prefix_function(s):
    n = s.size
    pi = np.zeros(n, np.int64)
    for i in range(1, n):
        k = pi[i - 1]
        while k > 0 and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    return pi


def prefix_periods(w: SymbolicWord) -> np.ndarray:
    """``out[m-1]`` is the minimal overlap period of ``w[:m]``."""
    s = np.asarray(w.symbols, dtype=np.int64)
    if s.size == 0:
        return np.zeros(0, np.int64)
    return np.arange(1, s.size + 1) - _prefix_function(s)


def minimal_period(w: SymbolicWord) -> int:
    """``min{k >= 1 : w[i+k] = w[i] for 0 <= i < n-k}``."""
    if len(w) == 0:
        from .reals import DomainError

        raise DomainError("empty word has no period")
    return int(prefix_periods(w)[-1])


@numba.njit(cache=True)
def _proxy_kernel(lz, raw, periods, header):
    n = lz.size - 1
    best = np.empty(n + 1, np.int64)
    coder = np.zeros(n + 1, np.int8)
    best[0] = header
    for m in range(1, n + 1):
        b, c = raw[m], 1
        if lz[m] < b:
            b, c = lz[m], 0
        tau = periods[m - 1]
        if tau < m:
            lg = 0
            while (1 << lg) < m:
                lg += 1
            v = best[tau] + lg + header
            if v < b:
                b, c = v, 2
        best[m] = b
        coder[m] = c
    return best, coder


_CODERS = ("lz76", "raw", "periodic")


class ProxyCoder:
    """Proxy-AIC of every prefix of one word, sharing a single parse.

    Attributes
    ----------
    word : SymbolicWord
    parse : LZParse
    periods : ndarray
        ``periods[m-1]`` is the minimal overlap period of ``w[:m]``.
    lz_bits, raw_bits, proxy_bits : ndarray
        Code lengths (with coder tag) of ``w[:m]`` at index ``m``.
    """

    def __init__(self, w: SymbolicWord):
        self.word = w
        n = len(w)
        self.parse = lz76_parse(w)
        self.periods = prefix_periods(w)
        m = np.arange(0, n + 1)
        self.lz_bits = _PrefixCost(self.parse)(m) + HEADER_BITS
        self.raw_bits = m * _ceil_log2(w.alphabet) + HEADER_BITS
        self.proxy_bits, self._coder = _proxy_kernel(self.lz_bits, self.raw_bits, self.periods, HEADER_BITS)

    def period(self, m: int) -> int:
        return int(self.periods[m - 1])

    def periodic(self, m: int, tau: Optional[int] = None) -> int:
        """Periodic code length of ``w[:m]`` with period ``tau`` (default: minimal)."""
        tau = self.period(m) if tau is None else tau
        if not 1 <= tau <= m:
            raise ValueError("period out of range")
        s = self.word.symbols[:m]
        if not np.array_equal(s[tau:], s[: m - tau]):
            raise ValueError(f"prefix of length {m} is not {tau}-periodic")
        return int(self.proxy_bits[tau]) + _ceil_log2(m) + HEADER_BITS

    def best(self, m: int) -> Tuple[int, str]:
        """``(bits, coder)`` of the cheapest code for ``w[:m]``."""
        return int(self.proxy_bits[m]), _CODERS[int(self._coder[m])] if m > 0 else "raw"

    def bits(self, m: int) -> int:
        return int(self.proxy_bits[m])


def periodic_coder_bits(w: SymbolicWord, tau: int) -> int:
    """Bits of the periodic code of ``w`` with period ``tau``.

    Equals ``proxy_bits(w[:tau]) + ceil(log2 |w|) + HEADER_BITS``; valid for
    any period of ``w``, minimal or not.

    Raises
    ------
    ValueError
        ``w`` is not ``tau``-periodic or ``tau`` is out of range.
    """
    n = len(w)
    if not 1 <= tau <= n:
        raise ValueError("period out of range")
    s = w.symbols
    if not np.array_equal(s[tau:], s[: n - tau]):
        raise ValueError(f"word is not {tau}-periodic")
    return proxy_bits(w[:tau]) + _ceil_log2(n) + HEADER_BITS


def proxy_bits(w: SymbolicWord) -> int:
    """Proxy-AIC of ``w``: the cheapest of the raw, LZ76 and periodic codes."""
    if len(w) == 0:
        return HEADER_BITS
    return ProxyCoder(w).bits(len(w))


@dataclass(frozen=True)
class ComplexityCurve:
    """Proxy-AIC sampled at increasing prefix lengths."""

    checkpoints: np.ndarray
    bits: np.ndarray
    coder: str = "proxy"

    def __post_init__(self):
        c = np.asarray(self.checkpoints, dtype=np.int64)
        b = np.asarray(self.bits, dtype=float)
        if c.shape != b.shape:
            raise ValueError("checkpoints and bits differ in shape")
        if np.any(np.diff(c) <= 0):
            raise ValueError("checkpoints must increase")
        if np.any(b < 0):
            raise ValueError("bits must be nonnegative")
        object.__setattr__(self, "checkpoints", c)
        object.__setattr__(self, "bits", b)

    def rows(self):
        return [(int(n), repr(float(b)) if b != int(b) else int(b), self.coder) for n, b in zip(self.checkpoints, self.bits)]

    def to_csv(self, path) -> None:
        from .recurrence import write_csv

        write_csv(path, ("n", "bits", "coder"), self.rows())


def aic_proxy_curve(w: SymbolicWord, checkpoints: Sequence[int], coder: Optional[ProxyCoder] = None) -> ComplexityCurve:
    """Proxy-AIC of ``w[:n]`` for each checkpoint ``n``."""
    coder = coder if coder is not None else ProxyCoder(w)
    cps = np.asarray(list(checkpoints), dtype=np.int64)
    if cps.size and (cps.max() > len(w) or cps.min() < 1):
        raise ValueError("checkpoints must lie in 1..len(w)")
    return ComplexityCurve(cps, np.array([coder.bits(int(m)) for m in cps]), "proxy")


@dataclass(frozen=True)
class ExponentFit:
    """A growth exponent fitted to a curve.

    ``beta`` is the least-squares slope in log-log coordinates for
    ``mode="least-squares"`` and the largest/smallest slope between
    consecutive checkpoints for ``"limsup-like"``/``"liminf-like"``.
    ``residual`` is the RMS residual of the least-squares line in both cases.
    """

    beta: float
    window: Tuple[int, int]
    residual: float
    mode: str
    slopes: Tuple[float, ...] = ()


_MODES = ("least-squares", "limsup-like", "liminf-like")


def fit_exponent(curve: ComplexityCurve, mode: str = "least-squares", window: Optional[Tuple[int, int]] = None) -> ExponentFit:
    """Fit ``bits ~ C n^beta`` on ``curve``.

    Raises
    ------
    ValueError
        Fewer than four checkpoints, a span under two decades, zero bits,
        or an unknown mode.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    n, b = curve.checkpoints.astype(float), curve.bits
    if window is not None:
        keep = (n >= window[0]) & (n <= window[1])
        n, b = n[keep], b[keep]
    if n.size < 4:
        raise ValueError("need at least four checkpoints")
    if n[-1] / n[0] < 100 * (1 - 1e-12):
        raise ValueError("checkpoints must span at least two decades")
    if np.any(b <= 0):
        raise ValueError("degenerate curve with zero bits")
    x, y = np.log(n), np.log(b)
    coef = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - np.polyval(coef, x)) ** 2)))
    slopes = np.diff(y) / np.diff(x)
    beta = {"least-squares": float(coef[0]), "limsup-like": float(slopes.max()), "liminf-like": float(slopes.min())}[mode]
    return ExponentFit(beta, (int(n[0]), int(n[-1])), resid, mode, tuple(float(s) for s in slopes))


def ratio_exponent(n: Sequence[float], a: Sequence[float], b: Sequence[float], decades: float = 2.0) -> float:
    """Fitted log-log exponent of ``a/b`` over the top ``decades`` of ``n``.

    ``a`` and ``b`` are treated as the same growth class when the result is
    within 0.05 of zero.
    """
    n, a, b = (np.asarray(v, dtype=float) for v in (n, a, b))
    keep = n >= n.max() / 10 ** decades
    return float(np.polyfit(np.log(n[keep]), np.log(a[keep] / b[keep]), 1)[0])


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of comparing ``a_n / ln(n)^2`` with ``1 / ln d``."""

    passed: bool
    max_ratio: float
    bound: float
    slack: float
    n: np.ndarray
    ratios: np.ndarray


def log2_squared_bound_check(n: Sequence[int], a: Sequence[float], d: float, slack: float = 0.1, tail: float = 0.5) -> BoundCheck:
    """Check ``max a_n / ln(n)^2 <= 1/ln d + slack`` over the deepest ``tail`` of ``n``.

    Natural logarithms are used throughout, matching a recursion of the form
    ``a_n <= a_{n/d_n} + ln n + C`` with ``d_n >= d``.
    """
    if not d > 1:
        raise ValueError("d must exceed 1")
    n = np.asarray(n, dtype=float)
    a = np.asarray(a, dtype=float)
    keep = n > 1
    n, a = n[keep], a[keep]
    ratios = a / np.log(n) ** 2
    start = min(int(math.floor(n.size * (1 - tail))), n.size - 1)
    m = float(ratios[start:].max())
    bound = 1 / math.log(d)
    return BoundCheck(m <= bound + slack, m, bound, slack, n, ratios)


def _block_codes(w: SymbolicWord, m: int) -> np.ndarray:
    s = np.asarray(w.symbols, dtype=np.int64)
    r = max(w.alphabet, 2)
    if m * math.log2(r) > 62:
        raise ValueError("block too long to index")
    nb = s.size - m + 1
    codes = np.zeros(nb, np.int64)
    for j in range(m):
        codes = codes * r + s[j : j + nb]
    return codes


def block_entropy(w: SymbolicWord, m: int) -> float:
    """Empirical Shannon entropy of overlapping ``m``-blocks, in bits per symbol."""
    if m < 1:
        raise ValueError("block length must be positive")
    if len(w) < m:
        raise ValueError("word shorter than the block length")
    if len(w) < 100 * w.alphabet ** m:
        warnings.warn("word is short for reliable block statistics", RuntimeWarning, stacklevel=2)
    _, counts = np.unique(_block_codes(w, m), return_counts=True)
    p = counts / counts.sum()
    return float(-(p * np.log2(p)).sum() / m)


def distinct_factor_counts(w: SymbolicWord, max_len: int) -> np.ndarray:
    """Number of distinct factors of lengths ``1..max_len``."""
    return np.array([np.unique(_block_codes(w, m)).size for m in range(1, max_len + 1)])
