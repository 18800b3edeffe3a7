"""Independent reference computations used by the tests.

Nothing here imports the package under test: every oracle recomputes its
answer from definitions with mpmath, plain integers or brute force.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath
import numpy as np
from numba import njit

mpmath.mp.dps = 80


def cf_value_mp(head: Sequence[int], period: Sequence[int] = (), unroll: int = 400):
    """High-precision value of ``[head, period, period, ...]`` by backward evaluation."""
    quotients = list(head) + list(period) * (unroll // max(len(period), 1) if period else 0)
    x = mpmath.mpf(0)
    for a in reversed(quotients):
        x = 1 / (a + x)
    return x


def euclid_cf(x: Fraction) -> List[int]:
    """Continued fraction of a rational in (0,1) with last quotient >= 2."""
    out = []
    while x:
        y = 1 / x
        a = math.floor(y)
        out.append(a)
        x = y - a
    return out


def convergent_denominators(quotients: Sequence[int]) -> List[int]:
    q = [1, quotients[0]]
    for a in quotients[1:]:
        q.append(a * q[-1] + q[-2])
    return q[1:]


def fibonacci(n: int) -> List[int]:
    """1, 2, 3, 5, 8, ... (``n`` terms)."""
    out = [1, 2]
    while len(out) < n:
        out.append(out[-1] + out[-2])
    return out[:n]


def norm_mp(x) -> "mpmath.mpf":
    """Distance to the nearest integer."""
    f = x - mpmath.floor(x)
    return min(f, 1 - f)


def rotation_word_mp(alpha, x, cuts: Sequence, n: int) -> List[int]:
    """Arc indices of ``x + j alpha mod 1`` for ``j < n`` (cuts as mp numbers)."""
    out = []
    for j in range(n):
        y = (x + j * alpha) % 1
        idx = len(cuts) - 1
        for i, c in enumerate(cuts):
            if y >= c:
                idx = i
        out.append(idx)
    return out


def first_return_scan_mp(alpha, length, limit: int) -> int:
    """``min{r >= 1 : ||r alpha|| < length}`` by scanning."""
    for r in range(1, limit + 1):
        if norm_mp(r * alpha) < length:
            return r
    raise RuntimeError("no return within limit")


def naive_lz76(s: Sequence[int]) -> List[Tuple[int, int]]:
    """``(start, copied_length)`` of each LZ76 phrase, quadratic time."""
    s = list(s)
    n = len(s)
    i, out = 0, []
    while i < n:
        best = 0
        for j in range(i):
            L = 0
            while i + L < n and s[j + L] == s[i + L]:
                L += 1
            best = max(best, L)
        out.append((i, best))
        i += best + 1
    return out


def brute_period(s: Sequence[int]) -> int:
    """Least ``k >= 1`` with ``s[i + k] == s[i]`` for all valid ``i``."""
    n = len(s)
    for k in range(1, n + 1):
        if all(s[i + k] == s[i] for i in range(n - k)):
            return k
    return n


@njit(cache=True)
def manneville_escape_steps(x0, z):
    """Steps of ``x -> x + x**z`` (float64) until ``x >= 1/2``."""
    x = x0
    k = 0
    while x < 0.5:
        x = x + x**z
        k += 1
    return k


def max_run_bernoulli(n: int, rng: np.random.Generator) -> int:
    bits = rng.integers(0, 2, size=n)
    best = run = 0
    for b in bits:
        run = run + 1 if b == 0 else 0
        best = max(best, run)
    return best


def cantor_samples(rng: np.random.Generator, n: int, depth: int = 40) -> np.ndarray:
    """Points of the middle-thirds Cantor set from random ternary digits in {0, 2}."""
    digits = 2 * rng.integers(0, 2, size=(n, depth))
    return digits @ (3.0 ** -np.arange(1, depth + 1))
