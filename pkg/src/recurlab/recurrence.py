"""System-agnostic recurrence instrumentation.

A system is described by a :class:`SystemInterface` (``iterate``,
``distance`` and optionally ``encode``).  The scans here make no use of any
closed form and serve as oracles for the exact modules.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "SystemInterface",
    "ClosestReturnRecord",
    "ClosestReturnScan",
    "TieError",
    "ReturnTimeScan",
    "RateCurve",
    "DimensionEstimate",
    "scan_closest_returns",
    "scan_return_time_ball",
    "empirical_pointwise_dimension",
    "identity_system",
    "tail_extrema",
    "write_csv",
]


class TieError(ArithmeticError):
    """Two returns achieved exactly the same positive distance."""

    def __init__(self, step: int):
        super().__init__(f"tie at step {step}")
        self.step = step


@dataclass(frozen=True)
class SystemInterface:
    """A dynamical system seen through ``iterate``, ``distance`` and ``encode``.

    ``distance`` may return any totally ordered values (exact forms, rationals
    or floats) as long as equal distances compare equal.
    """

    iterate: Callable[[Any], Any]
    distance: Callable[[Any, Any], Any]
    encode: Optional[Callable[[Any], int]] = None
    name: str = ""


def identity_system() -> SystemInterface:
    """The identity map on the real line."""
    return SystemInterface(iterate=lambda x: x, distance=lambda a, b: abs(a - b), name="identity")


def write_csv(path, header: Sequence[str], rows) -> None:
    """Write rows under a header row."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def _as_float(v) -> float:
    try:
        return float(v)
    except (TypeError, OverflowError):
        return float("nan")


@dataclass(frozen=True)
class ClosestReturnRecord:
    """Closest-return times ``tau_n`` and distances ``d_n``.

    ``tau`` strictly increases and ``d`` strictly decreases.  ``degenerate``
    is set when a return lands exactly on the starting point, after which
    no improvement is possible.
    """

    tau: Tuple[int, ...]
    d: Tuple[Any, ...]
    degenerate: bool = False

    def __post_init__(self):
        if len(self.tau) != len(self.d):
            raise ValueError("tau and d differ in length")
        for i in range(1, len(self.tau)):
            if not self.tau[i] > self.tau[i - 1]:
                raise ValueError("tau must strictly increase")
            if not self.d[i] < self.d[i - 1]:
                raise ValueError("d must strictly decrease")

    def __len__(self):
        return len(self.tau)

    def truncate(self, k: int) -> "ClosestReturnRecord":
        """The first ``k`` entries."""
        return ClosestReturnRecord(self.tau[:k], self.d[:k], self.degenerate and k >= len(self.tau))

    def rows(self) -> List[Tuple[int, int, float]]:
        return [(n, t, _as_float(v)) for n, (t, v) in enumerate(zip(self.tau, self.d), start=1)]

    def to_csv(self, path) -> None:
        write_csv(path, ("n", "tau_n", "d_n"), self.rows())


class ClosestReturnScan:
    """Resumable orbit scan for closest returns.

    The record starts at ``k = 1`` with ``d_1 = distance(x, Tx)`` and is
    extended at every strict improvement.  Calling :meth:`advance` again
    continues from the stored state.
    """

    def __init__(self, sys: SystemInterface, x):
        self.sys = sys
        self.x = x
        self.k = 0
        self.point = x
        self.tau: List[int] = []
        self.d: List[Any] = []
        self.degenerate = False

    def advance(self, N: int) -> "ClosestReturnScan":
        """Scan up to time ``N``.

        Raises
        ------
        TieError
            A return exactly matches the current positive minimum.
        """
        while self.k < N and not self.degenerate:
            self.k += 1
            self.point = self.sys.iterate(self.point)
            dist = self.sys.distance(self.x, self.point)
            if not self.d or dist < self.d[-1]:
                self.tau.append(self.k)
                self.d.append(dist)
                if dist == 0:
                    self.degenerate = True
            elif dist == self.d[-1]:
                raise TieError(self.k)
        return self

    @property
    def record(self) -> ClosestReturnRecord:
        return ClosestReturnRecord(tuple(self.tau), tuple(self.d), self.degenerate)


def scan_closest_returns(sys: SystemInterface, x, N: int) -> ClosestReturnRecord:
    """Closest returns of ``x`` over times ``1..N`` by direct orbit scan."""
    if N < 1:
        raise ValueError("N must be positive")
    return ClosestReturnScan(sys, x).advance(N).record


@dataclass(frozen=True)
class ReturnTimeScan:
    """Result of a bounded return-time scan; ``time`` is ``None`` when the horizon was exceeded."""

    time: Optional[int]
    horizon: int

    @property
    def exceeded(self) -> bool:
        return self.time is None


def scan_return_time_ball(sys: SystemInterface, x, r, N_max: int) -> ReturnTimeScan:
    """First ``k <= N_max`` with ``distance(x, T^k x) < r``."""
    if not r > 0:
        raise ValueError("r must be positive")
    y = x
    for k in range(1, N_max + 1):
        y = sys.iterate(y)
        if sys.distance(x, y) < r:
            return ReturnTimeScan(k, N_max)
    return ReturnTimeScan(None, N_max)


def tail_extrema(values, fraction: float = 0.5) -> Tuple[float, float]:
    """``(min, max)`` over the deepest ``fraction`` of ``values``."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("empty curve")
    start = min(int(math.floor(values.size * (1 - fraction))), values.size - 1)
    tail = values[start:]
    return float(tail.min()), float(tail.max())


@dataclass(frozen=True)
class RateCurve:
    """A curve ``n -> value`` with liminf/limsup proxies over its deepest half."""

    n: np.ndarray
    values: np.ndarray
    liminf: float
    limsup: float
    label: str = "value"
    flags: Tuple[str, ...] = ()

    @classmethod
    def from_values(cls, n, values, label: str = "value", flags=()) -> "RateCurve":
        n = np.asarray(n)
        values = np.asarray(values, dtype=float)
        lo, hi = tail_extrema(values)
        return cls(n, values, lo, hi, label, tuple(flags))

    def to_csv(self, path) -> None:
        write_csv(path, ("n", self.label), ((int(a), repr(float(b))) for a, b in zip(self.n, self.values)))


@dataclass(frozen=True)
class DimensionEstimate:
    """Least-squares slope of log mass against log radius, with two-point slope extremes."""

    slope: float
    lower: float
    upper: float
    radii: Tuple[float, ...]
    masses: Tuple[float, ...]


def empirical_pointwise_dimension(samples, x, radii, distance: Optional[Callable] = None) -> DimensionEstimate:
    """Estimate the local dimension of the sampled measure at ``x``.

    Parameters
    ----------
    samples : array_like
        At least 1000 points drawn from the measure.
    x : point
        Centre of the balls.
    radii : sequence of float
        At least four decreasing radii.
    distance : callable, optional
        Vectorised ``distance(samples, x)``; defaults to ``|samples - x|``.
    """
    samples = np.asarray(samples, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if samples.shape[0] < 1000:
        raise ValueError("need at least 1000 samples")
    if radii.size < 4 or np.any(np.diff(radii) >= 0):
        raise ValueError("need at least four strictly decreasing radii")
    dist = np.abs(samples - x) if distance is None else np.asarray(distance(samples, x))
    masses = np.array([np.mean(dist < r) for r in radii])
    keep = masses > 0
    if not keep.all():
        warnings.warn(f"dropping {int((~keep).sum())} radii with empty balls", RuntimeWarning, stacklevel=2)
    r, m = radii[keep], masses[keep]
    if r.size < 2:
        raise ValueError("fewer than two radii with nonempty balls")
    lr, lm = np.log(r), np.log(m)
    slope = float(np.polyfit(lr, lm, 1)[0])
    pair = np.diff(lm) / np.diff(lr)
    return DimensionEstimate(slope, float(pair.min()), float(pair.max()), tuple(r), tuple(m))
