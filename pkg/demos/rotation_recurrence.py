"""
Closest returns of a circle rotation
====================================

Exact closest returns, return times to balls and arcs, and the three values
of the first-return time for the golden rotation.
"""

# %%
# Closest returns are the convergent denominators, computed exactly.
from fractions import Fraction

import numpy as np

from recurlab.circle import (
    RotationSystem,
    closest_returns,
    poincare_return_time_arc,
    return_time_ball,
    sample_return_times,
    three_gap_return_structure,
)

S = RotationSystem("1,(1)")
rec = closest_returns(S, 12)
for n, (tau, d) in enumerate(zip(rec.tau, rec.d), start=1):
    print(f"n={n:2d}  tau={tau:4d}  d={float(d):.3e}  q_n*f_n={tau * float(d):.6f}")

# %%
# Return time to a ball of radius r: the first q_n with f_n < r.
for r in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
    print(f"r={r}: tau={return_time_ball(S, r)}")

# %%
# An arc of length 3/10 has three first-return times, one the sum of the others.
A = Fraction(3, 10)
print("tau(A) =", poincare_return_time_arc(S, A))
print("triple =", three_gap_return_structure(S, A))
times = sample_return_times(S, A, 20_000, np.random.default_rng(0))
values, counts = np.unique(times, return_counts=True)
print(dict(zip(values.tolist(), (counts / counts.sum()).round(4).tolist())))
print("Kac: |A| * mean =", 0.3 * times.mean())
