"""
Hitting the discontinuities of an interval exchange
===================================================

Dyadic-window minima of ``n^a`` times the distance to the discontinuity set.
"""

# %%
from fractions import Fraction

import numpy as np

from recurlab.iet import TargetSet, build_iet, hitting_exponent_probe, symbolic_orbit
from recurlab.complexity import distinct_factor_counts

T = build_iet([Fraction(3, 10), Fraction(2, 5), Fraction(3, 10)], [3, 2, 1])
print(T.to_json())

# %%
# The probe records the running distance to the discontinuities.
x = Fraction(1234567, 10**7)
probe = hitting_exponent_probe(T, x, 10**5, 1.1, TargetSet.discontinuities(T))
print(dict(zip(probe.window_starts[-6:].tolist(), probe.window_minima[-6:].round(4).tolist())))
print("nondecreasing over the last four windows:", probe.nondecreasing_tail(4))

# %%
# Factor counts of the coding: rational lengths give a periodic word.
w = symbolic_orbit(T, x, 10**4)
print(distinct_factor_counts(w, 10))
