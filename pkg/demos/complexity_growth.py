"""
Information content of symbolic orbits
======================================

Proxy-AIC curves for a chaotic, an intermittent and a zero-entropy system.
"""

# %%
# Build three words of length 10^6.
import numpy as np

from recurlab.circle import RotationSystem, symbolic_orbit
from recurlab.complexity import ProxyCoder, aic_proxy_curve, block_entropy, fit_exponent
from recurlab.interval_maps import doubling, iterate_symbolic, manneville, random_point

n = 10**6
rng = np.random.default_rng(1)
words = {
    "doubling": iterate_symbolic(doubling(precision=n), random_point(rng, n), n),
    "manneville z=3": iterate_symbolic(manneville(3), random_point(rng, 256), n),
    "golden rotation": symbolic_orbit(RotationSystem("1,(1)"), 0, n),
}

# %%
# Bits per symbol and the fitted growth exponent of the proxy curve.
checkpoints = np.unique(np.logspace(3, 6, 13).astype(int))
for name, w in words.items():
    coder = ProxyCoder(w)
    curve = aic_proxy_curve(w, checkpoints, coder)
    fit = fit_exponent(curve)
    print(f"{name:16s} bits/n={curve.bits[-1] / n:.4f}  beta={fit.beta:.3f}  best coder={coder.best(n)[1]}")

# %%
# Block entropy agrees with the proxy rate on the chaotic word only.
for name, w in words.items():
    print(f"{name:16s} H_8/8 = {block_entropy(w, 8):.4f}")
