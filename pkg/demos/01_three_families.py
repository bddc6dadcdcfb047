# %% [markdown]
# # Circular, elliptic and hyperbolic Clausen functions
#
# The three families differ only in their Fourier weights.  The circular
# functions weight every harmonic by 1, the elliptic ones by coth(pi k t),
# and the hyperbolic ones replace the Fourier series by a polylogarithm in
# e^{-x}.  This script evaluates all three and watches the elliptic family
# collapse onto the circular one as t grows.

# %%
import math

import numpy as np

from ellclausen import Family, evaluate, fourier_weight

# %% [markdown]
# Catalan's constant is Cl_2(pi/2); Cl_3(0) is zeta(3).

# %%
circ = Family.circular()
print("Cl_2(pi/2) =", evaluate(circ, 2, math.pi / 2).value)
print("Cl_3(0)    =", evaluate(circ, 3, 0.0).value)

# %% [markdown]
# The elliptic weights start above 1 and decay to 1 geometrically in k.

# %%
for t in (0.5, 1.0, 2.0):
    fam = Family.elliptic(t)
    w = [fourier_weight(k, fam) for k in range(1, 5)]
    print(f"t = {t:3}: a_k - 1 =", " ".join(f"{x - 1:.2e}" for x in w))

# %% [markdown]
# A small table of level 2 on a uniform grid.  Each value carries an error
# bound; the route column says which algorithm produced it.

# %%
xs = np.linspace(0.25, 2 * math.pi - 0.25, 7)
print(f"{'x':>7} {'Cl_2':>12} {'ECl_2(t=1)':>12} {'HCl_2':>12}")
for x in xs:
    row = [evaluate(f, 2, x).value for f in (circ, Family.elliptic(1.0), Family.hyperbolic())]
    print(f"{x:7.3f} " + " ".join(f"{v:12.8f}" for v in row))

# %% [markdown]
# Degeneration: the gap to the circular function shrinks like q^2 = e^{-2 pi t}.

# %%
for t in (1.0, 2.0, 3.0, 4.0):
    gap = abs(evaluate(Family.elliptic(t), 3, 0.7).value - evaluate(circ, 3, 0.7).value)
    print(f"t = {t}: |ECl_3 - Cl_3| = {gap:.3e}   q^2 = {math.exp(-2 * math.pi * t):.3e}")

# %% [markdown]
# At level 1 the elliptic function has a closed form through the normalized
# theta function, and the plain weighted Fourier series agrees with it.

# %%
from ellclausen import elliptic_cl

a = elliptic_cl(1, math.pi, 1.0, route="theta")
b = elliptic_cl(1, math.pi, 1.0, route="fourier")
print(a.route, a.value, "|", b.route, b.value)
