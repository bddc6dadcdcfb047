# %% [markdown]
# # Taylor coefficients of the elliptic kernel
#
# K(v) = -2 log(theta1(v) / (theta1'(0) v)) is even and analytic near 0,
# K(v) = sum_m c_{2m} v^{2m}.  Two independent routes compute the
# coefficients: Fourier analysis of kernel samples on a circle, and the
# closed Lambert series.  As t -> infinity they tend to 2 zeta(2m) / m.

# %%
import math

from ellclausen import k_ell, kernel_coeffs_lambert, kernel_coeffs_taylor
from ellclausen.numerics import zeta

# %%
for t in (0.3, 1.0, 5.0):
    a = kernel_coeffs_taylor(t, 4)
    b = kernel_coeffs_lambert(t, 4)
    print(f"t = {t} ({b.route})")
    for m in range(1, 5):
        print(f"  c_{2 * m}: {b[m]:+.15f}  delta {a[m] - b[m]:+.1e}  limit {2 * zeta(2 * m) / m:.6f}")

# %% [markdown]
# Two classical coincidences at tau = i: c_2(i) = pi because E_2(i) = 3/pi,
# and c_6(i) = 0 because E_6(i) = 0.

# %%
c = kernel_coeffs_lambert(1.0, 3)
print("c_2(i) - pi =", c[1] - math.pi)
print("c_6(i)      =", c[3])

# %% [markdown]
# The truncated expansion reproduces the kernel near the origin.

# %%
c = kernel_coeffs_lambert(0.8, 5)
for v in (0.02, 0.05, 0.1):
    approx = sum(c[m] * v ** (2 * m) for m in range(1, 5))
    print(f"v = {v}: K = {k_ell(v, 0.8).value:.15e}, remainder {k_ell(v, 0.8).value - approx:.2e}")
