# %% [markdown]
# # theta_1 on the imaginary axis and the S-transform
#
# With tau = i t the nome is q = e^{-pi t}.  For large t the sine series
# needs a handful of terms; as t -> 0 the nome approaches 1 and the series
# stalls.  Below t = 0.5 every evaluation is rerouted through
# tau -> -1/tau, which maps t to 1/t.

# %%
import math

from ellclausen import Modulus, s_transform_residual, theta1, theta1_normalized, theta1_product

# %% [markdown]
# Series against the Jacobi triple product, and the number of terms used.

# %%
for t in (5.0, 1.0, 0.5, 0.2, 0.05):
    r = theta1(0.3, Modulus(t))
    err = abs(r.value - theta1_product(0.3, Modulus(t)))
    print(f"t = {t:5}: theta1 = {r.value.real:+.12e}  terms {r.terms_used:2d}  "
          f"route {r.route:11s}  |series - product| = {err:.1e}")

# %% [markdown]
# The transformation law itself, checked with both sides summed directly.

# %%
for t in (0.5, 1.0, 2.0):
    print(f"t = {t}: S-transform residual at v = 0.3 is {s_transform_residual(0.3, t):.1e}")

# %% [markdown]
# The normalized function tends to 2 sin(pi v).  The largest gap sits at
# v = 1/2 and is close to 8 q^2.

# %%
for t in (1.0, 2.0, 3.0):
    q = math.exp(-math.pi * t)
    gap = theta1_normalized(0.5, t).value - 2.0
    print(f"t = {t}: gap at v = 1/2 is {gap:.4e}, 8 q^2 = {8 * q * q:.4e}")
