# %% [markdown]
# # Boundary constants and the integral recursion
#
# Integrating level n gives level n+1, up to the alternating sign the Fourier
# series impose and an integration constant.  For odd levels that constant is
# the boundary value B_{2m+1}(t) = ECl_{2m+1}(0), a deformation of zeta(2m+1).

# %%
from ellclausen import (
    Family,
    boundary_constant,
    circular_limit_constant,
    degeneration_report,
    hyperbolic_limit_constant,
    verify_recursion,
)

# %%
print(f"{'t':>5} {'B_3':>14} {'B_5':>14} {'B_7':>14}")
for t in (0.5, 1.0, 2.0, 5.0):
    print(f"{t:5} " + " ".join(f"{boundary_constant(m, t).value:14.10f}" for m in (1, 2, 3)))
print(f"{'inf':>5} " + " ".join(f"{circular_limit_constant(m):14.10f}" for m in (1, 2, 3)))

# %% [markdown]
# The degeneration report compares B_{2m+1}(it) with zeta(2m+1) against the
# envelope 2 q^2 / (1 - q^2).

# %%
rep = degeneration_report(3, [2.0, 3.0, 5.0])
for row in rep.rows:
    print(f"t = {row.t}, m = {row.m}: residual {row.residual:.3e}  envelope {row.envelope:.3e}")
print("all inside:", rep.ok)

# %% [markdown]
# The tabulated hyperbolic constants zeta(2m+1) / 2^(2m-1) are reproduced as
# stated, together with a note on why they are not derived here.

# %%
print([round(hyperbolic_limit_constant(m), 10) for m in (1, 2, 3)])
print(rep.note)

# %% [markdown]
# One lift code path for all three families: finite differences of level n+1
# against level n, and quadrature of level n against the series of level n+1.

# %%
for fam in (Family.circular(), Family.elliptic(1.0), Family.hyperbolic()):
    r = verify_recursion(fam, 4, [0.5, 1.0, 2.0])
    signs = [lv.sign for lv in r.levels]
    print(f"{str(fam):16s} signs {signs}  fd {r.max_fd():.1e}  quad {r.max_quad():.1e}  ok {r.ok}")
