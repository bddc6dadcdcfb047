"""Quadrature oracle for the level recursion shared by all three families.

Every family obeys  F_{n+1}(x) = F_{n+1}(0) + s_n * int_0^x F_n(u) du  with a
family-specific sign s_n and boundary value; nothing else differs.  The lift
operators below integrate only the level beneath the one they produce, so a
lifted value is independent of the series used for that level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .boundary import boundary_constant
from .clausen import Family, evaluate
from .numerics import DEFAULT_PRECISION, Precision, adaptive_integrate, zeta

__all__ = [
    "FD_STEP",
    "FD_TOL",
    "QUAD_TOL",
    "LevelCheck",
    "RecursionReport",
    "lift_even",
    "lift_odd",
    "level_boundary",
    "verify_recursion",
]

FD_STEP = 1e-5
FD_TOL = 1e-6
QUAD_TOL = 1e-8


def _integral(f: Callable[[float], float], x: float, prec: Precision) -> float:
    if x >= 0:
        return adaptive_integrate(f, 0.0, x, prec).value
    return -adaptive_integrate(f, x, 0.0, prec).value


def lift_even(f: Callable[[float], float], x: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """int_0^x f(u) du: the sine-type level above ``f``, vanishing at 0."""
    return _integral(f, float(x), prec)


def lift_odd(
    f: Callable[[float], float], B: float, x: float, prec: Precision = DEFAULT_PRECISION
) -> float:
    """B - int_0^x f(u) du: a level with boundary value B at 0."""
    return B - _integral(f, float(x), prec)


def level_boundary(family: Family, n: int, prec: Precision = DEFAULT_PRECISION) -> float:
    """F_n(0) for n >= 2."""
    if family.kind == "hyperbolic":
        return zeta(n)
    if n % 2 == 0:
        return 0.0
    if family.kind == "circular":
        return zeta(n)
    return boundary_constant((n - 1) // 2, family.modulus, prec).value


@dataclass
class LevelCheck:
    """Residuals for the step from level n to level n + 1."""

    n: int
    sign: int
    fd_residual: float = 0.0
    quad_residual: float = 0.0
    points: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.fd_residual <= FD_TOL and self.quad_residual <= QUAD_TOL


@dataclass
class RecursionReport:
    family: Family
    levels: list

    @property
    def ok(self) -> bool:
        return all(level.ok for level in self.levels)

    def max_fd(self) -> float:
        return max((lv.fd_residual for lv in self.levels), default=0.0)

    def max_quad(self) -> float:
        return max((lv.quad_residual for lv in self.levels), default=0.0)


def verify_recursion(
    family: Family,
    n_max: int,
    grid: Sequence[float],
    prec: Precision = DEFAULT_PRECISION,
) -> RecursionReport:
    """Check every step n -> n+1 with n + 1 <= n_max on the grid.

    (i) the central difference of level n+1 (step 1e-5) against s_n * level n;
    (ii) the quadrature lift of level n against the series value of level n+1.
    The same lift operators serve all families; only the sign and the
    boundary constant change.
    """
    if int(n_max) != n_max or n_max < 2:
        raise ValueError(f"n_max must be an integer >= 2, got {n_max!r}")
    levels = []
    for n in range(1, int(n_max)):
        sign = family.recursion_sign(n)
        # quadrature nodes may sit closer to the level-1 singularity than the
        # point-evaluation guard allows
        below = lambda u, n=n: evaluate(family, n, u, prec, gap=0.0).value
        boundary = level_boundary(family, n + 1, prec)
        check = LevelCheck(n, sign)
        for x in grid:
            x = float(x)
            upper = lambda u: evaluate(family, n + 1, u, prec).value
            fd = (upper(x + FD_STEP) - upper(x - FD_STEP)) / (2 * FD_STEP)
            fd_res = abs(fd - sign * below(x))
            if sign > 0 and boundary == 0.0:
                lifted = lift_even(below, x, prec)
            elif sign < 0:
                lifted = lift_odd(below, boundary, x, prec)
            else:
                lifted = boundary + lift_even(below, x, prec)
            quad_res = abs(lifted - upper(x))
            check.points.append((x, fd_res, quad_res))
            check.fd_residual = max(check.fd_residual, fd_res)
            check.quad_residual = max(check.quad_residual, quad_res)
        levels.append(check)
    return RecursionReport(family, levels)
