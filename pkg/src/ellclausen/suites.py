"""Property suites behind ``ellclausen verify``.

Each suite returns a :class:`SuiteReport` of named checks, each a maximum
residual compared against a bound.  Grids follow the module invariants; the
user-supplied modulus is added where a suite depends on t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import (
    HYPERBOLIC_NOTE,
    boundary_constant,
    circular_limit_constant,
    degeneration_envelope,
    hyperbolic_limit_constant,
)
from .clausen import Family, circular_cl, elliptic_cl
from .kernel import circular_kernel, k_ell, kernel_coeffs_lambert, kernel_coeffs_taylor
from .numerics import DEFAULT_PRECISION, Precision
from .recursion import FD_TOL, QUAD_TOL, verify_recursion
from .theta import (
    Modulus,
    s_transform_residual,
    theta1,
    theta1_normalized,
    theta1_product,
)

__all__ = [
    "Check",
    "SuiteReport",
    "SUITES",
    "THETA_GRID_V",
    "THETA_GRID_T",
    "X_GRID",
    "theta_limit_envelope",
    "theta_suite",
    "recursion_suite",
    "degeneration_suite",
    "kernel_suite",
    "boundary_suite",
    "run_suite",
]

THETA_GRID_V = tuple(round(0.1 * i, 1) for i in range(1, 10))
THETA_GRID_T = (0.5, 1.0, 2.0, 5.0)
X_GRID = (0.5, 1.0, math.pi, 5.0)
RECURSION_GRID = (0.5, 1.0, 2.0)
KERNEL_T = (0.75, 1.0, 2.0, 5.0)
BOUNDARY_T = (0.75, 1.0, 2.0)


@dataclass
class Check:
    name: str
    max_residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.bound)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "bound": float(self.bound),
            "pass": self.passed,
        }


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "SuiteReport") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(n for n in other.notes if n not in self.notes)

    def to_dict(self) -> dict:
        out = {"suite": self.suite, "checks": [c.to_dict() for c in self.checks]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _with(ts, extra):
    out = list(ts)
    if extra is not None and float(extra) not in out:
        out.append(float(extra))
    return out


def theta_limit_envelope(q: float) -> float:
    """Bound on sup_v |thetahat_1(v) - 2 sin(pi v)|: 8 q^2 / (1 - q^2)^4.

    The supremum sits at v = 1/2 where the difference is
    2 (prod ((1 + q^{2n}) / (1 - q^{2n}))^2 - 1) = 8 q^2 + O(q^4).
    """
    q2 = q * q
    return 8 * q2 / (1 - q2) ** 4


def theta_suite(prec: Precision = DEFAULT_PRECISION) -> SuiteReport:
    odd = per = sp = st = 0.0
    for t in THETA_GRID_T:
        mod = Modulus(t)
        for v in THETA_GRID_V:
            a = theta1(v, mod, prec).value
            odd = max(odd, abs(theta1(-v, mod, prec).value + a))
            per = max(per, abs(theta1(v + 1, mod, prec).value + a))
            sp = max(sp, abs(a - theta1_product(v, mod)))
            st = max(st, s_transform_residual(v, mod, prec))
    return SuiteReport("theta", [
        Check("theta/oddness", odd, 1e-13),
        Check("theta/quasi-periodicity", per, 1e-13),
        Check("theta/series-vs-product", sp, 1e-12),
        Check("theta/s-transform", st, 1e-11),
    ])


def recursion_suite(
    families, n_max: int = 4, grid=RECURSION_GRID, prec: Precision = DEFAULT_PRECISION
) -> SuiteReport:
    report = SuiteReport("recursion")
    for fam in families:
        r = verify_recursion(fam, n_max, grid, prec)
        report.checks.append(Check(f"recursion/{fam}/finite-difference", r.max_fd(), FD_TOL))
        report.checks.append(Check(f"recursion/{fam}/quadrature-lift", r.max_quad(), QUAD_TOL))
    return report


def degeneration_suite(t: float, m_max: int = 3, prec: Precision = DEFAULT_PRECISION) -> SuiteReport:
    mod = Modulus(t)
    q2 = mod.q ** 2
    report = SuiteReport("degeneration", notes=[HYPERBOLIC_NOTE])
    env = degeneration_envelope(mod.t)
    for m in range(1, m_max + 1):
        res = abs(boundary_constant(m, mod, prec).value - circular_limit_constant(m))
        report.checks.append(
            Check(f"degeneration/B{2 * m + 1}(t={mod.t:g})-vs-zeta", res, 3 * env + prec.abs_tol)
        )
    cl = 0.0
    for n in (2, 3, 4):
        for x in X_GRID:
            cl = max(cl, abs(elliptic_cl(n, x, mod, prec).value - circular_cl(n, x, prec).value))
    report.checks.append(
        Check(f"degeneration/ECl-vs-Cl(t={mod.t:g})", cl, 4 * q2 / (1 - q2) + 1e-10)
    )
    sup = 0.0
    for v in np.linspace(0.0, 1.0, 201):
        sup = max(sup, abs(theta1_normalized(v, mod, prec).value - 2 * math.sin(math.pi * v)))
    report.checks.append(
        Check(f"degeneration/theta-circular-limit(t={mod.t:g})", sup, theta_limit_envelope(mod.q) + 1e-13)
    )
    ker = 0.0
    for v in np.linspace(-0.4, 0.4, 81):
        ker = max(ker, abs(k_ell(v, mod, prec).value - circular_kernel(v)))
    report.checks.append(Check(f"degeneration/kernel-circular-limit(t={mod.t:g})", ker, 20 * q2))
    ratio = 0.0
    for m in range(1, m_max + 1):
        r = hyperbolic_limit_constant(m) / circular_limit_constant(m)
        ratio = max(ratio, abs(r / 2.0 ** (1 - 2 * m) - 1))
    report.checks.append(Check("degeneration/hyperbolic-constant-ratio", ratio, 1e-15))
    return report


def kernel_suite(t=None, prec: Precision = DEFAULT_PRECISION) -> SuiteReport:
    ts = _with(KERNEL_T, t)
    report = SuiteReport("kernel")
    dual = 0.0
    even = 0.0
    for tt in ts:
        mod = Modulus(tt)
        a = kernel_coeffs_taylor(mod, 4, prec)
        b = kernel_coeffs_lambert(mod, 4, prec)
        dual = max(dual, max(abs(a[m] - b[m]) for m in range(1, 5)))
        for v in (0.05, 0.1, 0.25, 0.4, 0.6, 0.9):
            even = max(even, abs(k_ell(v, mod, prec).value - k_ell(-v, mod, prec).value))
    report.checks.append(Check("kernel/taylor-vs-lambert", dual, 1e-7))
    report.checks.append(Check("kernel/evenness", even, 1e-13))
    return report


def boundary_suite(t=None, m_max: int = 3, prec: Precision = DEFAULT_PRECISION) -> SuiteReport:
    ts = _with(BOUNDARY_T, t)
    report = SuiteReport("boundary")
    cons = 0.0
    below = 0.0
    table = {}
    for tt in ts:
        mod = Modulus(tt)
        for m in range(1, m_max + 1):
            b = boundary_constant(m, mod, prec).value
            table[tt, m] = b
            cons = max(cons, abs(b - elliptic_cl(2 * m + 1, 0.0, mod, prec).value))
            below = max(below, circular_limit_constant(m) - b)
    report.checks.append(Check("boundary/B-vs-ECl(0)", cons, 1e-12))
    report.checks.append(Check("boundary/above-odd-zeta", max(below, 0.0), 0.0))
    # strictly decreasing in t and in m: record the worst non-decrease
    worst = -math.inf
    sts = sorted(ts)
    for m in range(1, m_max + 1):
        for lo, hi in zip(sts, sts[1:]):
            worst = max(worst, table[hi, m] - table[lo, m])
    for tt in ts:
        for m in range(1, m_max):
            worst = max(worst, table[tt, m + 1] - table[tt, m])
    report.checks.append(Check("boundary/strictly-decreasing", max(worst, 0.0) if worst >= 0 else 0.0, 0.0))
    bridge = 0.0
    for tt in ts:
        mod = Modulus(tt)
        for x in X_GRID:
            a = elliptic_cl(1, x, mod, prec, route="theta").value
            b = elliptic_cl(1, x, mod, prec, route="fourier").value
            bridge = max(bridge, abs(a - b))
    report.checks.append(Check("boundary/ECl1-theta-vs-fourier", bridge, 1e-9))
    return report


SUITES = ("theta", "recursion", "degeneration", "kernel", "boundary")


def run_suite(
    name: str,
    t: float = 1.0,
    m_max: int = 3,
    families=None,
    n_max: int = 4,
    prec: Precision = DEFAULT_PRECISION,
) -> SuiteReport:
    """Run one named suite, or every suite for ``name == "all"``."""
    if families is None:
        families = [Family.circular(), Family.elliptic(t), Family.hyperbolic()]
    runners = {
        "theta": lambda: theta_suite(prec),
        "recursion": lambda: recursion_suite(families, n_max, prec=prec),
        "degeneration": lambda: degeneration_suite(t, m_max, prec),
        "kernel": lambda: kernel_suite(t, prec),
        "boundary": lambda: boundary_suite(t, m_max, prec),
    }
    if name == "all":
        report = SuiteReport("all")
        for key in SUITES:
            report.extend(runners[key]())
        return report
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}")
    return runners[name]()
