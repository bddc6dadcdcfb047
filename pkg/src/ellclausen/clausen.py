"""Circular, elliptic and hyperbolic Clausen functions.

The three families share one recursion, with level n+1 obtained from level n
by integrating from 0 and adding a boundary constant:

    circular    Cl_n(x)      sum_k w_n(kx) / k^n
    elliptic    ECl_n(x; it) sum_k coth(pi k t) w_n(kx) / k^n
    hyperbolic  HCl_n(x)     Li_n(e^{-x}) + (-1)^n x^n / (2 n!)

with w_n = cos for odd n and sin for even n.  Levels alternate in sign for the
trigonometric families, d/dx Cl_{n+1} = +Cl_n for odd n and -Cl_n for even n,
while the hyperbolic family has d/dx HCl_{n+1} = -HCl_n at every level.

Near the origin both Cl_1 and HCl_1 equal -log x plus an even power series
with zeta(2k) coefficients.  Integrating that expansion level by level gives
a rapidly convergent representation on |x| <= pi, which is what the
trigonometric series would take millions of terms to reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .numerics import (
    DEFAULT_PRECISION,
    EPS,
    ConvergenceError,
    DomainError,
    EvalResult,
    Precision,
    lambert_weight,
    zeta,
)
from .theta import Modulus, theta1_normalized

__all__ = [
    "Family",
    "CIRCULAR",
    "HYPERBOLIC",
    "SINGULAR_GAP",
    "fourier_weight",
    "circular_cl",
    "elliptic_cl",
    "elliptic_shift",
    "hyperbolic_cl",
    "clausen_series",
    "evaluate",
]

#: distance from x = 0 (mod 2 pi) inside which level 1 is reported singular
SINGULAR_GAP = 1e-8

_KINDS = ("circular", "elliptic", "hyperbolic")


@dataclass(frozen=True)
class Family:
    """One of the three regimes; the elliptic one carries its modulus t."""

    kind: str
    t: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown family {self.kind!r}; expected one of {_KINDS}")
        if self.kind == "elliptic":
            if self.t is None:
                raise DomainError("elliptic family needs the imaginary part t of tau")
            Modulus(self.t)  # validates t
            object.__setattr__(self, "t", float(self.t))
        elif self.t is not None:
            raise DomainError(f"{self.kind} family takes no modulus")

    @classmethod
    def circular(cls) -> "Family":
        return cls("circular")

    @classmethod
    def elliptic(cls, t: float) -> "Family":
        return cls("elliptic", t)

    @classmethod
    def hyperbolic(cls) -> "Family":
        return cls("hyperbolic")

    @property
    def modulus(self) -> Modulus:
        if self.kind != "elliptic":
            raise DomainError(f"{self.kind} family has no modulus")
        return Modulus(self.t)

    def recursion_sign(self, n: int) -> int:
        """Sign s with d/dx F_{n+1} = s * F_n."""
        if self.kind == "hyperbolic":
            return -1
        return 1 if n % 2 else -1

    def __str__(self):
        return f"elliptic(t={self.t:g})" if self.kind == "elliptic" else self.kind


CIRCULAR = Family.circular()
HYPERBOLIC = Family.hyperbolic()


def fourier_weight(k: int, family: Family) -> float:
    """Weight a_k multiplying w_n(kx)/k^n: 1, or coth(pi k t) for elliptic.

    The elliptic weight is formed as 1 + 2 q^{2k}/(1 - q^{2k}).
    """
    if int(k) != k or k < 1:
        raise DomainError(f"Fourier index must be a positive integer, got {k!r}")
    if family.kind == "circular":
        return 1.0
    if family.kind == "elliptic":
        return 1.0 + 2.0 * lambert_weight(int(k), family.t)
    raise DomainError("the hyperbolic family has no Fourier weights")


def _check_order(n):
    if int(n) != n or n < 1:
        raise DomainError(f"order must be a positive integer, got {n!r}")
    return int(n)


def _check_x(x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("argument must be finite")
    return x


def _reduce_angle(x: float) -> float:
    return math.remainder(x, 2 * math.pi)


# --- log-series representation near the origin -------------------------------

_NSERIES = 40


@lru_cache(maxsize=None)
def _expansion(kind: str, n: int):
    """Level-n expansion  sum a_j x^j + log x sum b_j x^j + sum g_k x^{e_k}.

    Returns (alpha dict, beta dict, g array, e array).
    """
    if n == 1:
        k = np.arange(1, _NSERIES + 1)
        z = np.array([zeta(2 * int(i)) for i in k])
        g = z / (k * (2 * math.pi) ** (2 * k))
        if kind == "hyperbolic":
            g = g * (-1.0) ** k
        return {}, {0: -1.0}, g, 2.0 * k
    alpha, beta, g, e = _expansion(kind, n - 1)
    if kind == "hyperbolic":
        sign = -1
        boundary = zeta(n)
    else:
        sign = 1 if (n - 1) % 2 else -1
        boundary = zeta(n) if n % 2 else 0.0
    new_alpha = {0: boundary}
    new_beta = {}
    for j, a in alpha.items():
        new_alpha[j + 1] = new_alpha.get(j + 1, 0.0) + sign * a / (j + 1)
    for j, b in beta.items():
        new_beta[j + 1] = sign * b / (j + 1)
        new_alpha[j + 1] = new_alpha.get(j + 1, 0.0) - sign * b / (j + 1) ** 2
    return new_alpha, new_beta, sign * g / (e + 1), e + 1


def _log_series(kind: str, n: int, x: float):
    """Evaluate the level-n expansion at 0 <= x <= pi."""
    alpha, beta, g, e = _expansion(kind, n)
    if x == 0.0:
        return alpha.get(0, 0.0), 4 * EPS * abs(alpha.get(0, 0.0)), 0
    lx = math.log(x)
    terms = [a * x ** j for j, a in alpha.items()]
    terms += [b * x ** j * lx for j, b in beta.items()]
    series = g * x ** e
    terms += list(series)
    ratio = (x / (2 * math.pi)) ** 2
    tail = abs(series[-1]) * ratio / (1 - ratio)
    total = math.fsum(terms)
    rounding = 4 * EPS * math.fsum(abs(s) for s in terms)
    return total, tail + rounding, len(terms)


# --- circular ----------------------------------------------------------------


def circular_cl(
    n: int, x: float, prec: Precision = DEFAULT_PRECISION, *, gap: float = SINGULAR_GAP
) -> EvalResult:
    """Classical Clausen function Cl_n(x).

    n = 1 is the closed form -log|2 sin(x/2)|, refused within ``gap`` of
    x = 0 (mod 2 pi); higher orders use the integrated log-series on the
    reduced angle, with parity restoring the sign.
    """
    n = _check_order(n)
    theta = _reduce_angle(_check_x(x))
    if n == 1:
        if abs(theta) < gap or theta == 0.0:
            raise DomainError(f"Cl_1 is logarithmically singular at x = {x!r} (mod 2 pi)")
        value = -math.log(2 * abs(math.sin(0.5 * theta)))
        return EvalResult(value, 4 * EPS * (1 + abs(value)), 0, "closed-form")
    value, err, used = _log_series("circular", n, abs(theta))
    if n % 2 == 0 and theta < 0:
        value = -value
    return EvalResult(value, err, used, "log-series")


# --- elliptic ----------------------------------------------------------------


def _correction(n: int, theta: float, t: float, prec: Precision):
    """sum_k 2 q^{2k}/(1-q^{2k}) w_n(k theta)/k^n with a geometric tail bound."""
    r = math.exp(-2 * math.pi * t)
    trig = math.cos if n % 2 else math.sin
    terms = []
    k = 1
    while True:
        lk = lambert_weight(k, t)
        terms.append(2 * lk * trig(k * theta) / k ** n)
        nxt = 2 * lambert_weight(k + 1, t) / (k + 1) ** n
        tail = nxt / (1 - r)
        if tail <= 1e-2 * EPS or nxt == 0.0:
            break
        k += 1
        if k > prec.max_terms:
            raise ConvergenceError(f"elliptic correction needs more than {prec.max_terms} terms")
    total = math.fsum(terms)
    return total, tail + 4 * EPS * math.fsum(abs(s) for s in terms), k


def elliptic_shift(mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """C(t) = 2 sum_k q^{2k} / (k (1 - q^{2k})).

    Bridges the two n = 1 routes: ECl_1(x) = -log thetahat_1(x / 2 pi) + C(t).
    """
    mod = mod if isinstance(mod, Modulus) else Modulus(mod)
    value, err, k = _correction(1, 0.0, mod.t, prec)
    return EvalResult(value, err, k, "lambert")


def elliptic_cl(
    n: int,
    x: float,
    mod,
    prec: Precision = DEFAULT_PRECISION,
    route: Optional[str] = None,
    *,
    gap: float = SINGULAR_GAP,
) -> EvalResult:
    """Elliptic Clausen function ECl_n(x; it) = sum_k coth(pi k t) w_n(kx)/k^n.

    Routes
    ------
    ``"theta"`` (n = 1 only, the default there)
        -log thetahat_1(x / 2 pi | it) + C(t).
    ``"fourier"``
        Cl_n(x) + sum_k (coth(pi k t) - 1) w_n(kx)/k^n; the weight excess
        decays like q^{2k}, so only the circular part needs acceleration.
    """
    n = _check_order(n)
    mod = mod if isinstance(mod, Modulus) else Modulus(mod)
    x = _check_x(x)
    if route is None:
        route = "theta" if n == 1 else "fourier"
    theta = _reduce_angle(x)
    if n == 1 and (abs(theta) < gap or theta == 0.0):
        raise DomainError(f"ECl_1 is logarithmically singular at x = {x!r} (mod 2 pi)")
    if route == "theta":
        if n != 1:
            raise DomainError("the theta route exists only at order 1")
        th = theta1_normalized(abs(theta) / (2 * math.pi), mod, prec)
        shift = elliptic_shift(mod, prec)
        value = -math.log(th.value) + shift.value
        err = th.err_bound / th.value + shift.err_bound + 4 * EPS * abs(value)
        return EvalResult(value, err, th.terms_used + shift.terms_used, "theta")
    if route != "fourier":
        raise DomainError(f"unknown route {route!r}")
    base = circular_cl(n, theta, prec, gap=gap)
    corr, cerr, k = _correction(n, theta, mod.t, prec)
    value = base.value + corr
    return EvalResult(value, base.err_bound + cerr, base.terms_used + k, "fourier")


# --- hyperbolic --------------------------------------------------------------


def hyperbolic_cl(n: int, x: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Hyperbolic Clausen function HCl_n(x) = Li_n(e^{-x}) + (-1)^n x^n/(2 n!).

    HCl_1(x) = -log(2 sinh(x/2)).  Defined for x > 0 at n = 1 and x >= 0
    above; HCl_n(0) = zeta(n) for n >= 2.
    """
    n = _check_order(n)
    x = _check_x(x)
    if x < 0 or (n == 1 and x == 0):
        raise DomainError(f"HCl_{n} needs x {'>' if n == 1 else '>='} 0, got {x!r}")
    if n == 1:
        value = -0.5 * x - math.log(-math.expm1(-x))
        return EvalResult(value, 4 * EPS * (1 + abs(value)), 0, "closed-form")
    if x <= math.pi:
        value, err, used = _log_series("hyperbolic", n, x)
        return EvalResult(value, err, used, "log-series")
    r = math.exp(-x)
    terms = []
    k = 1
    while True:
        terms.append(math.exp(-k * x) / k ** n)
        nxt = math.exp(-(k + 1) * x) / (k + 1) ** n
        if nxt / (1 - r) <= 1e-2 * EPS * terms[0] or nxt == 0.0:
            break
        k += 1
    poly = (-1) ** n * x ** n / (2 * math.factorial(n))
    li = math.fsum(terms)
    value = li + poly
    err = nxt / (1 - r) + 4 * EPS * (li + abs(poly))
    return EvalResult(value, err, k, "polylog")


# --- plain weighted Fourier series (oracle) -----------------------------------


def clausen_series(
    n: int,
    x: float,
    family: Family = CIRCULAR,
    prec: Precision = DEFAULT_PRECISION,
    chunk: int = 1 << 20,
) -> EvalResult:
    """Sum a_k w_n(kx)/k^n term by term until a rigorous tail bound is met.

    The tail after K terms is bounded by the smaller of the Abel estimate
    a_{K+1} / ((K+1)^n |sin(x/2)|) and the absolute bound
    a_{K+1} K^{1-n}/(n-1).  Slow by design: this is the reference the
    accelerated routes are checked against.
    """
    n = _check_order(n)
    x = _check_x(x)
    if family.kind == "hyperbolic":
        raise DomainError("the hyperbolic family is not a Fourier series")
    a1 = fourier_weight(1, family)
    s = abs(math.sin(0.5 * x))

    def bound(K):
        a = fourier_weight(K + 1, family) if family.kind == "elliptic" else 1.0
        cands = []
        if s > 0:
            cands.append(a / ((K + 1) ** n * s))
        if n >= 2:
            cands.append(a * K ** (1.0 - n) / (n - 1))
        return min(cands) if cands else math.inf

    tol = prec.abs_tol * 0.5
    K = 8
    while bound(K) > tol:
        K *= 2
        if K > 4 * prec.max_terms:
            break
    lo, hi = K // 2, K
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) > tol:
            lo = mid
        else:
            hi = mid
    K = hi
    if K > prec.max_terms or bound(K) > tol:
        raise ConvergenceError(
            f"direct series for order {n} at x = {x:g} needs more than {prec.max_terms} terms"
        )
    trig = np.cos if n % 2 else np.sin
    parts = []
    for start in range(1, K + 1, chunk):
        k = np.arange(start, min(start + chunk, K + 1), dtype=float)
        if family.kind == "elliptic":
            a = 1.0 + 2.0 * np.exp(-2 * math.pi * family.t * k) / -np.expm1(-2 * math.pi * family.t * k)
        else:
            a = 1.0
        parts.append(math.fsum(a * trig(k * x) / k ** n))
    value = math.fsum(parts)
    # relative rounding per term, plus the k x argument error of each trig call
    if n == 1:
        harmonic = float(K)
    elif n == 2:
        harmonic = 1.0 + math.log(K)
    else:
        harmonic = zeta(n - 1)
    rounding = 4 * EPS * a1 * (2.0 + abs(x) * harmonic)
    return EvalResult(value, bound(K) + rounding, K, "direct")


def evaluate(
    family: Family,
    n: int,
    x: float,
    prec: Precision = DEFAULT_PRECISION,
    *,
    gap: float = SINGULAR_GAP,
) -> EvalResult:
    """Dispatch to the level-n function of ``family``."""
    if family.kind == "circular":
        return circular_cl(n, x, prec, gap=gap)
    if family.kind == "elliptic":
        return elliptic_cl(n, x, family.modulus, prec, gap=gap)
    return hyperbolic_cl(n, x, prec)
