"""Shared numeric substrate: exact summation, zeta values, adaptive quadrature.

Everything here works in double precision.  Series routines report an
:class:`EvalResult` carrying the value, a claimed absolute error bound and the
number of terms that were summed.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Union

import numpy as np

__all__ = [
    "ClausenError",
    "DomainError",
    "ConvergenceError",
    "Precision",
    "EvalResult",
    "DEFAULT_PRECISION",
    "compensated_sum",
    "bernoulli_even",
    "zeta_int",
    "zeta",
    "adaptive_integrate",
    "lambert_weight",
]

EPS = np.finfo(float).eps


class ClausenError(Exception):
    """Base class for numerical failures raised by this package."""


class DomainError(ClausenError, ValueError):
    """Argument outside the domain of the requested function."""


class ConvergenceError(ClausenError, ArithmeticError):
    """A series or quadrature did not reach its tolerance within budget."""


@dataclass(frozen=True)
class Precision:
    """Accuracy targets shared by every series and integral.

    Parameters
    ----------
    abs_tol : float
        Target absolute error for series evaluations.
    max_terms : int
        Hard cap on the number of series terms.
    quad_tol : float
        Absolute tolerance for adaptive quadrature.
    """

    abs_tol: float = 1e-12
    max_terms: int = 5_000_000
    quad_tol: float = 1e-11

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.quad_tol > 0:
            raise ValueError("quad_tol must be positive")
        if int(self.max_terms) != self.max_terms or self.max_terms < 8:
            raise ValueError("max_terms must be an integer >= 8")


DEFAULT_PRECISION = Precision()

Number = Union[float, complex]


@dataclass(frozen=True)
class EvalResult:
    """A computed value with its claimed absolute error."""

    value: Number
    err_bound: float
    terms_used: int = 0
    route: str = ""

    def __post_init__(self):
        object.__setattr__(self, "err_bound", float(self.err_bound))
        object.__setattr__(self, "terms_used", int(self.terms_used))
        if not self.err_bound >= 0:
            raise ValueError("err_bound must be non-negative")

    def __float__(self):
        return float(self.value)


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum floats without accumulated rounding error.

    Delegates to :func:`math.fsum`, which keeps exact partial sums
    (Shewchuk's error-free transformations) and rounds once at the end.

    >>> compensated_sum([1e16, 1.0, -1e16])
    1.0
    """
    return math.fsum(terms)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    # Akiyama-Tanigawa; B_1 = +1/2 convention, irrelevant for even indices.
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


def bernoulli_even(m: int) -> Fraction:
    """Exact Bernoulli number B_{2m} for 1 <= m <= 15.

    >>> bernoulli_even(2)
    Fraction(-1, 30)
    """
    if int(m) != m or not 1 <= m <= 15:
        raise DomainError(f"bernoulli_even needs 1 <= m <= 15, got {m!r}")
    return _bernoulli_table(2 * int(m))[2 * int(m)]


def _zeta_even_closed(m: int) -> float:
    b = bernoulli_even(m)
    return float(abs(b) * Fraction(2 ** (2 * m - 1), math.factorial(2 * m))) * math.pi ** (2 * m)


def zeta_int(s: int, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Riemann zeta at an integer s >= 2.

    Even ``s`` up to 30 use the Bernoulli closed form.  Otherwise the p-series
    is summed directly up to K terms and the tail is replaced by the midpoint
    of its integral bracket ``[int_{K+1}^inf, int_K^inf] u^-s du``; the half
    width of that bracket is the truncation bound.
    """
    if int(s) != s or s < 2:
        raise DomainError(f"zeta_int needs an integer s >= 2, got {s!r}")
    s = int(s)
    if s % 2 == 0 and s // 2 <= 15:
        value = _zeta_even_closed(s // 2)
        return EvalResult(value, 4 * EPS * value, 0, "bernoulli")

    rounding = 4 * EPS * 2.0
    if prec.abs_tol <= rounding:
        raise ConvergenceError("abs_tol is below the rounding floor of zeta_int")
    value, trunc, k = _pseries(s, prec.abs_tol - rounding, prec.max_terms)
    return EvalResult(value, trunc + 4 * EPS * value, k, "p-series")


def _pseries(s, tol, max_terms):
    def half_width(k):
        return (k ** (1.0 - s) - (k + 1.0) ** (1.0 - s)) / (2.0 * (s - 1))

    k = max(2, math.ceil((0.5 / tol) ** (1.0 / s)))
    while k > 2 and half_width(k - 1) <= tol:
        k -= 1
    while half_width(k) > tol:
        k += 1
    if k > max_terms:
        raise ConvergenceError(f"zeta({s}) needs {k} terms, budget is {max_terms}")
    head = math.fsum(np.arange(1, k + 1, dtype=float) ** -s)
    tail = (k ** (1.0 - s) + (k + 1.0) ** (1.0 - s)) / (2.0 * (s - 1))
    return head + tail, half_width(k), k


@lru_cache(maxsize=None)
def zeta(s: int) -> float:
    """Cached zeta(s) at full double accuracy, for internal use."""
    if s % 2 == 0 and s // 2 <= 15:
        return _zeta_even_closed(s // 2)
    return _pseries(s, 2e-17, 10_000_000)[0]


def lambert_weight(k: int, t: float) -> float:
    """q^{2k} / (1 - q^{2k}) = 1 / (e^{2 pi k t} - 1), without overflow."""
    x = 2 * math.pi * k * t
    return math.exp(-x) / -math.expm1(-x)


# Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[9:14:2] = _WG[2::-1]


def _panel(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.array([f(x) for x in mid + half * _NODES], dtype=float)
    if not np.all(np.isfinite(fx)):
        raise ConvergenceError(f"integrand not finite on [{a}, {b}]")
    k = half * math.fsum(_KRONROD * fx)
    g = half * math.fsum(_GAUSS * fx)
    # rounding floor keeps the estimate honest when |k - g| underflows
    err = abs(k - g) + 50 * EPS * half * math.fsum(np.abs(_KRONROD * fx))
    return k, err


def adaptive_integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    prec: Precision = DEFAULT_PRECISION,
    max_panels: int = 20_000,
) -> EvalResult:
    """Integrate ``f`` over ``[a, b]`` by adaptive Gauss-Kronrod bisection.

    The panel with the largest local error estimate ``|K15 - G7|`` is split
    first, so panels touching an integrable endpoint singularity (the nodes
    never touch the endpoints) get refined until the total estimate drops
    below ``prec.quad_tol``.

    Returns
    -------
    EvalResult
        ``terms_used`` is the number of panels in the final partition.
    """
    a = float(a)
    b = float(b)
    if not a <= b:
        raise DomainError(f"adaptive_integrate needs a <= b, got [{a}, {b}]")
    if a == b:
        return EvalResult(0.0, 0.0, 0, "gauss-kronrod")
    tol = prec.quad_tol
    value, err = _panel(f, a, b)
    # heap entries: (-err, touches endpoint flag, a, b, value)
    heap = [(-err, 0, a, b, value)]
    total_err = err
    panels = 1
    while total_err > tol:
        if panels >= max_panels:
            raise ConvergenceError(
                f"quadrature budget of {max_panels} panels exhausted "
                f"(error estimate {total_err:.3g} > {tol:.3g})"
            )
        neg_err, _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise ConvergenceError(f"panel [{lo}, {hi}] cannot be split further")
        total_err += neg_err
        for p, r in ((lo, mid), (mid, hi)):
            v, e = _panel(f, p, r)
            edge = 0 if p == a or r == b else 1
            heapq.heappush(heap, (-e, edge, p, r, v))
            total_err += e
        panels += 1
    value = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return EvalResult(value, total_err, len(heap), "gauss-kronrod")
