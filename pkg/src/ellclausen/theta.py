"""Jacobi theta_1 on the imaginary axis tau = i t.

Conventions: nome q = exp(-pi t) and a period-1 argument v, so that

    theta1(v | it) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi v)

vanishes at the integers and, after dividing by q^{1/4} prod(1-q^{2n})^3,
tends to 2 sin(pi v) as t -> infinity.

For t < 0.5 the nome is close to 1 and the series is slow, so evaluation is
routed through the modular S-transform to the dual modulus i/t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .numerics import (
    DEFAULT_PRECISION,
    EPS,
    ConvergenceError,
    DomainError,
    EvalResult,
    Precision,
)

__all__ = [
    "Modulus",
    "nome",
    "theta1",
    "theta1_product",
    "theta1_prime0",
    "theta1_prime0_product",
    "theta1_normalized",
    "theta1_normalized_product",
    "s_transform_residual",
    "S_TRANSFORM_THRESHOLD",
]

#: below this imaginary part every evaluation goes through the dual modulus
S_TRANSFORM_THRESHOLD = 0.5

_LOG_OVERFLOW = 700.0


def nome(t: float) -> float:
    """Nome q = exp(-pi t) of tau = i t.

    >>> round(nome(1.0), 10)
    0.0432139183
    """
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"imaginary part of tau must be positive and finite, got {t!r}")
    return math.exp(-math.pi * t)


@dataclass(frozen=True)
class Modulus:
    """The point tau = i t of the upper half plane, with its cached nome.

    For very large ``t`` the nome underflows to 0.0, which is a valid flushed
    evaluation of the circular limit.
    """

    t: float
    q: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "q", nome(self.t))

    @property
    def dual(self) -> "Modulus":
        """Image under tau -> -1/tau, i.e. i t -> i / t."""
        return Modulus(1.0 / self.t)


def _as_modulus(mod) -> Modulus:
    return mod if isinstance(mod, Modulus) else Modulus(mod)


def _reduce(v: complex):
    """Shift Re v into [-1/2, 1/2]; each unit shift flips the sign."""
    shift = round(v.real)
    sign = -1.0 if shift % 2 else 1.0
    return v - shift, sign


def _core_series(v: complex, q: float):
    """sum_n (-1)^n q^{n(n+1)} sin((2n+1) pi v), i.e. theta1 / (2 q^{1/4}).

    Returns (sum, absolute error bound, terms used).  ``v`` must already be
    reduced so that |Re v| <= 1/2.
    """
    y = abs(v.imag)
    logq = math.log(q) if q > 0 else -math.inf
    # largest log-magnitude of any term, for the overflow guard
    if q > 0:
        n_peak = max(0.0, y * math.pi / (-logq) - 0.5)
        peak = max(
            n * (n + 1) * logq + (2 * n + 1) * math.pi * y
            for n in (math.floor(n_peak), math.ceil(n_peak))
        )
    else:
        peak = math.pi * y
    if peak > _LOG_OVERFLOW:
        raise DomainError(
            f"theta series overflows for |Im v| = {y:.6g} at q = {q:.6g}; "
            "reduce the imaginary part of the argument"
        )
    total = 0j
    magnitude = 0.0
    n = 0
    while True:
        if n > 0 and q == 0.0:
            tail = 0.0
            break
        lw = n * (n + 1) * logq if n else 0.0
        term = cmath.sin((2 * n + 1) * math.pi * v) * math.exp(lw)
        total += -term if n % 2 else term
        magnitude += abs(term)
        n += 1
        # bound on |term_n|; consecutive ratios q^{2n+2} e^{2 pi y} shrink
        log_next = n * (n + 1) * logq + (2 * n + 1) * math.pi * y
        ratio = math.exp(2 * (n + 1) * logq + 2 * math.pi * y)
        if ratio < 0.5:
            tail = math.exp(log_next) / (1.0 - ratio)
            if tail <= EPS * 1e-3 * max(magnitude, 1e-300) or log_next < -745:
                break
        if n > 10_000:
            raise ConvergenceError("theta series did not converge")
    return total, tail + 4 * EPS * magnitude, n


def _direct(v: complex, mod: Modulus):
    v, sign = _reduce(complex(v))
    s, err, n = _core_series(v, mod.q)
    pre = 2.0 * mod.q ** 0.25
    return sign * pre * s, pre * err, n


def _core_prime0(q: float):
    """sum_n (-1)^n (2n+1) q^{n(n+1)} = prod_{n>=1} (1 - q^{2n})^3."""
    total = 0.0
    magnitude = 0.0
    n = 0
    while True:
        term = (2 * n + 1) * q ** (n * (n + 1))
        total += -term if n % 2 else term
        magnitude += term
        n += 1
        nxt = (2 * n + 1) * q ** (n * (n + 1))
        if nxt <= EPS * 1e-3 * magnitude:
            return total, 2 * nxt + 4 * EPS * magnitude, n


def theta1(v, mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Jacobi theta_1(v | i t) for real or complex ``v``.

    Uses the sine series directly for t >= 0.5 and the S-transform

        theta1(v | it) = i t^{-1/2} exp(-pi v^2 / t) theta1(-i v / t | i / t)

    otherwise.  The value is always returned as a complex number.
    """
    mod = _as_modulus(mod)
    v = complex(v)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise DomainError("theta argument must be finite")
    if mod.t >= S_TRANSFORM_THRESHOLD:
        value, err, n = _direct(v, mod)
        route = "series"
    else:
        v, sign = _reduce(v)
        dual = mod.dual
        w, err, n = _direct(-1j * v / mod.t, dual)
        factor = 1j * sign * cmath.exp(-math.pi * v * v / mod.t) / math.sqrt(mod.t)
        value = factor * w
        err = abs(factor) * err
        route = "s-transform"
    return EvalResult(complex(value), float(err), n, route)


def theta1_product(v, mod) -> complex:
    """theta_1 from the Jacobi triple product (oracle for the series)."""
    mod = _as_modulus(mod)
    v, sign = _reduce(complex(v))
    q2 = mod.q ** 2
    e = cmath.exp(2j * math.pi * v)
    growth = math.exp(2 * math.pi * abs(v.imag))
    prod = 1.0 + 0j
    qn = q2
    while qn * growth > EPS * 1e-3:
        prod *= (1 - qn) * (1 - qn * e) * (1 - qn / e)
        qn *= q2
    return sign * 2 * mod.q ** 0.25 * cmath.sin(math.pi * v) * prod


def theta1_prime0(mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """theta_1'(0 | i t) from the differentiated sine series.

    For t < 0.5 the weight-3/2 law theta1'(0|it) = t^{-3/2} theta1'(0|i/t) is
    used.
    """
    mod = _as_modulus(mod)
    if mod.t >= S_TRANSFORM_THRESHOLD:
        s, err, n = _core_prime0(mod.q)
        pre = 2 * math.pi * mod.q ** 0.25
        return EvalResult(pre * s, pre * err, n, "series")
    dual = mod.dual
    s, err, n = _core_prime0(dual.q)
    pre = 2 * math.pi * dual.q ** 0.25 * mod.t ** -1.5
    return EvalResult(pre * s, pre * err, n, "s-transform")


def theta1_prime0_product(mod) -> float:
    """2 pi q^{1/4} prod (1 - q^{2n})^3."""
    mod = _as_modulus(mod)
    q2 = mod.q ** 2
    prod = 1.0
    qn = q2
    while qn > EPS * 1e-3:
        prod *= (1 - qn) ** 3
        qn *= q2
    return 2 * math.pi * mod.q ** 0.25 * prod


def theta1_normalized(v: float, mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """theta_1(v | it) / (q^{1/4} prod (1 - q^{2n})^3), real ``v``.

    Equivalently 2 pi theta_1(v) / theta_1'(0); tends to 2 sin(pi v) in the
    circular limit t -> infinity.  The q^{1/4} prefactor cancels analytically,
    so large t never underflows.
    """
    mod = _as_modulus(mod)
    v = float(v)
    if not math.isfinite(v):
        raise DomainError("theta argument must be finite")
    v, sign = _reduce(complex(v))
    if mod.t >= S_TRANSFORM_THRESHOLD:
        s, es, n = _core_series(v, mod.q)
        d, ed, _ = _core_prime0(mod.q)
        value = 2 * sign * s.real / d
        route = "series"
    else:
        dual = mod.dual
        w, es, n = _core_series(-1j * v / mod.t, dual.q)
        d, ed, _ = _core_prime0(dual.q)
        scale = mod.t * math.exp(-math.pi * v.real ** 2 / mod.t)
        # i * sin(-i y) = sinh(y): the product is real
        value = 2 * sign * scale * (1j * w).real / d
        es *= scale
        route = "s-transform"
    err = 2 * es / d + abs(value) * (ed / d + 4 * EPS)
    return EvalResult(float(value), float(err), n, route)


def theta1_normalized_product(v: float, mod) -> float:
    """2 sin(pi v) prod |1 - q^{2n} e^{2 pi i v}|^2 / (1 - q^{2n})^2."""
    mod = _as_modulus(mod)
    q2 = mod.q ** 2
    c = math.cos(2 * math.pi * v)
    prod = 1.0
    qn = q2
    while qn > EPS * 1e-3:
        prod *= (1 - 2 * qn * c + qn * qn) / (1 - qn) ** 2
        qn *= q2
    return 2 * math.sin(math.pi * v) * prod


def s_transform_residual(v: float, mod, prec: Precision = DEFAULT_PRECISION) -> float:
    """|theta1(v/(it) | i/t) - (-i) t^{1/2} e^{pi v^2 / t} theta1(v | it)|.

    Both sides are summed from their own sine series, never through the
    S-transform route, so the residual is an honest self-test.
    """
    mod = _as_modulus(mod)
    v = float(v)
    lhs, _, _ = _direct(-1j * v / mod.t, mod.dual)
    rhs, _, _ = _direct(v, mod)
    rhs *= -1j * math.sqrt(mod.t) * math.exp(math.pi * v * v / mod.t)
    return abs(lhs - rhs)
