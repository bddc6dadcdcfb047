"""Logarithmic kernels and the Taylor coefficients of the elliptic kernel.

All three kernels share one normalization, finite at the origin:

    circular    -2 log(sin(pi v) / (pi v))
    elliptic    -2 log(theta1(v | it) / (theta1'(0 | it) v))
    hyperbolic  -2 log(sinh(pi v) / (pi v))

The elliptic kernel has the expansion K(v) = sum_m c_{2m}(t) v^{2m}.  The
coefficients are available from two independent routes: a fit to kernel
samples on a circle around the origin, and the Lambert series

    c_{2m} = 2 zeta(2m)/m + 4 (-1)^m (2 pi)^{2m}/(2m)! sum_k k^{2m-1} q^{2k}/(1-q^{2k})

obtained by expanding log theta1 through the Jacobi triple product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_PRECISION,
    EPS,
    ConvergenceError,
    DomainError,
    EvalResult,
    Precision,
    compensated_sum,
    lambert_weight,
    zeta,
)
from .theta import S_TRANSFORM_THRESHOLD, Modulus, _as_modulus, _core_prime0, _core_series

__all__ = [
    "KernelCoefficients",
    "MAX_COEFFS",
    "k_ell",
    "circular_kernel",
    "hyperbolic_kernel",
    "kernel_coeffs_taylor",
    "kernel_coeffs_lambert",
]

MAX_COEFFS = 8


def _log_sinc(y: float) -> float:
    """log(sin y / y) with full relative accuracy near y = 0."""
    if y == 0.0:
        return 0.0
    if abs(y) < 1.0:
        y2 = y * y
        term = 1.0
        acc = 0.0
        k = 1
        while True:
            term *= -y2 / ((2 * k) * (2 * k + 1))
            acc += term
            if abs(term) <= EPS * 1e-2 * abs(acc):
                break
            k += 1
        return math.log1p(acc)
    return math.log(math.sin(y) / y)


def _log_sinc_pi(v: float) -> float:
    """log(sin(pi v) / (pi v)) for |v| < 1, exact in the reflection 1 - |v|."""
    a = abs(v)
    if math.pi * a < 1.0:
        return _log_sinc(math.pi * a)
    # 1 - a is exact here (Sterbenz), so sin stays accurate as a -> 1
    return math.log(math.sin(math.pi * (1.0 - a)) / (math.pi * a))


def _log_sinhc(y: float) -> float:
    """log(sinh y / y), accurate near 0 and free of overflow for large y."""
    y = abs(y)
    if y == 0.0:
        return 0.0
    if y < 1.0:
        y2 = y * y
        term = 1.0
        acc = 0.0
        k = 1
        while True:
            term *= y2 / ((2 * k) * (2 * k + 1))
            acc += term
            if term <= EPS * 1e-2 * acc:
                break
            k += 1
        return math.log1p(acc)
    return y + math.log1p(-math.exp(-2 * y)) - math.log(2 * y)


def circular_kernel(v: float) -> float:
    """-2 log(sin(pi v) / (pi v)) on |v| < 1, equal to 0 at v = 0."""
    v = float(v)
    if not abs(v) < 1:
        raise DomainError(f"circular kernel needs |v| < 1, got {v!r}")
    return -2.0 * _log_sinc_pi(v)


def hyperbolic_kernel(v: float) -> float:
    """-2 log(sinh(pi v) / (pi v)), equal to 0 at v = 0."""
    v = float(v)
    if not math.isfinite(v):
        raise DomainError("hyperbolic kernel needs a finite argument")
    return -2.0 * _log_sinhc(math.pi * v)


def _theta_shape_direct(v, q):
    # sum_n (-1)^n q^{n(n+1)} (sin((2n+1)y)/sin(y) - (2n+1)), y = pi v,
    # written as -4 sum_n (-1)^n q^{n(n+1)} sum_{j<=n} sin^2(j y)
    y = math.pi * v
    terms = []
    magnitude = 0.0
    inner = 0.0
    n = 1
    while q > 0:
        inner += math.sin(n * y) ** 2
        w = q ** (n * (n + 1))
        term = -4.0 * w * inner
        terms.append(-term if n % 2 else term)
        magnitude += abs(term)
        n += 1
        if q ** (n * (n + 1)) * 4 * n <= EPS * 1e-3 * max(magnitude, 1e-300):
            break
    return compensated_sum(terms), 4 * EPS * magnitude, n


def _theta_shape_dual(w, q):
    # hyperbolic twin: 4 sum_n (-1)^n q^{n(n+1)} sum_{j<=n} sinh^2(j pi w),
    # each term formed in log space
    b = math.pi * abs(w)
    logq = math.log(q)
    terms = []
    magnitude = 0.0
    n = 1
    while True:
        inner = 0.0
        base = n * (n + 1) * logq
        for j in range(1, n + 1):
            a = base + 2 * j * b
            inner += math.exp(a) * (0.5 * -math.expm1(-2 * j * b)) ** 2 if a > -745 else 0.0
        term = 4.0 * inner
        terms.append(-term if n % 2 else term)
        magnitude += abs(term)
        n += 1
        log_next = n * (n + 1) * logq + 2 * n * b + math.log(4 * n)
        if log_next < math.log(EPS * 1e-3 * max(magnitude, 1e-300)) or log_next < -745:
            break
        if n > 10_000:
            raise ConvergenceError("dual kernel series did not converge")
    return compensated_sum(terms), 4 * EPS * magnitude, n


def k_ell(v: float, mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Elliptic kernel -2 log(theta1(v|it) / (theta1'(0|it) v)) on |v| < 1.

    The ratio is split as (sin(pi v)/(pi v)) * (1 + D(v)/S0) with D and S0
    summed from the theta sine series, so the kernel keeps full relative
    accuracy as v -> 0.  For t < 0.5 the same split is made on the dual side
    of the S-transform, which yields

        K(v | it) = 2 pi v^2 / t + K_hyp(v / t) - 2 log(1 + D_dual / S0_dual).
    """
    mod = _as_modulus(mod)
    v = float(v)
    if not abs(v) < 1:
        raise DomainError(f"elliptic kernel is singular at the zeros of theta1; need |v| < 1, got {v!r}")
    if v == 0.0:
        return EvalResult(0.0, 0.0, 0, "limit")
    if mod.t >= S_TRANSFORM_THRESHOLD:
        s0, e0, _ = _core_prime0(mod.q)
        d, ed, n = _theta_shape_direct(v, mod.q)
        value = -2.0 * (_log_sinc_pi(v) + math.log1p(d / s0))
        route = "series"
    else:
        dual = mod.dual
        s0, e0, _ = _core_prime0(dual.q)
        d, ed, n = _theta_shape_dual(v / mod.t, dual.q)
        value = (
            2 * math.pi * v * v / mod.t
            + hyperbolic_kernel(v / mod.t)
            - 2.0 * math.log1p(d / s0)
        )
        route = "s-transform"
    err = 2 * (ed + abs(d) * e0 / s0) / (s0 + d) + 8 * EPS * abs(value)
    # rounding in multiples of v is amplified by the log singularity at |v| = 1
    err += 4 * EPS * abs(v) / (1.0 - abs(v))
    return EvalResult(value, err, n, route)


@dataclass(frozen=True)
class KernelCoefficients:
    """Taylor coefficients c_{2m}(t), m = 1..M, of the elliptic kernel."""

    t: float
    coeffs: dict = field(default_factory=dict)
    route: str = "taylor"
    errors: dict = field(default_factory=dict)

    def __getitem__(self, m: int) -> float:
        return self.coeffs[m]

    @property
    def M(self) -> int:
        return len(self.coeffs)


def _check_M(M):
    if int(M) != M or not 1 <= M <= MAX_COEFFS:
        raise DomainError(f"number of kernel coefficients must be in 1..{MAX_COEFFS}, got {M!r}")
    return int(M)


CONTOUR_NODES = 128
CONTOUR_FRACTION = 0.5


def _log_ratio(v: complex, mod: Modulus) -> complex:
    """log(theta1(v) / (theta1'(0) v)) for complex |v| <= min(1, t) / 2.

    The q^{1/4} prefactors cancel analytically, so any t is safe.  For
    t < 0.5 the dual side gives -pi v^2 / t + log(S(w) / (pi P0 w)) with
    w = -i v / t.  The principal branch is returned; callers unwrap.
    """
    if mod.t >= S_TRANSFORM_THRESHOLD:
        s, _, _ = _core_series(v, mod.q)
        p0, _, _ = _core_prime0(mod.q)
        return cmath.log(s / (math.pi * p0 * v))
    dual = mod.dual
    w = -1j * v / mod.t
    s, _, _ = _core_series(w, dual.q)
    p0, _, _ = _core_prime0(dual.q)
    return -math.pi * v * v / mod.t + cmath.log(s / (math.pi * p0 * w))


def kernel_coeffs_taylor(mod, M: int, prec: Precision = DEFAULT_PRECISION) -> KernelCoefficients:
    """c_{2m}(t) from kernel samples on a circle around the origin.

    The kernel is sampled at N = 128 equispaced points of |v| = r with
    r = min(1, t) / 2, half the distance to the nearest zero of theta1.  On
    that grid the least-squares polynomial fit has diagonal normal equations,
    so the fitted Taylor coefficients are the discrete Fourier coefficients
    of the samples divided by r^{2m}.  Aliasing is of relative size 2^{-N}
    and rounding is amplified only by r^{-2m}, which keeps all eight
    coefficients accurate.  Only kernel values enter, so this route is
    independent of the Lambert route.

    ``errors`` combines the rounding level of the samples, the highest
    Fourier modes and the negative modes, which vanish up to aliasing.
    """
    mod = _as_modulus(mod)
    M = _check_M(M)
    N = CONTOUR_NODES
    r = CONTOUR_FRACTION * min(1.0, mod.t)
    z = r * np.exp(2j * np.pi * np.arange(N) / N)
    logs = np.array([_log_ratio(complex(x), mod) for x in z])
    # follow the analytic branch around the circle, starting from log 1 = 0 at v = r
    logs = logs.real + 1j * np.unwrap(logs.imag)
    K = -2.0 * logs
    a = np.fft.fft(K) / N
    peak = float(np.max(np.abs(K)))
    # modes near N/2 sit at the rounding level once the samples are resolved
    floor = float(np.max(np.abs(a[N // 2 - 8: N // 2 + 9])))
    if not floor <= max(1e3 * EPS * peak, prec.abs_tol):
        raise ConvergenceError(f"kernel samples not resolved on the contour (mode floor {floor:.3g})")
    noise = 16 * EPS * peak + floor
    coeffs, errors = {}, {}
    for m in range(1, M + 1):
        scale = r ** (2 * m)
        coeffs[m] = float(a[2 * m].real / scale)
        # the analytic kernel has no negative modes, so a[N - 2m] measures aliasing
        errors[m] = float((noise + abs(a[2 * m].imag) + abs(a[N - 2 * m])) / scale)
    return KernelCoefficients(mod.t, coeffs, "taylor", errors)


def _lambert_moment(p: int, t: float, prec: Precision):
    """sum_k k^p q^{2k} / (1 - q^{2k}) with q = e^{-pi t}, and its tail bound."""
    q2 = math.exp(-2 * math.pi * t)
    terms = []
    k = 1
    while True:
        terms.append(k ** p * lambert_weight(k, t))
        ratio = ((k + 2) / (k + 1)) ** p * q2
        nxt = (k + 1) ** p * lambert_weight(k + 1, t)
        if ratio < 1 and nxt / (1 - ratio) <= EPS * 1e-2 * max(math.fsum(terms), 1e-300):
            tail = nxt / (1 - ratio)
            break
        k += 1
        if k > prec.max_terms:
            raise ConvergenceError("Lambert series did not converge")
    return compensated_sum(terms), tail, k


def kernel_coeffs_lambert(mod, M: int, prec: Precision = DEFAULT_PRECISION) -> KernelCoefficients:
    """c_{2m}(t) from the circular value 2 zeta(2m)/m plus a Lambert series.

    For t < 0.5 the series is summed at the dual modulus 1/t instead, where
    the kernel's S-transform image gives

        c_{2m}(t) = t^{-2m} [(-1)^m 2 zeta(2m)/m
                             + 4 (2 pi)^{2m}/(2m)! sum_k k^{2m-1} L_k(1/t)]
                    + [m = 1] 2 pi / t,

    so the summed series always decays at least like e^{-pi k}.
    """
    mod = _as_modulus(mod)
    M = _check_M(M)
    direct = mod.t >= S_TRANSFORM_THRESHOLD
    t_sum = mod.t if direct else 1.0 / mod.t
    coeffs = {}
    errors = {}
    for m in range(1, M + 1):
        lam, tail, _ = _lambert_moment(2 * m - 1, t_sum, prec)
        pref = 4 * (2 * math.pi) ** (2 * m) / math.factorial(2 * m)
        base = 2 * zeta(2 * m) / m
        if direct:
            pref *= (-1) ** m
            value = base + pref * lam
            err = abs(pref) * (tail + 4 * EPS * lam) + 4 * EPS * abs(value)
        else:
            scale = mod.t ** (-2 * m)
            value = scale * ((-1) ** m * base + pref * lam)
            if m == 1:
                value += 2 * math.pi / mod.t
            err = scale * pref * (tail + 4 * EPS * lam) + 8 * EPS * (abs(value) + scale * base)
        coeffs[m] = value
        errors[m] = err
    return KernelCoefficients(mod.t, coeffs, "lambert" if direct else "lambert-s", errors)
