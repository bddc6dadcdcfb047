"""Odd boundary constants B_{2m+1}(it) = ECl_{2m+1}(0; it) and their limits.

    B_{2m+1}(it) = sum_k coth(pi k t) / k^{2m+1}
                 = zeta(2m+1) + 2 sum_k 1 / (k^{2m+1} (e^{2 pi k t} - 1))

so B_{2m+1} decreases to zeta(2m+1) as t -> infinity, with leading excess
2 q^2.  As t -> 0 the sum grows like zeta(2m+2) / (pi t); no finite
hyperbolic limit exists for this normalization, which the degeneration report
states next to the tabulated hyperbolic constant zeta(2m+1) / 2^{2m-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

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
from .theta import Modulus

__all__ = [
    "BoundaryFamily",
    "DegenerationRow",
    "DegenerationReport",
    "HYPERBOLIC_NOTE",
    "boundary_constant",
    "boundary_family",
    "circular_limit_constant",
    "hyperbolic_limit_constant",
    "degeneration_envelope",
    "degeneration_report",
]

HYPERBOLIC_NOTE = (
    "hyperbolic branch: the tabulated constant zeta(2m+1)/2^(2m-1) is taken as "
    "stated; it is not reproduced by the hyperbolic family implemented here, "
    "whose boundary values are HCl_(2m+1)(0) = zeta(2m+1), nor by the limit "
    "t -> 0 of B_(2m+1)(it), which diverges like zeta(2m+2)/(pi t). The "
    "regularization that would produce the factor 2^(1-2m) is unspecified."
)


def _check_m(m):
    if int(m) != m:
        raise DomainError(f"m must be an integer, got {m!r}")
    if m == 0:
        raise DomainError(
            "B_1 = ECl_1(0) does not exist: level 1 has a logarithmic singularity at x = 0"
        )
    if m < 0:
        raise DomainError(f"m must be >= 1, got {m!r}")
    return int(m)


def boundary_constant(m: int, mod, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """B_{2m+1}(it) for m >= 1, with a geometric tail bound on the q-series."""
    m = _check_m(m)
    mod = mod if isinstance(mod, Modulus) else Modulus(mod)
    s = 2 * m + 1
    r = math.exp(-2 * math.pi * mod.t)
    terms = []
    k = 1
    while True:
        terms.append(2 * lambert_weight(k, mod.t) / k ** s)
        nxt = 2 * lambert_weight(k + 1, mod.t) / (k + 1) ** s
        tail = nxt / (1 - r)
        if tail <= 1e-2 * EPS or nxt == 0.0:
            break
        k += 1
        if k > prec.max_terms:
            raise ConvergenceError(f"B_{s} q-series needs more than {prec.max_terms} terms")
    excess = math.fsum(terms)
    base = zeta(s)
    value = base + excess
    return EvalResult(value, tail + 4 * EPS * (base + excess), k, "lambert")


def circular_limit_constant(m: int) -> float:
    """zeta(2m+1), the t -> infinity limit of B_{2m+1}(it)."""
    return zeta(_check_m(m) * 2 + 1)


def hyperbolic_limit_constant(m: int) -> float:
    """zeta(2m+1) / 2^{2m-1}, the tabulated hyperbolic boundary constant."""
    m = _check_m(m)
    return math.ldexp(zeta(2 * m + 1), 1 - 2 * m)


def degeneration_envelope(t: float) -> float:
    """Predicted size 2 q^2 / (1 - q^2) of B_{2m+1}(it) - zeta(2m+1)."""
    q2 = math.exp(-2 * math.pi * t)
    return 2 * q2 / (1 - q2)


@dataclass(frozen=True)
class BoundaryFamily:
    """B_{2m+1} for m = 1..M at one modulus, or at a limit tag."""

    t: object
    values: dict = field(default_factory=dict)


def boundary_family(m_max: int, t, prec: Precision = DEFAULT_PRECISION) -> BoundaryFamily:
    """Assemble m -> B_{2m+1}; ``t`` may be a positive real or one of the tags
    ``"circular_limit"`` and ``"hyperbolic_limit"``."""
    ms = range(1, int(m_max) + 1)
    if t == "circular_limit":
        return BoundaryFamily(t, {m: circular_limit_constant(m) for m in ms})
    if t == "hyperbolic_limit":
        return BoundaryFamily(t, {m: hyperbolic_limit_constant(m) for m in ms})
    mod = Modulus(t)
    return BoundaryFamily(mod.t, {m: boundary_constant(m, mod, prec).value for m in ms})


@dataclass(frozen=True)
class DegenerationRow:
    m: int
    t: float
    value: float
    limit: float
    residual: float
    envelope: float
    flagged: bool


@dataclass(frozen=True)
class DegenerationReport:
    rows: list
    hyperbolic: dict
    note: str = HYPERBOLIC_NOTE

    @property
    def ok(self) -> bool:
        return not any(r.flagged for r in self.rows)

    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)


def degeneration_report(m_max: int, t_list, prec: Precision = DEFAULT_PRECISION) -> DegenerationReport:
    """Tabulate B_{2m+1}(it) against zeta(2m+1) for each t and m <= m_max.

    A row is flagged when its residual exceeds three times the envelope
    2 q^2/(1 - q^2) plus ``prec.abs_tol``.
    """
    if int(m_max) != m_max or m_max < 1:
        raise DomainError(f"m_max must be a positive integer, got {m_max!r}")
    rows = []
    for t in t_list:
        mod = Modulus(t)
        env = degeneration_envelope(mod.t)
        for m in range(1, int(m_max) + 1):
            b = boundary_constant(m, mod, prec).value
            lim = circular_limit_constant(m)
            res = abs(b - lim)
            rows.append(DegenerationRow(m, mod.t, b, lim, res, env, res > 3 * env + prec.abs_tol))
    hyper = {m: hyperbolic_limit_constant(m) for m in range(1, int(m_max) + 1)}
    return DegenerationReport(rows, hyper)
