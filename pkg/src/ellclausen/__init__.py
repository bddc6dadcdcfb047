"""Circular, elliptic and hyperbolic Clausen functions in double precision.

The three families share one integral recursion between levels and differ
only in their level-one kernel: ``-log|2 sin(x/2)|`` on the circle, the
logarithm of a normalized Jacobi theta function on the torus ``tau = i t``,
and ``-log|2 sinh(x/2)|`` on the line.

>>> from ellclausen import Family, evaluate
>>> round(evaluate(Family.circular(), 2, 1.5707963267948966).value, 10)
0.9159655942
"""

from .boundary import (
    HYPERBOLIC_NOTE,
    BoundaryFamily,
    DegenerationReport,
    DegenerationRow,
    boundary_constant,
    boundary_family,
    circular_limit_constant,
    degeneration_envelope,
    degeneration_report,
    hyperbolic_limit_constant,
)
from .clausen import (
    CIRCULAR,
    HYPERBOLIC,
    Family,
    circular_cl,
    clausen_series,
    elliptic_cl,
    elliptic_shift,
    evaluate,
    fourier_weight,
    hyperbolic_cl,
)
from .kernel import (
    MAX_COEFFS,
    KernelCoefficients,
    circular_kernel,
    hyperbolic_kernel,
    k_ell,
    kernel_coeffs_lambert,
    kernel_coeffs_taylor,
)
from .numerics import (
    DEFAULT_PRECISION,
    ClausenError,
    ConvergenceError,
    DomainError,
    EvalResult,
    Precision,
    adaptive_integrate,
    bernoulli_even,
    compensated_sum,
    zeta_int,
)
from .recursion import LevelCheck, RecursionReport, lift_even, lift_odd, verify_recursion
from .theta import (
    Modulus,
    nome,
    s_transform_residual,
    theta1,
    theta1_normalized,
    theta1_prime0,
    theta1_product,
)

__version__ = "0.1.0"
