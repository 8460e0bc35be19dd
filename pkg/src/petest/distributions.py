"""Normal and 2-d.o.f. chi-squared tail functions used for p-values.

Only the two reference laws of the test statistics are needed, so both
are written out directly instead of pulling in a general statistics
package.
"""

import math
from dataclasses import dataclass

__all__ = [
    "TailProbability",
    "normal_cdf",
    "normal_sf",
    "normal_quantile",
    "chi2_2_survival",
    "chi2_2_cdf",
    "chi2_2_quantile",
]

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class TailProbability:
    value: float
    side: str = "upper"

    def __post_init__(self):
        if self.side not in ("upper", "lower"):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"tail probability {self.value} outside [0, 1]")


def _check_finite(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    return x


def normal_cdf(x):
    """Standard normal CDF.

    Uses erfc on the far tail so that small lower-tail probabilities keep
    their relative accuracy.
    """
    x = _check_finite(x)
    z = x / _SQRT2
    if z < -0.5:
        return 0.5 * math.erfc(-z)
    if z > 0.5:
        return 1.0 - 0.5 * math.erfc(z)
    return 0.5 + 0.5 * math.erf(z)


def normal_sf(x):
    """Upper tail 1 - Phi(x), accurate for large positive x."""
    x = _check_finite(x)
    return normal_cdf(-x)


# Acklam's rational approximation (relative error ~1.15e-9), refined below.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(p):
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        return num / den
    if p > 1.0 - _P_LOW:
        return -_acklam(1.0 - p)
    q = p - 0.5
    r = q * q
    num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    return num / den


def normal_quantile(p):
    """Inverse of :func:`normal_cdf` on (0, 1)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    x = _acklam(p)
    # Halley refinement; two steps take the approximation to machine precision.
    for _ in range(2):
        e = normal_cdf(x) - p
        u = e * _SQRT2PI * math.exp(0.5 * x * x)
        x = x - u / (1.0 + 0.5 * x * u)
    return x


def chi2_2_survival(x):
    """P(chi2_2 > x) = exp(-x/2)."""
    x = _check_finite(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return math.exp(-0.5 * x)


def chi2_2_cdf(x):
    x = _check_finite(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return -math.expm1(-0.5 * x)


def chi2_2_quantile(p):
    """Quantile of chi2_2: the x with CDF(x) = p, i.e. -2 log(1 - p)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return -2.0 * math.log1p(-p)
