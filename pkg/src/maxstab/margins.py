"""Univariate extreme-value margins and standard normal helpers.

Everything here is pure and stateless. Functions accept scalars or numpy arrays
and return matching shapes; domain violations raise rather than propagate NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import DomainError, ParameterError

# shape values closer to zero than this use the exponential/Gumbel limit branch
XI_SWITCHOVER = 1e-8

# |x| beyond which the normal CDF saturates to exact 0/1
PHI_SATURATION = 8.0


@dataclass(frozen=True)
class GevParams:
    """Location/scale/shape of a generalized extreme value law."""

    mu: float = 0.0
    sigma: float = 1.0
    xi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma) and np.isfinite(self.xi)):
            raise ParameterError("GEV parameters must be finite")
        if self.sigma <= 0:
            raise ParameterError(f"GEV scale must be positive, got {self.sigma}")


@dataclass(frozen=True)
class GpdParams:
    """Scale/shape of a generalized Pareto exceedance law."""

    sigma_u: float = 1.0
    xi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.sigma_u) and np.isfinite(self.xi)):
            raise ParameterError("GPD parameters must be finite")
        if self.sigma_u <= 0:
            raise ParameterError(f"GPD scale must be positive, got {self.sigma_u}")


def gev_cdf(x, p: GevParams):
    """CDF exp{-(1 + xi (x-mu)/sigma)_+^(-1/xi)} with the Gumbel branch near xi=0."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("gev_cdf requires finite x")
    z = (x - p.mu) / p.sigma
    if abs(p.xi) < XI_SWITCHOVER:
        out = np.exp(-np.exp(-z))
    else:
        base = np.maximum(1.0 + p.xi * z, 0.0)
        with np.errstate(divide="ignore", over="ignore"):
            out = np.where(base > 0.0, np.exp(-base ** (-1.0 / p.xi)), 0.0)
        if p.xi < 0:
            # above the upper endpoint the law is degenerate at 1
            out = np.where(base <= 0.0, 1.0, out)
    return out if out.ndim else float(out)


def unit_frechet_cdf(z):
    """exp(-1/z) for z > 0, zero at or below the origin."""
    z = np.asarray(z, dtype=float)
    out = np.where(z > 0.0, np.exp(-1.0 / np.maximum(z, 1e-300)), 0.0)
    return out if out.ndim else float(out)


def frechet_quantile(p):
    """Inverse of unit_frechet_cdf on (0, 1)."""
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise DomainError("frechet_quantile requires 0 < p < 1")
    out = -1.0 / np.log(p)
    return out if out.ndim else float(out)


def gpd_cdf(y, p: GpdParams):
    """Exceedance CDF 1 - (1 + xi y / sigma_u)_+^(-1/xi); exponential branch at xi=0."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0.0):
        raise DomainError("gpd_cdf requires y >= 0")
    if abs(p.xi) < XI_SWITCHOVER:
        out = 1.0 - np.exp(-y / p.sigma_u)
    else:
        base = np.maximum(1.0 + p.xi * y / p.sigma_u, 0.0)
        with np.errstate(divide="ignore"):
            out = np.where(base > 0.0, 1.0 - base ** (-1.0 / p.xi), 1.0)
    return out if out.ndim else float(out)


def std_normal_cdf(x):
    """Standard normal CDF, saturating to exact 0/1 beyond |x| = 8."""
    x = np.asarray(x, dtype=float)
    out = ndtr(x)
    out = np.where(x > PHI_SATURATION, 1.0, np.where(x < -PHI_SATURATION, 0.0, out))
    return out if out.ndim else float(out)


def std_normal_pdf(x):
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)
    return out if out.ndim else float(out)


def gumbel_from_frechet(z):
    """log z: maps unit Frechet samples to standard Gumbel."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0.0):
        raise DomainError("gumbel_from_frechet requires z > 0")
    out = np.log(z)
    return out if out.ndim else float(out)
