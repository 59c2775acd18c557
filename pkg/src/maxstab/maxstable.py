"""Bivariate max-stable dependence models.

Covers the Gaussian-profile (Smith) pair CDF and its exponent measure with
analytic partial derivatives, the Schlather and Brown-Resnick pair CDFs, pair
extremal coefficients, and the closed-form Gumbel-margin derivative set used for
Brown-Resnick sensitivity checks.

The exponent-measure partials were derived by hand; tests/oracles/
smith_partials_symbolic.py re-derives them symbolically and pins probe values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegeneracyError, ParameterError
from .margins import std_normal_cdf, std_normal_pdf

# separations above this evaluate as exact independence (Phi saturates anyway)
A_INDEPENDENT = 40.0


@dataclass(frozen=True)
class SmithParams:
    """Entries (alpha, beta, gamma) = (Sigma11, Sigma12, Sigma22) of the storm
    profile covariance; must be positive definite."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not all(np.isfinite(v) for v in (self.alpha, self.beta, self.gamma)):
            raise ParameterError("covariance entries must be finite")
        if self.alpha <= 0 or self.gamma <= 0 or self.det <= 0:
            raise ParameterError(
                f"covariance ({self.alpha}, {self.beta}, {self.gamma}) is not positive definite"
            )

    @property
    def det(self) -> float:
        return self.alpha * self.gamma - self.beta * self.beta

    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.beta, self.gamma]])

    def inverse(self) -> np.ndarray:
        return np.array([[self.gamma, -self.beta], [-self.beta, self.alpha]]) / self.det

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class PairDependence:
    """Mahalanobis separation of one station pair."""

    a: float

    def __post_init__(self):
        if not np.isfinite(self.a) and not np.isposinf(self.a):
            raise ParameterError("separation must be finite or +inf")
        if self.a < 0:
            raise ParameterError("separation must be nonnegative")


@dataclass(frozen=True)
class ExponentMeasureEval:
    """Pair exponent measure V and its partials at one point."""

    v: float
    v1: float
    v2: float
    v12: float


@dataclass(frozen=True)
class BrDerivSet:
    """Gumbel-margin derivative set for the Brown-Resnick pair kernel.

    k1, k2, k3 are the helper coefficients evaluated at the offset y - x;
    B_theta and J_theta already include the chain factor dgamma/dtheta.
    """

    B: float
    B_x: float
    B_y: float
    B_xy: float
    B_theta: float
    J: float
    J_theta: float
    gamma_h: float
    k1: float
    k2: float
    k3: float


def _as_a(a) -> float:
    return float(a.a) if isinstance(a, PairDependence) else float(a)


def mahalanobis_a(s1, s2, p: SmithParams) -> PairDependence:
    """Separation a = sqrt((s1-s2)' Sigma^-1 (s1-s2))."""
    d = np.asarray(s1, dtype=float) - np.asarray(s2, dtype=float)
    q = float(d @ p.inverse() @ d)
    return PairDependence(a=float(np.sqrt(max(q, 0.0))))


def smith_cdf(y1, y2, a) -> float:
    """Pair CDF exp{-Phi(a/2 + log(y2/y1)/a)/y1 - Phi(a/2 + log(y1/y2)/a)/y2}.

    a = 0 is the complete-dependence branch exp(-1/min(y1,y2)); separations
    beyond A_INDEPENDENT evaluate as exact independence.
    """
    a = _as_a(a)
    y1 = float(y1)
    y2 = float(y2)
    if y1 <= 0 or y2 <= 0:
        raise DataError("smith_cdf requires positive arguments")
    if a == 0.0:
        return float(np.exp(-1.0 / min(y1, y2)))
    if a >= A_INDEPENDENT:
        return float(np.exp(-1.0 / y1 - 1.0 / y2))
    lr = np.log(y2 / y1)
    w = a / 2.0 + lr / a
    v = a / 2.0 - lr / a
    return float(np.exp(-std_normal_cdf(w) / y1 - std_normal_cdf(v) / y2))


def _smith_V_parts(y1, y2, a):
    """Vectorized V, V1, V2, V12 for strictly positive separations.

    Arrays broadcast; no validation. This is the likelihood hot path.
    """
    lr = np.log(y2 / y1)
    w = a / 2.0 + lr / a
    v = a / 2.0 - lr / a
    Pw = std_normal_cdf(w)
    Pv = std_normal_cdf(v)
    pw = std_normal_pdf(w)
    pv = std_normal_pdf(v)
    inv_ay1 = 1.0 / (a * y1)
    inv_ay2 = 1.0 / (a * y2)
    V = Pw / y1 + Pv / y2
    V1 = -(Pw + pw / a) / (y1 * y1) + pv * inv_ay1 / y2
    V2 = -(Pv + pv / a) / (y2 * y2) + pw * inv_ay2 / y1
    V12 = -(v * pw * inv_ay1 * inv_ay1 / y2 + w * pv * inv_ay1 * inv_ay2 / y2)
    return V, V1, V2, V12


def smith_exponent(y1, y2, a) -> ExponentMeasureEval:
    """Exponent measure V(y1, y2; a) with analytic partials."""
    a = _as_a(a)
    y1 = float(y1)
    y2 = float(y2)
    if y1 <= 0 or y2 <= 0:
        raise DataError("smith_exponent requires positive arguments")
    if a == 0.0:
        raise DegeneracyError(
            "V partials degenerate at a=0; use the complete-dependence CDF branch"
        )
    if a >= A_INDEPENDENT:
        return ExponentMeasureEval(
            v=1.0 / y1 + 1.0 / y2, v1=-1.0 / y1**2, v2=-1.0 / y2**2, v12=0.0
        )
    V, V1, V2, V12 = _smith_V_parts(y1, y2, a)
    return ExponentMeasureEval(v=float(V), v1=float(V1), v2=float(V2), v12=float(V12))


def schlather_cdf(y1, y2, rho) -> float:
    """Pair CDF exp{-(1/y1 + 1/y2)(1 + sqrt(1 - 2(rho+1) y1 y2/(y1+y2)^2))/2}."""
    y1 = float(y1)
    y2 = float(y2)
    rho = float(rho)
    if y1 <= 0 or y2 <= 0:
        raise DataError("schlather_cdf requires positive arguments")
    if not -1.0 <= rho <= 1.0:
        raise ParameterError(f"correlation {rho} outside [-1, 1]")
    s = y1 + y2
    root = np.sqrt(max(1.0 - 2.0 * (rho + 1.0) * y1 * y2 / (s * s), 0.0))
    return float(np.exp(-0.5 * (1.0 / y1 + 1.0 / y2) * (1.0 + root)))


def br_cdf(y1, y2, gamma_h) -> float:
    """Brown-Resnick pair CDF; shares the Gaussian-profile form with a = sqrt(gamma)."""
    gamma_h = float(gamma_h)
    if gamma_h <= 0:
        raise ParameterError("variogram value must be positive")
    return smith_cdf(y1, y2, np.sqrt(gamma_h))


def extremal_coefficient(model: str, params, h=None) -> float:
    """Pair extremal coefficient theta in [1, 2].

    model "smith": params is SmithParams, h a scalar (axis-1 offset) or 2-vector.
    model "schlather": params is the correlation at the separation (scalar or
    callable of h). model "br": params is the variogram value (scalar or callable).
    """
    if model == "smith":
        h = np.atleast_1d(np.asarray(h, dtype=float))
        if h.size == 1:
            h = np.array([float(h[0]), 0.0])
        a = mahalanobis_a(h, np.zeros(2), params).a
        return float(2.0 * std_normal_cdf(a / 2.0))
    if model == "schlather":
        rho = float(params(h)) if callable(params) else float(params)
        if not -1.0 <= rho <= 1.0:
            raise ParameterError(f"correlation {rho} outside [-1, 1]")
        return float(1.0 + np.sqrt((1.0 - rho) / 2.0))
    if model == "br":
        g = float(params(h)) if callable(params) else float(params)
        if g <= 0:
            raise ParameterError("variogram value must be positive")
        return float(2.0 * std_normal_cdf(np.sqrt(g) / 2.0))
    raise ParameterError(f"unknown model {model!r}")


def naive_extremal_estimator(pair_series) -> float:
    """theta_hat = m / sum_t 1/max(y_t, y'_t).

    1/max of a unit Frechet pair is exponential with rate theta, so the
    harmonic-style mean is consistent for the pair extremal coefficient.
    """
    arr = np.asarray(pair_series, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
        raise DataError("pair_series must be an m x 2 array with m >= 1")
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise DataError("pair_series must be positive and finite")
    m = arr.shape[0]
    return float(m / np.sum(1.0 / np.max(arr, axis=1)))


def power_variogram(h, r, nu):
    """gamma(h) = (h/r)^nu with gradient in theta = (r, nu); test family for
    Brown-Resnick sensitivity checks."""
    h = float(h)
    r = float(r)
    nu = float(nu)
    if h <= 0 or r <= 0 or nu <= 0:
        raise ParameterError("power variogram requires h, r, nu > 0")
    g = (h / r) ** nu
    return g, -nu * g / r, g * np.log(h / r)


def br_gumbel_derivs(x, y, gamma_h, dgamma_dtheta, M) -> BrDerivSet:
    """Closed-form derivative set of the Gumbel-margin Brown-Resnick pair kernel.

    B is the log pair CDF on Gumbel margins, J = (1/M) B_xy + (1/M^2) B_x B_y the
    associated density kernel for M-day blocks, and the theta-derivatives chain
    through gamma with the scalar factor dgamma_dtheta. Symbolic verification in
    tests/oracles/br_derivs_symbolic.py.
    """
    x = float(x)
    y = float(y)
    g = float(gamma_h)
    dg = float(dgamma_dtheta)
    M = float(M)
    if g <= 0:
        raise ParameterError("variogram value must be positive")
    if M < 1:
        raise ParameterError("M must be at least 1")

    s = np.sqrt(g)
    A = s / 2.0 + (y - x) / s
    Bv = s / 2.0 + (x - y) / s
    ex = np.exp(-x)
    ey = np.exp(-y)
    PA = std_normal_cdf(A)
    PB = std_normal_cdf(Bv)
    pA = std_normal_pdf(A)
    pB = std_normal_pdf(Bv)

    s3 = g * s
    s5 = g * g * s
    s7 = g * g * g * s

    def k1(d):
        return 1.0 / (8.0 * s) - 1.0 / (2.0 * s3) - d / (2.0 * s3) + d * d / (2.0 * s5)

    def k2(d):
        return 1.0 / (8.0 * s) + 1.0 / (2.0 * s3) - d * d / (2.0 * s5)

    def k3(d):
        return (
            -1.0 / (16.0 * s)
            - 1.0 / (4.0 * s3)
            + (1.0 / (8.0 * s3) + 3.0 / (2.0 * s5)) * d
            + d * d / (4.0 * s5)
            - d ** 3 / (2.0 * s7)
        )

    B = -ex * PA - ey * PB
    B_x = ex * PA + ex * pA / s - ey * pB / s
    B_y = ey * PB + ey * pB / s - ex * pA / s
    B_xy = (ex * pA * Bv + ey * pB * A) / g
    B_g = -(ex * pA * Bv + ey * pB * A) / (2.0 * g)
    B_xg = ex * pA * k1(y - x) + ey * pB * k2(x - y)
    B_yg = ey * pB * k1(x - y) + ex * pA * k2(y - x)
    B_xyg = ex * pA * k3(y - x) + ey * pB * k3(x - y)

    J = B_xy / M + B_x * B_y / (M * M)
    J_g = B_xyg / M + (B_xg * B_y + B_x * B_yg) / (M * M)

    return BrDerivSet(
        B=float(B),
        B_x=float(B_x),
        B_y=float(B_y),
        B_xy=float(B_xy),
        B_theta=float(dg * B_g),
        J=float(J),
        J_theta=float(dg * J_g),
        gamma_h=g,
        k1=float(k1(y - x)),
        k2=float(k2(y - x)),
        k3=float(k3(y - x)),
    )
