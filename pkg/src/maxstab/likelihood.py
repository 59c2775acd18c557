"""Threshold-censored pairwise composite log-likelihood.

Every weighted station pair contributes one term per day according to the
four-case censoring partition at threshold u:

    both at or below u      -> log F(u, u)
    only first exceeds      -> log dF/dy1 at (y1, u)
    only second exceeds     -> log dF/dy2 at (u, y2)
    both exceed             -> log d2F/dy1 dy2 at (y1, y2)

with F the Gaussian-profile pair CDF exp(-V). A CensoredWorkspace precomputes the
case partition once per (panel, threshold); repeated evaluations at new
parameters are then pure vectorized array work, which is what the optimizer and
the Monte Carlo stencils hammer on.

Summation is deterministic: contributions accumulate per pair (censored-count
term first, then each exceedance block in day order) and the per-pair totals
reduce through a fixed pairwise tree, independent of worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import PairTable
from .errors import ConfigError, DataError, DegeneracyError
from .margins import std_normal_cdf
from .maxstable import SmithParams, _smith_V_parts
from .simulate import DailyPanel, ThresholdSpec

# exp underflows to zero below roughly -745; clamped log densities sit here
LOG_FLOOR = -745.0

# default relative/absolute finite-difference step for the score
SCORE_STEP = 1e-6


@dataclass(frozen=True)
class CensoredConfig:
    """Threshold rule plus the pair weight table (and the model selector)."""

    threshold: ThresholdSpec
    weights: PairTable
    model: str = "smith"

    def __post_init__(self):
        if self.model != "smith":
            raise ConfigError(f"unsupported dependence model {self.model!r}")


@dataclass(frozen=True)
class CompositeEval:
    """One composite log-likelihood evaluation."""

    loglik: float
    score: np.ndarray | None
    n_pairs_used: int
    case_counts: tuple[int, int, int, int]
    n_clamped: int = 0
    one_sided_score: bool = False


def tree_sum(values) -> float:
    """Fixed-shape pairwise tree reduction (deterministic regardless of threads)."""
    a = np.asarray(values, dtype=float).ravel()
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            a = np.append(a, 0.0)
        a = a[0::2] + a[1::2]
    return float(a[0])


class CensoredWorkspace:
    """Case partition of one panel at one resolved threshold.

    Evaluation-ready arrays: per weighted pair the censored-day count, and per
    exceedance case the flattened (pair id, data values) in day-major order.
    """

    def __init__(self, panel: DailyPanel, config: CensoredConfig):
        i_idx, j_idx, _h = config.weights.weighted()
        if len(i_idx) == 0:
            raise ConfigError("no weighted pairs: composite likelihood undefined")
        u = config.threshold.resolve(panel)
        if u <= 0:
            raise ConfigError("resolved threshold must be positive")

        self.u = float(u)
        self.n_pairs = len(i_idx)
        self.T = panel.T
        self.dx = config.weights.dx[config.weights.w > 0]
        self.dy = config.weights.dy[config.weights.w > 0]
        self.n_exceed = int(np.sum(panel.data > u))

        x1 = panel.data[:, i_idx]
        x2 = panel.data[:, j_idx]
        b1 = x1 > u
        b2 = x2 > u

        self.censored_counts = np.sum(~b1 & ~b2, axis=0).astype(float)

        m2 = b1 & ~b2
        m3 = ~b1 & b2
        m4 = b1 & b2
        self.p2 = np.nonzero(m2)[1]
        self.x1_case2 = x1[m2]
        self.p3 = np.nonzero(m3)[1]
        self.x2_case3 = x2[m3]
        self.p4 = np.nonzero(m4)[1]
        self.x1_case4 = x1[m4]
        self.x2_case4 = x2[m4]

        self.case_counts = (
            int(self.censored_counts.sum()),
            len(self.p2),
            len(self.p3),
            len(self.p4),
        )

    def _separations(self, p: SmithParams) -> np.ndarray:
        det = p.det
        q = (
            p.gamma * self.dx * self.dx
            - 2.0 * p.beta * self.dx * self.dy
            + p.alpha * self.dy * self.dy
        ) / det
        a = np.sqrt(np.maximum(q, 0.0))
        if np.any(a == 0.0):
            raise DegeneracyError("coincident stations in the weighted pair set")
        return a

    def loglik(self, p: SmithParams) -> tuple[float, int]:
        """Composite log-likelihood and the number of clamped underflow terms."""
        u = self.u
        a = self._separations(p)
        clamped = 0

        # censored days depend on the data only through their count
        per_pair = self.censored_counts * (-2.0 * std_normal_cdf(a / 2.0) / u)

        if len(self.p2):
            V, V1, _, _ = _smith_V_parts(self.x1_case2, u, a[self.p2])
            ld, c = _safe_log(-V1)
            clamped += c
            per_pair += np.bincount(self.p2, weights=ld - V, minlength=self.n_pairs)
        if len(self.p3):
            V, _, V2, _ = _smith_V_parts(u, self.x2_case3, a[self.p3])
            ld, c = _safe_log(-V2)
            clamped += c
            per_pair += np.bincount(self.p3, weights=ld - V, minlength=self.n_pairs)
        if len(self.p4):
            V, V1, V2, V12 = _smith_V_parts(self.x1_case4, self.x2_case4, a[self.p4])
            ld, c = _safe_log(V1 * V2 - V12)
            clamped += c
            per_pair += np.bincount(self.p4, weights=ld - V, minlength=self.n_pairs)

        return tree_sum(per_pair), clamped

    def score(self, p: SmithParams) -> tuple[np.ndarray, bool]:
        """Central finite-difference score in (alpha, beta, gamma); falls back to
        one-sided steps at the positive-definiteness boundary."""
        theta = np.array(p.as_tuple())
        grad = np.empty(3)
        one_sided = False
        f_center: float | None = None
        for k in range(3):
            h = max(SCORE_STEP, SCORE_STEP * abs(theta[k]))
            up, dn = theta.copy(), theta.copy()
            up[k] += h
            dn[k] -= h
            up_ok, dn_ok = _pd_ok(up), _pd_ok(dn)
            if up_ok and dn_ok:
                grad[k] = (self._ll(up) - self._ll(dn)) / (2.0 * h)
            elif up_ok or dn_ok:
                if f_center is None:
                    f_center = self.loglik(p)[0]
                side = up if up_ok else dn
                sign = 1.0 if up_ok else -1.0
                grad[k] = sign * (self._ll(side) - f_center) / h
                one_sided = True
            else:
                raise DegeneracyError("no valid finite-difference step at this theta")
        return grad, one_sided

    def evaluate(self, p: SmithParams, compute_score: bool = False) -> CompositeEval:
        ll, clamped = self.loglik(p)
        score = None
        one_sided = False
        if compute_score:
            score, one_sided = self.score(p)
        return CompositeEval(
            loglik=ll,
            score=score,
            n_pairs_used=self.n_pairs,
            case_counts=self.case_counts,
            n_clamped=clamped,
            one_sided_score=one_sided,
        )

    def _ll(self, theta_vec) -> float:
        return self.loglik(SmithParams(*theta_vec))[0]


def _safe_log(density: np.ndarray) -> tuple[np.ndarray, int]:
    """log with the documented underflow clamp at LOG_FLOOR."""
    bad = density <= 0.0
    n_bad = int(np.sum(bad))
    if n_bad:
        density = np.where(bad, 1.0, density)
        out = np.log(density)
        out[bad] = LOG_FLOOR
        return out, n_bad
    return np.log(density), 0


def _pd_ok(theta_vec) -> bool:
    a, b, g = theta_vec
    return a > 0 and g > 0 and a * g - b * b > 0


def pair_contribution(x1, x2, u, theta: SmithParams, a_or_h) -> float:
    """Log contribution of a single pair-day; a_or_h is the pair separation a
    (PairDependence or scalar)."""
    from .maxstable import PairDependence, smith_cdf

    x1 = float(x1)
    x2 = float(x2)
    u = float(u)
    if x1 <= 0 or x2 <= 0 or u <= 0:
        raise DataError("pair_contribution requires positive arguments")
    a = float(a_or_h.a) if isinstance(a_or_h, PairDependence) else float(a_or_h)
    if x1 <= u and x2 <= u:
        return float(np.log(smith_cdf(u, u, a)))
    if a == 0.0:
        raise DegeneracyError("density cases undefined at zero separation")
    if x1 > u and x2 <= u:
        V, V1, _, _ = _smith_V_parts(np.float64(x1), np.float64(u), np.float64(a))
        dens = -float(V1)
    elif x2 > u and x1 <= u:
        V, _, V2, _ = _smith_V_parts(np.float64(u), np.float64(x2), np.float64(a))
        dens = -float(V2)
    else:
        V, V1, V2, V12 = _smith_V_parts(np.float64(x1), np.float64(x2), np.float64(a))
        dens = float(V1 * V2 - V12)
    if dens <= 0.0:
        return LOG_FLOOR
    return float(np.log(dens) - V)


def composite_loglik(panel: DailyPanel, config: CensoredConfig, theta: SmithParams,
                     compute_score: bool = False) -> CompositeEval:
    """Weighted pairwise composite log-likelihood over all pair-days."""
    return CensoredWorkspace(panel, config).evaluate(theta, compute_score=compute_score)


def composite_score(panel: DailyPanel, config: CensoredConfig, theta: SmithParams,
                    return_flags: bool = False):
    """Finite-difference score of the composite log-likelihood at theta."""
    grad, one_sided = CensoredWorkspace(panel, config).score(theta)
    if return_flags:
        return grad, one_sided
    return grad


def fd_gradient(func, theta_vec, step_scale: float = SCORE_STEP) -> np.ndarray:
    """Central finite differences of an arbitrary objective; the same stepping
    rule the score uses (harness hook for exactness checks)."""
    theta_vec = np.asarray(theta_vec, dtype=float)
    grad = np.empty(theta_vec.size)
    for k in range(theta_vec.size):
        h = max(step_scale, step_scale * abs(theta_vec[k]))
        up, dn = theta_vec.copy(), theta_vec.copy()
        up[k] += h
        dn[k] -= h
        grad[k] = (func(up) - func(dn)) / (2.0 * h)
    return grad
