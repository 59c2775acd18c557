"""Monte Carlo realization of the estimator asymptotics and the second-order
tail-expansion checks.

Theoretical curves: H = E[-d2l/dtheta2] and the score moments (mean b, second
moment V) are averaged over fresh simulated panels at the true parameters; the
plug-in bias is H^-1 b and the sandwich variance diag(H^-1 V H^-1). Empirical
curves refit every replication panel across the exceedance-count grid. The
second-order block evaluates the renormalized joint exceedance law of a
bivariate normal against its Gumbel-limit reference on a fixed grid.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy.integrate import quad
from scipy.special import ndtr

from ._fmt import write_csv
from .design import StationLayout, pair_weights, sample_stations
from .errors import ConfigError, DegeneracyError, DomainError, ParameterError
from .estimate import FitOptions, fit_dependence, warm_options
from .likelihood import CensoredConfig, CensoredWorkspace
from .maxstable import SmithParams, extremal_coefficient
from .simulate import ThresholdSpec, simulate_daily_panel, threshold_for_count

PARAM_NAMES = ("alpha", "beta", "gamma")

# relative step for the Hessian/score stencil (second differences tolerate a
# larger step than the score-only default; 1e-4 keeps roundoff amplification
# ~1e-3 absolute while the O(h^2) truncation stays ~1e-8 relative)
STENCIL_STEP = 1e-4

# fixed grid for the second-order checks
SECOND_ORDER_GRID = tuple((x, y) for x in (0.0, 0.5, 1.0, 1.5, 2.0) for y in (0.0, 0.5, 1.0, 1.5, 2.0))

# frozen envelope constants for the scaled-gap bound check
# (fitted once by tests/oracles/second_order_table.py)
ENVELOPE_C = 2.19
ENVELOPE_C1 = 1.016
ENVELOPE_C2 = -1.158

_DENOM_FLOOR = 1e-300


@dataclass(frozen=True)
class StudyConfig:
    """Everything a bias/variance/MSE study needs, seeds included."""

    theta0: SmithParams
    n: int = 20
    T: int = 1000
    M: int = 100
    R: int = 100
    n_grid: tuple[int, ...] = (500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000)
    seed: int = 1
    mc_panels: int = 200
    threads: int = 0

    def __post_init__(self):
        if self.R < 2:
            raise ConfigError("need at least 2 replications")
        grid = tuple(int(N) for N in self.n_grid)
        object.__setattr__(self, "n_grid", grid)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("exceedance grid must be strictly increasing")
        if grid and (grid[0] < 1 or grid[-1] >= self.T * self.n):
            raise ConfigError("exceedance counts must lie in [1, T*n)")
        if self.mc_panels < 2:
            raise ConfigError("need at least 2 Monte Carlo panels")


@dataclass(frozen=True)
class TheoreticalCurves:
    n_grid: tuple[int, ...]
    bias: np.ndarray  # len(grid) x 3
    var: np.ndarray  # len(grid) x 3
    u_mean: np.ndarray
    hessians: np.ndarray  # len(grid) x 3 x 3
    score_mean: np.ndarray  # len(grid) x 3
    score_outer: np.ndarray  # len(grid) x 3 x 3
    degenerate: tuple[int, ...]


@dataclass(frozen=True)
class EmpiricalCurves:
    n_grid: tuple[int, ...]
    mean_bias: np.ndarray  # len(grid) x 3
    sd: np.ndarray
    ci_lo: np.ndarray
    ci_hi: np.ndarray
    mean_theta: np.ndarray
    u_mean: np.ndarray
    n_used: np.ndarray
    n_unconverged: np.ndarray
    flagged: tuple[int, ...]


@dataclass(frozen=True)
class StudyReport:
    n_grid: tuple[int, ...]
    empirical_bias: np.ndarray
    ci_lo: np.ndarray
    ci_hi: np.ndarray
    theoretical_bias: np.ndarray
    variance: np.ndarray
    mse: np.ndarray
    argmin_n: dict[str, int]
    argmin_pooled: int


@dataclass(frozen=True)
class SecondOrderEval:
    rho: float
    t: float
    grid: tuple[tuple[float, float], ...]
    gap_over_A: np.ndarray
    psi: np.ndarray
    gap_over_A_norm: np.ndarray
    a_t: float
    b_t: float

    @property
    def A(self) -> float:
        return 1.0 / (2.0 * np.log(self.t))


def _n_jobs(threads: int) -> int:
    return threads if threads and threads > 0 else max(1, os.cpu_count() or 1)


def study_layout(study: StudyConfig) -> StationLayout:
    """The single station design held fixed across a study."""
    return sample_stations(study.n, (study.seed, 1))


# ---------------------------------------------------------------------------
# Monte Carlo sweep: H, score mean and second moment on the whole N grid


def _stencil_points(theta0: SmithParams):
    th = np.array(theta0.as_tuple())
    h = STENCIL_STEP * np.maximum(1.0, np.abs(th))
    try:
        points = {"0": SmithParams(*th)}
        for i in range(3):
            for s, tag in ((1.0, "+"), (-1.0, "-")):
                v = th.copy()
                v[i] += s * h[i]
                points[f"{tag}{i}"] = SmithParams(*v)
        for i in range(3):
            for j in range(i + 1, 3):
                for si, ti in ((1.0, "+"), (-1.0, "-")):
                    for sj, tj in ((1.0, "+"), (-1.0, "-")):
                        v = th.copy()
                        v[i] += si * h[i]
                        v[j] += sj * h[j]
                        points[f"{ti}{i}{tj}{j}"] = SmithParams(*v)
    except ParameterError as exc:
        raise DegeneracyError(f"stencil leaves the positive definite region: {exc}") from exc
    return points, h


def _panel_sweep(study: StudyConfig, theta0: SmithParams, layout, table, k: int):
    """Score and negative-Hessian stencil of one fresh panel, on every grid N."""
    panel = simulate_daily_panel(layout, theta0, study.T, study.M, seed=(study.seed, 2, k))
    points, h = _stencil_points(theta0)
    n_grid = study.n_grid
    scores = np.empty((len(n_grid), 3))
    hessians = np.empty((len(n_grid), 3, 3))
    u_vals = np.empty(len(n_grid))
    for g, N in enumerate(n_grid):
        config = CensoredConfig(ThresholdSpec("exceedance-count", N), table)
        ws = CensoredWorkspace(panel, config)
        f = {tag: ws.loglik(p)[0] for tag, p in points.items()}
        H = np.empty((3, 3))
        for i in range(3):
            H[i, i] = (f[f"+{i}"] - 2.0 * f["0"] + f[f"-{i}"]) / (h[i] * h[i])
            scores[g, i] = (f[f"+{i}"] - f[f"-{i}"]) / (2.0 * h[i])
        for i in range(3):
            for j in range(i + 1, 3):
                H[i, j] = H[j, i] = (
                    f[f"+{i}+{j}"] - f[f"+{i}-{j}"] - f[f"-{i}+{j}"] + f[f"-{i}-{j}"]
                ) / (4.0 * h[i] * h[j])
        hessians[g] = -H
        u_vals[g] = ws.u
    return scores, hessians, u_vals


_SWEEP_CACHE: dict = {}


def _mc_sweep(theta0: SmithParams, study: StudyConfig):
    """Averages over study.mc_panels fresh panels, shared by every grid point
    (common random numbers keep the curves smooth in N)."""
    key = (theta0.as_tuple(), study)
    if key in _SWEEP_CACHE:
        return _SWEEP_CACHE[key]
    layout = study_layout(study)
    table = pair_weights(layout)
    jobs = _n_jobs(study.threads)
    results = Parallel(n_jobs=jobs)(
        delayed(_panel_sweep)(study, theta0, layout, table, k) for k in range(study.mc_panels)
    )
    m = study.mc_panels
    G = len(study.n_grid)
    sum_s = np.zeros((G, 3))
    sum_ss = np.zeros((G, 3, 3))
    sum_H = np.zeros((G, 3, 3))
    sum_u = np.zeros(G)
    for scores, hessians, u_vals in results:  # fixed order: deterministic reduction
        sum_s += scores
        sum_ss += scores[:, :, None] * scores[:, None, :]
        sum_H += hessians
        sum_u += u_vals
    out = {
        "score_mean": sum_s / m,
        "score_outer": sum_ss / m,
        "hessian": (sum_H + np.transpose(sum_H, (0, 2, 1))) / (2.0 * m),
        "u_mean": sum_u / m,
    }
    _SWEEP_CACHE[key] = out
    return out


def _grid_index(study: StudyConfig, N: int) -> int:
    try:
        return study.n_grid.index(int(N))
    except ValueError:
        raise ConfigError(f"N={N} is not on the study grid {study.n_grid}") from None


def mc_hessian(theta0: SmithParams, study: StudyConfig, N: int) -> np.ndarray:
    """Average negative Hessian of the composite log-likelihood at theta0."""
    H = _mc_sweep(theta0, study)["hessian"][_grid_index(study, N)]
    if np.any(np.linalg.eigvalsh(H) <= 0.0):
        raise DegeneracyError(f"Monte Carlo Hessian not positive definite at N={N}")
    return H


def mc_score_moments(theta0: SmithParams, study: StudyConfig, N: int):
    """Monte Carlo mean and (uncentered) second moment of the per-panel score."""
    sweep = _mc_sweep(theta0, study)
    g = _grid_index(study, N)
    return sweep["score_mean"][g], sweep["score_outer"][g]


def theoretical_bias_variance(theta0: SmithParams, study: StudyConfig) -> TheoreticalCurves:
    """Plug-in bias H^-1 E[score] and sandwich variance diag(H^-1 V H^-1) per N."""
    sweep = _mc_sweep(theta0, study)
    G = len(study.n_grid)
    bias = np.full((G, 3), np.nan)
    var = np.full((G, 3), np.nan)
    degenerate = []
    for g, N in enumerate(study.n_grid):
        H = sweep["hessian"][g]
        if np.any(np.linalg.eigvalsh(H) <= 0.0):
            degenerate.append(N)
            continue
        Hinv = np.linalg.inv(H)
        bias[g] = Hinv @ sweep["score_mean"][g]
        var[g] = np.diag(Hinv @ sweep["score_outer"][g] @ Hinv)
    return TheoreticalCurves(
        n_grid=study.n_grid,
        bias=bias,
        var=var,
        u_mean=sweep["u_mean"].copy(),
        hessians=sweep["hessian"].copy(),
        score_mean=sweep["score_mean"].copy(),
        score_outer=sweep["score_outer"].copy(),
        degenerate=tuple(degenerate),
    )


# ---------------------------------------------------------------------------
# empirical replication curves


def _replication_fits(study: StudyConfig, theta0: SmithParams, layout, table, r: int,
                      fit_hook=None):
    panel = simulate_daily_panel(layout, theta0, study.T, study.M, seed=(study.seed, 3, r))
    G = len(study.n_grid)
    theta = np.full((G, 3), np.nan)
    conv = np.zeros(G, dtype=bool)
    u_vals = np.empty(G)
    fit = fit_dependence if fit_hook is None else fit_hook
    warm: SmithParams | None = None
    for g in range(G - 1, -1, -1):  # largest N first: most data, best-behaved fit
        N = study.n_grid[g]
        config = CensoredConfig(ThresholdSpec("exceedance-count", N), table)
        opts = FitOptions() if warm is None else warm_options(FitOptions(), warm)
        res = fit(panel, config, opts)
        theta[g] = res.theta_hat.as_tuple()
        conv[g] = res.converged
        u_vals[g] = threshold_for_count(panel, N)
        if res.converged:
            warm = res.theta_hat
    return theta, conv, u_vals


def empirical_bias(theta0: SmithParams, study: StudyConfig, fit_hook=None) -> EmpiricalCurves:
    """Mean fitted bias with normal-theory 95% bands over R replications.

    fit_hook swaps out fit_dependence for harness tests (same call signature).
    """
    layout = study_layout(study)
    table = pair_weights(layout)
    jobs = _n_jobs(study.threads)
    results = Parallel(n_jobs=jobs)(
        delayed(_replication_fits)(study, theta0, layout, table, r, fit_hook)
        for r in range(study.R)
    )
    G = len(study.n_grid)
    th0 = np.array(theta0.as_tuple())
    all_theta = np.stack([res[0] for res in results])  # R x G x 3
    all_conv = np.stack([res[1] for res in results])  # R x G
    all_u = np.stack([res[2] for res in results])

    mean_bias = np.full((G, 3), np.nan)
    sd = np.full((G, 3), np.nan)
    mean_theta = np.full((G, 3), np.nan)
    n_used = np.zeros(G, dtype=int)
    n_unconv = np.zeros(G, dtype=int)
    flagged = []
    for g in range(G):
        keep = all_conv[:, g]
        n_used[g] = int(keep.sum())
        n_unconv[g] = study.R - n_used[g]
        if n_unconv[g] > 0.2 * study.R:
            flagged.append(study.n_grid[g])
        if n_used[g] >= 2:
            sel = all_theta[keep, g, :]
            mean_theta[g] = sel.mean(axis=0)
            mean_bias[g] = mean_theta[g] - th0
            sd[g] = sel.std(axis=0, ddof=1)
    band = 1.96 * sd / np.sqrt(np.maximum(n_used, 1))[:, None]
    return EmpiricalCurves(
        n_grid=study.n_grid,
        mean_bias=mean_bias,
        sd=sd,
        ci_lo=mean_bias - band,
        ci_hi=mean_bias + band,
        mean_theta=mean_theta,
        u_mean=all_u.mean(axis=0),
        n_used=n_used,
        n_unconverged=n_unconv,
        flagged=tuple(flagged),
    )


def mse_sweep(theta0: SmithParams, study: StudyConfig,
              theo: TheoreticalCurves | None = None,
              emp: EmpiricalCurves | None = None) -> StudyReport:
    """MSE curves bias^2 + variance per parameter, with argmin summaries."""
    if theo is None:
        theo = theoretical_bias_variance(theta0, study)
    G = len(study.n_grid)
    mse = theo.bias**2 + theo.var
    argmin = {}
    for k, name in enumerate(PARAM_NAMES):
        col = mse[:, k]
        if np.all(np.isnan(col)):
            raise DegeneracyError("no valid MSE points on the grid")
        argmin[name] = int(study.n_grid[int(np.nanargmin(col))])
    pooled = mse.sum(axis=1)
    argmin_pooled = int(study.n_grid[int(np.nanargmin(pooled))])
    nanfill = np.full((G, 3), np.nan)
    return StudyReport(
        n_grid=study.n_grid,
        empirical_bias=emp.mean_bias if emp is not None else nanfill,
        ci_lo=emp.ci_lo if emp is not None else nanfill,
        ci_hi=emp.ci_hi if emp is not None else nanfill,
        theoretical_bias=theo.bias,
        variance=theo.var,
        mse=mse,
        argmin_n=argmin,
        argmin_pooled=argmin_pooled,
    )


# ---------------------------------------------------------------------------
# extremal coefficient layer curves


def _pd_or_none(vec) -> SmithParams | None:
    try:
        return SmithParams(*vec)
    except ParameterError:
        return None


def extremal_coefficient_layers(theta0: SmithParams, study: StudyConfig,
                                theo: TheoreticalCurves | None = None,
                                emp: EmpiricalCurves | None = None,
                                n_points: int = 50):
    """Rows (N, h, theta_true, theta_theoretical, theta_fitted) along axis-1
    separations h in [0, sqrt(2 n)]."""
    if theo is None:
        theo = theoretical_bias_variance(theta0, study)
    h_grid = np.linspace(0.0, np.sqrt(2.0 * study.n), n_points)
    th0 = np.array(theta0.as_tuple())
    rows = []
    for g, N in enumerate(study.n_grid):
        p_theo = _pd_or_none(th0 + theo.bias[g]) if np.all(np.isfinite(theo.bias[g])) else None
        p_fit = None
        if emp is not None and np.all(np.isfinite(emp.mean_theta[g])):
            p_fit = _pd_or_none(emp.mean_theta[g])
        for h in h_grid:
            rows.append((
                N,
                float(h),
                extremal_coefficient("smith", theta0, h),
                extremal_coefficient("smith", p_theo, h) if p_theo else float("nan"),
                extremal_coefficient("smith", p_fit, h) if p_fit else float("nan"),
            ))
    return rows


# ---------------------------------------------------------------------------
# second-order tail expansion of the bivariate normal


def normalizing_constants(t: float) -> tuple[float, float]:
    """Gumbel normalizing constants a_t = 1/sqrt(2 log t) and
    b_t = sqrt(2 log t) - (log log t + log 4 pi)/(2 sqrt(2 log t))."""
    t = float(t)
    if t <= np.e:
        raise DomainError("normalizing constants need t > e")
    L = np.sqrt(2.0 * np.log(t))
    return 1.0 / L, float(L - (np.log(np.log(t)) + np.log(4.0 * np.pi)) / (2.0 * L))


def _rho_integral(x: float, y: float, rho: float) -> float:
    """int_0^rho phi2(x, y; r) dr, the correlation derivative of the joint CDF."""
    if rho == 0.0:
        return 0.0

    def dens(r):
        return np.exp(-(x * x - 2.0 * r * x * y + y * y) / (2.0 * (1.0 - r * r))) / np.sqrt(1.0 - r * r)

    val, _ = quad(dens, 0.0, rho, epsabs=1e-14, epsrel=1e-13, limit=200)
    return val / (2.0 * np.pi)


def bvn_cdf(x: float, y: float, rho: float) -> float:
    """Standard bivariate normal P(X <= x, Y <= y), absolute error below 1e-12."""
    rho = float(rho)
    if not -1.0 < rho < 1.0:
        raise ParameterError("correlation must lie strictly inside (-1, 1)")
    x = float(x)
    y = float(y)
    if np.isnan(x) or np.isnan(y):
        raise DomainError("bvn_cdf requires non-NaN arguments")
    if np.isinf(x) or np.isinf(y):
        if x == -np.inf or y == -np.inf:
            return 0.0
        if x == np.inf and y == np.inf:
            return 1.0
        return float(ndtr(y if x == np.inf else x))
    return float(ndtr(x) * ndtr(y) + _rho_integral(x, y, rho))


def _bvn_survival(x: float, y: float, rho: float) -> float:
    """P(X > x or Y > y) = 1 - F(x, y), stable deep in the joint upper tail."""
    upper = ndtr(-x) * ndtr(-y) + _rho_integral(x, y, rho)
    return float(ndtr(-x) + ndtr(-y) - upper)


def second_order_gap(rho: float, t: float, grid=None) -> SecondOrderEval:
    """Scaled gap between the renormalized joint exceedance law and its Gumbel
    reference H(x,y) = 1 - (e^-x + e^-y), reported as gap/A(t) with
    A(t) = 1/(2 log t), alongside Psi(x,y) = exp(-(x+y)/(1+rho)) + e^-x + e^-y.
    The variant against the mass-normalized reference 1 - (e^-x + e^-y)/2 is
    returned side by side as gap_over_A_norm."""
    if not -1.0 < rho < 1.0:
        raise ParameterError("correlation must lie strictly inside (-1, 1)")
    grid = SECOND_ORDER_GRID if grid is None else tuple((float(x), float(y)) for x, y in grid)
    a_t, b_t = normalizing_constants(t)
    A = 1.0 / (2.0 * np.log(t))
    denom = _bvn_survival(b_t, b_t, rho)
    if denom < _DENOM_FLOOR:
        raise DegeneracyError(f"joint survival at b_t underflows for t={t}")
    gap = np.empty(len(grid))
    gap_norm = np.empty(len(grid))
    psi = np.empty(len(grid))
    for idx, (x, y) in enumerate(grid):
        num = _bvn_survival(a_t * x + b_t, a_t * y + b_t, rho)
        ratio = num / denom
        ee = np.exp(-x) + np.exp(-y)
        gap[idx] = (ee - ratio) / A
        gap_norm[idx] = (0.5 * ee - ratio) / A
        psi[idx] = np.exp(-(x + y) / (1.0 + rho)) + ee
    return SecondOrderEval(
        rho=float(rho), t=float(t), grid=grid, gap_over_A=gap, psi=psi,
        gap_over_A_norm=gap_norm, a_t=a_t, b_t=b_t,
    )


def envelope_check(se: SecondOrderEval) -> bool:
    """Frozen-envelope bound on the normalized scaled gap: for each x, the
    profile max over y of |gap_over_A_norm| stays below C * phi(c1 x + c2)."""
    xs = sorted({x for x, _ in se.grid})
    for x in xs:
        prof = max(
            abs(se.gap_over_A_norm[i]) for i, (gx, _) in enumerate(se.grid) if gx == x
        )
        z = ENVELOPE_C1 * x + ENVELOPE_C2
        bound = ENVELOPE_C * np.exp(-0.5 * z * z) / np.sqrt(2.0 * np.pi)
        if prof > bound:
            return False
    return True


# ---------------------------------------------------------------------------
# report CSV writers


BIAS_HEADER = ["model", "param", "N", "u", "empirical_bias", "ci_lo", "ci_hi",
               "theoretical_bias"]
MSE_HEADER = ["model", "param", "N", "bias2", "variance", "mse"]
EXTCOEF_HEADER = ["model", "N", "h", "theta_true", "theta_theoretical", "theta_fitted"]


def write_bias_curves(path, rows) -> None:
    write_csv(path, BIAS_HEADER, rows)


def bias_curve_rows(model_label: str, theo: TheoreticalCurves,
                    emp: EmpiricalCurves | None = None):
    rows = []
    for k, name in enumerate(PARAM_NAMES):
        for g, N in enumerate(theo.n_grid):
            u = emp.u_mean[g] if emp is not None else theo.u_mean[g]
            rows.append((
                model_label, name, N, u,
                emp.mean_bias[g, k] if emp is not None else float("nan"),
                emp.ci_lo[g, k] if emp is not None else float("nan"),
                emp.ci_hi[g, k] if emp is not None else float("nan"),
                theo.bias[g, k],
            ))
    return rows


def mse_curve_rows(model_label: str, report: StudyReport):
    rows = []
    for k, name in enumerate(PARAM_NAMES):
        for g, N in enumerate(report.n_grid):
            rows.append((
                model_label, name, N,
                report.theoretical_bias[g, k] ** 2,
                report.variance[g, k],
                report.mse[g, k],
            ))
    return rows


def write_mse_curves(path, rows) -> None:
    write_csv(path, MSE_HEADER, rows)


def extcoef_rows(model_label: str, layer_rows):
    return [(model_label, *row) for row in layer_rows]


def write_extcoef_layers(path, rows) -> None:
    write_csv(path, EXTCOEF_HEADER, rows)


def second_order_rows(evals):
    rows = []
    for se in evals:
        for idx, (x, y) in enumerate(se.grid):
            rows.append((se.rho, se.t, x, y, se.gap_over_A[idx], se.psi[idx],
                         se.gap_over_A_norm[idx]))
    return rows


def write_second_order(path, evals) -> None:
    write_csv(path, ["rho", "t", "x", "y", "gap_over_A", "psi", "gap_over_A_norm"],
              second_order_rows(evals))
