"""Censored pairwise composite likelihood: case partition, closed-form spot
checks, determinism of the reduction, and score behavior at the truth."""

import numpy as np
import pytest

from maxstab.design import PairTable, StationLayout, pair_weights, sample_stations
from maxstab.errors import ConfigError, DataError, DegeneracyError
from maxstab.likelihood import (
    LOG_FLOOR,
    CensoredConfig,
    CensoredWorkspace,
    _safe_log,
    composite_loglik,
    composite_score,
    fd_gradient,
    pair_contribution,
    tree_sum,
)
from maxstab.maxstable import SmithParams, mahalanobis_a, smith_cdf
from maxstab.simulate import DailyPanel, ThresholdSpec, simulate_daily_panel


def _config(table, spec=None):
    return CensoredConfig(threshold=spec or ThresholdSpec("quantile", 0.9), weights=table)


def test_case_partition_reconciles(small_panel, small_table):
    ws = CensoredWorkspace(small_panel, _config(small_table))
    i_idx, j_idx, _ = small_table.weighted()
    assert ws.n_pairs == len(i_idx) >= 1
    x1 = small_panel.data[:, i_idx]
    x2 = small_panel.data[:, j_idx]
    u = ws.u
    expect = (
        int(np.sum((x1 <= u) & (x2 <= u))),
        int(np.sum((x1 > u) & (x2 <= u))),
        int(np.sum((x1 <= u) & (x2 > u))),
        int(np.sum((x1 > u) & (x2 > u))),
    )
    assert ws.case_counts == expect
    assert sum(ws.case_counts) == ws.n_pairs * small_panel.T
    assert ws.n_exceed == int(np.sum(small_panel.data > u))


def test_workspace_matches_per_pair_contributions(theta_i):
    lay = sample_stations(4, seed=(606, 1))
    table = pair_weights(lay)
    panel = simulate_daily_panel(lay, theta_i, 8, 1, seed=(606, 0))
    spec = ThresholdSpec("absolute", 1.5)
    ws = CensoredWorkspace(panel, _config(table, spec))
    ll, clamped = ws.loglik(theta_i)
    assert clamped == 0

    total = 0.0
    i_idx, j_idx, _ = table.weighted()
    for i, j in zip(i_idx, j_idx):
        a = mahalanobis_a(lay.sites[i], lay.sites[j], theta_i)
        for t in range(panel.T):
            total += pair_contribution(panel.data[t, i], panel.data[t, j], 1.5, theta_i, a)
    assert ll == pytest.approx(total, rel=1e-12)


def test_pair_contribution_closed_forms(theta_i):
    # fully censored pair at independence: log exp(-2/u)
    assert pair_contribution(0.5, 0.7, 10.0, theta_i, 50.0) == pytest.approx(-0.2, abs=1e-15)
    # both exceed at independence: product of unit Frechet marginal densities
    got = pair_contribution(3.0, 5.0, 1.0, theta_i, 45.0)
    expect = (-2.0 * np.log(3.0) - 1.0 / 3.0) + (-2.0 * np.log(5.0) - 1.0 / 5.0)
    assert got == pytest.approx(expect, rel=1e-14)
    # one exceeds: density equals the finite difference of the pair CDF
    y1, u, a = 2.4, 1.1, 0.9
    lc = pair_contribution(y1, 0.5, u, theta_i, a)
    h = 1e-5
    fd = (smith_cdf(y1 + h, u, a) - smith_cdf(y1 - h, u, a)) / (2.0 * h)
    assert np.exp(lc) == pytest.approx(fd, rel=1e-5)
    # complete dependence only supports the censored case
    assert pair_contribution(0.5, 0.5, 2.0, theta_i, 0.0) == pytest.approx(-0.5, abs=1e-15)
    with pytest.raises(DegeneracyError):
        pair_contribution(3.0, 0.5, 2.0, theta_i, 0.0)
    with pytest.raises(DataError):
        pair_contribution(-1.0, 0.5, 2.0, theta_i, 1.0)


def test_single_pair_all_censored():
    # two stations one unit apart with a tiny storm scale behave independently
    p = SmithParams(4e-4, 0.0, 4e-4)
    sites = np.array([[0.0, 0.0], [1.0, 0.0]])
    lay_table = pair_weights(StationLayout(n=2, lambda_n=np.sqrt(2.0), sites=sites))
    assert lay_table.w.tolist() == [1.0]
    panel = DailyPanel(data=np.full((5, 2), 0.7), M=1, model="smith", params=p, seed=0)
    ws = CensoredWorkspace(panel, _config(lay_table, ThresholdSpec("absolute", 10.0)))
    ll, _ = ws.loglik(p)
    assert ll == pytest.approx(5 * (-2.0 / 10.0), rel=1e-15)
    assert ws.case_counts == (5, 0, 0, 0)


def test_duplicate_pair_doubles_loglik(theta_i, small_panel):
    def table_for(reps):
        d = small_panel.data  # noqa: F841  (shape only)
        dx, dy = 0.8, -0.4
        return PairTable(
            i=np.zeros(reps, dtype=int),
            j=np.ones(reps, dtype=int),
            h=np.full(reps, np.hypot(dx, dy)),
            w=np.ones(reps),
            delta0=2.0,
            dx=np.full(reps, dx),
            dy=np.full(reps, dy),
        )

    spec = ThresholdSpec("absolute", 2.0)
    panel = DailyPanel(data=small_panel.data[:, :2], M=1, model="smith",
                       params=small_panel.params, seed=0)
    single = CensoredWorkspace(panel, _config(table_for(1), spec)).loglik(theta_i)[0]
    double = CensoredWorkspace(panel, _config(table_for(2), spec)).loglik(theta_i)[0]
    assert double == 2.0 * single


def test_no_weighted_pairs_rejected(small_panel, small_table):
    table = PairTable(
        i=small_table.i, j=small_table.j, h=small_table.h,
        w=np.zeros_like(small_table.w), delta0=small_table.delta0,
        dx=small_table.dx, dy=small_table.dy,
    )
    with pytest.raises(ConfigError):
        CensoredWorkspace(small_panel, _config(table))


def test_censored_config_rejects_other_models(small_table):
    with pytest.raises(ConfigError):
        CensoredConfig(threshold=ThresholdSpec("quantile", 0.9),
                       weights=small_table, model="schlather")


def test_safe_log_clamp():
    vals, n_bad = _safe_log(np.array([1.0, 0.0, -2.0, np.e]))
    assert n_bad == 2
    assert vals[0] == 0.0
    assert vals[1] == LOG_FLOOR
    assert vals[2] == LOG_FLOOR
    assert vals[3] == pytest.approx(1.0, abs=1e-15)
    clean, n = _safe_log(np.array([2.0]))
    assert n == 0 and clean[0] == pytest.approx(np.log(2.0))


def test_tree_sum():
    assert tree_sum([]) == 0.0
    assert tree_sum([3.0]) == 3.0
    assert tree_sum(np.arange(1, 8, dtype=float)) == 28.0
    rng = np.random.default_rng(12)
    a = rng.normal(size=101)
    assert tree_sum(a) == pytest.approx(float(np.sum(a)), rel=1e-12)
    assert tree_sum(a) == tree_sum(a.copy())


def test_fd_gradient_exact_on_quadratics():
    A = np.array([[2.0, 0.5, 0.0], [0.5, 1.0, 0.25], [0.0, 0.25, 3.0]])
    b = np.array([0.25, -0.5, 1.0])

    def f(v):
        return 0.5 * float(v @ A @ v) - float(b @ v)

    v0 = np.array([1.25, -0.75, 0.5])
    grad = fd_gradient(f, v0)
    assert np.max(np.abs(grad - (A @ v0 - b))) < 1e-9


def test_axis_swap_invariance():
    p = SmithParams(2.0, 1.5, 3.0)
    p_swap = SmithParams(3.0, 1.5, 2.0)
    lay = sample_stations(5, seed=(404, 1))
    panel = simulate_daily_panel(lay, p, 30, 1, seed=(404, 0))
    lay_swap = StationLayout(n=lay.n, lambda_n=lay.lambda_n, sites=lay.sites[:, ::-1].copy())
    spec = ThresholdSpec("quantile", 0.85)
    ll = CensoredWorkspace(panel, _config(pair_weights(lay), spec)).loglik(p)[0]
    ll_swap = CensoredWorkspace(panel, _config(pair_weights(lay_swap), spec)).loglik(p_swap)[0]
    assert ll_swap == pytest.approx(ll, rel=1e-10)


def test_score_mean_zero_at_truth(theta_i):
    # E[score] = 0 at the data-generating parameters; fixed absolute threshold
    # keeps each term a genuine censored log-likelihood
    lay = sample_stations(4, seed=(707, 1))
    cfg = _config(pair_weights(lay), ThresholdSpec("absolute", 2.0))
    scores = []
    for k in range(200):
        panel = simulate_daily_panel(lay, theta_i, 20, 1, seed=(707, 2, k))
        scores.append(composite_score(panel, cfg, theta_i))
    scores = np.asarray(scores)
    mean = scores.mean(axis=0)
    se = scores.std(axis=0, ddof=1) / np.sqrt(len(scores))
    assert np.all(np.abs(mean / se) < 3.0)


def test_one_sided_score_at_pd_boundary(small_panel, small_table):
    ws = CensoredWorkspace(small_panel, _config(small_table))
    grad, one_sided = ws.score(SmithParams(1.0, 1.0 - 5e-7, 1.0))
    assert one_sided
    assert np.all(np.isfinite(grad))
    grad2, flag = composite_score(small_panel, _config(small_table),
                                  SmithParams(1.0, 1.0 - 5e-7, 1.0), return_flags=True)
    assert flag and np.array_equal(grad, grad2)
    with pytest.raises(DegeneracyError):
        ws.score(SmithParams(1e-8, 0.0, 1e-8))


def test_loglik_smooth_in_parameters(small_panel, small_table):
    # central second-difference defect scales like step^2 along each axis
    ws = CensoredWorkspace(small_panel, _config(small_table))
    theta0 = np.array([2.0, 0.0, 3.0])
    for k in range(3):
        def g(d, k=k):
            v = theta0.copy()
            v[k] += d
            return ws._ll(v)

        f0 = g(0.0)
        for d in (4e-3, 2e-3):
            big = g(2 * d) + g(-2 * d) - 2 * f0
            small = g(d) + g(-d) - 2 * f0
            assert big / small == pytest.approx(4.0, abs=0.7)


def test_case4_count_monotone_in_threshold(small_panel, small_table):
    counts = []
    for u in (1.2, 2.0, 3.5, 6.0):
        ws = CensoredWorkspace(small_panel, _config(small_table, ThresholdSpec("absolute", u)))
        counts.append(ws.case_counts[3])
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts[0] > counts[-1]


def test_composite_entry_points(small_panel, small_table, theta_i):
    out = composite_loglik(small_panel, _config(small_table), theta_i, compute_score=True)
    assert out.score is not None and out.score.shape == (3,)
    assert out.n_pairs_used == int(np.sum(small_table.w))
    assert not out.one_sided_score
    plain = composite_loglik(small_panel, _config(small_table), theta_i)
    assert plain.score is None
    assert plain.loglik == out.loglik
