"""Log-Cholesky reparameterization and the deterministic Nelder-Mead fit."""

from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxstab._fmt import read_csv
from maxstab.errors import ConfigError, ParameterError
from maxstab.estimate import (
    FitOptions,
    FitResult,
    default_init,
    fit_dependence,
    inverse_reparameterize,
    reparameterize,
    warm_options,
    write_fit_csv,
)
from maxstab.likelihood import CensoredConfig, CensoredWorkspace
from maxstab.maxstable import SmithParams
from maxstab.simulate import ThresholdSpec

raw_coord = st.floats(-5.0, 5.0)


def _config(table, q=0.9):
    return CensoredConfig(threshold=ThresholdSpec("quantile", q), weights=table)


def test_reparameterize_identity():
    assert np.allclose(reparameterize(SmithParams(1.0, 0.0, 1.0)), 0.0, atol=1e-15)


@pytest.mark.parametrize("p", [
    SmithParams(2.0, 0.0, 3.0),
    SmithParams(2.0, 1.5, 3.0),
    SmithParams(0.01, -0.05, 0.7),
    SmithParams(40.0, 6.0, 1.0),
])
def test_reparameterize_round_trip(p):
    back = inverse_reparameterize(reparameterize(p))
    assert back.alpha == pytest.approx(p.alpha, rel=1e-12)
    assert back.beta == pytest.approx(p.beta, rel=1e-12, abs=1e-12)
    assert back.gamma == pytest.approx(p.gamma, rel=1e-12)


@settings(max_examples=200)
@given(raw_coord, raw_coord, raw_coord)
def test_inverse_reparameterize_always_positive_definite(r0, r1, r2):
    # constructing SmithParams runs the positive-definiteness validation
    p = inverse_reparameterize([r0, r1, r2])
    assert p.det > 0


def test_inverse_reparameterize_dense_sweep():
    rng = np.random.default_rng(88)
    for raw in rng.uniform(-5.0, 5.0, size=(10_000, 3)):
        inverse_reparameterize(raw)


def test_reparameterize_rejects_non_pd():
    fake = SimpleNamespace(alpha=1.0, beta=2.0, gamma=1.0)
    with pytest.raises(ParameterError):
        reparameterize(fake)


def test_fit_options_validation():
    with pytest.raises(ConfigError):
        FitOptions(tol_f=0.0)
    with pytest.raises(ConfigError):
        FitOptions(max_evals=5)
    with pytest.raises(ConfigError):
        FitOptions(restarts=0)


def test_warm_options():
    base = FitOptions(max_evals=321, tol_f=1e-5, tol_x=1e-6, restarts=4)
    init = SmithParams(1.0, 0.2, 2.0)
    warm = warm_options(base, init)
    assert warm.init == init
    assert warm.restarts == 1
    assert warm.max_evals == 321 and warm.tol_f == 1e-5 and warm.tol_x == 1e-6


def test_default_init_is_isotropic(small_panel, small_table):
    p = default_init(small_panel, _config(small_table))
    assert p.beta == 0.0
    assert p.alpha == p.gamma > 0


def test_fit_deterministic(small_panel, small_table, theta_i):
    opts = FitOptions(init=theta_i, max_evals=200, restarts=2)
    a = fit_dependence(small_panel, _config(small_table), opts)
    b = fit_dependence(small_panel, _config(small_table), opts)
    assert a.theta_hat == b.theta_hat
    assert a.loglik_at_opt == b.loglik_at_opt
    assert a.evals == b.evals


def test_fit_never_below_init(small_panel, small_table, theta_i):
    cfg = _config(small_table)
    res = fit_dependence(small_panel, cfg, FitOptions(init=theta_i, max_evals=60, restarts=1))
    ll_init = CensoredWorkspace(small_panel, cfg).loglik(theta_i)[0]
    assert res.loglik_at_opt >= ll_init
    assert isinstance(res, FitResult)
    assert res.evals > 0
    assert len(res.case_counts) == 4
    assert res.n_exceed == int(np.sum(small_panel.data > ThresholdSpec("quantile", 0.9)
                                      .resolve(small_panel)))


def test_fit_axis_swap_consistency(small_layout, small_panel, small_table, theta_i):
    # swapping coordinate axes relabels (alpha, gamma); tight tolerances so the
    # two optimizations land on the same interior optimum
    from maxstab.design import StationLayout, pair_weights

    opts = FitOptions(init=theta_i, max_evals=2000, tol_f=1e-8, tol_x=1e-7, restarts=1)
    cfg = _config(small_table)
    res = fit_dependence(small_panel, cfg, opts)

    lay_swap = StationLayout(n=small_layout.n, lambda_n=small_layout.lambda_n,
                             sites=small_layout.sites[:, ::-1].copy())
    cfg_swap = _config(pair_weights(lay_swap))
    swap_init = SmithParams(theta_i.gamma, theta_i.beta, theta_i.alpha)
    res_swap = fit_dependence(small_panel, cfg_swap, warm_options(opts, swap_init))

    assert res_swap.theta_hat.alpha == pytest.approx(res.theta_hat.gamma, rel=5e-3)
    assert res_swap.theta_hat.gamma == pytest.approx(res.theta_hat.alpha, rel=5e-3)
    assert res_swap.theta_hat.beta == pytest.approx(res.theta_hat.beta, abs=5e-3)
    assert res_swap.loglik_at_opt == pytest.approx(res.loglik_at_opt, rel=1e-8)


def test_write_fit_csv(tmp_path, small_panel, small_table, theta_i):
    res = fit_dependence(small_panel, _config(small_table),
                         FitOptions(init=theta_i, max_evals=60, restarts=1))
    path = tmp_path / "fit.csv"
    write_fit_csv(path, res)
    header, rows = read_csv(path)
    assert header == ["alpha", "beta", "gamma", "loglik", "converged", "evals", "n_exceed"]
    assert len(rows) == 1
    row = rows[0]
    assert float(row[0]) == res.theta_hat.alpha
    assert float(row[3]) == res.loglik_at_opt
    assert row[4] in ("true", "false")
    assert int(row[5]) == res.evals
