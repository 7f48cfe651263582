import numpy as np
import pandas as pd
from fastcore.test import test_eq, test_close, test_fail

from qmmig.estimation.design import DesignSpec, Continuous, build_design
from qmmig.estimation.linear import *

def with_const(x): return np.column_stack([np.ones(len(x)), x])

def test_exact_line():
    x = np.arange(10.)
    f = ols_fit(with_const(x), 2 * x + 1)
    test_close(f.params, [1., 2.], eps=1e-10)
    test_close(f.residuals, np.zeros(10), eps=1e-10)
    test_close(f.r_squared, 1., eps=1e-12)

def test_intercept_only():
    rng = np.random.default_rng(0)
    y, w = rng.normal(size=30), rng.uniform(.5, 3, 30)
    f = ols_fit(np.ones((30, 1)), y, w)
    test_close(f.params[0], np.average(y, weights=w), eps=1e-12)

def test_normal_equations():
    rng = np.random.default_rng(1)
    X = with_const(rng.normal(size=(50, 3)))
    y, w = rng.normal(size=50), rng.uniform(.2, 2, 50)
    f = ols_fit(X, y, w, robust=False)
    W = np.diag(w)
    beta = np.linalg.solve(X.T @ W @ X, X.T @ W @ y)
    test_close(f.params, beta, eps=1e-8)
    sigma2 = np.sum(w * f.residuals ** 2) / (50 - 4)
    test_close(f.covariance, sigma2 * np.linalg.inv(X.T @ W @ X), eps=1e-10)
    # residuals orthogonal to every column under the weights
    test_close(X.T @ (w * f.residuals), np.zeros(4), eps=1e-8)
    test_close(f.fitted + f.residuals, y, eps=1e-10)
    test_close(ols_fit(X, y).residuals.mean(), 0., eps=1e-8)

def test_hc1():
    rng = np.random.default_rng(2)
    X = with_const(rng.normal(size=(60, 2)))
    y = X @ [1, .5, -.3] + rng.normal(size=60) * (1 + np.abs(X[:, 1]))
    f = ols_fit(X, y)
    bread = np.linalg.inv(X.T @ X)
    meat = (X * f.residuals[:, None] ** 2).T @ X
    test_close(f.covariance, bread @ meat @ bread * 60 / 57, eps=1e-10)
    assert np.all(np.linalg.eigvalsh(f.covariance) > -1e-8)
    test_eq(f.covariance, f.covariance.T)

def test_hc1_matches_classical_when_homoskedastic():
    ratios = []
    for seed in range(50):
        rng = np.random.default_rng(seed)
        X = with_const(rng.normal(size=(2000, 2)))
        y = X @ [0, 1, 1] + rng.normal(size=2000)
        ratios.append(ols_fit(X, y).se[1] / ols_fit(X, y, robust=False).se[1])
    test_close(np.mean(ratios), 1., eps=.05)

def test_rank_deficiency():
    rng = np.random.default_rng(3)
    x = rng.normal(size=40)
    X = np.column_stack([np.ones(40), x, 2 * x, np.zeros(40)])
    f = ols_fit(X, 3 * x + 1)
    test_eq(f.labels, ['x0', 'x1'])
    test_eq(f.dropped_columns, ['x2', 'x3'])
    test_eq(f.full_params().shape, (4,))
    test_close(predict_log(f, X), 3 * x + 1, eps=1e-10)
    test_fail(lambda: f.coef('x2'), contains='not an estimated')
    test_fail(lambda: ols_fit(np.ones((2, 3)), np.ones(2)), contains='cannot identify')

def test_design_labels_and_prediction():
    rng = np.random.default_rng(4)
    df = pd.DataFrame({'x': rng.normal(size=100), 'z': rng.normal(size=100)})
    df['y'] = 1 + 2 * df['x'] - df['z'] + rng.normal(size=100) * .1
    d = build_design(df, DesignSpec('y', [Continuous('x'), Continuous('z')]))
    f = ols_fit(d)
    test_eq(list(f.coefficients), ['const', 'x', 'z'])
    c, se = f.coef('x')
    assert abs(c - 2) < 3 * se + 1e-3
    test_close(predict_log(f, d), d.y - f.residuals, eps=1e-10)
    test_close(predict_log(f, np.array([1., 0., 0.])), f.params[:1], eps=1e-12)
    row = np.array([1., .3, -2.])
    test_close(predict_log(f, row)[0], float(row @ f.params), eps=1e-12)
    swapped = build_design(df, DesignSpec('y', [Continuous('z'), Continuous('x')]))
    test_close(predict_log(f, swapped), f.fitted, eps=1e-10)
    other = build_design(df, DesignSpec('y', [Continuous('x')]))
    test_fail(lambda: predict_log(f, other), contains='do not match')
    test_fail(lambda: predict_log(f, np.ones((3, 2))), contains='columns')

def test_smearing():
    x = np.arange(10.)
    f = ols_fit(with_const(x), 2 * x + 1)
    f.residuals = np.zeros(10)
    test_close(smearing_retransform(f, [0., 1.]), np.exp([0., 1.]), eps=1e-12)
    test_eq(f.smearing_factor, 1.)
    f.residuals = np.log([2., .5])
    smearing_retransform(f, [0.])
    test_close(f.smearing_factor, 1.25, eps=1e-12)
    rng = np.random.default_rng(5)
    f.residuals = rng.normal(0, .5, 100_000)
    smearing_retransform(f, [0.])
    assert abs(f.smearing_factor / np.exp(.125) - 1) < .02
    f.residuals = np.array([1000.])
    test_fail(lambda: smearing_retransform(f, [0.]), contains='not finite')

def test_smearing_identity():
    y = np.random.default_rng(6).normal(2, .7, 500)
    f = ols_fit(np.ones((500, 1)), y)
    levels = smearing_retransform(f, predict_log(f, np.ones((500, 1))))
    test_close(levels.mean(), np.exp(y).mean(), eps=1e-10 * np.exp(y).mean())

def test_input_checks():
    test_fail(lambda: ols_fit(np.ones((5, 1)), np.ones(4)), contains='differ')
    test_fail(lambda: ols_fit(np.ones((5, 1)), [1, 2, np.nan, 4, 5]), contains='finite')
    test_fail(lambda: ols_fit(np.ones((5, 1)), np.ones(5), -np.ones(5)), contains="weights")
