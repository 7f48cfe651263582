import numpy as np
from fastcore.test import test_eq, test_close, test_fail
from scipy import stats

from qmmig.core import SeparationError, EstimationError
from qmmig.estimation import binary
from qmmig.estimation.binary import *

def two_by_two(a, b, c, d):
    "Rows with regressor 1 (a successes, b failures) and regressor 0 (c successes, d failures)."
    x = np.repeat([1., 1., 0., 0.], [a, b, c, d])
    y = np.repeat([1., 0., 1., 0.], [a, b, c, d])
    return np.column_stack([np.ones_like(x), x]), y

def probit_data(n=5000, seed=0):
    rng = np.random.default_rng(seed)
    ra = rng.integers(0, 2, n).astype(float)
    y = (0.5 - 0.8 * ra + rng.normal(size=n) > 0).astype(float)
    return np.column_stack([np.ones(n), ra]), y

def test_logit_odds_ratio():
    X, y = two_by_two(30, 20, 15, 35)
    f = binary_mle_fit(X, y, link='logit')
    test_close(f.params[1], np.log(30 * 35 / (20 * 15)), eps=1e-6)
    assert f.converged
    test_eq(f.kind, 'logit')

def test_probit_recovery():
    X, y = probit_data()
    f = binary_mle_fit(X, y, link='probit')
    c, se = f.coef('x1')
    assert abs(c + .8) < 3 * se
    assert 0 < f.pseudo_r_squared < 1
    test_close(f.fitted + f.residuals, y, eps=1e-12)

def test_null_slope():
    small = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=400)
        y = rng.permutation(np.repeat([0., 1.], 200))
        f = binary_mle_fit(np.column_stack([np.ones(400), x]), y)
        small += abs(f.stat[1]) < 2
    assert small >= 17

def test_score_and_gradient():
    X, y = probit_data(800, seed=1)
    w = np.random.default_rng(2).uniform(.5, 2, 800)
    for link in LINKS:
        f = binary_mle_fit(X, y, w, link=link)
        ws = w * 800 / w.sum()
        assert np.max(np.abs(binary_score(f.params, X, y, ws, link))) < 1e-6
        rng = np.random.default_rng(3)
        for _ in range(10):
            beta, h = rng.normal(scale=.5, size=2), 1e-6
            g = binary_score(beta, X, y, ws, link)
            num = np.array([(binary_loglik(beta + h * e, X, y, ws, link) - binary_loglik(beta - h * e, X, y, ws, link)) / (2 * h)
                            for e in np.eye(2)])
            assert np.all(np.abs(g - num) <= 1e-6 * np.maximum(np.abs(g), 1))
            Hn = np.array([(binary_score(beta + h * e, X, y, ws, link) - binary_score(beta - h * e, X, y, ws, link)) / (2 * h)
                           for e in np.eye(2)])
            test_close(binary_hessian(beta, X, y, ws, link), Hn, eps=1e-3)

def test_links_agree_in_sign():
    X, y = probit_data(2000, seed=4)
    pr, lo = binary_mle_fit(X, y, link='probit'), binary_mle_fit(X, y, link='logit')
    test_eq(np.sign(pr.params[1]), np.sign(lo.params[1]))
    # logit slopes are roughly 1.6 times probit ones
    assert 1.4 < lo.params[1] / pr.params[1] < 1.9

def test_covariance():
    X, y = probit_data(1500, seed=5)
    r, c = binary_mle_fit(X, y), binary_mle_fit(X, y, robust=False)
    test_close(r.params, c.params, eps=1e-12)
    test_close(r.se / c.se, np.ones(2), eps=.1)
    test_eq(c.covariance, c.covariance.T)
    assert np.all(np.linalg.eigvalsh(r.covariance) > -1e-8)
    test_close(c.pvalues, 2 * stats.norm.sf(np.abs(c.stat)), eps=1e-12)

def test_separation():
    x = np.linspace(-1, 1, 60)
    X = np.column_stack([np.ones(60), x])
    test_fail(lambda: binary_mle_fit(X, (x > 0).astype(float)), contains='perfectly predicted')
    test_fail(lambda: binary_mle_fit(X, np.ones(60)), contains="does not vary")
    assert issubclass(SeparationError, EstimationError)

def test_input_checks():
    X, y = two_by_two(5, 5, 5, 5)
    test_fail(lambda: binary_mle_fit(X, y * 2), contains='0/1')
    test_fail(lambda: binary_mle_fit(X, y, link='cloglog'), contains='link')
    X2 = np.column_stack([X, X[:, 1]])
    f = binary_mle_fit(X2, y, link='logit')
    test_eq(f.dropped_columns, ['x2'])
    test_close(f.params[1], 0., eps=1e-8)

def test_failed_line_search_keeps_coefficients(monkeypatch):
    X, y = two_by_two(30, 10, 10, 30)
    w = np.ones(len(y))
    hessian = binary.binary_hessian
    # with the Hessian's sign flipped every Newton step points downhill
    monkeypatch.setattr(binary, 'binary_hessian', lambda *a: -hessian(*a))
    beta, ll, converged, it = binary._newton(X, y, w, 'logit', 50, ['const', 'x'])
    test_eq(beta, np.zeros(2))
    test_close(ll, binary_loglik(np.zeros(2), X, y, w, 'logit'), eps=1e-12)
    test_eq((converged, it), (False, 1))
