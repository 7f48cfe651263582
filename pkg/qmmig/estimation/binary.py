"""Probit and logit maximum likelihood by damped Newton iterations on the analytic score and Hessian."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/05_estimation.binary.ipynb.

# %% auto 0
__all__ = ['LINKS', 'SEPARATION_BOUND', 'binary_loglik', 'binary_score', 'binary_hessian', 'binary_mle_fit']

# %% ../../nbs/05_estimation.binary.ipynb 2
import logging

import numpy as np
from scipy import stats
from scipy.special import expit, log_expit, log_ndtr

from ..core import ValidationError, EstimationError, SeparationError
from .linear import ModelFit, _unpack, _drop_dependent

logger = logging.getLogger(__name__)

# %% ../../nbs/05_estimation.binary.ipynb 3
LINKS = ('probit', 'logit')
SEPARATION_BOUND = 30.0

def _link_terms(link, eta, y):
    "Per-observation log-likelihood and its first two derivatives in the linear index."
    if link == 'logit':
        p = expit(eta)
        return y * log_expit(eta) + (1 - y) * log_expit(-eta), y - p, -p * (1 - p)
    if link == 'probit':
        q = 2 * y - 1
        ll = log_ndtr(q * eta)
        lam = q * np.exp(stats.norm.logpdf(q * eta) - ll)
        return ll, lam, -lam * (lam + eta)
    raise ValidationError(f"link must be one of {LINKS}, got {link!r}")

# %% ../../nbs/05_estimation.binary.ipynb 4
def binary_loglik(beta, X, y, w, link):
    return float(np.sum(w * _link_terms(link, X @ beta, y)[0]))

def binary_score(beta, X, y, w, link):
    return X.T @ (w * _link_terms(link, X @ beta, y)[1])

def binary_hessian(beta, X, y, w, link):
    d2 = _link_terms(link, X @ beta, y)[2]
    return (X * (w * d2)[:, None]).T @ X

# %% ../../nbs/05_estimation.binary.ipynb 5
def _standardised(beta, X, w):
    sd = np.sqrt(np.average((X - np.average(X, axis=0, weights=w)) ** 2, axis=0, weights=w))
    return np.abs(beta) * np.where(sd > 0, sd, 1.0)

def _newton(X, y, w, link, max_iter, labels):
    beta = np.zeros(X.shape[1])
    ll = binary_loglik(beta, X, y, w, link)
    for it in range(1, max_iter + 1):
        g = binary_score(beta, X, y, w, link)
        if np.max(np.abs(g)) < 1e-8: return beta, ll, True, it - 1
        try: step = np.linalg.solve(-binary_hessian(beta, X, y, w, link), g)
        except np.linalg.LinAlgError as e: raise EstimationError(f"singular Hessian at iteration {it}") from e
        t = 1.0
        while True:
            cand = beta + t * step
            ll_c = binary_loglik(cand, X, y, w, link)
            if np.isfinite(ll_c) and ll_c >= ll - 1e-12 * abs(ll): break
            t /= 2
            # no ascent along the Newton direction: keep the last accepted coefficients
            if t < 1e-10: return beta, ll, False, it
        beta, ll = cand, ll_c
        big = _standardised(beta, X, w) > SEPARATION_BOUND
        if big.any():
            culprits = [l for l, b in zip(labels, big) if b]
            raise SeparationError(f"coefficients diverge on {culprits}: the response is perfectly predicted")
        if np.max(np.abs(t * step)) < 1e-10: return beta, ll, True, it
    return beta, ll, False, max_iter

# %% ../../nbs/05_estimation.binary.ipynb 6
def binary_mle_fit(design, response=None, weights=None, link: str = 'probit', robust: bool = True,
                   max_iter: int = 100) -> ModelFit:
    """
    Probit or logit fit with McFadden pseudo-R2.
    Weights are rescaled to mean one, so they act as sampling weights; `robust` gives the sandwich covariance.
    """
    if link not in LINKS: raise ValidationError(f"link must be one of {LINKS}, got {link!r}")
    X, y, w, cols, n_dropped = _unpack(design, response, weights)
    if not np.all((y == 0) | (y == 1)): raise ValidationError("binary response must be coded 0/1")
    n = y.size
    if n < X.shape[1] + 1: raise ValidationError(f"{n} rows cannot identify {X.shape[1]} columns")
    w = w * (n / w.sum())
    ybar = float(np.average(y, weights=w))
    if ybar in (0.0, 1.0): raise SeparationError("the response does not vary")
    Xk, labels, dropped = _drop_dependent(X, w, cols)
    beta, ll, converged, iters = _newton(Xk, y, w, link, max_iter, labels)
    if not converged: logger.warning("%s did not converge in %d iterations", link, max_iter)
    H = binary_hessian(beta, Xk, y, w, link)
    try: Hinv = np.linalg.inv(H)
    except np.linalg.LinAlgError as e: raise EstimationError("singular Hessian at the optimum") from e
    if robust:
        s = (w * _link_terms(link, Xk @ beta, y)[1])[:, None] * Xk
        cov = Hinv @ (s.T @ s) @ Hinv * (n / (n - 1))
    else: cov = -Hinv
    cov = (cov + cov.T) / 2
    ll0 = float(np.sum(w * (y * np.log(ybar) + (1 - y) * np.log(1 - ybar))))
    p = expit(Xk @ beta) if link == 'logit' else stats.norm.cdf(Xk @ beta)
    logger.info("%s: n=%d k=%d loglik=%.3f iterations=%d", link, n, len(labels), ll, iters)
    return ModelFit(link, cols, labels, beta, cov, y - p, p, n, dropped, pseudo_r_squared=1 - ll / ll0,
                    log_likelihood=ll, converged=converged, iterations=iters, robust=robust, df_resid=n - len(labels),
                    n_dropped_rows=n_dropped)
