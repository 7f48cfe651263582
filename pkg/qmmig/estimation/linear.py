"""Weighted least squares with HC1 covariance, log-model prediction and smearing retransformation."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/04_estimation.linear.ipynb.

# %% auto 0
__all__ = ['RANK_TOL', 'ModelFit', 'independent_columns', 'ols_fit', 'predict_log', 'smearing_retransform']

# %% ../../nbs/04_estimation.linear.ipynb 2
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from fastcore.basics import patch
from scipy import stats
from scipy.linalg import solve_triangular

from ..core import ValidationError, EstimationError
from .design import DesignMatrix

logger = logging.getLogger(__name__)

# %% ../../nbs/04_estimation.linear.ipynb 3
RANK_TOL = 1e-9

@dataclass
class ModelFit:
    """
    Result of an OLS, probit or logit fit.
    `columns` are the requested design columns; `labels` the ones that were estimated, in order.
    Columns dropped for rank deficiency have no coefficient and predict with zero effect.
    """
    kind: str
    columns: List[str]
    labels: List[str]
    params: np.ndarray
    covariance: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    n_obs: int
    dropped_columns: List[str] = field(default_factory=list)
    r_squared: Optional[float] = None
    pseudo_r_squared: Optional[float] = None
    log_likelihood: Optional[float] = None
    converged: bool = True
    iterations: int = 0
    robust: bool = True
    df_resid: int = 0
    n_dropped_rows: int = 0
    smearing_factor: Optional[float] = None

    @property
    def coefficients(self) -> Dict[str, float]: return dict(zip(self.labels, self.params.tolist()))

    @property
    def se(self): return np.sqrt(np.clip(np.diag(self.covariance), 0, None))

# %% ../../nbs/04_estimation.linear.ipynb 4
@patch(as_prop=True)
def stat(self: ModelFit):
    "t statistics for OLS, z statistics for the MLE fits."
    se = self.se
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(se > 0, self.params / np.where(se > 0, se, 1), np.nan)

@patch(as_prop=True)
def pvalues(self: ModelFit):
    z = np.abs(self.stat)
    if self.kind == 'ols' and self.df_resid > 0: return 2 * stats.t.sf(z, self.df_resid)
    return 2 * stats.norm.sf(z)

@patch
def coef(self: ModelFit, label):
    "Coefficient and standard error of one term."
    if label not in self.labels: raise KeyError(f"{label} is not an estimated term (dropped: {self.dropped_columns})")
    i = self.labels.index(label)
    return float(self.params[i]), float(self.se[i])

@patch
def full_params(self: ModelFit):
    "Coefficients over `columns`, zero for dropped columns."
    lookup = self.coefficients
    return np.array([lookup.get(c, 0.0) for c in self.columns])

# %% ../../nbs/04_estimation.linear.ipynb 5
def independent_columns(X, w=None, tol=RANK_TOL):
    """
    Indices of a maximal set of linearly independent columns, scanning left to right.
    A column that is (numerically) a combination of earlier kept columns is dropped, so later columns go first.
    """
    Xw = np.asarray(X, dtype=float) if w is None else X * np.sqrt(w)[:, None]
    Q, keep = np.empty_like(Xw), []
    for j in range(Xw.shape[1]):
        v = Xw[:, j].copy()
        norm = np.linalg.norm(v)
        if norm == 0: continue
        B = Q[:, :len(keep)]
        for _ in range(2): v -= B @ (B.T @ v)
        r = np.linalg.norm(v)
        if r > tol * norm:
            Q[:, len(keep)] = v / r
            keep.append(j)
    return keep

def _unpack(design, response, weights):
    if isinstance(design, DesignMatrix):
        X, cols, n_dropped = design.X, list(design.columns), design.n_dropped_rows
        response = design.y if response is None else response
        weights = design.w if weights is None else weights
    else:
        X = np.asarray(design, dtype=float)
        if X.ndim == 1: X = X[:, None]
        cols, n_dropped = [f"x{j}" for j in range(X.shape[1])], 0
    if response is None: raise ValidationError("no response supplied")
    y = np.asarray(response, dtype=float).ravel()
    w = np.ones_like(y) if weights is None else np.asarray(weights, dtype=float).ravel()
    if X.shape[0] != y.size or w.size != y.size: raise ValidationError("design, response and weights differ in rows")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y)) and np.all(np.isfinite(w))):
        raise ValidationError("design, response and weights must be finite")
    if np.any(w < 0) or not w.sum() > 0: raise ValidationError("weights must be >= 0 with a positive total")
    return X, y, w, cols, n_dropped

def _drop_dependent(X, w, cols):
    keep = independent_columns(X, w)
    dropped = [c for j, c in enumerate(cols) if j not in keep]
    if dropped: logger.warning("dropped %d collinear or empty columns: %s", len(dropped), dropped)
    return X[:, keep], [cols[j] for j in keep], dropped

# %% ../../nbs/04_estimation.linear.ipynb 6
def ols_fit(design, response=None, weights=None, robust: bool = True) -> ModelFit:
    """
    Weighted least squares through a QR decomposition of sqrt(w) X.
    `robust` gives HC1 covariance; otherwise the classical one.
    """
    X, y, w, cols, n_dropped = _unpack(design, response, weights)
    n = y.size
    if n < X.shape[1] + 1: raise ValidationError(f"{n} rows cannot identify {X.shape[1]} columns")
    Xk, labels, dropped = _drop_dependent(X, w, cols)
    k = Xk.shape[1]
    sw = np.sqrt(w)
    Q, R = np.linalg.qr(Xk * sw[:, None])
    beta = solve_triangular(R, Q.T @ (y * sw))
    fitted = Xk @ beta
    resid = y - fitted
    Rinv = solve_triangular(R, np.eye(k))
    bread = Rinv @ Rinv.T
    df_resid = n - k
    if robust:
        u = (w * resid)[:, None] * Xk
        cov = bread @ (u.T @ u) @ bread * (n / df_resid)
    else:
        cov = bread * (np.sum(w * resid ** 2) / df_resid)
    cov = (cov + cov.T) / 2
    ssr = np.sum(w * resid ** 2)
    has_const = 'const' in labels
    centre = np.average(y, weights=w) if has_const else 0.0
    tss = np.sum(w * (y - centre) ** 2)
    r2 = (1.0 if ssr <= 1e-30 else 0.0) if tss <= 0 else float(1 - ssr / tss)
    logger.info("ols: n=%d k=%d R2=%.4f", n, k, r2)
    return ModelFit('ols', cols, labels, beta, cov, resid, fitted, n, dropped, r_squared=r2, robust=robust,
                    df_resid=df_resid, n_dropped_rows=n_dropped)

# %% ../../nbs/04_estimation.linear.ipynb 7
def predict_log(fit: ModelFit, design) -> np.ndarray:
    "Linear index per row; a `DesignMatrix` is aligned by column label, a bare array must match `fit.columns`."
    if isinstance(design, DesignMatrix):
        if list(design.columns) != list(fit.columns):
            missing = sorted(set(fit.columns) - set(design.columns))
            extra = sorted(set(design.columns) - set(fit.columns))
            if extra or missing: raise ValidationError(f"design columns do not match the fit: missing {missing}, extra {extra}")
            X = np.column_stack([design.column(c) for c in fit.columns])
        else: X = design.X
    else:
        X = np.asarray(design, dtype=float)
        if X.ndim == 1: X = X[None, :]
        if X.shape[1] != len(fit.columns):
            raise ValidationError(f"design has {X.shape[1]} columns, fit expects {len(fit.columns)}")
    return X @ fit.full_params()

def smearing_retransform(fit: ModelFit, log_predictions) -> np.ndarray:
    "exp(prediction) times the mean of exp(training residual); the factor is stored on the fit."
    if fit.residuals is None or np.size(fit.residuals) == 0: raise ValidationError("fit carries no residuals")
    with np.errstate(over='ignore'):
        s = float(np.mean(np.exp(fit.residuals)))
    if not np.isfinite(s): raise EstimationError("smearing factor is not finite")
    fit.smearing_factor = s
    return np.exp(np.asarray(log_predictions, dtype=float)) * s
