"""Difference-in-differences by OLS on treatment, group and their interaction."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/06_estimation.did.ipynb.

# %% auto 0
__all__ = ['DidSpec', 'cell_means', 'naive_did', 'did_fit']

# %% ../../nbs/06_estimation.did.ipynb 2
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd

from ..core import ValidationError, EstimationError
from .design import Continuous, Interaction, DesignSpec, build_design, as_frame
from .linear import ModelFit, ols_fit

logger = logging.getLogger(__name__)

# %% ../../nbs/06_estimation.did.ipynb 3
@dataclass
class DidSpec:
    outcome: str
    treat: str
    group: str
    covariates: List = field(default_factory=list)
    weight: Optional[str] = None

    @property
    def interaction(self): return f"{self.treat}*{self.group}"

    def design(self) -> DesignSpec:
        terms = [Continuous(self.treat), Continuous(self.group), Interaction(self.treat, self.group)] + list(self.covariates)
        return DesignSpec(self.outcome, terms, self.weight)

# %% ../../nbs/06_estimation.did.ipynb 4
def _check_binary(df, name):
    vals = set(pd.unique(df[name].dropna()).tolist())
    if not vals <= {0, 1}: raise ValidationError(f"{name} must be coded 0/1, found {sorted(vals)}")

def cell_means(data, spec: DidSpec, weighted: bool = True) -> pd.DataFrame:
    "Outcome mean and count per (treat, group) cell, over rows with the outcome observed."
    df = as_frame(data)
    df = df.dropna(subset=[spec.outcome, spec.treat, spec.group]).astype({spec.treat: int, spec.group: int})
    w = df[spec.weight] if (weighted and spec.weight) else pd.Series(1.0, index=df.index)
    g = df.assign(_w=w, _wy=w * df[spec.outcome]).groupby([spec.treat, spec.group])
    out = pd.DataFrame({'mean': g['_wy'].sum() / g['_w'].sum(), 'n': g.size()})
    full = pd.MultiIndex.from_product([[0, 1], [0, 1]], names=[spec.treat, spec.group])
    return out.reindex(full).assign(n=lambda d: d['n'].fillna(0).astype(int))

def naive_did(cells: pd.DataFrame) -> float:
    "(m11 - m10) - (m01 - m00) from a `cell_means` table."
    m = cells['mean']
    return float((m[(1, 1)] - m[(1, 0)]) - (m[(0, 1)] - m[(0, 0)]))

# %% ../../nbs/06_estimation.did.ipynb 5
def did_fit(data, spec: DidSpec, robust: bool = True) -> ModelFit:
    """
    OLS of the outcome on `[1, treat, group, treat*group, covariates]`; the estimate is the interaction coefficient.
    An empty cell is an error without covariates and a warning with them.
    """
    df = as_frame(data)
    for v in (spec.treat, spec.group):
        if v not in df.columns: raise ValidationError(f"unknown variable: {v}")
        _check_binary(df, v)
    dm = build_design(df, spec.design())
    t, g = dm.column(spec.treat), dm.column(spec.group)
    counts = {(a, b): int(np.sum((t == a) & (g == b))) for a in (0, 1) for b in (0, 1)}
    empty = [c for c, n in counts.items() if n == 0]
    if empty:
        msg = f"empty ({spec.treat}, {spec.group}) cells: {empty}"
        if not spec.covariates: raise EstimationError(msg)
        logger.warning("%s; the interaction is identified from covariates only", msg)
    fit = ols_fit(dm, robust=robust)
    if spec.interaction in fit.labels:
        theta, se = fit.coef(spec.interaction)
        logger.info("did: theta=%.4f (se %.4f) cells=%s", theta, se, counts)
    else: logger.warning("did: interaction %s was dropped as collinear", spec.interaction)
    return fit
