"""Two-group mean equality tests used for the attrition balance table."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/07_estimation.means.ipynb.

# %% auto 0
__all__ = ['FTest', 'mean_equality_test', 'level_shares']

# %% ../../nbs/07_estimation.means.ipynb 2
from typing import NamedTuple

import numpy as np
import pandas as pd
from scipy import stats

from ..core import ValidationError
from .design import as_frame

# %% ../../nbs/07_estimation.means.ipynb 3
class FTest(NamedTuple):
    statistic: float
    pvalue: float

def _group_stats(x, w):
    W = w.sum()
    m = np.sum(w * x) / W
    return W, m, np.sum(w * (x - m) ** 2)

def mean_equality_test(data, variable: str, group_flag: str, weights=None) -> FTest:
    """
    One-way ANOVA F of equal means across the two groups of `group_flag`, p from F(1, n-2).
    `weights` is a column name or array; weights are rescaled to sum to the number of rows.
    """
    df = as_frame(data)
    for v in (variable, group_flag):
        if v not in df.columns: raise ValidationError(f"unknown variable: {v}")
    if isinstance(weights, str): w = df[weights].to_numpy(dtype=float)
    elif weights is None: w = np.ones(len(df))
    else: w = np.asarray(weights, dtype=float)
    x, g = df[variable].to_numpy(dtype=float), df[group_flag].to_numpy()
    ok = np.isfinite(x) & pd.notna(g) & np.isfinite(w)
    x, g, w = x[ok], g[ok].astype(float), w[ok]
    if np.any(w < 0): raise ValidationError("weights must be >= 0")
    ga, gb = g == 1, g == 0
    if not (ga | gb).all(): raise ValidationError(f"{group_flag} must be coded 0/1")
    if not (ga.any() and gb.any()): raise ValidationError("both groups must be non-empty")
    n = x.size
    if n < 3: raise ValidationError("need at least three observations")
    w = w * (n / w.sum())
    Wa, ma, sa = _group_stats(x[ga], w[ga])
    Wb, mb, sb = _group_stats(x[gb], w[gb])
    ssb = Wa * Wb / (Wa + Wb) * (ma - mb) ** 2
    ssw = sa + sb
    if ssw <= 1e-300 * max(1.0, ssb):
        return FTest(0.0, 1.0) if ssb == 0 else FTest(float('inf'), 0.0)
    F = float(ssb / (ssw / (n - 2)))
    return FTest(F, float(stats.f.sf(F, 1, n - 2)))

# %% ../../nbs/07_estimation.means.ipynb 4
def level_shares(data, variable: str, prefix=None) -> pd.DataFrame:
    "0/1 indicator columns per level of a categorical, named `variable[level]`."
    col = as_frame(data)[variable]
    out = {}
    for lv in sorted(col.dropna().unique().tolist()):
        lab = int(lv) if isinstance(lv, float) and float(lv).is_integer() else lv
        out[f"{prefix or variable}[{lab}]"] = np.where(col.isna(), np.nan, (col == lv).astype(float))
    return pd.DataFrame(out, index=col.index)
