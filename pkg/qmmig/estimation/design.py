"""Design matrices from panel frames: continuous terms, categoricals with a baseline, fixed effects and interactions."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/03_estimation.design.ipynb.

# %% auto 0
__all__ = ['Continuous', 'Categorical', 'FixedEffect', 'Interaction', 'DesignSpec', 'DesignMatrix', 'build_design',
           'as_frame']

# %% ../../nbs/03_estimation.design.ipynb 2
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
from fastcore.basics import patch

from ..core import ValidationError

logger = logging.getLogger(__name__)

# %% ../../nbs/03_estimation.design.ipynb 3
@dataclass(frozen=True)
class Continuous:
    name: str
    @property
    def variables(self): return (self.name,)

@dataclass(frozen=True)
class Categorical:
    "One dummy per level except `baseline`."
    name: str
    baseline: object
    @property
    def variables(self): return (self.name,)

@dataclass(frozen=True)
class FixedEffect:
    "Level dummies with the smallest level as baseline."
    name: str
    @property
    def variables(self): return (self.name,)

@dataclass(frozen=True)
class Interaction:
    "Elementwise product; a component declared as categorical expands to one product per non-baseline dummy."
    left: str
    right: str
    @property
    def variables(self): return (self.left, self.right)

Term = Union[Continuous, Categorical, FixedEffect, Interaction]

# %% ../../nbs/03_estimation.design.ipynb 4
@dataclass
class DesignSpec:
    response: Optional[str]
    terms: List[Term] = field(default_factory=list)
    weight: Optional[str] = None
    intercept: bool = True

    def variables(self):
        out = [self.response] if self.response else []
        for t in self.terms: out += [v for v in t.variables if v not in out]
        if self.weight and self.weight not in out: out.append(self.weight)
        return out

    def validate(self):
        if len(set(self.terms)) != len(self.terms): raise ValidationError("design has duplicate terms")
        return self

    def without(self, *names):
        "Copy without terms that involve any of `names`."
        terms = [t for t in self.terms if not set(t.variables) & set(names)]
        return DesignSpec(self.response, terms, self.weight, self.intercept)

# %% ../../nbs/03_estimation.design.ipynb 5
@dataclass
class DesignMatrix:
    X: np.ndarray
    y: Optional[np.ndarray]
    w: np.ndarray
    columns: List[str]
    index: pd.Index                      # rows of the source frame that survived listwise deletion
    n_dropped_rows: int = 0
    dropped_terms: List[str] = field(default_factory=list)
    levels: Dict[str, list] = field(default_factory=dict)

    @property
    def shape(self): return self.X.shape

    @property
    def has_intercept(self): return bool(self.columns) and self.columns[0] == 'const'

@patch
def subset(self: DesignMatrix, mask):
    "Rows selected by a boolean mask aligned with `index`."
    m = np.asarray(mask, dtype=bool)
    return DesignMatrix(self.X[m], None if self.y is None else self.y[m], self.w[m], list(self.columns),
                        self.index[m], self.n_dropped_rows, list(self.dropped_terms), dict(self.levels))

@patch
def column(self: DesignMatrix, label):
    return self.X[:, self.columns.index(label)]

# %% ../../nbs/03_estimation.design.ipynb 6
def as_frame(data) -> pd.DataFrame:
    "Accept a `PanelDataset` or a plain frame."
    return getattr(data, 'frame', data)

def _label(name, level):
    if isinstance(level, (float, np.floating)) and float(level).is_integer(): level = int(level)
    return f"{name}[{level}]"

def _dummies(col: pd.Series, name, baseline, fixed_levels=None):
    levels = sorted(col.unique().tolist()) if fixed_levels is None else list(fixed_levels)
    if baseline not in levels: raise ValidationError(f"baseline {baseline!r} is not a level of {name}")
    labels, cols = [], []
    vals = col.to_numpy()
    for lv in levels:
        if lv == baseline: continue
        labels.append(_label(name, lv))
        cols.append((vals == lv).astype(float))
    return levels, labels, cols

# %% ../../nbs/03_estimation.design.ipynb 7
def build_design(data, spec: DesignSpec, levels: Optional[Dict[str, list]] = None) -> DesignMatrix:
    """
    Encode `spec` over `data` after listwise deletion of rows with a missing referenced value.
    `levels` pins the level set of categorical/fixed-effect terms (used to rebuild a training design on new rows).
    """
    spec.validate()
    df = as_frame(data)
    names = spec.variables()
    unknown = [v for v in names if v not in df.columns]
    if unknown: raise ValidationError(f"unknown variables: {unknown}")
    sub = df[names]
    ok = sub.notna().all(axis=1).to_numpy()
    n_dropped = int((~ok).sum())
    if not ok.any(): raise ValidationError("every row has a missing value in the referenced variables")
    if n_dropped: logger.info("listwise deletion dropped %d of %d rows", n_dropped, len(df))
    sub = sub[ok]
    levels = dict(levels or {})

    cat_terms = {t.name: t for t in spec.terms if isinstance(t, (Categorical, FixedEffect))}
    dummies, dropped_terms, used_levels = {}, [], {}
    for name, t in cat_terms.items():
        col = sub[name]
        lv = levels.get(name)
        if lv is None and col.nunique() < 2:
            logger.warning("categorical %s has a single level in the data; term dropped", name)
            dropped_terms.append(name)
            continue
        base = t.baseline if isinstance(t, Categorical) else (min(lv) if lv is not None else col.min())
        all_lv, labels, cols = _dummies(col, name, base, lv)
        used_levels[name] = all_lv
        dummies[name] = (labels, cols)

    columns, mats = [], []
    if spec.intercept:
        columns.append('const')
        mats.append(np.ones(len(sub)))
    for t in spec.terms:
        if isinstance(t, Continuous):
            columns.append(t.name)
            mats.append(sub[t.name].to_numpy(dtype=float))
        elif isinstance(t, (Categorical, FixedEffect)):
            if t.name in dropped_terms: continue
            labels, cols = dummies[t.name]
            columns += labels
            mats += cols
        else:
            parts = []
            for v in (t.left, t.right):
                if v in dummies: parts.append(list(zip(*dummies[v])))
                elif v in dropped_terms: parts.append([])
                else: parts.append([(v, sub[v].to_numpy(dtype=float))])
            for ll, lc in parts[0]:
                for rl, rc in parts[1]:
                    columns.append(f"{ll}*{rl}")
                    mats.append(lc * rc)
    if len(set(columns)) != len(columns): raise ValidationError(f"duplicate design columns: {columns}")
    X = np.column_stack(mats) if mats else np.empty((len(sub), 0))
    y = sub[spec.response].to_numpy(dtype=float) if spec.response else None
    w = sub[spec.weight].to_numpy(dtype=float) if spec.weight else np.ones(len(sub))
    if np.any(w < 0) or not w.sum() > 0: raise ValidationError("weights must be >= 0 with a positive total")
    return DesignMatrix(X, y, w, columns, sub.index, n_dropped, dropped_terms, used_levels)
