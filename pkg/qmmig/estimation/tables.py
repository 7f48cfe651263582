"""Fit tables: `term,coef,se,z_or_t,p` rows with footer comment lines carrying the fit statistics."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/08_estimation.tables.ipynb.

# %% auto 0
__all__ = ['FIT_COLUMNS', 'fit_table', 'fit_footer', 'write_fit_csv', 'read_fit_csv']

# %% ../../nbs/08_estimation.tables.ipynb 2
from typing import Dict, Mapping, Optional, Union

import pandas as pd

from .linear import ModelFit

# %% ../../nbs/08_estimation.tables.ipynb 3
FIT_COLUMNS = ['term', 'coef', 'se', 'z_or_t', 'p']

def fit_table(fit: ModelFit) -> pd.DataFrame:
    return pd.DataFrame({'term': fit.labels, 'coef': fit.params, 'se': fit.se, 'z_or_t': fit.stat, 'p': fit.pvalues})

def _fmt(v): return '' if v is None else (f"{v:.10g}" if isinstance(v, float) else str(v))

def fit_footer(fit: ModelFit) -> Dict[str, str]:
    out = {'kind': fit.kind, 'n_obs': fit.n_obs}
    if fit.r_squared is not None: out['r_squared'] = fit.r_squared
    if fit.pseudo_r_squared is not None: out['pseudo_r_squared'] = fit.pseudo_r_squared
    out['converged'] = fit.converged
    out['n_dropped_rows'] = fit.n_dropped_rows
    if fit.dropped_columns: out['dropped'] = ';'.join(fit.dropped_columns)
    if fit.smearing_factor is not None: out['smearing_factor'] = fit.smearing_factor
    return {k: _fmt(v) for k, v in out.items()}

# %% ../../nbs/08_estimation.tables.ipynb 4
def write_fit_csv(path, fits: Union[ModelFit, Mapping[str, ModelFit]], failures: Optional[Mapping[str, str]] = None):
    """
    Write one fit, or several keyed by model name (a leading `model` column is added).
    Each fit gets a `# key=value,...` footer line; `failures` adds `# model=...,error=...` lines for models that failed.
    """
    single = isinstance(fits, ModelFit)
    items = {'': fits} if single else dict(fits)
    frames, footers = [], []
    for name, fit in items.items():
        t = fit_table(fit)
        if not single: t.insert(0, 'model', name)
        frames.append(t)
        meta = ({} if single else {'model': name}) | fit_footer(fit)
        footers.append(','.join(f"{k}={v}" for k, v in meta.items()))
    for name, err in (failures or {}).items():
        footers.append(f"model={name},error={' '.join(str(err).replace(',', ';').split())}")
    cols = FIT_COLUMNS if single else ['model'] + FIT_COLUMNS
    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=cols)
    with open(path, 'w', newline='') as f:
        table.to_csv(f, index=False, float_format='%.10g')
        for line in footers: f.write(f"# {line}\n")

def read_fit_csv(path):
    "Table and parsed footer lines."
    table = pd.read_csv(path, comment='#')
    with open(path) as f: lines = [l[1:].strip() for l in f if l.startswith('#')]
    return table, [dict(kv.split('=', 1) for kv in l.split(',')) for l in lines]
