"""Weighted empirical CDFs, pointwise CDF comparison and bootstrap significance bands."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/02_theory.empirical.ipynb.

# %% auto 0
__all__ = ['MAX_GRID', 'EmpiricalDistribution', 'DominanceReport', 'empirical_cdf', 'compare_cdfs', 'dominance_bands',
           'qm_prediction', 'read_report_csv']

# %% ../../nbs/02_theory.empirical.ipynb 2
import logging
from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np
import pandas as pd
from fastcore.basics import patch
from fastcore.parallel import parallel

from ..core import ValidationError, make_rng, check_positive_int
from .prospects import Dominance, classify_differences

logger = logging.getLogger(__name__)

# %% ../../nbs/02_theory.empirical.ipynb 3
MAX_GRID = 512

class EmpiricalDistribution:
    """
    Weighted sample with a right-continuous step CDF.
    The raw observations are kept so the sample can be resampled with its weights.
    """
    def __init__(self, values, weights=None):
        x = np.asarray(values, dtype=float).ravel()
        w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float).ravel()
        if x.size == 0: raise ValidationError("empirical distribution needs at least one point")
        if w.shape != x.shape: raise ValidationError("values and weights differ in length")
        if not np.all(np.isfinite(x)): raise ValidationError("sample values must be finite")
        if not np.all(np.isfinite(w)) or np.any(w < 0): raise ValidationError("weights must be finite and >= 0")
        total = w.sum()
        if not total > 0: raise ValidationError("total weight must be positive")
        self.raw_values, self.raw_weights = x, w / total
        uniq, inv = np.unique(x, return_inverse=True)
        mass = np.zeros(uniq.size)
        np.add.at(mass, inv, self.raw_weights)
        keep = mass > 0
        self.values, self.weights = uniq[keep], mass[keep]
        cum = np.cumsum(self.weights)
        cum[-1] = 1.0
        self.cum = cum

    def __len__(self): return self.raw_values.size

    def __repr__(self): return f"EmpiricalDistribution(n={len(self)}, support={self.values.size})"

# %% ../../nbs/02_theory.empirical.ipynb 4
@patch
def cdf(self: EmpiricalDistribution, v):
    "CDF at scalar or array `v`."
    i = np.searchsorted(self.values, v, side='right')
    out = np.where(i == 0, 0.0, self.cum[np.maximum(i - 1, 0)])
    return float(out) if np.ndim(out) == 0 else out

@patch
def resample_cdf(self: EmpiricalDistribution, grid, rng):
    "CDF on `grid` of one weighted bootstrap draw of the same size as the sample."
    n = len(self)
    idx = rng.choice(n, size=n, replace=True, p=self.raw_weights)
    draw = np.sort(self.raw_values[idx])
    return np.searchsorted(draw, grid, side='right') / n

# %% ../../nbs/02_theory.empirical.ipynb 5
@dataclass
class DominanceReport:
    "Pointwise comparison of F_a and F_b; `diff` is F_a - F_b on `grid`."
    grid: np.ndarray
    diff: np.ndarray
    crossings: List[float]
    verdict: Dominance
    band_lo: Optional[np.ndarray] = None
    band_hi: Optional[np.ndarray] = None
    level: Optional[float] = None
    replicates: int = 0
    tolerance: float = 1e-12
    labels: tuple = ('a', 'b')
    # sign changes smaller than this are not counted as crossings; the verdict uses `tolerance`
    crossing_tolerance: float = 1e-12

    @property
    def has_bands(self): return self.band_lo is not None

# %% ../../nbs/02_theory.empirical.ipynb 6
@patch
def excludes_zero(self: DominanceReport):
    "Mask of grid points whose band lies strictly on one side of zero."
    if not self.has_bands: raise ValidationError("report has no bootstrap bands")
    return (self.band_lo > 0) | (self.band_hi < 0)

@patch
def significant_regions(self: DominanceReport):
    "Maximal runs `(start, end, sign)` of grid points where the band excludes zero."
    s = np.where(self.band_lo > 0, 1, np.where(self.band_hi < 0, -1, 0))
    out, k, n = [], 0, s.size
    while k < n:
        if s[k] == 0:
            k += 1
            continue
        j = k
        while j + 1 < n and s[j + 1] == s[k]: j += 1
        out.append((float(self.grid[k]), float(self.grid[j]), int(s[k])))
        k = j + 1
    return out

@patch
def to_frame(self: DominanceReport):
    lo = self.band_lo if self.has_bands else np.full(self.grid.size, np.nan)
    hi = self.band_hi if self.has_bands else np.full(self.grid.size, np.nan)
    return pd.DataFrame({'grid_value': self.grid, 'diff': self.diff, 'band_lo': lo, 'band_hi': hi})

@patch
def to_csv(self: DominanceReport, path):
    "Plot-data file: one header comment line with verdict and crossings, then `grid_value,diff,band_lo,band_hi`."
    xs = ';'.join(f"{c:.10g}" for c in self.crossings)
    head = (f"# verdict={self.verdict.value},crossings={xs},level={self.level if self.level is not None else ''},"
            f"replicates={self.replicates},a={self.labels[0]},b={self.labels[1]}\n")
    with open(path, 'w', newline='') as f:
        f.write(head)
        self.to_frame().to_csv(f, index=False, float_format='%.10g')

def read_report_csv(path) -> DominanceReport:
    "Inverse of `DominanceReport.to_csv` (bands are restored when present)."
    with open(path) as f: head = f.readline().lstrip('#').strip()
    meta = dict(kv.split('=', 1) for kv in head.split(','))
    df = pd.read_csv(path, comment='#')
    crossings = [float(c) for c in meta['crossings'].split(';') if c]
    has_bands = not df['band_lo'].isna().all()
    return DominanceReport(
        grid=df['grid_value'].to_numpy(), diff=df['diff'].to_numpy(), crossings=crossings,
        verdict=Dominance(meta['verdict']),
        band_lo=df['band_lo'].to_numpy() if has_bands else None, band_hi=df['band_hi'].to_numpy() if has_bands else None,
        level=float(meta['level']) if meta.get('level') else None, replicates=int(meta.get('replicates', 0)),
        labels=(meta.get('a', 'a'), meta.get('b', 'b')))

# %% ../../nbs/02_theory.empirical.ipynb 7
def empirical_cdf(sample) -> EmpiricalDistribution:
    "From `(value, weight)` pairs."
    sample = list(sample)
    if not sample: raise ValidationError("empty sample")
    values, weights = zip(*sample)
    return EmpiricalDistribution(values, weights)

# %% ../../nbs/02_theory.empirical.ipynb 8
def _sign_runs(diff, tol):
    """
    Indices `(i, j)` bracketing each sign change: `i` is the last point of one sign and `j` the first of the opposite.
    Points with |diff| <= tol carry no sign. After a change the new sign only counts once it exceeds `tol`, so
    noise hovering around zero inside the band does not register as extra changes.
    """
    out, last_k, last_s = [], None, 0
    for k, d in enumerate(diff):
        s = 1 if d > tol else (-1 if d < -tol else 0)
        if s == 0: continue
        if last_s and s != last_s: out.append((last_k, k))
        last_k, last_s = k, s
    return out

def _thin(support, grid_size):
    if support.size <= grid_size: return np.arange(support.size)
    return np.unique(np.round(np.linspace(0, support.size - 1, grid_size)).astype(int))

def compare_cdfs(a: EmpiricalDistribution, b: EmpiricalDistribution, grid_size: int = MAX_GRID,
                 tolerance: float = 1e-12, labels=('a', 'b'), crossing_tolerance: Optional[float] = None) -> DominanceReport:
    """
    F_a - F_b on the merged support, thinned to about `grid_size` quantile-spaced points
    plus every support point that brackets a crossing. Crossings sit at bracket midpoints.
    The verdict counts every difference above `tolerance`; crossings only sign changes beyond `crossing_tolerance`
    (default `tolerance`), so a sampled CROSS verdict can come with no crossing.
    """
    check_positive_int('grid_size', grid_size, minimum=2)
    ct = tolerance if crossing_tolerance is None else crossing_tolerance
    if not ct >= 0: raise ValidationError(f"crossing_tolerance must be >= 0, got {ct!r}")
    support = np.union1d(a.values, b.values)
    full = a.cdf(support) - b.cdf(support)
    brackets = _sign_runs(full, ct)
    keep = set(_thin(support, grid_size).tolist())
    for i, j in brackets: keep.update((i, j))
    idx = np.array(sorted(keep))
    grid, diff = support[idx], full[idx]
    crossings = [float((support[i] + support[j]) / 2) for i, j in brackets]
    verdict = classify_differences(full, tolerance)
    return DominanceReport(grid=grid, diff=diff, crossings=crossings, verdict=verdict, tolerance=tolerance,
                           labels=tuple(labels), crossing_tolerance=ct)

# %% ../../nbs/02_theory.empirical.ipynb 9
def dominance_bands(a: EmpiricalDistribution, b: EmpiricalDistribution, replicates: int = 1000, level: float = 0.95,
                    seed: int = 0, grid_size: int = MAX_GRID, tolerance: float = 1e-12, n_workers: int = 0,
                    labels=('a', 'b'), crossing_tolerance: Optional[float] = None) -> DominanceReport:
    """
    `compare_cdfs` plus pointwise bootstrap percentile bands for F_a - F_b.
    Each sample is resampled independently with its weights; replicate `r` draws from `make_rng(seed, r)`,
    so the result does not depend on `n_workers`.
    """
    check_positive_int('replicates', replicates, minimum=100)
    if not 0 < level < 1: raise ValidationError(f"level must lie in (0, 1), got {level!r}")
    base = compare_cdfs(a, b, grid_size=grid_size, tolerance=tolerance, labels=labels, crossing_tolerance=crossing_tolerance)
    grid = base.grid

    def one(r):
        rng = make_rng(seed, r)
        return a.resample_cdf(grid, rng) - b.resample_cdf(grid, rng)

    draws = np.vstack(list(parallel(one, range(replicates), n_workers=n_workers, threadpool=True, progress=False)))
    alpha = (1 - level) / 2
    lo, hi = np.quantile(draws, [alpha, 1 - alpha], axis=0)
    logger.info("bootstrap bands: %d replicates at level %.3f on %d grid points", replicates, level, grid.size)
    return replace(base, band_lo=lo, band_hi=hi, level=level, replicates=replicates)

# %% ../../nbs/02_theory.empirical.ipynb 10
def qm_prediction(report: DominanceReport, leave_label: str = 'leave', stay_label: str = 'stay') -> str:
    """
    Migration choice a quantile maximiser would make at the two ends of the distributions.
    `a` is the prospect of leaving and `b` of staying, so a negative diff means leaving is better at that point.
    With bands only points whose band excludes zero count.
    """
    if report.verdict == Dominance.EQUAL: return 'indeterminate'
    if report.has_bands: s = np.where(report.band_lo > 0, 1, np.where(report.band_hi < 0, -1, 0))
    else: s = np.where(report.diff > report.tolerance, 1, np.where(report.diff < -report.tolerance, -1, 0))
    s = s[s != 0]
    if not s.size: return 'indeterminate'
    pick = lambda v: leave_label if v < 0 else stay_label
    return f"maxmin {pick(s[0])}; maxmax {pick(s[-1])}"
