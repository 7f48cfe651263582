"""Discrete lotteries: expected and weighted utility, tau-quantile preferences, spreads and first-order dominance."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/01_theory.prospects.ipynb.

# %% auto 0
__all__ = ['PROB_TOL', 'RENORM_TOL', 'Preference', 'Dominance', 'Lottery', 'UtilityFn', 'WeightFn', 'cdf_at', 'quantile',
           'expected_utility', 'weighted_utility', 'prefers_tau', 'maxmin_choice', 'maxmax_choice',
           'is_mean_preserving_spread', 'fosd', 'classify_differences', 'quantile_profile',
           'preference_switch_points', 'read_lottery_csv', 'write_lottery_csv']

# %% ../../nbs/01_theory.prospects.ipynb 2
import math
from enum import Enum
from typing import Callable, Iterable, Tuple

import numpy as np
import pandas as pd
from fastcore.basics import patch

from ..core import ValidationError, EvaluationError, check_probability

# %% ../../nbs/01_theory.prospects.ipynb 3
PROB_TOL = 1e-12    # sum-to-one invariant
RENORM_TOL = 1e-9   # largest deviation silently renormalised
_CDF_TOL = 1e-12

class Preference(Enum):
    FIRST = 'first'
    SECOND = 'second'
    INDIFFERENT = 'indifferent'

class Dominance(Enum):
    "FIRST: the first argument's CDF lies weakly below the second's everywhere (it dominates)."
    FIRST = 'first'
    SECOND = 'second'
    CROSS = 'cross'
    EQUAL = 'equal'

# %% ../../nbs/01_theory.prospects.ipynb 4
class Lottery:
    """
    Finite prospect stored as ascending, de-duplicated outcome values with positive probabilities.
    Zero-probability outcomes are not part of the support and are discarded.
    """
    __slots__ = ('values', 'probs', 'cum')

    def __init__(self, values, probs):
        v = np.asarray(values, dtype=float).ravel()
        p = np.asarray(probs, dtype=float).ravel()
        if v.shape != p.shape: raise ValidationError("values and probabilities differ in length")
        if v.size == 0: raise ValidationError("a lottery needs at least one outcome")
        if not np.all(np.isfinite(v)): raise ValidationError("lottery values must be finite")
        if not np.all(np.isfinite(p)) or np.any(p < 0): raise ValidationError("probabilities must be finite and >= 0")
        total = math.fsum(p)
        if abs(total - 1.0) > RENORM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        p = p / total
        uniq, inv = np.unique(v, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inv, p)
        keep = merged > 0
        self.values, self.probs = uniq[keep], merged[keep]
        cum = np.cumsum(self.probs)
        cum[-1] = 1.0
        self.cum = cum
        for a in (self.values, self.probs, self.cum): a.setflags(write=False)

    def __setattr__(self, name, value):
        if hasattr(self, 'cum'): raise AttributeError("Lottery is immutable")
        object.__setattr__(self, name, value)

    def __len__(self): return self.values.size

    def __eq__(self, other):
        if not isinstance(other, Lottery): return NotImplemented
        return (len(self) == len(other) and np.array_equal(self.values, other.values)
                and np.allclose(self.probs, other.probs, rtol=0, atol=PROB_TOL))

    __hash__ = None

    def __repr__(self):
        body = ', '.join(f"{v:g}:{p:.4g}" for v, p in zip(self.values, self.probs))
        return f"Lottery({{{body}}})"

# %% ../../nbs/01_theory.prospects.ipynb 5
@patch(cls_method=True)
def from_pairs(cls: Lottery, pairs: Iterable[Tuple[float, float]]):
    "Build from `(value, probability)` pairs."
    pairs = list(pairs)
    if not pairs: raise ValidationError("a lottery needs at least one outcome")
    values, probs = zip(*pairs)
    return cls(values, probs)

@patch(cls_method=True)
def from_sample(cls: Lottery, sample, atoms: int = 100):
    "Discretise an empirical sample at `atoms` quantile-spaced, equally likely points."
    x = np.asarray(sample, dtype=float).ravel()
    x = x[np.isfinite(x)]
    if x.size == 0: raise ValidationError("cannot discretise an empty sample")
    if atoms < 1: raise ValidationError("atoms must be >= 1")
    qs = (np.arange(atoms) + 0.5) / atoms
    points = np.quantile(x, qs, method='inverted_cdf')
    return cls(points, np.full(atoms, 1.0 / atoms))

@patch(cls_method=True)
def degenerate(cls: Lottery, value: float):
    return cls([value], [1.0])

# %% ../../nbs/01_theory.prospects.ipynb 6
@patch(as_prop=True)
def support_min(self: Lottery): return float(self.values[0])

@patch(as_prop=True)
def support_max(self: Lottery): return float(self.values[-1])

@patch
def mean(self: Lottery) -> float: return math.fsum(self.values * self.probs)

@patch
def variance(self: Lottery) -> float:
    m = self.mean()
    return math.fsum(self.probs * (self.values - m) ** 2)

@patch
def shift(self: Lottery, c: float):
    "Every outcome moved by `c`."
    return Lottery(self.values + c, self.probs)

@patch
def scale(self: Lottery, c: float):
    "Every outcome multiplied by `c > 0`."
    if not c > 0: raise ValidationError("scale factor must be positive")
    return Lottery(self.values * c, self.probs)

@patch
def pairs(self: Lottery):
    return [(float(v), float(p)) for v, p in zip(self.values, self.probs)]

# %% ../../nbs/01_theory.prospects.ipynb 7
class UtilityFn:
    "Strictly increasing utility of money; monotonicity is spot-checked on the outcomes it is evaluated on."
    def __init__(self, fn: Callable[[float], float], name: str = 'u'):
        self.fn, self.name = fn, name

    def __call__(self, v): return self.fn(v)

    def evaluate(self, values: np.ndarray) -> np.ndarray:
        try: out = np.array([float(self.fn(float(v))) for v in values])
        except (ValueError, TypeError, OverflowError, ZeroDivisionError) as e:
            raise EvaluationError(f"utility {self.name} failed on {values}: {e}") from e
        if not np.all(np.isfinite(out)): raise EvaluationError(f"utility {self.name} is not finite on {values}")
        if np.any(np.diff(out) <= 0): raise ValidationError(f"utility {self.name} is not strictly increasing on {values}")
        return out

    @classmethod
    def identity(cls): return cls(lambda v: v, 'identity')

    @classmethod
    def crra(cls, gamma: float):
        "Constant relative risk aversion on positive outcomes; log utility at `gamma == 1`."
        if gamma < 0: raise ValidationError("gamma must be >= 0")
        if gamma == 1: return cls(math.log, 'crra(1)')
        return cls(lambda v: v ** (1 - gamma) / (1 - gamma), f'crra({gamma:g})')

def _as_utility(u): return u if isinstance(u, UtilityFn) else UtilityFn(u)

# %% ../../nbs/01_theory.prospects.ipynb 8
class WeightFn:
    "Probability weighting `w: [0,1] -> [0,1]` with w(0)=0, w(1)=1, non-decreasing; checked on a 101-point grid."
    def __init__(self, fn: Callable[[float], float], name: str = 'w'):
        self.fn, self.name = fn, name
        grid = np.linspace(0, 1, 101)
        vals = np.array([float(fn(float(p))) for p in grid])
        if not np.all(np.isfinite(vals)): raise EvaluationError(f"weighting {name} is not finite on [0,1]")
        if abs(vals[0]) > PROB_TOL or abs(vals[-1] - 1) > PROB_TOL:
            raise ValidationError(f"weighting {name} must satisfy w(0)=0 and w(1)=1")
        if np.any(vals < -PROB_TOL) or np.any(vals > 1 + PROB_TOL) or np.any(np.diff(vals) < -PROB_TOL):
            raise ValidationError(f"weighting {name} must be non-decreasing into [0,1]")

    def __call__(self, p): return self.fn(p)

    @classmethod
    def identity(cls): return cls(lambda p: p, 'identity')

    @classmethod
    def prelec(cls, alpha: float):
        "exp(-(-ln p)^alpha); inverse-S shaped for alpha < 1, overweighting small probabilities and underweighting large ones."
        if not 0 < alpha <= 1: raise ValidationError("prelec alpha must lie in (0, 1]")
        def w(p):
            if p <= 0: return 0.0
            if p >= 1: return 1.0
            return math.exp(-(-math.log(p)) ** alpha)
        return cls(w, f'prelec({alpha:g})')

    @classmethod
    def tversky_kahneman(cls, gamma: float):
        "p^g / (p^g + (1-p)^g)^(1/g); monotone for gamma above ~0.28."
        if not 0.28 <= gamma <= 1: raise ValidationError("tversky-kahneman gamma must lie in [0.28, 1]")
        def w(p):
            if p <= 0: return 0.0
            if p >= 1: return 1.0
            return p ** gamma / (p ** gamma + (1 - p) ** gamma) ** (1 / gamma)
        return cls(w, f'tk({gamma:g})')

def _as_weight(w): return w if isinstance(w, WeightFn) else WeightFn(w)

# %% ../../nbs/01_theory.prospects.ipynb 9
def cdf_at(lottery: Lottery, v: float) -> float:
    "Pr(outcome <= v); right-continuous step function."
    i = int(np.searchsorted(lottery.values, v, side='right'))
    return 0.0 if i == 0 else float(lottery.cum[i - 1])

def quantile(lottery: Lottery, tau: float) -> float:
    "Smallest outcome whose CDF reaches `tau`; the support minimum at `tau == 0`."
    tau = check_probability('tau', tau)
    if tau == 0: return lottery.support_min
    if tau == 1: return lottery.support_max
    i = int(np.searchsorted(lottery.cum, tau - _CDF_TOL, side='left'))
    return float(lottery.values[min(i, len(lottery) - 1)])

# %% ../../nbs/01_theory.prospects.ipynb 10
def expected_utility(lottery: Lottery, u) -> float:
    u = _as_utility(u)
    return math.fsum(lottery.probs * u.evaluate(lottery.values))

def weighted_utility(lottery: Lottery, u, w) -> float:
    "Sum of w(p_i) * u(x_i) over the stored (merged) outcomes."
    u, w = _as_utility(u), _as_weight(w)
    ws = np.array([float(w(float(p))) for p in lottery.probs])
    if not np.all(np.isfinite(ws)): raise EvaluationError(f"weighting {w.name} returned a non-finite value")
    return math.fsum(ws * u.evaluate(lottery.values))

# %% ../../nbs/01_theory.prospects.ipynb 11
def _compare(a: float, b: float) -> Preference:
    if a > b: return Preference.FIRST
    if a < b: return Preference.SECOND
    return Preference.INDIFFERENT

def prefers_tau(x: Lottery, y: Lottery, tau: float) -> Preference:
    "Choice of a tau-quantile maximiser; ties stay `INDIFFERENT`."
    return _compare(quantile(x, tau), quantile(y, tau))

def maxmin_choice(x: Lottery, y: Lottery) -> Preference:
    return _compare(x.support_min, y.support_min)

def maxmax_choice(x: Lottery, y: Lottery) -> Preference:
    return _compare(x.support_max, y.support_max)

# %% ../../nbs/01_theory.prospects.ipynb 12
def _joint_grid(x: Lottery, y: Lottery):
    grid = np.union1d(x.values, y.values)
    fx = np.array([cdf_at(x, g) for g in grid])
    fy = np.array([cdf_at(y, g) for g in grid])
    return grid, fx, fy

def is_mean_preserving_spread(y: Lottery, x: Lottery, tol: float = 1e-9) -> bool:
    "True iff `y` has the mean of `x` and the running integral of F_y - F_x never goes negative."
    scale = 1.0 + max(abs(x.support_min), abs(x.support_max), abs(y.support_min), abs(y.support_max))
    if abs(y.mean() - x.mean()) > tol * scale: return False
    grid, fx, fy = _joint_grid(x, y)
    # the integrand is constant on [grid[k], grid[k+1])
    integral = np.concatenate([[0.0], np.cumsum((fy - fx)[:-1] * np.diff(grid))])
    return bool(np.all(integral >= -tol * scale) and abs(integral[-1]) <= tol * scale)

# %% ../../nbs/01_theory.prospects.ipynb 13
def classify_differences(diff, tol: float = _CDF_TOL) -> Dominance:
    "Verdict from pointwise F_first - F_second."
    d = np.asarray(diff, dtype=float)
    below, above = np.any(d < -tol), np.any(d > tol)
    if below and above: return Dominance.CROSS
    if below: return Dominance.FIRST
    if above: return Dominance.SECOND
    return Dominance.EQUAL

def fosd(x: Lottery, y: Lottery) -> Dominance:
    _, fx, fy = _joint_grid(x, y)
    return classify_differences(fx - fy)

# %% ../../nbs/01_theory.prospects.ipynb 14
def quantile_profile(x: Lottery, y: Lottery, taus=None):
    "Preference of a tau-maximiser for every tau in `taus` (default: 1001 points on [0,1])."
    taus = np.linspace(0, 1, 1001) if taus is None else np.asarray(taus, dtype=float)
    return taus, [prefers_tau(x, y, t) for t in taus]

def preference_switch_points(x: Lottery, y: Lottery):
    """
    `(tau, before, after)` for every tau at which the quantile preference changes.
    Quantiles only jump where either CDF has a step, so checking the step heights and their right neighbourhoods is exact.
    """
    steps = np.union1d(x.cum, y.cum)
    eps = 1e-9
    points = np.unique(np.clip(np.concatenate([[0.0], steps, steps + eps]), 0, 1))
    out, prev = [], None
    for t in points:
        pref = prefers_tau(x, y, float(t))
        if prev is not None and pref != prev[1]: out.append((float(t), prev[1], pref))
        prev = (t, pref)
    return out

# %% ../../nbs/01_theory.prospects.ipynb 15
def read_lottery_csv(path) -> Lottery:
    "Read the `value,probability` CSV literal format."
    df = pd.read_csv(path, comment='#')
    missing = {'value', 'probability'} - set(df.columns)
    if missing: raise ValidationError(f"{path}: missing columns {sorted(missing)}")
    return Lottery(df['value'].to_numpy(float), df['probability'].to_numpy(float))

def write_lottery_csv(lottery: Lottery, path):
    pd.DataFrame({'value': lottery.values, 'probability': lottery.probs}).to_csv(path, index=False, float_format='%.17g')
