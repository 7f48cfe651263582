"""Exceptions, seeding and small numeric helpers shared by every sub-package."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../nbs/00_core.ipynb.

# %% auto 0
__all__ = ['QMError', 'ValidationError', 'EvaluationError', 'EstimationError', 'SeparationError', 'StepError',
           'make_rng', 'check_probability', 'check_positive_int']

# %% ../nbs/00_core.ipynb 2
import math
import numpy as np

# %% ../nbs/00_core.ipynb 3
class QMError(Exception):
    "Base class of every error raised by `qmmig`."

class ValidationError(QMError, ValueError):
    "Input data, configuration or arguments violate a documented precondition."

class EvaluationError(QMError, ArithmeticError):
    "A caller-supplied utility or weighting function returned a non-finite value."

class EstimationError(QMError):
    "An estimator could not produce a fit."

class SeparationError(EstimationError):
    "Binary-response MLE diverged because the response is perfectly predicted."

# %% ../nbs/00_core.ipynb 4
class StepError(QMError):
    "A pipeline step failed; `cause` keeps the original error."
    def __init__(self, step, cause):
        self.step, self.cause = step, cause
        super().__init__(f"step '{step}' failed: {type(cause).__name__}: {cause}")

# %% ../nbs/00_core.ipynb 5
def make_rng(seed, *keys):
    """
    Random generator addressed by `(seed, *keys)`.
    Streams with different keys are independent and never depend on how many draws other streams made.
    """
    if seed is None or int(seed) < 0: raise ValidationError(f"seed must be a non-negative integer, got {seed!r}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.default_rng(ss)

# %% ../nbs/00_core.ipynb 6
def check_probability(name, value, lo_open=False, hi_open=False):
    "Validate `value` lies in [0,1] (ends optionally open) and return it as float."
    v = float(value)
    if not math.isfinite(v) or v < 0 or v > 1 or (lo_open and v == 0) or (hi_open and v == 1):
        lo, hi = '(' if lo_open else '[', ')' if hi_open else ']'
        raise ValidationError(f"{name} must lie in {lo}0, 1{hi}, got {value!r}")
    return v

def check_positive_int(name, value, minimum=1):
    "Validate an integer count `>= minimum`."
    if int(value) != value or value < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
