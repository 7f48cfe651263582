"""Settings of the planted-truth panel generator."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/09_simulation.config.ipynb.

# %% auto 0
__all__ = ['ATTRITION_STATUSES', 'DEFAULT_STATUS_MIX', 'GeneratorConfig']

# %% ../../nbs/09_simulation.config.ipynb 2
import math
from dataclasses import dataclass, field, asdict, replace
from typing import Dict

from fastcore.basics import patch

from ..core import ValidationError, check_probability, check_positive_int

# %% ../../nbs/09_simulation.config.ipynb 3
ATTRITION_STATUSES = ('interviewed', 'tracked', 'refused', 'not_found', 'dead', 'moved_untracked', 'crisis_area')
# households per status among those not interviewed in the main phase of the last visit
DEFAULT_STATUS_MIX = {'tracked': 48, 'refused': 47, 'not_found': 100, 'dead': 84, 'moved_untracked': 48, 'crisis_area': 139}

@dataclass
class GeneratorConfig():
    '''default settings of the synthetic six-wave household panel'''
    #population desc
    n_households: int = 5000
    n_lgas: int = 111
    n_states: int = 37
    n_waves: int = 6
    rural_share: float = 0.6

    #covariate distributions
    covariates: Dict = field(default_factory=lambda:{'hhsize_mean':5.0, 'age_mean':45.0, 'age_sd':13.0, 'female_share':0.15,
                                                      'married_share':0.75, 'employed_share':0.8, 'edu_mean':7.0,
                                                      'language_probs':(0.4, 0.2, 0.25, 0.15), 'dwelling_levels':3,
                                                      'asset_share':0.35})
    #log-expenditure index, coefficients keyed by design label; conflict rows lose `conflict_penalty` and gain `conflict_noise_sd` of spread
    expenditure: Dict = field(default_factory=lambda:{'intercept':10.5, 'noise_sd':0.45, 'state_sd':0.15,
                                                       'conflict_penalty':0.1, 'conflict_noise_sd':0.45,
                                                       'coefficients':{'rururb':-0.2, 'hhsize':-0.08, 'dep_share':-0.3,
                                                                       'hh_sex':0.05, 'hh_agey':0.004, 'hh_eduyrs':0.04,
                                                                       'hh_empl':0.1, 'hh_marstat':0.06, 'hh_sex*hh_marstat':-0.1,
                                                                       'hh_language[2]':0.1, 'hh_language[3]':0.15, 'hh_language[4]':0.05,
                                                                       'dwel_rooms':0.03, 'dwel_roof[2]':0.08, 'dwel_roof[3]':0.15,
                                                                       'dwel_wall[2]':0.05, 'dwel_wall[3]':0.1,
                                                                       'dwel_floor[2]':0.06, 'dwel_floor[3]':0.12,
                                                                       'dwel_toilet[2]':0.05, 'dwel_toilet[3]':0.1,
                                                                       'own_tv':0.12, 'own_fridge':0.15, 'own_stove':0.05,
                                                                       'own_bcycle':-0.03, 'own_car':0.25, 'own_iron':0.06}})
    #LGA conflict classes and per-wave fatality counts
    conflict: Dict = field(default_factory=lambda:{'some_share':0.2, 'always_share':0.05, 'wave_prob':0.4, 'fatality_mean':6.0})
    #tau: point masses at 0 and 1 plus a uniform middle mass
    tau: Dict = field(default_factory=lambda:{'p0':0.5, 'p1':0.5, 'uniform':0.0})
    #households act on the stay-or-leave comparison once their LGA has seen `min_exposure` conflict waves
    migration: Dict = field(default_factory=lambda:{'rule':'qm', 'background_rate':0.05, 'within_state':0.9, 'atoms':100,
                                                     'min_exposure':2})
    attrition: Dict = field(default_factory=lambda:{'rate':0.083, 'mix':dict(DEFAULT_STATUS_MIX), 'target':'random', 'crisis_cap':0.5})
    risk: Dict = field(default_factory=lambda:{'threshold':0.5, 'noise_rate':0.05, 'exposure_effect':0.0})

# %% ../../nbs/09_simulation.config.ipynb 4
def _check_mix(mix):
    unknown = sorted(set(mix) - set(ATTRITION_STATUSES[1:]))
    if unknown: raise ValidationError(f"unknown attrition categories: {unknown}")
    if any(v < 0 for v in mix.values()) or not sum(mix.values()) > 0:
        raise ValidationError("attrition mix needs non-negative entries with a positive total")
    if sum(v for k, v in mix.items() if k != 'tracked') == 0: raise ValidationError("attrition mix has no non-response category")

@patch
def validate(self: GeneratorConfig):
    check_positive_int('n_households', self.n_households, minimum=100)
    check_positive_int('n_lgas', self.n_lgas, minimum=10)
    check_positive_int('n_states', self.n_states, minimum=1)
    if self.n_states > self.n_lgas: raise ValidationError("more states than LGAs")
    if self.n_waves != 6: raise ValidationError(f"the panel has six waves, got {self.n_waves}")
    check_probability('rural_share', self.rural_share)
    c = self.conflict
    for k in ('some_share', 'always_share', 'wave_prob'): check_probability(f"conflict['{k}']", c[k])
    if c['some_share'] + c['always_share'] > 1: raise ValidationError("conflict shares sum above 1")
    if not c['fatality_mean'] > 0: raise ValidationError("conflict['fatality_mean'] must be positive")
    e = self.expenditure
    for k in ('noise_sd', 'state_sd', 'conflict_noise_sd'):
        if not (math.isfinite(e[k]) and e[k] >= 0): raise ValidationError(f"expenditure['{k}'] must be >= 0")
    t = self.tau
    if min(t.values()) < 0 or not math.isclose(sum(t.values()), 1.0, abs_tol=1e-9):
        raise ValidationError(f"tau mixture weights must be >= 0 and sum to 1, got {t}")
    m = self.migration
    if m['rule'] not in ('qm', 'random'): raise ValidationError(f"migration['rule'] must be 'qm' or 'random', got {m['rule']!r}")
    check_probability("migration['background_rate']", m['background_rate'])
    check_probability("migration['within_state']", m['within_state'])
    check_positive_int("migration['atoms']", m['atoms'])
    check_positive_int("migration['min_exposure']", m['min_exposure'])
    if m['min_exposure'] > 5: raise ValidationError("migration['min_exposure'] above 5 leaves no wave to move in")
    a = self.attrition
    if not 0 <= a['rate'] <= 0.3: raise ValidationError(f"attrition rate must lie in [0, 0.3], got {a['rate']!r}")
    _check_mix(a['mix'])
    if a['target'] not in ('random', 'poorest'): raise ValidationError(f"attrition['target'] must be 'random' or 'poorest'")
    check_probability("attrition['crisis_cap']", a['crisis_cap'])
    r = self.risk
    check_probability("risk['threshold']", r['threshold'], lo_open=True, hi_open=True)
    if not 0 <= r['noise_rate'] < 0.5: raise ValidationError(f"risk['noise_rate'] must lie in [0, 0.5), got {r['noise_rate']!r}")
    if not -1 <= r['exposure_effect'] <= 1: raise ValidationError("risk['exposure_effect'] must lie in [-1, 1]")
    return self

@patch
def updated(self: GeneratorConfig, **groups):
    "Copy with scalar fields replaced and dict groups merged key by key."
    kw = {}
    for k, v in groups.items():
        if not hasattr(self, k): raise ValidationError(f"unknown generator setting: {k}")
        cur = getattr(self, k)
        kw[k] = {**cur, **v} if isinstance(cur, dict) and isinstance(v, dict) else v
    return replace(self, **kw)

@patch
def to_dict(self: GeneratorConfig): return asdict(self)
