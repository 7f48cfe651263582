"""Settings of the four-step analysis and its attrition checks, with an INI file loader."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/15_pipeline.config.ipynb.

# %% auto 0
__all__ = ['STEPS', 'BASE_TERMS', 'WELFARE_TERMS', 'MIGRATION_TERMS', 'DID_TERMS', 'RISK_TERMS', 'PipelineConfig', 'parse_terms']

# %% ../../nbs/15_pipeline.config.ipynb 2
import ast
import configparser
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Optional

from fastcore.basics import patch

from ..core import ValidationError, check_positive_int
from ..estimation.design import Continuous, Categorical, FixedEffect, Interaction

logger = logging.getLogger(__name__)

# %% ../../nbs/15_pipeline.config.ipynb 3
STEPS = ('generate', 'step1', 'step2', 'step3', 'step4', 'attrition')

# terms are written as tuples so they survive an INI round trip
BASE_TERMS = [('continuous', 'rururb'), ('continuous', 'hhsize'), ('continuous', 'dep_share'), ('continuous', 'hh_sex'),
              ('continuous', 'hh_agey'), ('continuous', 'hh_eduyrs'), ('continuous', 'hh_empl'), ('continuous', 'hh_marstat')]
WELFARE_TERMS = (BASE_TERMS + [('interaction', 'hh_sex', 'hh_marstat'), ('categorical', 'hh_language', 1),
                               ('continuous', 'dwel_rooms')]
                 + [('categorical', c, 1) for c in ('dwel_roof', 'dwel_wall', 'dwel_floor', 'dwel_toilet', 'dwel_fuellight',
                                                    'dwel_fuelcook', 'dwel_gdisp')]
                 + [('continuous', c) for c in ('own_tv', 'own_fridge', 'own_stove', 'own_bcycle', 'own_car', 'own_iron')]
                 + [('fixed_effect', 'state_id')])
# language and state are left out of the migration and DiD models: they nearly determine conflict exposure
MIGRATION_TERMS = [('continuous', 'risk_averse')] + BASE_TERMS
DID_TERMS = list(BASE_TERMS)
# risk tolerance of respondents on their own expenditure and the welfare controls, language again left out
RISK_TERMS = [('continuous', 'log_pcexp')] + [t for t in WELFARE_TERMS if t[1] != 'hh_language']

def parse_terms(raw):
    "Design terms from `(kind, name, ...)` tuples."
    out = []
    for t in raw:
        kind, *args = t
        try:
            if kind == 'continuous': out.append(Continuous(*args))
            elif kind == 'categorical': out.append(Categorical(*args))
            elif kind == 'fixed_effect': out.append(FixedEffect(*args))
            elif kind == 'interaction': out.append(Interaction(*args))
            else: raise ValidationError(f"unknown term kind {kind!r}")
        except TypeError as e: raise ValidationError(f"malformed term {t!r}") from e
    return out

# %% ../../nbs/15_pipeline.config.ipynb 4
@dataclass
class PipelineConfig():
    '''default settings of the analysis run'''
    #paths
    input: Optional[str] = None             # panel CSV; generated under out_dir when unset
    out_dir: str = 'results'
    lgas: Optional[str] = None              # optional LGA truth CSV, otherwise classes come from the panel
    agents: Optional[str] = None

    #run
    seed: int = 0
    weighted: bool = True
    n_workers: int = 0

    steps: Dict = field(default_factory=lambda:{'generate':False, 'step1':True, 'step2':True, 'step3':True, 'step4':True, 'attrition':True})
    welfare: Dict = field(default_factory=lambda:{'dwelling':True, 'robust':True, 'terms':list(WELFARE_TERMS)})
    dominance: Dict = field(default_factory=lambda:{'replicates':1000, 'level':0.95, 'grid_size':512, 'crossing_tolerance':0.02})
    # non-migrant origin classes per column; None keeps every non-migrant, migrants are always kept
    migration: Dict = field(default_factory=lambda:{'link':'probit', 'robust':True, 'lpm':True, 'terms':list(MIGRATION_TERMS),
                                                     'samples':{'all':None, 'some_conflict':('some', 'always'), 'always_conflict':('always',)}})
    did: Dict = field(default_factory=lambda:{'min_conflict_waves':1, 'robust':True, 'terms':list(DID_TERMS)})
    attrition: Dict = field(default_factory=lambda:{'replicates':500, 'level':0.95, 'grid_size':512, 'crossing_tolerance':0.02,
                                                     'robust':True, 'terms':list(WELFARE_TERMS), 'risk_terms':list(RISK_TERMS),
                                                     'link':'logit'})
    #overrides of GeneratorConfig fields for the generate step
    generator: Dict = field(default_factory=dict)

# %% ../../nbs/15_pipeline.config.ipynb 5
@patch
def validate(self: PipelineConfig):
    unknown = set(self.steps) - set(STEPS)
    if unknown: raise ValidationError(f"unknown steps: {sorted(unknown)}")
    if int(self.seed) < 0: raise ValidationError(f"seed must be >= 0, got {self.seed!r}")
    for name in ('dominance', 'attrition'):
        d = getattr(self, name)
        check_positive_int(f"{name}['replicates']", d['replicates'], minimum=100)
        check_positive_int(f"{name}['grid_size']", d['grid_size'], minimum=2)
        if not 0 < d['level'] < 1: raise ValidationError(f"{name}['level'] must lie in (0, 1)")
        if not d['crossing_tolerance'] >= 0: raise ValidationError(f"{name}['crossing_tolerance'] must be >= 0")
    for name in ('welfare', 'migration', 'did', 'attrition'): parse_terms(getattr(self, name)['terms'])
    parse_terms(self.attrition['risk_terms'])
    if self.migration['link'] not in ('probit', 'logit'): raise ValidationError("migration['link'] must be probit or logit")
    samples = self.migration['samples']
    if not samples: raise ValidationError("migration needs at least one sample")
    prev = None
    for name, classes in samples.items():
        cur = {'none', 'some', 'always'} if classes is None else set(classes)
        if cur - {'none', 'some', 'always'}: raise ValidationError(f"sample {name!r} names unknown conflict classes")
        if prev is not None and not cur <= prev: raise ValidationError(f"sample {name!r} is not nested in the previous one")
        prev = cur
    check_positive_int("did['min_conflict_waves']", self.did['min_conflict_waves'])
    return self

@patch(as_prop=True)
def out(self: PipelineConfig): return Path(self.out_dir)

@patch(as_prop=True)
def panel_path(self: PipelineConfig): return Path(self.input) if self.input else self.out / 'panel.csv'

@patch
def updated(self: PipelineConfig, **kw):
    "Copy with scalar fields replaced and dict groups merged key by key; None values are ignored."
    new = {}
    for k, v in kw.items():
        if v is None: continue
        if not hasattr(self, k): raise ValidationError(f"unknown pipeline setting: {k}")
        cur = getattr(self, k)
        new[k] = {**cur, **v} if isinstance(cur, dict) and isinstance(v, dict) else v
    return replace(self, **new)

# %% ../../nbs/15_pipeline.config.ipynb 6
_SCALARS = {'paths': ('input', 'out_dir', 'lgas', 'agents'), 'run': ('seed', 'weighted', 'n_workers')}

def _value(raw):
    try: return ast.literal_eval(raw)
    except (ValueError, SyntaxError): return raw

@patch(cls_method=True)
def from_file(cls: PipelineConfig, path, **overrides):
    """
    Read an INI file. `[paths]` and `[run]` set scalar fields; every other section updates the dict field of the same
    name. Values are Python literals, anything else is kept as a string. Unset keys keep their defaults.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    if not parser.read(path): raise ValidationError(f"config file not found: {path}")
    cfg, groups = cls(), {f.name for f in fields(cls) if f.name not in sum(_SCALARS.values(), ())}
    kw = {}
    for section in parser.sections():
        vals = {k: _value(v) for k, v in parser.items(section)}
        if section in _SCALARS:
            bad = set(vals) - set(_SCALARS[section])
            if bad: raise ValidationError(f"unknown keys in [{section}]: {sorted(bad)}")
            kw.update(vals)
        elif section in groups: kw[section] = vals
        else: raise ValidationError(f"unknown config section [{section}]")
    logger.info("read config %s (sections %s)", path, parser.sections())
    return cfg.updated(**kw).updated(**overrides).validate()
