"""Synthetic LGAs, households and their planted log-expenditure before any migration or attrition."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/11_simulation.population.ipynb.

# %% auto 0
__all__ = ['CONFLICT_CLASSES', 'LgaProfile', 'AgentProfile', 'Population', 'planted_index', 'generate_population',
           'read_lgas_csv', 'read_agents_csv']

# %% ../../nbs/11_simulation.population.ipynb 2
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np
import pandas as pd
from fastcore.basics import patch

from ..core import ValidationError, make_rng
from .config import GeneratorConfig
from .panel import COLUMNS, PanelDataset

logger = logging.getLogger(__name__)

# %% ../../nbs/11_simulation.population.ipynb 3
CONFLICT_CLASSES = ('none', 'some', 'always')

@dataclass(frozen=True)
class LgaProfile:
    lga_id: int
    state_id: int
    fatalities_per_wave: Tuple[int, ...]

    def __post_init__(self):
        if len(self.fatalities_per_wave) != 6 or min(self.fatalities_per_wave) < 0:
            raise ValidationError(f"LGA {self.lga_id}: need six non-negative fatality counts")

    @property
    def conflict_class(self):
        f = self.fatalities_per_wave
        return 'none' if not any(f) else ('always' if all(f) else 'some')

    @property
    def first_conflict_wave(self):
        return self.decision_wave(1)

    def in_conflict(self, wave): return self.fatalities_per_wave[wave - 1] > 0

    def decision_wave(self, min_exposure=1):
        "Wave in which the LGA completes `min_exposure` conflict waves, None if it never does."
        seen = 0
        for w, n in enumerate(self.fatalities_per_wave, 1):
            seen += n > 0
            if n > 0 and seen >= min_exposure: return w
        return None

@dataclass(frozen=True)
class AgentProfile:
    household_id: int
    tau: float
    risk_averse_truth: bool

    def __post_init__(self):
        if not 0 <= self.tau <= 1: raise ValidationError(f"household {self.household_id}: tau {self.tau} outside [0, 1]")

# %% ../../nbs/11_simulation.population.ipynb 4
@dataclass
class Population:
    """
    Panel plus its planted truth. `components` holds, per panel row, the pieces log-expenditure is rebuilt from
    (`base` covariate index, `noise`, conflict `shock`), so moves and edits can recompute `pcexp`.
    Unpacks as `(panel, agents, lgas)`.
    """
    panel: PanelDataset
    agents: List[AgentProfile]
    lgas: List[LgaProfile]
    components: pd.DataFrame
    state_effects: np.ndarray
    config: GeneratorConfig
    seed: int

    def __iter__(self): return iter((self.panel, self.agents, self.lgas))

    @property
    def frame(self): return self.panel.frame

    @property
    def lga_map(self): return {l.lga_id: l for l in self.lgas}

    @property
    def tau(self): return pd.Series({a.household_id: a.tau for a in self.agents}, name='tau')

@patch
def log_expenditure(self: Population, frame=None):
    "Log per-capita expenditure of each row given its current state and conflict exposure."
    df = self.frame if frame is None else frame
    e = self.config.expenditure
    c = self.components.loc[df.index]
    hit = df['conflict'].to_numpy(dtype=float)
    return (c['base'].to_numpy() + self.state_effects[df['state_id'].to_numpy() - 1] + c['noise'].to_numpy()
            + hit * (c['shock'].to_numpy() - e['conflict_penalty']))

@patch
def counterfactual_level(self: Population, frame=None):
    "Expected expenditure level of each row without conflict: exp(index) times the lognormal mean factor."
    df = self.frame if frame is None else frame
    sd = self.config.expenditure['noise_sd']
    idx = self.components.loc[df.index, 'base'].to_numpy() + self.state_effects[df['state_id'].to_numpy() - 1]
    return np.exp(idx + sd ** 2 / 2)

@patch
def with_frame(self: Population, frame: pd.DataFrame, validate: bool = True):
    "Copy carrying a new panel frame on the same row index."
    return Population(PanelDataset(frame, validate=validate), self.agents, self.lgas, self.components,
                      self.state_effects, self.config, self.seed)

# %% ../../nbs/11_simulation.population.ipynb 5
@patch
def lgas_frame(self: Population) -> pd.DataFrame:
    rows = [dict(lga_id=l.lga_id, state_id=l.state_id, **{f"fatalities_w{w}": n for w, n in enumerate(l.fatalities_per_wave, 1)},
                 conflict_class=l.conflict_class) for l in self.lgas]
    return pd.DataFrame(rows)

@patch
def agents_frame(self: Population) -> pd.DataFrame:
    return pd.DataFrame([dict(household_id=a.household_id, tau=a.tau, risk_averse_truth=int(a.risk_averse_truth))
                         for a in self.agents])

@patch
def write(self: Population, out_dir):
    "`panel.csv`, `agents.csv` and `lgas.csv` under `out_dir`; returns their paths."
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {k: out / f"{k}.csv" for k in ('panel', 'agents', 'lgas')}
    self.panel.write_csv(paths['panel'])
    self.agents_frame().to_csv(paths['agents'], index=False, float_format='%.10g')
    self.lgas_frame().to_csv(paths['lgas'], index=False)
    return paths

def read_lgas_csv(path) -> List[LgaProfile]:
    df = pd.read_csv(path)
    fat = [f"fatalities_w{w}" for w in range(1, 7)]
    return [LgaProfile(int(r.lga_id), int(r.state_id), tuple(int(getattr(r, c)) for c in fat)) for r in df.itertuples()]

def read_agents_csv(path) -> List[AgentProfile]:
    df = pd.read_csv(path)
    return [AgentProfile(int(r.household_id), float(r.tau), bool(r.risk_averse_truth)) for r in df.itertuples()]

# %% ../../nbs/11_simulation.population.ipynb 6
def _label_column(frame, label):
    col = np.ones(len(frame))
    for part in label.split('*'):
        name, _, level = part.partition('[')
        if name not in frame.columns: raise ValidationError(f"planted coefficient {label!r} names unknown column {name!r}")
        vals = frame[name].to_numpy(dtype=float)
        col = col * ((vals == float(level.rstrip(']'))) if level else vals)
    return col

def planted_index(frame: pd.DataFrame, coefficients) -> np.ndarray:
    "Sum of coefficient times design column, with columns named like design labels (`x`, `x[level]`, `a*b`)."
    out = np.zeros(len(frame))
    for label, b in coefficients.items(): out += b * _label_column(frame, label)
    return out

# %% ../../nbs/11_simulation.population.ipynb 7
def _draw_lgas(cfg, rng):
    n, c = cfg.n_lgas, cfg.conflict
    states = rng.permutation(np.arange(n) % cfg.n_states + 1)
    n_always, n_some = round(c['always_share'] * n), round(c['some_share'] * n)
    classes = np.array(['none'] * n, dtype=object)
    order = rng.permutation(n)
    classes[order[:n_always]] = 'always'
    classes[order[n_always:n_always + n_some]] = 'some'
    lgas = []
    for i in range(n):
        counts = 1 + rng.poisson(max(c['fatality_mean'] - 1, 0.0), size=6)
        if classes[i] == 'none': mask = np.zeros(6, bool)
        elif classes[i] == 'always': mask = np.ones(6, bool)
        else:
            mask = rng.random(6) < c['wave_prob']
            if not mask.any(): mask[rng.integers(6)] = True
            if mask.all(): mask[rng.integers(6)] = False
        lgas.append(LgaProfile(i + 1, int(states[i]), tuple(int(v) for v in np.where(mask, counts, 0))))
    return lgas

def _draw_households(cfg, rng):
    n, cv = cfg.n_households, cfg.covariates
    levels = cv['dwelling_levels']
    hhsize = 1 + rng.poisson(cv['hhsize_mean'] - 1, n)
    hh = pd.DataFrame({
        'household_id': np.arange(1, n + 1),
        'lga_id': rng.integers(1, cfg.n_lgas + 1, n),
        'rururb': (rng.random(n) < cfg.rural_share).astype(int),
        'hhsize': hhsize,
        'dep_share': rng.binomial(hhsize - 1, 0.4) / hhsize,
        'hh_sex': (rng.random(n) < cv['female_share']).astype(int),
        'hh_agey': np.clip(np.round(rng.normal(cv['age_mean'], cv['age_sd'], n)), 15, 95).astype(int),
        'hh_eduyrs': np.clip(rng.poisson(cv['edu_mean'], n), 0, 18),
        'hh_empl': (rng.random(n) < cv['employed_share']).astype(int),
        'hh_marstat': (rng.random(n) < cv['married_share']).astype(int),
        'hh_language': rng.choice(np.arange(1, len(cv['language_probs']) + 1), n, p=np.asarray(cv['language_probs']) / sum(cv['language_probs'])),
        'dwel_rooms': 1 + rng.poisson(2.0, n)})
    for c in ('dwel_roof', 'dwel_wall', 'dwel_floor', 'dwel_toilet', 'dwel_fuellight', 'dwel_fuelcook', 'dwel_gdisp'):
        hh[c] = rng.integers(1, levels + 1, n)
    for c in ('own_tv', 'own_fridge', 'own_stove', 'own_bcycle', 'own_car', 'own_iron'):
        hh[c] = (rng.random(n) < cv['asset_share']).astype(int)
    return hh

def _draw_tau(cfg, rng, n):
    t = cfg.tau
    u, mid = rng.random(n), rng.random(n)
    return np.where(u < t['p0'], 0.0, np.where(u < t['p0'] + t['p1'], 1.0, mid))

# %% ../../nbs/11_simulation.population.ipynb 8
def generate_population(config: GeneratorConfig, seed: int) -> Population:
    """
    Six-wave panel of `config.n_households` households before migration and attrition.
    Every random draw comes from its own `make_rng(seed, k)` stream, so the output is a pure function of `(config, seed)`.
    """
    cfg = config.validate()
    lgas = _draw_lgas(cfg, make_rng(seed, 0))
    hh = _draw_households(cfg, make_rng(seed, 1))
    lga_state = np.array([l.state_id for l in lgas])
    fat = np.array([l.fatalities_per_wave for l in lgas])
    n = len(hh)

    df = hh.loc[hh.index.repeat(6)].reset_index(drop=True)
    df['wave'] = np.tile(np.arange(1, 7), n)
    df['hh_agey'] = np.minimum(df['hh_agey'] + (df['wave'] - 1) // 2, 100)
    df['state_id'] = lga_state[df['lga_id'] - 1]
    df['conflict'] = (fat[df['lga_id'] - 1, df['wave'] - 1] > 0).astype(int)
    w = np.exp(make_rng(seed, 4).normal(6.5, 0.5, n))
    df['weight'] = np.repeat(w, 6)
    df['migrated'] = 0
    df['risk_averse'] = np.nan
    df['attrition_status'] = 'interviewed'

    e = cfg.expenditure
    rng = make_rng(seed, 2)
    state_effects = rng.normal(0, e['state_sd'], cfg.n_states)
    components = pd.DataFrame({'base': e['intercept'] + planted_index(df, e['coefficients']),
                               'noise': rng.normal(0, e['noise_sd'], len(df)),
                               'shock': rng.normal(0, e['conflict_noise_sd'], len(df))}, index=df.index)
    df['pcexp'] = np.nan

    tau = _draw_tau(cfg, make_rng(seed, 3), n)
    thr = cfg.risk['threshold']
    agents = [AgentProfile(int(h), float(t), bool(t < thr)) for h, t in zip(hh['household_id'], tau)]
    panel = PanelDataset(df[COLUMNS], validate=False)
    pop = Population(panel, agents, lgas, components, state_effects, cfg, int(seed))
    panel.frame['pcexp'] = np.exp(pop.log_expenditure())
    panel.validate()
    counts = pd.Series([l.conflict_class for l in lgas]).value_counts().to_dict()
    logger.info("generated %d households in %d LGAs (conflict classes %s)", n, len(lgas), counts)
    return pop
