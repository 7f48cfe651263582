"""Household-wave panel: CSV schema, validation and record conversion."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/10_simulation.panel.ipynb.

# %% auto 0
__all__ = ['COLUMNS', 'COVARIATES', 'DWELLING', 'CATEGORICAL', 'RESPONDING', 'HouseholdRecord', 'PanelDataset']

# %% ../../nbs/10_simulation.panel.ipynb 2
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd
from fastcore.basics import patch

from ..core import ValidationError
from .config import ATTRITION_STATUSES

logger = logging.getLogger(__name__)

# %% ../../nbs/10_simulation.panel.ipynb 3
COLUMNS = ['household_id', 'wave', 'lga_id', 'state_id', 'rururb', 'weight', 'pcexp', 'hhsize', 'dep_share', 'hh_sex',
           'hh_agey', 'hh_eduyrs', 'hh_empl', 'hh_marstat', 'hh_language', 'dwel_rooms', 'dwel_roof', 'dwel_wall',
           'dwel_floor', 'dwel_toilet', 'dwel_fuellight', 'dwel_fuelcook', 'dwel_gdisp', 'own_tv', 'own_fridge',
           'own_stove', 'own_bcycle', 'own_car', 'own_iron', 'conflict', 'migrated', 'risk_averse', 'attrition_status']
COVARIATES = COLUMNS[COLUMNS.index('hhsize'):COLUMNS.index('conflict')]
DWELLING = [c for c in COVARIATES if c.startswith('dwel_')]
# level-coded covariates; the rest are counts, shares or 0/1 flags
CATEGORICAL = ['hh_language'] + [c for c in DWELLING if c != 'dwel_rooms']
_FLOATS = ('weight', 'pcexp', 'dep_share', 'risk_averse')
RESPONDING = ('interviewed', 'tracked')

# %% ../../nbs/10_simulation.panel.ipynb 4
@dataclass
class HouseholdRecord:
    household_id: int
    wave: int
    lga_id: int
    state_id: int
    is_rural: bool
    weight: Optional[float]
    expenditure_pc: Optional[float]
    covariates: Dict[str, float] = field(default_factory=dict)
    conflict: bool = False
    migrated_this_wave: bool = False
    risk_averse_answer: Optional[int] = None
    attrition_status: str = 'interviewed'

    def to_row(self) -> dict:
        row = dict(household_id=self.household_id, wave=self.wave, lga_id=self.lga_id, state_id=self.state_id,
                   rururb=int(self.is_rural), weight=self.weight, pcexp=self.expenditure_pc)
        row.update({c: self.covariates.get(c) for c in COVARIATES})
        row.update(conflict=int(self.conflict), migrated=int(self.migrated_this_wave),
                   risk_averse=self.risk_averse_answer, attrition_status=self.attrition_status)
        return row

    @classmethod
    def from_row(cls, row):
        g = lambda k: None if pd.isna(row[k]) else row[k]
        return cls(int(row['household_id']), int(row['wave']), int(row['lga_id']), int(row['state_id']),
                   bool(row['rururb']), g('weight'), g('pcexp'), {c: row[c] for c in COVARIATES},
                   bool(row['conflict']), bool(row['migrated']),
                   None if pd.isna(row['risk_averse']) else int(row['risk_averse']), row['attrition_status'])

# %% ../../nbs/10_simulation.panel.ipynb 5
class PanelDataset:
    "One row per household-wave in `COLUMNS` order, sorted by household then wave."
    def __init__(self, frame: pd.DataFrame, validate: bool = True):
        missing = [c for c in COLUMNS if c not in frame.columns]
        extra = [c for c in frame.columns if c not in COLUMNS]
        if missing or extra: raise ValidationError(f"panel columns differ from the schema: missing {missing}, extra {extra}")
        df = frame[COLUMNS].sort_values(['household_id', 'wave'], kind='stable').reset_index(drop=True)
        self.frame = df.astype({c: float for c in _FLOATS})
        if validate: self.validate()

    def __len__(self): return len(self.frame)

    def __repr__(self):
        return f"PanelDataset(households={self.frame['household_id'].nunique()}, rows={len(self)})"

    def copy(self): return PanelDataset(self.frame.copy(), validate=False)

# %% ../../nbs/10_simulation.panel.ipynb 6
@patch
def validate(self: PanelDataset):
    df = self.frame
    if df.duplicated(['household_id', 'wave']).any(): raise ValidationError("duplicate household-wave rows")
    if not df['wave'].between(1, 6).all(): raise ValidationError("waves must lie in 1..6")
    for c, ok in (('pcexp', df['pcexp'] > 0), ('weight', df['weight'] > 0)):
        if not (ok | df[c].isna()).all(): raise ValidationError(f"{c} must be positive where observed")
    if not df['hh_agey'].between(15, 100).all(): raise ValidationError("hh_agey must lie in [15, 100]")
    if not df['dep_share'].between(0, 1).all(): raise ValidationError("dep_share must lie in [0, 1]")
    bad = sorted(set(df['attrition_status']) - set(ATTRITION_STATUSES))
    if bad: raise ValidationError(f"unknown attrition statuses: {bad}")
    ra = df['risk_averse']
    if not ra.dropna().isin([0, 1]).all(): raise ValidationError("risk_averse must be 0/1")
    if ra.notna().any():
        eligible = (df['wave'] == 6) & df['attrition_status'].isin(RESPONDING) & df['pcexp'].notna()
        if not (ra.notna() == eligible).all():
            raise ValidationError("risk answers must be present exactly on responding wave-6 rows")
    return self

@patch
def records(self: PanelDataset) -> List[HouseholdRecord]:
    return [HouseholdRecord.from_row(r) for r in self.frame.to_dict('records')]

@patch(cls_method=True)
def from_records(cls: PanelDataset, records):
    return cls(pd.DataFrame([r.to_row() for r in records], columns=COLUMNS))

@patch
def wave(self: PanelDataset, w: int) -> pd.DataFrame: return self.frame[self.frame['wave'] == w]

@patch
def with_frame(self: PanelDataset, frame: pd.DataFrame, validate: bool = True):
    return PanelDataset(frame, validate=validate)

# %% ../../nbs/10_simulation.panel.ipynb 7
@patch
def write_csv(self: PanelDataset, path):
    self.frame.to_csv(path, index=False, float_format='%.10g')
    logger.info("wrote %d panel rows to %s", len(self), path)

@patch(cls_method=True)
def read_csv(cls: PanelDataset, path, validate: bool = True):
    try: df = pd.read_csv(path)
    except FileNotFoundError as e: raise ValidationError(f"panel file not found: {path}") from e
    return cls(df, validate=validate)
