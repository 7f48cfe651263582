"""Panel attrition by interview status and inverse-response reweighting within LGA."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/13_simulation.attrition.ipynb.

# %% auto 0
__all__ = ['allocate_counts', 'apply_attrition', 'reweight_respondents']

# %% ../../nbs/13_simulation.attrition.ipynb 2
import logging
from typing import Dict, Optional

import numpy as np
import pandas as pd

from ..core import ValidationError, make_rng
from .config import ATTRITION_STATUSES, GeneratorConfig, _check_mix
from .population import Population

logger = logging.getLogger(__name__)

# %% ../../nbs/13_simulation.attrition.ipynb 3
def allocate_counts(total: int, mix: Dict[str, float]) -> Dict[str, int]:
    "Split `total` over the categories of `mix` in proportion, by largest remainder (ties in status order)."
    keys = [k for k in ATTRITION_STATUSES if k in mix]
    share = np.array([mix[k] for k in keys], dtype=float)
    exact = total * share / share.sum()
    base = np.floor(exact).astype(int)
    order = sorted(range(len(keys)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[:total - base.sum()]: base[i] += 1
    return dict(zip(keys, base.tolist()))

# %% ../../nbs/13_simulation.attrition.ipynb 4
def reweight_respondents(frame: pd.DataFrame, base_weight: pd.Series, responded: pd.Series) -> pd.Series:
    """
    Respondent weights scaled by (all weight)/(respondent weight) within each wave and LGA; non-respondents get NaN.
    The weighted total of every wave-LGA cell with a respondent is preserved.
    """
    cell = [frame['wave'], frame['lga_id']]
    w_all = base_weight.groupby(cell).transform('sum')
    w_resp = base_weight.where(responded, 0.0).groupby(cell).transform('sum')
    out = (base_weight * w_all / w_resp).where(responded)
    lost = (w_resp == 0) & ~responded
    if lost.any(): logger.warning("%d rows sit in wave-LGA cells without respondents; their weight is not carried", int(lost.sum()))
    return out

# %% ../../nbs/13_simulation.attrition.ipynb 5
def _pick(rng, pool, k):
    pool = list(pool)
    return [] if k <= 0 else [pool[i] for i in sorted(rng.choice(len(pool), size=min(k, len(pool)), replace=False))]

def apply_attrition(population: Population, config: Optional[GeneratorConfig] = None, seed: Optional[int] = None) -> Population:
    """
    Mark households with a final interview status and blank their expenditure and weight from their drop-out wave on.
    Non-response households are `rate` of the panel; `tracked` households are added on top in the mix's proportion and
    stay observed. Crisis-area non-response is drawn from always-conflict LGAs first, up to `crisis_cap` of their
    residents, then from other conflict LGAs and lastly from anyone left. With target 'poorest' the non-response
    households are the poorest in wave one.
    """
    cfg = population.config if config is None else config
    seed = population.seed if seed is None else seed
    a = cfg.attrition
    rate, mix, target = a['rate'], a['mix'], a['target']
    if not 0 <= rate <= 0.3: raise ValidationError(f"attrition rate must lie in [0, 0.3], got {rate!r}")
    _check_mix(mix)
    df = population.frame.copy()
    w1 = df[df['wave'] == 1].set_index('household_id')
    hids, n = w1.index.to_numpy(), len(w1)
    if rate == 0:
        logger.info("attrition rate 0: every household interviewed")
        return population.with_frame(df)

    tracked_share = mix.get('tracked', 0) / sum(mix.values())
    n_marked = round(rate * n / (1 - tracked_share))
    if n_marked > n: raise ValidationError(f"attrition mix needs {n_marked} households out of {n}")
    counts = allocate_counts(n_marked, mix)
    n_out = n_marked - counts.get('tracked', 0)
    rng = make_rng(seed, 7)

    last = df[df['wave'] == 6].set_index('household_id')['lga_id']
    lga_class = {l.lga_id: l.conflict_class for l in population.lgas}
    if target == 'poorest': candidates = w1['pcexp'].sort_values(kind='stable').index[:n_out].tolist()
    else: candidates = hids.tolist()
    status = {}
    # crisis losses take at most `crisis_cap` of the households living in always-conflict LGAs, then other conflict LGAs
    n_crisis, crisis = counts.get('crisis_area', 0), []
    for cls in ('always', 'some'):
        pool = [h for h in candidates if lga_class[last[h]] == cls]
        cap = int(a['crisis_cap'] * (last.map(lga_class) == cls).sum()) if cls == 'always' else len(pool)
        crisis += _pick(rng, pool, min(n_crisis - len(crisis), cap))
    if len(crisis) < n_crisis:
        taken = set(crisis)
        crisis += _pick(rng, [h for h in candidates if h not in taken], n_crisis - len(crisis))
    status.update(dict.fromkeys(crisis, 'crisis_area'))
    for k in ('refused', 'not_found', 'dead', 'moved_untracked'):
        chosen = _pick(rng, [h for h in candidates if h not in status], counts.get(k, 0))
        status.update(dict.fromkeys(chosen, k))
    status.update(dict.fromkeys(_pick(rng, [h for h in hids if h not in status], counts.get('tracked', 0)), 'tracked'))

    gone = {h: s for h, s in status.items() if s != 'tracked'}
    drop_wave = dict(zip(sorted(gone), rng.integers(2, 7, len(gone)).tolist()))
    df['attrition_status'] = df['household_id'].map(status).fillna('interviewed')
    out_from = df['household_id'].map(drop_wave)
    responded = ~(out_from.notna() & (df['wave'] >= out_from))
    df['weight'] = reweight_respondents(df, df['weight'], responded)
    df.loc[~responded, 'pcexp'] = np.nan
    logger.info("attrition: %d of %d households lost (%.2f%%), %d tracked; statuses %s", len(gone), n,
                100 * len(gone) / n, counts.get('tracked', 0), pd.Series(status).value_counts().to_dict())
    return population.with_frame(df)
