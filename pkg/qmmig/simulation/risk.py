"""Wave-six answers to the safe-versus-risky investment question."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/14_simulation.risk.ipynb.

# %% auto 0
__all__ = ['exposure_groups', 'assign_risk_answers']

# %% ../../nbs/14_simulation.risk.ipynb 2
import logging
from typing import Optional

import numpy as np
import pandas as pd

from ..core import ValidationError, make_rng, check_probability
from .panel import RESPONDING
from .population import Population

logger = logging.getLogger(__name__)

# %% ../../nbs/14_simulation.risk.ipynb 3
def exposure_groups(population: Population) -> pd.DataFrame:
    "Per household: `exposed` (origin LGA ever in conflict) and `stayer` (never migrated)."
    df = population.frame
    origin = df[df['wave'] == 1].set_index('household_id')['lga_id']
    cls = {l.lga_id: l.conflict_class for l in population.lgas}
    moved = df.groupby('household_id')['migrated'].max()
    return pd.DataFrame({'exposed': origin.map(cls) != 'none', 'stayer': moved.reindex(origin.index) == 0})

def assign_risk_answers(population: Population, agents=None, threshold_tau: Optional[float] = None,
                        noise_rate: Optional[float] = None, seed: Optional[int] = None,
                        exposure_effect: Optional[float] = None) -> Population:
    """
    Responding wave-6 heads answer the safe option (1) iff tau < `threshold_tau`, flipped with probability `noise_rate`.
    `exposure_effect` then moves the risk-averse share of conflict-exposed stayers by that amount in expectation.
    Unset arguments come from the population's `risk` settings.
    """
    r = population.config.risk
    thr = check_probability('threshold_tau', r['threshold'] if threshold_tau is None else threshold_tau, True, True)
    noise = r['noise_rate'] if noise_rate is None else noise_rate
    if not 0 <= noise < 0.5: raise ValidationError(f"noise_rate must lie in [0, 0.5), got {noise!r}")
    delta = r['exposure_effect'] if exposure_effect is None else exposure_effect
    if not -1 <= delta <= 1: raise ValidationError(f"exposure_effect must lie in [-1, 1], got {delta!r}")
    seed = population.seed if seed is None else seed
    tau = {a.household_id: a.tau for a in (population.agents if agents is None else agents)}

    df = population.frame.copy()
    eligible = (df['wave'] == 6) & df['attrition_status'].isin(RESPONDING) & df['pcexp'].notna()
    hids = df.loc[eligible, 'household_id'].to_numpy()
    truth = np.array([tau[h] < thr for h in hids])
    flip = make_rng(seed, 8).random(hids.size) < noise
    answer = (truth ^ flip).astype(float)

    if delta:
        g = exposure_groups(population).reindex(hids)
        target = (g['exposed'] & g['stayer']).to_numpy()
        src = target & (answer == (0.0 if delta > 0 else 1.0))
        share = src.sum() / max(target.sum(), 1)
        p = abs(delta) / share if share > 0 else 0.0
        if p > 1: logger.warning("exposure effect %.3f exceeds the movable share %.3f; capped", delta, share)
        hit = src & (make_rng(seed, 9).random(hids.size) < min(p, 1.0))
        answer[hit] = 1.0 - answer[hit]
        logger.info("exposure effect %.3f: %d of %d exposed stayers changed answer", delta, int(hit.sum()), int(target.sum()))

    df['risk_averse'] = np.nan
    df.loc[eligible, 'risk_averse'] = answer
    logger.info("risk answers: %d respondents, %.1f%% risk-averse", hids.size, 100 * answer.mean() if hids.size else 0.0)
    return population.with_frame(df)
