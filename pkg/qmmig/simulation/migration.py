"""Stay-or-leave decisions of tau-quantile maximisers in conflict LGAs, plus background moves."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/12_simulation.migration.ipynb.

# %% auto 0
__all__ = ['observed_stay_lottery', 'counterfactual_leave_lottery', 'decide_moves', 'simulate_migration']

# %% ../../nbs/12_simulation.migration.ipynb 2
import logging
from typing import Callable, Dict, Optional

import numpy as np

from ..core import ValidationError, make_rng
from ..theory.prospects import Lottery, Preference, prefers_tau
from .population import Population

logger = logging.getLogger(__name__)

# %% ../../nbs/12_simulation.migration.ipynb 3
# builders are called as `builder(lga, rows, population)` with the LGA's rows in the wave its households decide
LotteryBuilder = Callable

def observed_stay_lottery(atoms: int = 100) -> LotteryBuilder:
    "Prospect of staying: the LGA's observed expenditure in the decision wave."
    def build(lga, rows, population): return Lottery.from_sample(rows['pcexp'].dropna().to_numpy(), atoms)
    return build

def counterfactual_leave_lottery(atoms: int = 100) -> LotteryBuilder:
    "Prospect of leaving: the same households' expected expenditure without conflict."
    def build(lga, rows, population): return Lottery.from_sample(population.counterfactual_level(rows), atoms)
    return build

def _built(builder, lga, rows, population, which):
    lot = builder(lga, rows, population)
    if not isinstance(lot, Lottery): raise ValidationError(f"{which} builder returned {type(lot).__name__} for LGA {lga.lga_id}, not a Lottery")
    return lot

# %% ../../nbs/12_simulation.migration.ipynb 4
def decide_moves(population: Population, tau: Dict[int, float], stay_builder: LotteryBuilder,
                 leave_builder: LotteryBuilder) -> Dict[int, int]:
    """
    Household id to the wave it arrives in a new LGA.
    Under rule 'qm' each household of a conflict LGA compares leave against stay once, in the wave its LGA completes
    `min_exposure` conflict waves, and moves in the next wave when it strictly prefers leaving. LGAs reaching that
    exposure only in the last wave, or never, keep their households. Households of conflict-free LGAs move at
    `background_rate`. Under rule 'random' every household moves at `background_rate`.
    """
    m = population.config.migration
    df = population.frame
    origin = df.loc[df['wave'] == 1].set_index('household_id')['lga_id']
    lgas = population.lga_map
    moves, n_decided = {}, 0
    if m['rule'] == 'qm':
        for lga_id, hids in origin.groupby(origin, sort=True):
            lga = lgas[lga_id]
            w0 = lga.decision_wave(m['min_exposure'])
            if w0 is None or w0 >= 6: continue
            rows = df[(df['wave'] == w0) & (df['lga_id'] == lga_id)]
            stay = _built(stay_builder, lga, rows, population, 'stay')
            leave = _built(leave_builder, lga, rows, population, 'leave')
            for hid in hids.index:
                n_decided += 1
                if prefers_tau(leave, stay, tau[hid]) is Preference.FIRST: moves[hid] = w0 + 1
        background = [h for h, l in origin.items() if lgas[l].conflict_class == 'none']
    else: background = list(origin.index)
    rng = make_rng(population.seed, 5)
    u, when = rng.random(len(origin)), rng.integers(2, 7, len(origin))
    pos = {h: i for i, h in enumerate(origin.index)}
    for h in background:
        if u[pos[h]] < m['background_rate']: moves[h] = int(when[pos[h]])
    logger.info("migration (%s): %d of %d households decided by quantile, %d moves in total",
                m['rule'], n_decided, len(origin), len(moves))
    return moves

# %% ../../nbs/12_simulation.migration.ipynb 5
def _destinations(population, origin, moves):
    "Destination LGA per mover: same state with probability `within_state`, conflict-free LGAs first."
    lgas = population.lgas
    share = population.config.migration['within_state']
    rng = make_rng(population.seed, 6)
    out = {}
    for h in sorted(moves):
        src = population.lga_map[origin[h]]
        same = rng.random() < share
        pool = [l for l in lgas if l.lga_id != src.lga_id and (l.state_id == src.state_id) == same]
        if not pool: pool = [l for l in lgas if l.lga_id != src.lga_id]
        calm = [l for l in pool if l.conflict_class == 'none']
        pick = calm or pool
        out[h] = pick[rng.integers(len(pick))]
    return out

def simulate_migration(population: Population, agents=None, stay_lottery_builder: Optional[LotteryBuilder] = None,
                       leave_lottery_builder: Optional[LotteryBuilder] = None) -> Population:
    """
    Copy of `population` with movers relocated from their arrival wave on.
    `lga_id`, `state_id` and `conflict` follow the destination, `migrated` flags the arrival wave and `pcexp` is rebuilt.
    """
    atoms = population.config.migration['atoms']
    stay_b = stay_lottery_builder or observed_stay_lottery(atoms)
    leave_b = leave_lottery_builder or counterfactual_leave_lottery(atoms)
    tau = {a.household_id: a.tau for a in (population.agents if agents is None else agents)}
    df = population.frame.copy()
    origin = df.loc[df['wave'] == 1].set_index('household_id')['lga_id']
    missing = set(origin.index) - set(tau)
    if missing: raise ValidationError(f"{len(missing)} households have no agent profile")
    moves = decide_moves(population, tau, stay_b, leave_b)
    dest = _destinations(population, origin, moves)

    arrive = df['household_id'].map(moves)
    moved = arrive.notna() & (df['wave'] >= arrive)
    if moved.any():
        d = df.loc[moved, 'household_id'].map(dest)
        df.loc[moved, 'lga_id'] = [l.lga_id for l in d]
        df.loc[moved, 'state_id'] = [l.state_id for l in d]
        df.loc[moved, 'conflict'] = [int(l.in_conflict(w)) for l, w in zip(d, df.loc[moved, 'wave'])]
    df['migrated'] = (arrive.notna() & (df['wave'] == arrive)).astype(int)
    df['pcexp'] = np.exp(population.log_expenditure(df))
    within = sum(population.lga_map[origin[h]].state_id == l.state_id for h, l in dest.items())
    if dest: logger.info("%d movers, %.1f%% within their state", len(dest), 100 * within / len(dest))
    return population.with_frame(df)
