import numpy as np
import pandas as pd
from fastcore.test import test_eq, test_close, test_fail

from qmmig.simulation.config import GeneratorConfig, DEFAULT_STATUS_MIX
from qmmig.simulation.population import generate_population
from qmmig.simulation.attrition import *
from qmmig.simulation.risk import *

cfg = GeneratorConfig()

def statuses(pop): return pop.frame[pop.frame['wave'] == 1].set_index('household_id')['attrition_status']

def test_allocate_counts():
    test_eq(allocate_counts(10, {'refused': 1, 'dead': 1, 'crisis_area': 1}), {'refused': 4, 'dead': 3, 'crisis_area': 3})
    c = allocate_counts(463, DEFAULT_STATUS_MIX)
    test_eq(sum(c.values()), 463)
    test_eq(c['crisis_area'], 138)

def test_default_rate():
    pop = apply_attrition(generate_population(cfg, seed=0))
    s = statuses(pop)
    lost = (~s.isin(['interviewed', 'tracked'])).mean()
    assert abs(lost - .083) <= .005
    non_main = s[s != 'interviewed']
    assert abs((non_main == 'crisis_area').mean() - 139 / 466) <= .05
    test_eq(set(s) - {'interviewed'}, set(DEFAULT_STATUS_MIX))

def test_drop_out():
    pop = apply_attrition(generate_population(cfg.updated(n_households=1000), seed=1))
    df = pop.frame
    for h, g in df[~df['attrition_status'].isin(['interviewed', 'tracked'])].groupby('household_id'):
        gone = g['pcexp'].isna().to_numpy()
        assert gone.any() and not gone[0]
        # once missing, always missing
        assert (np.diff(gone.astype(int)) >= 0).all()
        test_eq(g['weight'].isna().tolist(), gone.tolist())
    kept = df[df['attrition_status'].isin(['interviewed', 'tracked'])]
    assert kept['pcexp'].notna().all()

def test_crisis_in_always_lgas():
    pop = apply_attrition(generate_population(cfg, seed=2))
    df, lmap = pop.frame, pop.lga_map
    last = df[df['wave'] == 6].set_index('household_id')
    cls = last['lga_id'].map(lambda l: lmap[l].conflict_class)
    crisis = last['attrition_status'] == 'crisis_area'
    assert cls[crisis].isin(['some', 'always']).all()
    lost = crisis.groupby(cls).mean()
    assert 0 < lost['always'] <= .5
    assert lost['always'] > 3 * lost['some']
    capped = apply_attrition(generate_population(cfg, seed=2), config=cfg.updated(attrition={'crisis_cap': 0.}))
    l2 = capped.frame.query('wave == 6')
    assert not (l2['attrition_status'] == 'crisis_area')[l2['lga_id'].map(lambda l: lmap[l].conflict_class == 'always')].any()

def test_reweighting_preserves_totals():
    base = generate_population(cfg.updated(n_households=1000), seed=3)
    pop = apply_attrition(base)
    before = base.frame.groupby(['wave', 'lga_id'])['weight'].sum()
    after = pop.frame.groupby(['wave', 'lga_id'])['weight'].sum(min_count=1)
    ok = after.notna()
    test_close((after[ok] / before[ok]).to_numpy(), np.ones(int(ok.sum())), eps=1e-9)

def test_zero_rate():
    base = generate_population(cfg.updated(n_households=500), seed=4)
    pop = apply_attrition(base, config=base.config.updated(attrition={'rate': 0.}))
    test_eq(set(pop.frame['attrition_status']), {'interviewed'})
    test_eq(pop.frame['weight'].tolist(), base.frame['weight'].tolist())
    test_fail(lambda: apply_attrition(base, config=base.config.updated(attrition={'rate': .5})), contains='rate')

def test_poorest_target():
    base = generate_population(cfg.updated(n_households=2000), seed=5)
    pop = apply_attrition(base, config=base.config.updated(attrition={'target': 'poorest'}))
    s = statuses(pop)
    w1 = base.frame[base.frame['wave'] == 1].set_index('household_id')['pcexp']
    lost = s[~s.isin(['interviewed', 'tracked'])].index
    assert w1[lost].max() <= w1.quantile(.1)

def test_reweight_respondents():
    df = pd.DataFrame({'wave': [1, 1, 1, 1], 'lga_id': [1, 1, 2, 2]})
    w = pd.Series([1., 3., 2., 2.])
    out = reweight_respondents(df, w, pd.Series([True, False, True, True]))
    test_eq(out.iloc[0], 4.)
    assert np.isnan(out.iloc[1])
    test_eq(out.iloc[2:].tolist(), [2., 2.])

def test_risk_answers_exact():
    pop = generate_population(cfg.updated(n_households=1000), seed=6)
    out = assign_risk_answers(pop, noise_rate=0.)
    df = out.frame
    truth = {a.household_id: int(a.risk_averse_truth) for a in pop.agents}
    w6 = df[df['wave'] == 6]
    test_eq(w6['risk_averse'].tolist(), [float(truth[h]) for h in w6['household_id']])
    assert df.loc[df['wave'] < 6, 'risk_averse'].isna().all()

def test_risk_noise_and_threshold():
    c = cfg.updated(tau={'p0': 0., 'p1': 0., 'uniform': 1.})
    pop = generate_population(c, seed=7)
    out = assign_risk_answers(pop, noise_rate=.1)
    w6 = out.frame[out.frame['wave'] == 6]
    truth = np.array([a.risk_averse_truth for a in pop.agents], dtype=float)
    flips = (w6['risk_averse'].to_numpy() != truth).mean()
    assert abs(flips - .1) <= .01
    clean = assign_risk_answers(pop, noise_rate=0.).frame
    assert abs(clean.loc[clean['wave'] == 6, 'risk_averse'].mean() - .5) <= .02
    test_fail(lambda: assign_risk_answers(pop, noise_rate=.5), contains='noise_rate')
    test_fail(lambda: assign_risk_answers(pop, threshold_tau=0.), contains='threshold')

def test_risk_skips_attrited():
    pop = assign_risk_answers(apply_attrition(generate_population(cfg.updated(n_households=1000), seed=8)))
    w6 = pop.frame[pop.frame['wave'] == 6]
    answered = w6['risk_averse'].notna()
    test_eq(answered.tolist(), (w6['attrition_status'].isin(['interviewed', 'tracked']) & w6['pcexp'].notna()).tolist())
    pop.panel.validate()

def test_exposure_effect():
    pop = generate_population(cfg.updated(tau={'p0': 0., 'p1': 0., 'uniform': 1.}), seed=9)
    groups = exposure_groups(pop)
    target = groups.index[groups['exposed'] & groups['stayer']]
    def share(delta):
        w6 = assign_risk_answers(pop, exposure_effect=delta).frame.query('wave == 6').set_index('household_id')
        return w6.loc[target, 'risk_averse'].mean()
    test_close(share(.1) - share(0.), .1, eps=.03)
    test_close(share(-.1) - share(0.), -.1, eps=.03)
    test_fail(lambda: assign_risk_answers(pop, exposure_effect=1.5), contains='exposure_effect')
