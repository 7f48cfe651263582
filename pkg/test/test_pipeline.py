import numpy as np
import pandas as pd
from fastcore.test import test_eq, test_close, test_fail

from qmmig.core import StepError, ValidationError
from qmmig.estimation.did import DidSpec, cell_means, naive_did
from qmmig.estimation.tables import read_fit_csv
from qmmig.simulation.config import GeneratorConfig
from qmmig.simulation.panel import PanelDataset
from qmmig.theory.empirical import read_report_csv
from qmmig.theory.prospects import Dominance
from qmmig.pipeline.config import PipelineConfig
from qmmig.pipeline.steps import *

FAST = dict(dominance={'replicates': 100, 'grid_size': 64}, attrition={'replicates': 100, 'grid_size': 64})

def small_config(tmp_path, n=1500, seed=0, generator=None, **kw):
    gen = {'n_households': n, **(generator or {})}
    return PipelineConfig(out_dir=str(tmp_path)).updated(seed=seed, generator=gen, **{**FAST, **kw}).validate()

def manifest(out): return pd.read_csv(out/'manifest.csv')

def test_run_all_artifacts(tmp_path):
    results = run_all(small_config(tmp_path))
    test_eq(list(results), ['generate', 'step1', 'step2', 'step3', 'step4', 'attrition'])
    names = set(manifest(tmp_path)['artifact'])
    for a in ('table4.csv', 'figure6.csv', 'table6.csv', 'table7.csv', 'table3.csv', 'table4_attrition.csv', 'figure4.csv',
              'table5.csv', 'figure5_risk.csv', 'counterfactual.csv', 'panel.csv', 'qm_prediction.txt'):
        assert a in names, a
    assert 'manifest.csv' not in names

def test_run_all_deterministic(tmp_path):
    run_all(small_config(tmp_path/'a', n=800, seed=3))
    run_all(small_config(tmp_path/'b', n=800, seed=3))
    test_eq((tmp_path/'a'/'manifest.csv').read_bytes(), (tmp_path/'b'/'manifest.csv').read_bytes())
    for p in (tmp_path/'a').glob('*.csv'): test_eq(p.read_bytes(), (tmp_path/'b'/p.name).read_bytes())

def test_step_toggles(tmp_path):
    cfg = small_config(tmp_path, n=800, steps={'step3': False, 'step4': False, 'attrition': False})
    run_all(cfg)
    steps = set(manifest(tmp_path)['step'])
    test_eq(steps, {'generate', 'step1', 'step2'})
    assert not (tmp_path/'table6.csv').exists()

def test_failure_names_step(tmp_path):
    cfg = small_config(tmp_path, n=800)
    Pipeline(cfg).generate()
    cfg = cfg.updated(input=str(tmp_path/'panel.csv'), steps={'step2': False}, welfare={'terms': [('continuous', 'nope')]})
    try: run_all(cfg)
    except StepError as e:
        test_eq(e.step, 'step1')
        assert isinstance(e.cause, ValidationError)
    else: raise AssertionError("run_all did not fail")
    assert (tmp_path/'manifest.csv').exists()

def test_step2_needs_step1(tmp_path):
    test_fail(lambda: step2_dominance(small_config(tmp_path)), contains='run step1 first')
    test_fail(lambda: step1_welfare(small_config(tmp_path).updated(input=str(tmp_path/'none.csv'))), contains='not found')

def test_step1_zero_noise(tmp_path):
    gen = {'expenditure': {'noise_sd': 0., 'conflict_noise_sd': 0.}}
    p = Pipeline(small_config(tmp_path, generator=gen))
    p.generate()
    fit, cf = p.step1_welfare()
    assert fit.r_squared > .999
    planted = GeneratorConfig().expenditure['coefficients']
    for label, b in planted.items(): test_close(fit.coef(label)[0], b, eps=1e-6)
    test_eq(list(cf.columns), ['household_id', 'wave', 'lga_id', 'weight', 'pcexp', 'log_pred', 'pcexp_cf'])
    test_close(fit.smearing_factor, 1., eps=1e-8)
    table, footer = read_fit_csv(tmp_path/'table4.csv')
    assert any(t.startswith('state_id[') for t in table['term'])
    test_eq(footer[0]['kind'], 'ols')

def test_step1_planted_coefficients(tmp_path):
    p = Pipeline(small_config(tmp_path, n=4000))
    p.generate()
    fit, _ = p.step1_welfare()
    planted = GeneratorConfig().expenditure['coefficients']
    within = sum(abs(fit.coef(l)[0] - b) < 3 * fit.coef(l)[1] for l, b in planted.items())
    assert within >= len(planted) - 1

def test_step1_without_dwelling(tmp_path):
    p = Pipeline(small_config(tmp_path, welfare={'dwelling': False}))
    p.generate()
    fit, _ = p.step1_welfare()
    assert not any(l.startswith('dwel_') for l in fit.labels)
    assert 'own_tv' in fit.labels

def test_step2_single_crossing(tmp_path):
    p = Pipeline(small_config(tmp_path, n=3000))
    p.generate()
    p.step1_welfare()
    report = p.step2_dominance()
    test_eq(report.verdict, Dominance.CROSS)
    test_eq(len(report.crossings), 1)
    test_eq((tmp_path/'qm_prediction.txt').read_text().strip(), 'maxmin leave; maxmax stay')
    lo = report.grid < report.crossings[0]
    assert (report.diff[lo] <= report.crossing_tolerance).all()
    back = read_report_csv(tmp_path/'figure6.csv')
    test_eq(back.labels, ('counterfactual', 'observed'))

def test_step2_no_penalty(tmp_path):
    p = Pipeline(small_config(tmp_path, generator={'expenditure': {'conflict_penalty': 0., 'conflict_noise_sd': 0.}}))
    p.generate()
    p.step1_welfare()
    assert p.step2_dominance().verdict in (Dominance.EQUAL, Dominance.CROSS)

def test_step3_signs_and_nesting(tmp_path):
    p = Pipeline(small_config(tmp_path, n=5000))
    p.generate()
    fits = p.step3_migration_models()
    test_eq(list(fits), ['all', 'some_conflict', 'always_conflict'])
    for name, f in fits.items():
        c, se = f.coef('risk_averse')
        assert c < 0 and c / se < -1.96, name
    # longer exposure sorts harder: the effect grows from column to column
    size = [abs(f.coef('risk_averse')[0]) for f in fits.values()]
    assert size[0] <= size[1] <= size[2], size
    rows = p.risk_rows()
    masks = p.migration_samples(rows)
    assert (masks['always_conflict'] <= masks['some_conflict']).all() and (masks['some_conflict'] <= masks['all']).all()
    table, footer = read_fit_csv(tmp_path/'table6.csv')
    test_eq(sorted(set(table['model'])), ['all', 'always_conflict', 'some_conflict'])
    assert (tmp_path/'table6_lpm.csv').exists()

def test_step3_failure_is_reported(tmp_path):
    samples = {'all': None, 'nobody': ('always',)}
    p = Pipeline(small_config(tmp_path, n=800, generator={'conflict': {'always_share': 0.}}, migration={'samples': samples}))
    p.generate()
    fits = p.step3_migration_models()
    test_eq(list(fits), ['all'])
    _, footer = read_fit_csv(tmp_path/'table6.csv')
    err = [f['error'] for f in footer if f.get('model') == 'nobody']
    test_eq(len(err), 1)
    assert 'SeparationError' in err[0]

def test_step4_cell_identity(tmp_path):
    p = Pipeline(small_config(tmp_path, n=2000, weighted=False))
    p.generate()
    fits = p.step4_did()
    rows = p.risk_rows().assign(exposed=lambda r: (r['conflict_waves'] >= 1).astype(int))
    theta, _ = fits['no_covariates'].coef('exposed*non_migrant')
    test_close(theta, naive_did(cell_means(rows, DidSpec('risk_averse', 'exposed', 'non_migrant'))), eps=1e-10)
    assert 'hh_agey' in fits['covariates'].labels
    table, _ = read_fit_csv(tmp_path/'table7.csv')
    test_eq(sorted(set(table['model'])), ['covariates', 'no_covariates'])

def test_step4_planted_effect(tmp_path):
    gen = {'migration': {'rule': 'random'}, 'tau': {'p0': 0., 'p1': 0., 'uniform': 1.}, 'risk': {'exposure_effect': .1}}
    p = Pipeline(small_config(tmp_path, n=5000, generator=gen))
    p.generate()
    theta, se = p.step4_did()['no_covariates'].coef('exposed*non_migrant')
    assert abs(theta - .1) < 3 * se

def test_attrition_zero(tmp_path):
    p = Pipeline(small_config(tmp_path, generator={'attrition': {'rate': 0.}}))
    p.generate()
    balance, report, risk = p.attrition_checks()
    t3 = pd.read_csv(tmp_path/'table3.csv')
    test_eq(list(t3.columns), ['variable', 'mean_full', 'mean_survivors', 'F', 'p', 'F_unweighted', 'p_unweighted'])
    assert (t3['F'] == 0).all() and (t3['p'] == 1).all()
    test_eq(balance['variable'].tolist(), t3['variable'].tolist())
    test_eq(report.verdict, Dominance.EQUAL)
    assert not report.excludes_zero().any() and not risk.excludes_zero().any()
    table, _ = read_fit_csv(tmp_path/'table4_attrition.csv')
    test_eq(sorted(set(table['model'])), ['attrition', 'overall'])
    by = table.pivot(index='term', columns='model', values='coef')
    test_close(by['overall'].to_numpy(), by['attrition'].to_numpy(), eps=1e-9)
    assert 'hh_sex*hh_marstat' in by.index and any(t.startswith('state_id[') for t in by.index)
    t5, _ = read_fit_csv(tmp_path/'table5.csv')
    assert 'log_pcexp' in set(t5['term']) and not any(t.startswith('hh_language') for t in t5['term'])

def test_attrition_poorest(tmp_path):
    gen = {'attrition': {'rate': .2, 'target': 'poorest'}}
    p = Pipeline(small_config(tmp_path, n=2000, generator=gen))
    p.generate()
    _, report, _ = p.attrition_checks()
    lower = report.grid <= np.quantile(report.grid, .25)
    assert (report.band_lo[lower] > 0).any()
    assert (tmp_path/'figure5_risk.csv').exists() and (tmp_path/'table5.csv').exists()

def test_household_table():
    df = pd.DataFrame({'household_id': [1, 1, 2, 2], 'wave': [1, 2, 1, 2], 'lga_id': [10, 11, 11, 11],
                       'conflict': [0, 1, 1, 1], 'migrated': [0, 1, 0, 0]})
    h = household_table(df)
    test_eq(h.loc[1, 'non_migrant'], 0)
    test_eq(h.loc[2, 'non_migrant'], 1)
    test_eq(h.loc[1, 'conflict_waves'], 0)
    test_eq(h.loc[2, 'conflict_waves'], 2)
    test_eq(h['origin_class'].tolist(), ['none', 'some'])

def test_simulate_panel():
    pop = simulate_panel(GeneratorConfig(n_households=500), seed=1)
    assert isinstance(pop.panel, PanelDataset)
    w6 = pop.frame[pop.frame['wave'] == 6]
    assert w6['risk_averse'].notna().any()
    assert pop.frame['migrated'].sum() > 0
