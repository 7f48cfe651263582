"""The four analysis steps, the attrition checks and the end-to-end run with its manifest."""

# AUTOGENERATED! DO NOT EDIT! File to edit: ../../nbs/16_pipeline.steps.ipynb.

# %% auto 0
__all__ = ['Pipeline', 'simulate_panel', 'household_table', 'generate', 'step1_welfare', 'step2_dominance',
           'step3_migration_models', 'step4_did', 'attrition_checks', 'run_all']

# %% ../../nbs/16_pipeline.steps.ipynb 2
import hashlib
import logging
from dataclasses import replace
from pathlib import Path

import numpy as np
import pandas as pd
from fastcore.basics import patch, store_attr
from scipy import stats
from scipy.special import expit

from ..core import QMError, ValidationError, StepError
from ..estimation.binary import binary_mle_fit
from ..estimation.design import DesignSpec, build_design
from ..estimation.did import DidSpec, did_fit
from ..estimation.linear import ols_fit, predict_log, smearing_retransform
from ..estimation.means import mean_equality_test, level_shares
from ..estimation.tables import write_fit_csv
from ..simulation.attrition import apply_attrition
from ..simulation.config import GeneratorConfig
from ..simulation.migration import simulate_migration
from ..simulation.panel import CATEGORICAL, COVARIATES, DWELLING, RESPONDING, PanelDataset
from ..simulation.population import generate_population, read_lgas_csv
from ..simulation.risk import assign_risk_answers
from ..theory.empirical import EmpiricalDistribution, dominance_bands, qm_prediction
from .config import PipelineConfig, parse_terms

logger = logging.getLogger(__name__)

# %% ../../nbs/16_pipeline.steps.ipynb 3
def simulate_panel(config: GeneratorConfig, seed: int):
    "Population, migration, attrition and risk answers in one pass."
    pop = generate_population(config, seed)
    pop = simulate_migration(pop)
    pop = apply_attrition(pop)
    return assign_risk_answers(pop)

def household_table(frame: pd.DataFrame, lgas=None) -> pd.DataFrame:
    """
    Per household: origin LGA, the number of waves it saw fatalities, its conflict class and `non_migrant`
    (1 = never changed LGA, 0 = migrant). Without LGA truth a wave counts as a conflict wave when the panel
    flags any of the LGA's rows in that wave.
    """
    origin = frame[frame['wave'] == 1].set_index('household_id')['lga_id']
    if lgas is not None: waves = pd.Series({l.lga_id: sum(n > 0 for n in l.fatalities_per_wave) for l in lgas})
    else: waves = frame.groupby(['lga_id', 'wave'])['conflict'].max().groupby(level=0).sum()
    n = origin.map(waves).fillna(0).astype(int)
    moved = frame.groupby('household_id')['migrated'].max().reindex(origin.index)
    return pd.DataFrame({'origin_lga': origin, 'conflict_waves': n,
                         'origin_class': np.where(n == 0, 'none', np.where(n >= 6, 'always', 'some')),
                         'non_migrant': (moved == 0).astype(int)})

# %% ../../nbs/16_pipeline.steps.ipynb 4
class Pipeline:
    "Runs the analysis against one output directory; every step reads its inputs from disk."
    def __init__(self, config: PipelineConfig):
        store_attr('config')
        config.validate()
        self.out = config.out
        self.panel_path = config.panel_path
        sibling = self.panel_path.parent / 'lgas.csv'
        # without explicit LGA truth, a `lgas.csv` written next to the panel by `generate` is used
        self.lgas_path = Path(config.lgas) if config.lgas else (sibling if sibling.exists() else None)
        self.artifacts = []

    @property
    def weight(self): return 'weight' if self.config.weighted else None

@patch
def record(self: Pipeline, step, path):
    self.artifacts = [a for a in self.artifacts if a[0] != Path(path)] + [(Path(path), step)]
    logger.info("%s wrote %s", step, path)

@patch
def write_csv(self: Pipeline, step, name, frame: pd.DataFrame):
    path = self.out / name
    frame.to_csv(path, index=False, float_format='%.10g')
    self.record(step, path)
    return path

@patch
def load_panel(self: Pipeline) -> PanelDataset:
    if not self.panel_path.exists(): raise ValidationError(f"panel file not found: {self.panel_path}")
    return PanelDataset.read_csv(self.panel_path)

@patch
def lgas(self: Pipeline):
    if self.lgas_path is None: return None
    if not self.lgas_path.exists(): raise ValidationError(f"LGA file not found: {self.lgas_path}")
    return read_lgas_csv(self.lgas_path)

@patch
def risk_rows(self: Pipeline) -> pd.DataFrame:
    "Wave-6 rows with a risk answer, joined with the household table."
    df = self.load_panel().frame
    w6 = df[(df['wave'] == 6) & df['risk_averse'].notna()]
    if w6.empty: raise ValidationError("the panel carries no wave-6 risk answers")
    return w6.join(household_table(df, self.lgas()), on='household_id')

# %% ../../nbs/16_pipeline.steps.ipynb 5
@patch
def generate(self: Pipeline):
    "Synthetic panel and truth files under the output directory."
    self.out.mkdir(parents=True, exist_ok=True)
    cfg = GeneratorConfig().updated(**self.config.generator)
    pop = simulate_panel(cfg, self.config.seed)
    paths = pop.write(self.out)
    for p in paths.values(): self.record('generate', p)
    self.panel_path, self.lgas_path = paths['panel'], paths['lgas']
    return pop

# %% ../../nbs/16_pipeline.steps.ipynb 6
def _welfare_fit(rows, terms, weight, robust):
    dm = build_design(rows, DesignSpec('log_pcexp', terms, weight))
    calm = (rows.loc[dm.index, 'conflict'] == 0).to_numpy()
    if not calm.any(): raise ValidationError("panel has no non-conflict rows to fit")
    if calm.all(): raise ValidationError("panel has no conflict rows to predict")
    return ols_fit(dm.subset(calm), robust=robust), dm.subset(~calm)

@patch
def step1_welfare(self: Pipeline):
    """
    Log expenditure on the welfare terms over non-conflict rows, predicted for conflict rows and smeared back to levels.
    Writes `table4.csv` and `counterfactual.csv`.
    """
    c = self.config.welfare
    self.out.mkdir(parents=True, exist_ok=True)
    df = self.load_panel().frame
    rows = df[df['pcexp'].notna()].assign(log_pcexp=lambda d: np.log(d['pcexp']))
    spec = DesignSpec('log_pcexp', parse_terms(c['terms']), self.weight)
    if not c['dwelling']: spec = spec.without(*DWELLING)
    fit, test = _welfare_fit(rows, spec.terms, self.weight, c['robust'])
    if not c['dwelling']:
        full, _ = _welfare_fit(rows, parse_terms(c['terms']), self.weight, c['robust'])
        logger.info("step1 without dwelling covariates: R2 %.4f against %.4f with them (drop %.4f)",
                    fit.r_squared, full.r_squared, full.r_squared - fit.r_squared)
    log_pred = predict_log(fit, test)
    level = smearing_retransform(fit, log_pred)
    cf = rows.loc[test.index, ['household_id', 'wave', 'lga_id', 'weight', 'pcexp']].assign(log_pred=log_pred, pcexp_cf=level)
    path = self.out / 'table4.csv'
    write_fit_csv(path, fit)
    self.record('step1', path)
    self.write_csv('step1', 'counterfactual.csv', cf)
    logger.info("step1: R2 %.4f on %d non-conflict rows, %d conflict rows predicted, smearing %.4f",
                fit.r_squared, fit.n_obs, len(cf), fit.smearing_factor)
    return fit, cf

# %% ../../nbs/16_pipeline.steps.ipynb 7
def _bands(a, b, settings, config, labels):
    return dominance_bands(a, b, replicates=settings['replicates'], level=settings['level'], seed=config.seed,
                           grid_size=settings['grid_size'], crossing_tolerance=settings['crossing_tolerance'],
                           n_workers=config.n_workers, labels=labels)

@patch
def step2_dominance(self: Pipeline):
    """
    Counterfactual against observed expenditure of conflict rows, with bootstrap bands.
    Writes `figure6.csv` and the quantile-maximiser prediction to `qm_prediction.txt`.
    """
    path = self.out / 'counterfactual.csv'
    if not path.exists(): raise ValidationError(f"missing step1 output {path}; run step1 first")
    cf = pd.read_csv(path)
    w = cf['weight'] if self.config.weighted else None
    observed, counterfactual = EmpiricalDistribution(cf['pcexp'], w), EmpiricalDistribution(cf['pcexp_cf'], w)
    report = _bands(counterfactual, observed, self.config.dominance, self.config, ('counterfactual', 'observed'))
    out = self.out / 'figure6.csv'
    report.to_csv(out)
    self.record('step2', out)
    prediction = qm_prediction(report, leave_label='leave', stay_label='stay')
    (self.out / 'qm_prediction.txt').write_text(prediction + '\n')
    self.record('step2', self.out / 'qm_prediction.txt')
    logger.info("step2: verdict %s, crossings %s, prediction %r", report.verdict.value, report.crossings, prediction)
    return report

# %% ../../nbs/16_pipeline.steps.ipynb 8
@patch
def migration_samples(self: Pipeline, rows: pd.DataFrame):
    "Row masks per configured sample: every migrant plus the non-migrants whose origin class is listed."
    out = {}
    for name, classes in self.config.migration['samples'].items():
        listed = True if classes is None else rows['origin_class'].isin(classes)
        out[name] = ((rows['non_migrant'] == 0) | listed).to_numpy()
    return out

@patch
def step3_migration_models(self: Pipeline):
    """
    Binary models of `non_migrant` (1 = never migrated) on the risk answer, one per nested sample.
    A failing sample is reported in the table footer without stopping the others. Writes `table6.csv`
    and, with `lpm`, the linear-probability cross-check `table6_lpm.csv`.
    """
    m = self.config.migration
    rows = self.risk_rows()
    spec = DesignSpec('non_migrant', parse_terms(m['terms']), self.weight)
    fits, lpm, failures = {}, {}, {}
    for name, mask in self.migration_samples(rows).items():
        try:
            dm = build_design(rows[mask], spec)
            fits[name] = binary_mle_fit(dm, link=m['link'], robust=m['robust'])
            if m['lpm']: lpm[name] = ols_fit(dm, robust=True)
        except QMError as e:
            failures[name] = f"{type(e).__name__}: {e}"
            logger.warning("step3 sample %s failed: %s", name, failures[name])
    path = self.out / 'table6.csv'
    write_fit_csv(path, fits, failures)
    self.record('step3', path)
    if m['lpm']:
        path = self.out / 'table6_lpm.csv'
        write_fit_csv(path, lpm, failures)
        self.record('step3', path)
    for name, fit in fits.items():
        if 'risk_averse' in fit.labels: logger.info("step3 %s: risk_averse %.4f (se %.4f), n=%d", name, *fit.coef('risk_averse'), fit.n_obs)
    return fits

# %% ../../nbs/16_pipeline.steps.ipynb 9
@patch
def step4_did(self: Pipeline):
    """
    Risk answer on conflict exposure of the origin LGA, never-migrated status and their interaction,
    without and with covariates. Writes `table7.csv`.
    """
    d = self.config.did
    rows = self.risk_rows().assign(exposed=lambda r: (r['conflict_waves'] >= d['min_conflict_waves']).astype(int))
    base = DidSpec('risk_averse', 'exposed', 'non_migrant', [], self.weight)
    fits = {'no_covariates': did_fit(rows, base, robust=d['robust']),
            'covariates': did_fit(rows, replace(base, covariates=parse_terms(d['terms'])), robust=d['robust'])}
    path = self.out / 'table7.csv'
    write_fit_csv(path, fits)
    self.record('step4', path)
    return fits

# %% ../../nbs/16_pipeline.steps.ipynb 10
def _balance_table(stacked, weighted):
    "Means of every covariate in the full and surviving samples with weighted and unweighted F tests."
    cols = {}
    for v in COVARIATES:
        if v in CATEGORICAL: cols.update(level_shares(stacked, v).to_dict('series'))
        else: cols[v] = stacked[v].astype(float)
    frame = pd.DataFrame(cols).assign(survivor=stacked['survivor'].to_numpy(), weight=stacked['weight'].to_numpy())
    rows = []
    for v in cols:
        sub = frame[[v, 'survivor', 'weight']].dropna()
        wt = sub['weight'] if weighted else None
        f_w = mean_equality_test(sub, v, 'survivor', wt)
        f_u = mean_equality_test(sub, v, 'survivor', None)
        mean = lambda g: np.average(sub.loc[sub['survivor'] == g, v], weights=None if wt is None else wt[sub['survivor'] == g])
        rows.append(dict(variable=v, mean_full=mean(0), mean_survivors=mean(1), F=f_w.statistic, p=f_w.pvalue,
                         F_unweighted=f_u.statistic, p_unweighted=f_u.pvalue))
    return pd.DataFrame(rows)

def _index_cdfs(fits, full_dm, surv_dm, transform=None):
    "Predicted index CDFs of both samples, each sample scored by its own fit of the pair."
    a, b = predict_log(fits[0], full_dm), predict_log(fits[1], surv_dm)
    if transform is not None: a, b = transform(a), transform(b)
    return EmpiricalDistribution(a, full_dm.w), EmpiricalDistribution(b, surv_dm.w)

@patch
def attrition_checks(self: Pipeline):
    """
    Wave-1 characteristics of the full panel against the households still responding at the end (with their
    attrition-adjusted weights): F tests per covariate, the expenditure model fitted on each sample and the CDFs of
    its predictions, and the CDFs of predicted risk aversion from a logit on the respondents' answers.
    Returns the balance table and the two dominance reports (the risk one is None without risk answers).
    Writes `table3.csv`, `table4_attrition.csv`, `figure4.csv`, `table5.csv` and `figure5_risk.csv`.
    """
    a = self.config.attrition
    df = self.load_panel().frame
    full = df[df['wave'] == 1].assign(log_pcexp=lambda d: np.log(d['pcexp']))
    last = df[df['wave'] == 6].set_index('household_id')
    keep = full['attrition_status'].isin(RESPONDING).to_numpy()
    survivors = full[keep].assign(weight=lambda d: d['household_id'].map(last['weight']).to_numpy(),
                                  risk_averse=lambda d: d['household_id'].map(last['risk_averse']).to_numpy())
    if not keep.all(): logger.info("attrition checks: %d of %d households lost", int((~keep).sum()), len(full))
    else: logger.info("attrition checks: no attrition in the panel")

    stacked = pd.concat([full.assign(survivor=0), survivors.assign(survivor=1)], ignore_index=True)
    balance = _balance_table(stacked, self.config.weighted)
    self.write_csv('attrition', 'table3.csv', balance)

    terms, w = parse_terms(a['terms']), self.weight
    dm_full = build_design(full, DesignSpec('log_pcexp', terms, w))
    dm_surv = build_design(survivors, DesignSpec('log_pcexp', terms, w), levels=dm_full.levels)
    fits = ols_fit(dm_full, robust=a['robust']), ols_fit(dm_surv, robust=a['robust'])
    path = self.out / 'table4_attrition.csv'
    write_fit_csv(path, dict(zip(('overall', 'attrition'), fits)))
    self.record('attrition', path)
    report = _bands(*_index_cdfs(fits, dm_full, dm_surv), a, self.config, ('full', 'survivors'))
    report.to_csv(self.out / 'figure4.csv')
    self.record('attrition', self.out / 'figure4.csv')

    risk_report = None
    answered = survivors[survivors['risk_averse'].notna()]
    if answered.empty: logger.warning("attrition checks: no risk answers, risk-tolerance comparison skipped")
    else:
        risk_terms = parse_terms(a['risk_terms'])
        dm_risk = build_design(answered, DesignSpec('risk_averse', risk_terms, w))
        logit = binary_mle_fit(dm_risk, link=a['link'])
        path = self.out / 'table5.csv'
        write_fit_csv(path, logit)
        self.record('attrition', path)
        to_prob = expit if a['link'] == 'logit' else stats.norm.cdf
        x_full = build_design(full, DesignSpec(None, risk_terms, w), levels=dm_risk.levels)
        x_surv = build_design(survivors, DesignSpec(None, risk_terms, w), levels=dm_risk.levels)
        risk_report = _bands(*_index_cdfs((logit, logit), x_full, x_surv, to_prob), a, self.config, ('full', 'survivors'))
        risk_report.to_csv(self.out / 'figure5_risk.csv')
        self.record('attrition', self.out / 'figure5_risk.csv')
    return balance, report, risk_report

# %% ../../nbs/16_pipeline.steps.ipynb 11
@patch
def write_manifest(self: Pipeline):
    "`manifest.csv`: every artifact of this run with its step and SHA-256 digest."
    rows = [dict(artifact=p.name, step=s, sha256=hashlib.sha256(p.read_bytes()).hexdigest()) for p, s in self.artifacts]
    path = self.out / 'manifest.csv'
    pd.DataFrame(rows, columns=['artifact', 'step', 'sha256']).to_csv(path, index=False)
    return path

@patch
def run_all(self: Pipeline):
    """
    Enabled steps in order; `generate` also runs when no input panel is configured.
    The first failure stops the run with a `StepError` naming the step; the manifest of finished steps is kept.
    """
    s = self.config.steps
    plan = [('generate', self.generate, s.get('generate', False) or self.config.input is None),
            ('step1', self.step1_welfare, s.get('step1', True)), ('step2', self.step2_dominance, s.get('step2', True)),
            ('step3', self.step3_migration_models, s.get('step3', True)), ('step4', self.step4_did, s.get('step4', True)),
            ('attrition', self.attrition_checks, s.get('attrition', True))]
    self.out.mkdir(parents=True, exist_ok=True)
    results = {}
    for name, fn, enabled in plan:
        if not enabled: continue
        logger.info("step %s: start", name)
        try: results[name] = fn()
        except Exception as e:
            self.write_manifest()
            raise StepError(name, e) from e
    self.write_manifest()
    logger.info("run finished: %d artifacts", len(self.artifacts))
    return results

# %% ../../nbs/16_pipeline.steps.ipynb 12
def generate(config: PipelineConfig): return Pipeline(config).generate()
def step1_welfare(config: PipelineConfig): return Pipeline(config).step1_welfare()
def step2_dominance(config: PipelineConfig): return Pipeline(config).step2_dominance()
def step3_migration_models(config: PipelineConfig): return Pipeline(config).step3_migration_models()
def step4_did(config: PipelineConfig): return Pipeline(config).step4_did()
def attrition_checks(config: PipelineConfig): return Pipeline(config).attrition_checks()
def run_all(config: PipelineConfig): return Pipeline(config).run_all()
