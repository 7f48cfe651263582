import numpy as np
import pandas as pd
from fastcore.test import test_eq, test_close, test_fail
from scipy import stats

from qmmig.estimation.means import *

def test_identical_groups():
    df = pd.DataFrame({'x': [1., 2., 3., 1., 2., 3.], 'g': [0, 0, 0, 1, 1, 1]})
    test_eq(mean_equality_test(df, 'x', 'g'), FTest(0., 1.))
    const = pd.DataFrame({'x': [4.] * 6, 'g': [0, 0, 0, 1, 1, 1]})
    test_eq(mean_equality_test(const, 'x', 'g'), FTest(0., 1.))

def test_separated_groups():
    df = pd.DataFrame({'x': [0., 0., 1., 1.], 'g': [0, 0, 1, 1]})
    F, p = mean_equality_test(df, 'x', 'g')
    test_eq(F, float('inf'))
    assert p < 1e-12

def test_matches_pooled_t():
    rng = np.random.default_rng(0)
    a, b = rng.normal(size=40), rng.normal(.5, 1, 55)
    df = pd.DataFrame({'x': np.r_[a, b], 'g': np.r_[np.ones(40), np.zeros(55)]})
    F, p = mean_equality_test(df, 'x', 'g')
    t, pt = stats.ttest_ind(a, b)
    test_close(F, t ** 2, eps=1e-9)
    test_close(p, pt, eps=1e-9)
    anova = stats.f_oneway(a, b)
    test_close(F, anova.statistic, eps=1e-9)

def test_weights():
    rng = np.random.default_rng(1)
    df = pd.DataFrame({'x': rng.normal(size=100), 'g': np.arange(100) % 2, 'w': np.full(100, 3.)})
    # constant weights are rescaled away
    test_close(mean_equality_test(df, 'x', 'g', 'w').statistic, mean_equality_test(df, 'x', 'g').statistic, eps=1e-10)
    w = rng.uniform(.5, 2, 100)
    test_close(mean_equality_test(df, 'x', 'g', w).statistic, mean_equality_test(df.assign(w=w), 'x', 'g', 'w').statistic,
               eps=1e-12)

def test_size():
    rejected = 0
    for seed in range(400):
        rng = np.random.default_rng(seed)
        df = pd.DataFrame({'x': rng.normal(size=1000), 'g': np.repeat([0, 1], 500)})
        rejected += mean_equality_test(df, 'x', 'g').pvalue < .05
    assert 8 <= rejected <= 35

def test_errors_and_missing():
    df = pd.DataFrame({'x': [1., np.nan, 3., 4., 5.], 'g': [0, 0, 1, 1, 1]})
    test_fail(lambda: mean_equality_test(pd.DataFrame({'x': [1., 2.], 'g': [0, 1]}), 'x', 'g'), contains='at least three')
    test_fail(lambda: mean_equality_test(df.assign(g=1), 'x', 'g'), contains='non-empty')
    test_fail(lambda: mean_equality_test(df.assign(g=2), 'x', 'g'), contains='0/1')
    test_fail(lambda: mean_equality_test(df, 'y', 'g'), contains='unknown')
    F, p = mean_equality_test(df, 'x', 'g')
    assert F > 0 and 0 < p < 1

def test_level_shares():
    df = pd.DataFrame({'lang': [1., 2., 2., np.nan, 4.]})
    s = level_shares(df, 'lang')
    test_eq(list(s.columns), ['lang[1]', 'lang[2]', 'lang[4]'])
    test_eq(s['lang[2]'].tolist()[:3], [0., 1., 1.])
    assert np.isnan(s.loc[3, 'lang[1]'])
    test_eq(list(level_shares(df, 'lang', prefix='language').columns)[0], 'language[1]')
