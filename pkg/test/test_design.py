import numpy as np
import pandas as pd
from fastcore.test import test_eq, test_fail

from qmmig.estimation.design import *

def frame(n=40, seed=0):
    rng = np.random.default_rng(seed)
    return pd.DataFrame({'y': rng.normal(size=n), 'x': rng.normal(size=n),
                         'lang': rng.choice(['Hausa', 'Igbo', 'Yoruba', 'Other'], n),
                         'state': np.arange(n) % 37 + 1, 'a': rng.integers(0, 2, n).astype(float),
                         'b': rng.integers(0, 2, n).astype(float), 'w': rng.uniform(1, 2, n)})

def test_categorical():
    df = frame(80)
    d = build_design(df, DesignSpec('y', [Categorical('lang', 'Hausa')]))
    test_eq(d.columns, ['const', 'lang[Igbo]', 'lang[Other]', 'lang[Yoruba]'])
    test_eq(d.column('lang[Igbo]'), (df['lang'] == 'Igbo').to_numpy(float))
    test_eq(d.levels['lang'], ['Hausa', 'Igbo', 'Other', 'Yoruba'])
    test_fail(lambda: build_design(df, DesignSpec('y', [Categorical('lang', 'Tiv')])), contains='baseline')

def test_fixed_effect():
    d = build_design(frame(74), DesignSpec('y', [FixedEffect('state')], intercept=True))
    test_eq(d.shape, (74, 37))
    test_eq(d.columns[1], 'state[2]')
    assert 'state[1]' not in d.columns

def test_interaction():
    df = frame()
    d = build_design(df, DesignSpec('y', [Continuous('a'), Continuous('b'), Interaction('a', 'b')]))
    test_eq(d.columns, ['const', 'a', 'b', 'a*b'])
    test_eq(d.column('a*b'), (df['a'] * df['b']).to_numpy())
    c = build_design(df, DesignSpec('y', [Categorical('lang', 'Hausa'), Interaction('lang', 'x')], intercept=False))
    test_eq(c.columns[-3:], ['lang[Igbo]*x', 'lang[Other]*x', 'lang[Yoruba]*x'])

def test_missing_rows_and_weights():
    df = frame()
    df.loc[[3, 7], 'x'] = np.nan
    d = build_design(df, DesignSpec('y', [Continuous('x')], weight='w'))
    test_eq(d.n_dropped_rows, 2)
    test_eq(len(d.index), 38)
    test_eq(d.w, df['w'].drop([3, 7]).to_numpy())
    df['x'] = np.nan
    test_fail(lambda: build_design(df, DesignSpec('y', [Continuous('x')])), contains='missing')
    test_fail(lambda: build_design(frame(), DesignSpec('y', [Continuous('nope')])), contains='unknown')
    bad = frame().assign(w=-1.)
    test_fail(lambda: build_design(bad, DesignSpec('y', [Continuous('x')], weight='w')), contains='weights')

def test_single_level_dropped():
    df = frame().assign(lang='Hausa')
    d = build_design(df, DesignSpec('y', [Continuous('x'), Categorical('lang', 'Hausa')]))
    test_eq(d.dropped_terms, ['lang'])
    test_eq(d.columns, ['const', 'x'])

def test_pinned_levels():
    df = frame(80)
    train = build_design(df, DesignSpec('y', [Categorical('lang', 'Hausa')]))
    new = df[df['lang'].isin(['Hausa', 'Igbo'])]
    d = build_design(new, DesignSpec('y', [Categorical('lang', 'Hausa')]), levels=train.levels)
    test_eq(d.columns, train.columns)
    test_eq(d.column('lang[Yoruba]').sum(), 0.)

def test_spec_helpers():
    spec = DesignSpec('y', [Continuous('x'), Categorical('lang', 'Hausa'), Interaction('a', 'x')], weight='w')
    test_eq(spec.variables(), ['y', 'x', 'lang', 'a', 'w'])
    test_eq(spec.without('a').terms, [Continuous('x'), Categorical('lang', 'Hausa')])
    test_fail(lambda: DesignSpec('y', [Continuous('x'), Continuous('x')]).validate(), contains='duplicate')
    d = build_design(frame(), spec)
    s = d.subset(np.arange(len(d.index)) < 10)
    test_eq(s.X.shape[0], 10)
    test_eq(s.columns, d.columns)
