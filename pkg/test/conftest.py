# `from fastcore.test import test_eq` puts the helpers in each module's namespace; they are not tests
def pytest_pycollect_makeitem(collector, name, obj):
    if getattr(obj, '__module__', None) == 'fastcore.test': return []
