"""
Pytest collection wiring for the nose-style test suite.

Pytest >= 8 no longer understands two nose conventions used by these tests:
module-level ``setup()`` / ``tearDown()`` functions and ``yield``-based
generator tests. This file restores both, without changing any test.
"""

import inspect

import pytest


@pytest.fixture(autouse=True, scope='module')
def _nose_module_fixtures(request):
    """Run nose-style module-level ``setup`` and ``tearDown`` functions."""
    module = request.module
    setup = getattr(module, 'setup', None) or getattr(module, 'setUp', None)
    teardown = (getattr(module, 'teardown', None)
                or getattr(module, 'tearDown', None))
    if callable(setup):
        setup()
    yield
    if callable(teardown):
        teardown()


class _YieldedCheck(pytest.Item):
    """One ``(func, *args)`` tuple yielded by a nose generator test."""

    def __init__(self, *, func, args, **kwargs):
        super().__init__(**kwargs)
        self.func = func
        self.args = args

    def runtest(self):
        self.func(*self.args)

    def reportinfo(self):
        return self.path, None, self.nodeid


class _GeneratorTest(pytest.Collector):
    """Expand a nose generator test into one item per yielded check."""

    def __init__(self, *, obj, **kwargs):
        super().__init__(**kwargs)
        self.obj = obj

    def collect(self):
        for i, (func, *args) in enumerate(self.obj()):
            yield _YieldedCheck.from_parent(self, name='[{}]'.format(i),
                                            func=func, args=tuple(args))


@pytest.hookimpl(tryfirst=True)
def pytest_pycollect_makeitem(collector, name, obj):
    if (isinstance(collector, pytest.Module)
            and inspect.isgeneratorfunction(obj)
            and collector.funcnamefilter(name)):
        return _GeneratorTest.from_parent(collector, name=name, obj=obj)
