# License: BSD 3 clause
"""
Step-size schedules ``alpha_t``.
"""

import warnings

import numpy as np

from resopt.utils.constants import VALID_SCHEDULES

__all__ = ['Constant', 'Harmonic', 'Power', 'Sequence', 'StepSchedule',
           'schedule_from_spec', 'suffix_deltas']


class StepSchedule(object):
    """
    Base class for step-size schedules. ``monotone`` declares that the
    schedule never increases, which lets ``suffix_deltas`` skip the
    running maximum.
    """

    kind = None
    monotone = True

    def alpha(self, t):
        raise NotImplementedError

    def alphas(self, rounds):
        """
        Array of ``alpha_t`` for ``t = 0 .. rounds - 1``.
        """
        return np.array([self.alpha(t) for t in range(rounds)], dtype=float)

    def params(self):
        raise NotImplementedError

    def to_spec(self):
        spec = {'kind': self.kind}
        spec.update(self.params())
        return spec

    def __repr__(self):
        return '{}({})'.format(type(self).__name__,
                               ', '.join('{}={!r}'.format(k, v)
                                         for k, v in self.params().items()))


class Harmonic(StepSchedule):
    """
    ``alpha_t = c / (t + 1)``: the sum diverges and the sum of squares
    converges.
    """

    kind = 'harmonic'

    def __init__(self, c=1.0):
        if not c > 0:
            raise ValueError('Harmonic schedule needs c > 0, got {}'.format(c))
        self.c = float(c)

    def alpha(self, t):
        return self.c / (t + 1)

    def alphas(self, rounds):
        return self.c / np.arange(1, rounds + 1, dtype=float)

    def params(self):
        return {'c': self.c}


class Power(StepSchedule):
    """
    ``alpha_t = c / (t + 1)^p`` with ``0.5 < p <= 1``; decays more slowly
    than ``Harmonic`` while keeping the same summability properties.
    """

    kind = 'power'

    def __init__(self, c=1.0, p=0.6):
        if not c > 0:
            raise ValueError('Power schedule needs c > 0, got {}'.format(c))
        if not 0.5 < p <= 1:
            raise ValueError('Power schedule needs 0.5 < p <= 1, got {}'.format(p))
        self.c = float(c)
        self.p = float(p)

    def alpha(self, t):
        return self.c / (t + 1) ** self.p

    def alphas(self, rounds):
        return self.c / np.arange(1, rounds + 1, dtype=float) ** self.p

    def params(self):
        return {'c': self.c, 'p': self.p}


class Constant(StepSchedule):

    kind = 'constant'

    def __init__(self, c=0.0):
        if c < 0:
            raise ValueError('Constant schedule needs c >= 0, got {}'.format(c))
        if c > 0:
            warnings.warn('A constant step size of {} does not vanish; the '
                          'states only reach a neighborhood of the optimum'.format(c))
        self.c = float(c)

    def alpha(self, t):
        return self.c

    def alphas(self, rounds):
        return np.full(rounds, self.c)

    def params(self):
        return {'c': self.c}


class Sequence(StepSchedule):
    """
    An explicit list of step sizes; the last value repeats after the
    list runs out.
    """

    kind = 'sequence'

    def __init__(self, values):
        values = [float(v) for v in values]
        if not values or any(v < 0 for v in values):
            raise ValueError('Sequence schedule needs a nonempty list of '
                             'non-negative values')
        self.values = values
        self.monotone = all(a >= b for a, b in zip(values, values[1:]))

    def alpha(self, t):
        return self.values[min(t, len(self.values) - 1)]

    def params(self):
        return {'values': list(self.values)}


def suffix_deltas(alphas, lipschitz, monotone=False):
    """
    ``delta_t = L * sup_{s >= t} alpha_s`` over the simulated horizon.
    """
    alphas = np.asarray(alphas, dtype=float)
    if monotone or alphas.size == 0:
        return lipschitz * alphas
    return lipschitz * np.maximum.accumulate(alphas[::-1])[::-1]


def schedule_from_spec(spec):
    """
    Build a schedule from ``{"kind": "harmonic", "c": 1}`` and friends.

    Raises
    ------
    ValueError
        If the kind is unknown or a parameter is invalid.
    """
    if not isinstance(spec, dict):
        raise TypeError('Step schedule must be a mapping, not {}'.format(type(spec)))
    params = dict(spec)
    kind = params.pop('kind', None)
    if kind not in VALID_SCHEDULES:
        raise ValueError('Unknown step schedule {!r}; expected one of {}'
                         .format(kind, sorted(VALID_SCHEDULES)))
    cls = {'harmonic': Harmonic, 'power': Power,
           'constant': Constant, 'sequence': Sequence}[kind]
    try:
        return cls(**params)
    except TypeError as e:
        raise ValueError('Invalid parameters for schedule {!r}: {}'.format(kind, e))
