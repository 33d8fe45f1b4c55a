# License: BSD 3 clause
"""
Scalar convex local objectives with bounded subgradients.

Every function clamps its derivative to ``[-cap, cap]`` and is defined as the
integral of the clamped derivative, so values and subgradients always agree
and the function stays convex. At kinks the canonical subgradient is 0 when
admissible and otherwise the endpoint of smaller magnitude.
"""

from collections import namedtuple

import numpy as np
from scipy.optimize import bisect

from resopt.utils.constants import DEFAULT_CAP, VALID_FUNCTION_KINDS

__all__ = ['Abs', 'Affine', 'ConvexFunction', 'FlatBand', 'MinimizerBracketError',
           'MinimizerHull', 'Quadratic', 'average_minimizer', 'evaluate',
           'function_from_spec', 'minimizer_hull', 'spoof_function', 'subgradient']

MINIMIZER_XTOL = 1e-10
_MAX_BRACKET = 2.0 ** 60


class MinimizerBracketError(ValueError):
    """
    Raised when the summed subgradient never changes sign, i.e. no finite
    minimizer can be bracketed.
    """


MinimizerHull = namedtuple('MinimizerHull', ['lo', 'hi'])
MinimizerHull.__doc__ = "Convex hull ``[lo, hi]`` of a set of minimizers."


class ConvexFunction(object):
    """
    Base class for the scalar convex objectives.

    Subclasses implement ``_raw_interval`` (the subdifferential before
    clamping) and ``eval``.

    Parameters
    ----------
    cap : float, optional
        Gradient bound ``L > 0``.
        Defaults to ``DEFAULT_CAP``.
    """

    kind = None

    def __init__(self, cap=DEFAULT_CAP):
        cap = float(cap)
        if not cap > 0:
            raise ValueError('Gradient cap must be positive, got {}'.format(cap))
        self.cap = cap

    def _raw_interval(self, x):
        raise NotImplementedError

    def eval(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.eval(x)

    def subgradient_interval(self, x):
        """
        The subdifferential at ``x`` clamped to ``[-cap, cap]``.
        """
        lo, hi = self._raw_interval(x)
        return (min(max(lo, -self.cap), self.cap),
                min(max(hi, -self.cap), self.cap))

    def subgradient(self, x):
        lo, hi = self.subgradient_interval(x)
        if lo <= 0.0 <= hi:
            return 0.0
        return lo if lo > 0 else hi

    @property
    def lipschitz(self):
        return self.cap

    @property
    def minimizer_interval(self):
        return _zero_set([self], [1.0])

    def params(self):
        raise NotImplementedError

    def to_spec(self):
        return {'fn': self.kind, 'params': self.params(), 'cap': self.cap}

    def __repr__(self):
        params = ', '.join('{}={!r}'.format(k, v) for k, v in self.params().items())
        return '{}({}, cap={!r})'.format(type(self).__name__, params, self.cap)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_spec() == other.to_spec()

    def __hash__(self):
        return hash(repr(self))


class Quadratic(ConvexFunction):
    """
    ``(x - center)^2`` with its derivative capped at ``cap``.
    """

    kind = 'quadratic'

    def __init__(self, center=0.0, cap=DEFAULT_CAP):
        super(Quadratic, self).__init__(cap=cap)
        self.center = float(center)

    def _raw_interval(self, x):
        g = 2.0 * (x - self.center)
        return g, g

    def eval(self, x):
        distance = abs(x - self.center)
        knee = self.cap / 2.0
        if distance <= knee:
            return distance * distance
        return self.cap * distance - knee * knee

    @property
    def minimizer_interval(self):
        return self.center, self.center

    def params(self):
        return {'center': self.center}


class Abs(ConvexFunction):
    """
    ``slope * |x - center|``; a slope above the cap is reduced to the cap.
    """

    kind = 'abs'

    def __init__(self, center=0.0, slope=1.0, cap=DEFAULT_CAP):
        super(Abs, self).__init__(cap=cap)
        if not slope > 0:
            raise ValueError('Abs slope must be positive, got {}'.format(slope))
        self.center = float(center)
        self.slope = float(slope)

    @property
    def _effective_slope(self):
        return min(self.slope, self.cap)

    def _raw_interval(self, x):
        s = self._effective_slope
        if x > self.center:
            return s, s
        if x < self.center:
            return -s, -s
        return -s, s

    def eval(self, x):
        return self._effective_slope * abs(x - self.center)

    @property
    def lipschitz(self):
        return self._effective_slope

    @property
    def minimizer_interval(self):
        return self.center, self.center

    def params(self):
        return {'center': self.center, 'slope': self.slope}


class FlatBand(ConvexFunction):
    """
    Zero on ``[lo, hi]``; outside, the derivative grows linearly with the
    distance to the band (rate ``growth``) until it reaches the cap.
    """

    kind = 'flatband'

    def __init__(self, lo=0.0, hi=1.0, growth=1.0, cap=DEFAULT_CAP):
        super(FlatBand, self).__init__(cap=cap)
        if lo > hi:
            raise ValueError('FlatBand needs lo <= hi, got [{}, {}]'.format(lo, hi))
        if not growth > 0:
            raise ValueError('FlatBand growth must be positive, got {}'.format(growth))
        self.lo = float(lo)
        self.hi = float(hi)
        self.growth = float(growth)

    def _distance(self, x):
        if x > self.hi:
            return x - self.hi
        if x < self.lo:
            return self.lo - x
        return 0.0

    def _raw_interval(self, x):
        if x > self.hi:
            g = self.growth * (x - self.hi)
        elif x < self.lo:
            g = self.growth * (x - self.lo)
        else:
            g = 0.0
        return g, g

    def eval(self, x):
        distance = self._distance(x)
        knee = self.cap / self.growth
        if distance <= knee:
            return 0.5 * self.growth * distance * distance
        return 0.5 * self.cap * knee + self.cap * (distance - knee)

    @property
    def minimizer_interval(self):
        return self.lo, self.hi

    def params(self):
        return {'lo': self.lo, 'hi': self.hi, 'growth': self.growth}


class Affine(ConvexFunction):
    """
    Nonnegative combination ``sum_k w_k f_k``. Its gradient bound is the
    weighted sum of the children's bounds, so no extra clamping applies.
    """

    kind = 'affine'

    def __init__(self, weights, children):
        weights = [float(w) for w in weights]
        children = list(children)
        if not children or len(weights) != len(children):
            raise ValueError('Affine needs one weight per child and at least one child')
        if any(w < 0 for w in weights) or not any(w > 0 for w in weights):
            raise ValueError('Affine weights must be nonnegative and not all zero')
        self.weights = weights
        self.children = children
        super(Affine, self).__init__(cap=sum(w * f.lipschitz
                                             for w, f in zip(weights, children)))

    def _raw_interval(self, x):
        lo = hi = 0.0
        for w, f in zip(self.weights, self.children):
            f_lo, f_hi = f.subgradient_interval(x)
            lo += w * f_lo
            hi += w * f_hi
        return lo, hi

    def eval(self, x):
        return sum(w * f.eval(x) for w, f in zip(self.weights, self.children))

    @property
    def minimizer_interval(self):
        return _zero_set(self.children, self.weights)

    def params(self):
        return {'weights': list(self.weights),
                'children': [f.to_spec() for f in self.children]}

    def to_spec(self):
        return {'fn': self.kind, 'params': self.params()}


def evaluate(f, x):
    return f.eval(x)


def subgradient(f, x):
    """
    Canonical subgradient of ``f`` at ``x``: 0 if admissible, otherwise
    the endpoint of the subdifferential with smaller magnitude; always
    within ``[-L, L]``.
    """
    return f.subgradient(x)


def _zero_set(fs, weights):
    """
    Return ``(m_lo, m_hi)``, the interval where ``0`` belongs to the
    subdifferential of ``sum_i weights[i] * fs[i]``.
    """
    def upper_sum(x):
        return sum(q * f.subgradient_interval(x)[1] for q, f in zip(weights, fs))

    def lower_sum(x):
        return sum(q * f.subgradient_interval(x)[0] for q, f in zip(weights, fs))

    radius = 1.0
    while upper_sum(-radius) >= 0 or lower_sum(radius) <= 0:
        radius *= 2.0
        if radius > _MAX_BRACKET:
            raise MinimizerBracketError('Could not bracket a minimizer: the '
                                        'summed subgradient never changes sign')

    m_lo = bisect(lambda x: 1.0 if upper_sum(x) >= 0 else -1.0,
                  -radius, radius, xtol=MINIMIZER_XTOL, maxiter=400)
    m_hi = bisect(lambda x: 1.0 if lower_sum(x) > 0 else -1.0,
                  -radius, radius, xtol=MINIMIZER_XTOL, maxiter=400)
    return min(m_lo, m_hi), max(m_lo, m_hi)


def minimizer_hull(fs):
    """
    Convex hull of the minimizers of the given functions.

    Raises
    ------
    ValueError
        If ``fs`` is empty.
    """
    fs = list(fs)
    if not fs:
        raise ValueError('minimizer_hull needs at least one function')
    intervals = [f.minimizer_interval for f in fs]
    return MinimizerHull(min(lo for lo, _ in intervals),
                         max(hi for _, hi in intervals))


def average_minimizer(fs, weights=None):
    """
    A minimizer of ``sum_i q_i f_i``, found by bisection on the sign of the
    summed subgradient over a bracket grown by doubling from 0.

    Parameters
    ----------
    fs : list of ConvexFunction
    weights : array-like, optional
        Stochastic vector ``q``.
        Defaults to ``None`` (uniform).

    Returns
    -------
    x : float
        The midpoint of the minimizer set, accurate to ``1e-10``.

    Raises
    ------
    ValueError
        If the weights are negative or do not sum to 1.
    MinimizerBracketError
        If no finite minimizer exists.
    """
    fs = list(fs)
    if not fs:
        raise ValueError('average_minimizer needs at least one function')
    if weights is None:
        weights = np.full(len(fs), 1.0 / len(fs))
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(fs),):
        raise ValueError('Expected {} weights, got shape {}'.format(len(fs),
                                                                    weights.shape))
    if (weights < 0).any() or abs(weights.sum() - 1.0) > 1e-9:
        raise ValueError('Weights must be a stochastic vector')
    m_lo, m_hi = _zero_set(fs, weights)
    return 0.5 * (m_lo + m_hi)


def spoof_function(fs_others, target, cap=DEFAULT_CAP):
    """
    Construct a capped quadratic that, added to ``fs_others``, makes
    ``target`` a stationary point of the sum.

    Parameters
    ----------
    fs_others : list of ConvexFunction
    target : float
    cap : float, optional
        Gradient bound of the returned function.
        Defaults to ``DEFAULT_CAP``.

    Returns
    -------
    f_bar : Quadratic
        Its subgradient at ``target`` equals minus the summed canonical
        subgradients of ``fs_others`` at ``target``.

    Raises
    ------
    ValueError
        If the required slope cannot be realised below the cap.
    """
    required = sum(f.subgradient(target) for f in fs_others)
    if abs(required) >= cap:
        raise ValueError('Cap {} is too small for the required slope {}'
                         .format(cap, -required))
    return Quadratic(center=target + required / 2.0, cap=cap)


def function_from_spec(spec, default_cap=DEFAULT_CAP):
    """
    Build a function from a scenario spec such as
    ``{"fn": "quadratic", "params": {"center": 9}, "cap": 100}``.

    Raises
    ------
    ValueError
        If the kind is unknown or the parameters are invalid.
    TypeError
        If the spec is not a mapping.
    """
    if not isinstance(spec, dict):
        raise TypeError('Function spec must be a mapping, not {}'.format(type(spec)))
    kind = spec.get('fn')
    if kind not in VALID_FUNCTION_KINDS:
        raise ValueError('Unknown function kind {!r}; expected one of {}'
                         .format(kind, sorted(VALID_FUNCTION_KINDS)))
    unknown = set(spec).difference(['fn', 'params', 'cap'])
    if unknown:
        raise ValueError('Function spec has unknown fields {}'.format(sorted(unknown)))
    params = dict(spec.get('params') or {})
    cap = spec.get('cap', default_cap)
    try:
        if kind == 'quadratic':
            return Quadratic(cap=cap, **params)
        elif kind == 'abs':
            return Abs(cap=cap, **params)
        elif kind == 'flatband':
            return FlatBand(cap=cap, **params)
        children = [function_from_spec(child, default_cap=default_cap)
                    for child in params.pop('children', [])]
        return Affine(params.pop('weights', []), children, **params)
    except TypeError as e:
        raise ValueError('Invalid parameters for {!r}: {}'.format(kind, e))
