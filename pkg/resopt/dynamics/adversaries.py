# License: BSD 3 clause
"""
Adversary behaviours.

Each round the engine calls ``emit`` once per adversarial node, after the
regular states of that round are known. ``emit`` returns the node's nominal
value (recorded in the trace) and one message per out-neighbor. Malicious
behaviours must send the nominal value on every out-edge; only Byzantine
behaviours may send different values. Behaviours that keep state across
rounds are reset by the engine at the start of every run.
"""

import numpy as np

from resopt.objectives import function_from_spec
from resopt.utils.constants import DEFAULT_CAP, VALID_BEHAVIORS

__all__ = ['AdversaryBehavior', 'ByzantineSplit', 'FixedValue', 'Oscillating',
           'RandomValue', 'RoundView', 'Scripted', 'SpoofedFunction',
           'adversary_set_kind', 'behavior_from_spec']


class RoundView(object):
    """
    Read-only view of a round handed to the behaviours.

    Parameters
    ----------
    t : int
        The round.
    states : numpy.ndarray
        ``states[j]`` for every regular node ``j`` at round ``t``; entries
        of adversarial nodes are ``nan`` until they have emitted.
    history : numpy.ndarray
        States of all previous rounds, shape ``(t, n)``.
    regular : tuple of int
        Sorted ids of the regular nodes.
    graph : resopt.graph.Graph
    """

    __slots__ = ('t', 'states', 'history', 'regular', 'graph')

    def __init__(self, t, states, history, regular, graph):
        self.t = t
        self.states = states
        self.history = history
        self.regular = regular
        self.graph = graph

    @property
    def regular_states(self):
        return self.states[list(self.regular)]


class AdversaryBehavior(object):
    """
    Base class of adversary behaviours.
    """

    kind = None
    byzantine = False

    def reset(self, node, initial_value, rng):
        """
        Prepare for a new run. ``rng`` is a ``numpy.random.Generator``
        derived from the run seed and the node id.
        """
        self.node = node

    def nominal(self, view):
        raise NotImplementedError

    def emit(self, view, out_neighbors):
        value = float(self.nominal(view))
        return value, {v: value for v in out_neighbors}

    def observe(self, t, incoming, update):
        """
        Called after every round with the ``(sender, value)`` pairs the node
        received and the engine's honest update ``update(node, own, incoming,
        fn)``. Stateless behaviours ignore it.
        """

    def params(self):
        return {}

    def to_spec(self):
        spec = {'behavior': self.kind}
        spec.update(self.params())
        return spec

    def __repr__(self):
        return '{}({})'.format(type(self).__name__,
                               ', '.join('{}={!r}'.format(k, v)
                                         for k, v in self.params().items()))


class FixedValue(AdversaryBehavior):
    """
    Broadcast the same constant every round.
    """

    kind = 'fixed'

    def __init__(self, value):
        self.value = float(value)

    def nominal(self, view):
        return self.value

    def params(self):
        return {'value': self.value}


class Scripted(AdversaryBehavior):
    """
    Broadcast ``values[t]``; after the script ends either repeat it
    (``cycle=True``) or hold its last value.
    """

    kind = 'scripted'

    def __init__(self, values, cycle=False):
        values = [float(v) for v in values]
        if not values:
            raise ValueError('Scripted behaviour needs at least one value')
        self.values = values
        self.cycle = bool(cycle)

    def nominal(self, view):
        if self.cycle:
            return self.values[view.t % len(self.values)]
        return self.values[min(view.t, len(self.values) - 1)]

    def params(self):
        return {'values': list(self.values), 'cycle': self.cycle}


class RandomValue(AdversaryBehavior):
    """
    Broadcast a fresh uniform draw from ``[low, high]`` every round.

    Parameters
    ----------
    low, high : float
    seed : int, optional
        Seed of the draws. If ``None`` the engine's per-node generator is
        used, which is derived from the run seed.
        Defaults to ``None``.
    """

    kind = 'random'

    def __init__(self, low, high, seed=None):
        if low > high:
            raise ValueError('RandomValue needs low <= high, got [{}, {}]'.format(low, high))
        self.low = float(low)
        self.high = float(high)
        self.seed = seed

    def reset(self, node, initial_value, rng):
        super(RandomValue, self).reset(node, initial_value, rng)
        self._rng = rng if self.seed is None else np.random.default_rng(self.seed)

    def nominal(self, view):
        return self._rng.uniform(self.low, self.high)

    def params(self):
        return {'low': self.low, 'high': self.high, 'seed': self.seed}


class Oscillating(AdversaryBehavior):
    """
    Drive the regular nodes back and forth without ever being filtered out.

    While hiding, the node repeats the smallest regular state so it looks
    like the nodes it shadows. Once the mean regular state has dropped to
    ``low`` it starts pushing: it sends the largest regular state plus
    ``offset`` until the mean has risen to ``high``, then hides again.
    """

    kind = 'oscillating'

    def __init__(self, low, high, offset=1.0):
        if low >= high:
            raise ValueError('Oscillating needs low < high, got {} and {}'.format(low, high))
        self.low = float(low)
        self.high = float(high)
        self.offset = float(offset)

    def reset(self, node, initial_value, rng):
        super(Oscillating, self).reset(node, initial_value, rng)
        self.pushing = False

    def nominal(self, view):
        regular = view.regular_states
        mean = regular.mean()
        if not self.pushing and mean <= self.low:
            self.pushing = True
        elif self.pushing and mean >= self.high:
            self.pushing = False
        if self.pushing:
            return regular.max() + self.offset
        return regular.min()

    def params(self):
        return {'low': self.low, 'high': self.high, 'offset': self.offset}


class SpoofedFunction(AdversaryBehavior):
    """
    Behave exactly like a regular node whose objective is ``fn``.

    Parameters
    ----------
    fn : resopt.objectives.ConvexFunction
        The spoofed objective.
    """

    kind = 'spoofed'

    def __init__(self, fn):
        self.fn = fn

    def reset(self, node, initial_value, rng):
        super(SpoofedFunction, self).reset(node, initial_value, rng)
        self.state = float(initial_value)

    def nominal(self, view):
        return self.state

    def observe(self, t, incoming, update):
        self.state = update(self.node, self.state, incoming, self.fn)

    def params(self):
        return {'fn': self.fn.to_spec()}


class ByzantineSplit(AdversaryBehavior):
    """
    Send ``base + offsets[v]`` to each out-neighbor ``v`` (``default_offset``
    for receivers without an entry).
    """

    kind = 'byzantine_split'
    byzantine = True

    def __init__(self, base, offsets=None, default_offset=0.0):
        self.base = float(base)
        self.offsets = {int(v): float(o) for v, o in (offsets or {}).items()}
        self.default_offset = float(default_offset)

    def nominal(self, view):
        return self.base

    def emit(self, view, out_neighbors):
        return self.base, {v: self.base + self.offsets.get(v, self.default_offset)
                           for v in out_neighbors}

    def params(self):
        return {'base': self.base, 'offsets': dict(self.offsets),
                'default_offset': self.default_offset}


def behavior_from_spec(spec, default_cap=DEFAULT_CAP):
    """
    Build a behaviour from a mapping such as ``{"behavior": "fixed",
    "value": 7}``. Spoofed behaviours carry a function spec under ``fn``.

    Raises
    ------
    ValueError
        If the behaviour is unknown or its parameters are invalid.
    TypeError
        If ``spec`` is not a mapping.
    """
    if isinstance(spec, AdversaryBehavior):
        return spec
    if not isinstance(spec, dict):
        raise TypeError('Behaviour spec must be a mapping, not {}'.format(type(spec)))
    params = dict(spec)
    kind = params.pop('behavior', None)
    if kind not in VALID_BEHAVIORS:
        raise ValueError('Unknown adversary behaviour {!r}; expected one of {}'
                         .format(kind, sorted(VALID_BEHAVIORS)))
    if kind == 'spoofed':
        if 'fn' not in params:
            raise ValueError('Spoofed behaviour needs a function spec under "fn"')
        params['fn'] = function_from_spec(params['fn'], default_cap=default_cap)
    cls = {'fixed': FixedValue,
           'scripted': Scripted,
           'random': RandomValue,
           'oscillating': Oscillating,
           'spoofed': SpoofedFunction,
           'byzantine_split': ByzantineSplit}[kind]
    try:
        return cls(**params)
    except TypeError as e:
        raise ValueError('Invalid parameters for behaviour {!r}: {}'.format(kind, e))


def adversary_set_kind(g, adversaries, F):
    """
    Classify an adversary set.

    Parameters
    ----------
    g : resopt.graph.Graph
    adversaries : iterable of int
    F : int

    Returns
    -------
    kind : dict
        ``{'total': bool, 'local': bool}``: whether there are at most ``F``
        adversaries overall, and whether every regular node has at most
        ``F`` adversarial in-neighbors.
    """
    adversaries = frozenset(adversaries)
    for node in adversaries:
        g._check_node(node)
    local = all(len(adversaries.intersection(g.in_neighbors(i))) <= F
                for i in range(g.n) if i not in adversaries)
    return {'total': len(adversaries) <= F, 'local': local}
