# License: BSD 3 clause
"""
The round loop of the simulator.

Every round the adversaries emit first (they see the regular states of the
round), then each regular node forms its consensus point from the values it
received and takes a subgradient step evaluated at that point. Under the
``lf`` dynamics the received values are filtered first.
"""

import copy
import logging
from collections import namedtuple
from functools import partial

import numpy as np

from resopt.graph import Graph
from resopt.objectives import ConvexFunction, function_from_spec
from resopt.utils.constants import DEFAULT_CAP, VALID_DYNAMICS

from .adversaries import AdversaryBehavior, RoundView, behavior_from_spec
from .filtering import lf_filter
from .schedules import Harmonic, StepSchedule, schedule_from_spec, suffix_deltas
from .trace import REMOVED_ABOVE, REMOVED_BELOW, RETAINED, Trace
from .weights import EqualNeighbor, min_positive_weight, weight_scheme_from_spec

__all__ = ['SimConfig', 'StepResult', 'baseline_step', 'lf_step', 'run']

StepResult = namedtuple('StepResult', ['states', 'gradients', 'weights', 'codes'])
StepResult.__doc__ = """
Outcome of one synchronous round: the next state vector, the subgradients
``d_i(t)``, the weight rows and the filter codes of the regular nodes.
"""


class SimConfig(object):
    """
    Everything needed to run a simulation.

    Parameters
    ----------
    graph : resopt.graph.Graph
        The communication graph.
    functions : dict
        Maps every regular node to a ``ConvexFunction`` (or a function
        spec mapping).
    adversaries : dict, optional
        Maps every adversarial node to an ``AdversaryBehavior`` (or a
        behaviour spec mapping).
        Defaults to ``None`` (no adversaries).
    F : int, optional
        The filtering parameter.
        Defaults to ``0``.
    dynamics : str, optional
        ``'lf'`` for filtered dynamics or ``'baseline'``.
        Defaults to ``'lf'``.
    weight_scheme : WeightScheme, str or array-like, optional
        Defaults to ``None``, meaning ``EqualNeighbor``.
    step_schedule : StepSchedule or dict, optional
        Defaults to ``None``, meaning ``Harmonic(1)``.
    rounds : int, optional
        The horizon ``T``.
        Defaults to ``100``.
    seed : int, optional
        Seed of the per-node random generators handed to behaviours.
        Defaults to ``0``.
    initial_states : array-like, optional
        ``x(0)`` for all nodes. Defaults to ``None``, in which case regular
        nodes start at the midpoint of their minimizer set, spoofing
        adversaries at that of their spoofed function and other
        adversaries at 0.
    name : str, optional
        Defaults to ``'scenario'``.
    default_cap : float, optional
        Gradient bound for function specs that do not give one.
        Defaults to ``DEFAULT_CAP``.

    Raises
    ------
    ValueError
        If any of the parameters is invalid.
    """

    def __init__(self, graph, functions, adversaries=None, F=0, dynamics='lf',
                 weight_scheme=None, step_schedule=None, rounds=100, seed=0,
                 initial_states=None, name='scenario', default_cap=DEFAULT_CAP):
        if not isinstance(graph, Graph):
            raise TypeError('graph must be a resopt Graph, not {}'.format(type(graph)))
        self.graph = graph
        self.name = name
        self.F = int(F)
        self.dynamics = dynamics
        self.rounds = int(rounds)
        self.seed = int(seed)

        self.adversaries = {}
        for node, behavior in (adversaries or {}).items():
            self.adversaries[int(node)] = (behavior if isinstance(behavior, AdversaryBehavior)
                                           else behavior_from_spec(behavior,
                                                                   default_cap=default_cap))
        self.functions = {}
        for node, fn in functions.items():
            self.functions[int(node)] = (fn if isinstance(fn, ConvexFunction)
                                         else function_from_spec(fn, default_cap=default_cap))

        self.weight_scheme = weight_scheme_from_spec(weight_scheme if weight_scheme
                                                     is not None else EqualNeighbor())
        if step_schedule is None:
            step_schedule = Harmonic(1.0)
        self.step_schedule = (step_schedule if isinstance(step_schedule, StepSchedule)
                              else schedule_from_spec(step_schedule))
        self.initial_states = (None if initial_states is None
                               else np.array(initial_states, dtype=float))
        self.validate()

    @property
    def regular(self):
        return tuple(i for i in range(self.graph.n) if i not in self.adversaries)

    @property
    def adversarial(self):
        return tuple(sorted(self.adversaries))

    @property
    def roles(self):
        return {i: 'adversarial' if i in self.adversaries else 'regular'
                for i in range(self.graph.n)}

    @property
    def lipschitz(self):
        return max((fn.lipschitz for fn in self.functions.values()), default=0.0)

    @property
    def eta(self):
        """
        The smallest weight the scheme can emit on this graph.
        """
        return self.weight_scheme.eta(self.graph)

    def validate(self):
        n = self.graph.n
        if self.F < 0:
            raise ValueError('F must be non-negative, got {}'.format(self.F))
        if self.dynamics not in VALID_DYNAMICS:
            raise ValueError('Unknown dynamics {!r}; expected one of {}'
                             .format(self.dynamics, sorted(VALID_DYNAMICS)))
        if self.rounds < 0:
            raise ValueError('rounds must be non-negative, got {}'.format(self.rounds))
        outside = [node for node in list(self.adversaries) + list(self.functions)
                   if not 0 <= node < n]
        if outside:
            raise ValueError('Nodes {} are not in the {}-node graph'.format(sorted(outside), n))
        overlap = set(self.adversaries).intersection(self.functions)
        if overlap:
            raise ValueError('Adversarial nodes {} must not carry functions'
                             .format(sorted(overlap)))
        missing = set(self.regular).difference(self.functions)
        if missing:
            raise ValueError('Regular nodes {} have no function'.format(sorted(missing)))
        if self.initial_states is not None and self.initial_states.shape != (n,):
            raise ValueError('Expected {} initial states, got shape {}'
                             .format(n, self.initial_states.shape))
        self.weight_scheme.validate(self.graph)

    def initial_vector(self):
        if self.initial_states is not None:
            return self.initial_states.copy()
        x0 = np.zeros(self.graph.n)
        for node, fn in self.functions.items():
            x0[node] = 0.5 * sum(fn.minimizer_interval)
        for node, behavior in self.adversaries.items():
            fn = getattr(behavior, 'fn', None)
            if fn is not None:
                x0[node] = 0.5 * sum(fn.minimizer_interval)
        return x0

    def to_dict(self):
        return {'name': self.name,
                'F': self.F,
                'dynamics': self.dynamics,
                'rounds': self.rounds,
                'seed': self.seed,
                'weight_scheme': self.weight_scheme.to_spec(),
                'step_schedule': self.step_schedule.to_spec(),
                'functions': {str(i): fn.to_spec()
                              for i, fn in sorted(self.functions.items())},
                'adversaries': {str(i): b.to_spec()
                                for i, b in sorted(self.adversaries.items())}}


def _lf_node(config, t, alpha, i, own, incoming, fn):
    result = lf_filter(own, i, incoming, config.F)
    ids, weights = config.weight_scheme.lf_row(config.graph, i, result.retained, t)
    values = dict(incoming)
    values[i] = own
    consensus = float(np.dot(weights, [values[k] for k in ids]))
    d = fn.subgradient(consensus)
    return consensus - alpha * d, d, ids, weights, result


def _baseline_node(config, t, alpha, i, own, incoming, fn):
    ids = np.array(sorted({i}.union(j for j, _ in incoming)), dtype=int)
    weights = config.weight_scheme.matrix(config.graph, t)[i, ids]
    values = dict(incoming)
    values[i] = own
    consensus = float(np.dot(weights, [values[k] for k in ids]))
    d = fn.subgradient(consensus)
    return consensus - alpha * d, d, ids, weights, None


def _honest_update(config, t, alpha, node, own, incoming, fn):
    step = _lf_node if config.dynamics == 'lf' else _baseline_node
    return step(config, t, alpha, node, own, incoming, fn)[0]


def _broadcast(states, n):
    return np.tile(states, (n, 1))


def lf_step(states, config, t, received=None, alpha=None):
    """
    One round of the filtered dynamics.

    Parameters
    ----------
    states : numpy.ndarray
        ``x(t)`` for all nodes; adversarial entries are their broadcast
        values.
    config : SimConfig
    t : int
    received : numpy.ndarray, optional
        ``received[i, j]`` is the value ``i`` got from ``j``. Needed only
        when a Byzantine adversary sends different values per edge.
        Defaults to ``None`` (everyone broadcasts ``states``).
    alpha : float, optional
        Defaults to ``None``, meaning ``config.step_schedule.alpha(t)``.

    Returns
    -------
    result : StepResult
        The adversarial entries of ``result.states`` are copied from
        ``states``.
    """
    g = config.graph
    n = g.n
    alpha = config.step_schedule.alpha(t) if alpha is None else alpha
    received = _broadcast(states, n) if received is None else received
    next_states = np.array(states, dtype=float)
    gradients = np.full(n, np.nan)
    weights = np.zeros((n, n))
    codes = np.zeros((n, n), dtype=np.int8)
    for i in config.regular:
        incoming = [(j, received[i, j]) for j in g.in_neighbors(i)]
        x_next, d, ids, row, result = _lf_node(config, t, alpha, i, states[i],
                                               incoming, config.functions[i])
        next_states[i] = x_next
        gradients[i] = d
        weights[i, ids] = row
        codes[i, list(result.retained)] = RETAINED
        codes[i, list(result.removed_above)] = REMOVED_ABOVE
        codes[i, list(result.removed_below)] = REMOVED_BELOW
    return StepResult(next_states, gradients, weights, codes)


def baseline_step(states, config, t, received=None, alpha=None):
    """
    One round of the unfiltered dynamics
    ``x_i(t+1) = sum_j a_ij x_j(t) - alpha_t d_i(t)``, with ``d_i(t)``
    evaluated at the consensus point ``sum_j a_ij x_j(t)``.

    Parameters and return value are those of ``lf_step``.
    """
    g = config.graph
    n = g.n
    alpha = config.step_schedule.alpha(t) if alpha is None else alpha
    received = _broadcast(states, n) if received is None else received
    matrix = config.weight_scheme.matrix(g, t)
    regular = list(config.regular)
    consensus = (matrix * np.where(matrix > 0, received, 0.0)).sum(axis=1)
    next_states = np.array(states, dtype=float)
    gradients = np.full(n, np.nan)
    for i in regular:
        gradients[i] = config.functions[i].subgradient(consensus[i])
    next_states[regular] = consensus[regular] - alpha * gradients[regular]
    weights = np.zeros((n, n))
    weights[regular] = matrix[regular]
    adjacency = g.adjacency_matrix()
    codes = np.zeros((n, n), dtype=np.int8)
    codes[regular] = np.where(adjacency[regular] == 1, RETAINED, 0)
    return StepResult(next_states, gradients, weights, codes)


def _emit(t, states, history, config, behaviors, adversary_index, messages):
    """
    Let every adversary emit for round ``t``; fills its entry of
    ``states`` and ``messages[t]`` and returns the received-value matrix.
    """
    g = config.graph
    view = RoundView(t, states[t], history, config.regular, g)
    outgoing = {}
    for node in config.adversarial:
        behavior = behaviors[node]
        out_neighbors = g.out_neighbors(node)
        value, sent = behavior.emit(view, out_neighbors)
        if set(sent) != set(out_neighbors):
            raise ValueError('Adversary {} must send exactly one message per '
                             'out-edge'.format(node))
        if not behavior.byzantine and any(v != value for v in sent.values()):
            raise ValueError('Malicious adversary {} sent different values to '
                             'different neighbors'.format(node))
        outgoing[node] = (value, sent)
    received = _broadcast(states[t], g.n)
    for node, (value, sent) in outgoing.items():
        states[t, node] = value
        received[:, node] = value
        k = adversary_index[node]
        for receiver, message in sent.items():
            messages[t, k, receiver] = message
            received[receiver, node] = message
    return received


def run(config, logger=None):
    """
    Simulate ``config.rounds`` rounds.

    Parameters
    ----------
    config : SimConfig
    logger : logging.Logger, optional
        Defaults to ``None``, meaning the module logger.

    Returns
    -------
    trace : resopt.dynamics.trace.Trace
        Deterministic given the configuration and its seed.
    """
    logger = logger if logger else logging.getLogger(__name__)
    g = config.graph
    n, T = g.n, config.rounds
    regular = list(config.regular)
    adversarial = config.adversarial
    adversary_index = {node: k for k, node in enumerate(adversarial)}

    # behaviours keep per-run state, so each run works on its own copies
    behaviors = {node: copy.deepcopy(config.adversaries[node]) for node in adversarial}
    x0 = config.initial_vector()
    for node in adversarial:
        behaviors[node].reset(node, x0[node], np.random.default_rng([config.seed, node]))

    alphas = config.step_schedule.alphas(T)
    step = lf_step if config.dynamics == 'lf' else baseline_step

    states = np.full((T + 1, n), np.nan)
    states[0, regular] = x0[regular]
    messages = np.full((T + 1, len(adversarial), n), np.nan)
    codes = np.zeros((T, n, n), dtype=np.int8)
    weights = np.zeros((T, n, n))
    gradients = np.full((T, n), np.nan)

    logger.debug('Running %s: %d rounds of %s dynamics on %d nodes '
                 '(%d adversarial, F=%d)', config.name, T, config.dynamics, n,
                 len(adversarial), config.F)
    for t in range(T + 1):
        received = _emit(t, states, states[:t], config, behaviors,
                         adversary_index, messages)
        if t == T:
            break
        alpha = alphas[t]
        result = step(states[t], config, t, received=received, alpha=alpha)
        states[t + 1, regular] = result.states[regular]
        gradients[t] = result.gradients
        weights[t] = result.weights
        codes[t] = result.codes
        update = partial(_honest_update, config, t, alpha)
        for node in adversarial:
            incoming = [(j, received[node, j]) for j in g.in_neighbors(node)]
            behaviors[node].observe(t, incoming, update)

    lipschitz = config.lipschitz
    if regular and T and not np.isfinite(states[:, regular]).all():
        logger.warning('Non-finite regular states in %s', config.name)
    metadata = config.to_dict()
    metadata['min_used_weight'] = min_positive_weight(weights) if T else None
    return Trace(g, regular, adversarial,
                 [node for node in adversarial if behaviors[node].byzantine],
                 config.F, config.dynamics, states, messages, codes, weights,
                 gradients, alphas,
                 suffix_deltas(alphas, lipschitz, config.step_schedule.monotone),
                 lipschitz, config.eta, metadata)
