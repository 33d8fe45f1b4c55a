# License: BSD 3 clause
"""
The record of a simulation run.

Arrays are indexed by round first. ``states`` has one more row than the
per-round arrays because it includes the final state ``x(T)``.
"""

import numpy as np
import pandas as pd

from resopt.graph.io import graph_from_dict, graph_to_dict

__all__ = ['ABSENT', 'REMOVED_ABOVE', 'REMOVED_BELOW', 'RETAINED', 'Trace']

#: Filter codes stored in ``Trace.codes[t, i, j]``
ABSENT = 0
RETAINED = 1
REMOVED_ABOVE = 2
REMOVED_BELOW = 3


class Trace(object):
    """
    Full record of a run.

    Attributes
    ----------
    graph : resopt.graph.Graph
    regular : tuple of int
        Sorted ids of the regular nodes.
    adversarial : tuple of int
        Sorted ids of the adversarial nodes.
    byzantine : tuple of int
        The adversarial nodes whose messages may differ per out-edge.
    F : int
    dynamics : str
        ``'lf'`` or ``'baseline'``.
    states : numpy.ndarray
        ``(T + 1, n)``; adversarial entries hold their nominal value.
    messages : numpy.ndarray
        ``(T + 1, len(adversarial), n)``; ``messages[t, k, v]`` is what the
        ``k``-th adversary sent to ``v`` at round ``t`` (``nan`` off-edge).
    codes : numpy.ndarray of int8
        ``(T, n, n)``; ``codes[t, i, j]`` tells what regular node ``i`` did
        with the value of in-neighbor ``j``.
    weights : numpy.ndarray
        ``(T, n, n)`` effective weight rows of the regular nodes, self
        included on the diagonal.
    gradients : numpy.ndarray
        ``(T, n)`` subgradients ``d_i(t)``; ``nan`` for adversaries.
    alphas, deltas : numpy.ndarray
        ``(T,)`` step sizes and their bounds ``L * sup_{s >= t} alpha_s``.
    lipschitz : float
        The largest gradient bound of the regular functions.
    eta : float
        The weight scheme's lower bound on the positive weights it can
        emit on this graph, ``1 / (d_max + 1)`` for equal-neighbor weights.
        The smallest weight actually used is ``metadata['min_used_weight']``.
    metadata : dict
        Scenario name, seed, weight scheme, schedule, function and
        behaviour specs.
    """

    def __init__(self, graph, regular, adversarial, byzantine, F, dynamics,
                 states, messages, codes, weights, gradients, alphas, deltas,
                 lipschitz, eta, metadata=None):
        self.graph = graph
        self.regular = tuple(regular)
        self.adversarial = tuple(adversarial)
        self.byzantine = tuple(byzantine)
        self.F = int(F)
        self.dynamics = dynamics
        self.states = states
        self.messages = messages
        self.codes = codes
        self.weights = weights
        self.gradients = gradients
        self.alphas = alphas
        self.deltas = deltas
        self.lipschitz = float(lipschitz)
        self.eta = float(eta)
        self.metadata = dict(metadata or {})

    @property
    def rounds(self):
        return self.states.shape[0] - 1

    @property
    def regular_states(self):
        return self.states[:, list(self.regular)]

    def received(self, t, i):
        """
        The ``(sender, value)`` pairs node ``i`` received at round ``t``.
        """
        adversary_index = {a: k for k, a in enumerate(self.adversarial)}
        pairs = []
        for j in self.graph.in_neighbors(i):
            if j in adversary_index:
                pairs.append((j, float(self.messages[t, adversary_index[j], i])))
            else:
                pairs.append((j, float(self.states[t, j])))
        return pairs

    def filter_sets(self, t, i):
        """
        ``(retained, removed_above, removed_below)`` of regular node ``i``
        at round ``t``.
        """
        row = self.codes[t, i]
        return tuple(frozenset(np.flatnonzero(row == code).tolist())
                     for code in (RETAINED, REMOVED_ABOVE, REMOVED_BELOW))

    def retained_edges(self, t):
        """
        The edges ``(j, i)`` whose values were used at round ``t``.
        """
        receivers, senders = np.nonzero(self.codes[t] == RETAINED)
        return sorted(zip(senders.tolist(), receivers.tolist()))

    def induced_graph(self, t):
        return self.graph.subgraph_edges(self.retained_edges(t))

    def to_frame(self):
        """
        Long-format table with one row per round and node; the final
        state has no gradient or step size.
        """
        T, n = self.rounds, self.graph.n
        roles = np.array(['adversarial' if i in self.adversarial else 'regular'
                          for i in range(n)])
        gradients = np.vstack([self.gradients, np.full((1, n), np.nan)])
        alphas = np.append(self.alphas, np.nan)
        return pd.DataFrame({'round': np.repeat(np.arange(T + 1), n),
                             'node': np.tile(np.arange(n), T + 1),
                             'role': np.tile(roles, T + 1),
                             'state': self.states.ravel(),
                             'gradient': gradients.ravel(),
                             'alpha': np.repeat(alphas, n)})

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False)

    def to_dict(self):
        """
        JSON-ready representation; filter sets are stored as sender lists
        per round and regular node.
        """
        filters = []
        for t in range(self.rounds):
            per_node = {}
            for i in self.regular:
                retained, above, below = self.filter_sets(t, i)
                per_node[str(i)] = {'retained': sorted(retained),
                                    'removed_above': sorted(above),
                                    'removed_below': sorted(below)}
            filters.append(per_node)
        return {'graph': graph_to_dict(self.graph),
                'regular': list(self.regular),
                'adversarial': list(self.adversarial),
                'byzantine': list(self.byzantine),
                'F': self.F,
                'dynamics': self.dynamics,
                'states': self.states.tolist(),
                'messages': _nan_to_none(self.messages),
                'filters': filters,
                'weights': self.weights.tolist(),
                'gradients': _nan_to_none(self.gradients),
                'alphas': self.alphas.tolist(),
                'deltas': self.deltas.tolist(),
                'lipschitz': self.lipschitz,
                'eta': self.eta,
                'metadata': self.metadata}

    @classmethod
    def from_dict(cls, data):
        graph = graph_from_dict(data['graph'])
        n = graph.n
        states = np.array(data['states'], dtype=float).reshape(-1, n)
        T = states.shape[0] - 1
        codes = np.zeros((T, n, n), dtype=np.int8)
        for t, per_node in enumerate(data['filters']):
            for i, record in per_node.items():
                i = int(i)
                codes[t, i, record['retained']] = RETAINED
                codes[t, i, record['removed_above']] = REMOVED_ABOVE
                codes[t, i, record['removed_below']] = REMOVED_BELOW
        adversarial = data['adversarial']
        return cls(graph, data['regular'], adversarial, data['byzantine'],
                   data['F'], data['dynamics'], states,
                   _none_to_nan(data['messages']).reshape(T + 1, len(adversarial), n),
                   codes,
                   np.array(data['weights'], dtype=float).reshape(T, n, n),
                   _none_to_nan(data['gradients']).reshape(T, n),
                   np.array(data['alphas'], dtype=float),
                   np.array(data['deltas'], dtype=float),
                   data['lipschitz'], data['eta'], data.get('metadata'))


def _nan_to_none(array):
    return np.where(np.isnan(array), None, array).tolist()


def _none_to_nan(values):
    return np.array(values, dtype=float)
