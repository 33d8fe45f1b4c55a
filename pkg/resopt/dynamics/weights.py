# License: BSD 3 clause
"""
Weight schemes for the consensus step.

A scheme provides the full weight matrix used by the baseline dynamics and
the weight row used after filtering. For matrix-based schemes the filtered
row keeps the matrix entries of the retained neighbors and gives the rest of
the mass to the node itself.
"""

from functools import lru_cache

import numpy as np

from resopt.utils.constants import VALID_WEIGHT_SCHEMES

__all__ = ['CustomWeights', 'EqualNeighbor', 'Metropolis', 'WeightScheme',
           'metropolis_weights', 'min_positive_weight', 'weight_scheme_from_spec']


def metropolis_weights(g):
    """
    Doubly stochastic Metropolis weights of an undirected graph:
    ``a_ij = 1 / (1 + max(d_i, d_j))`` on edges, the remainder on the
    diagonal.

    Parameters
    ----------
    g : resopt.graph.Graph
        An undirected (symmetric) graph.

    Returns
    -------
    weights : numpy.ndarray
        ``n x n`` matrix whose row ``i`` holds the weights node ``i``
        gives to its neighbors.

    Raises
    ------
    ValueError
        If the graph is not symmetric.
    """
    if not g.is_symmetric():
        raise ValueError('Metropolis weights need an undirected graph')
    weights = np.zeros((g.n, g.n))
    degrees = [g.in_degree(i) for i in range(g.n)]
    for j, i in g.edges:
        weights[i, j] = 1.0 / (1 + max(degrees[i], degrees[j]))
    weights[np.diag_indices(g.n)] = 1.0 - weights.sum(axis=1)
    return weights


@lru_cache(maxsize=32)
def _shared_metropolis_weights(g):
    # shared by every caller on an equal graph
    weights = metropolis_weights(g)
    weights.setflags(write=False)
    return weights


def min_positive_weight(matrix):
    matrix = np.asarray(matrix, dtype=float)
    positive = matrix[matrix > 0]
    return float(positive.min()) if positive.size else 0.0


class WeightScheme(object):

    kind = None

    def matrix(self, g, t=0):
        raise NotImplementedError

    def lf_row(self, g, i, retained, t=0):
        """
        Weights over ``sorted({i} | retained)`` after filtering.

        Returns
        -------
        ids : numpy.ndarray of int
        weights : numpy.ndarray of float
        """
        ids = np.array(sorted(set(retained) | {i}), dtype=int)
        row = self.matrix(g, t)[i]
        weights = row[ids].copy()
        weights[ids == i] = 0.0
        weights[ids == i] = 1.0 - weights.sum()
        return ids, weights

    def eta(self, g):
        return min_positive_weight(self.matrix(g))

    def validate(self, g):
        pass

    def to_spec(self):
        return self.kind


class EqualNeighbor(WeightScheme):
    """
    Uniform weights over the node itself and every neighbor it uses.
    """

    kind = 'equal_neighbor'

    def matrix(self, g, t=0):
        weights = np.zeros((g.n, g.n))
        for i in range(g.n):
            ids = list(g.in_neighbors(i)) + [i]
            weights[i, ids] = 1.0 / len(ids)
        return weights

    def lf_row(self, g, i, retained, t=0):
        ids = np.array(sorted(set(retained) | {i}), dtype=int)
        return ids, np.full(ids.size, 1.0 / ids.size)

    def eta(self, g):
        return 1.0 / (g.max_in_degree + 1)


class Metropolis(WeightScheme):
    """
    Metropolis weights of the graph, the same in every round.

    The scheme holds no state. ``matrix`` returns a read-only array shared
    by every run on an equal graph, so runs in parallel threads are safe.
    """

    kind = 'metropolis'

    def matrix(self, g, t=0):
        return _shared_metropolis_weights(g)

    def validate(self, g):
        if not g.is_symmetric():
            raise ValueError('Metropolis weights are only valid on undirected graphs')


class CustomWeights(WeightScheme):
    """
    Explicit weight matrices, cycled over the rounds.

    Parameters
    ----------
    matrices : array-like
        A single ``n x n`` row-stochastic matrix or a list of them.
    """

    kind = 'custom'

    def __init__(self, matrices):
        matrices = np.asarray(matrices, dtype=float)
        if matrices.ndim == 2:
            matrices = matrices[np.newaxis]
        if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
            raise ValueError('Custom weights must be square matrices')
        if (matrices < 0).any():
            raise ValueError('Custom weights must be non-negative')
        if not np.allclose(matrices.sum(axis=2), 1.0, atol=1e-12):
            raise ValueError('Custom weight matrices must be row stochastic')
        self.matrices = matrices

    def matrix(self, g, t=0):
        return self.matrices[t % len(self.matrices)]

    def eta(self, g):
        return min_positive_weight(self.matrices)

    def validate(self, g):
        if self.matrices.shape[1] != g.n:
            raise ValueError('Custom weights are {0}x{0} but the graph has {1} nodes'
                             .format(self.matrices.shape[1], g.n))
        adjacency = g.adjacency_matrix() + np.eye(g.n, dtype=int)
        if (self.matrices[:, adjacency == 0] > 0).any():
            raise ValueError('Custom weights put mass on pairs that are not edges')

    def to_spec(self):
        return self.matrices.tolist()


def weight_scheme_from_spec(spec):
    """
    ``'equal_neighbor'``, ``'metropolis'`` or an explicit matrix (list).
    """
    if isinstance(spec, WeightScheme):
        return spec
    if isinstance(spec, str):
        if spec not in VALID_WEIGHT_SCHEMES:
            raise ValueError('Unknown weight scheme {!r}; expected one of {} or '
                             'a matrix'.format(spec, sorted(VALID_WEIGHT_SCHEMES)))
        return EqualNeighbor() if spec == 'equal_neighbor' else Metropolis()
    if isinstance(spec, (list, tuple, np.ndarray)):
        return CustomWeights(spec)
    raise TypeError('Weight scheme must be a name or a matrix, not {}'.format(type(spec)))
