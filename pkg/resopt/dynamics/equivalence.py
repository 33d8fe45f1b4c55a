# License: BSD 3 clause
"""
Rewriting a filtered round as a round among the regular nodes only.

Whenever the adversary set is F-local and every regular node has at least
``2F + 1`` in-neighbors, each adversarial value that a regular node used lies
between two regular values it received (or its own value). Splitting the
weight of that value over the two brackets yields a stochastic matrix
``A_bar(t)`` over the regular nodes with ``x_R(t+1) = A_bar(t) x_R(t) -
alpha_t d_R(t)``. The products of these matrices then govern the regular
states as in the adversary-free case.
"""

from collections import namedtuple

import numpy as np

from .adversaries import adversary_set_kind

__all__ = ['BracketingError', 'LimitVector', 'PreconditionError',
           'check_equivalence_preconditions', 'equivalent_weight_sequence',
           'equivalent_weights', 'limit_vector_estimate']


class PreconditionError(ValueError):
    """
    Raised when an analysis is asked to run outside the conditions it
    relies on.
    """


class BracketingError(RuntimeError):
    """
    Raised when a used adversarial value cannot be bracketed by regular
    values. Under the preconditions this points to an engine bug.
    """


LimitVector = namedtuple('LimitVector', ['q', 'disagreement'])
LimitVector.__doc__ = """
First row ``q`` of a backward product and the largest difference between
two of its rows in any column.
"""


def check_equivalence_preconditions(graph, adversarial, F):
    """
    Raises
    ------
    PreconditionError
        If the adversary set is not F-local or a regular node has fewer
        than ``2F + 1`` in-neighbors.
    """
    if not adversary_set_kind(graph, adversarial, F)['local']:
        raise PreconditionError('The adversary set {} is not {}-local'
                                .format(sorted(adversarial), F))
    adversarial = set(adversarial)
    short = [i for i in range(graph.n)
             if i not in adversarial and graph.in_degree(i) < 2 * F + 1]
    if short:
        raise PreconditionError('Regular nodes {} have fewer than {} in-neighbors'
                                .format(short, 2 * F + 1))


def _split(row, index, weight, value, upper, lower, values):
    """
    Add ``weight`` to ``row`` as the convex combination of ``upper`` and
    ``lower`` that reproduces ``value``.
    """
    v_upper, v_lower = values[upper], values[lower]
    gamma = 1.0 if v_upper == v_lower else (value - v_lower) / (v_upper - v_lower)
    row[index[upper]] += weight * gamma
    row[index[lower]] += weight * (1.0 - gamma)


def equivalent_weights(trace, t, F=None):
    """
    Build ``A_bar(t)`` for round ``t`` of a trace.

    Parameters
    ----------
    trace : resopt.dynamics.trace.Trace
    t : int
        A round with ``0 <= t < trace.rounds``.
    F : int, optional
        Defaults to ``None``, meaning ``trace.F``.

    Returns
    -------
    matrix : numpy.ndarray
        ``|R| x |R|`` with rows and columns in ``trace.regular`` order.

    Raises
    ------
    PreconditionError
        If the preconditions of the construction do not hold.
    BracketingError
        If some used adversarial value has no regular brackets.
    """
    F = trace.F if F is None else F
    g = trace.graph
    check_equivalence_preconditions(g, trace.adversarial, F)
    if not 0 <= t < trace.rounds:
        raise IndexError('Round {} is outside [0, {})'.format(t, trace.rounds))

    index = {node: k for k, node in enumerate(trace.regular)}
    adversarial = set(trace.adversarial)
    matrix = np.zeros((len(index), len(index)))
    for i in trace.regular:
        row = matrix[index[i]]
        weights = trace.weights[t, i]
        values = dict(trace.received(t, i))
        values[i] = float(trace.states[t, i])
        neighbors = g.in_neighbors(i)
        retained, above, below = trace.filter_sets(t, i)

        # pad the removed sets to F members each
        pool = [j for j in neighbors if j not in above and j not in below]
        extra_above = sorted(pool, key=lambda j: (-values[j], j))[:F - len(above)]
        rest = [j for j in pool if j not in extra_above]
        extra_below = sorted(rest, key=lambda j: (values[j], j))[:F - len(below)]
        upper_set = set(above).union(extra_above)
        lower_set = set(below).union(extra_below)
        middle = set(neighbors) - upper_set - lower_set

        row[index[i]] += weights[i]
        for j in retained:
            if j not in adversarial:
                row[index[j]] += weights[j]

        used = sorted(j for j in retained if j in adversarial)
        candidates = [j for j in neighbors if j not in adversarial] + [i]
        for m in (m for m in used if m not in middle):
            value = values[m]
            uppers = [c for c in candidates if values[c] >= value]
            lowers = [c for c in candidates if values[c] <= value]
            if not uppers or not lowers:
                raise BracketingError('Round {}: value {} of adversary {} at node {} '
                                      'has no regular bracket'.format(t, value, m, i))
            upper = min(uppers, key=lambda c: (values[c], c))
            lower = min(lowers, key=lambda c: (-values[c], c))
            _split(row, index, weights[m], value, upper, lower, values)

        inner = [m for m in used if m in middle]
        upper_pool = sorted(j for j in upper_set if j not in adversarial)
        lower_pool = sorted(j for j in lower_set if j not in adversarial)
        if len(inner) > min(len(upper_pool), len(lower_pool)):
            raise BracketingError('Round {}: node {} cannot pair adversaries {} with '
                                  'removed regular values'.format(t, i, inner))
        for m, upper, lower in zip(inner, upper_pool, lower_pool):
            value = values[m]
            if not values[lower] <= value <= values[upper]:
                raise BracketingError('Round {}: value {} of adversary {} at node {} '
                                      'is not between {} and {}'
                                      .format(t, value, m, i, values[lower],
                                              values[upper]))
            _split(row, index, weights[m], value, upper, lower, values)
    return matrix


def equivalent_weight_sequence(trace, F=None):
    """
    ``[A_bar(0), ..., A_bar(T - 1)]`` for a whole trace.
    """
    return [equivalent_weights(trace, t, F=F) for t in range(trace.rounds)]


def limit_vector_estimate(matrices, s=0, horizon=None):
    """
    Estimate the stochastic vector ``q_s`` with
    ``A(T) ... A(s) ~ 1 q_s'`` for large ``T``.

    Parameters
    ----------
    matrices : list of numpy.ndarray
        ``A(0), A(1), ...``; row stochastic and of equal shape.
    s : int, optional
        First factor of the product.
        Defaults to ``0``.
    horizon : int, optional
        Last factor ``T`` of the product.
        Defaults to ``None``, meaning the last matrix.

    Returns
    -------
    estimate : LimitVector
        ``q`` is the first row of the product; ``disagreement`` measures
        how far the rows are from agreeing and is not enforced.
    """
    horizon = len(matrices) - 1 if horizon is None else horizon
    if not 0 <= s <= horizon < len(matrices):
        raise ValueError('Need 0 <= s <= horizon < {}, got s={} and horizon={}'
                         .format(len(matrices), s, horizon))
    product = np.eye(np.asarray(matrices[s]).shape[0])
    for t in range(s, horizon + 1):
        product = np.asarray(matrices[t]).dot(product)
    disagreement = float((product.max(axis=0) - product.min(axis=0)).max())
    return LimitVector(product[0].copy(), disagreement)
