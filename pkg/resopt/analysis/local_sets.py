# License: BSD 3 clause
"""
Exact search for maximum r-local sets and the performance bound they imply.

A set ``S`` is r-local when every node outside it has at most ``r``
in-neighbors inside it. Only proper subsets count: the whole node set has
no outside node and would otherwise always win.
"""

import logging
from collections import namedtuple

from resopt.dynamics.equivalence import PreconditionError
from resopt.graph import is_r_local
from resopt.utils.constants import DEFAULT_LOCAL_SET_BUDGET

__all__ = ['LocalSetResult', 'PerformanceBound', 'max_r_local_set',
           'performance_bound']

LocalSetResult = namedtuple('LocalSetResult', ['nodes', 'size', 'certificate',
                                               'exhaustive', 'explored'])
LocalSetResult.__doc__ = """
Best r-local set found, its size, the re-validation of that set with
``is_r_local``, whether the search finished within its budget, and how many
search nodes were explored.
"""

PerformanceBound = namedtuple('PerformanceBound', ['x_error', 'f_gap', 'x_star'])


def _popcount(mask):
    return bin(mask).count('1')


def _propagate(in_masks, r, included, excluded):
    """
    Apply forced inclusions and exclusions until nothing changes.

    An undecided node that already has more than ``r`` in-neighbors in the
    set must join it. An undecided in-neighbor of an excluded node that is
    already at ``r`` must stay out. Returns ``None`` when an excluded node
    is overloaded.
    """
    n = len(in_masks)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            bit = 1 << v
            count = _popcount(in_masks[v] & included)
            if excluded & bit:
                if count > r:
                    return None
                if count == r:
                    blocked = in_masks[v] & ~included & ~excluded
                    if blocked:
                        excluded |= blocked
                        changed = True
            elif not included & bit and count > r:
                included |= bit
                changed = True
    return included, excluded


def max_r_local_set(g, r, budget=DEFAULT_LOCAL_SET_BUDGET, logger=None):
    """
    Find a largest proper r-local subset of ``g`` by branch and bound.

    Vertices are branched on in decreasing order of total degree, trying
    inclusion before exclusion; forced moves are propagated at every
    search node and branches that cannot beat the incumbent are cut.

    Parameters
    ----------
    g : resopt.graph.Graph
        A graph with at least one node.
    r : int
        The locality parameter.
    budget : int, optional
        Largest number of search nodes to explore.
        Defaults to ``DEFAULT_LOCAL_SET_BUDGET``.
    logger : logging.Logger, optional
        Defaults to ``None``, meaning the module logger.

    Returns
    -------
    result : LocalSetResult
        ``exhaustive`` is ``False`` if the budget ran out, in which case
        ``nodes`` is the best set found so far.
    """
    logger = logger if logger else logging.getLogger(__name__)
    if g.n < 1:
        raise ValueError('max_r_local_set needs at least one node')
    if r < 0:
        raise ValueError('r must be non-negative, got {}'.format(r))
    n = g.n
    full = (1 << n) - 1
    in_masks = [g.in_mask(v) for v in range(n)]
    order = sorted(range(n), key=lambda v: (-(g.in_degree(v) + g.out_degree(v)), v))

    best, best_size = 0, 0
    explored = 0
    exhaustive = True
    stack = [(0, 0)]
    while stack:
        if explored >= budget:
            exhaustive = False
            logger.warning('Local set search on %d nodes stopped after %d search '
                           'nodes; the result is not certified maximal', n, explored)
            break
        explored += 1
        state = _propagate(in_masks, r, *stack.pop())
        if state is None:
            continue
        included, excluded = state
        undecided = full & ~included & ~excluded
        if _popcount(included) + _popcount(undecided) <= best_size:
            continue
        if not undecided:
            if included != full:
                best, best_size = included, _popcount(included)
            continue
        v = next(v for v in order if undecided >> v & 1)
        stack.append((included, excluded | 1 << v))
        stack.append((included | 1 << v, excluded))

    nodes = frozenset(v for v in range(n) if best >> v & 1)
    return LocalSetResult(nodes, best_size, is_r_local(g, nodes, r), exhaustive,
                          explored)


def performance_bound(g, r, a, b, budget=DEFAULT_LOCAL_SET_BUDGET):
    """
    Worst-case optimality loss of any algorithm that guarantees consensus
    inside the regular minimizer hull with ``r`` adversaries per
    neighbourhood, for quadratics centred at ``a`` and ``b``.

    Returns
    -------
    bound : PerformanceBound
        ``x_error = |T|/n |b - a|``, ``f_gap = |T|^2/n^2 (b - a)^2`` and
        ``x_star = a + |T| (b - a) / n`` where ``T`` is a maximum r-local
        set.

    Raises
    ------
    PreconditionError
        If the local set search was not exhaustive.
    """
    result = max_r_local_set(g, r, budget=budget)
    if not result.exhaustive:
        raise PreconditionError('The maximum {}-local set search did not finish '
                                'within {} search nodes'.format(r, budget))
    size, n = result.size, g.n
    return PerformanceBound(size * abs(b - a) / n,
                            (size * (b - a)) ** 2 / n ** 2,
                            a + size * (b - a) / n)
