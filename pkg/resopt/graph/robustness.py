# License: BSD 3 clause
"""
Exact checkers for r-robustness and (r,s)-robustness.

For every subset ``S`` (as a bit mask) the checkers tabulate how many of its
nodes have at least ``r`` in-neighbors outside ``S`` and whether some node
falls short. A sum-over-subsets minimisation then finds, for every mask, the
cheapest "not fully reachable" subset it contains, so a violating disjoint
pair exists iff some ``S1`` pairs with a subset of its complement. This
answers exactly what enumerating all disjoint pairs answers, in
``O(n 2^n)`` time and memory.
"""

from collections import namedtuple

import numpy as np

from resopt.utils import constants

__all__ = ['RobustnessReport', 'SizeGuardError', 'is_r_robust',
           'is_rs_robust', 'max_robustness', 'robustness_report']


class SizeGuardError(ValueError):
    """
    Raised when an exponential check is requested on a graph larger
    than the configured size guard.
    """


RobustnessReport = namedtuple('RobustnessReport', ['r_max', 'rs_table'])
RobustnessReport.__doc__ = """
Summary of the exact robustness analysis of a graph.

``r_max`` is the largest r for which the graph is r-robust and ``rs_table``
maps each queried ``(r, s)`` to ``(holds, witness)`` where ``witness`` is a
violating pair of frozensets or ``None``.
"""


def check_size_guard(g, force=False, guard=None):
    """
    Refuse exponential work on graphs with more than ``guard`` nodes.

    Parameters
    ----------
    g : resopt.graph.Graph
    force : bool, optional
        Skip the check.
        Defaults to ``False``.
    guard : int, optional
        Largest accepted node count.
        Defaults to ``None``, meaning ``constants.SIZE_GUARD``.

    Raises
    ------
    SizeGuardError
        If the graph is too large and ``force`` is not set.
    """
    guard = constants.SIZE_GUARD if guard is None else guard
    if g.n > guard and not force:
        raise SizeGuardError('Exact check on {} nodes exceeds the size guard '
                             'of {}; set RESOPT_SIZE_GUARD or pass force=True'
                             .format(g.n, guard))


def _popcount(values, nbits):
    counts = np.zeros(values.shape, dtype=np.int64)
    for bit in range(nbits):
        counts += (values >> bit) & 1
    return counts


def _subset_tables(g, r):
    """
    Tabulate, for every subset mask, the number of nodes with at least
    ``r`` outside in-neighbors and whether some node has fewer.
    """
    n = g.n
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    complements = full ^ masks
    good_count = np.zeros(1 << n, dtype=np.int64)
    has_short_node = np.zeros(1 << n, dtype=bool)
    for i in range(n):
        member = ((masks >> i) & 1).astype(bool)
        outside = _popcount(np.int64(g.in_mask(i)) & complements, n)
        good = member & (outside >= r)
        good_count += good
        has_short_node |= member & ~good
    return masks, good_count, has_short_node


def _mask_to_set(mask):
    return frozenset(i for i in range(int(mask).bit_length()) if (mask >> i) & 1)


def is_rs_robust(g, r, s, force=False):
    """
    Exact (r,s)-robustness check.

    A graph is (r,s)-robust if for every pair of disjoint nonempty subsets
    ``S1``, ``S2`` at least one of the following holds: every node of ``S1``
    has ``r`` in-neighbors outside ``S1``; every node of ``S2`` has ``r``
    in-neighbors outside ``S2``; at least ``s`` nodes of ``S1 | S2`` have
    ``r`` in-neighbors outside their own set.

    Parameters
    ----------
    g : resopt.graph.Graph
    r : int
        Non-negative reachability threshold.
    s : int
        Positive count threshold.
    force : bool, optional
        Ignore the size guard.
        Defaults to ``False``.

    Returns
    -------
    holds : bool
    witness : tuple of frozenset or None
        A violating pair ``(S1, S2)``, smallest first, when the check fails.

    Raises
    ------
    ValueError
        If ``r < 0`` or ``s < 1``.
    SizeGuardError
        If the graph exceeds the size guard.
    """
    if r < 0:
        raise ValueError('r must be non-negative, got {}'.format(r))
    if s < 1:
        raise ValueError('s must be at least 1, got {}'.format(s))
    check_size_guard(g, force=force)
    n = g.n
    if n < 2:
        return True, None

    full = (1 << n) - 1
    masks, good_count, has_short_node = _subset_tables(g, r)
    candidate = has_short_node.copy()
    candidate[0] = False

    # cheapest candidate subset contained in each mask
    unreachable = np.int64(n + s + 1)
    cheapest = np.where(candidate, good_count, unreachable)
    for bit in range(n):
        with_bit = masks[((masks >> bit) & 1) == 1]
        cheapest[with_bit] = np.minimum(cheapest[with_bit],
                                        cheapest[with_bit ^ (1 << bit)])

    violating = candidate & (good_count + cheapest[full ^ masks] < s)
    if not violating.any():
        return True, None

    order = np.lexsort((masks, _popcount(masks, n)))
    first = order[violating[order]][0]
    partner_ok = (candidate &
                  ((masks & first) == 0) &
                  (good_count <= s - 1 - good_count[first]))
    second = order[partner_ok[order]][0]
    return False, (_mask_to_set(first), _mask_to_set(second))


def is_r_robust(g, r, force=False):
    """
    Exact r-robustness check: every pair of disjoint nonempty subsets has
    at least one r-reachable member. Equivalent to (r,1)-robustness.

    Returns
    -------
    holds : bool
    witness : tuple of frozenset or None
        A pair of disjoint sets, neither of which is r-reachable.
    """
    return is_rs_robust(g, r, 1, force=force)


def max_robustness(g, force=False):
    """
    Largest r for which ``g`` is r-robust, or 0 if it is not 1-robust.
    """
    check_size_guard(g, force=force)
    if g.n < 2:
        return 0
    r_max = 0
    # no graph on n nodes is more than ceil(n/2)-robust
    for r in range(1, (g.n + 1) // 2 + 1):
        holds, _ = is_r_robust(g, r, force=force)
        if not holds:
            break
        r_max = r
    return r_max


def robustness_report(g, r_values=(), rs_pairs=(), force=False):
    """
    Collect ``max_robustness`` and the queried robustness checks.

    Parameters
    ----------
    g : resopt.graph.Graph
    r_values : iterable of int, optional
        Values of r to check, stored as ``(r, 1)`` entries.
        Defaults to ``()``.
    rs_pairs : iterable of (int, int), optional
        Pairs to check.
        Defaults to ``()``.
    force : bool, optional
        Ignore the size guard.
        Defaults to ``False``.

    Returns
    -------
    report : RobustnessReport
    """
    rs_table = {}
    for r in r_values:
        rs_table[(int(r), 1)] = is_r_robust(g, int(r), force=force)
    for r, s in rs_pairs:
        rs_table[(int(r), int(s))] = is_rs_robust(g, int(r), int(s), force=force)
    return RobustnessReport(max_robustness(g, force=force), rs_table)
