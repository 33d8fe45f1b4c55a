# License: BSD 3 clause
"""
Scenario builders behind the impossibility results: the split network that
never reaches consensus, the indistinguishable pair behind the performance
bound, and the random edge-removal property of robust graphs.
"""

import logging
from collections import namedtuple

from resopt.dynamics import FixedValue, SimConfig, SpoofedFunction
from resopt.dynamics.equivalence import PreconditionError
from resopt.graph import is_r_robust, is_rooted, remove_random_in_edges
from resopt.objectives import FlatBand, Quadratic
from resopt.utils.constants import DEFAULT_CAP, DEFAULT_LOCAL_SET_BUDGET

from .local_sets import max_r_local_set, performance_bound

__all__ = ['PerformanceScenarios', 'build_necessity_scenario',
           'build_performance_scenarios', 'verify_rooted_after_removal']

PerformanceScenarios = namedtuple('PerformanceScenarios', ['honest', 'spoofed',
                                                           'local_set', 'bound'])
PerformanceScenarios.__doc__ = """
Two configurations that the nodes outside ``local_set`` cannot tell apart:
in ``honest`` the local set is regular with objective ``(x - b)^2``, in
``spoofed`` it is adversarial and only pretends to have that objective.
"""


def _reachable(g, S, r):
    """
    Nodes of ``S`` with at least ``r`` in-neighbors outside ``S``.
    """
    return frozenset(i for i in S if len(set(g.in_neighbors(i)) - S) >= r)


def build_necessity_scenario(g, S1, S2, F, gap=10.0, rounds=10000,
                             cap=DEFAULT_CAP, seed=0):
    """
    Build a run in which the nodes of ``S1`` stay at 0 and those of ``S2``
    stay at ``gap`` forever.

    ``S1`` and ``S2`` must witness that ``g`` is not ``(F+1, F+1)``-robust:
    neither set is fully reachable and together they have at most ``F``
    nodes with ``F + 1`` or more in-neighbors outside their own set. Those
    nodes become adversaries that hold their set's value. The other nodes
    of ``S1`` get ``x^2``, those of ``S2`` get ``(x - gap)^2`` and every
    remaining node gets a function that is flat on ``[0, gap]``.

    Parameters
    ----------
    g : resopt.graph.Graph
    S1, S2 : iterable of int
    F : int
    gap : float, optional
        Defaults to ``10.0``.
    rounds : int, optional
        Defaults to ``10000``.
    cap : float, optional
        Gradient bound of the assigned functions.
        Defaults to ``DEFAULT_CAP``.
    seed : int, optional
        Defaults to ``0``.

    Returns
    -------
    config : resopt.dynamics.SimConfig

    Raises
    ------
    PreconditionError
        If ``(S1, S2)`` is not a violating pair.
    """
    S1, S2 = frozenset(S1), frozenset(S2)
    if not S1 or not S2 or S1 & S2:
        raise PreconditionError('S1 and S2 must be nonempty and disjoint')
    if not gap > 0:
        raise ValueError('gap must be positive, got {}'.format(gap))
    r = F + 1
    X1, X2 = _reachable(g, S1, r), _reachable(g, S2, r)
    if X1 == S1 or X2 == S2 or len(X1) + len(X2) >= r:
        raise PreconditionError('({}, {}) does not violate ({}, {})-robustness'
                                .format(sorted(S1), sorted(S2), r, r))

    functions, adversaries = {}, {}
    initial = []
    for i in range(g.n):
        if i in S1:
            initial.append(0.0)
            if i in X1:
                adversaries[i] = FixedValue(0.0)
            else:
                functions[i] = Quadratic(0.0, cap=cap)
        elif i in S2:
            initial.append(float(gap))
            if i in X2:
                adversaries[i] = FixedValue(gap)
            else:
                functions[i] = Quadratic(gap, cap=cap)
        else:
            initial.append(gap / 2.0)
            functions[i] = FlatBand(0.0, gap, cap=cap)
    return SimConfig(g, functions, adversaries=adversaries, F=F, dynamics='lf',
                     rounds=rounds, seed=seed, initial_states=initial,
                     name='necessity')


def build_performance_scenarios(g, r, a=0.0, b=8.0, rounds=2000, cap=DEFAULT_CAP,
                                budget=DEFAULT_LOCAL_SET_BUDGET):
    """
    Build the pair of runs that shows the optimality loss of a maximum
    ``r``-local set ``T``.

    Nodes outside ``T`` have ``(x - a)^2`` in both runs. In the honest run
    the nodes of ``T`` are regular with ``(x - b)^2``; in the spoofed run
    they are adversaries running the same update with that function. Both
    runs filter with ``F = r`` and start from the minimizers, so the nodes
    outside ``T`` follow identical trajectories although the honest optimum
    lies ``x_error`` away from ``a``.

    Returns
    -------
    scenarios : PerformanceScenarios
    """
    local_set = max_r_local_set(g, r, budget=budget)
    bound = performance_bound(g, r, a, b, budget=budget)
    T = local_set.nodes
    honest_functions = {i: Quadratic(b if i in T else a, cap=cap) for i in range(g.n)}
    initial = [b if i in T else a for i in range(g.n)]
    common = dict(F=r, dynamics='lf', rounds=rounds, initial_states=initial)
    honest = SimConfig(g, honest_functions, name='performance-honest', **common)
    spoofed = SimConfig(g, {i: Quadratic(a, cap=cap) for i in range(g.n) if i not in T},
                        adversaries={i: SpoofedFunction(Quadratic(b, cap=cap)) for i in T},
                        name='performance-spoofed', **common)
    return PerformanceScenarios(honest, spoofed, T, bound)


def verify_rooted_after_removal(g, r, trials=200, seed=0, force=False, logger=None):
    """
    Check that removing ``r - 1`` random in-edges per node from an
    r-robust graph always leaves a rooted graph.

    Parameters
    ----------
    g : resopt.graph.Graph
    r : int
    trials : int, optional
        Defaults to ``200``.
    seed : int, optional
        Trial ``k`` uses the seed ``[seed, k]``.
        Defaults to ``0``.
    force : bool, optional
        Run the robustness check beyond the size guard.
        Defaults to ``False``.
    logger : logging.Logger, optional
        Defaults to ``None``, meaning the module logger.

    Returns
    -------
    rooted : bool

    Raises
    ------
    PreconditionError
        If ``g`` is not r-robust.
    """
    logger = logger if logger else logging.getLogger(__name__)
    if r < 1:
        raise ValueError('r must be at least 1, got {}'.format(r))
    if not is_r_robust(g, r, force=force)[0]:
        raise PreconditionError('The graph is not {}-robust'.format(r))
    for trial in range(trials):
        pruned = remove_random_in_edges(g, r - 1, seed=[seed, trial])
        if not is_rooted(pruned)[0]:
            logger.warning('Trial %d left a graph that is not rooted', trial)
            return False
    return True
