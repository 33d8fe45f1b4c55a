# License: BSD 3 clause
"""
Post-hoc checks on simulation traces: consensus, contraction of the
consensus diameter, and confinement to the minimizer hull.

All checks look at the regular nodes only and at a tail window made of
the last ``tail_fraction`` of the recorded states (at least one state).
"""

from collections import namedtuple
from math import ceil

import numpy as np

from resopt.dynamics.trace import RETAINED
from resopt.objectives import function_from_spec, minimizer_hull
from resopt.utils.constants import (DEFAULT_CONSENSUS_TOL,
                                    DEFAULT_CONTRACTION_TOL,
                                    DEFAULT_SAFETY_EPS,
                                    DEFAULT_TAIL_FRACTION)

__all__ = ['ConsensusReport', 'SafetyReport', 'check_contraction',
           'check_envelope', 'check_filter_safety', 'check_safety',
           'consensus_report', 'diameter_series', 'tail_start',
           'trace_minimizer_hull']


ConsensusReport = namedtuple('ConsensusReport', ['M', 'm', 'D', 'consensus',
                                                 'value', 'tail_width'])
ConsensusReport.__doc__ = """
The envelope ``M(t)``/``m(t)`` of the regular states, the diameter ``D(t)``,
whether ``D`` stayed below the tolerance over the tail, the consensus value
(mean of the final regular states, ``None`` without consensus) and the
largest diameter seen in the tail.
"""

SafetyReport = namedtuple('SafetyReport', ['safe', 'max_excursion', 'hull'])
SafetyReport.__doc__ = """
Whether every tail state of a regular node lies in the widened hull, and
by how much the worst one leaves the hull itself.
"""


def tail_start(num_states, tail_fraction=DEFAULT_TAIL_FRACTION):
    """
    Index of the first state in the tail window.
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError('tail_fraction must be in (0, 1], got {}'.format(tail_fraction))
    width = max(1, int(ceil(num_states * tail_fraction)))
    return max(0, num_states - width)


def diameter_series(trace):
    """
    Return ``(M, m, D)`` over all recorded rounds.

    Raises
    ------
    ValueError
        If the trace has no regular node.
    """
    if not trace.regular:
        raise ValueError('The trace has no regular nodes')
    states = trace.regular_states
    M = states.max(axis=1)
    m = states.min(axis=1)
    return M, m, M - m


def consensus_report(trace, tol=DEFAULT_CONSENSUS_TOL,
                     tail_fraction=DEFAULT_TAIL_FRACTION):
    """
    Decide whether the regular nodes reached consensus.

    Parameters
    ----------
    trace : resopt.dynamics.trace.Trace
    tol : float, optional
        Largest diameter accepted over the tail.
        Defaults to ``DEFAULT_CONSENSUS_TOL``.
    tail_fraction : float, optional
        Defaults to ``DEFAULT_TAIL_FRACTION``.

    Returns
    -------
    report : ConsensusReport
    """
    M, m, D = diameter_series(trace)
    tail_width = float(D[tail_start(D.size, tail_fraction):].max())
    consensus = tail_width <= tol
    value = float(trace.regular_states[-1].mean()) if consensus else None
    return ConsensusReport(M, m, D, consensus, value, tail_width)


def check_contraction(trace, eta=None, tol=DEFAULT_CONTRACTION_TOL):
    """
    Find the rounds ``t`` where the diameter fails to contract as
    ``D(t + |R|) <= (1 - eta^|R| / 2) D(t) + 2 |R| delta_t + tol``.

    Parameters
    ----------
    trace : resopt.dynamics.trace.Trace
    eta : float, optional
        Defaults to ``None``, meaning ``trace.eta``.
    tol : float, optional
        Defaults to ``DEFAULT_CONTRACTION_TOL``.

    Returns
    -------
    violations : list of int
    """
    eta = trace.eta if eta is None else eta
    _, _, D = diameter_series(trace)
    size = len(trace.regular)
    last = trace.rounds - size
    if last < 0:
        return []
    rounds = np.arange(last + 1)
    bound = ((1.0 - eta ** size / 2.0) * D[rounds]
             + 2.0 * size * trace.deltas[rounds] + tol)
    return rounds[D[rounds + size] > bound].tolist()


def trace_minimizer_hull(trace):
    """
    The minimizer hull of the regular functions recorded in the trace.
    """
    specs = trace.metadata.get('functions')
    if not specs:
        raise ValueError('The trace does not record its regular functions')
    return minimizer_hull(function_from_spec(spec) for spec in specs.values())


def check_safety(trace, hull=None, eps=DEFAULT_SAFETY_EPS,
                 tail_fraction=DEFAULT_TAIL_FRACTION):
    """
    Check that the regular states end up inside the minimizer hull.

    Parameters
    ----------
    trace : resopt.dynamics.trace.Trace
    hull : resopt.objectives.MinimizerHull, optional
        Defaults to ``None``, meaning the hull of the recorded functions.
    eps : float, optional
        Slack added on both sides of the hull.
        Defaults to ``DEFAULT_SAFETY_EPS``.
    tail_fraction : float, optional
        Defaults to ``DEFAULT_TAIL_FRACTION``.

    Returns
    -------
    report : SafetyReport
    """
    hull = trace_minimizer_hull(trace) if hull is None else hull
    states = trace.regular_states
    tail = states[tail_start(states.shape[0], tail_fraction):]
    excursion = float(max(0.0, (hull.lo - tail).max(), (tail - hull.hi).max()))
    return SafetyReport(bool(excursion <= eps), excursion, hull)


def check_filter_safety(trace, tol=0.0):
    """
    Find retained values outside the regular envelope of their round.

    Returns
    -------
    violations : list of (int, int, int)
        ``(t, receiver, sender)`` triples.
    """
    M, m, _ = diameter_series(trace)
    violations = []
    for t in range(trace.rounds):
        for i in trace.regular:
            retained = set(np.flatnonzero(trace.codes[t, i] == RETAINED).tolist())
            for j, value in trace.received(t, i):
                if j in retained and not m[t] - tol <= value <= M[t] + tol:
                    violations.append((t, i, j))
    return violations


def check_envelope(trace, tol=1e-12):
    """
    Find the rounds where ``M(t + 1) > M(t) + alpha_t L`` or
    ``m(t + 1) < m(t) - alpha_t L``.
    """
    M, m, _ = diameter_series(trace)
    drift = trace.alphas * trace.lipschitz + tol
    broken = (M[1:] > M[:-1] + drift) | (m[1:] < m[:-1] - drift)
    return np.flatnonzero(broken).tolist()
