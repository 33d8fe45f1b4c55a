# License: BSD 3 clause
"""
Helpers shared by scenario runs and reproductions: JSON encoding, the
post-hoc check bundle and the plain-text report.
"""

import json

import numpy as np
from tabulate import tabulate

from resopt.analysis import (check_contraction, check_safety, consensus_report,
                             trace_minimizer_hull)
from resopt.dynamics import adversary_set_kind
from resopt.graph import robustness_report
from resopt.utils.constants import (DEFAULT_CONSENSUS_TOL,
                                    DEFAULT_CONTRACTION_TOL,
                                    DEFAULT_SAFETY_EPS,
                                    DEFAULT_TAIL_FRACTION)
from resopt.utils.io import atomic_write

#: Number of contraction violations listed in a report
MAX_LISTED_VIOLATIONS = 10


class NumpyTypeEncoder(json.JSONEncoder):
    """
    Serialise numpy scalars, arrays, frozensets and tuples as plain JSON
    values. ``nan`` and infinities become ``null``.
    """

    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj) if np.isfinite(obj) else None
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, (set, frozenset)):
            return sorted(obj)
        return json.JSONEncoder.default(self, obj)


def write_json(obj, path):
    """
    Write ``obj`` to ``path`` atomically with ``NumpyTypeEncoder``.
    """
    atomic_write(path, json.dumps(obj, cls=NumpyTypeEncoder, indent=2, sort_keys=True))


def robustness_key(r, s=1):
    """
    Report key of a robustness query: ``r2`` for 2-robustness and
    ``rs22`` for (2,2)-robustness.
    """
    return 'r{}'.format(r) if s == 1 else 'rs{}{}'.format(r, s)


def robustness_section(graph, r_values=(), rs_pairs=(), force=False):
    """
    Run the requested exact robustness checks.

    Returns
    -------
    robustness : dict
        Maps ``robustness_key`` to the outcome of the check.
    witnesses : dict
        Maps the same keys to a violating pair of sorted node lists, or
        ``None`` when the check holds.
    r_max : int
    """
    report = robustness_report(graph, r_values, [tuple(p) for p in rs_pairs],
                               force=force)
    robustness, witnesses = {}, {}
    for (r, s), (holds, witness) in sorted(report.rs_table.items()):
        key = robustness_key(r, s)
        robustness[key] = bool(holds)
        witnesses[key] = None if witness is None else [sorted(part) for part in witness]
    return robustness, witnesses, report.r_max


def evaluate_checks(trace, checks, tolerance=DEFAULT_CONSENSUS_TOL,
                    tail_fraction=DEFAULT_TAIL_FRACTION,
                    safety_eps=DEFAULT_SAFETY_EPS,
                    contraction_tol=DEFAULT_CONTRACTION_TOL,
                    eta=None):
    """
    Run the named post-hoc checks on a trace.

    The result only depends on the trace, so a trace reloaded from its JSON
    file gives the same section as the live run.

    Parameters
    ----------
    trace : resopt.dynamics.Trace
    checks : list of str
        Any of ``'consensus'``, ``'safety'`` and ``'contraction'``.
    tolerance : float, optional
        Defaults to ``DEFAULT_CONSENSUS_TOL``.
    tail_fraction : float, optional
        Defaults to ``DEFAULT_TAIL_FRACTION``.
    safety_eps : float, optional
        Defaults to ``DEFAULT_SAFETY_EPS``.
    contraction_tol : float, optional
        Defaults to ``DEFAULT_CONTRACTION_TOL``.
    eta : float, optional
        Defaults to ``None``, meaning the eta recorded in the trace.

    Returns
    -------
    results : dict
        One entry per check, each with a boolean ``passed``.
    """
    results = {}
    if 'consensus' in checks:
        report = consensus_report(trace, tol=tolerance, tail_fraction=tail_fraction)
        results['consensus'] = {'passed': bool(report.consensus),
                                'tolerance': tolerance,
                                'tail_width': report.tail_width,
                                'final_width': float(report.D[-1]),
                                'value': report.value}
    if 'safety' in checks:
        hull = trace_minimizer_hull(trace)
        report = check_safety(trace, hull=hull, eps=safety_eps,
                              tail_fraction=tail_fraction)
        results['safety'] = {'passed': report.safe,
                             'eps': safety_eps,
                             'hull': [hull.lo, hull.hi],
                             'max_excursion': report.max_excursion}
    if 'contraction' in checks:
        used_eta = trace.eta if eta is None else eta
        violations = check_contraction(trace, eta=used_eta, tol=contraction_tol)
        results['contraction'] = {'passed': not violations,
                                  'eta': used_eta,
                                  'tol': contraction_tol,
                                  'violations': len(violations),
                                  'first_violations': violations[:MAX_LISTED_VIOLATIONS]}
    return results


def build_report(trace, checks, robustness=None, witnesses=None, r_max=None,
                 outputs=None, **check_options):
    """
    Assemble the ``report.json`` content of a run.

    Returns
    -------
    report : dict
    """
    metadata = trace.metadata
    results = evaluate_checks(trace, checks, **check_options)
    report = {'name': metadata.get('name'),
              'seed': metadata.get('seed'),
              'rounds': trace.rounds,
              'nodes': trace.graph.n,
              'regular': list(trace.regular),
              'adversarial': list(trace.adversarial),
              'adversary_sets': adversary_set_kind(trace.graph, trace.adversarial,
                                                   trace.F),
              'F': trace.F,
              'dynamics': trace.dynamics,
              'eta': trace.eta,
              'min_used_weight': metadata.get('min_used_weight'),
              'final_states': [float(v) if np.isfinite(v) else None
                               for v in trace.states[-1]],
              'checks': results,
              'passed': all(result['passed'] for result in results.values())}
    if robustness:
        report['robustness'] = robustness
        report['robustness_witnesses'] = witnesses or {}
        report['r_max'] = r_max
    if outputs:
        report['outputs'] = outputs
    return report


def report_table(report):
    """
    Render the check results of a report as a text table.
    """
    rows = []
    for name, result in sorted(report['checks'].items()):
        detail = {'consensus': 'tail width {:.3g}'.format(result.get('tail_width', 0.0)),
                  'safety': 'excursion {:.3g}'.format(result.get('max_excursion', 0.0)),
                  'contraction': '{} violations'.format(result.get('violations', 0))}[name]
        rows.append([name, 'pass' if result['passed'] else 'FAIL', detail])
    for key, holds in sorted(report.get('robustness', {}).items()):
        rows.append([key, 'yes' if holds else 'no', 'exact check'])
    table = tabulate(rows, headers=['check', 'result', 'detail'], tablefmt='psql')
    return 'Scenario: {}\n{}'.format(report.get('name'), table)
