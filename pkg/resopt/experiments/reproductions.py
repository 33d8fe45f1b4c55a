# License: BSD 3 clause
"""
Named reproductions: bundled scenarios and constructions, each with the
acceptance criterion it must meet.

Every reproduction returns a JSON-ready report with ``passed`` set and
raises ``ReproductionFailure`` when its criterion is not met.
"""

import logging
from os.path import abspath, dirname, join

import numpy as np

from resopt.analysis import (build_necessity_scenario,
                             build_performance_scenarios,
                             check_safety,
                             consensus_report,
                             diameter_series,
                             max_r_local_set)
from resopt.analysis.checks import tail_start
from resopt.config import parse_scenario_file
from resopt.dynamics import (ByzantineSplit,
                             FixedValue,
                             RandomValue,
                             Scripted,
                             SimConfig,
                             lf_step,
                             run)
from resopt.dynamics.trace import RETAINED
from resopt.graph import Graph, complete, fig1, fig3, is_rooted, is_rs_robust
from resopt.objectives import Quadratic, average_minimizer
from resopt.utils.constants import VALID_REPRODUCTIONS

from . import scenario_report
from .utils import robustness_section, write_json

__all__ = ['ReproductionFailure', 'SCENARIO_DIR', 'bundled_scenario', 'reproduce']

SCENARIO_DIR = abspath(join(dirname(__file__), '..', 'scenarios'))

#: Retained edges ``(sender, receiver)`` of the five-node network at round 0
#: with F = 1 and initial values (2, 0, 0, 1, 1)
FIG1_RETAINED_EDGES = frozenset([(2, 0), (3, 0), (4, 0), (3, 1), (2, 1), (1, 2),
                                 (4, 2)])
FIG1_INITIAL_STATES = (2.0, 0.0, 0.0, 1.0, 1.0)
FIG1_ROBUSTNESS = {'r2': True, 'r3': False, 'rs22': True}


class ReproductionFailure(AssertionError):
    """
    Raised when a named reproduction misses its acceptance criterion.
    """


def _require(condition, message, *args):
    if not condition:
        raise ReproductionFailure(message.format(*args))


def bundled_scenario(name):
    """
    Path of a scenario file shipped with the package.
    """
    return join(SCENARIO_DIR, name)


def _run_bundled(file_name, logger):
    scenario = parse_scenario_file(bundled_scenario(file_name))
    logger.info('Running bundled scenario %s', scenario.name)
    trace = run(scenario.sim_config, logger=logger)
    return scenario, trace


def _reproduce_baseline(logger):
    scenario, trace = _run_bundled('baseline.cfg', logger)
    config = scenario.sim_config
    x_star = average_minimizer(config.functions[i] for i in config.regular)
    error = float(np.abs(trace.regular_states[-1] - x_star).max())
    _require(error <= 1e-2, 'Baseline ended {:.3g} away from the minimizer {:.4f}',
             error, x_star)
    return {'minimizer': x_star, 'max_error': error,
            'report': scenario_report(scenario, trace)}


def _reproduce_hijack(logger):
    scenario, trace = _run_bundled('hijack.cfg', logger)
    value = scenario.sim_config.adversaries[0].value
    error = float(np.abs(trace.regular_states[-1] - value).max())
    _require(error <= 1e-3, 'Regular nodes ended {:.3g} away from the hijacking '
             'value {}', error, value)
    return {'hijack_value': value, 'max_error': error,
            'report': scenario_report(scenario, trace)}


def _reproduce_fig1_filter(logger):
    g = fig1()
    x0 = np.array(FIG1_INITIAL_STATES)
    config = SimConfig(g, {i: Quadratic(0.0) for i in range(g.n)}, F=1, rounds=0,
                       initial_states=x0, name='fig1-filter')
    codes = lf_step(x0, config, 0).codes
    receivers, senders = np.nonzero(codes == RETAINED)
    retained = frozenset(zip(senders.tolist(), receivers.tolist()))
    _require(retained == FIG1_RETAINED_EDGES,
             'Round-0 retained edges {} differ from {}',
             sorted(retained), sorted(FIG1_RETAINED_EDGES))
    rooted, _ = is_rooted(g.subgraph_edges(sorted(retained)))
    _require(not rooted, 'The graph induced by the retained edges is rooted')
    robustness, witnesses, r_max = robustness_section(g, [2, 3], [(2, 2)])
    _require(robustness == FIG1_ROBUSTNESS, 'Robustness {} differs from {}',
             robustness, FIG1_ROBUSTNESS)
    logger.info('Retained edges: %s',
                ', '.join('{}->{}'.format(g.name(j), g.name(i))
                          for j, i in sorted(retained)))
    return {'retained_edges': sorted(retained), 'induced_rooted': rooted,
            'robustness': robustness, 'robustness_witnesses': witnesses,
            'r_max': r_max}


def _reproduce_lf_consensus(logger):
    scenario, trace = _run_bundled('fig1.cfg', logger)
    report = scenario_report(scenario, trace)
    consensus = report['checks']['consensus']
    contraction = report['checks']['contraction']
    _require(consensus['passed'], 'Tail width {:.3g} exceeds {}',
             consensus['tail_width'], consensus['tolerance'])
    _require(contraction['passed'], 'The diameter failed to contract at rounds {}',
             contraction['first_violations'])
    _require(abs(contraction['eta'] - 1.0 / (scenario.graph.max_in_degree + 1)) < 1e-15,
             'Unexpected eta {}', contraction['eta'])
    _require(report['robustness'] == FIG1_ROBUSTNESS, 'Robustness {} differs from {}',
             report['robustness'], FIG1_ROBUSTNESS)
    return {'report': report}


def _reproduce_oscillation(logger):
    scenario, trace = _run_bundled('oscillation.cfg', logger)
    report = consensus_report(trace, tol=scenario.tolerance,
                              tail_fraction=scenario.tail_fraction)
    _require(report.consensus, 'Tail width {:.3g} exceeds {}', report.tail_width,
             scenario.tolerance)
    states = trace.regular_states
    tail = states[tail_start(states.shape[0], scenario.tail_fraction):]
    ranges = tail.max(axis=0) - tail.min(axis=0)
    _require(ranges.min() >= 1.0, 'Tail ranges {} do not all reach 1.0',
             ranges.tolist())
    safety = check_safety(trace, eps=scenario.safety_eps,
                          tail_fraction=scenario.tail_fraction)
    _require(safety.safe and (safety.hull.lo, safety.hull.hi) == (0.0, 9.0),
             'Safety check failed: excursion {:.3g} from {}', safety.max_excursion,
             safety.hull)
    return {'tail_width': report.tail_width, 'tail_ranges': ranges.tolist(),
            'hull': [safety.hull.lo, safety.hull.hi],
            'report': scenario_report(scenario, trace)}


def _safety_behaviors(out_neighbors):
    offsets = {v: (1e6 if k % 2 else -1e6) for k, v in enumerate(out_neighbors)}
    return [FixedValue(1e6),
            FixedValue(-1e6),
            RandomValue(-1e6, 1e6),
            Scripted([1e6, -1e6], cycle=True),
            ByzantineSplit(2.0, offsets=offsets)]


def _reproduce_safety(logger, rounds=5000, eps=1e-2):
    centers = [0.0, 1.0, 3.0, 4.0]
    runs = []
    for label, graph, adversary in [('fig1', fig1(), 0), ('K5', complete(5), 4)]:
        regular = [i for i in range(graph.n) if i != adversary]
        functions = {i: Quadratic(c) for i, c in zip(regular, centers)}
        behaviors = _safety_behaviors(sorted(graph.out_neighbors(adversary)))
        for k, behavior in enumerate(behaviors):
            config = SimConfig(graph, functions, adversaries={adversary: behavior},
                               F=1, rounds=rounds, seed=k,
                               name='safety-{}-{}-{}'.format(label, k, behavior.kind))
            trace = run(config, logger=logger)
            safety = check_safety(trace, eps=eps)
            runs.append({'name': config.name, 'safe': safety.safe,
                         'max_excursion': safety.max_excursion})
            _require(safety.safe, 'Run {} left the hull by {:.3g}', config.name,
                     safety.max_excursion)
    return {'runs': runs, 'hull': [min(centers), max(centers)]}


def _reproduce_fig3_bound(logger, rounds=2000):
    g = fig3(3)
    local_set = max_r_local_set(g, 1, logger=logger)
    _require(local_set.exhaustive and local_set.size == 3,
             'Maximum 1-local set has size {} (exhaustive: {})', local_set.size,
             local_set.exhaustive)
    holds, _ = is_rs_robust(g, 2, 2)
    _require(holds, 'fig3(3) is not (2,2)-robust')
    scenarios = build_performance_scenarios(g, 1, a=0.0, b=8.0, rounds=rounds)
    bound = scenarios.bound
    _require(np.allclose(bound, (2.0, 4.0, 2.0)), 'Bound {} differs from (2, 4, 2)',
             tuple(bound))
    honest = run(scenarios.honest, logger=logger)
    spoofed = run(scenarios.spoofed, logger=logger)
    outside = [i for i in range(g.n) if i not in scenarios.local_set]
    _require(np.array_equal(honest.states[:, outside], spoofed.states[:, outside]),
             'Nodes outside the local set told the two runs apart')
    error = float(np.abs(spoofed.regular_states[-1]).max())
    _require(error <= 1e-2, 'Spoofed run ended {:.3g} away from 0', error)
    return {'local_set': [g.name(v) for v in sorted(scenarios.local_set)],
            'x_error': bound.x_error, 'f_gap': bound.f_gap, 'x_star': bound.x_star,
            'spoofed_max_error': error}


def _two_cliques():
    return Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
                 directed=False)


def _reproduce_necessity(logger, rounds=10000, gap=10.0):
    g = _two_cliques()
    holds, witness = is_rs_robust(g, 2, 2)
    _require(not holds, 'The two-clique network is (2,2)-robust')
    S1, S2 = witness
    config = build_necessity_scenario(g, S1, S2, F=1, gap=gap, rounds=rounds)
    trace = run(config, logger=logger)
    _, _, D = diameter_series(trace)
    _require(D.min() >= gap - 0.1, 'Diameter dropped to {:.3g}', D.min())
    return {'witness': [sorted(S1), sorted(S2)],
            'adversarial': list(trace.adversarial),
            'min_diameter': float(D.min())}


_REPRODUCTIONS = {'baseline': _reproduce_baseline,
                  'fig1-filter': _reproduce_fig1_filter,
                  'fig3-bound': _reproduce_fig3_bound,
                  'hijack': _reproduce_hijack,
                  'lf-consensus': _reproduce_lf_consensus,
                  'necessity': _reproduce_necessity,
                  'oscillation': _reproduce_oscillation,
                  'safety': _reproduce_safety}

assert set(_REPRODUCTIONS) == set(VALID_REPRODUCTIONS)


def reproduce(name, output_dir=None, logger=None):
    """
    Run a named reproduction.

    Parameters
    ----------
    name : str
        One of ``VALID_REPRODUCTIONS``.
    output_dir : str, optional
        If given, the report is also written to ``<output_dir>/<name>.json``.
        Defaults to ``None``.
    logger : logging.Logger, optional
        Defaults to ``None``, meaning the module logger.

    Returns
    -------
    report : dict

    Raises
    ------
    ValueError
        If the name is unknown.
    ReproductionFailure
        If the acceptance criterion is not met.
    """
    logger = logger if logger else logging.getLogger(__name__)
    if name not in _REPRODUCTIONS:
        raise ValueError('Unknown reproduction {!r}; expected one of {}'
                         .format(name, list(VALID_REPRODUCTIONS)))
    report = dict(_REPRODUCTIONS[name](logger), name=name, passed=True)
    if output_dir:
        write_json(report, join(output_dir, '{}.json'.format(name)))
    logger.info('Reproduction %s passed', name)
    return report
