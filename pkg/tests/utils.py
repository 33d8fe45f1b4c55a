"""
Utilities functions to make resopt testing simpler
"""

import json
from os.path import abspath, dirname, join

import numpy as np

from resopt.config import _setup_config_parser
from resopt.dynamics import (ByzantineSplit,
                             FixedValue,
                             Oscillating,
                             RandomValue,
                             Scripted,
                             SimConfig,
                             run)
from resopt.experiments.reproductions import bundled_scenario
from resopt.graph import fig1
from resopt.objectives import Abs, Quadratic

_my_dir = abspath(dirname(__file__))
output_dir = join(_my_dir, 'output')


def fill_in_scenario_output(scenario_path, name, overrides=None):
    """
    Copy a scenario file into ``tests/output`` with its outputs pointed at
    ``tests/output/<name>`` and the given options replaced.

    Parameters
    ----------
    scenario_path : str
        Path to a ``.cfg`` scenario.
    name : str
        Name of the new scenario file (without extension).
    overrides : dict, optional
        Maps ``(section, option)`` to the new value.

    Returns
    -------
    new_path : str
    """
    config = _setup_config_parser(scenario_path, validate=False)
    config.set('Output', 'output_dir', join(output_dir, name))
    for (section, option), value in (overrides or {}).items():
        config.set(section, option, value)
    new_path = join(output_dir, '{}.cfg'.format(name))
    with open(new_path, 'w') as new_config_file:
        config.write(new_config_file)
    return new_path


def write_json_scenario(data, name):
    path = join(output_dir, '{}.json'.format(name))
    with open(path, 'w') as scenario_file:
        json.dump(data, scenario_file)
    return path


def minimal_scenario(name, rounds=50, function_kind='quadratic'):
    """
    A small JSON scenario on the complete graph with three nodes.
    """
    return {'General': {'name': name, 'rounds': rounds, 'seed': 1},
            'Graph': {'graph': {'generator': 'complete', 'n': 3}},
            'Dynamics': {'functions': {'default': {'fn': function_kind,
                                                   'params': {'center': 1.0}}}},
            'Analysis': {'checks': ['consensus'], 'tolerance': 1e-2},
            'Output': {'output_dir': join(output_dir, name)}}


def fig1_malicious_config(rounds=2000, value=2.0, initial_states=(2, 0, 0, 1, 1)):
    """
    Local filtering on the five-node network with node 0 holding ``value``
    and ``|x|`` on every regular node.
    """
    g = fig1()
    return SimConfig(g, {i: Abs(0.0) for i in range(1, g.n)},
                     adversaries={0: FixedValue(value)}, F=1, dynamics='lf',
                     rounds=rounds, initial_states=list(initial_states),
                     name='fig1-malicious')


def random_behavior(rng, out_neighbors, scale=50.0):
    """
    One of the adversary behaviours with parameters drawn from ``rng``.
    """
    kind = int(rng.integers(5))
    if kind == 0:
        return FixedValue(rng.uniform(-scale, scale))
    elif kind == 1:
        return RandomValue(-scale, scale)
    elif kind == 2:
        return Scripted(rng.uniform(-scale, scale, size=7).tolist(), cycle=True)
    elif kind == 3:
        return Oscillating(low=1.0, high=4.0, offset=rng.uniform(0.5, scale))
    offsets = {v: rng.uniform(-scale, scale) for v in out_neighbors}
    return ByzantineSplit(rng.uniform(0, 5), offsets=offsets)


def random_quadratics(rng, nodes, low=0.0, high=10.0):
    return {i: Quadratic(rng.uniform(low, high)) for i in nodes}


def run_bundled(name):
    """
    Parse and run one of the bundled scenarios.
    """
    from resopt.config import parse_scenario_file
    scenario = parse_scenario_file(bundled_scenario(name))
    return scenario, run(scenario.sim_config)


def brute_force_rs_robust(g, r, s):
    """
    Pairwise enumeration of disjoint subsets, used to cross-check the exact
    checkers on small graphs.
    """
    n = g.n
    in_sets = [set(g.in_neighbors(i)) for i in range(n)]

    def reachable(mask):
        members = [i for i in range(n) if mask >> i & 1]
        return [i for i in members
                if sum(1 for j in in_sets[i] if not mask >> j & 1) >= r]

    for S1 in range(1, 1 << n):
        for S2 in range(1, 1 << n):
            if S1 & S2:
                continue
            X1, X2 = reachable(S1), reachable(S2)
            if (len(X1) == bin(S1).count('1') or len(X2) == bin(S2).count('1') or
                    len(X1) + len(X2) >= s):
                continue
            return False
    return True


def regular_matrix(trace, t):
    """
    ``x_R(t+1) + alpha_t d_R(t)``, the consensus part of a regular update.
    """
    regular = list(trace.regular)
    return (trace.states[t + 1, regular] +
            trace.alphas[t] * trace.gradients[t, regular])


def regular_vector(trace, t):
    return np.asarray(trace.states[t, list(trace.regular)])
