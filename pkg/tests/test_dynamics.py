# License: BSD 3 clause
"""
Tests for the local filter, the step-size schedules, the weight schemes, the
adversary behaviours and the simulation engine.
"""

import json

import numpy as np
from nose.tools import assert_almost_equal, eq_, ok_, raises
from numpy.testing import assert_allclose, assert_array_equal

from resopt.analysis import check_envelope, check_filter_safety
from resopt.dynamics import (AdversaryBehavior,
                             ByzantineSplit,
                             Constant,
                             CustomWeights,
                             EqualNeighbor,
                             FixedValue,
                             Harmonic,
                             Metropolis,
                             Oscillating,
                             Power,
                             RandomValue,
                             Scripted,
                             Sequence,
                             SimConfig,
                             SpoofedFunction,
                             Trace,
                             adversary_set_kind,
                             baseline_step,
                             behavior_from_spec,
                             lf_filter,
                             lf_step,
                             metropolis_weights,
                             run,
                             schedule_from_spec,
                             suffix_deltas,
                             weight_scheme_from_spec)
from resopt.dynamics.trace import REMOVED_ABOVE, REMOVED_BELOW, RETAINED
from resopt.dynamics.weights import min_positive_weight
from resopt.experiments.reproductions import FIG1_INITIAL_STATES, FIG1_RETAINED_EDGES
from resopt.graph import Graph, complete, fig1, fig3, is_rooted, path
from resopt.objectives import FlatBand, Quadratic

from tests.utils import fig1_malicious_config


class TwoFaced(AdversaryBehavior):
    """
    A malicious behaviour that breaks the broadcast rule.
    """

    kind = 'two_faced'

    def nominal(self, view):
        return 0.0

    def emit(self, view, out_neighbors):
        return 0.0, {v: float(v) for v in out_neighbors}


def _quadratics(nodes, centers):
    return {i: Quadratic(c) for i, c in zip(nodes, centers)}


# local filter

def test_filter_removes_extremes():
    result = lf_filter(1.0, 0, [(1, 5.0), (2, 3.0), (3, 1.0), (4, 0.0), (5, -2.0)], 1)
    eq_(result.removed_above, frozenset([1]))
    eq_(result.removed_below, frozenset([5]))
    eq_(result.retained, frozenset([2, 3, 4]))


def test_filter_ties_remove_smaller_id_first():
    result = lf_filter(0.0, 0, [(2, 5.0), (1, 5.0), (3, 0.0)], 1)
    eq_(result.removed_above, frozenset([1]))
    eq_(result.retained, frozenset([2, 3]))


def test_filter_keeps_values_equal_to_own():
    result = lf_filter(1.0, 0, [(1, 1.0), (2, 1.0)], 2)
    eq_(result.retained, frozenset([1, 2]))
    eq_(result.removed_above | result.removed_below, frozenset())


def test_filter_with_fewer_than_F_values_on_one_side():
    result = lf_filter(0.0, 0, [(1, 1.0), (2, -1.0), (3, -2.0)], 2)
    eq_(result.removed_above, frozenset([1]))
    eq_(result.removed_below, frozenset([2, 3]))
    eq_(result.retained, frozenset())


def test_filter_ignores_own_message():
    result = lf_filter(0.0, 0, [(0, 100.0), (1, 1.0)], 0)
    eq_(result.retained, frozenset([1]))


@raises(ValueError)
def test_filter_negative_F():
    lf_filter(0.0, 0, [], -1)


def test_fig1_round_zero_retained_edges():
    g = fig1()
    x0 = np.array(FIG1_INITIAL_STATES)
    config = SimConfig(g, _quadratics(range(5), [0] * 5), F=1, rounds=0,
                       initial_states=x0)
    codes = lf_step(x0, config, 0).codes
    receivers, senders = np.nonzero(codes == RETAINED)
    retained = frozenset(zip(senders.tolist(), receivers.tolist()))
    eq_(retained, FIG1_RETAINED_EDGES)
    ok_(not is_rooted(g.subgraph_edges(sorted(retained)))[0])
    eq_(codes[0, 1], REMOVED_BELOW)
    eq_(codes[1, 0], REMOVED_ABOVE)


# schedules

def test_harmonic():
    schedule = Harmonic(2.0)
    assert_allclose(schedule.alphas(4), [2.0, 1.0, 2.0 / 3.0, 0.5])
    eq_(schedule.alpha(3), 0.5)
    ok_(schedule.monotone)


def test_power():
    schedule = Power(0.5, 0.6)
    eq_(schedule.alpha(0), 0.5)
    assert_almost_equal(schedule.alphas(10)[9], 0.5 / 10 ** 0.6)
    Power(1.0, 1.0)


@raises(ValueError)
def test_power_exponent_too_small():
    Power(1.0, 0.5)


@raises(ValueError)
def test_harmonic_needs_positive_constant():
    Harmonic(0.0)


@raises(ValueError)
def test_negative_constant_step():
    Constant(-1.0)


def test_sequence():
    schedule = Sequence([1.0, 2.0, 0.5])
    eq_(schedule.alpha(10), 0.5)
    ok_(not schedule.monotone)
    assert_allclose(schedule.alphas(4), [1.0, 2.0, 0.5, 0.5])
    ok_(Sequence([2.0, 1.0]).monotone)


@raises(ValueError)
def test_empty_sequence():
    Sequence([])


def test_suffix_deltas():
    assert_allclose(suffix_deltas([1.0, 3.0, 2.0], 2.0), [6.0, 6.0, 4.0])
    assert_allclose(suffix_deltas([3.0, 2.0], 2.0, monotone=True), [6.0, 4.0])
    eq_(suffix_deltas([], 1.0).size, 0)


def test_schedule_from_spec():
    schedule = schedule_from_spec({'kind': 'power', 'c': 1, 'p': 0.7})
    ok_(isinstance(schedule, Power))
    eq_(schedule.p, 0.7)
    eq_(schedule_from_spec(Harmonic(3.0).to_spec()).c, 3.0)
    eq_(schedule_from_spec({'kind': 'sequence', 'values': [1, 0.5]}).alpha(5), 0.5)


@raises(ValueError)
def test_unknown_schedule():
    schedule_from_spec({'kind': 'cosine'})


@raises(ValueError)
def test_unknown_schedule_parameter():
    schedule_from_spec({'kind': 'harmonic', 'd': 1})


@raises(TypeError)
def test_schedule_spec_not_a_mapping():
    schedule_from_spec('harmonic')


# weight schemes

def test_metropolis_weights():
    weights = metropolis_weights(path(3))
    assert_allclose(weights, [[2 / 3., 1 / 3., 0.],
                              [1 / 3., 1 / 3., 1 / 3.],
                              [0., 1 / 3., 2 / 3.]])
    weights = metropolis_weights(fig1())
    assert_allclose(weights.sum(axis=0), 1.0)
    assert_allclose(weights.sum(axis=1), 1.0)


@raises(ValueError)
def test_metropolis_needs_undirected_graph():
    metropolis_weights(path(3, directed=True))


def test_equal_neighbor():
    scheme = EqualNeighbor()
    g = fig1()
    matrix = scheme.matrix(g)
    assert_allclose(matrix[3], [1 / 3., 1 / 3., 0., 1 / 3., 0.])
    assert_allclose(matrix.sum(axis=1), 1.0)
    eq_(scheme.eta(g), 0.2)
    ids, weights = scheme.lf_row(g, 0, {2, 3})
    assert_array_equal(ids, [0, 2, 3])
    assert_allclose(weights, [1 / 3.] * 3)


def test_matrix_scheme_after_filtering():
    ids, weights = Metropolis().lf_row(path(3), 1, {0})
    assert_array_equal(ids, [0, 1])
    assert_allclose(weights, [1 / 3., 2 / 3.])


def test_metropolis_scheme_is_stateless():
    first, second = Metropolis(), Metropolis()
    eq_(vars(first), {})
    matrix = first.matrix(path(3))
    ok_(second.matrix(Graph(3, [(0, 1), (1, 2)], directed=False)) is matrix)
    ok_(not matrix.flags.writeable)
    assert_allclose(matrix, metropolis_weights(path(3)))
    ok_(metropolis_weights(path(3)).flags.writeable)
    ok_(first.matrix(path(4)) is not matrix)


@raises(ValueError)
def test_metropolis_scheme_matrix_is_read_only():
    Metropolis().matrix(path(3))[0, 0] = 1.0


def test_custom_weights():
    matrix = [[0.5, 0.5], [0.25, 0.75]]
    scheme = weight_scheme_from_spec(matrix)
    ok_(isinstance(scheme, CustomWeights))
    eq_(scheme.eta(path(2)), 0.25)
    assert_allclose(scheme.matrix(path(2), t=3), matrix)
    eq_(scheme.to_spec(), [matrix])


@raises(ValueError)
def test_custom_weights_not_stochastic():
    CustomWeights([[0.5, 0.4], [0.5, 0.5]])


@raises(ValueError)
def test_custom_weights_off_edges():
    SimConfig(Graph(2, []), _quadratics(range(2), [0, 0]),
              weight_scheme=[[0.5, 0.5], [0.5, 0.5]])


def test_weight_scheme_from_spec():
    ok_(isinstance(weight_scheme_from_spec('metropolis'), Metropolis))
    ok_(isinstance(weight_scheme_from_spec('equal_neighbor'), EqualNeighbor))
    eq_(min_positive_weight([[0.0, 0.3], [0.7, 0.0]]), 0.3)


@raises(ValueError)
def test_unknown_weight_scheme():
    weight_scheme_from_spec('uniform')


@raises(TypeError)
def test_weight_scheme_of_wrong_type():
    weight_scheme_from_spec(3)


# adversaries

def test_behavior_from_spec():
    eq_(behavior_from_spec({'behavior': 'fixed', 'value': 7}).value, 7.0)
    spoofed = behavior_from_spec({'behavior': 'spoofed',
                                  'fn': {'fn': 'quadratic', 'params': {'center': 3}}})
    ok_(isinstance(spoofed, SpoofedFunction))
    eq_(spoofed.fn, Quadratic(3.0))
    eq_(behavior_from_spec(Scripted([1, 2]).to_spec()).values, [1.0, 2.0])


@raises(ValueError)
def test_unknown_behavior():
    behavior_from_spec({'behavior': 'sleepy'})


@raises(ValueError)
def test_behavior_bad_parameters():
    behavior_from_spec({'behavior': 'fixed', 'level': 7})


@raises(ValueError)
def test_spoofed_behavior_needs_function():
    behavior_from_spec({'behavior': 'spoofed'})


@raises(TypeError)
def test_behavior_spec_not_a_mapping():
    behavior_from_spec('fixed')


@raises(ValueError)
def test_oscillating_bounds():
    Oscillating(low=2.0, high=1.0)


def test_adversary_set_kind():
    g = fig1()
    eq_(adversary_set_kind(g, [0], 1), {'total': True, 'local': True})
    eq_(adversary_set_kind(g, [0, 1], 1), {'total': False, 'local': False})
    eq_(adversary_set_kind(fig3(3), [9, 10, 11], 1), {'total': False, 'local': True})


def _scripted_trace(cycle):
    g = complete(3)
    config = SimConfig(g, _quadratics([0, 1], [0, 0]),
                       adversaries={2: Scripted([1, 2, 3], cycle=cycle)}, rounds=5)
    return run(config)


def test_scripted_behavior():
    assert_array_equal(_scripted_trace(False).states[:, 2], [1, 2, 3, 3, 3, 3])
    assert_array_equal(_scripted_trace(True).states[:, 2], [1, 2, 3, 1, 2, 3])


def test_byzantine_messages():
    g = fig1()
    behavior = ByzantineSplit(1.0, offsets={1: 5.0, 2: -5.0})
    config = SimConfig(g, _quadratics(range(1, 5), [0, 1, 3, 4]),
                       adversaries={0: behavior}, F=1, rounds=3)
    trace = run(config)
    eq_(trace.byzantine, (0,))
    assert_array_equal(trace.states[:, 0], [1.0] * 4)
    assert_array_equal(trace.messages[0, 0], [np.nan, 6.0, -4.0, 1.0, 1.0])
    eq_(dict(trace.received(1, 2))[0], -4.0)


@raises(ValueError)
def test_malicious_adversary_must_broadcast():
    g = complete(3)
    config = SimConfig(g, _quadratics([0, 1], [0, 0]), adversaries={2: TwoFaced()},
                       rounds=2)
    run(config)


# engine

def test_run_is_deterministic():
    g = fig1()
    config = SimConfig(g, _quadratics(range(1, 5), [0, 1, 3, 4]),
                       adversaries={0: RandomValue(-10, 10)}, F=1, rounds=50, seed=4)
    first, second = run(config), run(config)
    assert_array_equal(first.states, second.states)
    assert_array_equal(first.weights, second.weights)
    other = run(SimConfig(g, _quadratics(range(1, 5), [0, 1, 3, 4]),
                          adversaries={0: RandomValue(-10, 10)}, F=1, rounds=50,
                          seed=5))
    ok_(not np.array_equal(first.states[:, 0], other.states[:, 0]))


def test_stateful_behaviors_are_reset_between_runs():
    config = SimConfig(complete(5), _quadratics(range(4), [0, 1, 3, 4]),
                       adversaries={4: Oscillating(0.5, 2.0)}, F=1, rounds=200)
    assert_array_equal(run(config).states, run(config).states)
    ok_(not hasattr(config.adversaries[4], 'pushing'))


def test_baseline_round():
    g = path(3)
    config = SimConfig(g, _quadratics(range(3), [0, 1, 2]), dynamics='baseline',
                       weight_scheme='metropolis', step_schedule={'kind': 'constant',
                                                                  'c': 0.1},
                       initial_states=[3.0, 0.0, 0.0], rounds=1)
    trace = run(config)
    matrix = metropolis_weights(g)
    consensus = matrix.dot([3.0, 0.0, 0.0])
    expected = consensus - 0.1 * 2 * (consensus - [0.0, 1.0, 2.0])
    assert_allclose(trace.states[1], expected)
    assert_allclose(trace.weights[0], matrix)


def test_lf_without_filtering_matches_baseline():
    g = fig1()
    functions = _quadratics(range(5), [0, 1, 2, 3, 9])
    lf = run(SimConfig(g, functions, F=0, rounds=100))
    baseline = run(SimConfig(g, functions, F=0, dynamics='baseline', rounds=100))
    assert_allclose(lf.states, baseline.states, atol=1e-12)


def test_step_functions_leave_adversaries_alone():
    config = fig1_malicious_config(rounds=1)
    states = np.array([5.0, 0.0, 0.0, 1.0, 1.0])
    for step in (lf_step, baseline_step):
        result = step(states, config, 0)
        eq_(result.states[0], 5.0)
        ok_(np.isnan(result.gradients[0]))
        ok_(not result.weights[0].any())


def test_weights_are_row_stochastic():
    trace = run(fig1_malicious_config(rounds=30))
    assert_allclose(trace.weights[:, 1:].sum(axis=2), 1.0)
    ok_(trace.metadata['min_used_weight'] >= trace.eta)
    eq_(trace.eta, 0.2)


def test_trace_eta_is_the_scheme_bound():
    config = fig1_malicious_config(rounds=30)
    trace = run(config)
    eq_(trace.eta, config.eta)
    eq_(trace.eta, 1.0 / (config.graph.max_in_degree + 1))
    # regular nodes have at most three neighbors, so they never use 1/5
    ok_(trace.metadata['min_used_weight'] >= 0.25)
    eq_(trace.metadata['min_used_weight'], min_positive_weight(trace.weights))


def check_malicious_run_is_safe(behavior):
    g = fig1()
    config = SimConfig(g, _quadratics(range(1, 5), [0, 1, 3, 4]),
                       adversaries={0: behavior}, F=1, rounds=300, seed=2)
    trace = run(config)
    eq_(check_filter_safety(trace), [])
    eq_(check_envelope(trace), [])
    # the first step may overshoot; from then on every update is a convex
    # combination of values inside the hull
    regular = trace.regular_states[2:]
    ok_(regular.min() >= -1e-9 and regular.max() <= 4.0 + 1e-9)


def test_malicious_runs_are_safe():
    for behavior in [FixedValue(1e6), FixedValue(-1e6), RandomValue(-1e6, 1e6),
                     Scripted([1e6, -1e6], cycle=True), Oscillating(1.0, 3.0, 5.0)]:
        yield check_malicious_run_is_safe, behavior


def test_default_initial_states():
    g = path(3)
    config = SimConfig(g, {0: Quadratic(2.0), 1: FlatBand(0.0, 10.0)},
                       adversaries={2: SpoofedFunction(Quadratic(7.0))}, rounds=0)
    assert_allclose(config.initial_vector(), [2.0, 5.0, 7.0])


def test_spoofed_adversary_follows_honest_update():
    g = complete(3)
    honest = run(SimConfig(g, _quadratics(range(3), [0, 0, 6]), rounds=20))
    spoofed = run(SimConfig(g, _quadratics(range(2), [0, 0]),
                            adversaries={2: SpoofedFunction(Quadratic(6.0))},
                            rounds=20))
    assert_array_equal(honest.states, spoofed.states)


@raises(ValueError)
def test_missing_function():
    SimConfig(path(2), {0: Quadratic()})


@raises(ValueError)
def test_adversary_with_function():
    SimConfig(path(2), _quadratics(range(2), [0, 0]), adversaries={1: FixedValue(0)})


@raises(ValueError)
def test_unknown_dynamics():
    SimConfig(path(2), _quadratics(range(2), [0, 0]), dynamics='gossip')


@raises(ValueError)
def test_negative_F():
    SimConfig(path(2), _quadratics(range(2), [0, 0]), F=-1)


@raises(ValueError)
def test_initial_states_shape():
    SimConfig(path(2), _quadratics(range(2), [0, 0]), initial_states=[0.0])


@raises(ValueError)
def test_metropolis_on_directed_graph():
    SimConfig(path(2, directed=True), _quadratics(range(2), [0, 0]),
              weight_scheme='metropolis')


@raises(TypeError)
def test_config_needs_graph():
    SimConfig(None, {})


# traces

def test_trace_views():
    trace = run(fig1_malicious_config(rounds=1))
    eq_(trace.rounds, 1)
    eq_(trace.regular, (1, 2, 3, 4))
    eq_(trace.regular_states.shape, (2, 4))
    retained, above, below = trace.filter_sets(0, 3)
    eq_(retained, frozenset())
    eq_(above, frozenset([0]))
    eq_(below, frozenset([1]))
    eq_(set(trace.retained_edges(0)), set(FIG1_RETAINED_EDGES) - {(2, 0), (3, 0),
                                                                  (4, 0)})
    ok_(trace.induced_graph(0).directed)
    frame = trace.to_frame()
    eq_(len(frame), 2 * 5)
    eq_(set(frame['role']), {'regular', 'adversarial'})


def test_trace_json_round_trip():
    config = SimConfig(fig1(), _quadratics(range(1, 5), [0, 1, 3, 4]),
                       adversaries={0: ByzantineSplit(2.0, {1: 1.0})}, F=1, rounds=10)
    trace = run(config)
    copy = Trace.from_dict(json.loads(json.dumps(trace.to_dict())))
    eq_(copy.graph, trace.graph)
    eq_(copy.byzantine, (0,))
    assert_array_equal(copy.states, trace.states)
    assert_array_equal(copy.codes, trace.codes)
    assert_array_equal(copy.weights, trace.weights)
    ok_(np.array_equal(copy.messages, trace.messages, equal_nan=True))
    ok_(np.array_equal(copy.gradients, trace.gradients, equal_nan=True))
    eq_(copy.metadata['functions'], trace.metadata['functions'])
