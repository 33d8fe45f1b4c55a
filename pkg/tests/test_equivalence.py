# License: BSD 3 clause
"""
Tests for rewriting filtered rounds as rounds among the regular nodes.
"""

import numpy as np
from nose.tools import eq_, ok_, raises
from numpy.testing import assert_allclose

from resopt.dynamics import (FixedValue,
                             PreconditionError,
                             SimConfig,
                             check_equivalence_preconditions,
                             equivalent_weight_sequence,
                             equivalent_weights,
                             limit_vector_estimate,
                             run)
from resopt.graph import complete, fig1, grow_r_robust
from resopt.objectives import Quadratic

from tests.utils import random_behavior, random_quadratics

F = 1


def _random_run(seed, rounds=25):
    rng = np.random.default_rng(seed)
    g = grow_r_robust(10, 3, seed=seed)
    adversary = seed % g.n
    regular = [i for i in range(g.n) if i != adversary]
    behavior = random_behavior(rng, g.out_neighbors(adversary))
    config = SimConfig(g, random_quadratics(rng, regular),
                       adversaries={adversary: behavior}, F=F, rounds=rounds,
                       seed=seed, name='equivalence-{}'.format(seed))
    return run(config)


def check_equivalent_weights(seed):
    trace = _random_run(seed)
    regular = list(trace.regular)
    index = {node: k for k, node in enumerate(regular)}
    eta = trace.eta
    for t in range(trace.rounds):
        matrix = equivalent_weights(trace, t)
        ok_((matrix >= 0).all())
        assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
        ok_((np.diag(matrix) >= eta - 1e-12).all())
        for i in regular:
            large = int((matrix[index[i]] >= eta / 2 - 1e-12).sum())
            ok_(large >= trace.graph.in_degree(i) - 2 * F)
        reconstructed = (matrix.dot(trace.states[t, regular]) -
                         trace.alphas[t] * trace.gradients[t, regular])
        assert_allclose(reconstructed, trace.states[t + 1, regular], rtol=0,
                        atol=1e-10)


def test_equivalent_weights():
    for seed in range(50):
        yield check_equivalent_weights, seed


def test_equivalent_weights_without_adversaries():
    g = complete(4)
    trace = run(SimConfig(g, {i: Quadratic(float(i)) for i in range(4)}, F=1,
                          rounds=5))
    for t in range(trace.rounds):
        matrix = equivalent_weights(trace, t)
        assert_allclose(matrix, trace.weights[t])


def test_weight_sequence_and_limit_vector():
    trace = _random_run(3, rounds=200)
    matrices = equivalent_weight_sequence(trace)
    eq_(len(matrices), 200)
    estimate = limit_vector_estimate(matrices, s=0)
    assert_allclose(estimate.q.sum(), 1.0)
    ok_((estimate.q >= 0).all())
    ok_(estimate.disagreement < 1e-3)


def test_limit_vector_of_a_fixed_matrix():
    matrix = np.array([[0.5, 0.5], [0.25, 0.75]])
    estimate = limit_vector_estimate([matrix] * 60)
    assert_allclose(estimate.q, [1 / 3., 2 / 3.])


@raises(ValueError)
def test_limit_vector_bad_range():
    limit_vector_estimate([np.eye(2)], s=1)


@raises(PreconditionError)
def test_preconditions_need_degree():
    # n4 and n5 have only two in-neighbors
    check_equivalence_preconditions(fig1(), [0], 1)


@raises(PreconditionError)
def test_preconditions_need_local_adversaries():
    check_equivalence_preconditions(complete(5), [0, 1], 1)


@raises(PreconditionError)
def test_equivalent_weights_refuses_bad_traces():
    g = fig1()
    trace = run(SimConfig(g, {i: Quadratic(0.0) for i in range(1, 5)},
                          adversaries={0: FixedValue(3.0)}, F=1, rounds=2))
    equivalent_weights(trace, 0)


@raises(IndexError)
def test_equivalent_weights_round_out_of_range():
    trace = _random_run(0, rounds=2)
    equivalent_weights(trace, 2)
