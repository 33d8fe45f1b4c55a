# License: BSD 3 clause
"""
Tests for the convex local objectives and the minimizer helpers.
"""

import numpy as np
from nose.tools import assert_almost_equal, eq_, ok_, raises

from resopt.objectives import (Abs,
                               Affine,
                               ConvexFunction,
                               FlatBand,
                               MinimizerBracketError,
                               Quadratic,
                               average_minimizer,
                               evaluate,
                               function_from_spec,
                               minimizer_hull,
                               spoof_function,
                               subgradient)


class Slope(ConvexFunction):
    """
    ``f(x) = x``: convex, bounded gradient, no minimizer.
    """

    kind = 'slope'

    def _raw_interval(self, x):
        return 1.0, 1.0

    def eval(self, x):
        return x

    def params(self):
        return {}


def test_quadratic():
    f = Quadratic(3.0)
    eq_(f.eval(3.0), 0.0)
    eq_(f(4.0), 1.0)
    eq_(f.subgradient(3.0), 0.0)
    eq_(f.subgradient(4.0), 2.0)
    eq_(f.minimizer_interval, (3.0, 3.0))
    eq_(f.lipschitz, 100.0)


def test_quadratic_is_linear_beyond_the_cap():
    f = Quadratic(0.0, cap=100.0)
    eq_(f.subgradient(60.0), 100.0)
    eq_(f.subgradient(-60.0), -100.0)
    eq_(f.eval(60.0), 3500.0)
    eq_(f.eval(-50.0), 2500.0)


def test_abs():
    f = Abs(1.0, slope=2.0)
    eq_(f.eval(3.0), 4.0)
    eq_(f.subgradient(1.0), 0.0)
    eq_(f.subgradient(0.0), -2.0)
    eq_(f.subgradient_interval(1.0), (-2.0, 2.0))
    eq_(f.lipschitz, 2.0)
    eq_(Abs(0.0, slope=50.0, cap=10.0).lipschitz, 10.0)


def test_flat_band():
    f = FlatBand(0.0, 10.0, growth=2.0, cap=4.0)
    eq_(f.minimizer_interval, (0.0, 10.0))
    eq_(f.eval(5.0), 0.0)
    eq_(f.subgradient(5.0), 0.0)
    eq_(f.subgradient(11.0), 2.0)
    eq_(f.subgradient(-1.5), -3.0)
    eq_(f.subgradient(20.0), 4.0)
    # continuous at the point where the derivative reaches the cap
    assert_almost_equal(f.eval(12.0 - 1e-9), f.eval(12.0 + 1e-9), places=6)
    eq_(f.eval(12.0), 4.0)


def test_affine():
    f = Affine([0.5, 0.5], [Quadratic(0.0), Quadratic(4.0)])
    lo, hi = f.minimizer_interval
    assert_almost_equal(lo, 2.0, places=8)
    assert_almost_equal(hi, 2.0, places=8)
    eq_(f.lipschitz, 100.0)
    eq_(f.eval(2.0), 4.0)


def test_affine_with_flat_minimizer_set():
    f = Affine([1.0, 1.0], [Abs(0.0), Abs(4.0)])
    lo, hi = f.minimizer_interval
    assert_almost_equal(lo, 0.0, places=8)
    assert_almost_equal(hi, 4.0, places=8)
    eq_(f.subgradient(2.0), 0.0)
    eq_(f.lipschitz, 2.0)


@raises(ValueError)
def test_affine_needs_positive_weight():
    Affine([0.0], [Quadratic()])


@raises(ValueError)
def test_affine_weight_count():
    Affine([1.0, 1.0], [Quadratic()])


def check_subgradient_matches_values(f, x):
    h = 1e-6
    numeric = (f.eval(x + h) - f.eval(x - h)) / (2 * h)
    assert_almost_equal(numeric, f.subgradient(x), places=4)
    ok_(abs(f.subgradient(x)) <= f.lipschitz)


def test_subgradients_match_values():
    rng = np.random.default_rng(7)
    functions = [Quadratic(1.5, cap=20.0),
                 Abs(-2.0, slope=3.0),
                 FlatBand(-1.0, 2.0, growth=0.5, cap=3.0),
                 Affine([0.3, 0.7], [Quadratic(0.0, cap=10.0), Quadratic(4.0)])]
    for f in functions:
        lo, hi = f.minimizer_interval
        for x in rng.uniform(-40.0, 40.0, size=10):
            # stay away from the kinks
            if min(abs(x - lo), abs(x - hi)) > 1e-3:
                yield check_subgradient_matches_values, f, float(x)


def test_canonical_subgradient_helpers():
    f = Abs(0.0)
    eq_(subgradient(f, 0.0), 0.0)
    eq_(evaluate(f, -2.0), 2.0)


def test_average_minimizer():
    fs = [Quadratic(c) for c in [0, 1, 2, 3, 4, 9]]
    assert_almost_equal(average_minimizer(fs), 19.0 / 6.0, places=8)
    assert_almost_equal(average_minimizer([Quadratic(0.0), Quadratic(10.0)],
                                          weights=[0.25, 0.75]), 7.5, places=8)
    assert_almost_equal(average_minimizer([Abs(0.0), Abs(1.0), Abs(10.0)]), 1.0,
                        places=8)


def test_average_minimizer_of_flat_sum_is_the_midpoint():
    assert_almost_equal(average_minimizer([FlatBand(2.0, 6.0)]), 4.0, places=8)


@raises(MinimizerBracketError)
def test_average_minimizer_without_minimizer():
    average_minimizer([Slope()])


@raises(ValueError)
def test_average_minimizer_negative_weights():
    average_minimizer([Quadratic(), Quadratic()], weights=[1.5, -0.5])


@raises(ValueError)
def test_average_minimizer_weights_sum():
    average_minimizer([Quadratic(), Quadratic()], weights=[0.5, 0.6])


@raises(ValueError)
def test_average_minimizer_weights_shape():
    average_minimizer([Quadratic(), Quadratic()], weights=[1.0])


@raises(ValueError)
def test_average_minimizer_empty():
    average_minimizer([])


def test_minimizer_hull():
    hull = minimizer_hull([Quadratic(0.0), FlatBand(2.0, 5.0), Abs(-1.0)])
    eq_((hull.lo, hull.hi), (-1.0, 5.0))


@raises(ValueError)
def test_minimizer_hull_empty():
    minimizer_hull([])


def test_spoof_function():
    others = [Quadratic(0.0), Quadratic(0.0)]
    spoof = spoof_function(others, 2.0)
    eq_(spoof.center, 6.0)
    eq_(spoof.subgradient(2.0) + sum(f.subgradient(2.0) for f in others), 0.0)
    assert_almost_equal(average_minimizer(others + [spoof]), 2.0, places=8)


@raises(ValueError)
def test_spoof_function_cap_too_small():
    spoof_function([Quadratic(0.0)], 100.0, cap=10.0)


def test_function_from_spec():
    f = function_from_spec({'fn': 'quadratic', 'params': {'center': 9}, 'cap': 50})
    eq_(f, Quadratic(9.0, cap=50.0))
    eq_(function_from_spec({'fn': 'abs'}, default_cap=5.0).cap, 5.0)
    band = function_from_spec({'fn': 'flatband', 'params': {'lo': 0, 'hi': 10}})
    eq_(band.minimizer_interval, (0.0, 10.0))


def test_function_spec_round_trip():
    for f in [Quadratic(1.0, cap=7.0), Abs(2.0, slope=0.5), FlatBand(-1.0, 1.0),
              Affine([1.0, 2.0], [Quadratic(0.0), Abs(3.0)])]:
        eq_(function_from_spec(f.to_spec()), f)


@raises(ValueError)
def test_unknown_function_kind():
    function_from_spec({'fn': 'cubic'})


@raises(ValueError)
def test_unknown_function_field():
    function_from_spec({'fn': 'quadratic', 'center': 1.0})


@raises(ValueError)
def test_unknown_function_parameter():
    function_from_spec({'fn': 'quadratic', 'params': {'centre': 1.0}})


@raises(TypeError)
def test_function_spec_not_a_mapping():
    function_from_spec('quadratic')


@raises(ValueError)
def test_non_positive_cap():
    Quadratic(0.0, cap=0.0)


@raises(ValueError)
def test_abs_slope():
    Abs(0.0, slope=0.0)


@raises(ValueError)
def test_flat_band_order():
    FlatBand(2.0, 1.0)
