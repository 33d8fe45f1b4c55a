# License: BSD 3 clause
"""
Tests for Set Packing instances, the reduction graph and the two exact
packing oracles.
"""

import json
import os
from os.path import exists, join

from nose.tools import eq_, ok_, raises

from resopt.analysis import (SetPackingInstance,
                             brute_force_set_packing,
                             independent_set_packing,
                             random_set_packing_instance,
                             read_set_packing,
                             reduction_check,
                             set_packing_to_graph)
from resopt.graph import SizeGuardError

from tests.utils import output_dir


def setup():
    """
    Create necessary directories for testing.
    """
    os.makedirs(output_dir, exist_ok=True)


def tearDown():
    """
    Clean up after tests.
    """
    for output_file in ['packing_instance.json']:
        if exists(join(output_dir, output_file)):
            os.unlink(join(output_dir, output_file))


def test_small_packing():
    inst = SetPackingInstance(4, [[0, 1], [1, 2], [2, 3]])
    eq_(brute_force_set_packing(inst), 2)
    eq_(independent_set_packing(inst), 2)


def test_disjoint_subsets():
    inst = SetPackingInstance(6, [[0, 1], [2, 3], [4, 5]], k=3)
    check = reduction_check(inst)
    eq_(check['packing'], 3)
    eq_(check['local_set'], 3)
    eq_(check['verdict'], 'equal')
    eq_(check['local_set_nodes'], ['s1', 's2', 's3'])
    ok_(check['exhaustive'])


def test_packing_of_one_is_not_compared():
    eq_(reduction_check(SetPackingInstance(3, [[0, 1, 2]]))['verdict'], 'n/a (k<2)')
    identical = SetPackingInstance(3, [[0, 1]] * 3)
    check = reduction_check(identical)
    eq_(check['packing'], 1)
    eq_(check['verdict'], 'n/a (k<2)')


def test_empty_instance():
    inst = SetPackingInstance(3, [])
    eq_(brute_force_set_packing(inst), 0)
    eq_(independent_set_packing(inst), 0)


def test_reduction_graph():
    inst = SetPackingInstance(4, [[0, 1], [1, 2, 3]])
    g = set_packing_to_graph(inst)
    eq_(g.n, 6)
    ok_(not g.directed)
    eq_(g.names, ('u1', 'u2', 'u3', 'u4', 's1', 's2'))
    # the universe clique plus one edge per subset membership
    eq_(len(g.undirected_pairs()), 6 + 5)
    eq_(g.in_neighbors(4), (0, 1))
    eq_(g.in_neighbors(5), (1, 2, 3))


def check_reduction(seed):
    inst = random_set_packing_instance(seed)
    packing = brute_force_set_packing(inst)
    eq_(independent_set_packing(inst), packing)
    check = reduction_check(inst)
    eq_(check['packing'], packing)
    ok_(check['exhaustive'])
    if packing >= 2:
        eq_(check['verdict'], 'equal')
        ok_(all(name.startswith('s') for name in check['local_set_nodes']))
        chosen = [inst.subsets[int(name[1:]) - 1] for name in check['local_set_nodes']]
        eq_(sum(len(s) for s in chosen), len(frozenset().union(*chosen)))
    else:
        eq_(check['verdict'], 'n/a (k<2)')


def test_reduction_on_random_instances():
    for seed in range(200):
        yield check_reduction, seed


def test_random_instances_respect_limits():
    for seed in range(30):
        inst = random_set_packing_instance(seed, max_n=5, max_m=4)
        ok_(2 <= inst.n <= 5)
        ok_(1 <= inst.m <= 4)
        ok_(all(len(s) >= 2 for s in inst.subsets))


def test_instance_dict():
    inst = SetPackingInstance.from_dict({'n': 3, 'subsets': [[2, 0], [1]], 'k': 2})
    eq_(inst.m, 2)
    eq_(inst.k, 2)
    eq_(inst.to_dict(), {'n': 3, 'subsets': [[0, 2], [1]], 'k': 2})
    eq_(SetPackingInstance(2, [[0]]).to_dict(), {'n': 2, 'subsets': [[0]]})


def test_read_set_packing():
    path = join(output_dir, 'packing_instance.json')
    with open(path, 'w') as instance_file:
        json.dump({'n': 4, 'subsets': [[0, 1], [2, 3]]}, instance_file)
    inst = read_set_packing(path)
    eq_(inst.n, 4)
    eq_(brute_force_set_packing(inst), 2)


@raises(KeyError)
def test_instance_without_subsets():
    SetPackingInstance.from_dict({'n': 3})


@raises(ValueError)
def test_element_outside_universe():
    SetPackingInstance(3, [[0, 3]])


@raises(ValueError)
def test_negative_universe():
    SetPackingInstance(-1, [])


@raises(SizeGuardError)
def test_brute_force_size_guard():
    brute_force_set_packing(SetPackingInstance(2, [[0, 1]] * 21))


@raises(SizeGuardError)
def test_independent_set_size_guard():
    independent_set_packing(SetPackingInstance(2, [[0, 1]] * 21))
