# License: BSD 3 clause
"""
Set Packing instances, their reduction to the 1-local set problem, and the
exact oracles used to check the reduction.

Universe elements are the integers ``0 .. n-1``. In the constructed graph
they become the nodes ``u1 .. un`` (ids ``0 .. n-1``) and the subsets become
``s1 .. sm`` (ids ``n .. n+m-1``).
"""

import json

import networkx as nx
import numpy as np

from resopt.graph import Graph, SizeGuardError
from resopt.utils.constants import DEFAULT_LOCAL_SET_BUDGET, MAX_PACKING_SUBSETS

from .local_sets import max_r_local_set

__all__ = ['SetPackingInstance', 'brute_force_set_packing',
           'independent_set_packing', 'random_set_packing_instance',
           'read_set_packing', 'reduction_check', 'set_packing_to_graph']


class SetPackingInstance(object):
    """
    Subsets ``S_1 .. S_m`` of the universe ``{0, .., n-1}``.

    Parameters
    ----------
    n : int
        Size of the universe.
    subsets : list of iterables of int
    k : int, optional
        Target packing size.
        Defaults to ``None``.

    Raises
    ------
    ValueError
        If a subset has an element outside the universe.
    """

    def __init__(self, n, subsets, k=None):
        self.n = int(n)
        if self.n < 0:
            raise ValueError('Universe size must be non-negative, got {}'.format(n))
        self.subsets = tuple(frozenset(int(e) for e in subset) for subset in subsets)
        for index, subset in enumerate(self.subsets):
            outside = sorted(e for e in subset if not 0 <= e < self.n)
            if outside:
                raise ValueError('Subset {} has elements {} outside the universe '
                                 '[0, {})'.format(index, outside, self.n))
        self.k = None if k is None else int(k)

    @property
    def m(self):
        return len(self.subsets)

    def to_dict(self):
        data = {'n': self.n, 'subsets': [sorted(s) for s in self.subsets]}
        if self.k is not None:
            data['k'] = self.k
        return data

    @classmethod
    def from_dict(cls, data):
        missing = [key for key in ('n', 'subsets') if key not in data]
        if missing:
            raise KeyError('Set Packing instance is missing {}'.format(missing))
        return cls(data['n'], data['subsets'], k=data.get('k'))

    def __repr__(self):
        return 'SetPackingInstance(n={}, subsets={})'.format(
            self.n, [sorted(s) for s in self.subsets])


def read_set_packing(path):
    with open(path) as instance_file:
        return SetPackingInstance.from_dict(json.load(instance_file))


def set_packing_to_graph(inst):
    """
    Build the undirected graph with a clique on the universe nodes and an
    edge between ``s_i`` and ``u_j`` whenever ``j`` is in ``S_i``.
    """
    n = inst.n
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for index, subset in enumerate(inst.subsets):
        edges.extend((n + index, element) for element in sorted(subset))
    names = (['u{}'.format(i + 1) for i in range(n)] +
             ['s{}'.format(i + 1) for i in range(inst.m)])
    return Graph(n + inst.m, edges, names=names, directed=False)


def _check_packing_size(inst):
    if inst.m > MAX_PACKING_SUBSETS:
        raise SizeGuardError('Brute-force packing over {} subsets exceeds the '
                             'limit of {}'.format(inst.m, MAX_PACKING_SUBSETS))


def brute_force_set_packing(inst):
    """
    The largest number of mutually disjoint subsets, by exhaustive search
    over include/exclude decisions.

    Raises
    ------
    SizeGuardError
        If the instance has more than ``MAX_PACKING_SUBSETS`` subsets.
    """
    _check_packing_size(inst)
    masks = [sum(1 << e for e in subset) for subset in inst.subsets]
    best = 0
    stack = [(0, 0, 0)]
    while stack:
        index, used, count = stack.pop()
        if count + inst.m - index <= best:
            continue
        if index == inst.m:
            best = count
            continue
        stack.append((index + 1, used, count))
        if not used & masks[index]:
            stack.append((index + 1, used | masks[index], count + 1))
    return best


def independent_set_packing(inst):
    """
    Second oracle: the maximum independent set of the intersection graph
    of the subsets, found as a maximum clique of its complement.
    """
    _check_packing_size(inst)
    if not inst.m:
        return 0
    intersection = nx.Graph()
    intersection.add_nodes_from(range(inst.m))
    intersection.add_edges_from((i, j) for i in range(inst.m) for j in range(i + 1, inst.m)
                                if inst.subsets[i] & inst.subsets[j])
    clique, _ = nx.max_weight_clique(nx.complement(intersection), weight=None)
    return len(clique)


def random_set_packing_instance(seed=None, max_n=8, max_m=6, min_subset_size=2):
    """
    Draw an instance with ``2 <= n <= max_n``, ``1 <= m <= max_m`` and subsets
    of at least ``min_subset_size`` elements.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(max(2, min_subset_size), max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    subsets = []
    for _ in range(m):
        size = int(rng.integers(min_subset_size, n + 1))
        subsets.append(sorted(rng.choice(n, size=size, replace=False).tolist()))
    return SetPackingInstance(n, subsets)


def reduction_check(inst, budget=DEFAULT_LOCAL_SET_BUDGET):
    """
    Compare the packing number of ``inst`` with the maximum 1-local set of
    the constructed graph.

    Returns
    -------
    check : dict
        ``packing``, ``local_set``, ``local_set_nodes``, ``exhaustive`` and
        ``verdict``; the verdict is ``'equal'`` or ``'not equal'`` when the
        packing number is at least 2 and ``'n/a (k<2)'`` otherwise.
    """
    packing = brute_force_set_packing(inst)
    graph = set_packing_to_graph(inst)
    result = max_r_local_set(graph, 1, budget=budget)
    if packing < 2:
        verdict = 'n/a (k<2)'
    else:
        verdict = 'equal' if packing == result.size else 'not equal'
    return {'packing': packing,
            'local_set': result.size,
            'local_set_nodes': [graph.name(v) for v in sorted(result.nodes)],
            'exhaustive': result.exhaustive,
            'verdict': verdict}
