# License: BSD 3 clause
"""
Graph generators, including the two example networks used throughout the
test-suite and the named reproductions.
"""

from itertools import combinations

import networkx as nx
import numpy as np

from .core import Graph

__all__ = ['complete', 'cycle', 'empty', 'erdos_renyi', 'fig1', 'fig3',
           'grow_r_robust', 'path', 'star']


def empty(n):
    return Graph(n, (), directed=False)


def complete(n):
    """
    Undirected complete graph on ``n`` nodes.
    """
    return Graph(n, combinations(range(n), 2), directed=False)


def path(n, directed=False):
    """
    Path ``0 - 1 - ... - n-1``; with ``directed=True`` the edges point
    from lower to higher ids.
    """
    return Graph(n, ((i, i + 1) for i in range(n - 1)), directed=directed)


def cycle(n, chords=()):
    """
    Undirected cycle on ``n >= 3`` nodes with optional extra chords.
    """
    if n < 3:
        raise ValueError('A cycle needs at least 3 nodes, got {}'.format(n))
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges.extend(tuple(chord) for chord in chords)
    return Graph(n, edges, directed=False)


def star(n):
    """
    Undirected star with center 0 and leaves ``1 .. n-1``.
    """
    return Graph(n, ((0, i) for i in range(1, n)), directed=False)


def fig1():
    """
    The five-node undirected network ``n1 .. n5`` that is 2-robust but not
    3-robust.
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 4)]
    return Graph(5, edges, names=['n1', 'n2', 'n3', 'n4', 'n5'], directed=False)


def fig3(K):
    """
    The network with a complete core ``W`` of ``3K`` nodes and ``K`` extra
    nodes ``u_j``, each connected to its own triple of core nodes.

    Nodes ``0 .. 3K-1`` are ``w1 .. w3K`` and nodes ``3K .. 4K-1`` are
    ``u1 .. uK``; ``u_j`` connects to ``w_{3j-2}, w_{3j-1}, w_{3j}``.

    Parameters
    ----------
    K : int
        Number of ``u`` nodes, at least 1.

    Returns
    -------
    g : resopt.graph.Graph
    """
    if K < 1:
        raise ValueError('fig3 needs K >= 1, got {}'.format(K))
    num_core = 3 * K
    edges = list(combinations(range(num_core), 2))
    for j in range(K):
        u = num_core + j
        edges.extend((u, 3 * j + offset) for offset in range(3))
    names = (['w{}'.format(i + 1) for i in range(num_core)] +
             ['u{}'.format(j + 1) for j in range(K)])
    return Graph(num_core + K, edges, names=names, directed=False)


def fig3_core_and_extras(K):
    """
    Node ids of ``W`` and ``U`` in ``fig3(K)``.
    """
    return list(range(3 * K)), list(range(3 * K, 4 * K))


def erdos_renyi(n, p, seed=None):
    """
    Undirected G(n, p) graph.

    Raises
    ------
    ValueError
        If ``p`` is outside ``[0, 1]``.
    """
    if not 0 <= p <= 1:
        raise ValueError('Edge probability must lie in [0, 1], got {}'.format(p))
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed, directed=False))


def grow_r_robust(n, r, seed=None):
    """
    Grow an undirected graph from the complete graph on ``2r+1`` nodes by
    attaching every new node to ``r+1`` distinct existing nodes.

    Parameters
    ----------
    n : int
        Final node count, at least ``2r+1``.
    r : int
        Target robustness, at least 1.
    seed : int, optional
        Seed for ``numpy.random.default_rng``.
        Defaults to ``None``.

    Returns
    -------
    g : resopt.graph.Graph

    Raises
    ------
    ValueError
        If ``r < 1`` or ``n < 2r+1``.
    """
    if r < 1:
        raise ValueError('r must be at least 1, got {}'.format(r))
    if n < 2 * r + 1:
        raise ValueError('grow_r_robust needs n >= 2r+1 = {}, got {}'
                         .format(2 * r + 1, n))
    rng = np.random.default_rng(seed)
    edges = list(combinations(range(2 * r + 1), 2))
    for v in range(2 * r + 1, n):
        targets = rng.choice(v, size=r + 1, replace=False)
        edges.extend((int(u), v) for u in targets)
    return Graph(n, edges, directed=False)
