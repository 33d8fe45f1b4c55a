# License: BSD 3 clause
"""
The directed graph model shared by the robustness checkers and the
simulation engine.

Nodes are the dense integers ``0 .. n-1``. An edge ``(u, v)`` means that
``v`` receives values from ``u``. Undirected graphs are stored as symmetric
edge sets and keep ``directed=False`` so that writers can emit each pair once.
"""

import networkx as nx
import numpy as np


class Graph(object):
    """
    Immutable directed graph over the nodes ``0 .. n-1``.

    Parameters
    ----------
    n : int
        The number of nodes.
    edges : iterable of (int, int)
        Ordered pairs ``(u, v)``; ``v`` can receive from ``u``.
    names : list of str, optional
        Display names for the nodes (``n1``, ``w3``, ...).
        Defaults to ``None``, in which case the node ids are used.
    directed : bool, optional
        Whether the graph should be treated as directed. If ``False``,
        every edge is stored in both orientations.
        Defaults to ``True``.

    Raises
    ------
    ValueError
        If ``n`` is negative, an edge is a self-loop, an endpoint is out
        of range or the number of names does not match ``n``.
    """

    __slots__ = ('_n', '_edges', '_names', '_directed',
                 '_in', '_out', '_in_masks')

    def __init__(self, n, edges=(), names=None, directed=True):
        n = int(n)
        if n < 0:
            raise ValueError('Node count must be non-negative, got {}'.format(n))

        edge_set = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError('Edge ({}, {}) has an endpoint outside '
                                 '[0, {})'.format(u, v, n))
            if u == v:
                raise ValueError('Self-loops are not stored; got ({}, {})'.format(u, v))
            edge_set.add((u, v))
            if not directed:
                edge_set.add((v, u))

        if names is not None:
            names = tuple(str(name) for name in names)
            if len(names) != n:
                raise ValueError('Expected {} node names, got {}'.format(n, len(names)))

        in_sets = [[] for _ in range(n)]
        out_sets = [[] for _ in range(n)]
        for u, v in sorted(edge_set):
            out_sets[u].append(v)
            in_sets[v].append(u)

        self._n = n
        self._edges = frozenset(edge_set)
        self._names = names
        self._directed = bool(directed)
        self._in = tuple(tuple(sorted(nbrs)) for nbrs in in_sets)
        self._out = tuple(tuple(sorted(nbrs)) for nbrs in out_sets)
        self._in_masks = tuple(sum(1 << j for j in nbrs) for nbrs in self._in)

    @property
    def n(self):
        return self._n

    @property
    def edges(self):
        return self._edges

    @property
    def directed(self):
        return self._directed

    @property
    def names(self):
        if self._names is None:
            return tuple(str(i) for i in range(self._n))
        return self._names

    @property
    def has_names(self):
        return self._names is not None

    def name(self, i):
        return self.names[self._check_node(i)]

    def _check_node(self, i):
        if not 0 <= i < self._n:
            raise IndexError('Node {} is outside [0, {})'.format(i, self._n))
        return i

    def in_neighbors(self, i):
        """
        Sorted tuple of the in-neighbors of node ``i``.
        """
        return self._in[self._check_node(i)]

    def out_neighbors(self, i):
        return self._out[self._check_node(i)]

    def in_degree(self, i):
        return len(self.in_neighbors(i))

    def out_degree(self, i):
        return len(self.out_neighbors(i))

    def in_mask(self, i):
        """
        Bit mask with bit ``j`` set for every in-neighbor ``j`` of ``i``.
        """
        return self._in_masks[self._check_node(i)]

    @property
    def max_in_degree(self):
        return max((len(nbrs) for nbrs in self._in), default=0)

    def is_symmetric(self):
        return all((v, u) in self._edges for u, v in self._edges)

    def undirected_pairs(self):
        """
        Sorted list of unordered pairs ``(u, v)`` with ``u < v``.
        """
        return sorted({(min(u, v), max(u, v)) for u, v in self._edges})

    def adjacency_matrix(self):
        """
        Return the 0/1 matrix ``A`` with ``A[v, u] = 1`` iff ``v`` receives
        from ``u`` (rows are receivers).
        """
        adjacency = np.zeros((self._n, self._n), dtype=int)
        for u, v in self._edges:
            adjacency[v, u] = 1
        return adjacency

    def subgraph_edges(self, edges):
        """
        Build a directed graph on the same nodes and names with
        the given edges.
        """
        return Graph(self._n, edges, names=self._names, directed=True)

    def to_networkx(self):
        """
        Convert to a ``networkx.DiGraph`` carrying the node names as
        the ``label`` attribute.
        """
        digraph = nx.DiGraph()
        for i in range(self._n):
            digraph.add_node(i, label=self.names[i])
        digraph.add_edges_from(sorted(self._edges))
        return digraph

    @classmethod
    def from_networkx(cls, graph, names=None):
        """
        Build a graph from a ``networkx`` graph whose nodes are
        ``0 .. n-1``. Undirected inputs produce symmetric edge sets.
        """
        n = graph.number_of_nodes()
        if sorted(graph.nodes()) != list(range(n)):
            raise ValueError('networkx graph nodes must be 0 .. n-1')
        return cls(n, graph.edges(), names=names,
                   directed=graph.is_directed())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        if self._directed:
            return 'Graph(n={}, edges={})'.format(self._n, len(self._edges))
        return 'Graph(n={}, undirected_edges={})'.format(self._n,
                                                         len(self._edges) // 2)


def in_neighbors(g, i):
    """
    Return the set of nodes ``j`` with ``(j, i)`` an edge of ``g``.

    Parameters
    ----------
    g : resopt.graph.Graph
        The graph.
    i : int
        A node of ``g``.

    Returns
    -------
    neighbors : frozenset of int

    Raises
    ------
    IndexError
        If ``i`` is not a node of ``g``.
    """
    return frozenset(g.in_neighbors(i))


def is_rooted(g):
    """
    Check whether some node reaches every other node by a directed path.

    Parameters
    ----------
    g : resopt.graph.Graph
        A graph with at least one node.

    Returns
    -------
    rooted : bool
    root : int or None
        A root (the smallest node of the unique source component), or
        ``None`` if the graph is not rooted.
    """
    if g.n < 1:
        raise ValueError('Rootedness needs at least one node')
    condensed = nx.condensation(g.to_networkx())
    sources = [c for c in condensed.nodes() if condensed.in_degree(c) == 0]
    if len(sources) != 1:
        return False, None
    return True, min(condensed.nodes[sources[0]]['members'])


def is_strongly_connected(g):
    if g.n < 1:
        raise ValueError('Strong connectivity needs at least one node')
    return nx.is_strongly_connected(g.to_networkx())


def is_r_reachable(g, S, r):
    """
    Check whether some node of ``S`` has at least ``r`` in-neighbors
    outside ``S``.

    Raises
    ------
    ValueError
        If ``S`` is empty.
    IndexError
        If ``S`` contains a node outside the graph.
    """
    S = frozenset(S)
    if not S:
        raise ValueError('r-reachability is only defined for nonempty sets')
    return any(len(set(g.in_neighbors(i)) - S) >= r for i in S)


def is_r_local(g, S, r):
    """
    Check that every node outside ``S`` has at most ``r`` in-neighbors
    inside ``S``.
    """
    S = frozenset(S)
    for i in S:
        g._check_node(i)
    return all(len(S.intersection(g.in_neighbors(v))) <= r
               for v in range(g.n) if v not in S)


def remove_random_in_edges(g, k, seed=None):
    """
    For every node independently, remove ``min(k, d_i^-)`` incoming edges
    chosen uniformly at random.

    Parameters
    ----------
    g : resopt.graph.Graph
    k : int
        Number of incoming edges to remove per node.
    seed : int, optional
        Seed for ``numpy.random.default_rng``.
        Defaults to ``None``.

    Returns
    -------
    pruned : resopt.graph.Graph
        A directed graph on the same nodes.
    """
    if k < 0:
        raise ValueError('k must be non-negative, got {}'.format(k))
    rng = np.random.default_rng(seed)
    kept = []
    for i in range(g.n):
        nbrs = g.in_neighbors(i)
        num_removed = min(k, len(nbrs))
        removed = set()
        if num_removed:
            removed = {nbrs[j] for j in rng.choice(len(nbrs),
                                                    size=num_removed,
                                                    replace=False)}
        kept.extend((j, i) for j in nbrs if j not in removed)
    return g.subgraph_edges(kept)
