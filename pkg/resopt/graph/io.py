# License: BSD 3 clause
"""
Reading and writing graphs.

The JSON format is ``{"n": int, "directed": bool, "edges": [[u, v], ...],
"names": optional [str]}``; undirected files list every pair once. Graphs can
also be exported as DOT text for visualisation.
"""

import json

from resopt.utils.io import atomic_write

from .core import Graph

__all__ = ['graph_from_dict', 'graph_to_dict', 'read_graph', 'to_dot',
           'write_graph']


def graph_from_dict(data):
    """
    Build a graph from its JSON mapping.

    Raises
    ------
    KeyError
        If ``n`` or ``edges`` is missing.
    ValueError
        If an edge is malformed or out of range.
    """
    missing = [key for key in ('n', 'edges') if key not in data]
    if missing:
        raise KeyError('Graph data is missing {}'.format(missing))
    unknown = set(data).difference(['n', 'directed', 'edges', 'names'])
    if unknown:
        raise KeyError('Graph data has unknown fields {}'
                       .format(sorted(unknown)))
    edges = []
    for edge in data['edges']:
        if len(edge) != 2:
            raise ValueError('Edges must be pairs, got {}'.format(edge))
        edges.append((int(edge[0]), int(edge[1])))
    return Graph(int(data['n']), edges, names=data.get('names'),
                 directed=bool(data.get('directed', True)))


def graph_to_dict(g):
    if g.directed:
        edges = [list(edge) for edge in sorted(g.edges)]
    else:
        edges = [list(pair) for pair in g.undirected_pairs()]
    data = {'n': g.n, 'directed': g.directed, 'edges': edges}
    if g.has_names:
        data['names'] = list(g.names)
    return data


def read_graph(path):
    with open(path) as graph_file:
        return graph_from_dict(json.load(graph_file))


def write_graph(g, path):
    atomic_write(path, json.dumps(graph_to_dict(g), indent=2))


def to_dot(g, name='G'):
    """
    Graphviz (DOT) text for the graph, labelled with the node names.
    """
    connector = '->' if g.directed else '--'
    lines = ['digraph {} {{'.format(name) if g.directed else 'graph {} {{'.format(name)]
    for i in range(g.n):
        lines.append('    {} [label="{}"];'.format(i, g.name(i)))
    pairs = sorted(g.edges) if g.directed else g.undirected_pairs()
    for u, v in pairs:
        lines.append('    {} {} {};'.format(u, connector, v))
    lines.append('}')
    return '\n'.join(lines) + '\n'
