# License: BSD 3 clause
"""
Helpers for parsing scenario files: value normalisation, file lookup and
the conversion of option values into graphs, functions and behaviours.
"""

import errno
from os.path import exists, isabs, join, normpath

from ruamel.yaml import YAML

from resopt.graph import generators, graph_from_dict, read_graph
from resopt.utils.constants import VALID_GENERATORS


def fix_json(json_string):
    """
    Normalise single quotes and capitalised booleans so the string can be
    read as JSON/YAML.

    Parameters
    ----------
    json_string : str

    Returns
    -------
    json_string : str
    """
    json_string = json_string.replace('True', 'true')
    json_string = json_string.replace('False', 'false')
    json_string = json_string.replace("'", '"')
    return json_string


def load_literal(text):
    """
    Parse an option value written as a JSON/YAML literal.
    """
    return YAML(typ='safe', pure=True).load(fix_json(text))


def locate_file(file_path, config_dir):
    """
    Resolve ``file_path`` relative to the scenario directory.

    Returns
    -------
    path : str
        The normalised path, or ``''`` for an empty ``file_path``.

    Raises
    ------
    IOError
        If the file does not exist.
    """
    if not file_path:
        return ''
    path_to_check = file_path if isabs(file_path) else normpath(join(config_dir,
                                                                     file_path))
    if not exists(path_to_check):
        raise IOError(errno.ENOENT, "File does not exist", path_to_check)
    return path_to_check


def graph_from_option(value, config_dir):
    """
    Build the scenario graph from a file reference, a generator call such
    as ``{"generator": "fig3", "K": 3}`` or an inline graph mapping.

    Raises
    ------
    ValueError
        If the generator is unknown or its parameters are invalid.
    TypeError
        If the value is neither a string nor a mapping.
    """
    if isinstance(value, str):
        return read_graph(locate_file(value, config_dir))
    if not isinstance(value, dict):
        raise TypeError('graph must be a file name or a mapping, not {}'
                        .format(type(value)))
    if 'generator' not in value:
        return graph_from_dict(value)
    params = dict(value)
    name = params.pop('generator')
    if name not in VALID_GENERATORS:
        raise ValueError('Unknown graph generator {!r}; expected one of {}'
                         .format(name, sorted(VALID_GENERATORS)))
    try:
        return getattr(generators, name)(**params)
    except TypeError as e:
        raise ValueError('Invalid parameters for generator {!r}: {}'.format(name, e))


def node_mapping(value, option, n):
    """
    Turn ``{"0": spec, "3": spec}`` into ``{0: spec, 3: spec}``, keeping a
    ``default`` key as is.

    Raises
    ------
    TypeError
        If ``value`` is not a mapping.
    ValueError
        If a key is not a node of the graph.
    """
    if not isinstance(value, dict):
        raise TypeError('{} must be a mapping from nodes to specs, not {}'
                        .format(option, type(value)))
    mapping = {}
    for key, spec in value.items():
        if key == 'default':
            mapping[key] = spec
            continue
        try:
            node = int(key)
        except (TypeError, ValueError):
            raise ValueError('{} has a key {!r} that is not a node id'.format(option, key))
        if not 0 <= node < n:
            raise ValueError('{} refers to node {} outside [0, {})'.format(option, node, n))
        mapping[node] = spec
    return mapping
