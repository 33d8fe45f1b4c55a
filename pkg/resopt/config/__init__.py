# License: BSD 3 clause
"""
The parser for scenario files.

Scenarios are INI files with the sections ``General``, ``Graph``,
``Dynamics``, ``Analysis`` and ``Output``. Structured values (lists and
mappings) are written as JSON/YAML literals. JSON scenario files are read
into the same parser, either nested by section or as one flat mapping whose
keys are routed to their sections.
"""

import errno
import itertools
import json
import logging
from os.path import dirname, exists, realpath

import configparser

from resopt.dynamics import SimConfig
from resopt.utils.constants import (DEFAULT_CAP,
                                    DEFAULT_CONSENSUS_TOL,
                                    DEFAULT_CONTRACTION_TOL,
                                    DEFAULT_SAFETY_EPS,
                                    DEFAULT_TAIL_FRACTION,
                                    VALID_CHECKS)

from .utils import fix_json, graph_from_option, load_literal, locate_file, node_mapping

__all__ = ['Scenario', 'ScenarioConfigParser', 'fix_json', 'locate_file',
           'parse_scenario_file']


class ScenarioConfigParser(configparser.ConfigParser):

    """
    A configuration file parser for scenarios. Option names are case
    insensitive, so ``F`` is stored as ``f``.
    """

    def __init__(self):

        # options without defaults that every scenario must give
        required = ['name', 'rounds', 'graph', 'functions']

        defaults = {'adversaries': '{}',
                    'checks': '["consensus"]',
                    'contraction_tol': str(DEFAULT_CONTRACTION_TOL),
                    'default_cap': str(DEFAULT_CAP),
                    'dynamics': 'lf',
                    'eta': '',
                    'f': '0',
                    'initial_states': '',
                    'log': '',
                    'output_dir': '',
                    'plot': 'True',
                    'robustness_r': '[]',
                    'robustness_rs': '[]',
                    'safety_eps': str(DEFAULT_SAFETY_EPS),
                    'seed': '0',
                    'step_schedule': '{"kind": "harmonic", "c": 1}',
                    'tail_fraction': str(DEFAULT_TAIL_FRACTION),
                    'tolerance': str(DEFAULT_CONSENSUS_TOL),
                    'weight_scheme': 'equal_neighbor'}

        correct_section_mapping = {'adversaries': 'Dynamics',
                                   'checks': 'Analysis',
                                   'contraction_tol': 'Analysis',
                                   'default_cap': 'Dynamics',
                                   'dynamics': 'Dynamics',
                                   'eta': 'Analysis',
                                   'f': 'Dynamics',
                                   'initial_states': 'Dynamics',
                                   'log': 'Output',
                                   'output_dir': 'Output',
                                   'plot': 'Output',
                                   'robustness_r': 'Analysis',
                                   'robustness_rs': 'Analysis',
                                   'safety_eps': 'Analysis',
                                   'seed': 'General',
                                   'step_schedule': 'Dynamics',
                                   'tail_fraction': 'Analysis',
                                   'tolerance': 'Analysis',
                                   'weight_scheme': 'Dynamics'}

        assert defaults.keys() == correct_section_mapping.keys()

        super(ScenarioConfigParser, self).__init__(defaults=defaults)
        self._required_options = required
        self._section_mapping = dict(correct_section_mapping,
                                     name='General',
                                     rounds='General',
                                     graph='Graph',
                                     functions='Dynamics')

    def _find_invalid_options(self):
        """
        Options that are neither required nor have a default.
        """
        valid_options = list(self._defaults.keys()) + self._required_options
        specified_options = set(itertools.chain(*[self.options(section)
                                                  for section in self.sections()]))
        return specified_options.difference(valid_options)

    def _find_ill_specified_options(self):
        """
        Find options given in a section other than their own, and options
        given in more than one section. An option set to its default value
        in the wrong section goes unnoticed, which is harmless.

        Returns
        -------
        incorrectly_specified_options : list of (str, str)
        multiply_specified_options : list of (str, list of str)
        """
        incorrectly_specified_options = []
        multiply_specified_options = []
        for option_name in self._section_mapping:
            default_value = self._defaults.get(option_name)
            used_sections = [section for section in self.sections()
                             if self.has_option(section, option_name) and
                             self.get(section, option_name) != default_value]
            if len(used_sections) > 1:
                multiply_specified_options.append((option_name, used_sections))
            elif used_sections and used_sections[0] != self._section_mapping[option_name]:
                incorrectly_specified_options.append((option_name, used_sections[0]))
        return incorrectly_specified_options, multiply_specified_options

    def validate(self):
        """
        Check that no unknown option is given, that no option appears in
        several sections and that every option sits in its own section.

        Raises
        ------
        KeyError
            If any of these checks fails.
        """
        invalid_options = self._find_invalid_options()
        if invalid_options:
            raise KeyError('Scenario file contains the following '
                           'unrecognized options: {}'
                           .format(sorted(invalid_options)))

        incorrectly_specified_options, multiply_specified_options = \
            self._find_ill_specified_options()
        if multiply_specified_options:
            raise KeyError('The following are defined in multiple sections: '
                           '{}'.format([t[0] for t in multiply_specified_options]))
        if incorrectly_specified_options:
            raise KeyError('The following are not defined in the appropriate '
                           'sections: {}'.format([t[0] for t in
                                                  incorrectly_specified_options]))

    def read_json(self, data):
        """
        Load a JSON scenario, nested by section or flat.

        Raises
        ------
        KeyError
            If a flat key is not a known option.
        """
        sections = set(self._section_mapping.values())
        if data and all(key in sections and isinstance(value, dict)
                        for key, value in data.items()):
            nested = data
        else:
            nested = {}
            for key, value in data.items():
                option = self.optionxform(key)
                if option not in self._section_mapping:
                    raise KeyError('Scenario file contains the following '
                                   'unrecognized options: {}'.format([key]))
                nested.setdefault(self._section_mapping[option], {})[key] = value
        self.read_dict({section: {key: value if isinstance(value, str)
                                  else json.dumps(value)
                                  for key, value in options.items()}
                        for section, options in nested.items()})

    def load(self, section, option):
        """
        The option value parsed as a JSON/YAML literal.
        """
        return load_literal(self.get(section, option))

    def require(self, section, option):
        if not self.has_option(section, option):
            raise ValueError('Scenario file does not contain {} in the [{}] '
                             'section.'.format(option, section))
        return self.get(section, option)


class Scenario(object):
    """
    A parsed scenario: the simulation configuration plus the analysis and
    output requests.
    """

    def __init__(self, name, sim_config, checks, tolerance, tail_fraction,
                 safety_eps, contraction_tol, eta, robustness_r, robustness_rs,
                 output_dir, log_path, plot, path=None):
        self.name = name
        self.sim_config = sim_config
        self.checks = list(checks)
        self.tolerance = tolerance
        self.tail_fraction = tail_fraction
        self.safety_eps = safety_eps
        self.contraction_tol = contraction_tol
        self.eta = eta
        self.robustness_r = list(robustness_r)
        self.robustness_rs = [tuple(pair) for pair in robustness_rs]
        self.output_dir = output_dir
        self.log_path = log_path
        self.plot = plot
        self.path = path

    @property
    def graph(self):
        return self.sim_config.graph

    def __repr__(self):
        return 'Scenario(name={!r}, rounds={}, nodes={})'.format(
            self.name, self.sim_config.rounds, self.graph.n)


def _setup_config_parser(config_path, validate=True):
    """
    Return a parser loaded from ``config_path``. Kept separate from
    ``parse_scenario_file`` to simplify testing.

    Raises
    ------
    IOError
        If the scenario file does not exist.
    """
    config = ScenarioConfigParser()
    if not exists(config_path):
        raise IOError(errno.ENOENT, "Scenario file does not exist", config_path)
    if config_path.endswith('.json'):
        with open(config_path) as scenario_file:
            data = json.load(scenario_file)
        if not isinstance(data, dict):
            raise TypeError('A JSON scenario must be an object, not {}'.format(type(data)))
        config.read_json(data)
    else:
        config.read(config_path)
    for section in sorted(set(config._section_mapping.values())):
        if not config.has_section(section):
            config.add_section(section)
    if validate:
        config.validate()
    return config


def _float_or_none(text):
    return float(text) if text.strip() else None


def parse_scenario_file(config_path, seed=None, log_level=logging.INFO):
    """
    Parse a scenario file.

    Parameters
    ----------
    config_path : str
        Path to an ``.cfg`` (INI) or ``.json`` scenario.
    seed : int, optional
        Overrides the seed given in the file.
        Defaults to ``None``.
    log_level : int, optional
        Defaults to ``logging.INFO``.

    Returns
    -------
    scenario : Scenario

    Raises
    ------
    IOError
        If the scenario or a file it refers to does not exist.
    KeyError
        If options are unknown or misplaced.
    ValueError
        If option values are invalid.
    TypeError
        If option values have the wrong type.
    """
    if config_path == "":
        raise IOError("The name of the scenario file is empty")
    logger = logging.getLogger(__name__)
    logger.setLevel(log_level)

    config_path = realpath(config_path)
    config_dir = dirname(config_path)
    config = _setup_config_parser(config_path)

    # 1. General
    name = config.require('General', 'name')
    rounds = int(config.require('General', 'rounds'))
    seed = config.getint('General', 'seed') if seed is None else int(seed)

    # 2. Graph
    graph = graph_from_option(load_literal(config.require('Graph', 'graph')), config_dir)

    # 3. Dynamics
    config.require('Dynamics', 'functions')
    default_cap = config.getfloat('Dynamics', 'default_cap')
    adversaries = node_mapping(config.load('Dynamics', 'adversaries'), 'adversaries',
                               graph.n)
    if 'default' in adversaries:
        raise ValueError('adversaries does not accept a default entry')
    functions = node_mapping(config.load('Dynamics', 'functions'), 'functions', graph.n)
    default_function = functions.pop('default', None)
    listed_adversaries = sorted(set(functions).intersection(adversaries))
    if listed_adversaries:
        raise ValueError('Adversarial nodes {} must not have functions'
                         .format(listed_adversaries))
    if default_function is not None:
        for i in range(graph.n):
            if i not in adversaries:
                functions.setdefault(i, default_function)

    initial_states = config.get('Dynamics', 'initial_states')
    initial_states = config.load('Dynamics', 'initial_states') if initial_states.strip() \
        else None
    weight_scheme = config.load('Dynamics', 'weight_scheme')
    sim_config = SimConfig(graph, functions,
                           adversaries=adversaries,
                           F=config.getint('Dynamics', 'f'),
                           dynamics=config.get('Dynamics', 'dynamics'),
                           weight_scheme=weight_scheme,
                           step_schedule=config.load('Dynamics', 'step_schedule'),
                           rounds=rounds,
                           seed=seed,
                           initial_states=initial_states,
                           name=name,
                           default_cap=default_cap)

    # 4. Analysis
    checks = config.load('Analysis', 'checks')
    if not isinstance(checks, list) or not set(checks).issubset(VALID_CHECKS):
        raise ValueError('checks must be a list drawn from {}, got {}'
                         .format(sorted(VALID_CHECKS), checks))
    tail_fraction = config.getfloat('Analysis', 'tail_fraction')
    if not 0 < tail_fraction <= 1:
        raise ValueError('tail_fraction must be in (0, 1], got {}'.format(tail_fraction))
    robustness_r = config.load('Analysis', 'robustness_r')
    robustness_rs = config.load('Analysis', 'robustness_rs')
    if (not isinstance(robustness_r, list) or
            not all(isinstance(r, int) for r in robustness_r)):
        raise TypeError('robustness_r must be a list of integers, got {}'
                        .format(robustness_r))
    if (not isinstance(robustness_rs, list) or
            not all(isinstance(pair, list) and len(pair) == 2 for pair in robustness_rs)):
        raise TypeError('robustness_rs must be a list of [r, s] pairs, got {}'
                        .format(robustness_rs))

    # 5. Output
    output_dir = config.get('Output', 'output_dir')
    log_path = config.get('Output', 'log')

    logger.debug('Parsed scenario %s from %s', name, config_path)
    return Scenario(name, sim_config, checks,
                    config.getfloat('Analysis', 'tolerance'),
                    tail_fraction,
                    config.getfloat('Analysis', 'safety_eps'),
                    config.getfloat('Analysis', 'contraction_tol'),
                    _float_or_none(config.get('Analysis', 'eta')),
                    robustness_r, robustness_rs,
                    output_dir, log_path,
                    config.getboolean('Output', 'plot'),
                    path=config_path)
