# License: BSD 3 clause
"""
resopt simulates resilient distributed optimization: regular agents run a
filtered consensus-plus-subgradient update on a directed network while
adversarial agents send arbitrary values. It ships exact robustness
checkers, trace analysis, the constructions behind the impossibility
results and a command-line interface for scenario files.
"""

from .analysis import consensus_report, max_r_local_set, performance_bound
from .config import parse_scenario_file
from .dynamics import SimConfig, Trace, run
from .experiments import run_scenario, run_scenarios
from .graph import Graph, is_r_robust, is_rs_robust
from .objectives import average_minimizer, function_from_spec
from .version import VERSION, __version__

__all__ = ['Graph', 'SimConfig', 'Trace', 'VERSION', '__version__',
           'average_minimizer', 'consensus_report', 'function_from_spec',
           'is_r_robust', 'is_rs_robust', 'max_r_local_set', 'parse_scenario_file',
           'performance_bound', 'run', 'run_scenario', 'run_scenarios']
