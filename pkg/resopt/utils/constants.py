# License: BSD 3 clause
"""
Constants shared across the simulator.
"""

import os

#: Largest node count accepted by the exponential checkers unless forced.
SIZE_GUARD = int(os.getenv('RESOPT_SIZE_GUARD', '16'))

MAX_CONCURRENT_PROCESSES = int(os.getenv('RESOPT_MAX_CONCURRENT_PROCESSES', '3'))

#: Gradient bound used when a function spec does not give one
DEFAULT_CAP = 100.0

#: Largest number of subsets accepted by the brute-force packing oracle
MAX_PACKING_SUBSETS = 20

#: Default exploration budget for the maximum r-local set search
DEFAULT_LOCAL_SET_BUDGET = 2000000

VALID_DYNAMICS = frozenset(['baseline', 'lf'])

VALID_WEIGHT_SCHEMES = frozenset(['equal_neighbor', 'metropolis'])

VALID_SCHEDULES = frozenset(['constant', 'harmonic', 'power', 'sequence'])

VALID_FUNCTION_KINDS = frozenset(['abs', 'affine', 'flatband', 'quadratic'])

VALID_BEHAVIORS = frozenset(['byzantine_split',
                             'fixed',
                             'oscillating',
                             'random',
                             'scripted',
                             'spoofed'])

VALID_CHECKS = frozenset(['consensus', 'contraction', 'safety'])

VALID_GENERATORS = frozenset(['complete',
                              'cycle',
                              'empty',
                              'erdos_renyi',
                              'fig1',
                              'fig3',
                              'grow_r_robust',
                              'path',
                              'star'])

VALID_REPRODUCTIONS = ('baseline',
                       'fig1-filter',
                       'fig3-bound',
                       'hijack',
                       'lf-consensus',
                       'necessity',
                       'oscillation',
                       'safety')

#: Default tolerances for post-hoc analysis
DEFAULT_CONSENSUS_TOL = 1e-3
DEFAULT_TAIL_FRACTION = 0.1
DEFAULT_SAFETY_EPS = 1e-2
DEFAULT_CONTRACTION_TOL = 1e-9
