# License: BSD 3 clause
"""
Directed graph model, generators, readers/writers and exact robustness
checkers.
"""

from .core import (Graph,
                   in_neighbors,
                   is_r_local,
                   is_r_reachable,
                   is_rooted,
                   is_strongly_connected,
                   remove_random_in_edges)
from .generators import (complete,
                         cycle,
                         empty,
                         erdos_renyi,
                         fig1,
                         fig3,
                         fig3_core_and_extras,
                         grow_r_robust,
                         path,
                         star)
from .io import graph_from_dict, graph_to_dict, read_graph, to_dot, write_graph
from .robustness import (RobustnessReport,
                         SizeGuardError,
                         check_size_guard,
                         is_r_robust,
                         is_rs_robust,
                         max_robustness,
                         robustness_report)

__all__ = ['Graph', 'RobustnessReport', 'SizeGuardError', 'check_size_guard',
           'complete', 'cycle', 'empty', 'erdos_renyi', 'fig1', 'fig3',
           'fig3_core_and_extras', 'graph_from_dict', 'graph_to_dict',
           'grow_r_robust', 'in_neighbors', 'is_r_local', 'is_r_reachable',
           'is_r_robust', 'is_rooted', 'is_rs_robust', 'is_strongly_connected',
           'max_robustness', 'path', 'read_graph', 'remove_random_in_edges',
           'robustness_report', 'star', 'to_dot', 'write_graph']
