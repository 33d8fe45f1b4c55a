# License: BSD 3 clause
"""
Post-hoc checks on traces, maximum r-local sets, the Set Packing reduction
and the builders of the impossibility scenarios.
"""

from .checks import (ConsensusReport,
                     SafetyReport,
                     check_contraction,
                     check_envelope,
                     check_filter_safety,
                     check_safety,
                     consensus_report,
                     diameter_series,
                     trace_minimizer_hull)
from .local_sets import (LocalSetResult,
                         PerformanceBound,
                         max_r_local_set,
                         performance_bound)
from .necessity import (PerformanceScenarios,
                        build_necessity_scenario,
                        build_performance_scenarios,
                        verify_rooted_after_removal)
from .set_packing import (SetPackingInstance,
                          brute_force_set_packing,
                          independent_set_packing,
                          random_set_packing_instance,
                          read_set_packing,
                          reduction_check,
                          set_packing_to_graph)

__all__ = ['ConsensusReport', 'LocalSetResult', 'PerformanceBound',
           'PerformanceScenarios', 'SafetyReport', 'SetPackingInstance',
           'brute_force_set_packing', 'build_necessity_scenario',
           'build_performance_scenarios', 'check_contraction', 'check_envelope',
           'check_filter_safety', 'check_safety', 'consensus_report',
           'diameter_series', 'independent_set_packing', 'max_r_local_set',
           'performance_bound', 'random_set_packing_instance', 'read_set_packing',
           'reduction_check', 'set_packing_to_graph', 'trace_minimizer_hull',
           'verify_rooted_after_removal']
