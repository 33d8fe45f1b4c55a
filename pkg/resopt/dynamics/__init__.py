# License: BSD 3 clause
"""
The simulation engine: weight schemes, step-size schedules, the local
filter, adversary behaviours, traces and the equivalent-weights rewriting.
"""

from .adversaries import (AdversaryBehavior,
                          ByzantineSplit,
                          FixedValue,
                          Oscillating,
                          RandomValue,
                          Scripted,
                          SpoofedFunction,
                          adversary_set_kind,
                          behavior_from_spec)
from .engine import SimConfig, StepResult, baseline_step, lf_step, run
from .equivalence import (BracketingError,
                          LimitVector,
                          PreconditionError,
                          check_equivalence_preconditions,
                          equivalent_weight_sequence,
                          equivalent_weights,
                          limit_vector_estimate)
from .filtering import FilterResult, lf_filter
from .schedules import (Constant,
                        Harmonic,
                        Power,
                        Sequence,
                        schedule_from_spec,
                        suffix_deltas)
from .trace import Trace
from .weights import (CustomWeights,
                      EqualNeighbor,
                      Metropolis,
                      metropolis_weights,
                      weight_scheme_from_spec)

__all__ = ['AdversaryBehavior', 'BracketingError', 'ByzantineSplit', 'Constant',
           'CustomWeights', 'EqualNeighbor', 'FilterResult', 'FixedValue',
           'Harmonic', 'LimitVector', 'Metropolis', 'Oscillating', 'Power',
           'PreconditionError', 'RandomValue', 'Scripted', 'Sequence',
           'SimConfig', 'SpoofedFunction', 'StepResult', 'Trace',
           'adversary_set_kind', 'baseline_step', 'behavior_from_spec',
           'check_equivalence_preconditions', 'equivalent_weight_sequence',
           'equivalent_weights', 'lf_filter', 'lf_step', 'limit_vector_estimate',
           'metropolis_weights', 'run', 'schedule_from_spec', 'suffix_deltas',
           'weight_scheme_from_spec']
