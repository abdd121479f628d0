"""
Random variables, level-set partitions, complementarity and exact
informational completeness.
"""

from .partition import (
    RandomVariable,
    Partition,
    partition_of,
    refine,
    common_refinement,
    is_complementary,
    is_strongly_complementary,
    distribution_rv,
    set_partitions,
    random_variable_of,
    fuzzy_event,
    random_variable_observable,
    observable_random_variable,
)
from .ic import (
    ICVerdict,
    SingleSweep,
    PairSweep,
    is_ic,
    verify_witness,
    injectivity_witness,
    complementarity_witness,
    sweep_singles,
    sweep_pairs,
)

__all__ = [
    'RandomVariable',
    'Partition',
    'partition_of',
    'refine',
    'common_refinement',
    'is_complementary',
    'is_strongly_complementary',
    'distribution_rv',
    'set_partitions',
    'random_variable_of',
    'fuzzy_event',
    'random_variable_observable',
    'observable_random_variable',
    'ICVerdict',
    'SingleSweep',
    'PairSweep',
    'is_ic',
    'verify_witness',
    'injectivity_witness',
    'complementarity_witness',
    'sweep_singles',
    'sweep_pairs',
]
