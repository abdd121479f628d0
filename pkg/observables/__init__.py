"""
Observables, classical channels, postprocessing and coexistence.
"""

from .observable import (
    Observable,
    CoexistenceWitness,
    ClassicalIsomorphism,
    validate_observable,
    distribution,
    is_strong_observable,
    generator_observable,
    coexistence_witness,
    coexistence_observable,
    classical_iso,
)
from .channel import (
    Channel,
    PostprocessingResult,
    make_channel,
    identity_channel,
    apply_channel,
    find_postprocessing,
    is_postprocessing_of,
    pushforward,
)

__all__ = [
    'Observable',
    'CoexistenceWitness',
    'ClassicalIsomorphism',
    'validate_observable',
    'distribution',
    'is_strong_observable',
    'generator_observable',
    'coexistence_witness',
    'coexistence_observable',
    'classical_iso',
    'Channel',
    'PostprocessingResult',
    'make_channel',
    'identity_channel',
    'apply_channel',
    'find_postprocessing',
    'is_postprocessing_of',
    'pushforward',
]
