"""
Quantum effects on C^d: spectra, strong decompositions, explicit
constructions and strong generators for commutative CSEAs.
"""

from .decomposition import (
    StrongDecomposition,
    make_quantum_effect,
    spectrum,
    commutator_norm,
    is_commutative,
    is_projection,
    strong_decomposition,
)
from .constructions import (
    NoncommutativeObservable,
    BlockConstruction,
    noncommutative_observable,
    block_strong_generators,
)
from .commutative import (
    StrongifyResult,
    simultaneous_eigenbasis,
    strongify_commutative,
)

__all__ = [
    'StrongDecomposition',
    'make_quantum_effect',
    'spectrum',
    'commutator_norm',
    'is_commutative',
    'is_projection',
    'strong_decomposition',
    'NoncommutativeObservable',
    'BlockConstruction',
    'noncommutative_observable',
    'block_strong_generators',
    'StrongifyResult',
    'simultaneous_eigenbasis',
    'strongify_commutative',
]
