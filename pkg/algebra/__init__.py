"""
Base convex effect algebras: classical S_n and full quantum E(C^d).
"""

from .effects import (
    BaseAlgebra,
    Effect,
    State,
    CLASSICAL,
    QUANTUM,
    is_effect,
    complement,
    leq,
    perp,
    add,
    scale,
    is_sharp,
    is_strong_effect,
    evaluate,
    make_state,
    unit,
    zero,
)

__all__ = [
    'BaseAlgebra',
    'Effect',
    'State',
    'CLASSICAL',
    'QUANTUM',
    'is_effect',
    'complement',
    'leq',
    'perp',
    'add',
    'scale',
    'is_sharp',
    'is_strong_effect',
    'evaluate',
    'make_state',
    'unit',
    'zero',
]
