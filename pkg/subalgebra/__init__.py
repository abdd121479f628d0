"""
Convex subeffect algebras: generator representation, membership, lattice
operations and strong spans.
"""

from .csea import (
    Subalgebra,
    StrongSpan,
    from_generators,
    trivial_subalgebra,
    contains,
    coefficients,
    meet,
    join,
    is_separated,
    strong_span,
    strong_coordinates,
    member_from_coordinates,
)

__all__ = [
    'Subalgebra',
    'StrongSpan',
    'from_generators',
    'trivial_subalgebra',
    'contains',
    'coefficients',
    'meet',
    'join',
    'is_separated',
    'strong_span',
    'strong_coordinates',
    'member_from_coordinates',
]
