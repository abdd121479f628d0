"""
Numerical kernel - exact rationals for the classical side, Jacobi
diagonalization for the quantum side.
"""

from .errors import (
    EffectAlgebraError,
    DimensionError,
    NotHermitianError,
    NotAnEffectError,
    NotAStateError,
    AlgebraMismatchError,
    NotASubalgebraError,
    NotAnObservableError,
    ChannelError,
    HypothesisError,
    DecompositionError,
    DocumentError,
)
from .rational import (
    RationalMatrix,
    SolveResult,
    rational_rank,
    rational_solve,
    nullspace_basis,
    to_fraction,
)
from .hermitian import (
    HermitianMatrix,
    EigenDecomposition,
    hermitian_eig,
    flatten_hermitian,
)

__all__ = [
    'EffectAlgebraError',
    'DimensionError',
    'NotHermitianError',
    'NotAnEffectError',
    'NotAStateError',
    'AlgebraMismatchError',
    'NotASubalgebraError',
    'NotAnObservableError',
    'ChannelError',
    'HypothesisError',
    'DecompositionError',
    'DocumentError',
    'RationalMatrix',
    'SolveResult',
    'rational_rank',
    'rational_solve',
    'nullspace_basis',
    'to_fraction',
    'HermitianMatrix',
    'EigenDecomposition',
    'hermitian_eig',
    'flatten_hermitian',
]
