"""
Quantum effects on C^d and the projection decomposition of strong CSEAs.

A strong CSEA of E(C^d) with generators a_1..a_m splits as
a_i = P_i + Q a_i Q, where P_i projects onto the eigenvalue-1 eigenspace
of a_i, the P_i are mutually orthogonal, and Q = I - ΣP_i. Every identity
of that decomposition is measured as a max-norm residual and checked
against ε before a StrongDecomposition is returned.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from algebra.effects import BaseAlgebra, Effect, is_strong_effect, payload_combination
from kernel.errors import (AlgebraMismatchError, DecompositionError, DimensionError,
                           HypothesisError)
from kernel.hermitian import HermitianMatrix, hermitian_eig, max_norm
from kernel.settings import resolve_tolerance
from subalgebra.span import effect_coordinates, independent_indices


def make_quantum_effect(matrix, tol: Optional[float] = None) -> Effect:
    """
    Wrap a d x d Hermitian matrix as an effect of E(C^d).

    Examples:
        >>> make_quantum_effect([[1, 0], [0, 0.5]]).algebra
        BaseAlgebra(kind='quantum', size=2)
    """
    if not isinstance(matrix, HermitianMatrix):
        matrix = HermitianMatrix(np.asarray(matrix, dtype=np.complex128))
    return Effect(BaseAlgebra.quantum(matrix.dim), matrix, tol)


def _require_quantum(*effects: Effect):
    for a in effects:
        if a.algebra.is_classical:
            raise HypothesisError(f"expected a quantum effect, got one of {a.algebra}")


def spectrum(a: Effect) -> List[float]:
    """Eigenvalues of a quantum effect, ascending."""
    _require_quantum(a)
    return [float(x) for x in a.spectrum]


def commutator_norm(a: Effect, b: Effect) -> float:
    """‖ab - ba‖_max."""
    _require_quantum(a, b)
    if a.algebra.size != b.algebra.size:
        raise DimensionError(f"dimensions {a.algebra.size} and {b.algebra.size}")
    x, y = a.payload.array, b.payload.array
    return max_norm(x @ y - y @ x)


def is_commutative(effects: Sequence[Effect], tol: Optional[float] = None) -> bool:
    """Every pair of effects commutes within ε."""
    tol = resolve_tolerance(tol)
    return all(commutator_norm(a, b) <= tol
               for i, a in enumerate(effects) for b in effects[i + 1:])


def is_projection(a: Effect, tol: Optional[float] = None) -> bool:
    """a² = a within ε; the sharp quantum effects."""
    _require_quantum(a)
    arr = a.payload.array
    return max_norm(arr @ arr - arr) <= resolve_tolerance(tol)


def range_basis(projection: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the range of a projection."""
    dec = hermitian_eig(HermitianMatrix(projection, symmetrize=True))
    return dec.eigenvectors[:, dec.eigenvalues > 0.5]


def check_generators(generators: Sequence[Effect], tol: float) -> BaseAlgebra:
    """
    Common checks for quantum generator lists: nonempty, one algebra,
    linearly independent.
    """
    if not generators:
        raise HypothesisError("no generators")
    _require_quantum(*generators)
    base = generators[0].algebra
    for a in generators:
        if a.algebra != base:
            raise AlgebraMismatchError(f"{a.algebra} vs {base}")
    vectors = [effect_coordinates(a) for a in generators]
    if len(independent_indices(base, vectors, tol)) != len(vectors):
        raise HypothesisError("generators are linearly dependent")
    return base


@dataclass(frozen=True, eq=False)
class StrongDecomposition:
    """
    a_i = P_i + Q a_i Q with P_1 + ... + P_m + Q = I.

    Attributes:
        projections: P_i, the eigenvalue-1 eigenspace projection of a_i
        q: I - ΣP_i
        remainders: b_i = Q a_i Q
        ranks: rank of each P_i
        residuals: measured max-norm residuals and the remainder margin
    """

    projections: List[np.ndarray]
    q: np.ndarray
    remainders: List[np.ndarray]
    ranks: List[int]
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def q_rank(self) -> int:
        return int(round(float(np.trace(self.q).real)))


def strong_decomposition(generators: Sequence[Effect],
                         tol: Optional[float] = None) -> StrongDecomposition:
    """
    Decompose the generators of a strong CSEA of E(C^d) into projections.

    Args:
        generators: linearly independent strong effects summing to I
        tol: ε for every check

    Returns:
        StrongDecomposition with all residuals within ε and every remainder
        spectrum on range(Q) at distance > ε from 0 and 1

    Raises:
        HypothesisError: a precondition fails (named in the message)
        DecompositionError: a residual exceeds ε
    """
    tol = resolve_tolerance(tol)
    base = check_generators(generators, tol)
    d, m = base.size, len(generators)

    total = payload_combination([1] * m, [a.payload for a in generators])
    if max_norm(total.array - np.eye(d)) > tol:
        raise HypothesisError("generators do not sum to I")
    for k, a in enumerate(generators):
        if not is_strong_effect(a, tol):
            raise HypothesisError(f"generator {k + 1} is not strong")
    if m > d:
        raise DecompositionError(f"decomposition failed: {m} generators exceed dimension {d}")

    arrays = [a.payload.array for a in generators]
    projections = [hermitian_eig(a.payload).eigenspace_projection(1 - tol) for a in generators]
    q = np.eye(d) - sum(projections)
    remainders = [q @ x @ q for x in arrays]

    residuals = {
        'orthogonality': max((max_norm(projections[i] @ projections[j])
                              for i in range(m) for j in range(m) if i != j), default=0.0),
        'sum': max_norm(sum(projections) + q - np.eye(d)),
        'q_idempotent': max_norm(q @ q - q),
        'reconstruction': max(max_norm(x - p - b)
                              for x, p, b in zip(arrays, projections, remainders)),
        'annihilation': max((max_norm(arrays[k] @ projections[i])
                             for i in range(m) for k in range(m) if k != i), default=0.0),
    }
    for name, value in residuals.items():
        if value > tol:
            raise DecompositionError(f"decomposition failed: {name} residual {value:.3e} > {tol:g}")

    margin = float('inf')
    basis = range_basis(q)
    if basis.shape[1] > 0:
        for b in remainders:
            compressed = HermitianMatrix(basis.conj().T @ b @ basis, symmetrize=True)
            values = hermitian_eig(compressed).eigenvalues
            margin = min(margin, float(values[0]), float(1 - values[-1]))
    residuals['remainder_margin'] = margin
    if margin <= tol:
        raise DecompositionError(
            f"decomposition failed: remainder spectrum within {margin:.3e} of 0 or 1")

    ranks = [int(round(float(np.trace(p).real))) for p in projections]
    if any(r == 0 for r in ranks):
        raise DecompositionError("decomposition failed: empty eigenvalue-1 eigenspace")
    return StrongDecomposition(projections, q, remainders, ranks, residuals)


if __name__ == "__main__":
    print("Testing strong decomposition...")
    a1 = make_quantum_effect(np.diag([1.0, 0.0, 0.3]))
    a2 = make_quantum_effect(np.diag([0.0, 1.0, 0.7]))
    dec = strong_decomposition([a1, a2])
    print(f"✓ ranks {dec.ranks}, Q rank {dec.q_rank}")
    for name, value in dec.residuals.items():
        print(f"✓ {name}: {value:.2e}")
