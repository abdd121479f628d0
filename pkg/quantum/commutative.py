"""
Strong generators for commutative CSEAs of E(C^d).

Commuting generators a_1..a_m share an eigenbasis V. In that basis each
a_k is a diagonal vector, so the span is a subspace of R^d whose rows
(one per basis vector) are points of R^m. Picking m rows R on which the
span projects bijectively, the preimages of δ_1..δ_m are candidate
generators b_i = Σ_k X_ki a_k with X = D_R⁻¹. They sum to I and are
linearly independent by construction; each must still be checked to be
an effect and strong. Row sets are tried in lexicographic order and the
first verified one wins; when none verifies, the diagonal data is
returned as a proof-gap instance.
"""

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.effects import Effect, is_effect, is_strong_effect, payload_combination
from kernel.errors import DecompositionError, HypothesisError
from kernel.hermitian import HermitianMatrix, hermitian_eig, max_norm
from kernel.settings import get_seed, resolve_tolerance
from quantum.decomposition import check_generators, is_commutative
from subalgebra.span import effect_coordinates, span_solve

# Eigenvalues of the random combination closer than this share a block
CLUSTER_GAP = 1e-6
# Off-diagonal residual allowed after simultaneous diagonalization
DIAGONAL_RESIDUAL = 1e-8
MAX_ROW_SETS = 100000


@dataclass(frozen=True, eq=False)
class StrongifyResult:
    """
    Outcome of strongify_commutative.

    Attributes:
        success: verified strong generators were found
        generators: the strong generators b_1..b_m (empty on failure)
        basis: common eigenbasis V (columns)
        diagonal: d x m matrix, column k = diagonal of V^H a_k V
        rows: chosen basis indices R (None on failure)
        proof_gap: why no candidate verified (empty on success)
        row_sets_tried: number of invertible row sets examined
        truncated: the search hit max_row_sets before exhausting the row sets
    """

    success: bool
    generators: List[Effect]
    basis: np.ndarray
    diagonal: np.ndarray
    rows: Optional[Tuple[int, ...]] = None
    proof_gap: str = ""
    row_sets_tried: int = 0
    residuals: dict = field(default_factory=dict)
    truncated: bool = False


def _clusters(values: np.ndarray, gap: float) -> List[List[int]]:
    groups = [[0]]
    for k in range(1, len(values)):
        if values[k] - values[k - 1] <= gap:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def _refine(columns: np.ndarray, arrays: Sequence[np.ndarray], start: int) -> np.ndarray:
    """Re-diagonalize generator `start` on a block, then recurse into its clusters."""
    if columns.shape[1] == 1 or start == len(arrays):
        return columns
    block = HermitianMatrix(columns.conj().T @ arrays[start] @ columns, symmetrize=True)
    dec = hermitian_eig(block)
    rotated = columns @ dec.eigenvectors
    parts = [_refine(rotated[:, idx], arrays, start + 1)
             for idx in _clusters(dec.eigenvalues, CLUSTER_GAP)]
    return np.hstack(parts)


def simultaneous_eigenbasis(arrays: Sequence[np.ndarray], seed: int) -> np.ndarray:
    """
    Common eigenbasis of commuting Hermitian matrices.

    Diagonalizes a random combination Σ t_k a_k (weights from `seed`), then
    re-diagonalizes each generator on every cluster of repeated eigenvalues.
    """
    rng = np.random.default_rng(seed)
    weights = rng.uniform(0.5, 1.5, size=len(arrays))
    combination = HermitianMatrix(sum(w * a for w, a in zip(weights, arrays)), symmetrize=True)
    dec = hermitian_eig(combination)
    parts = [_refine(dec.eigenvectors[:, idx], arrays, 0)
             for idx in _clusters(dec.eigenvalues, CLUSTER_GAP)]
    return np.hstack(parts)


def _candidates(generators: Sequence[Effect], inverse: np.ndarray, tol: float) -> Optional[List[Effect]]:
    payloads = [a.payload for a in generators]
    base = generators[0].algebra
    result = []
    for i in range(inverse.shape[1]):
        payload = payload_combination(list(inverse[:, i]), payloads)
        if not is_effect(base, payload, tol):
            return None
        b = Effect(base, payload, tol)
        if not is_strong_effect(b, tol):
            return None
        result.append(b)
    return result


def strongify_commutative(generators: Sequence[Effect], tol: Optional[float] = None,
                          seed: Optional[int] = None, verbose: bool = False,
                          max_row_sets: int = MAX_ROW_SETS) -> StrongifyResult:
    """
    Replace the generators of a commutative CSEA by strong generators.

    Args:
        generators: commuting, linearly independent quantum effects with
            I in their span
        tol: ε for every check
        seed: weights of the random combination (default: settings seed)
        verbose: print proof-gap instances
        max_row_sets: stop after this many invertible row sets

    Returns:
        StrongifyResult; success=False carries the diagonal data of the
        proof-gap instance

    Raises:
        HypothesisError: generators noncommuting, dependent, or I outside the span
        DecompositionError: simultaneous diagonalization failed

    Examples:
        >>> from quantum.decomposition import make_quantum_effect
        >>> a1 = make_quantum_effect(np.diag([0.5, 0.5, 0.0]))
        >>> a2 = make_quantum_effect(np.diag([0.5, 0.5, 1.0]))
        >>> result = strongify_commutative([a1, a2])
        >>> result.success, len(result.generators)
        (True, 2)
    """
    tol = resolve_tolerance(tol)
    generators = list(generators)
    base = check_generators(generators, tol)
    if not is_commutative(generators, tol):
        raise HypothesisError("generators do not commute")
    vectors = [effect_coordinates(a) for a in generators]
    if span_solve(base, vectors, effect_coordinates(Effect(base, base.unit_payload())), tol) is None:
        raise HypothesisError("I is not in the span of the generators")

    arrays = [a.payload.array for a in generators]
    basis = simultaneous_eigenbasis(arrays, get_seed() if seed is None else seed)
    rotated = [basis.conj().T @ a @ basis for a in arrays]
    off_diagonal = max(max_norm(r - np.diag(np.diag(r))) for r in rotated)
    if off_diagonal > DIAGONAL_RESIDUAL:
        raise DecompositionError(
            f"simultaneous diagonalization failed: off-diagonal residual {off_diagonal:.3e}")
    diagonal = np.column_stack([np.diag(r).real for r in rotated])

    d, m = diagonal.shape
    tried = 0
    truncated = False
    for rows in itertools.combinations(range(d), m):
        if tried >= max_row_sets:
            truncated = True
            break
        square = diagonal[list(rows), :]
        if abs(np.linalg.det(square)) <= tol:
            continue
        tried += 1
        inverse = np.linalg.inv(square)
        candidates = _candidates(generators, inverse, tol)
        if candidates is None:
            continue
        total = payload_combination([1] * m, [b.payload for b in candidates])
        residuals = {
            'diagonalization': off_diagonal,
            'sum': max_norm(total.array - np.eye(d)),
        }
        if residuals['sum'] > tol:
            continue
        return StrongifyResult(True, candidates, basis, diagonal, tuple(rows),
                               row_sets_tried=tried, residuals=residuals)

    if truncated:
        reason = (f"search stopped after {tried} invertible row sets of {m} among {d}; "
                  f"none examined gives effect-valued strong candidates")
    else:
        reason = f"no row set of {m} among {d} gives effect-valued strong candidates"
    if verbose:
        print(f"  proof-gap instance: {reason}")
        print(f"  diagonal data:\n{np.round(diagonal, 6)}")
    return StrongifyResult(False, [], basis, diagonal, proof_gap=reason, row_sets_tried=tried,
                           residuals={'diagonalization': off_diagonal}, truncated=truncated)


if __name__ == "__main__":
    from quantum.decomposition import make_quantum_effect
    from kernel.hermitian import random_unitary

    print("Testing strongify...")
    rng = np.random.default_rng(7)
    u = random_unitary(3, rng)
    a1 = make_quantum_effect(HermitianMatrix(np.diag([0.5, 0.5, 0.0])).conjugated(u))
    a2 = make_quantum_effect(HermitianMatrix(np.diag([0.5, 0.5, 1.0])).conjugated(u))
    result = strongify_commutative([a1, a2])
    print(f"✓ success: {result.success}, rows: {result.rows}")
    for b in result.generators:
        print(f"✓ spectrum {np.round(b.spectrum, 9).tolist()}")
