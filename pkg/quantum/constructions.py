"""
Explicit quantum constructions.

- noncommutative_observable: from two noncommuting dim-2 effects α, β
  with 0 outside their spectra, the observable {α/2, β/2, I - α/2 - β/2};
  none of its effects is strong, so its span is not a strong CSEA.
- block_strong_generators: from dim-2 effects b + c + d = I (spectra
  away from 0 and 1), three dim-5 strong generators e_k ⊕ block whose
  span is a strong CSEA, noncommutative whenever the blocks are.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from algebra.effects import BaseAlgebra, Effect
from kernel.errors import DimensionError, HypothesisError
from kernel.hermitian import HermitianMatrix, max_norm
from kernel.settings import resolve_tolerance
from observables.observable import Observable, validate_observable
from quantum.decomposition import (StrongDecomposition, commutator_norm, check_generators,
                                   is_commutative, make_quantum_effect, strong_decomposition)

QUBIT = BaseAlgebra.quantum(2)
BLOCK_DIM = 5


def _require_qubit(name: str, a: Effect):
    if a.algebra != QUBIT:
        raise DimensionError(f"{name} must be a 2x2 effect, got one of {a.algebra}")


def _spectrum_avoids(a: Effect, values, tol: float) -> bool:
    return all(abs(float(x) - v) > tol for x in a.spectrum for v in values)


@dataclass(frozen=True, eq=False)
class NoncommutativeObservable:
    """
    Observable {α/2, β/2, I - α/2 - β/2} with its post-check data.

    Attributes:
        observable: outcomes "1", "2", "3"
        commutators: pairwise commutator norms keyed "ij"
        spectra: eigenvalues of each effect
        strong: per-effect strength (all False for a valid construction)
    """

    observable: Observable
    commutators: Dict[str, float]
    spectra: List[List[float]]
    strong: List[bool] = field(default_factory=list)


def noncommutative_observable(alpha: Effect, beta: Effect,
                              tol: Optional[float] = None) -> NoncommutativeObservable:
    """
    Build {α/2, β/2, I - α/2 - β/2} and verify it.

    Post-checks: the three effects pairwise noncommute, are linearly
    independent, and have 0 and 1 outside every spectrum.

    Raises:
        DimensionError: α or β is not 2x2
        HypothesisError: α, β commute, 0 in a spectrum, or a post-check fails

    Examples:
        >>> alpha = make_quantum_effect([[0.6, 0.2], [0.2, 0.6]])
        >>> beta = make_quantum_effect([[0.7, 0], [0, 0.3]])
        >>> result = noncommutative_observable(alpha, beta)
        >>> result.commutators["12"] > 0.01
        True
    """
    tol = resolve_tolerance(tol)
    _require_qubit("alpha", alpha)
    _require_qubit("beta", beta)
    if commutator_norm(alpha, beta) <= tol:
        raise HypothesisError("alpha and beta commute")
    for name, x in (("alpha", alpha), ("beta", beta)):
        if x.spectrum[0] <= tol:
            raise HypothesisError(f"0 is in the spectrum of {name}")

    a1 = alpha.payload.scaled(0.5)
    a2 = beta.payload.scaled(0.5)
    a3 = HermitianMatrix.identity(2) - a1 - a2
    effects = [Effect(QUBIT, a, tol) for a in (a1, a2, a3)]
    observable = validate_observable(QUBIT, effects, tol=tol)

    commutators = {f"{i + 1}{j + 1}": commutator_norm(effects[i], effects[j])
                   for i in range(3) for j in range(i + 1, 3)}
    commuting = [key for key, value in commutators.items() if value <= tol]
    if commuting:
        raise HypothesisError(f"effects {commuting} commute")
    check_generators(effects, tol)
    for k, a in enumerate(effects):
        if not _spectrum_avoids(a, (0.0, 1.0), tol):
            raise HypothesisError(f"effect {k + 1} has 0 or 1 in its spectrum")

    return NoncommutativeObservable(
        observable=observable,
        commutators=commutators,
        spectra=[[float(x) for x in a.spectrum] for a in effects],
        strong=[bool(a.spectrum[-1] >= 1 - tol) for a in effects],
    )


@dataclass(frozen=True, eq=False)
class BlockConstruction:
    """
    Three dim-5 strong generators e_k ⊕ block and their decomposition.

    Attributes:
        generators: a_1, a_2, a_3
        commutative: the blocks (hence the generators) commute
        commutator: ‖a_1 a_2 - a_2 a_1‖_max
        decomposition: verified projection decomposition
    """

    generators: List[Effect]
    commutative: bool
    commutator: float
    decomposition: StrongDecomposition


def _embed(slot: int, block: np.ndarray) -> np.ndarray:
    m = np.zeros((BLOCK_DIM, BLOCK_DIM), dtype=np.complex128)
    m[slot, slot] = 1.0
    m[3:, 3:] = block
    return m


def block_strong_generators(b: Effect, c: Effect, d: Effect,
                            tol: Optional[float] = None) -> BlockConstruction:
    """
    Generators diag(1,0,0) ⊕ b, diag(0,1,0) ⊕ c, diag(0,0,1) ⊕ d of E(C^5).

    Commuting blocks are allowed; the result is then flagged commutative.

    Raises:
        DimensionError: a block is not 2x2
        HypothesisError: b + c + d ≠ I, or 0 or 1 in a block spectrum
    """
    tol = resolve_tolerance(tol)
    blocks = {"b": b, "c": c, "d": d}
    for name, x in blocks.items():
        _require_qubit(name, x)
    total = b.payload.array + c.payload.array + d.payload.array
    if max_norm(total - np.eye(2)) > tol:
        raise HypothesisError("blocks do not sum to I")
    for name, x in blocks.items():
        if not _spectrum_avoids(x, (0.0, 1.0), tol):
            raise HypothesisError(f"0 or 1 is in the spectrum of {name}")

    generators = [make_quantum_effect(_embed(k, x.payload.array), tol)
                  for k, x in enumerate((b, c, d))]
    decomposition = strong_decomposition(generators, tol)
    return BlockConstruction(
        generators=generators,
        commutative=is_commutative(generators, tol),
        commutator=commutator_norm(generators[0], generators[1]),
        decomposition=decomposition,
    )


if __name__ == "__main__":
    print("Testing constructions...")
    alpha = make_quantum_effect([[0.6, 0.2], [0.2, 0.6]])
    beta = make_quantum_effect([[0.7, 0], [0, 0.3]])
    result = noncommutative_observable(alpha, beta)
    print(f"✓ commutators: {result.commutators}")
    print(f"✓ strong effects: {result.strong}")

    a1, a2, a3 = result.observable.effects
    blocks = block_strong_generators(a1, a2, a3)
    print(f"✓ commutative: {blocks.commutative}, ‖[a1,a2]‖ = {blocks.commutator:.4f}")
    print(f"✓ residuals: {blocks.decomposition.residuals}")
