"""
Span engine with two numeric regimes.

Classical effects are their own exact coordinate vectors and every
decision goes through kernel.rational. Quantum effects are flattened to
d*d real coordinates and decided with partial-pivot elimination at
tolerance ε.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from algebra.effects import BaseAlgebra, Effect, payload_add, payload_scale
from kernel.errors import AlgebraMismatchError
from kernel.hermitian import (HermitianMatrix, float_rank, float_solve, flatten_hermitian,
                              hermitian_eig, unflatten_hermitian)
from kernel.rational import (RationalMatrix, independent_subset, nullspace_basis,
                             linear_combination, rational_rank, rational_solve)
from kernel.settings import resolve_tolerance


def coordinates(base: BaseAlgebra, payload):
    """Coordinate vector of a payload: the Fraction tuple, or the flattened matrix."""
    if base.is_classical:
        return tuple(payload)
    return flatten_hermitian(payload)


def effect_coordinates(a: Effect):
    return coordinates(a.algebra, a.payload)


def check_base(base: BaseAlgebra, effects: Sequence[Effect]):
    for a in effects:
        if a.algebra != base:
            raise AlgebraMismatchError(f"effect of {a.algebra} used in {base}")


def span_rank(base: BaseAlgebra, vectors: Sequence, tol: Optional[float] = None) -> int:
    if not vectors:
        return 0
    if base.is_classical:
        return rational_rank(RationalMatrix.from_rows(vectors))
    return float_rank(vectors, resolve_tolerance(tol))


def independent_indices(base: BaseAlgebra, vectors: Sequence,
                        tol: Optional[float] = None) -> List[int]:
    """Indices of the first linearly independent subsequence (first-seen order)."""
    if base.is_classical:
        return independent_subset(vectors)
    kept: List[int] = []
    for idx, v in enumerate(vectors):
        if span_rank(base, [vectors[k] for k in kept] + [v], tol) > len(kept):
            kept.append(idx)
    return kept


def span_solve(base: BaseAlgebra, vectors: Sequence, target,
               tol: Optional[float] = None):
    """
    Coefficients c with Σ c_k vectors[k] = target, or None when target is
    outside the span. Vectors are assumed linearly independent, so the
    answer is unique.
    """
    if base.is_classical:
        result = rational_solve(RationalMatrix.from_columns(vectors), target)
        return None if result is None else result.solution
    return float_solve(vectors, target, resolve_tolerance(tol))


def in_span(base: BaseAlgebra, vectors: Sequence, target, tol: Optional[float] = None) -> bool:
    """target ∈ span(vectors): appending it does not raise the rank."""
    return span_rank(base, list(vectors) + [target], tol) == span_rank(base, vectors, tol)


def intersection_basis(base: BaseAlgebra, first: Sequence, second: Sequence,
                       tol: Optional[float] = None) -> list:
    """
    Basis of span(first) ∩ span(second).

    Solves Σ x_i v_i - Σ y_j w_j = 0; each kernel vector contributes
    Σ x_i v_i. Both inputs must be linearly independent sets.
    """
    if base.is_classical:
        negated = [tuple(-c for c in w) for w in second]
        kernel = nullspace_basis(RationalMatrix.from_columns(list(first) + negated))
        p = len(first)
        vectors = [linear_combination(k[:p], list(first)) for k in kernel]
        return [vectors[i] for i in independent_indices(base, vectors)]

    tol = resolve_tolerance(tol)
    stacked = np.column_stack([np.asarray(v, dtype=float) for v in first]
                              + [-np.asarray(w, dtype=float) for w in second])
    _, singular, vh = np.linalg.svd(stacked)
    rank = int(np.sum(singular > tol))
    kernel = vh[rank:].conj()
    p = len(first)
    first_arr = np.column_stack([np.asarray(v, dtype=float) for v in first])
    vectors = [first_arr @ k[:p].real for k in kernel]
    return [vectors[i] for i in independent_indices(base, vectors, tol)]


def effect_from_vector(base: BaseAlgebra, vector, tol: Optional[float] = None) -> Effect:
    """
    Shift and rescale a span vector into [0, u].

    w = (v - min σ(v) u) / max σ(v - min σ(v) u); span{u, v} = span{u, w}.
    The zero vector (and multiples of u) map to u.
    """
    if base.is_classical:
        v = tuple(Fraction(c) for c in vector)
        low = min(v)
        shifted = tuple(c - low for c in v)
        top = max(shifted)
        if top == 0:
            return Effect(base, base.unit_payload())
        return Effect(base, tuple(c / top for c in shifted))

    matrix = unflatten_hermitian(vector, base.size)
    spectrum = hermitian_eig(matrix).eigenvalues
    shifted = payload_add(matrix, HermitianMatrix.identity(base.size).scaled(-spectrum[0]))
    top = spectrum[-1] - spectrum[0]
    if top <= resolve_tolerance(tol):
        return Effect(base, base.unit_payload())
    return Effect(base, payload_scale(shifted, 1.0 / top), tol)
