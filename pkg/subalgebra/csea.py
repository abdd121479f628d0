"""
Convex subeffect algebras (CSEAs).

A CSEA of a base algebra E is always E ∩ V_1 for a subspace V_1 containing
u, so it is represented by a linearly independent generator list spanning
V_1 together with the coefficients r of u in those generators.

Operations:
- from_generators / trivial_subalgebra: construction
- contains / coefficients: membership and coordinates
- meet / join / is_separated: lattice operations on subspaces
- strong_span / strong_coordinates: CSEAs spanned with [0,1]-coefficients
  by linearly independent strong effects summing to u
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from algebra.effects import (BaseAlgebra, Effect, is_strong_effect, payload_combination, unit)
from kernel.errors import AlgebraMismatchError, NotASubalgebraError
from kernel.settings import resolve_tolerance
from subalgebra.span import (check_base, coordinates, effect_coordinates, effect_from_vector,
                             in_span, independent_indices, intersection_basis, span_solve)


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """
    CSEA F = E ∩ span(generators).

    Attributes:
        base: ambient base algebra
        generators: linearly independent effects a_1..a_m
        unit_coefficients: r with Σ r_i a_i = u (Fractions or floats)
    """

    base: BaseAlgebra
    generators: Tuple[Effect, ...]
    unit_coefficients: tuple

    @property
    def dim(self) -> int:
        return len(self.generators)

    def vectors(self) -> list:
        return [effect_coordinates(a) for a in self.generators]

    def __repr__(self):
        return f"Subalgebra({self.base}, dim={self.dim})"


def from_generators(base: BaseAlgebra, effects: Sequence[Effect],
                    tol: Optional[float] = None) -> Subalgebra:
    """
    Build the CSEA generated by `effects`.

    The list is reduced to its first linearly independent subsequence, then
    u is solved for in the span.

    Raises:
        AlgebraMismatchError: an effect from another algebra
        NotASubalgebraError: u is not in the span
    """
    effects = list(effects)
    if not effects:
        raise NotASubalgebraError("not a CSEA: no generators")
    check_base(base, effects)
    vectors = [effect_coordinates(a) for a in effects]
    kept = independent_indices(base, vectors, tol)
    generators = tuple(effects[i] for i in kept)
    r = span_solve(base, [vectors[i] for i in kept], coordinates(base, base.unit_payload()), tol)
    if r is None:
        raise NotASubalgebraError("not a CSEA: unit missing from span")
    if not base.is_classical:
        r = tuple(float(c) for c in r)
    return Subalgebra(base, generators, tuple(r))


def trivial_subalgebra(base: BaseAlgebra) -> Subalgebra:
    """The separated core {λu : λ in [0, 1]}."""
    return from_generators(base, [unit(base)])


def contains(F: Subalgebra, a: Effect, tol: Optional[float] = None) -> bool:
    """a ∈ F iff a is an effect of the base and lies in span(generators)."""
    if a.algebra != F.base:
        return False
    return in_span(F.base, F.vectors(), effect_coordinates(a), tol)


def coefficients(F: Subalgebra, a: Effect, tol: Optional[float] = None):
    """Coefficients of a in F's generators, or None when a is not in F."""
    if a.algebra != F.base:
        return None
    c = span_solve(F.base, F.vectors(), effect_coordinates(a), tol)
    if c is None:
        return None
    return tuple(c) if F.base.is_classical else tuple(float(x) for x in c)


def _check_pair(F1: Subalgebra, F2: Subalgebra):
    if F1.base != F2.base:
        raise AlgebraMismatchError(f"{F1.base} vs {F2.base}")


def meet(F1: Subalgebra, F2: Subalgebra, tol: Optional[float] = None) -> Subalgebra:
    """
    F1 ∧ F2 = F1 ∩ F2 = E ∩ (V_1 ∩ V_2).

    The intersection basis is turned into effects by shifting and rescaling
    each vector into [0, u]; u always lies in V_1 ∩ V_2.
    """
    _check_pair(F1, F2)
    basis = intersection_basis(F1.base, F1.vectors(), F2.vectors(), tol)
    effects = [unit(F1.base)] + [effect_from_vector(F1.base, v, tol) for v in basis]
    return from_generators(F1.base, effects, tol)


def join(F1: Subalgebra, F2: Subalgebra, tol: Optional[float] = None) -> Subalgebra:
    """F1 ∨ F2 = E ∩ span(V_1 ∪ V_2)."""
    _check_pair(F1, F2)
    return from_generators(F1.base, list(F1.generators) + list(F2.generators), tol)


def is_separated(F1: Subalgebra, F2: Subalgebra, tol: Optional[float] = None) -> bool:
    """F1 and F2 are separated when their meet is the core {λu}."""
    return meet(F1, F2, tol).dim == 1


@dataclass(frozen=True, eq=False)
class StrongSpan:
    """
    CSEA {Σ λ_i a_i : λ_i in [0, 1]} with a_i linearly independent, strong,
    and Σ a_i = u. Only these definitional conditions are certified.
    """

    subalgebra: Subalgebra

    @property
    def base(self) -> BaseAlgebra:
        return self.subalgebra.base

    @property
    def generators(self) -> Tuple[Effect, ...]:
        return self.subalgebra.generators

    @property
    def dim(self) -> int:
        return self.subalgebra.dim

    def __repr__(self):
        return f"StrongSpan({self.base}, dim={self.dim})"


def strong_span(base: BaseAlgebra, effects: Sequence[Effect],
                tol: Optional[float] = None) -> StrongSpan:
    """
    Certify `effects` as generators of a strong CSEA.

    Raises:
        NotASubalgebraError: naming the failed condition (dependence,
            sum different from u, non-strong generator)
    """
    effects = list(effects)
    if not effects:
        raise NotASubalgebraError("strong span needs at least one generator")
    check_base(base, effects)
    tol = resolve_tolerance(tol)
    vectors = [effect_coordinates(a) for a in effects]
    if len(independent_indices(base, vectors, tol)) != len(effects):
        raise NotASubalgebraError("generators are linearly dependent")

    total = payload_combination([1] * len(effects), [a.payload for a in effects])
    if base.is_classical:
        if total != base.unit_payload():
            raise NotASubalgebraError("generators do not sum to u")
    elif np.max(np.abs(total.array - np.eye(base.size))) > tol:
        raise NotASubalgebraError("generators do not sum to I")

    for k, a in enumerate(effects):
        if not is_strong_effect(a, tol):
            raise NotASubalgebraError(f"generator {k + 1} is not strong")

    if base.is_classical:
        ones = tuple(Fraction(1) for _ in effects)
    else:
        ones = tuple(1.0 for _ in effects)
    return StrongSpan(Subalgebra(base, tuple(effects), ones))


def strong_coordinates(S: StrongSpan, a: Effect, tol: Optional[float] = None):
    """
    λ with a = Σ λ_i a_i and every λ_i in [0, 1], or None.

    Unique by linear independence. Quantum coordinates within ε of the
    interval are clipped into it.
    """
    if a.algebra != S.base:
        return None
    c = span_solve(S.base, S.subalgebra.vectors(), effect_coordinates(a), tol)
    if c is None:
        return None
    if S.base.is_classical:
        if all(0 <= x <= 1 for x in c):
            return tuple(c)
        return None
    tol = resolve_tolerance(tol)
    if all(-tol <= x <= 1 + tol for x in c):
        return tuple(float(min(1.0, max(0.0, x))) for x in c)
    return None


def member_from_coordinates(S: StrongSpan, lambdas: Sequence, tol: Optional[float] = None) -> Effect:
    """Σ λ_i a_i for λ in [0, 1]^m."""
    payload = payload_combination(list(lambdas), [a.payload for a in S.generators])
    return Effect(S.base, payload, tol)
