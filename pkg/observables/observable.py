"""
Observables on a base algebra.

An observable is a finite family of effects indexed by outcome labels and
summing to the unit. This module also carries the constructions that only
need observables and strong spans:

- distribution: outcome probabilities in a state
- is_strong_observable / generator_observable
- coexistence_witness / coexistence_observable: joint measurement of two
  members of a strong span via the coordinatewise minimum
- ClassicalIsomorphism: the affine bijection of a strong span onto S_m
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.effects import (BaseAlgebra, Effect, State, complement, evaluate,
                             is_strong_effect, payload_combination, subtract)
from kernel.errors import AlgebraMismatchError, HypothesisError, NotAnObservableError
from kernel.hermitian import max_norm
from kernel.settings import resolve_tolerance
from subalgebra.csea import StrongSpan, member_from_coordinates, strong_coordinates
from subalgebra.span import check_base, effect_coordinates, independent_indices


@dataclass(frozen=True, eq=False)
class Observable:
    """
    Finite observable A: outcomes -> effects with Σ A(x) = u.

    Attributes:
        base: algebra the effects live in
        outcomes: outcome labels, in input order
        effects: one effect per outcome
    """

    base: BaseAlgebra
    outcomes: Tuple[str, ...]
    effects: Tuple[Effect, ...]

    def __getitem__(self, outcome: str) -> Effect:
        try:
            return self.effects[self.outcomes.index(outcome)]
        except ValueError:
            raise KeyError(outcome) from None

    def __len__(self):
        return len(self.outcomes)

    def items(self):
        return zip(self.outcomes, self.effects)

    def same_as(self, other: 'Observable', tol: Optional[float] = None) -> bool:
        """Same outcomes in the same order and pointwise equal effects (max-norm ≤ ε quantumly)."""
        if self.base != other.base or self.outcomes != other.outcomes:
            return False
        return all(a.close_to(b, tol) for a, b in zip(self.effects, other.effects))

    def __repr__(self):
        return f"Observable({self.base}, outcomes={list(self.outcomes)})"


def _default_labels(count: int) -> Tuple[str, ...]:
    return tuple(str(k + 1) for k in range(count))


def validate_observable(base: BaseAlgebra,
                        effects: Union[Sequence[Effect], Mapping[str, Effect]],
                        outcomes: Optional[Sequence[str]] = None,
                        tol: Optional[float] = None) -> Observable:
    """
    Build an observable, checking Σ A(x) = u.

    Args:
        base: base algebra
        effects: list of effects, or mapping outcome label -> effect
        outcomes: labels for a list input (default "1".."k")
        tol: quantum tolerance for the sum check

    Raises:
        NotAnObservableError: sum differs from u, no effects, or label problems
        AlgebraMismatchError: an effect from another algebra

    Examples:
        >>> S2 = BaseAlgebra.classical(2)
        >>> validate_observable(S2, [Effect(S2, ["1/2", 0]), Effect(S2, ["1/2", 1])])
        Observable(S_2, outcomes=['1', '2'])
    """
    if isinstance(effects, Mapping):
        if outcomes is None:
            outcomes = list(effects.keys())
        effects = [effects[x] for x in outcomes]
    effects = list(effects)
    if not effects:
        raise NotAnObservableError("not an observable: no effects")
    labels = tuple(str(x) for x in outcomes) if outcomes is not None else _default_labels(len(effects))
    if len(labels) != len(effects):
        raise NotAnObservableError(f"{len(labels)} outcome labels for {len(effects)} effects")
    if len(set(labels)) != len(labels):
        raise NotAnObservableError("not an observable: duplicate outcome labels")
    check_base(base, effects)

    total = payload_combination([1] * len(effects), [a.payload for a in effects])
    if base.is_classical:
        if total != base.unit_payload():
            raise NotAnObservableError("not an observable: effects do not sum to u")
    elif max_norm(total.array - np.eye(base.size)) > resolve_tolerance(tol):
        raise NotAnObservableError("not an observable: effects do not sum to I")
    return Observable(base, labels, tuple(effects))


def distribution(A: Observable, s: State) -> Dict[str, object]:
    """
    Probability distribution Φ_{A,s}: outcome -> s(A(x)).

    Values are Fractions (classical) or floats (quantum) and sum to 1.

    Examples:
        >>> S2 = BaseAlgebra.classical(2)
        >>> A = validate_observable(S2, [Effect(S2, ["1/2", 0]), Effect(S2, ["1/2", 1])])
        >>> distribution(A, State(S2, ["1/4", "3/4"]))
        {'1': Fraction(1, 8), '2': Fraction(7, 8)}
    """
    if s.algebra != A.base:
        raise AlgebraMismatchError(f"state of {s.algebra} for observable on {A.base}")
    return {x: evaluate(s, a) for x, a in A.items()}


def is_strong_observable(A: Observable, tol: Optional[float] = None) -> bool:
    """Effects linearly independent and each one strong."""
    vectors = [effect_coordinates(a) for a in A.effects]
    if len(independent_indices(A.base, vectors, tol)) != len(vectors):
        return False
    return all(is_strong_effect(a, tol) for a in A.effects)


def generator_observable(S: StrongSpan) -> Observable:
    """The generators of a strong span as an observable with outcomes "1".."m"."""
    return Observable(S.base, _default_labels(S.dim), tuple(S.generators))


@dataclass(frozen=True, eq=False)
class CoexistenceWitness:
    """
    Joint-measurement data for two effects a = a1 + c and b = b1 + c.

    d = (a1 + b1 + c)' completes the four-outcome observable.
    """

    a1: Effect
    b1: Effect
    c: Effect
    d: Effect


def coexistence_witness(S: StrongSpan, a: Effect, b: Effect,
                        tol: Optional[float] = None) -> CoexistenceWitness:
    """
    Witness that two members of a strong span coexist.

    With a = Σ λ_i a_i and b = Σ μ_i a_i the common part is
    c = Σ min(λ_i, μ_i) a_i; then a1 = a - c, b1 = b - c and
    a1 + b1 + c = Σ max(λ_i, μ_i) a_i <= u.

    Raises:
        HypothesisError: a or b is not a member of S

    Examples:
        >>> S2 = BaseAlgebra.classical(2)
        >>> from subalgebra.csea import strong_span
        >>> S = strong_span(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])])
        >>> w = coexistence_witness(S, Effect(S2, ["1/2", "1/4"]), Effect(S2, ["1/4", "3/4"]))
        >>> w.c.payload
        (Fraction(1, 4), Fraction(1, 4))
    """
    lam = strong_coordinates(S, a, tol)
    if lam is None:
        raise HypothesisError("first effect is not a member of the strong span")
    mu = strong_coordinates(S, b, tol)
    if mu is None:
        raise HypothesisError("second effect is not a member of the strong span")

    common = member_from_coordinates(S, [min(x, y) for x, y in zip(lam, mu)], tol)
    upper = member_from_coordinates(S, [max(x, y) for x, y in zip(lam, mu)], tol)
    return CoexistenceWitness(
        a1=subtract(a, common, tol),
        b1=subtract(b, common, tol),
        c=common,
        d=complement(upper),
    )


def coexistence_observable(w: CoexistenceWitness, tol: Optional[float] = None) -> Observable:
    """Four-outcome observable {a1, b1, c, d} whose marginals recover a and b."""
    return validate_observable(w.c.algebra, [w.a1, w.b1, w.c, w.d],
                               outcomes=("a1", "b1", "c", "d"), tol=tol)


@dataclass(frozen=True, eq=False)
class ClassicalIsomorphism:
    """
    Affine bijection J between a strong span and S_m.

    J(a) are the strong coordinates of a; J⁻¹(λ) = Σ λ_i a_i.
    Unit maps to (1, ..., 1) and complements map to u_m - J(a).
    """

    span: StrongSpan

    @property
    def target(self) -> BaseAlgebra:
        return BaseAlgebra.classical(self.span.dim)

    def forward(self, a: Effect, tol: Optional[float] = None) -> Tuple:
        lam = strong_coordinates(self.span, a, tol)
        if lam is None:
            raise HypothesisError("effect is not a member of the strong span")
        return lam

    def inverse(self, lambdas: Sequence, tol: Optional[float] = None) -> Effect:
        if len(lambdas) != self.span.dim:
            raise HypothesisError(f"expected {self.span.dim} coordinates, got {len(lambdas)}")
        if any(x < 0 or x > 1 for x in lambdas):
            raise HypothesisError("coordinates outside [0, 1]")
        return member_from_coordinates(self.span, lambdas, tol)


def classical_iso(S: StrongSpan) -> ClassicalIsomorphism:
    return ClassicalIsomorphism(S)


if __name__ == "__main__":
    from subalgebra.csea import strong_span

    print("Testing observables...")
    S2 = BaseAlgebra.classical(2)
    A = validate_observable(S2, [Effect(S2, ["1/2", 0]), Effect(S2, ["1/2", 1])])
    print(f"✓ {A}")
    print(f"✓ distribution: {distribution(A, State(S2, ['1/4', '3/4']))}")

    S = strong_span(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])])
    w = coexistence_witness(S, Effect(S2, ["1/2", "1/4"]), Effect(S2, ["1/4", "3/4"]))
    print(f"✓ coexistence: a1={w.a1} b1={w.b1} c={w.c} d={w.d}")
