"""
Base convex effect algebras, effects and states.

Two base algebras are supported:
- Classical(n): S_n = [0, u_n] in R^n with the coordinatewise cone,
  payloads are tuples of Fractions (exact)
- Quantum(d): E(C^d) = [0, I] in the self-adjoint d x d matrices with
  the positive-operator cone, payloads are HermitianMatrix (tolerance ε)

Every predicate of the ordered-space layer lives here: the interval test,
complement, order, orthogonality, sharpness, strength and evaluation by a
state.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from kernel.errors import (AlgebraMismatchError, DimensionError, NotAnEffectError,
                           NotAStateError)
from kernel.hermitian import HermitianMatrix, hermitian_eig, max_norm
from kernel.rational import dot, to_fraction, to_vector, vec_add, vec_scale, vec_sub
from kernel.settings import resolve_tolerance

CLASSICAL = 'classical'
QUANTUM = 'quantum'

Payload = Union[tuple, HermitianMatrix]


@dataclass(frozen=True)
class BaseAlgebra:
    """
    One of the two base CEAs.

    Attributes:
        kind: CLASSICAL or QUANTUM
        size: n for Classical(n), d for Quantum(d)
    """

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (CLASSICAL, QUANTUM):
            raise ValueError(f"unknown algebra kind: {self.kind!r}")
        if self.size < 1:
            raise DimensionError(f"algebra size must be >= 1, got {self.size}")

    @classmethod
    def classical(cls, n: int) -> 'BaseAlgebra':
        return cls(CLASSICAL, n)

    @classmethod
    def quantum(cls, d: int) -> 'BaseAlgebra':
        return cls(QUANTUM, d)

    @property
    def is_classical(self) -> bool:
        return self.kind == CLASSICAL

    @property
    def vector_dim(self) -> int:
        """Real dimension of the ambient ordered space (n, or d*d)."""
        return self.size if self.is_classical else self.size * self.size

    def unit_payload(self) -> Payload:
        if self.is_classical:
            return tuple(Fraction(1) for _ in range(self.size))
        return HermitianMatrix.identity(self.size)

    def zero_payload(self) -> Payload:
        if self.is_classical:
            return tuple(Fraction(0) for _ in range(self.size))
        return HermitianMatrix.zeros(self.size)

    def __str__(self):
        return f"S_{self.size}" if self.is_classical else f"E(C^{self.size})"


def coerce_payload(algebra: BaseAlgebra, candidate) -> Payload:
    """
    Convert raw input to the algebra's payload type.

    Classical: any sequence of rationals ("p/q" strings allowed).
    Quantum: HermitianMatrix or nested lists of numbers / [re, im] pairs.

    Raises:
        DimensionError: shape does not match the algebra
    """
    if algebra.is_classical:
        if isinstance(candidate, HermitianMatrix):
            raise DimensionError("matrix payload given to a classical algebra")
        vec = to_vector(candidate)
        if len(vec) != algebra.size:
            raise DimensionError(f"expected {algebra.size} coordinates, got {len(vec)}")
        return vec
    if isinstance(candidate, HermitianMatrix):
        matrix = candidate
    elif isinstance(candidate, np.ndarray):
        matrix = HermitianMatrix(candidate)
    else:
        matrix = HermitianMatrix.from_entries(candidate)
    if matrix.dim != algebra.size:
        raise DimensionError(f"expected a {algebra.size}x{algebra.size} matrix, got dim {matrix.dim}")
    return matrix


def payload_add(x: Payload, y: Payload) -> Payload:
    if isinstance(x, HermitianMatrix):
        return x + y
    return vec_add(x, y)


def payload_sub(x: Payload, y: Payload) -> Payload:
    if isinstance(x, HermitianMatrix):
        return x - y
    return vec_sub(x, y)


def payload_scale(x: Payload, factor) -> Payload:
    if isinstance(x, HermitianMatrix):
        return x.scaled(float(factor))
    return vec_scale(x, factor)


def payload_combination(coefficients: Sequence, payloads: Sequence[Payload]) -> Payload:
    """Σ c_i x_i over payloads of one algebra."""
    if len(coefficients) != len(payloads) or not payloads:
        raise DimensionError("need one coefficient per payload")
    total = payload_scale(payloads[0], coefficients[0])
    for c, x in zip(coefficients[1:], payloads[1:]):
        total = payload_add(total, payload_scale(x, c))
    return total


def payload_spectrum(x: Payload) -> np.ndarray:
    """Ascending eigenvalues of a quantum payload."""
    return hermitian_eig(x).eigenvalues


def _in_interval(algebra: BaseAlgebra, payload: Payload, tol: float) -> bool:
    if algebra.is_classical:
        return all(0 <= v <= 1 for v in payload)
    spectrum = payload_spectrum(payload)
    return bool(spectrum[0] >= -tol and spectrum[-1] <= 1 + tol)


def _in_cone(algebra: BaseAlgebra, payload: Payload, tol: float) -> bool:
    if algebra.is_classical:
        return all(v >= 0 for v in payload)
    return bool(payload_spectrum(payload)[0] >= -tol)


def is_effect(algebra: BaseAlgebra, candidate, tol: Optional[float] = None) -> bool:
    """
    Interval test 0 <= candidate <= u.

    Classical coordinates are checked exactly; quantum spectra must lie in
    [-ε, 1 + ε].

    Raises:
        DimensionError: payload shape does not match the algebra

    Examples:
        >>> is_effect(BaseAlgebra.classical(2), ["1/2", "1/2"])
        True
        >>> is_effect(BaseAlgebra.classical(2), ["3/2", 0])
        False
    """
    payload = coerce_payload(algebra, candidate)
    return _in_interval(algebra, payload, resolve_tolerance(tol))


class Effect:
    """
    Element of [0, u] in a base algebra.

    Args:
        algebra: the base algebra
        payload: raw coordinates / matrix (coerced via coerce_payload)
        tol: quantum tolerance used for the validity check

    Raises:
        NotAnEffectError: payload outside the interval
    """

    def __init__(self, algebra: BaseAlgebra, payload, tol: Optional[float] = None):
        payload = coerce_payload(algebra, payload)
        if not _in_interval(algebra, payload, resolve_tolerance(tol)):
            raise NotAnEffectError(f"payload is not an effect of {algebra}")
        self.algebra = algebra
        self.payload = payload

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Ascending eigenvalues (quantum) or sorted coordinates as floats (classical)."""
        if self.algebra.is_classical:
            return np.array(sorted(float(v) for v in self.payload))
        return payload_spectrum(self.payload)

    def __eq__(self, other):
        if not isinstance(other, Effect) or other.algebra != self.algebra:
            return NotImplemented
        if self.algebra.is_classical:
            return self.payload == other.payload
        return bool(np.array_equal(self.payload.array, other.payload.array))

    __hash__ = None

    def close_to(self, other: 'Effect', tol: Optional[float] = None) -> bool:
        """Exact equality classically, max-norm within ε quantumly."""
        _check_same(self, other)
        if self.algebra.is_classical:
            return self.payload == other.payload
        return max_norm(self.payload.array - other.payload.array) <= resolve_tolerance(tol)

    def __repr__(self):
        if self.algebra.is_classical:
            coords = ", ".join(str(v) for v in self.payload)
            return f"Effect({self.algebra}: ({coords}))"
        return f"Effect({self.algebra}: spectrum={np.round(self.spectrum, 6).tolist()})"


def _check_same(a, b):
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"{a.algebra} vs {b.algebra}")


def unit(algebra: BaseAlgebra) -> Effect:
    return Effect(algebra, algebra.unit_payload())


def zero(algebra: BaseAlgebra) -> Effect:
    return Effect(algebra, algebra.zero_payload())


def complement(a: Effect) -> Effect:
    """
    Complement a' = u - a.

    Examples:
        >>> complement(Effect(BaseAlgebra.classical(3), [1, 0, "1/2"])).payload
        (Fraction(0, 1), Fraction(1, 1), Fraction(1, 2))
    """
    return Effect(a.algebra, payload_sub(a.algebra.unit_payload(), a.payload))


def leq(a: Effect, b: Effect, tol: Optional[float] = None) -> bool:
    """a <= b in the cone order (b - a positive)."""
    _check_same(a, b)
    return _in_cone(a.algebra, payload_sub(b.payload, a.payload), resolve_tolerance(tol))


def perp(a: Effect, b: Effect, tol: Optional[float] = None) -> bool:
    """a ⊥ b iff a + b is still an effect (equivalently a <= b')."""
    _check_same(a, b)
    return _in_interval(a.algebra, payload_add(a.payload, b.payload), resolve_tolerance(tol))


def add(a: Effect, b: Effect, tol: Optional[float] = None) -> Effect:
    """Orthogonal sum a ⊕ b. Raises NotAnEffectError unless a ⊥ b."""
    _check_same(a, b)
    if not perp(a, b, tol):
        raise NotAnEffectError("effects are not orthogonal; sum leaves [0, u]")
    return Effect(a.algebra, payload_add(a.payload, b.payload), tol)


def subtract(a: Effect, b: Effect, tol: Optional[float] = None) -> Effect:
    """a - b for b <= a."""
    _check_same(a, b)
    return Effect(a.algebra, payload_sub(a.payload, b.payload), tol)


def scale(a: Effect, factor, tol: Optional[float] = None) -> Effect:
    """λa for λ in [0, 1]."""
    if a.algebra.is_classical:
        factor = to_fraction(factor)
    if not (0 <= factor <= 1):
        raise NotAnEffectError(f"scaling factor {factor} outside [0, 1]")
    return Effect(a.algebra, payload_scale(a.payload, factor), tol)


def is_sharp(a: Effect, tol: Optional[float] = None) -> bool:
    """
    a ∧ a' = 0, decided by the kind-specific criterion.

    Classical: every coordinate is exactly 0 or 1.
    Quantum: a is a projection, ‖a² - a‖_max <= ε.
    """
    if a.algebra.is_classical:
        return all(v == 0 or v == 1 for v in a.payload)
    arr = a.payload.array
    return max_norm(arr @ arr - arr) <= resolve_tolerance(tol)


def is_strong_effect(a: Effect, tol: Optional[float] = None) -> bool:
    """
    a is not dominated by λu for any λ < 1.

    Classical: some coordinate equals 1 exactly.
    Quantum: 1 is in the spectrum, max eigenvalue >= 1 - ε.
    """
    if a.algebra.is_classical:
        return max(a.payload) == 1
    return bool(a.spectrum[-1] >= 1 - resolve_tolerance(tol))


class State:
    """
    Normalized positive functional on a base algebra.

    Classical payload: probability vector of Fractions summing to exactly 1.
    Quantum payload: density matrix, spectrum >= -ε, trace within ε of 1.

    Raises:
        NotAStateError: payload fails the conditions above
    """

    __slots__ = ('algebra', 'payload')

    def __init__(self, algebra: BaseAlgebra, payload, tol: Optional[float] = None):
        payload = coerce_payload(algebra, payload)
        tol = resolve_tolerance(tol)
        if algebra.is_classical:
            if any(v < 0 for v in payload) or sum(payload) != 1:
                raise NotAStateError("not a probability vector")
        else:
            if payload_spectrum(payload)[0] < -tol:
                raise NotAStateError("density matrix is not positive semidefinite")
            if abs(payload.trace() - 1.0) > tol:
                raise NotAStateError(f"density matrix trace {payload.trace():.12g} != 1")
        self.algebra = algebra
        self.payload = payload

    def __repr__(self):
        if self.algebra.is_classical:
            return f"State({self.algebra}: ({', '.join(str(v) for v in self.payload)}))"
        return f"State({self.algebra})"


def make_state(algebra: BaseAlgebra, payload, tol: Optional[float] = None) -> State:
    return State(algebra, payload, tol)


def maximally_mixed(algebra: BaseAlgebra) -> State:
    """Uniform distribution / I/d."""
    if algebra.is_classical:
        return State(algebra, [Fraction(1, algebra.size)] * algebra.size)
    return State(algebra, HermitianMatrix.identity(algebra.size).scaled(1.0 / algebra.size))


def evaluate(s: State, a: Effect):
    """
    Probability s(a) that effect a occurs in state s.

    Returns:
        Fraction (classical, exact) or float (quantum, Re tr(ρa))

    Examples:
        >>> S2 = BaseAlgebra.classical(2)
        >>> evaluate(State(S2, ["1/4", "3/4"]), Effect(S2, ["1/2", 0]))
        Fraction(1, 8)
    """
    _check_same(s, a)
    if s.algebra.is_classical:
        return dot(s.payload, a.payload)
    return float(np.trace(s.payload.array @ a.payload.array).real)


if __name__ == "__main__":
    print("Testing effects...")
    S3 = BaseAlgebra.classical(3)
    a = Effect(S3, [1, 0, "1/2"])
    print(f"✓ complement: {complement(a)}")
    print(f"✓ sharp: {is_sharp(a)}, strong: {is_strong_effect(a)}")

    Q2 = BaseAlgebra.quantum(2)
    q = Effect(Q2, HermitianMatrix.diagonal([1.0, 0.3]))
    print(f"✓ quantum complement: {complement(q)}")
    print(f"✓ quantum strong: {is_strong_effect(q)}")
