"""
Classical channels and postprocessing.

A channel is a row-stochastic matrix ν indexed by (input outcome x,
output outcome y). Applying it to an observable A gives
(ν∘A)(y) = Σ_x ν_xy A(x).

find_postprocessing decides whether B = ν∘A for some channel ν when A has
linearly independent effects: each B(y) has unique coordinates in
span(A), and those coordinates are the column ν_{·y}.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from kernel.errors import AlgebraMismatchError, ChannelError, HypothesisError
from kernel.rational import to_fraction
from kernel.settings import resolve_tolerance
from algebra.effects import Effect, payload_combination
from observables.observable import Observable, validate_observable
from subalgebra.span import effect_coordinates, independent_indices, span_solve


@dataclass(frozen=True)
class Channel:
    """
    Row-stochastic matrix with labelled rows and columns.

    Exact channels hold Fractions and sum rows exactly; channels found on
    the quantum side hold floats and sum rows within ε.

    Attributes:
        inputs: row labels x (outcomes of the observable it acts on)
        outputs: column labels y
        matrix: rows of entries ν_xy
    """

    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    matrix: Tuple[Tuple, ...]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for row in self.matrix for v in row)

    def entry(self, x: str, y: str):
        return self.matrix[self.inputs.index(x)][self.outputs.index(y)]

    def column(self, y: str) -> Tuple:
        j = self.outputs.index(y)
        return tuple(row[j] for row in self.matrix)


def make_channel(rows: Sequence[Sequence], inputs: Optional[Sequence[str]] = None,
                 outputs: Optional[Sequence[str]] = None,
                 tol: Optional[float] = None) -> Channel:
    """
    Validate a stochastic matrix and wrap it as a Channel.

    Entries are read as rationals ("p/q" strings, ints, Fractions). Float
    entries are kept as floats and checked within ε.

    Raises:
        ChannelError: ragged rows, label counts, entries outside [0, 1],
            or a row not summing to 1
    """
    if not rows or not rows[0]:
        raise ChannelError("channel matrix is empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ChannelError("channel rows have different lengths")
    inputs = tuple(str(x) for x in inputs) if inputs is not None else tuple(
        str(i + 1) for i in range(len(rows)))
    outputs = tuple(str(y) for y in outputs) if outputs is not None else tuple(
        str(j + 1) for j in range(width))
    if len(inputs) != len(rows) or len(outputs) != width:
        raise ChannelError(f"labels {len(inputs)}x{len(outputs)} for a {len(rows)}x{width} matrix")

    exact = not any(isinstance(v, float) for r in rows for v in r)
    if exact:
        matrix = tuple(tuple(to_fraction(v) for v in r) for r in rows)
    else:
        matrix = tuple(tuple(float(v) for v in r) for r in rows)
    tol = 0 if exact else resolve_tolerance(tol)

    for x, row in zip(inputs, matrix):
        for y, v in zip(outputs, row):
            if v < -tol or v > 1 + tol:
                raise ChannelError(f"entry ({x}, {y}) = {v} outside [0, 1]")
        total = sum(row)
        if abs(total - 1) > tol:
            raise ChannelError(f"row {x} sums to {total}, not 1")
    return Channel(inputs, outputs, matrix)


def identity_channel(outcomes: Sequence[str]) -> Channel:
    n = len(outcomes)
    return make_channel([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                        outcomes, outcomes)


def apply_channel(nu: Channel, A: Observable, tol: Optional[float] = None) -> Observable:
    """
    The postprocessed observable (ν∘A)(y) = Σ_x ν_xy A(x).

    Raises:
        ChannelError: channel rows are not indexed by A's outcomes
    """
    if nu.inputs != A.outcomes:
        raise ChannelError(
            f"channel inputs {list(nu.inputs)} do not match outcomes {list(A.outcomes)}")
    payloads = [a.payload for a in A.effects]
    effects = [Effect(A.base, payload_combination(list(nu.column(y)), payloads), tol)
               for y in nu.outputs]
    return validate_observable(A.base, effects, nu.outputs, tol)


@dataclass(frozen=True)
class PostprocessingResult:
    """
    Outcome of the postprocessing decision A → B.

    Attributes:
        channel: the unique channel ν with B = ν∘A, or None
        reason: why no channel exists (empty on success)
        offending: (x, y, value) of the first coefficient outside [0, 1]
    """

    channel: Optional[Channel]
    reason: str = ""
    offending: Optional[Tuple[str, str, object]] = None

    @property
    def found(self) -> bool:
        return self.channel is not None


def find_postprocessing(A: Observable, B: Observable,
                        tol: Optional[float] = None) -> PostprocessingResult:
    """
    Decide whether B is a postprocessing of A.

    Requires A's effects to be linearly independent; then the coefficients
    are unique and B is a postprocessing iff they all lie in [0, 1]. Rows
    summing to 1 follows from Σ_y B(y) = u = Σ_x A(x) and independence.

    Raises:
        AlgebraMismatchError: A and B live in different algebras
        HypothesisError: A's effects are linearly dependent

    Examples:
        >>> from algebra.effects import BaseAlgebra
        >>> S2 = BaseAlgebra.classical(2)
        >>> A = validate_observable(S2, [Effect(S2, ["3/4", 0]), Effect(S2, ["1/4", 1])])
        >>> B = validate_observable(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])])
        >>> find_postprocessing(A, B).offending
        ('1', '1', Fraction(4, 3))
    """
    if A.base != B.base:
        raise AlgebraMismatchError(f"{A.base} vs {B.base}")
    vectors = [effect_coordinates(a) for a in A.effects]
    if len(independent_indices(A.base, vectors, tol)) != len(vectors):
        raise HypothesisError(
            "postprocessing decision needs an observable with linearly independent effects")

    exact = A.base.is_classical
    eps = 0 if exact else resolve_tolerance(tol)
    columns = []
    for y, b in B.items():
        coeffs = span_solve(A.base, vectors, effect_coordinates(b), tol)
        if coeffs is None:
            return PostprocessingResult(None, f"B({y}) is outside the span of A")
        for x, value in zip(A.outcomes, coeffs):
            if value < -eps or value > 1 + eps:
                if not exact:
                    value = float(value)
                return PostprocessingResult(
                    None, f"coefficient nu[{x}][{y}] = {value} outside [0, 1]", (x, y, value))
        if exact:
            columns.append(tuple(coeffs))
        else:
            columns.append(tuple(min(1.0, max(0.0, float(v))) for v in coeffs))

    rows = [[columns[j][i] for j in range(len(columns))] for i in range(len(A))]
    try:
        channel = make_channel(rows, A.outcomes, B.outcomes, tol)
    except ChannelError as e:
        return PostprocessingResult(None, str(e))
    return PostprocessingResult(channel)


def is_postprocessing_of(A: Observable, B: Observable, tol: Optional[float] = None) -> bool:
    """A → B: B is a postprocessing of A."""
    return find_postprocessing(A, B, tol).found


def pushforward(nu: Channel, phi: Mapping[str, object]) -> Dict[str, object]:
    """
    Push a distribution on ν's inputs through ν: y ↦ Σ_x ν_xy Φ(x).

    Equals the distribution of ν∘A when Φ is the distribution of A.
    """
    missing = [x for x in nu.inputs if x not in phi]
    if missing:
        raise ChannelError(f"distribution has no mass entry for {missing}")
    return {y: sum((nu.entry(x, y) * phi[x] for x in nu.inputs), Fraction(0) if nu.exact else 0.0)
            for y in nu.outputs}


if __name__ == "__main__":
    from algebra.effects import BaseAlgebra

    print("Testing channels...")
    S2 = BaseAlgebra.classical(2)
    A = validate_observable(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])])
    B = validate_observable(S2, [Effect(S2, ["1/2", "1/3"]), Effect(S2, ["1/2", "2/3"])])
    result = find_postprocessing(A, B)
    print(f"✓ channel: {result.channel.matrix}")
    print(f"✓ reproduces B: {apply_channel(result.channel, A).same_as(B)}")
