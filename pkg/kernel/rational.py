"""
Exact rational linear algebra.

Every classical coefficient system (unit coefficients of a subalgebra,
postprocessing channels, IC kernels) is solved here with Fractions, so no
result on the classical side ever depends on a rounding threshold.

Main entry points:
- RationalMatrix: immutable row-major matrix of Fractions
- rational_rank: rank by Gaussian elimination
- rational_solve: one exact solution of m·x = b (free variables pinned to 0)
- nullspace_basis: exact kernel basis, size = cols - rank
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from kernel.errors import DimensionError

RationalVector = Tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """
    Convert an int, Fraction or "p/q" string to a Fraction.

    Floats are read through their decimal repr, so 0.25 becomes 1/4
    rather than the binary expansion.

    Examples:
        >>> to_fraction("3/4")
        Fraction(3, 4)
        >>> to_fraction(0.5)
        Fraction(1, 2)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def to_vector(values: Sequence) -> RationalVector:
    return tuple(to_fraction(v) for v in values)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def vec_add(x: Sequence[Fraction], y: Sequence[Fraction]) -> RationalVector:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> RationalVector:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(x: Sequence[Fraction], factor) -> RationalVector:
    factor = to_fraction(factor)
    return tuple(factor * a for a in x)


def linear_combination(coefficients: Sequence[Fraction],
                       vectors: Sequence[Sequence[Fraction]]) -> RationalVector:
    """Return Σ c_i v_i (all vectors the same length, at least one)."""
    if len(coefficients) != len(vectors) or not vectors:
        raise DimensionError("need one coefficient per vector")
    total = [Fraction(0)] * len(vectors[0])
    for c, v in zip(coefficients, vectors):
        if len(v) != len(total):
            raise DimensionError("vectors of different lengths")
        for k, entry in enumerate(v):
            total[k] += c * entry
    return tuple(total)


@dataclass(frozen=True)
class RationalMatrix:
    """
    Immutable matrix of Fractions.

    Attributes:
        rows: number of rows (>= 1)
        cols: number of columns (>= 1)
        entries: row-major tuple of length rows * cols
    """

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> 'RationalMatrix':
        if not rows:
            raise DimensionError("no rows")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise DimensionError("ragged rows")
        flat = tuple(to_fraction(v) for r in rows for v in r)
        return cls(len(rows), width, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> 'RationalMatrix':
        if not columns:
            raise DimensionError("no columns")
        height = len(columns[0])
        for c in columns:
            if len(c) != height:
                raise DimensionError("ragged columns")
        return cls.from_rows([[columns[j][i] for j in range(len(columns))]
                              for i in range(height)])

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RationalMatrix':
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> RationalVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> RationalVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> 'RationalMatrix':
        return RationalMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def apply(self, x: Sequence) -> RationalVector:
        """Matrix-vector product m·x."""
        if len(x) != self.cols:
            raise DimensionError(f"vector length {len(x)} != cols {self.cols}")
        x = to_vector(x)
        return tuple(dot(self.row(i), x) for i in range(self.rows))


def _row_reduce(m: RationalMatrix, rhs: Optional[Sequence[Fraction]] = None):
    """
    Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns:
        (rows, pivots, rhs): reduced rows, pivot column per nonzero row,
        and the transformed right-hand side (None when not given)
    """
    rows = m.row_list()
    b = list(rhs) if rhs is not None else None
    pivots = []
    r = 0
    for col in range(m.cols):
        if r >= m.rows:
            break
        pivot_row = next((i for i in range(r, m.rows) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            if b is not None:
                b[r], b[pivot_row] = b[pivot_row], b[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        if b is not None:
            b[r] *= inv
        for i in range(m.rows):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * p for a, p in zip(rows[i], rows[r])]
                if b is not None:
                    b[i] -= factor * b[r]
        pivots.append(col)
        r += 1
    return rows, pivots, b


def rational_rank(m: RationalMatrix) -> int:
    """
    Rank of m under exact Gaussian elimination.

    Examples:
        >>> rational_rank(RationalMatrix.identity(2))
        2
        >>> rational_rank(RationalMatrix.from_rows([[1, 1, 0], [0, 0, 1], [1, 1, 1]]))
        2
    """
    _, pivots, _ = _row_reduce(m)
    return len(pivots)


@dataclass(frozen=True)
class SolveResult:
    """Exact solution of m·x = b; `unique` is False when free variables were pinned to 0."""

    solution: RationalVector
    unique: bool


def rational_solve(m: RationalMatrix, b: Sequence) -> Optional[SolveResult]:
    """
    Solve m·x = b exactly.

    Args:
        m: coefficient matrix
        b: right-hand side, length m.rows

    Returns:
        SolveResult, or None when the system is inconsistent. For
        underdetermined systems the free variables are set to 0 and
        `unique` is False.

    Raises:
        DimensionError: len(b) != m.rows
    """
    if len(b) != m.rows:
        raise DimensionError(f"rhs length {len(b)} != rows {m.rows}")
    rows, pivots, rhs = _row_reduce(m, to_vector(b))

    # Any zero row with nonzero rhs is a contradiction
    for i in range(len(pivots), m.rows):
        if rhs[i] != 0:
            return None

    x = [Fraction(0)] * m.cols
    for i, col in enumerate(pivots):
        x[col] = rhs[i]
    return SolveResult(tuple(x), len(pivots) == m.cols)


def nullspace_basis(m: RationalMatrix) -> List[RationalVector]:
    """
    Exact basis of {x : m·x = 0}.

    One vector per free column, with that free variable set to 1 and the
    other free variables set to 0. Order follows the free column index.
    """
    rows, pivots, _ = _row_reduce(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> List[int]:
    """
    Indices of the first linearly independent subsequence of `vectors`.

    A vector is kept when appending it raises the rank.
    """
    kept: List[int] = []
    rank = 0
    for idx, v in enumerate(vectors):
        candidate = [vectors[k] for k in kept] + [v]
        new_rank = rational_rank(RationalMatrix.from_rows(candidate))
        if new_rank > rank:
            kept.append(idx)
            rank = new_rank
    return kept


if __name__ == "__main__":
    print("Testing rational kernel...")

    m = RationalMatrix.from_rows([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
    print(f"✓ rank = {rational_rank(m)}")
    print(f"✓ nullspace = {nullspace_basis(m)}")

    cols = RationalMatrix.from_columns([[1, 1, 0], [0, 0, 1]])
    print(f"✓ solve = {rational_solve(cols, [1, 1, 1])}")
