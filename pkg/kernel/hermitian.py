"""
Floating-point Hermitian linear algebra for the quantum side.

Contents:
- HermitianMatrix: validated complex square matrix (read-only numpy array)
- hermitian_eig: cyclic Jacobi diagonalization with complex rotations
- flatten_hermitian / unflatten_hermitian: real coordinates for span work
- float_rank / float_solve: partial-pivot rank and least-squares solve
- random_unitary: Haar-ish unitary from a complex Gaussian QR

Spectra are irrational in general, so everything here is approximate and
each decision takes an explicit tolerance.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from kernel.errors import DecompositionError, DimensionError, NotHermitianError

# Conjugate-symmetry defect allowed on construction
HERMITIAN_DEFECT = 1e-12

# Jacobi stopping rule: max off-diagonal magnitude <= SWEEP_THRESHOLD * scale
SWEEP_THRESHOLD = 1e-14
MAX_SWEEPS = 100

# Rank decisions on flattened effects
RANK_TOLERANCE = 1e-9


def max_norm(x) -> float:
    """Largest absolute entry (0.0 for an empty array)."""
    arr = np.asarray(x)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def hermitian_defect(x) -> float:
    arr = np.asarray(x)
    return max_norm(arr - arr.conj().T)


def parse_complex(value) -> complex:
    """Accept a number or a two-element [re, im] pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex entry must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(' ', ''))
    return complex(value)


class HermitianMatrix:
    """
    Self-adjoint complex matrix.

    The wrapped array is copied and made read-only, so instances behave as
    immutable values.

    Args:
        data: square array-like of complex numbers
        symmetrize: replace data by (data + data^H)/2 before checking
            (for products computed in floating point)

    Raises:
        DimensionError: not square
        NotHermitianError: conjugate-symmetry defect above HERMITIAN_DEFECT
    """

    __slots__ = ('_array',)

    def __init__(self, data, symmetrize: bool = False):
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if symmetrize:
            arr = (arr + arr.conj().T) / 2
        defect = hermitian_defect(arr)
        if defect > HERMITIAN_DEFECT:
            raise NotHermitianError(f"conjugate-symmetry defect {defect:.3e}")
        # Exact symmetry from here on
        arr = (arr + arr.conj().T) / 2
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> 'HermitianMatrix':
        """Build from nested lists whose entries are numbers or [re, im] pairs."""
        return cls([[parse_complex(v) for v in row] for row in rows])

    @classmethod
    def identity(cls, dim: int) -> 'HermitianMatrix':
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> 'HermitianMatrix':
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diagonal(cls, values: Sequence[float]) -> 'HermitianMatrix':
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def dim(self) -> int:
        return self._array.shape[0]

    def __add__(self, other: 'HermitianMatrix') -> 'HermitianMatrix':
        return HermitianMatrix(self._array + other.array)

    def __sub__(self, other: 'HermitianMatrix') -> 'HermitianMatrix':
        return HermitianMatrix(self._array - other.array)

    def scaled(self, factor: float) -> 'HermitianMatrix':
        return HermitianMatrix(self._array * float(factor))

    def conjugated(self, unitary: np.ndarray) -> 'HermitianMatrix':
        """Return U A U^H."""
        u = np.asarray(unitary)
        return HermitianMatrix(u @ self._array @ u.conj().T, symmetrize=True)

    def compressed(self, projection: 'HermitianMatrix') -> 'HermitianMatrix':
        """Return P A P."""
        p = projection.array
        return HermitianMatrix(p @ self._array @ p, symmetrize=True)

    def trace(self) -> float:
        return float(np.trace(self._array).real)

    def to_entries(self):
        """Nested lists of [re, im] pairs (JSON friendly)."""
        return [[[float(z.real), float(z.imag)] for z in row] for row in self._array]

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """
    Spectral decomposition A = V Λ V^H.

    Attributes:
        eigenvalues: real, ascending
        eigenvectors: unitary matrix, column k belongs to eigenvalues[k]
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return v @ np.diag(self.eigenvalues) @ v.conj().T

    def reconstruction_residual(self, a) -> float:
        arr = a.array if isinstance(a, HermitianMatrix) else np.asarray(a)
        return max_norm(arr - self.reconstruct())

    def orthonormality_residual(self) -> float:
        v = self.eigenvectors
        return max_norm(v.conj().T @ v - np.eye(v.shape[1]))

    def eigenspace_projection(self, lower: float, upper: float = math.inf) -> np.ndarray:
        """Projection onto the span of eigenvectors with eigenvalue in [lower, upper]."""
        mask = (self.eigenvalues >= lower) & (self.eigenvalues <= upper)
        cols = self.eigenvectors[:, mask]
        return cols @ cols.conj().T


def _off_diagonal_max(m: np.ndarray) -> float:
    n = m.shape[0]
    if n < 2:
        return 0.0
    return max_norm(m[~np.eye(n, dtype=bool)])


def hermitian_eig(a) -> EigenDecomposition:
    """
    Diagonalize a Hermitian matrix by the cyclic Jacobi method.

    Each rotation first removes the phase of a_pq with a diagonal unitary,
    then applies the real Jacobi rotation that zeroes the (now real)
    off-diagonal pair. Sweeps run over all (p, q) with p < q until the
    largest off-diagonal entry drops below SWEEP_THRESHOLD (relative to the
    largest entry, floor 1).

    Args:
        a: HermitianMatrix or square array-like

    Returns:
        EigenDecomposition with ascending eigenvalues

    Raises:
        NotHermitianError: input fails the conjugate-symmetry check
        DecompositionError: no convergence within MAX_SWEEPS
    """
    if not isinstance(a, HermitianMatrix):
        a = HermitianMatrix(a)
    m = np.array(a.array, dtype=np.complex128)
    n = m.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, max_norm(m))

    converged = False
    for _ in range(MAX_SWEEPS):
        if _off_diagonal_max(m) <= SWEEP_THRESHOLD * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = m[p, p].real
                aqq = m[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # Phase removal diag(1, conj(phase)) followed by the real rotation
                u2 = np.array([[c, s],
                               [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
                idx = [p, q]
                m[:, idx] = m[:, idx] @ u2
                m[idx, :] = u2.conj().T @ m[idx, :]
                v[:, idx] = v[:, idx] @ u2
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
    else:
        converged = _off_diagonal_max(m) <= SWEEP_THRESHOLD * scale

    if not converged:
        raise DecompositionError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    eigenvalues = np.real(np.diag(m)).copy()
    order = np.argsort(eigenvalues, kind='stable')
    return EigenDecomposition(eigenvalues[order], v[:, order])


def flatten_hermitian(a) -> np.ndarray:
    """
    Real coordinate vector of a Hermitian matrix.

    Layout: the d diagonal reals, then (Re, Im) of each strict upper
    entry in row-major order; d*d coordinates in total. The map is a real
    linear isomorphism L_S(C^d) -> R^{d*d}.
    """
    arr = a.array if isinstance(a, HermitianMatrix) else np.asarray(a)
    d = arr.shape[0]
    coords = [arr[i, i].real for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            coords.append(arr[i, j].real)
            coords.append(arr[i, j].imag)
    return np.array(coords, dtype=float)


def unflatten_hermitian(coords: Sequence[float], dim: int) -> HermitianMatrix:
    coords = np.asarray(coords, dtype=float)
    if coords.size != dim * dim:
        raise DimensionError(f"expected {dim * dim} coordinates, got {coords.size}")
    arr = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        arr[i, i] = coords[i]
    k = dim
    for i in range(dim):
        for j in range(i + 1, dim):
            z = complex(coords[k], coords[k + 1])
            arr[i, j] = z
            arr[j, i] = z.conjugate()
            k += 2
    return HermitianMatrix(arr)


def float_rank(vectors: Sequence[Sequence[float]], tol: float = RANK_TOLERANCE) -> int:
    """
    Rank of the row set by Gaussian elimination with partial pivoting.

    A column is a pivot column when its largest remaining entry exceeds tol.
    """
    if len(vectors) == 0:
        return 0
    m = np.array(vectors, dtype=float)
    if m.ndim != 2:
        raise DimensionError(f"expected a list of vectors, got shape {m.shape}")
    rows, cols = m.shape
    r = 0
    for col in range(cols):
        if r >= rows:
            break
        pivot = r + int(np.argmax(np.abs(m[r:, col])))
        if abs(m[pivot, col]) <= tol:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = m[r] / m[r, col]
        below = m[r + 1:, col].copy()
        m[r + 1:] -= np.outer(below, m[r])
        r += 1
    return r


def float_solve(columns: Sequence[Sequence[float]], target: Sequence[float],
                tol: float = RANK_TOLERANCE) -> Optional[np.ndarray]:
    """
    Coefficients x with Σ x_k columns[k] = target, or None.

    Uses least squares and accepts the answer only when the residual
    max-norm is within tol.
    """
    a = np.array(columns, dtype=float).T
    b = np.asarray(target, dtype=float)
    if a.shape[0] != b.size:
        raise DimensionError(f"target length {b.size} != vector length {a.shape[0]}")
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    if max_norm(a @ x - b) > tol:
        return None
    return x


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unitary from the QR factorization of a complex Gaussian matrix (phases fixed)."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_hermitian(dim: int, rng: np.random.Generator) -> HermitianMatrix:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianMatrix((z + z.conj().T) / 2)


if __name__ == "__main__":
    print("Testing Jacobi eigensolver...")
    rng = np.random.default_rng(0)
    for dim in (1, 2, 5, 8, 16):
        h = random_hermitian(dim, rng)
        dec = hermitian_eig(h)
        print(f"✓ dim {dim:2d}: reconstruction {dec.reconstruction_residual(h):.2e}, "
              f"orthonormality {dec.orthonormality_residual():.2e}")
