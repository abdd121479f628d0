"""
Tests for convex subeffect algebras.

Covers construction from generators, membership (checked against an
exact coefficient solve), closure of random CSEAs of S_6 under the
effect operations, the lattice operations (checked against the subspace
dimension formula) and strong spans.
"""

import sys
import os
from fractions import Fraction

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.effects import (BaseAlgebra, Effect, add, complement, leq, perp, scale, subtract,
                             unit, zero)
from kernel.errors import AlgebraMismatchError, NotASubalgebraError
from kernel.rational import RationalMatrix, rational_solve
from subalgebra.csea import (coefficients, contains, from_generators, is_separated, join, meet,
                             member_from_coordinates, strong_coordinates, strong_span,
                             trivial_subalgebra)

S3 = BaseAlgebra.classical(3)
S6 = BaseAlgebra.classical(6)
Q2 = BaseAlgebra.quantum(2)


def _effects(base, *payloads):
    return [Effect(base, p) for p in payloads]


def _random_csea(rng, base, extra):
    effects = [unit(base)]
    for _ in range(extra):
        effects.append(Effect(base, [Fraction(int(v), 4) for v in rng.integers(0, 5, base.size)]))
    return from_generators(base, effects)


def test_from_generators():
    F = from_generators(S3, _effects(S3, [1, 1, 0], [0, 0, 1]))
    assert F.dim == 2
    assert F.unit_coefficients == (1, 1)

    # The unit is dependent on the first two and gets dropped
    G = from_generators(S3, _effects(S3, [1, 1, 0], [0, 0, 1], [1, 1, 1]))
    assert G.dim == 2

    with pytest.raises(NotASubalgebraError):
        from_generators(S3, _effects(S3, [1, 0, 0]))
    with pytest.raises(NotASubalgebraError):
        from_generators(S3, [])
    with pytest.raises(AlgebraMismatchError):
        from_generators(S3, [Effect(BaseAlgebra.classical(2), [1, 1])])


def test_trivial_subalgebra():
    core = trivial_subalgebra(S3)
    assert core.dim == 1
    assert contains(core, Effect(S3, ["1/3", "1/3", "1/3"]))
    assert not contains(core, Effect(S3, [1, 0, 0]))


def test_membership_and_coefficients():
    F = from_generators(S3, _effects(S3, [1, 1, 0], [0, 0, 1]))
    inside = Effect(S3, ["1/2", "1/2", 1])
    outside = Effect(S3, [1, 0, 0])
    assert contains(F, inside)
    assert not contains(F, outside)
    assert coefficients(F, inside) == (Fraction(1, 2), Fraction(1))
    assert coefficients(F, outside) is None
    assert not contains(F, Effect(Q2, [[1, 0], [0, 1]]))


def _sample_member(rng, F):
    """Convex combination of 0, u, the generators and their complements; always in F."""
    pool = [zero(F.base), unit(F.base)]
    for g in F.generators:
        pool += [g, complement(g)]
    weights = [int(w) for w in rng.integers(0, 4, len(pool))]
    if sum(weights) == 0:
        weights[1] = 1
    total = sum(weights)
    coords = [sum(Fraction(w, total) * e.payload[i] for w, e in zip(weights, pool))
              for i in range(F.base.size)]
    return Effect(F.base, coords)


def _solvable(F, a):
    """Independent membership check: solve Σ c_k g_k = a exactly."""
    m = RationalMatrix.from_rows([[g.payload[i] for g in F.generators]
                                  for i in range(F.base.size)])
    return rational_solve(m, a.payload) is not None


def test_closure_properties():
    """u, complements, scalings, convex combinations, ⊥ sums and differences stay in F."""
    print("\n" + "="*60)
    print("TEST: closure on 100 random CSEAs of S_6")
    print("="*60)

    rng = np.random.default_rng(23)
    sums = differences = 0
    for trial in range(100):
        F = _random_csea(rng, S6, int(rng.integers(0, 4)))
        assert contains(F, unit(S6)) and contains(F, zero(S6))
        for _ in range(100):
            a, b = _sample_member(rng, F), _sample_member(rng, F)
            assert contains(F, complement(a))
            lam = Fraction(int(rng.integers(0, 9)), 8)
            assert contains(F, scale(a, lam))
            assert leq(scale(a, lam), unit(S6))
            mixed = Effect(S6, [lam * x + (1 - lam) * y for x, y in zip(a.payload, b.payload)])
            assert contains(F, mixed)
            if perp(a, b):
                sums += 1
                assert contains(F, add(a, b))
            if leq(b, a):
                differences += 1
                assert contains(F, subtract(a, b))
    print(f"✓ {sums} orthogonal sums, {differences} differences checked")


def test_membership_matches_coefficient_solve():
    rng = np.random.default_rng(29)
    inside = 0
    for trial in range(100):
        F = _random_csea(rng, S6, int(rng.integers(0, 4)))
        for _ in range(10):
            if rng.integers(0, 2):
                a = _sample_member(rng, F)
            else:
                a = Effect(S6, [Fraction(int(v), 4) for v in rng.integers(0, 5, 6)])
            expected = _solvable(F, a)
            inside += expected
            assert contains(F, a) == expected, f"trial {trial}"
            assert (coefficients(F, a) is not None) == expected
    assert inside > 0


def test_separated_pair():
    """span{(1,1,0),(0,0,1)} and span{(1,0,0),(0,1,1)} only share multiples of u."""
    print("\n" + "="*60)
    print("TEST: separated CSEAs of S_3")
    print("="*60)

    F1 = from_generators(S3, _effects(S3, [1, 1, 0], [0, 0, 1]))
    F2 = from_generators(S3, _effects(S3, [1, 0, 0], [0, 1, 1]))
    M = meet(F1, F2)
    J = join(F1, F2)
    print(f"meet dim {M.dim}, join dim {J.dim}")

    assert M.dim == 1
    assert contains(M, unit(S3))
    assert J.dim == 3
    assert is_separated(F1, F2)
    assert not is_separated(F1, F1)


def test_lattice_dimension_formula():
    """dim(F1 ∧ F2) + dim(F1 ∨ F2) = dim F1 + dim F2 on random CSEAs of S_6."""
    rng = np.random.default_rng(17)
    for trial in range(60):
        F1 = _random_csea(rng, S6, int(rng.integers(0, 4)))
        F2 = _random_csea(rng, S6, int(rng.integers(0, 4)))
        M = meet(F1, F2)
        J = join(F1, F2)
        assert M.dim + J.dim == F1.dim + F2.dim, f"trial {trial}"
        for g in M.generators:
            assert contains(F1, g) and contains(F2, g)
        for g in F1.generators + F2.generators:
            assert contains(J, g)
        assert meet(F1, F1).dim == F1.dim


def test_quantum_lattice():
    diagonal = from_generators(Q2, _effects(Q2, [[1, 0], [0, 0]], [[0, 0], [0, 1]]))
    assert diagonal.unit_coefficients == pytest.approx((1.0, 1.0))
    rotated = from_generators(Q2, _effects(Q2, [[1, 0], [0, 1]], [[0.5, 0.5], [0.5, 0.5]]))
    assert meet(diagonal, rotated).dim == 1
    assert join(diagonal, rotated).dim == 3
    assert contains(diagonal, Effect(Q2, [[0.3, 0], [0, 0.8]]))
    assert not contains(diagonal, Effect(Q2, [[0.5, 0.5], [0.5, 0.5]]))


def test_strong_span():
    generators = _effects(S3, [1, 0, "1/2"], [0, 1, "1/2"])
    S = strong_span(S3, generators)
    assert S.dim == 2

    a = Effect(S3, ["1/2", "1/4", "3/8"])
    lam = strong_coordinates(S, a)
    assert lam == (Fraction(1, 2), Fraction(1, 4))
    assert member_from_coordinates(S, lam) == a
    assert strong_coordinates(S, Effect(S3, [1, 0, 0])) is None


def test_strong_span_rejections():
    S2 = BaseAlgebra.classical(2)
    with pytest.raises(NotASubalgebraError, match="not strong"):
        strong_span(S2, _effects(S2, ["1/2", 0], ["1/2", 1]))
    with pytest.raises(NotASubalgebraError, match="sum"):
        strong_span(S3, _effects(S3, [1, 0, 0], [0, 1, 0]))
    with pytest.raises(NotASubalgebraError, match="dependent"):
        strong_span(S3, _effects(S3, [1, 0, 0], [1, 0, 0], [0, 1, 1]))


def test_quantum_strong_span():
    Q3 = BaseAlgebra.quantum(3)
    S = strong_span(Q3, _effects(Q3, [[1, 0, 0], [0, 0, 0], [0, 0, 0.3]],
                                 [[0, 0, 0], [0, 1, 0], [0, 0, 0.7]]))
    assert S.dim == 2
    lam = strong_coordinates(S, Effect(Q3, [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]]))
    assert lam == pytest.approx((0.5, 0.5))
    assert strong_coordinates(S, Effect(Q3, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])) is None


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
