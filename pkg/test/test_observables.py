"""
Tests for observables, channels, postprocessing and coexistence.

The postprocessing decision is exercised on random channels over S_n
(n <= 6): a channel applied to an observable with independent effects
must be recovered exactly, and random observables must either be
reproduced by the found channel or come with an offending coefficient.
Generator observables of random strong spans reach every observable in
their span, and the classical isomorphism is checked on random members.
"""

import sys
import os
from fractions import Fraction

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.effects import BaseAlgebra, Effect, State, complement, perp, unit
from kernel.errors import (AlgebraMismatchError, ChannelError, HypothesisError,
                           NotAnObservableError)
from observables.channel import (apply_channel, find_postprocessing, identity_channel,
                                 is_postprocessing_of, make_channel, pushforward)
from observables.observable import (classical_iso, coexistence_observable, coexistence_witness,
                                    distribution, generator_observable, is_strong_observable,
                                    validate_observable)
from subalgebra.csea import strong_span

S2 = BaseAlgebra.classical(2)
S3 = BaseAlgebra.classical(3)


def _observable(base, *payloads):
    return validate_observable(base, [Effect(base, p) for p in payloads])


def _smeared(n):
    """Independent observable on S_n: 3/4 on the diagonal, the rest spread evenly."""
    base = BaseAlgebra.classical(n)
    if n == 1:
        return validate_observable(base, [unit(base)])
    off = Fraction(1, 4 * (n - 1))
    return validate_observable(base, [
        Effect(base, [Fraction(3, 4) if i == x else off for i in range(n)]) for x in range(n)])


def _random_channel(rng, inputs, outputs):
    rows = []
    for _ in range(inputs):
        weights = [int(v) for v in rng.integers(0, 4, outputs)]
        if sum(weights) == 0:
            weights[0] = 1
        rows.append([Fraction(w, sum(weights)) for w in weights])
    return make_channel(rows)


def test_validate_observable():
    A = _observable(S2, ["1/2", 0], ["1/2", 1])
    assert A.outcomes == ("1", "2")
    assert A["2"].payload == (Fraction(1, 2), Fraction(1))
    assert len(A) == 2

    named = validate_observable(S2, {"up": Effect(S2, [1, 0]), "down": Effect(S2, [0, 1])})
    assert named.outcomes == ("up", "down")

    with pytest.raises(NotAnObservableError):
        _observable(S2, ["1/2", 0], ["1/4", 1])
    with pytest.raises(NotAnObservableError):
        validate_observable(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])], outcomes=["x", "x"])
    with pytest.raises(NotAnObservableError):
        validate_observable(S2, [])
    with pytest.raises(AlgebraMismatchError):
        validate_observable(S2, [Effect(S3, [1, 1, 1])])


def test_distribution():
    A = _observable(S2, ["1/2", 0], ["1/2", 1])
    phi = distribution(A, State(S2, ["1/4", "3/4"]))
    assert phi == {"1": Fraction(1, 8), "2": Fraction(7, 8)}
    assert sum(phi.values()) == 1


def test_quantum_observable_tolerance():
    Q2 = BaseAlgebra.quantum(2)
    a = Effect(Q2, [[0.3, 0.1], [0.1, 0.3]])
    b = Effect(Q2, [[0.7, -0.1], [-0.1, 0.7 + 1e-12]])
    A = validate_observable(Q2, [a, b])
    assert A.same_as(validate_observable(Q2, [a, b]))
    with pytest.raises(NotAnObservableError):
        validate_observable(Q2, [a, Effect(Q2, [[0.7, 0], [0, 0.7]])])


def test_make_channel():
    nu = make_channel([[1, 0], ["1/2", "1/2"]])
    assert nu.exact
    assert nu.entry("2", "1") == Fraction(1, 2)
    assert nu.column("2") == (0, Fraction(1, 2))

    floats = make_channel([[0.5, 0.5 + 1e-12], [1.0, 0.0]])
    assert not floats.exact

    with pytest.raises(ChannelError, match="sums to"):
        make_channel([["1/2", "1/3"]])
    with pytest.raises(ChannelError, match="outside"):
        make_channel([["3/2", "-1/2"]])
    with pytest.raises(ChannelError):
        make_channel([[1, 0], [1]])
    with pytest.raises(ChannelError):
        make_channel([[1, 0]], inputs=["a", "b"])


def test_apply_channel():
    delta = _observable(S2, [1, 0], [0, 1])
    nu = make_channel([[1, 0], ["1/2", "1/2"]])
    B = apply_channel(nu, delta)
    assert B["1"].payload == (1, Fraction(1, 2))
    assert B["2"].payload == (0, Fraction(1, 2))
    assert apply_channel(identity_channel(delta.outcomes), delta).same_as(delta)

    with pytest.raises(ChannelError):
        apply_channel(make_channel([[1, 0]], inputs=["z"]), delta)


def test_postprocessing_counterexample():
    """Coefficient 4/3 rules out A -> δ."""
    A = _observable(S2, ["3/4", 0], ["1/4", 1])
    delta = _observable(S2, [1, 0], [0, 1])
    result = find_postprocessing(A, delta)
    assert not result.found
    assert result.offending == ("1", "1", Fraction(4, 3))
    assert is_postprocessing_of(delta, A)


def test_postprocessing_hypotheses():
    dependent = _observable(S2, ["1/2", "1/2"], ["1/2", "1/2"])
    with pytest.raises(HypothesisError, match="linearly independent"):
        find_postprocessing(dependent, _observable(S2, [1, 0], [0, 1]))
    with pytest.raises(AlgebraMismatchError):
        find_postprocessing(_observable(S2, [1, 0], [0, 1]), _observable(S3, [1, 1, 1]))


def test_postprocessing_recovers_channel():
    """ν∘A is found and the channel is recovered exactly for n = 1..6."""
    print("\n" + "="*60)
    print("TEST: channel recovery on S_1..S_6")
    print("="*60)

    rng = np.random.default_rng(8)
    for n in range(1, 7):
        A = _smeared(n)
        for _ in range(10):
            nu = _random_channel(rng, n, int(rng.integers(1, 4)))
            B = apply_channel(nu, A)
            result = find_postprocessing(A, B)
            assert result.found, result.reason
            assert result.channel.matrix == nu.matrix
        print(f"✓ n={n}")


def test_postprocessing_random_targets():
    """Either the found channel reproduces B, or a coefficient leaves [0, 1]."""
    rng = np.random.default_rng(21)
    found = 0
    for trial in range(100):
        n = 2 + trial % 5
        base = BaseAlgebra.classical(n)
        A = _smeared(n)
        b1 = Effect(base, [Fraction(int(v), 4) for v in rng.integers(0, 5, n)])
        B = validate_observable(base, [b1, complement(b1)])
        result = find_postprocessing(A, B)
        if result.found:
            found += 1
            assert apply_channel(result.channel, A).same_as(B)
        else:
            x, y, value = result.offending
            assert value < 0 or value > 1
    print(f"{found}/100 random targets are postprocessings")


def _random_strong_span(rng, n, m):
    """Generator i owns coordinate i; the last n - m coordinates are shared rationally."""
    base = BaseAlgebra.classical(n)
    shares = []
    for _ in range(n - m):
        weights = [int(w) for w in rng.integers(0, 4, m)]
        if sum(weights) == 0:
            weights[0] = 1
        shares.append([Fraction(w, sum(weights)) for w in weights])
    generators = []
    for i in range(m):
        payload = [1 if k == i else 0 for k in range(m)] + [s[i] for s in shares]
        generators.append(Effect(base, payload))
    return strong_span(base, generators)


def _random_fuzzy_observable(rng, base, outcomes):
    """Random rational partition of unity on S_n."""
    columns = []
    for _ in range(base.size):
        weights = [int(w) for w in rng.integers(0, 4, outcomes)]
        if sum(weights) == 0:
            weights[0] = 1
        columns.append([Fraction(w, sum(weights)) for w in weights])
    return validate_observable(base, [Effect(base, [c[y] for c in columns])
                                      for y in range(outcomes)])


def test_postprocessing_of_strong_observables():
    """Every observable in a strong span is found exactly as a postprocessing of its generators."""
    print("\n" + "="*60)
    print("TEST: postprocessing of generator observables, S_1..S_6")
    print("="*60)

    rng = np.random.default_rng(44)
    for trial in range(100):
        n = 1 + trial % 6
        m = int(rng.integers(1, n + 1))
        S = _random_strong_span(rng, n, m)
        A = generator_observable(S)
        outcomes = int(rng.integers(1, 4))
        if m == n:
            B = _random_fuzzy_observable(rng, S.base, outcomes)
        else:
            B = apply_channel(_random_channel(rng, m, outcomes), A)

        result = find_postprocessing(A, B)
        assert result.found, f"trial {trial}: {result.reason}"
        assert result.channel.exact
        assert all(sum(row) == 1 for row in result.channel.matrix)
        assert apply_channel(result.channel, A).same_as(B)
    print("✓ 100 observables recovered exactly")


def test_pushforward():
    A = _observable(S3, [1, 0, "1/2"], [0, 1, "1/2"])
    nu = make_channel([["1/3", "2/3"], [1, 0]])
    s = State(S3, ["1/2", "1/4", "1/4"])
    assert pushforward(nu, distribution(A, s)) == distribution(apply_channel(nu, A), s)
    with pytest.raises(ChannelError):
        pushforward(nu, {"1": Fraction(1)})


def test_coexistence_classical():
    S = strong_span(S2, [Effect(S2, [1, 0]), Effect(S2, [0, 1])])
    a = Effect(S2, ["1/2", "1/4"])
    b = Effect(S2, ["1/4", "3/4"])
    w = coexistence_witness(S, a, b)
    assert w.c.payload == (Fraction(1, 4), Fraction(1, 4))
    assert w.a1.payload == (Fraction(1, 4), 0)
    assert w.b1.payload == (0, Fraction(1, 2))
    assert w.d.payload == (Fraction(1, 2), Fraction(1, 4))

    joint = coexistence_observable(w)
    assert joint.outcomes == ("a1", "b1", "c", "d")
    marginal_a = [x + y for x, y in zip(joint["a1"].payload, joint["c"].payload)]
    marginal_b = [x + y for x, y in zip(joint["b1"].payload, joint["c"].payload)]
    assert tuple(marginal_a) == a.payload
    assert tuple(marginal_b) == b.payload


def test_coexistence_requires_members():
    S = strong_span(S3, [Effect(S3, [1, 0, "1/2"]), Effect(S3, [0, 1, "1/2"])])
    member = Effect(S3, ["1/2", "1/2", "1/2"])
    with pytest.raises(HypothesisError):
        coexistence_witness(S, Effect(S3, [1, 0, 0]), member)
    with pytest.raises(HypothesisError):
        coexistence_witness(S, member, Effect(S3, [0, 0, 1]))


def test_coexistence_quantum():
    Q3 = BaseAlgebra.quantum(3)
    g1 = Effect(Q3, np.diag([1.0, 0.0, 0.3]))
    g2 = Effect(Q3, np.diag([0.0, 1.0, 0.7]))
    S = strong_span(Q3, [g1, g2])
    a = Effect(Q3, np.diag([0.8, 0.1, 0.31]))
    b = Effect(Q3, np.diag([0.2, 0.6, 0.48]))
    joint = coexistence_observable(coexistence_witness(S, a, b))
    recovered = joint["a1"].payload.array + joint["c"].payload.array
    assert np.allclose(recovered, a.payload.array, atol=1e-9)


def test_classical_iso():
    """J is a bijection onto S_m sending u to (1,..,1) and complements to complements."""
    S = strong_span(S3, [Effect(S3, [1, 0, "1/2"]), Effect(S3, [0, 1, "1/2"])])
    J = classical_iso(S)
    assert J.target == BaseAlgebra.classical(2)
    assert J.forward(unit(S3)) == (1, 1)

    a = Effect(S3, ["1/2", "1/4", "3/8"])
    lam = J.forward(a)
    assert J.inverse(lam) == a
    assert J.forward(complement(a)) == tuple(1 - x for x in lam)
    with pytest.raises(HypothesisError):
        J.inverse([2, 0])
    with pytest.raises(HypothesisError):
        J.forward(Effect(S3, [1, 0, 0]))


def test_classical_iso_random():
    """J is an exact affine bijection onto S_m that preserves ⊥ both ways."""
    rng = np.random.default_rng(47)
    orthogonal = 0
    for trial in range(100):
        n = 1 + trial % 6
        m = int(rng.integers(1, n + 1))
        S = _random_strong_span(rng, n, m)
        J = classical_iso(S)
        lam = tuple(Fraction(int(v), 8) for v in rng.integers(0, 9, m))
        mu = tuple(Fraction(int(v), 8) for v in rng.integers(0, 9, m))
        a, b = J.inverse(lam), J.inverse(mu)
        assert J.forward(a) == lam
        assert J.inverse(J.forward(a)) == a

        t = Fraction(int(rng.integers(0, 6)), 5)
        mixed = Effect(S.base, [t * x + (1 - t) * y for x, y in zip(a.payload, b.payload)])
        assert J.forward(mixed) == tuple(t * x + (1 - t) * y for x, y in zip(lam, mu))

        images_orthogonal = all(x + y <= 1 for x, y in zip(lam, mu))
        assert perp(a, b) == images_orthogonal, f"trial {trial}"
        orthogonal += images_orthogonal
    assert orthogonal > 0


def test_strong_observables():
    S = strong_span(S3, [Effect(S3, [1, 0, "1/2"]), Effect(S3, [0, 1, "1/2"])])
    G = generator_observable(S)
    assert G.outcomes == ("1", "2")
    assert is_strong_observable(G)
    assert not is_strong_observable(_observable(S2, ["1/2", 0], ["1/2", 1]))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
