"""
Informational completeness of random variables.

A family f_1..f_k on {1..n} is IC when equal distributions under every
f_j force equal probability vectors. The constraints Φ_{f,μ} = Φ_{f,ν}
are linear in w = μ - ν: one equation per block of each P(f_j). So the
family is IC iff the 0/1 block-indicator rows have rank n, and any
nonzero kernel vector w (its entries sum to 0) scales into a pair of
distinct probability vectors with identical distributions.

Sweeps enumerate every partition (or ordered pair of partitions) of
{1..n} and tally the complementarity and IC implications.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from infocomplete.partition import (Partition, RandomVariable, common_refinement,
                                    distribution_rv, is_complementary,
                                    is_strongly_complementary, partition_of,
                                    random_variable_of, set_partitions, partitions_of)
from kernel.rational import RationalMatrix, nullspace_basis, rational_rank

ProbabilityPair = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]


@dataclass(frozen=True)
class ICVerdict:
    """
    Result of the IC decision.

    Attributes:
        ic: the family is informationally complete
        rank: rank of the block-indicator matrix (ic iff rank == n)
        witness: (μ, ν), distinct probability vectors with equal
            distributions under every variable; None when ic
    """

    ic: bool
    rank: int
    witness: Optional[ProbabilityPair] = None


def indicator_matrix(fs: Sequence[RandomVariable]) -> RationalMatrix:
    """One 0/1 row per block of every P(f_j)."""
    parts = partitions_of(fs)
    n = parts[0].n
    rows = [[1 if i in block else 0 for i in range(1, n + 1)]
            for P in parts for block in P.blocks]
    return RationalMatrix.from_rows(rows)


def is_ic(fs: Sequence[RandomVariable]) -> ICVerdict:
    """
    Decide IC exactly by the rank of the block-indicator matrix.

    When not IC the witness is built from the first kernel basis vector w:
    μ_i = 1/n + w_i / (2n·max|w|), ν_i = 1/n - w_i / (2n·max|w|).
    Both are strictly positive and sum to 1.

    Examples:
        >>> f = RandomVariable.of([1, 1, 2, 2])
        >>> g = RandomVariable.of([1, 2, 1, 2])
        >>> is_ic([f, g]).ic
        False
    """
    m = indicator_matrix(fs)
    n = m.cols
    rank = rational_rank(m)
    if rank == n:
        return ICVerdict(True, rank)

    w = nullspace_basis(m)[0]
    scale = 2 * n * max(abs(x) for x in w)
    base = Fraction(1, n)
    mu = tuple(base + x / scale for x in w)
    nu = tuple(base - x / scale for x in w)
    return ICVerdict(False, rank, (mu, nu))


def verify_witness(fs: Sequence[RandomVariable], mu: Sequence, nu: Sequence) -> bool:
    """
    μ, ν are distinct probability vectors and Φ_{f,μ} = Φ_{f,ν} for every f.
    """
    mu = tuple(Fraction(x) for x in mu)
    nu = tuple(Fraction(x) for x in nu)
    for p in (mu, nu):
        if any(x < 0 for x in p) or sum(p) != 1:
            return False
    if mu == nu:
        return False
    return all(distribution_rv(f, mu) == distribution_rv(f, nu) for f in fs)


def injectivity_witness(f: RandomVariable) -> Optional[ProbabilityPair]:
    """
    Witness that a non-injective f is not IC.

    On the first pair i < j with f(i) = f(j): μ puts 1/2, 1/2 on i, j and
    ν puts 1/4, 3/4; every other point gets 0. None when f is injective.
    """
    first_seen = {}
    for j, v in enumerate(f.values):
        if v in first_seen:
            i = first_seen[v]
            mu = [Fraction(0)] * f.n
            nu = [Fraction(0)] * f.n
            mu[i], mu[j] = Fraction(1, 2), Fraction(1, 2)
            nu[i], nu[j] = Fraction(1, 4), Fraction(3, 4)
            return tuple(mu), tuple(nu)
        first_seen[v] = j
    return None


def complementarity_witness(fs: Sequence[RandomVariable]) -> Optional[ProbabilityPair]:
    """
    Point masses (δ_i, δ_j) on two points sharing a block of the common
    refinement. They agree under every f, so a non-complementary family is
    never IC. None when the family is complementary.
    """
    refined = common_refinement(fs)
    block = next((b for b in refined.blocks if len(b) > 1), None)
    if block is None:
        return None
    n = refined.n
    i, j = block[0], block[1]
    delta_i = tuple(Fraction(1 if k == i else 0) for k in range(1, n + 1))
    delta_j = tuple(Fraction(1 if k == j else 0) for k in range(1, n + 1))
    return delta_i, delta_j


@dataclass
class SingleSweep:
    """Tally of the one-variable check: IC iff injective."""

    n: int
    partitions: int = 0
    ic: int = 0
    violations: List[Partition] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def sweep_singles(n: int, verbose: bool = False) -> SingleSweep:
    """Check is_ic([f]) ⇔ P(f) discrete over every partition of {1..n}."""
    result = SingleSweep(n)
    for P in set_partitions(n):
        verdict = is_ic([random_variable_of(P)])
        result.partitions += 1
        result.ic += verdict.ic
        if verdict.ic != P.is_discrete:
            result.violations.append(P)
    if verbose:
        print(f"  n={n}: {result.partitions} partitions, {result.ic} IC, "
              f"{len(result.violations)} violations")
    return result


@dataclass
class PairSweep:
    """
    Tally over all ordered pairs of partitions of {1..n}.

    Implications checked: strongly complementary ⇒ IC and IC ⇒
    complementary. The first counterexample to each converse is kept.
    """

    n: int
    pairs: int = 0
    strongly_complementary: int = 0
    ic: int = 0
    complementary: int = 0
    strong_not_ic: List[Tuple[Partition, Partition]] = field(default_factory=list)
    ic_not_complementary: List[Tuple[Partition, Partition]] = field(default_factory=list)
    complementary_not_ic: Optional[Tuple[Partition, Partition]] = None
    ic_not_strongly_complementary: Optional[Tuple[Partition, Partition]] = None
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return not self.strong_not_ic and not self.ic_not_complementary


def sweep_pairs(n: int, verbose: bool = False) -> PairSweep:
    """
    Exhaustive pair sweep (Bell(n)² ordered pairs).

    Args:
        n: number of points
        verbose: print progress every 500 pairs and a summary
    """
    start = time.time()
    parts = list(set_partitions(n))
    variables = [random_variable_of(P) for P in parts]
    result = PairSweep(n)
    for P, f in zip(parts, variables):
        for Q, g in zip(parts, variables):
            pair = [f, g]
            sc = is_strongly_complementary(pair)
            comp = is_complementary(pair)
            ic = is_ic(pair).ic
            result.pairs += 1
            result.strongly_complementary += sc
            result.complementary += comp
            result.ic += ic
            if sc and not ic:
                result.strong_not_ic.append((P, Q))
            if ic and not comp:
                result.ic_not_complementary.append((P, Q))
            if comp and not ic and result.complementary_not_ic is None:
                result.complementary_not_ic = (P, Q)
            if ic and not sc and result.ic_not_strongly_complementary is None:
                result.ic_not_strongly_complementary = (P, Q)
            if verbose and result.pairs % 500 == 0:
                print(f"  {result.pairs}/{len(parts) ** 2} pairs "
                      f"({time.time() - start:.1f}s)")
    result.elapsed = time.time() - start
    if verbose:
        print(f"  n={n}: {result.pairs} pairs, {result.strongly_complementary} strongly "
              f"complementary, {result.ic} IC, {result.complementary} complementary "
              f"in {result.elapsed:.2f}s")
    return result


if __name__ == "__main__":
    print("Testing informational completeness...")
    f = RandomVariable.of([1, 1, 2, 2])
    g = RandomVariable.of([1, 2, 1, 2])
    verdict = is_ic([f, g])
    print(f"✓ IC: {verdict.ic}, witness verifies: {verify_witness([f, g], *verdict.witness)}")
    print(f"✓ partitions: {partition_of(f)} {partition_of(g)}")
    sweep = sweep_pairs(3, verbose=True)
    print(f"✓ implications hold: {sweep.holds}")
