"""
Random variables on X = {1..n} and their level-set partitions.

Every informational-completeness predicate depends on a random variable
only through its partition P(f), so value labels are arbitrary hashables.
Points of X are 1-based throughout.

Also here: the fuzzy-event reading of classical effects and the
correspondence between random variables and sharp observables on S_n.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from algebra.effects import BaseAlgebra, Effect, is_sharp
from kernel.errors import DimensionError, HypothesisError
from kernel.rational import to_vector
from observables.observable import Observable, validate_observable

Block = Tuple[int, ...]


@dataclass(frozen=True)
class RandomVariable:
    """
    f: {1..n} -> labels, stored as the value list (f(1), ..., f(n)).

    Examples:
        >>> RandomVariable.of(["a", "a", "b"]).n
        3
    """

    values: Tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.values) < 1:
            raise DimensionError("random variable needs n >= 1 points")

    @classmethod
    def of(cls, values: Sequence[Hashable]) -> 'RandomVariable':
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> Hashable:
        return self.values[i - 1]

    def distinct_values(self) -> List[Hashable]:
        """Distinct values in first-seen order."""
        seen = []
        for v in self.values:
            if v not in seen:
                seen.append(v)
        return seen


@dataclass(frozen=True)
class Partition:
    """
    Partition of {1..n} in canonical form: blocks sorted internally and
    ordered by least element.
    """

    n: int
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        points = sorted(i for b in self.blocks for i in b)
        if points != list(range(1, self.n + 1)):
            raise DimensionError(f"blocks do not partition {{1..{self.n}}}: {self.blocks}")
        if any(not b for b in self.blocks):
            raise DimensionError("empty block")

    @classmethod
    def of(cls, n: int, blocks: Sequence[Sequence[int]]) -> 'Partition':
        canonical = sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0])
        return cls(n, tuple(canonical))

    @property
    def is_discrete(self) -> bool:
        """Every block a singleton."""
        return len(self.blocks) == self.n

    def singletons(self) -> List[int]:
        return [b[0] for b in self.blocks if len(b) == 1]

    def block_of(self, i: int) -> Block:
        return next(b for b in self.blocks if i in b)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(str(i) for i in b) + "}" for b in self.blocks) + "}"


def partition_of(f: RandomVariable) -> Partition:
    """
    Level sets {i : f(i) = v} over the distinct values v of f.

    Examples:
        >>> str(partition_of(RandomVariable.of([7, 7, 3])))
        '{{1,2}, {3}}'
    """
    blocks: Dict[Hashable, List[int]] = {}
    for i, v in enumerate(f.values, start=1):
        blocks.setdefault(v, []).append(i)
    return Partition.of(f.n, blocks.values())


def refine(P: Partition, Q: Partition) -> Partition:
    """
    Common refinement: all nonempty intersections of a block of P with a block of Q.

    Raises:
        DimensionError: P and Q partition different sets
    """
    if P.n != Q.n:
        raise DimensionError(f"partitions of {P.n} and {Q.n} points")
    meets = [tuple(sorted(set(p) & set(q))) for p in P.blocks for q in Q.blocks]
    return Partition.of(P.n, [m for m in meets if m])


def partitions_of(fs: Sequence[RandomVariable]) -> List[Partition]:
    if not fs:
        raise DimensionError("need at least one random variable")
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise DimensionError("random variables on different point sets")
    return [partition_of(f) for f in fs]


def common_refinement(fs: Sequence[RandomVariable]) -> Partition:
    parts = partitions_of(fs)
    result = parts[0]
    for P in parts[1:]:
        result = refine(result, P)
    return result


def is_complementary(fs: Sequence[RandomVariable]) -> bool:
    """The iterated common refinement is all singletons."""
    return common_refinement(fs).is_discrete


def is_strongly_complementary(fs: Sequence[RandomVariable]) -> bool:
    """Every point of X is a singleton block of at least one P(f_k)."""
    parts = partitions_of(fs)
    covered = set()
    for P in parts:
        covered.update(P.singletons())
    return len(covered) == parts[0].n


def distribution_rv(f: RandomVariable, mu: Sequence) -> Dict[Hashable, Fraction]:
    """
    Φ_{f,μ}: value v ↦ μ(f⁻¹(v)), values in first-seen order.

    Examples:
        >>> distribution_rv(RandomVariable.of("aab"), ["1/2", "1/4", "1/4"])
        {'a': Fraction(3, 4), 'b': Fraction(1, 4)}
    """
    mu = to_vector(mu)
    if len(mu) != f.n:
        raise DimensionError(f"probability vector of length {len(mu)} for n = {f.n}")
    masses: Dict[Hashable, Fraction] = {}
    for v, m in zip(f.values, mu):
        masses[v] = masses.get(v, Fraction(0)) + m
    return masses


def set_partitions(n: int) -> Iterator[Partition]:
    """
    All set partitions of {1..n} (Bell(n) of them) via restricted growth strings.

    Order is deterministic: lexicographic in the growth string, so the
    single-block partition comes first and the discrete one last.
    """
    if n < 1:
        raise DimensionError("n must be >= 1")
    growth = [0] * n
    while True:
        blocks: Dict[int, List[int]] = {}
        for i, g in enumerate(growth, start=1):
            blocks.setdefault(g, []).append(i)
        yield Partition.of(n, blocks.values())

        # Next restricted growth string: bump the rightmost position that may grow
        k = n - 1
        while k > 0 and growth[k] > max(growth[:k]):
            k -= 1
        if k == 0:
            return
        growth[k] += 1
        for j in range(k + 1, n):
            growth[j] = 0


def random_variable_of(P: Partition) -> RandomVariable:
    """A random variable with partition P, valued by block index."""
    values = [0] * P.n
    for idx, block in enumerate(P.blocks, start=1):
        for i in block:
            values[i - 1] = idx
    return RandomVariable(tuple(values))


def fuzzy_event(a: Effect) -> Dict[int, Fraction]:
    """A classical effect read as the [0,1]-valued function i ↦ a_i."""
    if not a.algebra.is_classical:
        raise HypothesisError("fuzzy events are classical effects")
    return {i: v for i, v in enumerate(a.payload, start=1)}


def random_variable_observable(f: RandomVariable) -> Observable:
    """
    The sharp observable on S_n measuring f: outcome str(v) ↦ indicator of f⁻¹(v).

    Its distribution in state μ is Φ_{f,μ}.
    """
    base = BaseAlgebra.classical(f.n)
    values = f.distinct_values()
    effects = [Effect(base, [1 if w == v else 0 for w in f.values]) for v in values]
    return validate_observable(base, effects, [str(v) for v in values])


def observable_random_variable(A: Observable) -> RandomVariable:
    """
    The random variable g with g(i) = the outcome x whose effect has A(x)_i = 1.

    Raises:
        HypothesisError: A is not a sharp observable on a classical algebra
    """
    if not A.base.is_classical:
        raise HypothesisError("random variables correspond to observables on S_n")
    if not all(is_sharp(a) for a in A.effects):
        raise HypothesisError("observable is not sharp")
    values: List[Optional[str]] = [None] * A.base.size
    for x, a in A.items():
        for i, v in enumerate(a.payload):
            if v == 1:
                values[i] = x
    return RandomVariable(tuple(values))


if __name__ == "__main__":
    print("Testing partitions...")
    f = RandomVariable.of([1, 1, 2])
    g = RandomVariable.of([1, 2, 2])
    print(f"✓ P(f) = {partition_of(f)}, P(g) = {partition_of(g)}")
    print(f"✓ refinement = {refine(partition_of(f), partition_of(g))}")
    print(f"✓ complementary: {is_complementary([f, g])}")
    print(f"✓ Bell(5) = {sum(1 for _ in set_partitions(5))}")
