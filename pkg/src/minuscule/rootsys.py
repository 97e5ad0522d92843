"""Simply-laced root systems (A_n, D_n, E6, E7) over exact integer coordinates.

Roots and root images are tuples of integer coefficients over the simple
roots, in Bourbaki numbering.  Weights never appear with fractional
coordinates: the orbit traversal in :mod:`minuscule.heap` only needs the
pairing values with simple coroots, which are integers.

All objects are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence

Root = tuple[int, ...]


class RootClass(Enum):
    """Sign / Levi classification of a root relative to a marked node."""

    NEG_NON_LEVI = "neg-non-levi"
    POS_NON_LEVI = "pos-non-levi"
    POS_LEVI = "pos-levi"
    NEG_LEVI = "neg-levi"


_ADMISSIBLE = {
    "A": lambda r: r >= 1,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7),
}


@dataclass(frozen=True)
class DynkinType:
    """A simply-laced Dynkin type that carries a minuscule weight.

    E8 is excluded: it is simply-laced but has no minuscule fundamental
    weight, so nothing downstream could be built from it.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        test = _ADMISSIBLE.get(self.family)
        if test is None or not test(self.rank):
            raise ValueError(
                f"{self.family}{self.rank} is not supported: need A_n (n>=1), "
                "D_n (n>=4), E6 or E7 (E8 has no minuscule weight)"
            )

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _edges(dynkin: DynkinType) -> list[tuple[int, int]]:
    n = dynkin.rank
    if dynkin.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if dynkin.family == "D":
        # chain 1..n-1 plus the fork node n attached at n-2
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    edges = [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6)]
    if n == 7:
        edges.append((6, 7))
    return edges


def _expected_positive_count(dynkin: DynkinType) -> int:
    n = dynkin.rank
    if dynkin.family == "A":
        return n * (n + 1) // 2
    if dynkin.family == "D":
        return n * (n - 1)
    return 36 if n == 6 else 63


@dataclass(frozen=True)
class RootSystem:
    """Cartan matrix plus the full set of roots of a simply-laced type."""

    dynkin: DynkinType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    roots: frozenset = field(repr=False)

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    def pairing(self, v: Root, node: int) -> int:
        """Integer pairing of v with the coroot of the simple root at node."""
        row = self.cartan[node - 1]
        return sum(row[j] * v[j] for j in range(self.rank))

    def simple_root(self, node: int) -> Root:
        self.check_node(node)
        return tuple(1 if j == node - 1 else 0 for j in range(self.rank))

    def check_node(self, node: int) -> None:
        if not 1 <= node <= self.rank:
            raise ValueError(f"node {node} out of range 1..{self.rank} for {self.dynkin}")

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.roots


def _reflect(cartan: tuple[tuple[int, ...], ...], node: int, v: Root) -> Root:
    row = cartan[node - 1]
    p = sum(row[j] * v[j] for j in range(len(v)))
    if p == 0:
        return v
    w = list(v)
    w[node - 1] -= p
    return tuple(w)


@lru_cache(maxsize=None)
def build_root_system(dynkin: DynkinType) -> RootSystem:
    """Cartan matrix and all roots, generated by reflection closure from the
    simple roots."""
    n = dynkin.rank
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in _edges(dynkin):
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
    cmat = tuple(tuple(r) for r in cartan)

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots: set[Root] = set(simple)
    frontier: list[Root] = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(1, n + 1):
                s = _reflect(cmat, i, r)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt

    positive = tuple(sorted(r for r in roots if all(c >= 0 for c in r)))
    if len(positive) != _expected_positive_count(dynkin):
        raise AssertionError(
            f"{dynkin}: generated {len(positive)} positive roots, "
            f"expected {_expected_positive_count(dynkin)}"
        )
    return RootSystem(dynkin, cmat, positive, frozenset(roots))


def reflect_simple(rs: RootSystem, node: int, v: Sequence[int]) -> Root:
    """Simple reflection s_node(v) = v - <v, coroot> * alpha_node."""
    rs.check_node(node)
    return _reflect(rs.cartan, node, tuple(v))


def apply_word(rs: RootSystem, word: Sequence[int], v: Sequence[int]) -> Root:
    """Apply the letters of ``word`` left to right: the first letter acts first.

    For a reduced word of a group element w this computes w^{-1}(v); the
    action of w itself is obtained by passing the reversed word.
    """
    x = tuple(v)
    for letter in word:
        rs.check_node(letter)
        x = _reflect(rs.cartan, letter, x)
    return x


def length_by_inversions(rs: RootSystem, word: Sequence[int]) -> int:
    """Coxeter length of the element spelled by ``word``: the number of
    positive roots it sends to negative roots.  Equals len(word) iff the
    word is reduced."""
    rev = tuple(reversed(tuple(word)))
    count = 0
    for alpha in rs.positive_roots:
        image = apply_word(rs, rev, alpha)  # w(alpha)
        if all(c <= 0 for c in image):
            count += 1
    return count


def minuscule_nodes(rs: RootSystem) -> tuple[int, ...]:
    """Nodes whose fundamental weight is minuscule, per type."""
    d = rs.dynkin
    if d.family == "A":
        return tuple(range(1, d.rank + 1))
    if d.family == "D":
        return (1, d.rank - 1, d.rank)
    return (1, 6) if d.rank == 6 else (7,)


def classify_root(rs: RootSystem, minuscule_node: int, v: Sequence[int]) -> RootClass:
    """Classify a root by sign and by membership in the Levi of the maximal
    parabolic at ``minuscule_node`` (Levi roots have coefficient 0 there)."""
    rs.check_node(minuscule_node)
    root = tuple(v)
    if root not in rs.roots:
        raise ValueError(f"{root} is not a root of {rs.dynkin}")
    positive = all(c >= 0 for c in root)
    levi = root[minuscule_node - 1] == 0
    if positive:
        return RootClass.POS_LEVI if levi else RootClass.POS_NON_LEVI
    return RootClass.NEG_LEVI if levi else RootClass.NEG_NON_LEVI
