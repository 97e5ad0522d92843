"""Grassmannian bridge: partitions in a k x (n-k) box, grid coordinates,
Grassmannian permutations, and the classical type-A test oracles.

Grid convention: box (1,1) is the unique minimal vertex; row i holds the
boxes (i, 1..lambda_i); box (i, j) carries color k - i + j and the order is
componentwise.  The color formula is pinned by requiring the minimal box to
carry the marked node k and grid-adjacent boxes to carry Dynkin-adjacent
colors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import heap, rootsys
from .heap import AmbientQuiver, Ideal, MinusculeSpace

Box = tuple[int, int]


@dataclass(frozen=True)
class GrassmannianShape:
    """k-dimensional subspaces of an n-dimensional space; the minuscule
    space A_{n-1} with marked node k."""

    k: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={self.n}")

    @property
    def space(self) -> MinusculeSpace:
        rs = rootsys.build_root_system(rootsys.DynkinType("A", self.n - 1))
        return MinusculeSpace(rs, self.k)

    @property
    def ambient(self) -> AmbientQuiver:
        return heap.build_ambient_quiver(self.space)

    def boxes(self) -> list[Box]:
        return [
            (i, j)
            for i in range(1, self.k + 1)
            for j in range(1, self.n - self.k + 1)
        ]

    def box_color(self, box: Box) -> int:
        return self.k - box[0] + box[1]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing parts; trailing zeros are dropped."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
            raise ValueError(f"parts must be weakly decreasing and >= 0: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(p) for p in text.split(",")))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def fits(self, shape: GrassmannianShape) -> bool:
        return len(self.parts) <= shape.k and all(
            p <= shape.n - shape.k for p in self.parts
        )


def _check_fits(shape: GrassmannianShape, lam: Partition) -> None:
    if not lam.fits(shape):
        raise ValueError(f"partition ({lam}) does not fit the {shape.k}x{shape.n - shape.k} box")


@lru_cache(maxsize=None)
def _grid_maps(shape: GrassmannianShape) -> tuple[dict[Box, int], dict[int, Box]]:
    """Bijection between grid boxes and ambient vertices.

    Boxes and vertices of one color each form a chain; matching the chains
    bottom-up fixes the map, which is then verified to be an order
    isomorphism.
    """
    amb = shape.ambient
    by_color_boxes: dict[int, list[Box]] = {}
    for box in shape.boxes():
        by_color_boxes.setdefault(shape.box_color(box), []).append(box)
    for chain in by_color_boxes.values():
        chain.sort()  # componentwise order on one color chain is row order
    by_color_vertices: dict[int, list[int]] = {}
    for v in range(amb.n, 0, -1):  # descending index = ascending order
        by_color_vertices.setdefault(amb.colors[v - 1], []).append(v)

    if sorted(by_color_boxes) != sorted(by_color_vertices):
        raise AssertionError(f"color mismatch between grid and ambient for {shape}")
    box_to_vertex: dict[Box, int] = {}
    for c, boxes in by_color_boxes.items():
        vs = by_color_vertices[c]
        if len(vs) != len(boxes):
            raise AssertionError(f"color {c} chain lengths differ for {shape}")
        box_to_vertex.update(zip(boxes, vs))

    items = list(box_to_vertex.items())
    for b1, v1 in items:
        for b2, v2 in items:
            grid_leq = b1[0] <= b2[0] and b1[1] <= b2[1]
            if grid_leq != amb.leq(v1, v2):
                raise AssertionError(
                    f"grid/ambient order mismatch at {b1},{b2} for {shape}"
                )
    return box_to_vertex, {v: b for b, v in box_to_vertex.items()}


def box_to_vertex(shape: GrassmannianShape, box: Box) -> int:
    return _grid_maps(shape)[0][box]


def vertex_to_box(shape: GrassmannianShape, vertex: int) -> Box:
    return _grid_maps(shape)[1][vertex]


def partition_to_ideal(shape: GrassmannianShape, lam: Partition) -> Ideal:
    _check_fits(shape, lam)
    fwd = _grid_maps(shape)[0]
    mask = 0
    for i, part in enumerate(lam.parts, start=1):
        for j in range(1, part + 1):
            mask |= 1 << (fwd[(i, j)] - 1)
    return heap.make_ideal(shape.ambient, mask)


def ideal_to_partition(shape: GrassmannianShape, ideal: Ideal) -> Partition:
    if ideal.ambient is not shape.ambient:
        raise ValueError("ideal does not belong to this shape's ambient quiver")
    rev = _grid_maps(shape)[1]
    rows = [0] * shape.k
    for v in ideal.members:
        i, j = rev[v]
        rows[i - 1] = max(rows[i - 1], j)
    return Partition(tuple(rows))


def partition_to_permutation(shape: GrassmannianShape, lam: Partition) -> tuple[int, ...]:
    """One-line Grassmannian permutation: position k+1-i gets value
    k+1-i+lambda_i, the remaining values fill the tail in ascending order."""
    _check_fits(shape, lam)
    k, n = shape.k, shape.n
    parts = list(lam.parts) + [0] * (k - len(lam.parts))
    w = [0] * n
    used = set()
    for i, part in enumerate(parts, start=1):
        w[k - i] = k + 1 - i + part
        used.add(w[k - i])
    rest = iter(sorted(set(range(1, n + 1)) - used))
    for pos in range(k, n):
        w[pos] = next(rest)
    return tuple(w)


def permutation_to_partition(shape: GrassmannianShape, w: Sequence[int]) -> Partition:
    k, n = shape.k, shape.n
    w = tuple(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{n}")
    descents = [i for i in range(1, n) if w[i - 1] > w[i]]
    if descents and descents != [k]:
        raise ValueError(f"{w} is not Grassmannian with descent at {k}")
    parts = tuple(w[k - i] - (k + 1 - i) for i in range(1, k + 1))
    lam = Partition(parts)
    _check_fits(shape, lam)
    return lam


def word_to_permutation(n: int, word: Sequence[int]) -> tuple[int, ...]:
    """One-line form of the product of adjacent transpositions spelled by
    ``word`` (first letter is the leftmost factor)."""
    out = []
    for x in range(1, n + 1):
        for letter in reversed(tuple(word)):
            if x == letter:
                x = letter + 1
            elif x == letter + 1:
                x = letter
        out.append(x)
    return tuple(out)


def oracle_smooth(lam: Partition) -> bool:
    """Classical fact: smooth iff the partition is a rectangle."""
    return len(set(lam.parts)) <= 1


def oracle_gorenstein(shape: GrassmannianShape, lam: Partition) -> bool:
    """Classical fact: Gorenstein iff all outer corners of the partition sit
    on one antidiagonal i + lambda_i."""
    _check_fits(shape, lam)
    parts = lam.parts
    corners = [
        i + parts[i - 1]
        for i in range(1, len(parts) + 1)
        if i == len(parts) or parts[i - 1] > parts[i]
    ]
    return len(set(corners)) <= 1
