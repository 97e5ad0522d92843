"""Ambient quivers of minuscule homogeneous spaces and their order ideals.

The ambient quiver is built once per space from a reduced word of the
longest minimal coset representative; Schubert varieties are the order
ideals of that quiver, stored as bitmasks over the vertex set (vertex v is
bit v-1).  Vertex indices follow word position: vertex 1 is the first
letter, vertex N the last, and N is the unique minimum of the partial
order (i <= j iff there is an oriented arrow path from j to i).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import rootsys
from .rootsys import RootSystem


class NotAnIdealError(ValueError):
    """A vertex set that is not downward closed, with one violating pair."""

    def __init__(self, below: int, member: int):
        self.violating = (below, member)
        super().__init__(
            f"not an order ideal: vertex {member} is in the set but "
            f"{below} <= {member} is not"
        )


@dataclass(frozen=True)
class MinusculeSpace:
    """A simply-laced root system with a marked minuscule node."""

    root_system: RootSystem
    node: int

    def __post_init__(self) -> None:
        if self.node not in rootsys.minuscule_nodes(self.root_system):
            raise ValueError(
                f"node {self.node} is not minuscule for {self.root_system.dynkin}"
            )

    def __str__(self) -> str:
        return f"{self.root_system.dynkin}/{self.node}"


@dataclass(frozen=True, eq=False)
class AmbientQuiver:
    """Colored quiver of the full space; immutable, identity-hashed.

    down[v-1] / up[v-1] are bitmasks of the vertices below / above v
    (inclusive); children[v-1] lists the arrow targets of v.
    """

    space: MinusculeSpace
    colors: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]
    succ: tuple[Optional[int], ...]
    pred: tuple[Optional[int], ...]
    down: tuple[int, ...]
    up: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    orbit_size: int

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def color(self, v: int) -> int:
        return self.colors[v - 1]

    def leq(self, u: int, v: int) -> bool:
        """u <= v in the quiver order."""
        return bool(self.down[v - 1] >> (u - 1) & 1)

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")


@dataclass(frozen=True)
class Ideal:
    """A downward-closed vertex set of an ambient quiver (one Schubert
    variety)."""

    ambient: AmbientQuiver
    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.ambient.n + 1) if self.mask >> (v - 1) & 1)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> (v - 1) & 1)

    @property
    def hex_mask(self) -> str:
        return hex_mask(self.mask)


@dataclass(frozen=True)
class HoleRecord:
    """One hole of a quiver.  Essential/Gorenstein flags are filled by the
    analysis layer and stay None until then (Gorenstein is only meaningful
    for essential holes, essential only for non-virtual ones)."""

    vertex: int
    color: int
    is_virtual: bool
    is_essential: Optional[bool] = None
    is_gorenstein: Optional[bool] = None


def hex_mask(mask: int) -> str:
    return format(mask, "#x")


def parse_mask(text: str) -> int:
    value = int(text, 16)
    if value < 0:
        raise ValueError(f"negative ideal mask {text!r}")
    return value


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# construction


def _lower_weight(cartan, mu: tuple[int, ...], node: int) -> tuple[int, ...]:
    """Reflect a weight (given by its coroot pairings) at a simple node."""
    c = mu[node - 1]
    row = cartan[node - 1]
    return tuple(mu[j] - row[j] * c for j in range(len(mu)))


def _longest_minimal_word(rs: RootSystem, node: int) -> tuple[int, ...]:
    """Reduced word of the longest minimal coset representative, from a
    greedy descent through the weight orbit (smallest applicable node
    first); the word is the reversed label path."""
    mu = tuple(1 if j == node - 1 else 0 for j in range(rs.rank))
    labels = []
    while True:
        i = next((j + 1 for j in range(rs.rank) if mu[j] > 0), None)
        if i is None:
            break
        labels.append(i)
        mu = _lower_weight(rs.cartan, mu, i)
    return tuple(reversed(labels))


def _weight_orbit_size(rs: RootSystem, node: int) -> int:
    start = tuple(1 if j == node - 1 else 0 for j in range(rs.rank))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(1, rs.rank + 1):
                if mu[i - 1] != 0:
                    nu = _lower_weight(rs.cartan, mu, i)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
        frontier = nxt
    return len(seen)


@lru_cache(maxsize=None)
def build_ambient_quiver(space: MinusculeSpace) -> AmbientQuiver:
    rs = space.root_system
    cartan = rs.cartan
    word = _longest_minimal_word(rs, space.node)
    n = len(word)

    non_levi = sum(1 for r in rs.positive_roots if r[space.node - 1] != 0)
    if n != non_levi:
        raise AssertionError(f"{space}: word length {n} != {non_levi} non-Levi roots")
    if rootsys.length_by_inversions(rs, word) != n:
        raise AssertionError(f"{space}: longest-element word is not reduced")

    colors = word
    succ: list[Optional[int]] = [None] * n
    pred: list[Optional[int]] = [None] * n
    last_of_color: dict[int, int] = {}
    for v in range(1, n + 1):
        c = colors[v - 1]
        p = last_of_color.get(c)
        if p is not None:
            pred[v - 1] = p
            succ[p - 1] = v
        last_of_color[c] = v

    arrows = []
    children: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n + 1):
        ci = colors[i - 1]
        stop = succ[i - 1] if succ[i - 1] is not None else n + 1
        for j in range(i + 1, stop):
            if cartan[ci - 1][colors[j - 1] - 1] != 0:
                arrows.append((i, j))
                children[i - 1].append(j)

    down = [0] * n
    for v in range(n, 0, -1):
        m = 1 << (v - 1)
        for j in children[v - 1]:
            m |= down[j - 1]
        down[v - 1] = m
    up = [0] * n
    for v in range(1, n + 1):
        m = 1 << (v - 1)
        for i, j in arrows:
            if j == v:
                m |= up[i - 1]
        up[v - 1] = m

    quiver = AmbientQuiver(
        space=space,
        colors=colors,
        arrows=tuple(arrows),
        succ=tuple(succ),
        pred=tuple(pred),
        down=tuple(down),
        up=tuple(up),
        children=tuple(tuple(c) for c in children),
        orbit_size=_weight_orbit_size(rs, space.node),
    )
    _check_quiver(quiver)
    return quiver


def _check_quiver(q: AmbientQuiver) -> None:
    n = q.n
    bottom = 1 << (n - 1)
    if q.colors[n - 1] != q.space.node:
        raise AssertionError(f"{q.space}: last vertex has color {q.colors[n - 1]}")
    for v in range(1, n + 1):
        if not q.down[v - 1] & bottom:
            raise AssertionError(f"{q.space}: vertex {n} is not below vertex {v}")
    # vertices of equal color must form a chain
    by_color: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        by_color.setdefault(q.colors[v - 1], []).append(v)
    for c, vs in by_color.items():
        for a, b in zip(vs, vs[1:]):
            if not q.leq(b, a):
                raise AssertionError(
                    f"{q.space}: color {c} vertices {a},{b} are incomparable"
                )
    if len(connected_components(q, range(1, n + 1))) != 1:
        raise AssertionError(f"{q.space}: ambient quiver is not connected")


# ---------------------------------------------------------------------------
# ideals


def check_ideal(ambient: AmbientQuiver, mask: int) -> None:
    if mask >> ambient.n:
        raise ValueError(f"mask {hex_mask(mask)} has bits beyond vertex {ambient.n}")
    for v in range(1, ambient.n + 1):
        if mask >> (v - 1) & 1:
            missing = ambient.down[v - 1] & ~mask
            if missing:
                below = missing.bit_length()  # highest missing bit -> a vertex index
                raise NotAnIdealError(below, v)


def make_ideal(ambient: AmbientQuiver, mask: int) -> Ideal:
    check_ideal(ambient, mask)
    return Ideal(ambient, mask)


@lru_cache(maxsize=None)
def _ideal_masks(ambient: AmbientQuiver) -> tuple[int, ...]:
    seen = {0}
    stack = [0]
    while stack:
        m = stack.pop()
        for v in range(1, ambient.n + 1):
            b = 1 << (v - 1)
            if m & b:
                continue
            if ambient.down[v - 1] & ~(m | b):
                continue  # something below v is still missing
            nm = m | b
            if nm not in seen:
                seen.add(nm)
                stack.append(nm)
    return tuple(sorted(seen))


def enumerate_ideals(ambient: AmbientQuiver) -> Iterator[Ideal]:
    """All order ideals, in ascending bitmask order (empty first, full last)."""
    for m in _ideal_masks(ambient):
        yield Ideal(ambient, m)


def ideal_count(ambient: AmbientQuiver) -> int:
    return len(_ideal_masks(ambient))


# ---------------------------------------------------------------------------
# combinatorics on a vertex mask


def heights_in(ambient: AmbientQuiver, mask: int) -> dict[int, int]:
    """Longest arrow-path vertex count from each vertex of the mask, staying
    inside the mask; a sink has height 1."""
    h: dict[int, int] = {}
    for v in range(ambient.n, 0, -1):
        if not mask >> (v - 1) & 1:
            continue
        best = 0
        for j in ambient.children[v - 1]:
            if mask >> (j - 1) & 1:
                best = max(best, h[j])
        h[v] = best + 1
    return h


def maximal_in(ambient: AmbientQuiver, mask: int) -> tuple[int, ...]:
    return tuple(
        v
        for v in range(1, ambient.n + 1)
        if mask >> (v - 1) & 1 and ambient.up[v - 1] & mask == 1 << (v - 1)
    )


def minimal_in(ambient: AmbientQuiver, mask: int) -> tuple[int, ...]:
    return tuple(
        v
        for v in range(1, ambient.n + 1)
        if mask >> (v - 1) & 1 and ambient.down[v - 1] & mask == 1 << (v - 1)
    )


def reading_order(ambient: AmbientQuiver, mask: int) -> tuple[int, ...]:
    """Canonical linear extension of a vertex mask: descending height inside
    the mask, ties broken by ascending color.  Comparable vertices always
    differ in height, so this is order-compatible."""
    h = heights_in(ambient, mask)
    return tuple(sorted(h, key=lambda v: (-h[v], ambient.colors[v - 1])))


def reading_word(ambient: AmbientQuiver, mask: int) -> tuple[int, ...]:
    return tuple(ambient.colors[v - 1] for v in reading_order(ambient, mask))


def word_from_ideal(ideal: Ideal) -> tuple[int, ...]:
    """Canonical reduced word of the ideal's coset representative."""
    check_ideal(ideal.ambient, ideal.mask)
    return reading_word(ideal.ambient, ideal.mask)


def peaks(ideal: Ideal) -> frozenset[int]:
    """Vertices of the ideal maximal for the quiver order."""
    return frozenset(maximal_in(ideal.ambient, ideal.mask))


def heights(ideal: Ideal) -> dict[int, int]:
    return heights_in(ideal.ambient, ideal.mask)


def holes(ideal: Ideal) -> tuple[HoleRecord, ...]:
    """Holes of the ideal, virtual ones included, ascending by vertex.

    A member vertex is a hole when its same-color predecessor is missing
    and exactly two other member vertices above it pair nontrivially with
    its color.  An outside vertex is a virtual hole when it has no
    same-color successor anywhere and pairs nontrivially with some member.

    The empty ideal reports a single virtual hole at the bottom vertex:
    the identity coset representative sends the marked node's simple root
    to a positive non-Levi root, so the hole color set of the point must
    be exactly {marked node}, and the stabilizer reconstruction needs the
    same record.
    """
    amb = ideal.ambient
    mask = ideal.mask
    if mask == 0:
        return (HoleRecord(amb.n, amb.colors[amb.n - 1], is_virtual=True),)
    cartan = amb.space.root_system.cartan
    out = []
    for v in range(1, amb.n + 1):
        c = amb.colors[v - 1]
        bit = 1 << (v - 1)
        if mask & bit:
            p = amb.pred[v - 1]
            if p is not None and mask >> (p - 1) & 1:
                continue
            above = amb.up[v - 1] & mask & ~bit
            linked = sum(
                1
                for j in vertices_of(above)
                if cartan[c - 1][amb.colors[j - 1] - 1] != 0
            )
            if linked == 2:
                out.append(HoleRecord(v, c, is_virtual=False))
        else:
            if amb.succ[v - 1] is not None:
                continue
            if any(
                cartan[c - 1][amb.colors[j - 1] - 1] != 0
                for j in vertices_of(mask)
            ):
                out.append(HoleRecord(v, c, is_virtual=True))
    return tuple(out)


def up_set(ideal: Ideal, vertex: int) -> frozenset[int]:
    """Members of the ideal lying above ``vertex`` (inclusive)."""
    return frozenset(vertices_of(up_set_mask(ideal, vertex)))


def up_set_mask(ideal: Ideal, vertex: int) -> int:
    ideal.ambient.check_vertex(vertex)
    if vertex not in ideal:
        raise ValueError(f"vertex {vertex} is not in the ideal {ideal.hex_mask}")
    return ideal.ambient.up[vertex - 1] & ideal.mask


def ideal_minus(ideal: Ideal, vertex: int) -> Ideal:
    """The ideal with the up-set of ``vertex`` removed."""
    result = ideal.mask & ~up_set_mask(ideal, vertex)
    check_ideal(ideal.ambient, result)
    return Ideal(ideal.ambient, result)


def successor_k(ambient: AmbientQuiver, vertex: int, k: int) -> Optional[int]:
    """k-fold same-color successor inside the ambient quiver, or None."""
    ambient.check_vertex(vertex)
    if k < 0:
        raise ValueError("k must be >= 0")
    v: Optional[int] = vertex
    for _ in range(k):
        v = ambient.succ[v - 1]
        if v is None:
            return None
    return v


def ideal_avoiding(ideal: Ideal, avoid: Iterable[int]) -> Ideal:
    """Largest sub-ideal disjoint from the given member vertices."""
    amb = ideal.ambient
    forbidden = 0
    for v in avoid:
        amb.check_vertex(v)
        if v not in ideal:
            raise ValueError(f"vertex {v} is not in the ideal {ideal.hex_mask}")
        forbidden |= amb.up[v - 1]
    result = ideal.mask & ~forbidden
    check_ideal(amb, result)
    return Ideal(amb, result)


def connected_components(
    ambient: AmbientQuiver, subset: Iterable[int]
) -> list[frozenset[int]]:
    """Components of the induced subgraph, arrow direction ignored; sorted
    by smallest vertex."""
    todo = set(subset)
    for v in todo:
        ambient.check_vertex(v)
    neighbors: dict[int, set[int]] = {v: set() for v in todo}
    for i, j in ambient.arrows:
        if i in todo and j in todo:
            neighbors[i].add(j)
            neighbors[j].add(i)
    components = []
    while todo:
        seed = min(todo)
        comp = {seed}
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            for u in neighbors[v]:
                if u not in comp:
                    comp.add(u)
                    frontier.append(u)
        todo -= comp
        components.append(frozenset(comp))
    components.sort(key=min)
    return components


def quiver_from_word(
    rs: RootSystem, word: Sequence[int]
) -> tuple[tuple[int, ...], frozenset[tuple[int, int]]]:
    """Colors and arrows of the quiver built directly from a word, with
    vertices numbered by letter position.  Used to confirm that reading an
    ideal back off the ambient quiver reproduces the same shape."""
    letters = tuple(word)
    r = len(letters)
    succ: list[Optional[int]] = [None] * r
    last: dict[int, int] = {}
    for pos in range(1, r + 1):
        c = letters[pos - 1]
        if c in last:
            succ[last[c] - 1] = pos
        last[c] = pos
    arrows = set()
    for i in range(1, r + 1):
        stop = succ[i - 1] if succ[i - 1] is not None else r + 1
        for j in range(i + 1, stop):
            if rs.cartan[letters[i - 1] - 1][letters[j - 1] - 1] != 0:
                arrows.add((i, j))
    return letters, frozenset(arrows)
