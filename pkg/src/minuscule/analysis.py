"""Geometric verdicts read off a Schubert quiver.

Everything here is a pure function of an :class:`~minuscule.heap.Ideal`:
smoothness, Gorenstein-ness, essential and Gorenstein holes, singular-locus
components with their generic-singularity shape, stabilizer stability with
hole-offset reconstruction, the (WY) property, the Gorenstein-locus verdict,
and the canonical peak-height partition.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from . import heap, rootsys
from .heap import AmbientQuiver, HoleRecord, Ideal


class QuiverClass(Enum):
    """Three-way classification of a simple root against a quiver."""

    PEAK = "peak"
    HOLE = "hole"
    LEVI = "levi"


@dataclass(frozen=True)
class PosetShape:
    """A vertex subset presented as a standalone colored poset."""

    vertices: tuple[int, ...]
    colors: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SingularComponent:
    """One irreducible component of the singular locus: indexed by an
    essential hole, with the subvariety's ideal and the shape whose bottom
    fixed point carries the generic singularity."""

    hole: HoleRecord
    component_ideal: Ideal
    singularity_shape: PosetShape


@dataclass(frozen=True)
class CanonicalPartition:
    """Partition of a quiver by peak height classes (ascending height)."""

    peak_classes: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    block_minima: tuple[int, ...]
    block_words: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AnalysisReport:
    space: str
    ideal_mask: str
    dimension: int
    smooth: bool
    gorenstein: bool
    holes: tuple[HoleRecord, ...]
    singular_components: tuple[SingularComponent, ...]
    non_gorenstein_holes: tuple[int, ...]
    canonical_partition: CanonicalPartition


def dimension(ideal: Ideal) -> int:
    return ideal.size


def is_smooth(ideal: Ideal) -> bool:
    """Smooth iff every hole is virtual."""
    return all(h.is_virtual for h in heap.holes(ideal))


def is_gorenstein(ideal: Ideal) -> bool:
    """Gorenstein iff all peaks share one height."""
    h = heap.heights(ideal)
    peak_heights = {h[v] for v in heap.peaks(ideal)}
    return len(peak_heights) <= 1


def _shape_of(ambient: AmbientQuiver, mask: int) -> PosetShape:
    vertices = heap.vertices_of(mask)
    colors = tuple(ambient.colors[v - 1] for v in vertices)
    arrows = tuple(
        (i, j) for (i, j) in ambient.arrows if mask >> (i - 1) & 1 and mask >> (j - 1) & 1
    )
    return PosetShape(vertices, colors, arrows)


def _upset_is_gorenstein(ambient: AmbientQuiver, upset_mask: int) -> bool:
    # heights are intrinsic to the up-set viewed as its own quiver
    h = heap.heights_in(ambient, upset_mask)
    tops = heap.maximal_in(ambient, upset_mask)
    return len({h[v] for v in tops}) <= 1


@lru_cache(maxsize=None)
def annotated_holes(ideal: Ideal) -> tuple[HoleRecord, ...]:
    """All holes with essential/Gorenstein flags filled in.

    A non-virtual hole is essential when no other hole vertex sits in its
    up-set (the hole itself always does and is ignored; virtual hole
    vertices lie outside the ideal, hence outside every up-set).
    """
    records = heap.holes(ideal)
    hole_vertices = heap.mask_of(r.vertex for r in records)
    out = []
    for rec in records:
        if rec.is_virtual:
            out.append(rec)
            continue
        upset = heap.up_set_mask(ideal, rec.vertex)
        essential = not (upset & hole_vertices & ~(1 << (rec.vertex - 1)))
        if essential:
            gor = _upset_is_gorenstein(ideal.ambient, upset)
            out.append(replace(rec, is_essential=True, is_gorenstein=gor))
        else:
            out.append(replace(rec, is_essential=False))
    return tuple(out)


def essential_holes(ideal: Ideal) -> tuple[HoleRecord, ...]:
    return tuple(r for r in annotated_holes(ideal) if r.is_essential)


def is_gorenstein_hole(ideal: Ideal, hole: HoleRecord) -> bool:
    for rec in annotated_holes(ideal):
        if rec.vertex == hole.vertex:
            if not rec.is_essential:
                raise ValueError(
                    f"vertex {hole.vertex} is not an essential hole of {ideal.hex_mask}"
                )
            return bool(rec.is_gorenstein)
    raise ValueError(f"vertex {hole.vertex} is not a hole of {ideal.hex_mask}")


def singular_components(ideal: Ideal) -> tuple[SingularComponent, ...]:
    """One component per essential hole, ascending by hole vertex."""
    out = []
    for rec in essential_holes(ideal):
        upset = heap.up_set_mask(ideal, rec.vertex)
        out.append(
            SingularComponent(
                hole=rec,
                component_ideal=heap.ideal_minus(ideal, rec.vertex),
                singularity_shape=_shape_of(ideal.ambient, upset),
            )
        )
    return tuple(out)


def non_gorenstein_hole_vertices(ideal: Ideal) -> tuple[int, ...]:
    return tuple(
        r.vertex for r in annotated_holes(ideal) if r.is_essential and not r.is_gorenstein
    )


def _require_nested(big: Ideal, small: Ideal) -> None:
    if small.ambient is not big.ambient:
        raise ValueError("ideals belong to different ambient quivers")
    if small.mask & ~big.mask:
        raise ValueError(
            f"{small.hex_mask} is not contained in {big.hex_mask}"
        )


def gorenstein_locus_contains(big: Ideal, small: Ideal) -> bool:
    """Whether the generic point of the subvariety lies in the Gorenstein
    locus: the small quiver must contain every non-Gorenstein hole of the
    big one."""
    _require_nested(big, small)
    return all(v in small for v in non_gorenstein_hole_vertices(big))


def has_property_WY(big: Ideal, small: Ideal) -> bool:
    """Every singular-locus component containing the subvariety has a
    Gorenstein generic point.  The component indexed by hole i contains
    the subvariety exactly when i is outside the small ideal."""
    _require_nested(big, small)
    return all(
        rec.is_gorenstein
        for rec in essential_holes(big)
        if rec.vertex not in small
    )


@lru_cache(maxsize=None)
def _hole_colors(ideal: Ideal) -> frozenset[int]:
    return frozenset(r.color for r in heap.holes(ideal))


def is_stable(big: Ideal, small: Ideal) -> bool:
    """Stability under the stabilizer of the big variety: hole colors of
    the small quiver must all be hole colors of the big one."""
    _require_nested(big, small)
    return _hole_colors(small) <= _hole_colors(big)


def _reconstruction(big: Ideal, small: Ideal) -> tuple[dict[int, int], int]:
    """Hole offsets k_i and the resulting intersection mask.

    k_i is one less than the number of same-color steps from hole i down
    to the first vertex of the small ideal; when the chain never meets the
    small ideal the deepest existing chain vertex is used, so the whole
    chain's up-set is removed.
    """
    amb = big.ambient
    offsets: dict[int, int] = {}
    inter = big.mask
    for rec in heap.holes(big):
        v: Optional[int] = rec.vertex
        step = 0
        last_step = 0
        k = None
        while v is not None:
            if v in small:
                k = step - 1
                break
            last_step = step
            v = amb.succ[v - 1]
            step += 1
        if k is None:
            k = last_step
        offsets[rec.vertex] = k
        if k >= 0:
            target = heap.successor_k(amb, rec.vertex, k)
            assert target is not None
            inter &= ~amb.up[target - 1]
    return offsets, inter


def stable_hole_offsets(big: Ideal, small: Ideal) -> dict[int, int]:
    """Offsets k_i >= -1 per hole of the big quiver whose up-set
    intersection reproduces the small quiver; raises when the pair is not
    stable or when the reconstruction fails."""
    if not is_stable(big, small):
        raise ValueError(
            f"{small.hex_mask} is not stable inside {big.hex_mask}"
        )
    offsets, inter = _reconstruction(big, small)
    if inter != small.mask:
        raise RuntimeError(
            f"hole-offset reconstruction of {small.hex_mask} inside "
            f"{big.hex_mask} produced {heap.hex_mask(inter)}"
        )
    return offsets


def reconstructs(big: Ideal, small: Ideal) -> bool:
    """Whether the hole-offset intersection reproduces the small ideal."""
    _require_nested(big, small)
    return _reconstruction(big, small)[1] == small.mask


@lru_cache(maxsize=None)
def canonical_partition(ideal: Ideal) -> CanonicalPartition:
    """Peak classes by ascending height and the induced quiver partition;
    each block gets its own reading word, and the concatenation must stay
    reduced (checked by inversion count).

    When equal-height peaks fall in one class, their raw block can be
    disconnected (first seen at A7/4, partition 4,3,3,1) and would have
    several minimal vertices; such a block is split into its connected
    components, each listed with the peaks it contains."""
    if ideal.mask == 0:
        raise ValueError("canonical partition is only defined for nonempty ideals")
    amb = ideal.ambient
    h = heap.heights(ideal)
    pk = sorted(heap.peaks(ideal))
    levels = sorted({h[p] for p in pk})
    raw_classes = tuple(tuple(p for p in pk if h[p] == lvl) for lvl in levels)
    class_index = {p: i for i, cls in enumerate(raw_classes) for p in cls}

    raw_masks = [0] * len(raw_classes)
    for v in heap.vertices_of(ideal.mask):
        top = max(class_index[p] for p in pk if amb.leq(v, p))
        raw_masks[top] |= 1 << (v - 1)

    classes_list: list[tuple[int, ...]] = []
    block_masks: list[int] = []
    for cls, raw in zip(raw_classes, raw_masks):
        pieces = heap.connected_components(amb, heap.vertices_of(raw))
        for piece in pieces:
            m = heap.mask_of(piece)
            classes_list.append(tuple(p for p in cls if (m >> (p - 1)) & 1))
            block_masks.append(m)
    classes = tuple(classes_list)

    blocks = tuple(heap.vertices_of(m) for m in block_masks)
    minima = []
    for m in block_masks:
        mins = heap.minimal_in(amb, m)
        if len(mins) != 1:
            raise AssertionError(
                f"block {heap.hex_mask(m)} of {ideal.hex_mask} has minima {mins}"
            )
        minima.append(mins[0])
    words = tuple(heap.reading_word(amb, m) for m in block_masks)

    concat = tuple(c for w in words for c in w)
    if rootsys.length_by_inversions(amb.space.root_system, concat) != ideal.size:
        raise AssertionError(
            f"block word concatenation for {ideal.hex_mask} is not reduced"
        )
    return CanonicalPartition(classes, blocks, tuple(minima), words)


def zk_image(ideal: Ideal, avoid: Iterable[int]) -> list[frozenset[int]]:
    """Per block of the canonical partition, the largest ideal of the block
    (as a standalone poset) avoiding the given vertices."""
    amb = ideal.ambient
    forbidden = 0
    for v in avoid:
        amb.check_vertex(v)
        if v not in ideal:
            raise ValueError(f"vertex {v} is not in the ideal {ideal.hex_mask}")
        forbidden |= 1 << (v - 1)
    cp = canonical_partition(ideal)
    out = []
    for block in cp.blocks:
        bm = heap.mask_of(block)
        removed = 0
        for k in heap.vertices_of(bm & forbidden):
            removed |= amb.up[k - 1] & bm
        out.append(frozenset(heap.vertices_of(bm & ~removed)))
    return out


def classify_simple_root_via_quiver(ideal: Ideal, node: int) -> QuiverClass:
    """Peak / hole / Levi classification of the simple root at ``node``
    against the ideal's quiver colors."""
    amb = ideal.ambient
    amb.space.root_system.check_node(node)
    peak_colors = {amb.colors[v - 1] for v in heap.peaks(ideal)}
    hole_colors = _hole_colors(ideal)
    if node in peak_colors and node in hole_colors:
        raise RuntimeError(
            f"node {node} is both a peak and a hole color of {ideal.hex_mask}"
        )
    if node in peak_colors:
        return QuiverClass.PEAK
    if node in hole_colors:
        return QuiverClass.HOLE
    return QuiverClass.LEVI


_EMPTY_PARTITION = CanonicalPartition((), (), (), ())


def analyze(ideal: Ideal) -> AnalysisReport:
    """Full verdict for one Schubert variety; deterministic in the ideal."""
    holes = annotated_holes(ideal)
    cp = canonical_partition(ideal) if ideal.mask else _EMPTY_PARTITION
    return AnalysisReport(
        space=str(ideal.ambient.space),
        ideal_mask=ideal.hex_mask,
        dimension=ideal.size,
        smooth=is_smooth(ideal),
        gorenstein=is_gorenstein(ideal),
        holes=holes,
        singular_components=singular_components(ideal),
        non_gorenstein_holes=non_gorenstein_hole_vertices(ideal),
        canonical_partition=cp,
    )
