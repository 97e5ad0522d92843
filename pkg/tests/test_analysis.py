"""Geometric verdicts: smoothness, Gorenstein-ness, singular locus,
stability, Gorenstein locus, canonical partition."""

import pytest

from minuscule import analysis, heap, typea
from minuscule.analysis import (
    QuiverClass,
    analyze,
    canonical_partition,
    essential_holes,
    gorenstein_locus_contains,
    has_property_WY,
    is_gorenstein,
    is_smooth,
    is_stable,
    reconstructs,
    singular_components,
    stable_hole_offsets,
    zk_image,
)
from minuscule.heap import MinusculeSpace, build_ambient_quiver, enumerate_ideals, make_ideal
from minuscule.rootsys import DynkinType, build_root_system


G47_SHAPE = typea.GrassmannianShape(4, 7)


def worked_ideal():
    return typea.partition_to_ideal(G47_SHAPE, typea.Partition((3, 2, 1, 1)))


def a_ideal(parts, shape=G47_SHAPE):
    return typea.partition_to_ideal(shape, typea.Partition(parts))


def boxes(vertices):
    return sorted(typea.vertex_to_box(G47_SHAPE, v) for v in vertices)


def ambient(family, rank, node):
    return build_ambient_quiver(
        MinusculeSpace(build_root_system(DynkinType(family, rank)), node)
    )


def test_worked_example_verdicts():
    ideal = worked_ideal()
    assert analysis.dimension(ideal) == 7
    assert not is_smooth(ideal)
    assert not is_gorenstein(ideal)


def test_worked_example_essential_holes():
    ideal = worked_ideal()
    ess = essential_holes(ideal)
    assert len(ess) == 2
    by_color = {r.color: r for r in ess}
    # box (2,1) carries color 3 and is the non-Gorenstein hole; box (1,2)
    # carries color 5 and is Gorenstein
    assert boxes([by_color[3].vertex]) == [(2, 1)]
    assert boxes([by_color[5].vertex]) == [(1, 2)]
    assert by_color[3].is_gorenstein is False
    assert by_color[5].is_gorenstein is True


def test_worked_example_singular_components():
    ideal = worked_ideal()
    comps = singular_components(ideal)
    assert len(comps) == 2
    parts = sorted(
        typea.ideal_to_partition(G47_SHAPE, c.component_ideal).parts for c in comps
    )
    assert parts == [(1, 1, 1, 1), (3,)]
    perms = {
        typea.ideal_to_partition(G47_SHAPE, c.component_ideal).parts:
        typea.partition_to_permutation(
            G47_SHAPE, typea.ideal_to_partition(G47_SHAPE, c.component_ideal)
        )
        for c in comps
    }
    assert perms[(3,)] == (1, 2, 3, 7, 4, 5, 6)
    assert perms[(1, 1, 1, 1)] == (2, 3, 4, 5, 1, 6, 7)


def test_worked_example_singularity_shapes():
    # the Gorenstein hole looks up at a 3-vertex wedge, the non-Gorenstein
    # one at a 4-vertex quiver whose peaks sit at different heights
    ideal = worked_ideal()
    shapes = {
        c.hole.color: c.singularity_shape for c in singular_components(ideal)
    }
    assert len(shapes[5].vertices) == 3
    assert len(shapes[3].vertices) == 4
    amb = ideal.ambient
    for shape in shapes.values():
        assert shape.colors == tuple(amb.color(v) for v in shape.vertices)


def test_smooth_iff_no_components():
    for amb in [ambient("A", 4, 2), ambient("D", 4, 4), ambient("E", 6, 1)]:
        for ideal in enumerate_ideals(amb):
            assert is_smooth(ideal) == (not singular_components(ideal))
            if is_smooth(ideal):
                assert is_gorenstein(ideal)


def test_full_and_small_ideals_smooth():
    amb = ambient("A", 6, 4)
    assert is_smooth(make_ideal(amb, amb.full_mask))
    assert is_smooth(make_ideal(amb, 0))
    assert is_smooth(a_ideal((3, 3)))
    assert not is_smooth(a_ideal((3, 1)))


def test_gorenstein_examples():
    assert is_gorenstein(a_ideal((2, 1), typea.GrassmannianShape(2, 4)))
    assert is_gorenstein(a_ideal((1, 1, 1, 1)))
    assert not is_gorenstein(a_ideal((3, 2, 1, 1)))


def test_gorenstein_locus_matches_wy_on_worked_example():
    big = worked_ideal()
    amb = big.ambient
    hole3 = next(
        r.vertex for r in essential_holes(big) if r.color == 3
    )
    for small in enumerate_ideals(amb):
        if small.mask & ~big.mask:
            continue
        locus = gorenstein_locus_contains(big, small)
        assert locus == has_property_WY(big, small)
        # generic point fails to be Gorenstein exactly when the small
        # variety misses the non-Gorenstein hole vertex
        assert locus == (hole3 in small)


def test_stability_and_reconstruction_agree():
    for amb in [ambient("A", 5, 2), ambient("D", 5, 5)]:
        ideals = list(enumerate_ideals(amb))
        for big in ideals:
            for small in ideals:
                if small.mask & ~big.mask:
                    continue
                assert is_stable(big, small) == reconstructs(big, small)


def test_stable_offsets_reject_unstable():
    big = worked_ideal()
    amb = big.ambient
    # the slice partition (2,2) has a hole color that the big quiver lacks
    small = a_ideal((2, 2))
    assert not is_stable(big, small)
    with pytest.raises(ValueError):
        stable_hole_offsets(big, small)


def test_stable_offsets_reconstruct():
    big = worked_ideal()
    small = a_ideal((3,))
    assert is_stable(big, small)
    offsets = stable_hole_offsets(big, small)
    # k = -1 marks a hole already inside the small ideal (nothing removed)
    assert all(k >= -1 for k in offsets.values())
    assert any(k >= 0 for k in offsets.values())


def test_canonical_partition_worked_example():
    cp = canonical_partition(worked_ideal())
    assert [boxes(b) for b in cp.blocks] == [
        [(1, 2), (1, 3), (2, 2)],
        [(1, 1), (2, 1), (3, 1), (4, 1)],
    ]
    amb = worked_ideal().ambient
    assert [amb.color(m) for m in cp.block_minima] == [5, 4]
    assert cp.block_words == ((4, 6, 5), (1, 2, 3, 4))
    assert [len(c) for c in cp.peak_classes] == [2, 1]


def test_canonical_partition_single_block_when_gorenstein():
    cp = canonical_partition(a_ideal((1, 1, 1, 1)))
    assert len(cp.blocks) == 1
    cp = canonical_partition(a_ideal((3, 3, 3)))
    assert len(cp.blocks) == 1


def test_canonical_partition_rejects_empty():
    amb = ambient("A", 3, 1)
    with pytest.raises(ValueError):
        canonical_partition(make_ideal(amb, 0))


def test_canonical_partition_splits_tied_disconnected_class():
    # two peaks of equal height whose down-sets only meet below a higher
    # peak: the tied class falls apart into two singleton blocks
    shape = typea.GrassmannianShape(4, 8)
    ideal = a_ideal((4, 3, 3, 1), shape)
    cp = canonical_partition(ideal)
    assert [len(b) for b in cp.blocks] == [1, 1, 9]
    assert len(set(cp.block_minima)) == 3


def test_canonical_partition_invariants_sweep():
    for amb in [ambient("A", 6, 4), ambient("D", 5, 4), ambient("E", 6, 6)]:
        for ideal in enumerate_ideals(amb):
            if ideal.mask == 0:
                continue
            cp = canonical_partition(ideal)
            flat = sorted(v for b in cp.blocks for v in b)
            assert flat == sorted(ideal.members)
            assert len(cp.block_minima) == len(set(cp.block_minima))
            assert sum(len(w) for w in cp.block_words) == ideal.size


def test_zk_image_worked_example():
    ideal = worked_ideal()
    box_vertex = {
        typea.vertex_to_box(G47_SHAPE, v): v for v in ideal.members
    }
    blocks = zk_image(ideal, [])
    assert [boxes(b) for b in blocks] == [
        [(1, 2), (1, 3), (2, 2)],
        [(1, 1), (2, 1), (3, 1), (4, 1)],
    ]
    blocks = zk_image(ideal, [box_vertex[(2, 1)]])
    assert boxes(blocks[0]) == [(1, 2), (1, 3), (2, 2)]
    assert boxes(blocks[1]) == [(1, 1)]
    with pytest.raises(ValueError):
        zk_image(ideal, [ideal.ambient.n + 100])


def test_classify_simple_root_worked_example():
    ideal = worked_ideal()
    assert analysis.classify_simple_root_via_quiver(ideal, 1) is QuiverClass.PEAK
    assert analysis.classify_simple_root_via_quiver(ideal, 3) is QuiverClass.HOLE
    assert analysis.classify_simple_root_via_quiver(ideal, 2) is QuiverClass.LEVI


def test_analyze_report_consistency():
    report = analyze(worked_ideal())
    assert report.space == "A6/4"
    assert report.ideal_mask == "0xfc8"
    assert report.dimension == 7
    assert not report.smooth and not report.gorenstein
    assert len(report.singular_components) == 2
    assert len(report.non_gorenstein_holes) == 1


def test_analyze_empty_ideal():
    amb = ambient("D", 4, 4)
    report = analyze(make_ideal(amb, 0))
    assert report.dimension == 0
    assert report.smooth and report.gorenstein
    assert report.singular_components == ()
    assert report.canonical_partition.blocks == ()
