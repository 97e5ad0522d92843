"""Grassmannian dictionary: partitions, permutations, and the two oracles."""

import pytest

from minuscule import heap, typea
from minuscule.typea import (
    GrassmannianShape,
    Partition,
    ideal_to_partition,
    oracle_gorenstein,
    oracle_smooth,
    partition_to_ideal,
    partition_to_permutation,
    permutation_to_partition,
    word_to_permutation,
)


G47 = GrassmannianShape(4, 7)


def test_shape_space():
    assert str(G47.space) == "A6/4"
    assert GrassmannianShape(1, 4).space.node == 1


def test_partition_validation():
    assert Partition((3, 2, 1, 1)).parts == (3, 2, 1, 1)
    assert Partition((2, 0, 0)).parts == (2,)
    assert Partition(()).parts == ()
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_partition_string_round_trip():
    lam = Partition.from_string("3,2,1,1")
    assert lam.parts == (3, 2, 1, 1)
    assert str(lam) == "3,2,1,1"
    assert Partition.from_string("").parts == ()


def test_partition_fits_box():
    assert Partition((3, 3)).fits(G47)
    assert not Partition((4,)).fits(G47)
    assert not Partition((1, 1, 1, 1, 1)).fits(G47)


def test_box_vertex_bijection_is_order_isomorphism():
    seen = set()
    for i in range(1, 5):
        for j in range(1, 4):
            v = typea.box_to_vertex(G47, (i, j))
            assert typea.vertex_to_box(G47, v) == (i, j)
            seen.add(v)
    assert seen == set(range(1, 13))
    # minimal box (1,1) is the quiver minimum; colors follow k - i + j
    amb = heap.build_ambient_quiver(G47.space)
    assert typea.box_to_vertex(G47, (1, 1)) == amb.n
    for i in range(1, 5):
        for j in range(1, 4):
            assert amb.color(typea.box_to_vertex(G47, (i, j))) == 4 - i + j


def test_partition_ideal_round_trip():
    for parts in [(), (1,), (3, 3, 3, 3), (3, 2, 1, 1), (2, 2, 1)]:
        lam = Partition(parts)
        ideal = partition_to_ideal(G47, lam)
        assert ideal.size == sum(parts)
        assert ideal_to_partition(G47, ideal) == lam


def test_partition_to_permutation_worked_example():
    lam = Partition((3, 2, 1, 1))
    assert partition_to_permutation(G47, lam) == (2, 3, 5, 7, 1, 4, 6)
    assert permutation_to_partition(G47, (2, 3, 5, 7, 1, 4, 6)) == lam


def test_partition_to_permutation_edges():
    assert partition_to_permutation(G47, Partition(())) == (1, 2, 3, 4, 5, 6, 7)
    assert partition_to_permutation(G47, Partition((3, 3, 3, 3))) == (
        4, 5, 6, 7, 1, 2, 3,
    )


def test_permutation_to_partition_rejects_bad_descent():
    with pytest.raises(ValueError):
        permutation_to_partition(G47, (2, 1, 3, 4, 5, 6, 7))  # descent at 1


def test_word_to_permutation_worked_example():
    assert word_to_permutation(7, (1, 2, 4, 6, 3, 5, 4)) == (2, 3, 5, 7, 1, 4, 6)
    assert word_to_permutation(4, ()) == (1, 2, 3, 4)


def test_oracles_basic():
    assert oracle_smooth(Partition((3, 3)))
    assert oracle_smooth(Partition(()))
    assert not oracle_smooth(Partition((3, 1)))
    assert oracle_gorenstein(G47, Partition((1, 1, 1, 1)))
    assert not oracle_gorenstein(G47, Partition((3, 2, 1, 1)))
    # corners (1,3) and (3,1) share the antidiagonal i + lambda_i = 4
    assert oracle_gorenstein(G47, Partition((3, 1, 1)))
