from fractions import Fraction
from math import comb

import pytest

from cue_lab.partitions import (
    Partition,
    box_complement,
    conjugate,
    dimension,
    enumerate_box,
    hook_product,
    partitions_of,
    rectangle,
)
from cue_lab.symfun import (
    bareiss_det,
    hseries_from_points,
    hseries_ones,
    kostka,
    schur_rect_jacobi_trudi,
    weyl_dimension,
)


def test_partition_normalises_zeros_and_rejects_bad_input():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_conjugate_is_involution():
    for lam in partitions_of(7):
        assert conjugate(conjugate(lam)) == lam


def test_hook_length_dimension_sums_to_factorial():
    from math import factorial

    for n in range(1, 7):
        assert sum(dimension(l) ** 2 for l in partitions_of(n)) == factorial(n)
    assert hook_product(Partition((2, 1))) == 3


def test_box_complement_involution():
    for mu in enumerate_box(3, 2, 3):
        assert box_complement(box_complement(mu, 3, 2), 3, 2) == mu


def test_rectangle():
    assert rectangle(3, 2).parts == (3, 3)


def test_bareiss_matches_fraction_det():
    m = [[2, 1, 3], [0, 4, 1], [5, 2, 0]]
    assert bareiss_det(m) == 2 * (0 - 2) - 1 * (0 - 5) + 3 * (0 - 20)
    assert bareiss_det([[Fraction(1, 2), 1], [1, 2]]) == 0


def test_weyl_dimension_of_single_row_is_binomial():
    for n in range(1, 6):
        for r in range(6):
            assert weyl_dimension(Partition((r,)), n) == comb(n + r - 1, r)


def test_jacobi_trudi_on_ones_is_weyl_dimension():
    for N in range(1, 6):
        for k in range(1, 4):
            hs = hseries_ones(2 * k, N * k + 1)
            assert schur_rect_jacobi_trudi(N, k, hs) == weyl_dimension(rectangle(N, k), 2 * k)


def test_hseries_points_complete_homogeneous():
    hs = hseries_from_points([Fraction(1), Fraction(2)], 3)
    # h_2(1,2) = 1 + 2 + 4
    assert hs.h(2) == 7


def test_kostka_small():
    assert kostka(Partition((2, 1)), [1, 1, 1]) == 2
    assert kostka(Partition((3,)), [2, 1]) == 1
