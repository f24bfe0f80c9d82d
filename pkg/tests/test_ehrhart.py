from fractions import Fraction

import pytest

from cue_lab.errors import DegreeDeficiencyError, ResourceLimitError, SizeMismatchError
from cue_lab.partitions import Partition
from cue_lab.polytope_ehrhart import (
    brute_force_count,
    ehrhart_birkhoff,
    ehrhart_polynomial,
    ehrhart_subbirkhoff,
    ehrhart_transport,
    interpolate_ehrhart,
)


def test_birkhoff_known_values():
    assert [ehrhart_birkhoff(3, t) for t in range(4)] == [1, 6, 21, 55]
    assert ehrhart_birkhoff(2, 5) == 6


def test_subbirkhoff_small_values():
    assert [ehrhart_subbirkhoff(2, t) for t in range(4)] == [1, 7, 26, 70]
    assert [ehrhart_subbirkhoff(1, t) for t in range(4)] == [1, 2, 3, 4]


def test_subbirkhoff_three_by_three_against_brute_force():
    for t in range(3):
        assert ehrhart_subbirkhoff(3, t) == brute_force_count([t] * 3, [t] * 3, mode="at-most")


def test_subbirkhoff_is_not_the_one_letter_shortcut():
    # the shortcut counts B_{k+1}; that coincides with S_k only at k = 1
    assert ehrhart_subbirkhoff(2, 2) != ehrhart_birkhoff(3, 2)


def test_transport_size_mismatch():
    with pytest.raises(SizeMismatchError):
        ehrhart_transport(Partition((2,)), Partition((1,)), 1)


def test_guard():
    with pytest.raises(ResourceLimitError):
        ehrhart_birkhoff(5, 1)


def test_interpolation_leading_coefficients():
    assert ehrhart_polynomial("birkhoff", 3).leading_coefficient == Fraction(1, 8)
    assert ehrhart_polynomial("subbirkhoff", 2).leading_coefficient == Fraction(1, 6)


def test_interpolation_degree_deficiency():
    with pytest.raises(DegreeDeficiencyError):
        interpolate_ehrhart([(0, 1), (1, 2)], 2)
