from fractions import Fraction

import pytest

from cue_lab.convergence_harness import (
    compare_with_constant,
    convergence_table,
    exact_value,
    rate_ratios,
    richardson,
)
from cue_lab.errors import InsufficientDataError, UnknownFunctionalError


def test_table_rescaling():
    rows = convergence_table("KS", {"k": 1}, [1, 2, 4])
    assert [r.exact for r in rows] == [2, 3, 5]
    assert rows[2].rescaled == Fraction(5, 4)


def test_workers_do_not_change_the_table():
    a = convergence_table("KS", {"k": 2}, [4, 8, 16])
    b = convergence_table("KS", {"k": 2}, [4, 8, 16], workers=2)
    assert [r.exact for r in a] == [r.exact for r in b]


def test_richardson_removes_first_order_term():
    vals = [(N, Fraction(1) + Fraction(3, N)) for N in (10, 20, 40)]
    ext = richardson(vals)
    assert ext.value == 1 and ext.abs_error == 0


def test_richardson_needs_a_pair():
    with pytest.raises(InsufficientDataError):
        richardson([(10, Fraction(1)), (30, Fraction(1))])


def test_rate_ratios_first_order():
    vals = [(N, Fraction(1) + Fraction(1, N)) for N in (10, 20)]
    assert rate_ratios(vals, 1) == [0.5]


def test_zt_stable_range_guard():
    with pytest.raises(ValueError):
        exact_value("ZT", {"k": 3, "rho": Fraction(1, 2)}, 4)


def test_unknown():
    with pytest.raises(UnknownFunctionalError):
        convergence_table("XX", {}, [1])


def test_ks_comparison_passes():
    cmp = compare_with_constant("KS", {"k": 2}, [100, 200, 400], 0.01)
    assert cmp.passed, cmp
