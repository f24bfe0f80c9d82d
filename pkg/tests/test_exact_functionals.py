import cmath
from fractions import Fraction

import pytest

from cue_lab.errors import CoincidenceError, RangeError
from cue_lab.exact_functionals import (
    autocorr_det,
    autocorr_schur,
    dehaye_sign_probe,
    kr3g_moment,
    ks_moment,
    mom_moment,
    ratio_moment,
    secular_moment,
    truncated_moment_bruteforce,
    truncated_moment_lambda,
    unit_points,
)
from cue_lab.polytope_ehrhart import ehrhart_subbirkhoff


def test_ks_small():
    assert ks_moment(2, 2) == 20
    assert [ks_moment(N, 1) for N in range(1, 6)] == [2, 3, 4, 5, 6]
    with pytest.raises(RangeError):
        ks_moment(0, 1)


def test_secular_moments():
    assert secular_moment(2, 1, 2) == 2
    assert secular_moment(4, 2, 2) == 3
    assert secular_moment(6, 3, 2) == 4
    assert all(secular_moment(5, m, 1) == 1 for m in range(6))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kr3g_symmetry(k):
    for N in range(1, 5):
        for m in range(k * N + 1):
            assert kr3g_moment(N, m, k) == kr3g_moment(N, k * N - m, k)


def test_mom_with_one_block_is_ks():
    for N in range(1, 6):
        for beta in range(1, 3):
            assert mom_moment(N, 1, beta) == ks_moment(N, beta)
    assert mom_moment(1, 2, 1) == 4


def test_truncated_matches_ehrhart_and_brute_force():
    for t in range(4):
        assert truncated_moment_lambda(2, t, 1) == ehrhart_subbirkhoff(2, t)
    for lam2 in (Fraction(1, 4), Fraction(2)):
        assert truncated_moment_lambda(2, 2, lam2) == truncated_moment_bruteforce(2, 2, lam2)


def test_truncated_geometric_at_k1():
    for lam2 in (Fraction(1, 4), Fraction(1), Fraction(4)):
        assert truncated_moment_lambda(1, 3, lam2) == sum(lam2 ** j for j in range(4))


def test_autocorr_routes_agree():
    X = [0.1, 0.35]
    Y = [0.2, -0.15]
    assert abs(autocorr_det(4, X, Y) - autocorr_schur(4, X, Y)) < 1e-10


def test_ratio_moment_rejects_coinciding_points():
    with pytest.raises(CoincidenceError):
        ratio_moment(5, 1, [0.3], [0.3])


def test_autocorr_single_pair_is_christoffel_darboux():
    # E[Z(z) conj Z(w)] = Σ_{j ≤ N} (z w̄)^j
    N, x, y = 6, 0.2, -0.3
    q = cmath.exp(2j * cmath.pi * (x - y) / N)
    assert abs(autocorr_det(N, [x], [y]) - sum(q ** j for j in range(N + 1))) < 1e-12


def test_unit_points_on_circle():
    for z in unit_points([0.25, -0.5], 3):
        assert abs(abs(z) - 1) < 1e-15


def test_dehaye_probe_reports_both_conventions():
    probe = dehaye_sign_probe(1, 1)
    assert set(probe) >= {"expansion", "theta_derivative", "x_derivative"}
    assert probe["expansion"] == probe["theta_derivative"]
