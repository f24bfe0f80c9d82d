from fractions import Fraction

import pytest

from cue_lab.errors import DimensionCapError, UnknownFunctionalError
from cue_lab.exact_functionals import autocorr_det
from cue_lab.limit_constants import (
    ANCHORS,
    KINDS,
    Budget,
    barnes_mk,
    build_spec,
    evaluate_constant,
    hankel_ks,
    hypergeom_2f1_kk1,
    order_exponent,
)
from cue_lab.polytope_ehrhart import ehrhart_polynomial


def test_every_kind_has_an_anchor():
    assert set(ANCHORS) == set(KINDS)
    assert ANCHORS["KS"] == "EqPhi:KS"


def test_barnes_values():
    assert barnes_mk(1) == Fraction(1, 1)
    assert barnes_mk(2) == Fraction(1, 12)
    assert barnes_mk(3) == Fraction(1, 8640)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_hankel_equals_barnes(k):
    assert hankel_ks(k) == barnes_mk(k)


def test_order_exponents():
    assert order_exponent("KS", {"k": 3}) == 9
    assert order_exponent("SC", {"k": 2}) == 1
    assert order_exponent("KR3G", {"k": 2}) == 3
    assert order_exponent("MOM", {"k": 2, "beta": 1}) == 3


def test_sc_spline_is_exact():
    est = evaluate_constant(build_spec("SC", k=2, rho=Fraction(1, 2)))
    assert est.exact == Fraction(1, 2)


def test_ks_quadrature():
    est = evaluate_constant(build_spec("KS", k=2), Budget(method="quad"))
    assert abs(est.value - 1 / 12) < 1e-4


def test_vol_closed_values():
    assert abs(evaluate_constant(build_spec("VOL_B", k=2)).value - 1) < 1e-10
    assert abs(evaluate_constant(build_spec("VOL_S", k=1)).value - 1) < 1e-10


def test_subbirkhoff_volume_three_ways():
    """Ehrhart leading coefficient, volume integral, and 16 × truncated constant agree within 2%."""
    lead = float(ehrhart_polynomial("subbirkhoff", 2).leading_coefficient)
    vol = evaluate_constant(build_spec("VOL_S", k=2)).value.real
    zt = evaluate_constant(build_spec("ZT", k=2, rho=Fraction(1, 2))).value.real
    assert lead == pytest.approx(1 / 6)
    assert vol == pytest.approx(lead, rel=0.02)
    assert 16 * zt == pytest.approx(lead, rel=0.02)


def test_zt_at_k1_is_rho():
    for rho in (Fraction(1, 3), Fraction(3, 4)):
        assert abs(evaluate_constant(build_spec("ZT", k=1, rho=rho)).value - float(rho)) < 1e-10


def test_autocorrelation_against_finite_n():
    N = 400
    for x, y in [(0.0, 0.3), (0.5, -0.2), (1.1, 0.4), (-0.7, 0.7), (0.25, 0.25)]:
        lim = evaluate_constant(build_spec("AUTOCORR", X=[x], Y=[y])).value
        fin = autocorr_det(N, [x], [y]) / N
        assert abs(fin - lim) <= 0.02 * max(abs(lim), 0.05)


def test_autocorrelation_cap():
    with pytest.raises(DimensionCapError):
        build_spec("AUTOCORR", X=[0.1, 0.2], Y=[0.3, 0.4])


def test_hypergeometric_geometric_case():
    for z in (0.0, 0.3, 0.9):
        val, bound = hypergeom_2f1_kk1(1, z)
        assert abs(val - 1 / (1 - z)) < 1e-12
        assert bound >= 0


def test_unknown_kind():
    with pytest.raises(UnknownFunctionalError):
        build_spec("NOPE", k=1)


def test_qmc_is_seeded():
    spec = build_spec("KS", k=3)
    a = evaluate_constant(spec, Budget(method="qmc", seed=5, samples=2 ** 12, replicates=4))
    b = evaluate_constant(spec, Budget(method="qmc", seed=5, samples=2 ** 12, replicates=4))
    assert a.value == b.value and a.seed == 5
