import math
from fractions import Fraction

import numpy as np
import pytest

from cue_lab.errors import ResourceLimitError
from cue_lab.limit_kernels import (
    KernelSpec,
    PiecewisePoly,
    beta_kernel_density,
    exp_divided_difference,
    finite_n_kernel,
    gamma_representation,
    irwin_hall,
    kernel_mc,
    kernel_quadrature,
    kernel_supersym,
    kernel_supersym_integral,
    kernel_exact,
    kernel_supersym_residue,
    kernel_tilde_exact,
    negbin_representation,
    uniform_sum_spline,
)
from cue_lab.symfun import hseries_from_points


def test_irwin_hall_values():
    f = irwin_hall(4)
    assert f.mass() == 1
    assert f(2) == Fraction(2, 3)
    assert f(2, 2) == -2
    assert f.support == (0, 4)


def test_spline_symmetry():
    f = uniform_sum_spline([1, 1, 1], -Fraction(3, 2))
    for x in (Fraction(1, 3), Fraction(1, 2), Fraction(6, 5)):
        assert f(x) == f(-x)


def test_jump_raises():
    box = PiecewisePoly.box(0, 1)
    with pytest.raises(ValueError):
        box(0)
    assert box.one_sided(0) == (0, 1)


def test_convolution_of_boxes_is_triangle():
    box = PiecewisePoly.box(0, 1)
    tri = box.convolve(box)
    assert tri(1) == 1 and tri(Fraction(1, 2)) == Fraction(1, 2)
    assert tri.mass() == 1



def test_divided_difference_matches_mpmath():
    import mpmath as mp

    nodes = np.array([0.0, 0.4j, 1.1j, -0.3j, 2.0j])
    got = exp_divided_difference(nodes)
    # compare the top entry with the contour-free recursive definition in high precision
    mp.mp.dps = 40
    z = [mp.mpc(complex(v)) for v in nodes]

    def dd(i, j):
        if i == j:
            return mp.exp(z[i])
        return (dd(i + 1, j) - dd(i, j - 1)) / (z[j] - z[i])

    assert abs(complex(got) - complex(dd(0, len(z) - 1))) < 1e-12


def test_kernel_identities():
    assert abs(kernel_tilde_exact(1.0, 1, [0.0, 0.0]) - 1) < 1e-14
    assert abs(kernel_tilde_exact(1.0, 2, [0.0, 0.0]) - 1 / 6) < 1e-14
    for x in (0.3, 1.7):
        assert abs(abs(kernel_tilde_exact(1.0, 1, [0.0, x])) - abs(math.sin(math.pi * x) / (math.pi * x))) < 1e-12


def test_quadrature_matches_exact():
    # quadrature and Monte Carlo return the centred kernel h = e^{−iπcκΣx} h̃
    spec = KernelSpec(0.7, 2, (0.0, 0.4, -0.9))
    q = kernel_quadrature(spec, tol=1e-10)
    assert abs(q.value - kernel_exact(0.7, 2, [0.0, 0.4, -0.9])) < 1e-9


def test_kernel_mc_is_deterministic_and_close():
    spec = KernelSpec(1.0, 1, (0.0, 0.5, 1.2))
    a = kernel_mc(spec, 20_000, seed=11)
    b = kernel_mc(spec, 20_000, seed=11)
    assert a.value == b.value and a.seed == 11
    assert abs(a.value - kernel_exact(1.0, 1, [0.0, 0.5, 1.2])) < 5 * a.abs_error


@pytest.mark.parametrize("kappa", [1, 2])
def test_negbin_and_gamma_representations(kappa):
    pts = [Fraction(1), Fraction(1, 3), Fraction(-2, 5)]
    for n in range(5):
        ref = hseries_from_points([p for p in pts for _ in range(kappa)], n).h(n)
        assert negbin_representation(n, pts, kappa) == ref
        assert gamma_representation(n, pts, kappa) == ref


def test_finite_n_guard():
    with pytest.raises(ResourceLimitError):
        finite_n_kernel(10 ** 7, 1.0, 1, [0.0, 0.1])


def test_supersymmetric_routes_agree():
    X, Y = (0.13, -0.52, 0.91), (0.37,)
    a = kernel_supersym_residue(1.0, X, Y)
    b = kernel_supersym_integral(1.0, X, Y).value
    assert abs(a - b) < 1e-9
    assert kernel_supersym(1.0, X, Y).value == pytest.approx(a, abs=1e-9)
