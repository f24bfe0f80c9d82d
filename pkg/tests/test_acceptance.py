"""Acceptance criteria 1–12; each prints one pass/fail line plus its details."""

import pytest

from cue_lab import acceptance as acc


def test_tolerances_are_pinned():
    assert acc.KS_RICHARDSON_REL == 0.01
    assert acc.KS_QUAD_ABS == 1e-3
    assert acc.SC_CONST_ABS == 1e-3
    assert acc.SC_RATE_BAND == (0.4, 0.6)
    assert acc.VOL_ABS == 1e-4
    assert acc.HYPERGEOM_ABS == 1e-12
    assert acc.KR3G_REL == 0.05
    assert acc.MOM_CONST_ABS == 1e-3
    assert acc.SINC_PROFILE_ABS == 1e-6
    assert acc.KERNEL_IDENTITY_ABS == 1e-10
    assert acc.MC_SIGMAS == 3
    assert acc.MC_SAMPLES == 1e6
    assert acc.CLT_RATIO_BAND == (1.6, 2.4)
    assert acc.SUPERSYM_ROUTE_ABS == 1e-6
    assert acc.SUPERSYM_FINITE_REL == 0.02
    assert acc.SUPERSYM_N == 512
    assert acc.SAMPLER_SIGMAS == 4
    assert acc.SAMPLER_SAMPLES == 1e5


@pytest.mark.parametrize("number", sorted(acc.TITLES))
def test_criterion(number):
    result = acc.run_criterion(number)
    print(result.line())
    for line in result.details:
        print("    " + line)
    assert result.passed, "\n".join(result.details)
