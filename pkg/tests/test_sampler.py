import numpy as np
import pytest
from scipy import stats

from cue_lab import cue_sampler as cs
from cue_lab.errors import ResourceLimitError


def _thinned(N, seed, chains=50, sweeps=400, thin=10):
    ens = cs.sample_ensemble(N, chains, sweeps + 200, 200, seed)
    return ens, ens.angles[:, ::thin, :].reshape(-1, N)


def test_same_seed_same_chain():
    a = cs.sample_ensemble(3, 4, 50, 20, seed=7)
    b = cs.sample_ensemble(3, 4, 50, 20, seed=7)
    assert np.array_equal(a.angles, b.angles)
    assert a.angles.shape == (4, 30, 3)


def test_acceptance_near_target():
    ens = cs.sample_ensemble(6, 20, 300, 200, seed=2)
    assert 0.3 < ens.acceptance_rate < 0.5


def test_single_eigenvalue_is_uniform():
    _, x = _thinned(1, seed=3)
    assert stats.kstest(x[:, 0], "uniform").pvalue > 1e-3


def test_two_point_gap_law():
    # N = 2: the gap d in turns has density 2 sin²(πd) on [0, 1)
    _, x = _thinned(2, seed=4)
    d = np.mod(x[:, 0] - x[:, 1], 1.0)
    edges = np.linspace(0, 1, 11)
    obs, _ = np.histogram(d, edges)
    cdf = edges - np.sin(2 * np.pi * edges) / (2 * np.pi)
    exp = np.diff(cdf) * len(d)
    assert stats.chisquare(obs, exp).pvalue > 1e-3


def test_trace_moment():
    ens = cs.sample_ensemble(4, 50, 1200, 200, seed=9)
    mean, se = cs.estimate_functional(ens, cs.abs_trace_sq())
    assert abs(mean.real - 1) < 4 * se


def test_elementary_symmetric_from_roots():
    z = np.array([[1.0, 2.0, 3.0]])
    e = cs.elementary_symmetric(z, 3)
    assert np.allclose(e[0], [1, 6, 11, 6])


def test_guard():
    ens = cs.sample_ensemble(2, 2, 5, 1, seed=1)
    with pytest.raises(ResourceLimitError):
        cs.estimate_functional(ens, cs.abs_charpoly_at_one(201))
