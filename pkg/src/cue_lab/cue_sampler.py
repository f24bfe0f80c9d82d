"""Metropolis sampling of CUE eigenangles from the Weyl density.

The target on [0,1)^N is proportional to ∏_{i<j} |e^{2πiθ_i} − e^{2πiθ_j}|²,
i.e. exp(2 Σ_{i<j} log|sin π(θ_i − θ_j)|). Chains are advanced in lockstep so
that many independent chains cost about as much as one; each chain's mean
then serves as one batch for the standard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ResourceLimitError
from .limit_kernels import make_rng

TARGET_ACCEPTANCE = 0.4


@dataclass
class EigenangleSample:
    angles: np.ndarray
    seed: int
    acceptance_rate: float
    sweep: int


@dataclass
class Ensemble:
    """Post-burn-in angles, shape (chains, sweeps, N)."""

    angles: np.ndarray
    seed: int
    acceptance_rate: float
    width: float

    @property
    def N(self) -> int:
        return self.angles.shape[-1]


def _log_pair(d: np.ndarray) -> np.ndarray:
    s = np.abs(np.sin(np.pi * d))
    with np.errstate(divide="ignore"):
        return np.log(s)


def _sweep(theta: np.ndarray, width: float, rng: np.random.Generator) -> np.ndarray:
    """One Metropolis sweep over every coordinate of every chain. Returns acceptances per chain."""
    chains, N = theta.shape
    accepted = np.zeros(chains)
    if N == 1:
        prop = (theta[:, 0] + width * rng.standard_normal(chains)) % 1.0
        rng.random(chains)  # keep the stream layout independent of N
        theta[:, 0] = prop
        return accepted + 1
    for i in range(N):
        others = np.delete(theta, i, axis=1)
        prop = (theta[:, i] + width * rng.standard_normal(chains)) % 1.0
        delta = 2 * (_log_pair(prop[:, None] - others) - _log_pair(theta[:, i : i + 1] - others)).sum(axis=1)
        u = rng.random(chains)
        ok = np.log(u) < delta
        theta[ok, i] = prop[ok]
        accepted += ok
    return accepted / N


def _burn(N: int, chains: int, burn_in: int, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    theta = rng.random((chains, N))
    width = 0.3 / max(N, 1) ** 0.5
    # adapt in windows toward the target rate, then freeze
    window = max(1, burn_in // 20)
    acc = []
    for s in range(burn_in):
        acc.append(_sweep(theta, width, rng).mean())
        if (s + 1) % window == 0:
            rate = float(np.mean(acc))
            width = float(np.clip(width * math.exp(rate - TARGET_ACCEPTANCE), 1e-4, 1.0))
            acc = []
    return theta, width


def sample_ensemble(N: int, chains: int, sweeps: int, burn_in: int, seed: int) -> Ensemble:
    """Run `chains` independent chains; keep one state per sweep after burn-in."""
    if N < 1 or chains < 1 or sweeps <= burn_in or burn_in < 0:
        raise ValueError("need N ≥ 1, chains ≥ 1, sweeps > burn_in ≥ 0")
    rng = make_rng(seed)
    theta, width = _burn(N, chains, burn_in, rng)
    keep = sweeps - burn_in
    out = np.empty((chains, keep, N))
    acc = 0.0
    for s in range(keep):
        acc += _sweep(theta, width, rng).mean()
        out[:, s, :] = theta
    return Ensemble(out, seed, acc / keep, width)


def sample_chain(N: int, sweeps: int, burn_in: int, seed: int) -> Iterator[EigenangleSample]:
    """Single chain as a stream of post-burn-in states, one per sweep."""
    if N < 1 or sweeps <= burn_in or burn_in < 0:
        raise ValueError("need N ≥ 1 and sweeps > burn_in ≥ 0")
    rng = make_rng(seed)
    theta, width = _burn(N, 1, burn_in, rng)
    acc = 0.0
    for s in range(burn_in, sweeps):
        acc += float(_sweep(theta, width, rng)[0])
        yield EigenangleSample(theta[0].copy(), seed, acc / (s - burn_in + 1), s + 1)


# ---------------------------------------------------------------------------
# functionals of a sample
# ---------------------------------------------------------------------------

def elementary_symmetric(z: np.ndarray, m_max: int) -> np.ndarray:
    """e_0..e_{m_max} of the last axis of z, by multiplying out ∏(1 + z_j t)."""
    e = np.zeros(z.shape[:-1] + (m_max + 1,), dtype=complex)
    e[..., 0] = 1
    for j in range(z.shape[-1]):
        zj = z[..., j : j + 1]
        e[..., 1:] = e[..., 1:] + zj * e[..., :-1]
    return e


def _eigs(angles: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * angles)


@dataclass(frozen=True)
class Functional:
    """Per-sample observable; `fn` maps angles (..., N) to values (...)."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]


def abs_trace_sq() -> Functional:
    return Functional("|tr U|^2", lambda a: np.abs(_eigs(a).sum(axis=-1)) ** 2)


def abs_charpoly_at_one(k: int) -> Functional:
    def fn(a):
        _guard(k, a.shape[-1])
        # |1 − e^{2πiθ}| = 2|sin πθ|
        return np.prod((2 * np.abs(np.sin(np.pi * a))) ** (2 * k), axis=-1)

    return Functional(f"|Z(1)|^{2 * k}", fn)


def abs_secular(m: int, k: int) -> Functional:
    def fn(a):
        _guard(k, a.shape[-1])
        return np.abs(elementary_symmetric(_eigs(a), m)[..., m]) ** (2 * k)

    return Functional(f"|sc_{m}|^{2 * k}", fn)


def abs_truncated(ell: int, k: int, lam: float = 1.0) -> Functional:
    """|Σ_{j≤ℓ} (−λ)^j e_j|^{2k}."""

    def fn(a):
        _guard(k, a.shape[-1])
        e = elementary_symmetric(_eigs(a), ell)
        w = (-lam) ** np.arange(ell + 1)
        return np.abs((e * w).sum(axis=-1)) ** (2 * k)

    return Functional(f"|Z_{ell}({lam})|^{2 * k}", fn)


def ratio(k: int, X: Sequence[complex], Y: Sequence[complex]) -> Functional:
    """det(U)^{−k} ∏_x det(1 − xU) / ∏_y det(1 − yU), points given on or inside the circle."""

    def fn(a):
        z = _eigs(a)
        val = np.exp(-2j * np.pi * k * a.sum(axis=-1))
        for x in X:
            val = val * np.prod(1 - x * z, axis=-1)
        for y in Y:
            val = val / np.prod(1 - y * z, axis=-1)
        return val

    return Functional("ratio", fn)


def _guard(k: int, N: int) -> None:
    # |Z| ≤ 2^N, so |Z|^{2k} ≤ 4^{kN}; keep well inside double range
    if k * N > 400:
        raise ResourceLimitError(f"k·N = {k * N} risks overflow in double precision")


def estimate_functional(samples, f: Functional, batches: int = 50) -> tuple[complex, float]:
    """Batch-means estimate of E f with its standard error.

    `samples` is an Ensemble (chains act as batches) or an iterable of
    EigenangleSample (consecutive blocks act as batches).
    """
    if isinstance(samples, Ensemble):
        vals = f.fn(samples.angles)  # (chains, sweeps)
        if vals.shape[0] >= 2:
            means = vals.mean(axis=1)
        else:
            means = _blocks(vals[0], batches)
    else:
        arr = np.array([s.angles for s in samples])
        means = _blocks(f.fn(arr), batches)
    mean = complex(means.mean())
    nb = means.shape[0]
    var = (np.var(means.real, ddof=1) + np.var(means.imag, ddof=1)) / nb
    return (mean if abs(mean.imag) > 0 else complex(mean.real)), float(math.sqrt(var))


def _blocks(vals: np.ndarray, batches: int) -> np.ndarray:
    n = vals.shape[0]
    b = max(2, min(batches, n))
    usable = (n // b) * b
    return vals[:usable].reshape(b, -1).mean(axis=1)
