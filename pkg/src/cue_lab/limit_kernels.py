"""Limiting sinc kernels h^{(κ)}_{c,∞}, their finite-N counterparts, and exact spline densities.

Conventions
-----------
h^{(κ)}_{c,∞}(x_1..x_k) = c^{kκ} ∫ e^{iπc(kκ−2)y} ∏_j sinc(πc(y + x_j))^κ dy
h̃^{(κ)}_{c,∞}(x)       = e^{iπcκΣx} h^{(κ)}_{c,∞}(x)
sinc(u) = sin(u)/u.

Three independent evaluators are provided: oscillatory quadrature of the
defining integral, Dirichlet Monte Carlo, and a closed form as a confluent
divided difference of exp (kernel_exact). Internally the limit-constant code
uses kernel_exact; the other two exist as cross-checks and for the CLI.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Sequence

import mpmath
import numpy as np

from .errors import CoincidenceError, ConvergenceError, ResourceLimitError
from .symfun import hseries_from_points, hseries_ones, hseries_supersym


# ---------------------------------------------------------------------------
# exact piecewise polynomials
# ---------------------------------------------------------------------------

def _poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs: Sequence[Fraction], m: int = 1) -> list[Fraction]:
    out = list(coeffs)
    for _ in range(m):
        out = [i * c for i, c in enumerate(out)][1:]
    return out or [Fraction(0)]


def _shifted_power(a: Fraction, n: int) -> list[Fraction]:
    """Coefficients of (x − a)^n in powers of x."""
    return [Fraction(comb(n, i)) * (-a) ** (n - i) for i in range(n + 1)]


class PiecewisePoly:
    """Exact compactly supported piecewise polynomial with rational data.

    Stored as a finite sum of truncated powers c·(x − a)_+^n / n!, which makes
    convolution exact and cheap: (x−a)_+^n/n! * (x−b)_+^m/m! = (x−a−b)_+^{n+m+1}/(n+m+1)!.
    Only functions vanishing to the right of their support are representable,
    which is all we need (densities and their signed combinations).
    """

    def __init__(self, terms: dict[tuple[Fraction, int], Fraction]):
        self.terms = {(Fraction(a), n): Fraction(c) for (a, n), c in terms.items() if c != 0}
        self._pieces = None

    # --- construction -----------------------------------------------------
    @classmethod
    def from_polynomial_on(cls, coeffs: Sequence, a, b) -> "PiecewisePoly":
        """p(x)·1_{[a,b]} for a polynomial p given in powers of x."""
        a, b = Fraction(a), Fraction(b)
        coeffs = [Fraction(c) for c in coeffs]
        terms: dict[tuple[Fraction, int], Fraction] = {}
        for n in range(len(coeffs)):
            d = _poly_deriv(coeffs, n)
            terms[(a, n)] = terms.get((a, n), 0) + _poly_eval(d, a)
            terms[(b, n)] = terms.get((b, n), 0) - _poly_eval(d, b)
        return cls(terms)

    @classmethod
    def box(cls, a, b, height=1) -> "PiecewisePoly":
        return cls.from_polynomial_on([Fraction(height)], a, b)

    # --- structure --------------------------------------------------------
    @property
    def breakpoints(self) -> list[Fraction]:
        return sorted({a for a, _ in self.terms})

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        bp = self.breakpoints
        return (bp[0], bp[-1]) if bp else (Fraction(0), Fraction(0))

    def pieces(self) -> list[tuple[Fraction, Fraction, list[Fraction]]]:
        """(left, right, coefficients in powers of x) for each interval between breakpoints."""
        if self._pieces is None:
            bp = self.breakpoints
            out = []
            for left, right in zip(bp, bp[1:]):
                coeffs: list[Fraction] = [Fraction(0)]
                for (a, n), c in self.terms.items():
                    if a <= left:
                        p = [c * v / factorial(n) for v in _shifted_power(a, n)]
                        if len(p) > len(coeffs):
                            coeffs += [Fraction(0)] * (len(p) - len(coeffs))
                        for i, v in enumerate(p):
                            coeffs[i] += v
                out.append((left, right, coeffs))
            self._pieces = out
        return self._pieces

    # --- evaluation -------------------------------------------------------
    def evaluate(self, x, m: int = 0, side: str = "right") -> Fraction:
        """m-th derivative at x, taking the limit from the requested side.

        At a breakpoint the two one-sided values may differ; callers choose.
        """
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        x = Fraction(x)
        total = Fraction(0)
        for (a, n), c in self.terms.items():
            if n < m:
                # derivative of a lower-order truncated power is a point mass: not a function value
                if (side == "right" and a <= x) or (side == "left" and a < x):
                    if n - m < 0 and a == x:
                        continue
                continue
            active = a <= x if side == "right" else a < x
            if active:
                total += c * (x - a) ** (n - m) / factorial(n - m)
        return total

    def one_sided(self, x, m: int = 0) -> tuple[Fraction, Fraction]:
        return self.evaluate(x, m, "left"), self.evaluate(x, m, "right")

    def __call__(self, x, m: int = 0) -> Fraction:
        left, right = self.one_sided(x, m)
        if left != right:
            raise ValueError(f"jump at {x}: left {left}, right {right}; request a side explicitly")
        return right

    def derivative(self, m: int = 1) -> "PiecewisePoly":
        """Classical piecewise derivative; jump terms (point masses) are dropped."""
        return PiecewisePoly({(a, n - m): c for (a, n), c in self.terms.items() if n >= m})

    def mass(self) -> Fraction:
        lo, _ = self.support
        # integrate each truncated power up to far right, where the function vanishes
        hi = self.support[1]
        return sum(c * (hi - a) ** (n + 1) / factorial(n + 1) for (a, n), c in self.terms.items())

    # --- algebra ----------------------------------------------------------
    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return PiecewisePoly(terms)

    def __neg__(self) -> "PiecewisePoly":
        return PiecewisePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return self + (-other)

    def scale(self, factor) -> "PiecewisePoly":
        return PiecewisePoly({k: c * Fraction(factor) for k, c in self.terms.items()})

    def shift(self, b) -> "PiecewisePoly":
        """x ↦ f(x − b)."""
        b = Fraction(b)
        return PiecewisePoly({(a + b, n): c for (a, n), c in self.terms.items()})

    def convolve(self, other: "PiecewisePoly") -> "PiecewisePoly":
        terms: dict[tuple[Fraction, int], Fraction] = {}
        for (a, n), c in self.terms.items():
            for (b, m), d in other.terms.items():
                key = (a + b, n + m + 1)
                terms[key] = terms.get(key, 0) + c * d
        return PiecewisePoly(terms)

    def reflect(self) -> "PiecewisePoly":
        """x ↦ f(−x), rebuilt piece by piece."""
        out = PiecewisePoly({})
        for left, right, coeffs in self.pieces():
            flipped = [c * (-1) ** i for i, c in enumerate(coeffs)]
            out = out + PiecewisePoly.from_polynomial_on(flipped, -right, -left)
        return out

    def dilate(self, s) -> "PiecewisePoly":
        """Density of s·X when self is the density of X (s ≠ 0)."""
        s = Fraction(s)
        out = PiecewisePoly({})
        for left, right, coeffs in self.pieces():
            # g(y) = f(y/s)/|s|
            g = [c / s ** i / abs(s) for i, c in enumerate(coeffs)]
            lo, hi = sorted((left * s, right * s))
            out = out + PiecewisePoly.from_polynomial_on(g, lo, hi)
        return out

    def __repr__(self) -> str:
        lo, hi = self.support
        return f"PiecewisePoly(support=[{lo}, {hi}], terms={len(self.terms)})"


def uniform_sum_spline(weights: Sequence, shift=0) -> PiecewisePoly:
    """Exact density of Σ a_i U_i + b, U_i iid uniform on [0, 1]."""
    if not weights:
        raise ValueError("weights must be nonempty")
    dens = None
    for a in weights:
        a = Fraction(a)
        if a == 0:
            raise ValueError("weights must be nonzero")
        lo, hi = sorted((Fraction(0), a))
        box = PiecewisePoly.box(lo, hi, 1 / abs(a))
        dens = box if dens is None else dens.convolve(box)
    return dens.shift(shift)


def irwin_hall(n: int) -> PiecewisePoly:
    return uniform_sum_spline([1] * n)


def beta_kernel_density(c, kappa: int) -> PiecewisePoly:
    """g(t) = t^{κ−1}(c − t)^{κ−1}/Γ(κ)² on [0, c].

    Its Fourier transform ∫ e^{2πixt} g(t) dt is the two-point kernel h̃^{(κ)}_{c,∞}(0, x).
    """
    c = Fraction(c)
    # expand t^{κ−1}(c−t)^{κ−1}
    coeffs = [Fraction(0)] * (2 * kappa - 1)
    for i in range(kappa):
        coeffs[kappa - 1 + i] = Fraction(comb(kappa - 1, i)) * c ** (kappa - 1 - i) * (-1) ** i
    norm = Fraction(factorial(kappa - 1) ** 2)
    return PiecewisePoly.from_polynomial_on([v / norm for v in coeffs], 0, c)


# ---------------------------------------------------------------------------
# divided differences of exp
# ---------------------------------------------------------------------------

def _dd2(a, b):
    # exp[a, b] = e^{(a+b)/2} sinh(d)/d with d = (b − a)/2
    d = (b - a) / 2
    small = np.abs(d) < 1e-4
    safe = np.where(small, 1.0, d)
    ratio = np.where(small, 1 + d * d / 6 + d ** 4 / 120, np.sinh(safe) / safe)
    return np.exp((a + b) / 2) * ratio


def _dd_matrix(z: np.ndarray) -> np.ndarray:
    """Top-right entry of exp of the bidiagonal matrix with diagonal z and unit superdiagonal."""
    n = z.shape[-1]
    mu = z.mean(axis=-1, keepdims=True)
    w = z - mu
    spread = float(np.abs(w).max()) if w.size else 0.0
    s = max(0, int(math.ceil(math.log2(spread / 0.25)))) if spread > 0.25 else 0
    scale = 2.0 ** s
    A = np.zeros(z.shape[:-1] + (n, n), dtype=complex)
    idx = np.arange(n)
    A[..., idx, idx] = w / scale
    A[..., idx[:-1], idx[1:]] = 1.0 / scale
    E = np.broadcast_to(np.eye(n, dtype=complex), A.shape).copy()
    T = E.copy()
    for j in range(1, 40):
        T = T @ A / j
        E = E + T
        if j > n + 8 and float(np.abs(T).max()) < 1e-18 * max(1.0, float(np.abs(E).max())):
            break
    for _ in range(s):
        E = E @ E
    return E[..., 0, n - 1] * np.exp(mu[..., 0])


def exp_divided_difference(nodes) -> np.ndarray:
    """exp[z_0, ..., z_{n−1}] for each row of `nodes` (repeats allowed).

    Equals ∫ over the standard simplex of exp(Σ s_i z_i), by Hermite–Genocchi.
    """
    z = np.asarray(nodes, dtype=complex)
    if z.ndim == 1:
        return exp_divided_difference(z[None, :])[0]
    n = z.shape[-1]
    if n == 1:
        return np.exp(z[..., 0])
    if n == 2:
        return _dd2(z[..., 0], z[..., 1])
    if n == 3:
        # divide by the widest pair; a narrow triple goes to the matrix series
        d01 = np.abs(z[..., 0] - z[..., 1])
        d02 = np.abs(z[..., 0] - z[..., 2])
        d12 = np.abs(z[..., 1] - z[..., 2])
        widest = np.argmax(np.stack([d12, d02, d01], axis=-1), axis=-1)
        # reorder so that (first, last) is the widest pair and the middle is the odd one out
        order = np.array([[1, 0, 2], [0, 1, 2], [0, 2, 1]])[widest]
        zz = np.take_along_axis(z, order, axis=-1)
        a, b, c = zz[..., 0], zz[..., 1], zz[..., 2]
        width = np.abs(c - a)
        out = np.empty(z.shape[:-1], dtype=complex)
        wide = width > 0.5
        if np.any(wide):
            aw, bw, cw = a[wide], b[wide], c[wide]
            out[wide] = (_dd2(bw, cw) - _dd2(aw, bw)) / (cw - aw)
        if np.any(~wide):
            out[~wide] = _dd_matrix(z[~wide])
        return out
    return _dd_matrix(z)


# ---------------------------------------------------------------------------
# kernel specifications and evaluators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelSpec:
    c: float
    kappa: int
    points: tuple

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("c must be positive")
        if self.kappa < 1:
            raise ValueError("kappa must be ≥ 1")
        if len(self.points) < 1:
            raise ValueError("need at least one point")
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def k(self) -> int:
        return len(self.points)


@dataclass
class KernelValue:
    value: complex
    abs_error: float
    method: str
    diagnostics: dict = field(default_factory=dict)
    seed: int | None = None


def kernel_tilde_exact(c: float, kappa: int, points) -> np.ndarray:
    """h̃^{(κ)}_{c,∞} = c^{kκ−1} exp[2πic x_j, each repeated κ times].

    `points` may have shape (k,) or (..., k).
    """
    x = np.asarray(points, dtype=float)
    k = x.shape[-1]
    nodes = np.repeat(2j * np.pi * c * x, kappa, axis=-1)
    return c ** (k * kappa - 1) * exp_divided_difference(nodes)


def kernel_exact(c: float, kappa: int, points) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    phase = np.exp(-1j * np.pi * c * kappa * x.sum(axis=-1))
    return phase * kernel_tilde_exact(c, kappa, x)


def _tail_coefficients(shifts: Sequence[float], kappa: int, roots: Sequence[float], terms: int) -> np.ndarray:
    """Series b_i with ∏(1 + r_l u) / ∏(1 + s_j u)^κ = Σ b_i u^i (u = 1/y)."""
    b = np.zeros(terms, dtype=float)
    b[0] = 1.0
    for s in shifts:
        # multiply by (1 + s u)^{−κ} = Σ_n C(−κ, n) s^n u^n
        factor = np.array([comb(kappa + n - 1, n) * (-s) ** n for n in range(terms)], dtype=float)
        b = np.convolve(b, factor)[:terms]
    for r in roots:
        b = np.convolve(b, np.array([1.0, r]))[:terms]
    return b


@lru_cache(maxsize=4096)
def _power_tail(omega: float, p: int, T: float) -> complex:
    """∫_T^∞ e^{iωy} y^{−p} dy."""
    if omega == 0.0:
        return T ** (1 - p) / (p - 1)
    return complex(T ** (1 - p) * mpmath.expint(p, -1j * omega * T))


def oscillatory_sinc_integral(
    alpha: float,
    c: float,
    shifts: Sequence[float],
    kappa: int,
    roots: Sequence[float] = (),
    tol: float = 1e-10,
) -> tuple[complex, float, float]:
    """∫_R e^{iαy} ∏_j sinc(πc(y + s_j))^κ ∏_l (y + r_l) dy.

    Gauss–Legendre panels on [−T, T] and an asymptotic expansion of the two
    tails in powers of 1/y, integrated exactly with generalized exponential
    integrals. Returns (value, error estimate, T).
    """
    k = len(shifts)
    m = len(roots)
    p0 = k * kappa - m
    if p0 < 2:
        raise ValueError("integrand must decay at least like |y|^{-2}")
    smax = max([abs(s) for s in shifts] + [abs(r) for r in roots] + [0.0])
    T = max(8.0 * smax, 12.0 / c, 12.0)
    omega_max = abs(alpha) + math.pi * c * k * kappa
    width = min(1.0, 4.0 / omega_max)
    npan = int(math.ceil(2 * T / width))
    edges = np.linspace(-T, T, npan + 1)

    def integrand(y: np.ndarray) -> np.ndarray:
        val = np.exp(1j * alpha * y)
        for s in shifts:
            val = val * np.sinc(c * (y + s)) ** kappa
        for r in roots:
            val = val * (y + r)
        return val

    def gl(nodes: int) -> complex:
        t, w = np.polynomial.legendre.leggauss(nodes)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        y = mid[:, None] + half[:, None] * t[None, :]
        return complex(np.sum(integrand(y) * w[None, :] * half[:, None]))

    inner_hi = gl(24)
    inner_lo = gl(16)

    # tails: numerator trig polynomial grouped by frequency
    freq: dict[int, complex] = {0: 1.0 + 0j}
    for s in shifts:
        nxt: dict[int, complex] = {}
        for q in range(kappa + 1):
            n = kappa - 2 * q
            coef = comb(kappa, q) * (-1) ** q * cmath.exp(1j * math.pi * c * n * s)
            for key, v in freq.items():
                nxt[key + n] = nxt.get(key + n, 0) + v * coef
        freq = nxt
    pref = (2j) ** (-k * kappa) * (math.pi * c) ** (-k * kappa)
    nterms = 4
    ratio = smax / T
    while ratio > 0 and ratio ** nterms > 1e-18 and nterms < 60:
        nterms += 1
    b = _tail_coefficients(shifts, kappa, roots, nterms + 1)
    tail = 0j
    last = 0.0
    for n, A in freq.items():
        if abs(A) < 1e-300:
            continue
        omega = alpha + math.pi * c * n
        for i in range(nterms + 1):
            if b[i] == 0:
                continue
            p = p0 + i
            right = _power_tail(omega, p, T)
            left = (-1) ** p * _power_tail(-omega, p, T)
            contrib = pref * A * b[i] * (right + left)
            tail += contrib
            if i == nterms:
                last += abs(contrib)
    total = inner_hi + tail
    err = abs(inner_hi - inner_lo) + last + 1e-15 * abs(total)
    return total, err, T


def kernel_quadrature(spec: KernelSpec, tol: float = 1e-10) -> KernelValue:
    """h^{(κ)}_{c,∞}(x) from its defining oscillatory integral."""
    k, kappa, c = spec.k, spec.kappa, float(spec.c)
    if k * kappa < 2:
        raise ValueError("need kκ ≥ 2 for absolute convergence")
    alpha = math.pi * c * (k * kappa - 2)
    val, err, T = oscillatory_sinc_integral(alpha, c, [float(x) for x in spec.points], kappa, (), tol)
    val *= c ** (k * kappa)
    err *= c ** (k * kappa)
    if err > tol:
        raise ConvergenceError(f"kernel quadrature reached error {err:.3g} > tol {tol:.3g}")
    return KernelValue(val, err, "quadrature", {"truncation_radius": T})


def _batch_means(samples: np.ndarray, batches: int = 50) -> tuple[complex, float]:
    n = samples.shape[0]
    batches = max(1, min(batches, n))
    usable = (n // batches) * batches
    means = samples[:usable].reshape(batches, -1).mean(axis=1)
    mean = complex(samples.mean())
    if batches < 2:
        return mean, float("nan")
    var = (np.var(means.real, ddof=1) + np.var(means.imag, ddof=1)) / batches
    return mean, float(math.sqrt(var))


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based Philox generator; `stream` gives independent substreams."""
    if seed is None:
        raise ValueError("an explicit seed is required")
    return np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1), counter=[0, 0, 0, int(stream)]))


def kernel_mc(spec: KernelSpec, samples: int, seed: int, chunk: int = 200_000) -> KernelValue:
    """h^{(κ)}_{c,∞}(x) = c^{kκ−1}/Γ(kκ) E[exp(2πic Σ x_j (D_j − κ/2))], D ~ Dirichlet(κ,…,κ)."""
    if samples < 1:
        raise ValueError("samples must be ≥ 1")
    rng = make_rng(seed)
    k, kappa, c = spec.k, spec.kappa, float(spec.c)
    x = np.asarray(spec.points, dtype=float)
    vals = []
    left = samples
    while left > 0:
        n = min(chunk, left)
        D = rng.dirichlet([kappa] * k, size=n)
        vals.append(np.exp(2j * np.pi * c * ((D - kappa / 2) @ x)))
        left -= n
    f = np.concatenate(vals)
    mean, se = _batch_means(f)
    norm = c ** (k * kappa - 1) / math.gamma(k * kappa)
    return KernelValue(mean * norm, se * norm, "mc", {"samples": samples}, seed)


def finite_n_kernel(N: int, c: float, kappa: int, x: Sequence[float]) -> complex:
    """h^{(κ)}_{⌊cN⌋} at the points e^{2πix_j/N}, each repeated κ times."""
    n = int(math.floor(c * N))
    if n < 0:
        raise ValueError("⌊cN⌋ must be nonnegative")
    if n * len(x) * kappa > 5_000_000:
        raise ResourceLimitError("⌊cN⌋·kκ too large for direct series expansion")
    pts = [cmath.exp(2j * math.pi * xi / N) for xi in x for _ in range(kappa)]
    return complex(hseries_from_points(pts, n).h(n))


def finite_n_supersym(N: int, c: float, X: Sequence[float], Y: Sequence[float]) -> complex:
    """h_{⌊cN⌋}[e^{2πiX/N} − e^{2πiY/N}]."""
    n = int(math.floor(c * N))
    xp = [cmath.exp(2j * math.pi * v / N) for v in X]
    yp = [cmath.exp(2j * math.pi * v / N) for v in Y]
    return complex(hseries_supersym(xp, yp, n).h(n))


def kernel_supersym_integral(c: float, X: Sequence[float], Y: Sequence[float], tol: float = 1e-10) -> KernelValue:
    """(−2πi)^m c^k ∫ e^{iπc(k−2)θ} ∏ sinc(πc(x_j + θ)) ∏ (θ + y_l) dθ."""
    k, m = len(X), len(Y)
    if k - m < 2:
        raise ValueError("integral form needs |X| − |Y| ≥ 2")
    val, err, T = oscillatory_sinc_integral(math.pi * c * (k - 2), c, list(X), 1, list(Y), tol)
    scale = (-2j * math.pi) ** m * c ** k
    return KernelValue(val * scale, err * abs(scale), "quadrature", {"truncation_radius": T})


# residue-route normalisation, fixed by matching the finite-N rescaling
def supersym_residue_constant(k: int, m: int) -> complex:
    return (-2j * math.pi) ** (-(k - m - 1))


def kernel_supersym_residue(c: float, X: Sequence[float], Y: Sequence[float]) -> complex:
    """Partial-fraction form: C_{k,m} e^{−iπcΣx} Σ_j e^{2πicx_j} ∏_r (y_r − x_j) / ∏_{i≠j} (x_i − x_j)."""
    k, m = len(X), len(Y)
    total = 0j
    for j, xj in enumerate(X):
        num = cmath.exp(2j * math.pi * c * xj)
        for y in Y:
            num *= y - xj
        den = 1.0
        for i, xi in enumerate(X):
            if i != j:
                den *= xi - xj
        total += num / den
    return supersym_residue_constant(k, m) * cmath.exp(-1j * math.pi * c * sum(X)) * total


def kernel_supersym(c: float, X: Sequence[float], Y: Sequence[float], tol: float = 1e-10, collision: float = 1e-9) -> KernelValue:
    """h_{c,∞}[X − Y]: residue route for well-separated X, integral route otherwise."""
    xs = list(X)
    close = any(abs(xs[i] - xs[j]) < collision for i in range(len(xs)) for j in range(i + 1, len(xs)))
    if not close:
        return KernelValue(kernel_supersym_residue(c, X, Y), 1e-13, "residue")
    if len(X) - len(Y) < 2:
        raise CoincidenceError("colliding X-points with |X| − |Y| < 2: neither route applies")
    return kernel_supersym_integral(c, X, Y, tol)


# ---------------------------------------------------------------------------
# exact probabilistic representations of h_n^{(κ)}
# ---------------------------------------------------------------------------

def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def negbin_representation(n: int, points: Sequence, kappa: int, p=Fraction(1, 2)) -> Fraction:
    """h_n[1^{kκ}] · E[∏ x_j^{G_j} | Σ G_j = n] with G_j iid NegBin(κ, p).

    The conditional law does not depend on p; the computation keeps p to make
    that visible.
    """
    k = len(points)
    p = Fraction(p)
    pmf = [Fraction(comb(a + kappa - 1, a)) * (1 - p) ** kappa * p ** a for a in range(n + 1)]
    num = Fraction(0)
    den = Fraction(0)
    for comp in _compositions(n, k):
        w = Fraction(1)
        for a in comp:
            w *= pmf[a]
        mono = Fraction(1)
        for x, a in zip(points, comp):
            mono *= Fraction(x) ** a
        num += w * mono
        den += w
    return hseries_ones(k * kappa, n).h(n) * num / den


def gamma_representation(n: int, points: Sequence, kappa: int) -> Fraction:
    """E[(Σ x_j γ_j)^n] / n! with γ_j iid Gamma(κ), expanded through E[γ^a] = κ(κ+1)…(κ+a−1)."""
    k = len(points)
    total = Fraction(0)
    for comp in _compositions(n, k):
        multinom = factorial(n)
        term = Fraction(1)
        for x, a in zip(points, comp):
            multinom //= factorial(a)
            moment = 1
            for i in range(a):
                moment *= kappa + i
            term *= Fraction(x) ** a * moment
        total += multinom * term
    return total / factorial(n)
