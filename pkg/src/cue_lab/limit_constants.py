"""Limiting constants as integrals of sinc-kernel products against squared Vandermondes.

Every constant has the shape

    C = (2π)^{K(K−1)}/K! ∫_{R^d} w(x) e^{−2πi s Σx} ∏_groups (Σ coef·h̃_{c,∞}^{(κ)}(0, x))^power dx

with w = Δ(0, x)² (K = d + 1) or Δ(x)² (K = d). All kernels are written in
the h̃ normalisation; the phase bookkeeping that turns the h-form into a
single shift s lives in `build_spec` and nowhere else.

Method ladder
  closed  d = 0, a kernel value
  hankel  KS for any k, exact rational
  spline  d = 1, exact rational via a derivative of a convolution of beta densities
  quad    trapezoid on a band-limited grid, Richardson in the truncation radius
  qmc/mc  scrambled Sobol / Philox points on a box, replicate spread as error
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DimensionCapError, UnknownFunctionalError
from .limit_kernels import (
    PiecewisePoly,
    beta_kernel_density,
    kernel_supersym,
    kernel_tilde_exact,
    make_rng,
    uniform_sum_spline,
)
from .symfun import bareiss_det

KINDS = ("KS", "SC", "ZT", "KR3G", "MOM", "VOL_B", "VOL_S", "AUTOCORR", "RATIO")

# traceability labels carried into every report
ANCHORS = {
    "KS": "EqPhi:KS",
    "SC": "EqPhi:MidCoeff",
    "ZT": "EqPhi:TruncatedCharpolIn1",
    "KR3G": "EqPhi:KR3G",
    "MOM": "EqPhi:MoMo",
    "VOL_B": "EqPhi:VolumeBirkoffPolytopeRMT",
    "VOL_S": "EqPhi:VolumeSubBirkoffPolytopeRMT",
    "AUTOCORR": "EqPhi:Autocorrels",
    "RATIO": "EqPhi:Ratios",
}


def order_exponent(kind: str, params: dict) -> int:
    """Power of N by which the finite-N quantity is divided before taking the limit."""
    k = params.get("k", 1)
    if kind in ("KS", "ZT", "VOL_S"):
        return k * k
    if kind in ("SC", "VOL_B"):
        return (k - 1) ** 2
    if kind == "KR3G":
        return k * k - 1
    if kind == "MOM":
        beta = params["beta"]
        return (k * beta) ** 2 + 1 - k
    if kind == "AUTOCORR":
        return len(params["X"]) * len(params["Y"])
    if kind == "RATIO":
        return len(params["X"]) - len(params["Y"]) - 1
    raise UnknownFunctionalError(kind)


@dataclass(frozen=True)
class KernelTerm:
    coef: int
    c: Fraction
    kappa: int
    conj: bool = False


@dataclass(frozen=True)
class KernelGroup:
    power: int
    terms: tuple[KernelTerm, ...]


@dataclass
class LimitFunctionalSpec:
    kind: str
    params: dict
    dim: int
    vandermonde: str  # "with_zero": Δ(0,x)², "plain": Δ(x)²
    shift: Fraction
    groups: tuple[KernelGroup, ...]

    @property
    def K(self) -> int:
        return self.dim + 1 if self.vandermonde == "with_zero" else self.dim

    @property
    def prefactor(self) -> float:
        K = self.K
        return (2 * math.pi) ** (K * (K - 1)) / factorial(K)

    @property
    def anchor(self) -> str:
        return ANCHORS[self.kind]


@dataclass
class LimitEstimate:
    value: complex
    abs_error: float
    method: str
    exact: Fraction | None = None
    diagnostics: dict = field(default_factory=dict)
    seed: int | None = None


@dataclass
class Budget:
    method: str = "auto"  # auto | hankel | spline | quad | qmc | mc
    tol: float = 1e-3
    max_grid_points: int = 4_000_000
    radius: float | None = None
    samples: int = 2 ** 16
    replicates: int = 8
    seed: int | None = None


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v).limit_denominator(10 ** 9)


def build_spec(kind: str, **p) -> LimitFunctionalSpec:
    """Assemble the integrand description for one functional."""
    kind = kind.upper()
    if kind not in KINDS:
        raise UnknownFunctionalError(kind)
    T = KernelTerm
    G = KernelGroup
    if kind == "KS":
        k = int(p["k"])
        if k < 1:
            raise ValueError("k ≥ 1")
        return LimitFunctionalSpec(kind, {"k": k}, k - 1, "with_zero", Fraction(1), (G(1, (T(1, Fraction(k), 2 * k),)),))
    if kind == "SC":
        k, rho = int(p["k"]), _frac(p["rho"])
        if not 0 < rho < 1 or k < 1:
            raise ValueError("need 0 < ρ < 1 and k ≥ 1")
        groups = (G(k, (T(1, rho, 1),)), G(k, (T(1, 1 - rho, 1),)))
        return LimitFunctionalSpec(kind, {"k": k, "rho": rho}, k - 1, "with_zero", Fraction(1), groups)
    if kind == "ZT":
        k, rho = int(p["k"]), _frac(p["rho"])
        if not 0 < rho <= 1 or k < 1:
            raise ValueError("need 0 < ρ ≤ 1 and k ≥ 1")
        diff = (T(1, Fraction(1), 1),) + ((T(-1, 1 - rho, 1),) if rho < 1 else ())
        groups = (G(k, (T(1, rho, 1),)), G(k, diff))
        return LimitFunctionalSpec(kind, {"k": k, "rho": rho}, k, "plain", Fraction(1), groups)
    if kind == "KR3G":
        k, c = int(p["k"]), _frac(p["c"])
        if not 0 < c < k:
            raise ValueError("need 0 < c < k")
        groups = (G(1, (T(1, c, k),)), G(1, (T(1, k - c, k),)))
        return LimitFunctionalSpec(kind, {"k": k, "c": c}, k - 1, "with_zero", Fraction(1), groups)
    if kind == "MOM":
        k, beta = int(p["k"]), int(p["beta"])
        if k < 1 or beta < 1:
            raise ValueError("k, β ≥ 1")
        groups = (G(k, (T(1, Fraction(beta), 2 * beta),)),)
        return LimitFunctionalSpec(kind, {"k": k, "beta": beta}, k * beta - 1, "with_zero", Fraction(1), groups)
    if kind in ("VOL_B", "VOL_S"):
        k = int(p["k"])
        one = Fraction(1)
        groups = (G(k, (T(1, one, 1),)), G(k, (T(1, one, 1, True),)))
        if kind == "VOL_B":
            return LimitFunctionalSpec(kind, {"k": k}, k - 1, "with_zero", Fraction(0), groups)
        return LimitFunctionalSpec(kind, {"k": k}, k, "plain", Fraction(0), groups)
    if kind == "AUTOCORR":
        X, Y = tuple(float(v) for v in p["X"]), tuple(float(v) for v in p["Y"])
        if len(Y) != 1:
            raise DimensionCapError("autocorrelation limits are built for a single conjugate point only")
        return LimitFunctionalSpec(kind, {"X": X, "Y": Y}, 0, "plain", Fraction(0), ())
    # RATIO
    X, Y = tuple(float(v) for v in p["X"]), tuple(float(v) for v in p["Y"])
    if int(p.get("k", 1)) != 1:
        raise DimensionCapError("ratio limits are built for k = 1 only")
    if len(X) - len(Y) < 2:
        raise ValueError("need |X| − |Y| ≥ 2")
    return LimitFunctionalSpec(kind, {"k": 1, "X": X, "Y": Y}, 0, "plain", Fraction(0), ())


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def barnes_mk(k: int) -> Fraction:
    """M_k = ∏_{ℓ<k} ℓ!/(ℓ+k)! = G(1+k)²/G(1+2k)."""
    if k < 1:
        raise ValueError("k ≥ 1")
    out = Fraction(1)
    for ell in range(k):
        out *= Fraction(factorial(ell), factorial(ell + k))
    return out


def hankel_ks(k: int) -> Fraction:
    """Exact KS constant as a k×k Hankel determinant of spline derivatives.

    Shifting all variables by the inner integration variable separates the
    integral, and Andreief's identity leaves
        (−1)^{k(k−1)/2} k^{k²} det[f_W^{(a+b)}((k²−1)/k)]_{a,b<k},
    with W a sum of 2k uniforms on [−1/2, 1/2].
    """
    if k < 1:
        raise ValueError("k ≥ 1")
    W = uniform_sum_spline([1] * (2 * k), -k)
    w = Fraction(k * k - 1, k)
    d = [W.evaluate(w, n) for n in range(2 * k - 1)]
    det = bareiss_det([[d[a + b] for b in range(k)] for a in range(k)])
    return (-1) ** (k * (k - 1) // 2) * Fraction(k) ** (k * k) * Fraction(det)


def hypergeom_2f1_kk1(k: int, z: float, tol: float = 1e-15) -> tuple[float, float]:
    """₂F₁(k, k; 1; z) by its series, with a geometric remainder bound.

    Returns (value, bound on the neglected tail).
    """
    if not 0 <= z < 1:
        raise ConvergenceError("series diverges for z ≥ 1")
    total, term, ell = 1.0, 1.0, 0
    while True:
        ratio = ((k + ell) / (ell + 1)) ** 2 * z
        term *= ratio
        total += term
        ell += 1
        nxt = ((k + ell) / (ell + 1)) ** 2 * z
        # the term ratio decreases monotonically to z once ell ≥ k − 1
        if ell >= k and nxt < 1:
            bound = term * nxt / (1 - nxt)
            if bound <= tol * total:
                return total, bound
        if ell > 100_000:
            raise ConvergenceError("series did not converge")


# ---------------------------------------------------------------------------
# exact one-dimensional route
# ---------------------------------------------------------------------------

def _group_density(group: KernelGroup) -> PiecewisePoly:
    """Density whose Fourier transform is the group's kernel combination at (0, x)."""
    comb = PiecewisePoly({})
    for t in group.terms:
        g = beta_kernel_density(t.c, t.kappa)
        if t.conj:
            g = g.reflect()
        comb = comb + g.scale(t.coef)
    out = comb
    for _ in range(group.power - 1):
        out = out.convolve(comb)
    return out


def _spline_route(spec: LimitFunctionalSpec) -> LimitEstimate:
    if spec.dim != 1:
        raise DimensionCapError("the spline route needs a one-dimensional outer integral")
    dens = None
    for g in spec.groups:
        gd = _group_density(g)
        dens = gd if dens is None else dens.convolve(gd)
    m = 2 if spec.vandermonde == "with_zero" else 0
    left, right = dens.one_sided(spec.shift, m)
    if left != right:
        raise ConvergenceError("outer integral is not absolutely convergent (jump at the phase point)")
    # ∫ x^m e^{−2πisx} ĝ(x) dx = (−1)^m g^{(m)}(s) / (2πi)^m, and (2π)^{K(K−1)} cancels (2π)^m
    K = spec.K
    assert K * (K - 1) == m
    sign = Fraction((-1) ** m) * (1 if m % 4 == 0 else -1)  # (−1)^m · i^{−m} for m ∈ {0, 2}
    val = sign * right / factorial(K)
    return LimitEstimate(complex(float(val)), 0.0, "spline", exact=val, diagnostics={"dimension": 1})


# ---------------------------------------------------------------------------
# band-limited grid quadrature
# ---------------------------------------------------------------------------

def _integrand(spec: LimitFunctionalSpec, x: np.ndarray) -> np.ndarray:
    """Integrand (without prefactor) at points x of shape (n, d)."""
    n, d = x.shape
    pts = np.concatenate([np.zeros((n, 1)), x], axis=1)
    val = np.exp(-2j * math.pi * float(spec.shift) * x.sum(axis=1))
    cache: dict[tuple, np.ndarray] = {}
    for g in spec.groups:
        comb = np.zeros(n, dtype=complex)
        for t in g.terms:
            key = (t.c, t.kappa)
            if key not in cache:
                cache[key] = kernel_tilde_exact(float(t.c), t.kappa, pts)
            kv = cache[key]
            comb += t.coef * (np.conj(kv) if t.conj else kv)
        val *= comb ** g.power
    if spec.vandermonde == "with_zero":
        nodes = pts
    else:
        nodes = x
    for i in range(nodes.shape[1]):
        for j in range(i + 1, nodes.shape[1]):
            val *= (nodes[:, i] - nodes[:, j]) ** 2
    return val


def _dual_radius(spec: LimitFunctionalSpec) -> float:
    """Bound on the Fourier support of the integrand in each coordinate."""
    hi = lo = 0.0
    for g in spec.groups:
        cmax = max(float(t.c) for t in g.terms)
        if any(t.conj for t in g.terms):
            lo += g.power * cmax
        else:
            hi += g.power * cmax
    s = float(spec.shift)
    return max(hi - s, lo + s, 1e-9)


def _grid_sum(spec: LimitFunctionalSpec, h: float, R: float, chunk: int = 400_000) -> complex:
    n1 = int(math.floor(R / h))
    axis = h * np.arange(-n1, n1 + 1)
    d = spec.dim
    total = 0j
    npts = axis.size ** d
    # iterate over the grid in flat chunks
    for start in range(0, npts, chunk):
        idx = np.arange(start, min(npts, start + chunk))
        coords = np.empty((idx.size, d))
        rem = idx.copy()
        for j in range(d - 1, -1, -1):
            coords[:, j] = axis[rem % axis.size]
            rem //= axis.size
        total += complex(_integrand(spec, coords).sum())
    return total * h ** d


def _default_radius(d: int, A: float) -> float:
    base = {1: 400.0, 2: 48.0}.get(d, 16.0)
    return max(base, base / A)


def _quad_route(spec: LimitFunctionalSpec, budget: Budget) -> LimitEstimate:
    d = spec.dim
    A = _dual_radius(spec)
    h = 0.9 / A  # below the Nyquist spacing, so the infinite lattice sum is exact
    R = budget.radius or _default_radius(d, A)
    pts_needed = (2 * (2 * R) / h + 1) ** d
    if pts_needed > budget.max_grid_points:
        raise DimensionCapError(f"grid of {pts_needed:.3g} points exceeds cap {budget.max_grid_points}")
    I1 = _grid_sum(spec, h, R)
    I2 = _grid_sum(spec, h, 2 * R)
    # slowly decaying ridges leave a 1/R truncation term; remove it
    val = (2 * I2 - I1) * spec.prefactor
    err = 2 * abs(I2 - I1) * spec.prefactor
    diag = {"dimension": d, "spacing": h, "truncation_radius": 2 * R, "nodes": int((2 * math.floor(2 * R / h) + 1) ** d)}
    return LimitEstimate(val, err, "quad", diagnostics=diag)


def _sampling_route(spec: LimitFunctionalSpec, budget: Budget, quasi: bool) -> LimitEstimate:
    from scipy.stats import qmc

    if budget.seed is None:
        raise ValueError("randomized methods need an explicit seed")
    d = spec.dim
    R = budget.radius or _default_radius(d, _dual_radius(spec))
    estimates = []
    for rep in range(budget.replicates):
        if quasi:
            # Sobol spawns child generators, which needs a seed sequence rather than a raw key
            eng = qmc.Sobol(d, scramble=True, seed=np.random.Generator(np.random.Philox(np.random.SeedSequence([budget.seed, rep]))))
            u = eng.random(budget.samples)
        else:
            u = make_rng(budget.seed, rep).random((budget.samples, d))
        x = (2 * u - 1) * R
        estimates.append(complex(_integrand(spec, x).mean()) * (2 * R) ** d)
    est = np.array(estimates) * spec.prefactor
    err = float(np.sqrt((np.var(est.real, ddof=1) + np.var(est.imag, ddof=1)) / len(est)))
    diag = {"dimension": d, "truncation_radius": R, "samples": budget.samples * budget.replicates,
            "note": "abs_error is the replicate spread; truncation to the box |x| ≤ R is not included"}
    return LimitEstimate(complex(est.mean()), err, "qmc" if quasi else "mc", diagnostics=diag, seed=budget.seed)


def _closed_route(spec: LimitFunctionalSpec) -> LimitEstimate:
    X, Y = spec.params["X"], spec.params["Y"]
    if spec.kind == "AUTOCORR":
        # N^{−k} E[∏ Z(e^{2πix_j/N}) conj Z(e^{2πiy/N})] → e^{−2πiy} h̃_{1,∞}(X, y)
        y = Y[0]
        val = cmath.exp(-2j * math.pi * y) * complex(kernel_tilde_exact(1.0, 1, list(X) + [y]))
        return LimitEstimate(val, 1e-13, "closed", diagnostics={"dimension": 0})
    kv = kernel_supersym(1.0, X, Y)
    val = cmath.exp(1j * math.pi * sum(X)) * kv.value
    return LimitEstimate(val, kv.abs_error, "closed:" + kv.method, diagnostics={"dimension": 0})


def evaluate_constant(spec: LimitFunctionalSpec, budget: Budget | None = None) -> LimitEstimate:
    budget = budget or Budget()
    method = budget.method
    if spec.kind in ("AUTOCORR", "RATIO"):
        return _closed_route(spec)
    if method == "auto":
        if spec.kind == "KS":
            method = "hankel"
        elif spec.dim == 0:
            method = "spline"
        elif spec.dim == 1:
            method = "spline"
        else:
            method = "quad"
    if method == "hankel":
        if spec.kind == "MOM" and spec.params["k"] == 1:
            val = hankel_ks(spec.params["beta"])
        elif spec.kind == "KS":
            val = hankel_ks(spec.params["k"])
        else:
            raise ValueError("the Hankel route applies to KS only")
        return LimitEstimate(complex(float(val)), 0.0, "hankel", exact=val, diagnostics={"dimension": spec.dim})
    if spec.dim == 0:
        # a single point: the integrand is the kernel product at x = ()
        val = _integrand(spec, np.zeros((1, 0)))[0] * spec.prefactor
        return LimitEstimate(complex(val), 1e-14, "closed", diagnostics={"dimension": 0})
    if method == "spline":
        return _spline_route(spec)
    if method == "quad":
        try:
            return _quad_route(spec, budget)
        except DimensionCapError:
            if budget.method == "quad" or budget.seed is None:
                raise
            return _sampling_route(spec, budget, quasi=True)
    if method in ("qmc", "mc"):
        return _sampling_route(spec, budget, quasi=(method == "qmc"))
    raise ValueError(f"unknown method {method!r}")
