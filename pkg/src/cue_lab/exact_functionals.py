"""Exact finite-N values of CUE characteristic-polynomial functionals.

Every function here is a symmetric-function identity evaluated exactly
(integers or Fractions), except the two microscopic-point evaluations
(ratio_moment, autocorr_det) which live in the complex ring.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import CoincidenceError, InconsistencyError, PoleError, RangeError
from .partitions import (
    Partition,
    box_complement,
    cell_data,
    dimension,
    enumerate_box,
    partitions_of,
    rectangle,
)
from .polytope_ehrhart import BoundedMultiPoly, h_upto
from .symfun import (
    hseries_from_points,
    hseries_ones,
    hseries_supersym,
    kostka,
    schur_rect_jacobi_trudi,
    skew_schur_ones,
    weyl_dimension,
)


def ks_moment(N: int, k: int) -> int:
    """E|Z_{U_N}(1)|^{2k} = s_{N^k}[1^{2k}], by Jacobi–Trudi, checked against Weyl's formula."""
    if N < 1 or k < 1:
        raise RangeError("need N, k ≥ 1")
    jt = schur_rect_jacobi_trudi(N, k, hseries_ones(2 * k, N + k - 1))
    wd = weyl_dimension(rectangle(N, k), 2 * k)
    if jt != wd:
        raise InconsistencyError(f"Jacobi–Trudi gives {jt}, Weyl dimension gives {wd}")
    return int(wd)


def ks_moment_product(N: int, k: int) -> Fraction:
    """Closed product ∏_{j=0}^{N−1} j!(j+2k)!/((j+k)!)², a third route to E|Z(1)|^{2k}."""
    out = Fraction(1)
    for j in range(N):
        out *= Fraction(factorial(j) * factorial(j + 2 * k), factorial(j + k) ** 2)
    return out


def secular_moment(N: int, m: int, k: int) -> int:
    """E|sc_m(U_N)|^{2k} as the Kostka number K_{(N^k), (m^k, (N−m)^k)}."""
    if not 0 <= m <= N:
        raise RangeError(f"need 0 ≤ m ≤ N, got m={m}, N={N}")
    if k == 0:
        return 1
    return kostka(rectangle(N, k), [m] * k + [N - m] * k)


def kr3g_moment(N: int, m: int, k: int) -> int:
    """I_k(m, N) = E|[x^m] det(I − xU)^k|², coefficient-extraction definition.

    Evaluated as Σ_{μ ⊆ k×N, |μ| = m} s_μ(1^k) s_{μ^c}(1^k).
    """
    if not 0 <= m <= k * N:
        raise RangeError(f"need 0 ≤ m ≤ kN, got m={m}, kN={k * N}")
    total = 0
    for mu in enumerate_box(k, N, m):
        total += weyl_dimension(mu, k) * weyl_dimension(box_complement(mu, k, N), k)
    return total


def kr3g_moment_raw(N: int, m: int, k: int) -> int:
    """Independent route for small sizes: expand [x^m]det(I−xU)^k in products of e_j.

    Uses E[e_λ conj(e_μ)] = Σ_{ν ⊢ n, ℓ(ν) ≤ N} K_{ν',λ} K_{ν',μ}; only intended for
    tiny N·k because it enumerates all compositions.
    """
    comps = [c for c in _compositions(m, k) if max(c, default=0) <= N]
    if not comps:
        return 0
    nus = [nu for nu in partitions_of(m) if nu.length() <= N]
    from .partitions import conjugate

    vecs = [[kostka(conjugate(nu), c) for nu in nus] for c in comps]
    total = 0
    for a in vecs:
        for b in vecs:
            total += sum(x * y for x, y in zip(a, b))
    return total


def _compositions(n: int, parts: int):
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def mom_moment(N: int, k: int, beta: int) -> int:
    """E[(∫|Z(e^{iθ})|^{2β} dθ/2π)^k] as a sum over chains ∅ ⊆ λ¹ ⊆ … ⊆ λ^k = (N^{kβ}).

    Each step adds Nβ boxes and carries the weight s_{λ^j/λ^{j−1}}(1^{2β}).
    """
    if N < 1 or k < 1 or beta < 1:
        raise RangeError("need N, k, β ≥ 1")
    rows = k * beta
    step = N * beta
    level: dict[Partition, int] = {Partition(): 1}
    for j in range(1, k + 1):
        nxt: dict[Partition, int] = {}
        for lam in enumerate_box(rows, N, j * step):
            acc = 0
            for mu, w in level.items():
                if lam.contains(mu):
                    acc += w * skew_schur_ones(lam, mu, 2 * beta)
            if acc:
                nxt[lam] = acc
        level = nxt
    return level.get(rectangle(N, rows), 0)


def truncated_moment_lambda(k: int, t: int, lam2) -> Fraction:
    """E|Z_{U_N,t}(λ)|^{2k} = [X^t Y^t] H[X + Y + λ²XY], valid for N ≥ tk.

    Summing out X first leaves [Y^t] H[Y] (Σ_{a≤t} λ^{2a} h_a[Y])^k.
    """
    if k < 0 or t < 0:
        raise RangeError("need k, t ≥ 0")
    lam2 = Fraction(lam2)
    if lam2 < 0:
        raise RangeError("λ² must be nonnegative")
    if k == 0:
        return Fraction(1)
    if k > 3 or t > 8:
        from .errors import ResourceLimitError

        raise ResourceLimitError(f"(k={k}, t={t}) outside the supported range k ≤ 3, t ≤ 8")
    inner = h_upto(k, t, t, lambda a: lam2 ** a)
    poly = inner ** k
    return Fraction(poly.sum_below([t] * k))


def truncated_moment_bruteforce(k: int, t: int, lam2) -> Fraction:
    """Σ over k×k nonnegative matrices with margins ≤ t of λ^{2·(total)}."""
    lam2 = Fraction(lam2)
    total = Fraction(0)

    def rec(i: int, colleft: list[int], weight: int) -> None:
        nonlocal total
        if i == k:
            total += lam2 ** weight
            return

        def row(j: int, left: int, acc: int) -> None:
            if j == k:
                rec(i + 1, colleft, weight + acc)
                return
            for v in range(min(left, colleft[j]) + 1):
                colleft[j] -= v
                row(j + 1, left - v, acc + v)
                colleft[j] += v

        row(0, t, 0)

    rec(0, [t] * k, 0)
    return total


def unit_points(xs: Sequence, N: int) -> list[complex]:
    """e^{2πi x/N} for each x (x may be complex)."""
    return [cmath.exp(2j * cmath.pi * complex(x) / N) for x in xs]


def ratio_moment(N: int, k: int, X: Sequence, Y: Sequence) -> complex:
    """s_{N^k}[e^{2πiX/N} − e^{2πiY/N}], the supersymmetric Schur function.

    It equals (−1)^{kN} E[det(U)^{−k} ∏ Z(e^{2πix/N}) / ∏ Z(e^{2πiy/N})] whenever
    the y-points lie strictly inside the unit disc (Im y > 0).
    """
    xp = unit_points(X, N)
    yp = unit_points(Y, N)
    for a in xp:
        for b in yp:
            if abs(a - b) < 1e-12:
                raise CoincidenceError("an x-point coincides with a y-point")
    hs = hseries_supersym(xp, yp, N + k - 1)
    return schur_rect_jacobi_trudi(N, k, hs)


def _vandermonde(pts: Sequence[complex]) -> complex:
    out = 1 + 0j
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            out *= pts[j] - pts[i]
    return out


def autocorr_det(N: int, X: Sequence, Y: Sequence) -> complex:
    """E[∏ Z(e^{2πix_j/N}) ∏ conj Z(e^{2πiy_l/N})] as det(K_{N+k}) / (Δ(x) conj Δ(y)).

    K_M(z, w) = Σ_{j=0}^{M−1} (z w̄)^j. X and Y are given as microscopic
    coordinates (real), converted to unit-circle points internally.
    """
    if len(X) != len(Y):
        raise ValueError("X and Y must have the same size")
    k = len(X)
    xp = unit_points(X, N)
    yp = unit_points(Y, N)
    for pts, name in ((xp, "X"), (yp, "Y")):
        for i in range(k):
            for j in range(i + 1, k):
                if abs(pts[i] - pts[j]) < 1e-12:
                    raise CoincidenceError(f"repeated point in {name}")
    M = N + k
    mat = np.empty((k, k), dtype=complex)
    for i, z in enumerate(xp):
        for j, w in enumerate(yp):
            q = z * w.conjugate()
            mat[i, j] = M if abs(q - 1) < 1e-15 else (1 - q ** M) / (1 - q)
    return complex(np.linalg.det(mat)) / (_vandermonde(xp) * _vandermonde(yp).conjugate())


def autocorr_schur(N: int, X: Sequence, Y: Sequence) -> complex:
    """Same expectation by the Schur route: ∏ ȳ_l^N · s_{N^k}[X + Ȳ^{-1}] (points on the circle)."""
    k = len(X)
    xp = unit_points(X, N)
    yp = unit_points(Y, N)
    pts = xp + [1 / w.conjugate() for w in yp]
    val = schur_rect_jacobi_trudi(N, k, hseries_from_points(pts, N + k - 1))
    for w in yp:
        val *= w.conjugate() ** N
    return complex(val)


def dehaye_derivative_ratio(N: int, k: int, r: int) -> Fraction:
    """(1/r!) Σ_{λ ⊢ r} d_λ² ∏_{cells} (k + c)(−N + c)/(2k + c).

    Normalised joint moment E[|Z|^{2k} (iZ'/Z)^r] / E[|Z|^{2k}]. Which variable
    the derivative is taken in is not fixed here; see dehaye_sign_probe.
    """
    total = Fraction(0)
    for lam in partitions_of(r):
        term = Fraction(dimension(lam) ** 2)
        for c, mult in cell_data(lam).contents.items():
            if 2 * k + c == 0:
                raise PoleError(f"2k + c vanishes for a cell of content {c}")
            term *= (Fraction((k + c) * (-N + c), 2 * k + c)) ** mult
        total += term
    return total / factorial(r)


def _laurent_constant_term(k: int, r: int) -> Fraction:
    # constant term of u^r (1 − u)^{k−r} (1 − 1/u)^k, valid for r ≤ k
    total = 0
    for a in range(k - r + 1):
        for b in range(k + 1):
            if r + a - b == 0:
                total += comb(k - r, a) * (-1) ** a * comb(k, b) * (-1) ** b
    return Fraction(total)


def dehaye_sign_probe(k: int, r: int) -> dict:
    """N = 1 comparison between the expansion and a direct Haar average.

    For U = e^{iφ}, Z(e^{iθ}) = 1 − e^{i(θ+φ)}; the θ-derivative gives
    iZ'/Z = e^{iφ}/(1 − e^{iφ}), the x-derivative of det(I − xU) gives (−i)
    times that. Both normalised averages are exact rationals (times i^r).
    """
    if not 0 <= r <= k:
        raise RangeError("probe needs 0 ≤ r ≤ k so the integrand is a trig polynomial")
    theta = _laurent_constant_term(k, r) / comb(2 * k, k)
    x_conv = complex(theta) * (-1j) ** r
    return {
        "expansion": dehaye_derivative_ratio(1, k, r),
        "theta_derivative": theta,
        "x_derivative": x_conv,
    }
