"""Truncated complete-homogeneous series and the Schur evaluations built on them.

Every alphabet is carried as its sequence h_0, h_1, ..., h_D. Two scalar rings
are used: exact rationals (Fraction, int) and complex doubles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import CapExceededError, ContainmentError, LengthError, SizeMismatchError
from .partitions import Partition, horizontal_strip_predecessors

EXACT = "exact"
COMPLEX = "complex"


def _is_exact(v) -> bool:
    return isinstance(v, Rational)


def ring_of(values: Sequence) -> str:
    return EXACT if all(_is_exact(v) for v in values) else COMPLEX


@dataclass(frozen=True)
class HSeries:
    """h_0..h_D of an alphabet over one scalar ring."""

    scalars: tuple
    ring: str = EXACT

    @property
    def degree_cap(self) -> int:
        return len(self.scalars) - 1

    def h(self, m: int):
        if m < 0:
            return 0 if self.ring == EXACT else 0j
        if m > self.degree_cap:
            raise CapExceededError(f"h_{m} requested but series is capped at degree {self.degree_cap}")
        return self.scalars[m]

    def __getitem__(self, m: int):
        return self.h(m)

    def __mul__(self, other: "HSeries") -> "HSeries":
        """Series product, i.e. the h-series of the alphabet sum."""
        D = min(self.degree_cap, other.degree_cap)
        ring = EXACT if self.ring == other.ring == EXACT else COMPLEX
        out = [sum(self.scalars[i] * other.scalars[m - i] for i in range(m + 1)) for m in range(D + 1)]
        return HSeries(tuple(out), ring)


def _normalise(points, ring):
    if ring == EXACT:
        return [Fraction(p) for p in points]
    return [complex(p) for p in points]


def hseries_from_points(points: Sequence, D: int) -> HSeries:
    """Expand ∏ (1 − t x_i)^{-1} up to t^D."""
    ring = ring_of(points)
    one = Fraction(1) if ring == EXACT else 1 + 0j
    zero = one - one
    h = [one] + [zero] * D
    for x in _normalise(points, ring):
        for m in range(1, D + 1):
            h[m] = h[m] + x * h[m - 1]
    return HSeries(tuple(h), ring)


def hseries_ones(kappa, D: int) -> HSeries:
    """h_m[1^κ] = κ(κ+1)...(κ+m−1)/m!, for any positive rational κ."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    h = [Fraction(1)]
    for m in range(1, D + 1):
        h.append(h[-1] * (kappa + m - 1) / m)
    return HSeries(tuple(h), EXACT)


def hseries_supersym(X: Sequence, Y: Sequence, D: int) -> HSeries:
    """Coefficients of ∏(1 − t y_j) / ∏(1 − t x_i), i.e. h_m[X − Y]."""
    base = hseries_from_points(X, D)
    ring = ring_of(list(X) + list(Y))
    h = list(_normalise(base.scalars, ring))
    for y in _normalise(Y, ring):
        for m in range(D, 0, -1):
            h[m] = h[m] - y * h[m - 1]
    return HSeries(tuple(h), ring)


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction | int:
    """Fraction-free elimination; exact for integer or Fraction entries."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = a[k][k]
    det = sign * a[n - 1][n - 1]
    if isinstance(det, Fraction) and det.denominator == 1:
        return int(det)
    return det


def complex_det(matrix) -> complex:
    # LAPACK LU with partial pivoting
    return complex(np.linalg.det(np.asarray(matrix, dtype=complex)))


def schur_rect_jacobi_trudi(N: int, k: int, hs: HSeries):
    """s_{N^k}[A] = det(h_{N+j−i})_{1≤i,j≤k}."""
    if k == 0 or N == 0:
        return 1 if hs.ring == EXACT else 1 + 0j
    if hs.degree_cap < N + k - 1:
        raise CapExceededError(f"need degree cap {N + k - 1}, have {hs.degree_cap}")
    mat = [[hs.h(N + j - i) for j in range(k)] for i in range(k)]
    if hs.ring == EXACT:
        return bareiss_det(mat)
    return complex_det(mat)


def weyl_dimension(lam: Partition, n: int) -> int:
    """s_λ(1^n) by the product over pairs of rows."""
    if lam.length() > n:
        raise LengthError(f"{lam} has more than {n} rows")
    parts = [lam[i] for i in range(n)]
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def h_ones_int(r: int, m: int) -> int:
    """h_r[1^m] as an integer."""
    if r < 0:
        return 0
    if m == 0:
        return 1 if r == 0 else 0
    return comb(r + m - 1, m - 1)


def skew_schur_ones(lam: Partition, mu: Partition, m: int) -> int:
    """Number of semistandard fillings of λ/μ with entries in 1..m."""
    if not lam.contains(mu):
        raise ContainmentError(f"{mu} is not contained in {lam}")
    n = lam.length()
    if n == 0:
        return 1
    mat = [[h_ones_int(lam[i] - mu[j] - i + j, m) for j in range(n)] for i in range(n)]
    return int(bareiss_det(mat))


def kostka(lam: Partition, content: Sequence[int]) -> int:
    """K_{λ,μ}: semistandard tableaux of shape λ and content μ (μ any composition).

    The largest letter occupies a horizontal strip; peel it off and recurse.
    """
    content = tuple(int(c) for c in content)
    if lam.size() != sum(content):
        raise SizeMismatchError(f"|{lam}| = {lam.size()} but content sums to {sum(content)}")
    memo: dict[tuple[Partition, int], int] = {}

    def rec(shape: Partition, r: int) -> int:
        # r letters remain: 1..r
        if r == 0:
            return 1 if shape.size() == 0 else 0
        if shape.length() > r:
            return 0
        key = (shape, r)
        if key in memo:
            return memo[key]
        total = sum(rec(nu, r - 1) for nu in horizontal_strip_predecessors(shape, content[r - 1]))
        memo[key] = total
        return total

    return rec(lam, len(content))
