"""Lattice-point counts for Birkhoff, sub-Birkhoff and transportation polytopes.

Counts come from coefficient extraction in capped multivariate series; a
backtracking enumerator is kept as ground truth for small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeDeficiencyError, ResidualError, ResourceLimitError, SizeMismatchError
from .partitions import Partition


class BoundedMultiPoly:
    """Polynomial in `nvars` variables with every exponent capped at `cap`.

    Coefficients may be int or Fraction. Terms beyond the cap are dropped as
    soon as they appear, so products stay in the truncated ring.
    """

    __slots__ = ("nvars", "cap", "terms")

    def __init__(self, nvars: int, cap: int, terms: dict | None = None):
        self.nvars = nvars
        self.cap = cap
        self.terms: dict[tuple[int, ...], object] = {}
        for e, c in (terms or {}).items():
            if c != 0 and all(0 <= v <= cap for v in e):
                self.terms[tuple(e)] = c

    @classmethod
    def one(cls, nvars: int, cap: int) -> "BoundedMultiPoly":
        return cls(nvars, cap, {(0,) * nvars: 1})

    @classmethod
    def from_univariate(cls, nvars: int, cap: int, var: int, coeffs: Sequence) -> "BoundedMultiPoly":
        terms = {}
        for d, c in enumerate(coeffs[: cap + 1]):
            e = [0] * nvars
            e[var] = d
            terms[tuple(e)] = c
        return cls(nvars, cap, terms)

    def _check(self, other: "BoundedMultiPoly") -> None:
        if (self.nvars, self.cap) != (other.nvars, other.cap):
            raise ValueError("incompatible truncated rings")

    def __add__(self, other: "BoundedMultiPoly") -> "BoundedMultiPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BoundedMultiPoly(self.nvars, self.cap, out)

    def __mul__(self, other):
        if not isinstance(other, BoundedMultiPoly):
            return BoundedMultiPoly(self.nvars, self.cap, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        cap = self.cap
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if max(e) > cap:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return BoundedMultiPoly(self.nvars, cap, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BoundedMultiPoly":
        result = BoundedMultiPoly.one(self.nvars, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, BoundedMultiPoly) and self.terms == other.terms and self.cap == other.cap

    def coeff(self, exponents: Sequence[int]):
        return self.terms.get(tuple(exponents), 0)

    def sum_below(self, bound: Sequence[int]):
        """Σ of coefficients whose exponents are componentwise ≤ bound."""
        return sum(c for e, c in self.terms.items() if all(a <= b for a, b in zip(e, bound)))


def _h_monomials(nvars: int, cap: int, degree: int, weight=1) -> BoundedMultiPoly:
    """h_degree[X] in nvars variables, all monomials, times weight."""
    terms = {}

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == nvars - 1:
            if left <= cap:
                terms[tuple(acc + [left])] = weight
            return
        for a in range(min(left, cap) + 1):
            rec(i + 1, left - a, acc + [a])

    if nvars == 0:
        return BoundedMultiPoly(0, cap, {(): weight} if degree == 0 else {})
    rec(0, degree, [])
    return BoundedMultiPoly(nvars, cap, terms)


def _guard(k: int, t: int, kmax: int, tmax: int) -> None:
    if k > kmax or t > tmax:
        raise ResourceLimitError(f"(k={k}, t={t}) beyond the feasible range k ≤ {kmax}, t ≤ {tmax}")


def ehrhart_birkhoff(k: int, t: int) -> int:
    """L(t, B_k) = [X^t] h_t[X]^k with X = x_1..x_k."""
    if k < 1 or t < 0:
        raise ValueError("need k ≥ 1, t ≥ 0")
    _guard(k, t, 4, 10)
    p = _h_monomials(k, t, t) ** k
    return int(p.coeff([t] * k))


def h_upto(nvars: int, cap: int, t: int, weight_of_degree=lambda a: 1) -> BoundedMultiPoly:
    """Σ_{a=0}^{t} w(a) h_a[X], i.e. h_t[1 + X] when all weights are 1."""
    out = BoundedMultiPoly(nvars, cap)
    for a in range(t + 1):
        out = out + _h_monomials(nvars, cap, a, weight_of_degree(a))
    return out


def ehrhart_subbirkhoff(k: int, t: int) -> int:
    """L(t, S_k) = Σ_{a ≤ t} [X^a] h_t[1+X]^k.

    Each factor h_t[1+X] is one row with sum ≤ t (the letter 1 is the slack);
    the column bound becomes a sum over all exponents capped at t. The
    shortcut [X^t] h_t[1+X]^{k+1} only agrees at k = 1; for k ≥ 2 it counts
    B_{k+1} instead.
    """
    if k < 1 or t < 0:
        raise ValueError("need k ≥ 1, t ≥ 0")
    _guard(k, t, 4, 10)
    p = h_upto(k, t, t) ** k
    return int(p.sum_below([t] * k))


def ehrhart_transport(lam: Partition, mu: Partition, ell: int) -> int:
    """L(ℓ, T_{λ,μ}) = [X^{ℓλ}] h_{ℓμ}[X]: matrices with row sums ℓλ, column sums ℓμ."""
    if lam.size() != mu.size():
        raise SizeMismatchError(f"|λ| = {lam.size()} differs from |μ| = {mu.size()}")
    rows = [ell * v for v in lam]
    if not rows:
        return 1
    cap = max(rows)
    p = BoundedMultiPoly.one(len(rows), cap)
    for col in mu:
        p = p * _h_monomials(len(rows), cap, ell * col)
    return int(p.coeff(rows))


def brute_force_count(row_sums: Sequence[int], col_sums: Sequence[int], mode: str = "equal") -> int:
    """Count nonnegative integer matrices by backtracking, filling row by row.

    mode="equal": margins exactly row_sums/col_sums.
    mode="at-most": every margin at most the given value.
    """
    if mode not in ("equal", "at-most"):
        raise ValueError("mode must be 'equal' or 'at-most'")
    rows = list(row_sums)
    cols = list(col_sums)
    m, n = len(rows), len(cols)
    if mode == "equal" and sum(rows) != sum(cols):
        return 0

    def fill_row(i: int, j: int, left: int, colleft: list[int]) -> int:
        if j == n:
            if mode == "equal" and left != 0:
                return 0
            return rec(i + 1, colleft)
        total = 0
        top = min(left, colleft[j])
        for v in range(top + 1):
            colleft[j] -= v
            total += fill_row(i, j + 1, left - v, colleft)
            colleft[j] += v
        return total

    def rec(i: int, colleft: list[int]) -> int:
        if i == m:
            if mode == "equal" and any(colleft):
                return 0
            return 1
        return fill_row(i, 0, rows[i], colleft)

    if m == 0 or n == 0:
        return 1
    return rec(0, cols)


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Exact polynomial in t; coefficients[i] multiplies t^i."""

    coefficients: tuple
    descriptor: str = ""

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1]

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def interpolate_ehrhart(samples: Sequence[tuple[int, int]], degree: int, descriptor: str = "") -> EhrhartPolynomial:
    """Exact Newton interpolation through samples at consecutive integers t0, t0+1, ...

    Samples beyond degree+1 are used as consistency checks.
    """
    pts = sorted((int(t), Fraction(v)) for t, v in samples)
    ts = [t for t, _ in pts]
    if len(set(ts)) != len(ts):
        raise ValueError("duplicate interpolation nodes")
    if len(pts) < degree + 1:
        raise DegreeDeficiencyError(f"need {degree + 1} samples for degree {degree}, have {len(pts)}")
    if ts != list(range(ts[0], ts[0] + len(ts))):
        raise ValueError("nodes must be consecutive integers")
    t0 = ts[0]
    vals = [v for _, v in pts]
    # forward differences give the Newton basis binom(t - t0, j)
    diffs = []
    row = vals[: degree + 1]
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    coeffs = [Fraction(0)] * (degree + 1)
    basis = [Fraction(1)]  # polynomial binom(t - t0, j) in powers of t
    for j, d in enumerate(diffs):
        for i, c in enumerate(basis):
            coeffs[i] += d * c
        # basis_{j+1} = basis_j * (t - t0 - j) / (j + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c / (j + 1)
            nxt[i] -= c * (t0 + j) / (j + 1)
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    poly = EhrhartPolynomial(tuple(coeffs), descriptor)
    for t, v in pts:
        if poly(t) != v:
            raise ResidualError(f"sample at t={t} is inconsistent with degree {degree}")
    return poly


def ehrhart_polynomial(kind: str, k: int) -> EhrhartPolynomial:
    """Interpolated L(t, B_k) or L(t, S_k) from exact counts at t = 0..degree+1."""
    if kind == "birkhoff":
        deg = (k - 1) ** 2
        fn = ehrhart_birkhoff
    elif kind == "subbirkhoff":
        deg = k * k
        fn = ehrhart_subbirkhoff
    else:
        raise ValueError(kind)
    samples = [(t, fn(k, t)) for t in range(deg + 2)]
    return interpolate_ehrhart(samples, deg, f"{kind}({k})")

