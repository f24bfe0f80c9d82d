"""Finite-N exact values, their rescaling, and first-order Richardson extrapolation."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientDataError, UnknownFunctionalError
from .exact_functionals import kr3g_moment, ks_moment, mom_moment, secular_moment, truncated_moment_lambda
from .limit_constants import Budget, build_spec, evaluate_constant, order_exponent
from .polytope_ehrhart import ehrhart_birkhoff, ehrhart_subbirkhoff

FUNCTIONALS = ("KS", "SC", "ZT", "KR3G", "MOM", "VOL_B", "VOL_S")


@dataclass
class Row:
    N: int
    exact: Fraction
    rescaled: Fraction


def _floor(x, N: int) -> int:
    return math.floor(Fraction(x).limit_denominator(10 ** 9) * N)


def exact_value(kind: str, params: dict, N: int) -> Fraction:
    kind = kind.upper()
    k = params.get("k")
    if kind == "KS":
        return Fraction(ks_moment(N, k))
    if kind == "SC":
        return Fraction(secular_moment(N, _floor(params["rho"], N), k))
    if kind == "KR3G":
        return Fraction(kr3g_moment(N, _floor(params["c"], N), k))
    if kind == "MOM":
        return Fraction(mom_moment(N, k, params["beta"]))
    if kind == "ZT":
        # exact only in the stable range N ≥ kℓ
        ell = _floor(params["rho"], N)
        if k * ell > N:
            raise ValueError("the truncated moment is exact only when k·⌊ρN⌋ ≤ N")
        return Fraction(truncated_moment_lambda(k, ell, 1))
    if kind == "VOL_B":
        return Fraction(ehrhart_birkhoff(k, N))
    if kind == "VOL_S":
        return Fraction(ehrhart_subbirkhoff(k, N))
    raise UnknownFunctionalError(kind)


def _exact_job(job):
    return exact_value(*job)


def convergence_table(kind: str, params: dict, N_list: Sequence[int], workers: int = 1) -> list[Row]:
    """(N, exact value, exact value / N^order) for each N.

    With workers > 1 the exact values are computed in a process pool; the
    result does not depend on the worker count.
    """
    kind = kind.upper()
    if kind not in FUNCTIONALS:
        raise UnknownFunctionalError(kind)
    if list(N_list) != sorted(N_list):
        raise ValueError("N_list must be increasing")
    order = order_exponent(kind, params)
    jobs = [(kind, params, N) for N in N_list]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            values = list(pool.map(_exact_job, jobs))
    else:
        values = [_exact_job(j) for j in jobs]
    return [Row(N, v, v / Fraction(N) ** order) for N, v in zip(N_list, values)]


@dataclass
class Extrapolation:
    value: Fraction
    abs_error: float
    estimates: list[Fraction]


def richardson(values: Sequence[tuple[int, Fraction]], order: int = 1) -> Extrapolation:
    """First-order Richardson 2v_{2N} − v_N over every doubling pair.

    The error is the spread of the extrapolants when there are several, and
    |v_{2N} − v_N| when there is only one.
    """
    if order != 1:
        raise ValueError("only first-order extrapolation is supported")
    table = {int(N): Fraction(v) if not isinstance(v, float) else v for N, v in values}
    ests = []
    last_gap = None
    for N in sorted(table):
        if 2 * N in table:
            ests.append(2 * table[2 * N] - table[N])
            last_gap = abs(table[2 * N] - table[N])
    if not ests:
        raise InsufficientDataError("need at least one pair (N, 2N)")
    if len(ests) >= 2:
        err = float(max(ests) - min(ests))
    else:
        err = float(last_gap)
    return Extrapolation(ests[-1], err, ests)


def rate_ratios(values: Sequence[tuple[int, Fraction]], limit) -> list[float]:
    """|v_{2N} − L| / |v_N − L| for every doubling pair; ≈ 1/2 at first order."""
    table = dict(values)
    out = []
    for N in sorted(table):
        if 2 * N in table:
            out.append(float(abs(table[2 * N] - limit) / abs(table[N] - limit)))
    return out


@dataclass
class Comparison:
    functional: str
    params: dict
    extrapolated: float
    extrapolation_error: float
    constant: complex
    constant_error: float
    relative_gap: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.relative_gap <= self.tolerance


def compare_with_constant(kind: str, params: dict, N_list: Sequence[int], tolerance: float, budget: Budget | None = None) -> Comparison:
    rows = convergence_table(kind, params, N_list)
    ext = richardson([(r.N, r.rescaled) for r in rows])
    est = evaluate_constant(build_spec(kind, **params), budget)
    ref = est.exact if est.exact is not None else est.value.real
    gap = abs(float(ext.value) - float(ref)) / abs(float(ref))
    return Comparison(kind, params, float(ext.value), ext.abs_error, est.value, est.abs_error, gap, tolerance)
