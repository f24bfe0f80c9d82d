"""Exact CUE moments, their limiting constants, and the checks tying them together."""

from .convergence_harness import compare_with_constant, convergence_table, exact_value, richardson
from .cue_sampler import estimate_functional, sample_ensemble
from .errors import CueLabError
from .exact_functionals import (
    autocorr_det,
    kr3g_moment,
    ks_moment,
    mom_moment,
    ratio_moment,
    secular_moment,
    truncated_moment_lambda,
)
from .limit_constants import ANCHORS, Budget, LimitEstimate, barnes_mk, build_spec, evaluate_constant, hankel_ks
from .limit_kernels import kernel_exact, kernel_quadrature, kernel_supersym, kernel_tilde_exact
from .partitions import Partition
from .polytope_ehrhart import ehrhart_birkhoff, ehrhart_polynomial, ehrhart_subbirkhoff, ehrhart_transport
from .reporting import Report, emit_report

__version__ = "0.1.0"
