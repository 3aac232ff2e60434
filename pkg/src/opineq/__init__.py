"""Finite-dimensional laboratory for Loewner-order, block-positivity and numerical-radius inequalities."""

from .blocks import BlockForm, block_psd, schur_test
from .classes import alpha_beta_profile, classify, gen_matrix
from .errors import (
    DomainError,
    FgMismatchError,
    NumericalFailure,
    OpineqError,
    PreconditionUnmet,
    SingularError,
    UnknownCheckError,
    UsageError,
)
from .linalg import abs_adj, abs_op, imag_part, loewner_leq, psd_check, real_part, singular_values
from .means import MeanSpec, geometric_mean, mean_apply, weighted_geometric_mean
from .numrange import NumericalRadiusEstimate, omega
from .report import CheckReport
from .theorems import REGISTRY, FalsificationResult, falsify, run_check

__version__ = "0.1.0"
