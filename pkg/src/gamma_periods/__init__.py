"""Verification toolkit for period-gamma identities on cyclic covers of P^1.

The package is layered:

* :mod:`gamma_periods.exact` holds residues mod d, rationals and exact linear algebra.
* :mod:`gamma_periods.monomials` covers exponent functions, moments and gamma monomials.
* :mod:`gamma_periods.cover` computes branch data, eigensheaves and Hodge numbers.
* :mod:`gamma_periods.numerics` provides the gamma function, quadrature, PSLQ, AGM and period matrices.
* :mod:`gamma_periods.verify` builds end-to-end reports.
* :mod:`gamma_periods.cli` is the command-line front end.
"""

from .cover import BranchData, parse_branch, validate
from .errors import GammaPeriodsError
from .monomials import ExponentFunction, GammaMonomial, HodgeFunction, solve_epsilon
from .verify import (
    VerificationReport,
    verify_distribution,
    verify_euler,
    verify_lcs,
    verify_theorem_b,
    verify_unit_period,
)

__version__ = "0.1.0"

__all__ = [
    "BranchData",
    "ExponentFunction",
    "GammaMonomial",
    "GammaPeriodsError",
    "HodgeFunction",
    "VerificationReport",
    "parse_branch",
    "solve_epsilon",
    "validate",
    "verify_distribution",
    "verify_euler",
    "verify_lcs",
    "verify_theorem_b",
    "verify_unit_period",
]
