"""Arbitrary-precision numerics on top of mpmath's number types.

Precision is always passed explicitly in decimal digits; every routine runs
inside its own ``mpmath.workdps`` block and never relies on ambient state.
"""

from .agm import agm
from .gamma import gamma_hp
from .periods import PeriodMatrix, loop_period_matrix, twisted_period_matrix
from .pslq import IntegerRelation, MinimalPolynomial, min_poly, pslq
from .quadrature import integrate_singular

__all__ = [
    "agm",
    "gamma_hp",
    "integrate_singular",
    "loop_period_matrix",
    "min_poly",
    "pslq",
    "twisted_period_matrix",
    "IntegerRelation",
    "MinimalPolynomial",
    "PeriodMatrix",
    "to_decimal",
]


def to_decimal(x, digits: int):
    """Serialize a real or complex mpmath number as decimal strings."""
    import mpmath

    with mpmath.workdps(digits + 5):
        x = mpmath.mpmathify(x)
        if isinstance(x, mpmath.mpc):
            return {"re": mpmath.nstr(x.real, digits), "im": mpmath.nstr(x.imag, digits),
                    "digits": digits}
        return {"re": mpmath.nstr(x, digits), "im": "0", "digits": digits}
