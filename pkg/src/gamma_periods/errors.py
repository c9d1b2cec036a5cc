"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can emit
stable diagnostics and exit codes.
"""


class GammaPeriodsError(Exception):
    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class InvalidModulus(GammaPeriodsError, ValueError):
    code = "invalid-modulus"


class InvalidUnit(GammaPeriodsError, ValueError):
    code = "invalid-unit"


class ShapeError(GammaPeriodsError, ValueError):
    code = "shape-error"


class NoEpsilon(GammaPeriodsError):
    code = "no-epsilon"


class IncompatibleModuli(GammaPeriodsError, ValueError):
    code = "incompatible-moduli"


class NoLineBundle(GammaPeriodsError, ValueError):
    code = "no-line-bundle"


class InvalidDivisor(GammaPeriodsError, ValueError):
    code = "invalid-divisor"


class InvalidInput(GammaPeriodsError, ValueError):
    code = "invalid"


class PoleError(GammaPeriodsError, ValueError):
    code = "pole-error"

    def __init__(self, pole: int):
        super().__init__(f"gamma has a pole at {pole}", pole=pole)
        self.pole = pole


class QuadratureFailure(GammaPeriodsError, ArithmeticError):
    code = "quadrature-failure"

    def __init__(self, message: str, estimate=None):
        super().__init__(message, estimate=estimate)
        self.estimate = estimate


class UnsupportedResidue(GammaPeriodsError, ValueError):
    code = "unsupported-residue"


class DegenerateBasis(GammaPeriodsError, ArithmeticError):
    code = "degenerate-basis"


class PrecisionExhausted(GammaPeriodsError, ArithmeticError):
    code = "precision-exhausted"


class InvalidDiscriminant(GammaPeriodsError, ValueError):
    code = "invalid-discriminant"


class InvalidCurve(GammaPeriodsError, ValueError):
    code = "invalid-curve"


class ConfigError(GammaPeriodsError, ValueError):
    """Malformed command-line or config-file input, with optional position."""

    code = "config-error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column
