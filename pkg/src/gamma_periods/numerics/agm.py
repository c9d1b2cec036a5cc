"""Arithmetic-geometric mean."""

import mpmath

from ..errors import InvalidInput


def agm(a, b, digits: int = 30):
    """AGM of ``a`` and ``b``, choosing at each step the square root closer to
    the arithmetic mean (the "right" choice, which stays in the right half-plane
    for positive reals and converges quadratically)."""
    with mpmath.workdps(digits + 10):
        a = mpmath.mpmathify(a)
        b = mpmath.mpmathify(b)
        if a == 0 or b == 0:
            raise InvalidInput("agm needs nonzero arguments")
        tol = mpmath.mpf(10) ** (-(digits + 5))
        for _ in range(10_000):
            if abs(a - b) <= tol * abs(a):
                break
            mean = (a + b) / 2
            root = mpmath.sqrt(a * b)
            if abs(mean - root) > abs(mean + root):
                root = -root
            a, b = mean, root
        return +a
