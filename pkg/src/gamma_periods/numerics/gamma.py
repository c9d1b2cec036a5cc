"""Gamma function by argument shift plus the Stirling series."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from ..errors import PoleError

_GUARD = 12


@lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_{2 count} as exact fractions (Akiyama-Tanigawa)."""
    n_max = 2 * count
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return tuple(out)


def _stirling_log_gamma(w, eps):
    """log Gamma(w) for Re w large; stops once a term drops below ``eps``.

    For Re w > 0 the remainder is bounded by twice the first omitted term.
    """
    s = (w - mpmath.mpf(0.5)) * mpmath.log(w) - w + mpmath.log(2 * mpmath.pi) / 2
    w2 = w * w
    power = w
    count = 16
    k = 0
    while True:
        bern = _bernoulli_even(count)
        while k < count:
            b = bern[k]
            n = 2 * (k + 1)
            term = (mpmath.mpf(b.numerator) / b.denominator) / (n * (n - 1) * power)
            s += term
            k += 1
            if abs(term) < eps:
                return s
            power *= w2
        count *= 2


def gamma_hp(z, digits: int):
    """Gamma(z) with relative error below ``10**-digits``.

    Uses reflection for ``Re z < 1/2`` and shifts the argument up with the
    recurrence until the Stirling series converges fast enough.
    """
    with mpmath.workdps(digits + _GUARD):
        z = mpmath.mpmathify(z)
        re = z.real if isinstance(z, mpmath.mpc) else z
        im = z.imag if isinstance(z, mpmath.mpc) else 0
        if im == 0 and re <= 0 and re == mpmath.floor(re):
            raise PoleError(int(re))
        if re < 0.5:
            return +(mpmath.pi / (mpmath.sin(mpmath.pi * z) * gamma_hp(1 - z, digits + 2)))
        dps = mpmath.mp.dps
        # min_k |term_k| ~ exp(-2 pi |w|), so |w| >= dps ln10 / (2 pi) suffices
        target = math.ceil(0.37 * dps) + 4
        n = max(0, target - int(mpmath.floor(re)))
        w = z + n
        prod = mpmath.mpf(1)
        for j in range(n):
            prod *= z + j
        eps = mpmath.mpf(10) ** (-dps)
        lg = _stirling_log_gamma(w, eps)
        result = mpmath.exp(lg) / prod
    return +result
