"""Tanh-sinh quadrature for integrands with algebraic endpoint singularities."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import mpmath

from ..errors import InvalidInput, QuadratureFailure

_GUARD = 15
MAX_LEVEL = 14


@lru_cache(maxsize=512)
def _level_nodes(level: int, dps: int, umax: float) -> tuple:
    """Nodes added at ``level`` on [-1, 1]: tuples (w, 1 + x, 1 - x).

    Level 0 uses step 1; level k adds the odd multiples of 2**-k. Distances to
    the endpoints are formed directly so that points exponentially close to
    +-1 keep full relative accuracy.
    """
    with mpmath.workdps(dps):
        h = mpmath.mpf(2) ** (-level)
        half_pi = mpmath.pi / 2
        if level == 0:
            ks = range(0, int(umax) + 1)
        else:
            ks = range(1, int(umax * 2**level) + 1, 2)
        nodes = []
        for k in ks:
            u = k * h
            s = half_pi * mpmath.sinh(u)
            e2 = mpmath.exp(-2 * s)
            w = half_pi * mpmath.cosh(u) * 4 * e2 / (1 + e2) ** 2
            one_minus = 2 * e2 / (1 + e2)
            one_plus = 2 / (1 + e2)
            nodes.append((w, one_plus, one_minus))
            if k == 0:
                continue
            nodes.append((w, one_minus, one_plus))
        return tuple(nodes)


def _window(dps: int, mu_min: float) -> float:
    """Half-width in u beyond which every node contributes below 10**-dps."""
    decay = max(1.0 + mu_min, 1e-3)
    s = (dps + 5) * math.log(10) / (2 * decay) + 5
    return math.ceil(2 * math.asinh(2 * s / math.pi) + 1) / 2


def integrate_singular(
    g: Callable,
    interval,
    endpoint_exponents=(0, 0),
    digits: int = 30,
    *,
    max_level: int = MAX_LEVEL,
):
    """Integrate ``(t-lo)^mu_lo (hi-t)^mu_hi g(t)`` over ``[lo, hi]``.

    ``g`` must be analytic on a neighbourhood of the interval; the exponents
    must exceed -1. Levels are doubled until two successive estimates agree to
    ``10**-digits`` relative to the size of the result.
    """
    lo, hi = interval
    mu_lo, mu_hi = endpoint_exponents
    with mpmath.workdps(digits + _GUARD):
        dps = mpmath.mp.dps
        lo = mpmath.mpmathify(lo)
        hi = mpmath.mpmathify(hi)
        mu_lo = mpmath.mpmathify(mu_lo)
        mu_hi = mpmath.mpmathify(mu_hi)
        if not (mu_lo > -1 and mu_hi > -1):
            raise InvalidInput("endpoint exponents must be > -1")
        if not hi > lo:
            raise InvalidInput("interval must satisfy lo < hi")
        half = (hi - lo) / 2
        umax = _window(dps, float(min(mu_lo, mu_hi)))
        scale = half ** (1 + mu_lo + mu_hi)
        tol = mpmath.mpf(10) ** (-digits)

        def level_sum(level):
            total = 0
            for w, dlo, dhi in _level_nodes(level, dps, umax):
                a = half * dlo
                b = half * dhi
                t = lo + a if dlo < dhi else hi - b
                total += w * mpmath.power(dlo, mu_lo) * mpmath.power(dhi, mu_hi) * g(t)
            return total

        acc = level_sum(0)
        estimate = scale * acc
        prev = None
        for level in range(1, max_level + 1):
            acc += level_sum(level)
            estimate = scale * acc * mpmath.mpf(2) ** (-level)
            if prev is not None:
                err = abs(estimate - prev)
                if err <= tol * max(abs(estimate), mpmath.mpf(10) ** (-dps)) and level >= 3:
                    return +estimate
            prev = estimate
        raise QuadratureFailure(
            f"tanh-sinh did not converge after {max_level} levels",
            estimate=mpmath.nstr(abs(estimate - prev), 5) if prev is not None else None,
        )
