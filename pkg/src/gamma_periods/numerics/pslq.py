"""PSLQ integer relation detection and minimal polynomial recovery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import mpmath

from ..errors import InvalidInput, PrecisionExhausted


@dataclass(frozen=True)
class IntegerRelation:
    coefficients: tuple[int, ...]
    residual: float

    def to_json(self) -> dict:
        return {"coefficients": list(self.coefficients), "residual": f"{self.residual:.3e}"}


def _normalize(coeffs: list[int]) -> tuple[int, ...]:
    g = reduce(math.gcd, coeffs, 0) or 1
    coeffs = [c // g for c in coeffs]
    lead = next((c for c in reversed(coeffs) if c), 1)
    if lead < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def pslq(v, digits: int, max_coeff: int = 10**6, *, max_steps: int | None = None):
    """Find integers ``c`` (not all zero, ``|c_i| <= max_coeff``) with
    ``sum c_i v_i ~ 0``, or return None when no such relation exists.

    The inputs must be real and known to about ``digits`` decimals. Detection
    threshold for the reduced vector is ``10**-(digits/2)`` in relative terms.
    Raises :class:`PrecisionExhausted` when the multiplier matrix outgrows the
    working precision before a relation or the height bound is reached.
    """
    n = len(v)
    if n < 2:
        raise InvalidInput("pslq needs at least two entries")
    with mpmath.workdps(digits + 10):
        x = [mpmath.mpf(mpmath.mpmathify(t)) for t in v]
        if any(isinstance(mpmath.mpmathify(t), mpmath.mpc) and mpmath.im(t) != 0 for t in v):
            raise InvalidInput("pslq works on real vectors")
        norm = max(abs(t) for t in x)
        if norm == 0:
            raise InvalidInput("pslq input is the zero vector")
        x = [t / norm for t in x]
        threshold = mpmath.mpf(10) ** (-(digits // 2))

        for i, t in enumerate(x):
            if abs(t) < threshold:
                coeffs = [0] * n
                coeffs[i] = 1
                return IntegerRelation(tuple(coeffs), float(abs(t) * norm))

        gamma = mpmath.sqrt(mpmath.mpf(4) / 3)
        s = [mpmath.mpf(0)] * n
        acc = mpmath.mpf(0)
        for k in reversed(range(n)):
            acc += x[k] ** 2
            s[k] = mpmath.sqrt(acc)
        s0 = s[0]
        y = [t / s0 for t in x]
        s = [t / s0 for t in s]

        H = [[mpmath.mpf(0)] * (n - 1) for _ in range(n)]
        for i in range(n):
            for j in range(min(i, n - 2) + 1):
                if i == j:
                    H[i][j] = s[j + 1] / s[j]
                elif i > j:
                    H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1])
        A = [[int(i == j) for j in range(n)] for i in range(n)]
        B = [[int(i == j) for j in range(n)] for i in range(n)]

        def reduce_rows(start):
            for i in range(start, n):
                for j in range(min(i - 1, n - 2), -1, -1):
                    if H[j][j] == 0:
                        continue
                    t = int(mpmath.nint(H[i][j] / H[j][j]))
                    if t == 0:
                        continue
                    y[j] += t * y[i]
                    for k in range(j + 1):
                        H[i][k] -= t * H[j][k]
                    for k in range(n):
                        A[i][k] -= t * A[j][k]
                        B[k][j] += t * B[k][i]

        def found():
            best = min(range(n), key=lambda j: abs(y[j]))
            if abs(y[best]) >= threshold:
                return False
            coeffs = [B[k][best] for k in range(n)]
            if max(abs(c) for c in coeffs) > max_coeff:
                return None
            coeffs = list(_normalize(coeffs))
            res = abs(mpmath.fsum(c * t for c, t in zip(coeffs, x))) * norm
            return IntegerRelation(tuple(coeffs), float(res))

        reduce_rows(1)
        hit = found()
        if hit is not False:
            return hit
        limit = max_steps or 100 * n * (digits + 10)
        bits_cap = (digits + 10) * 3.32
        for _ in range(limit):
            m = max(range(n - 1), key=lambda i: gamma ** (i + 1) * abs(H[i][i]))
            y[m], y[m + 1] = y[m + 1], y[m]
            H[m], H[m + 1] = H[m + 1], H[m]
            A[m], A[m + 1] = A[m + 1], A[m]
            for row in B:
                row[m], row[m + 1] = row[m + 1], row[m]
            if m < n - 2:
                t0 = mpmath.sqrt(H[m][m] ** 2 + H[m][m + 1] ** 2)
                if t0 == 0:
                    raise PrecisionExhausted("PSLQ hit a zero pivot")
                t1 = H[m][m] / t0
                t2 = H[m][m + 1] / t0
                for i in range(m, n):
                    t3, t4 = H[i][m], H[i][m + 1]
                    H[i][m] = t1 * t3 + t2 * t4
                    H[i][m + 1] = -t2 * t3 + t1 * t4
            reduce_rows(m + 1)

            hit = found()
            if hit is not False:
                return hit
            hmax = max(abs(H[i][i]) for i in range(n - 1))
            if hmax == 0:
                raise PrecisionExhausted("PSLQ diagonal vanished")
            if 1 / hmax > max_coeff:
                return None
            amax = max(abs(a) for row in A for a in row)
            if amax and math.log2(amax) > bits_cap:
                raise PrecisionExhausted(
                    "PSLQ multipliers exceed working precision; raise digits"
                )
        return None


@dataclass(frozen=True)
class MinimalPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coefficients: tuple[int, ...]
    residual: float

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for k in reversed(range(len(self.coefficients))):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coefficients": list(self.coefficients), "degree": self.degree,
                "polynomial": str(self), "residual": f"{self.residual:.3e}"}


def _mixing_constant():
    # fixed generic real used to fold real and imaginary parts into one vector
    return mpmath.sqrt(2) + mpmath.pi / 7


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and any(a):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_squarefree(coeffs) -> bool:
    """True when the integer polynomial (ascending coefficients) has no repeated factor."""
    f = [Fraction(c) for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 2:
        return True
    a, b = f, [i * c for i, c in enumerate(f)][1:]
    while b and any(b):
        a, b = b, _poly_rem(a, b)
    return len(a) == 1


def effective_height(deg: int, height_digits: int, digits: int) -> int:
    """Coefficient height (in digits) PSLQ may search at this precision.

    ``deg + 1`` numbers with coefficients up to ``10**h`` generically admit
    spurious combinations of size ``10**-(deg * h)``; keeping ``h`` below
    ``digits / (2 (deg + 1))`` keeps those far above the detection threshold.
    """
    return max(1, min(height_digits, digits // (2 * (deg + 1))))


def min_poly(z, max_deg: int, height_digits: int, digits: int):
    """Lowest-degree integer polynomial (degree <= max_deg, coefficients below
    ``10**height_digits``, further capped by :func:`effective_height`) vanishing at ``z`` to ``10**-(digits/2)``, or None.

    Complex ``z`` is handled by running PSLQ on ``Re(z^k) + c Im(z^k)`` for a
    fixed generic ``c``; every candidate is re-checked on ``z`` itself.
    """
    with mpmath.workdps(digits + 10):
        z = mpmath.mpmathify(z)
        if isinstance(z, mpmath.mpc) and abs(z.imag) <= abs(z) * mpmath.mpf(10) ** (-(digits // 2)):
            z = z.real
        is_complex = isinstance(z, mpmath.mpc)
        c = _mixing_constant()
        check = mpmath.mpf(10) ** (-(digits // 2))
        powers = [mpmath.mpf(1)]
        for _ in range(max_deg):
            powers.append(powers[-1] * z)
        exhausted = False
        for deg in range(1, max_deg + 1):
            vec = powers[: deg + 1]
            if is_complex:
                vec = [p.real + c * p.imag if isinstance(p, mpmath.mpc) else p for p in vec]
            try:
                rel = pslq(vec, digits, 10 ** effective_height(deg, height_digits, digits))
            except PrecisionExhausted:
                exhausted = True
                continue
            if rel is None or rel.coefficients[-1] == 0 or not is_squarefree(rel.coefficients):
                # a repeated factor means a lower-degree relation holds only to half precision
                continue
            value = mpmath.fsum(k * p for k, p in zip(rel.coefficients, powers[: deg + 1]))
            size = max(1, max(abs(k) * abs(p) for k, p in zip(rel.coefficients, powers)))
            if abs(value) < check * size:
                return MinimalPolynomial(rel.coefficients, float(abs(value)))
        if exhausted:
            raise PrecisionExhausted("no relation found before precision ran out")
        return None
