"""Gamma monomials and exponent functions on Z/d.

A gamma monomial ``(2 pi i)^r * prod_a Gamma(a/d)^e(a)`` is only ever
treated as a class modulo nonzero algebraic numbers; equality is certified,
never asserted numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import IncompatibleModuli, InvalidInput, InvalidUnit, NoEpsilon
from .exact import (
    as_fraction,
    format_fraction,
    inverse_mod,
    rep,
    solve_rational_linear,
    unit_group,
)


@dataclass(frozen=True)
class HodgeFunction:
    """Hodge type ``p(lambda)`` of each eigenline, for a weight ``m`` structure."""

    d: int
    values: Mapping[int, int]
    weight: int

    def __post_init__(self):
        units = unit_group(self.d)
        vals = {int(k) % self.d: int(v) for k, v in dict(self.values).items()}
        if sorted(vals) != units:
            raise InvalidInput(f"p must be given on exactly the units mod {self.d}")
        for lam in units:
            if vals[lam] + vals[(-lam) % self.d] != self.weight:
                raise InvalidInput(
                    f"Hodge symmetry fails: p({lam}) + p({-lam % self.d}) != {self.weight}"
                )
        object.__setattr__(self, "values", vals)

    def __call__(self, lam: int) -> int:
        return self.values[lam % self.d]


@dataclass(frozen=True)
class ExponentFunction:
    """A function Z/d -> Q, stored as the tuple of its values at 0..d-1."""

    d: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.d:
            raise InvalidInput(f"exponent function needs {self.d} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, d: int) -> "ExponentFunction":
        return cls(d, (Fraction(0),) * d)

    def __call__(self, a: int) -> Fraction:
        return self.values[a % self.d]

    def __sub__(self, other: "ExponentFunction") -> "ExponentFunction":
        if other.d != self.d:
            raise IncompatibleModuli("exponent functions on different moduli")
        return ExponentFunction(self.d, tuple(x - y for x, y in zip(self.values, other.values)))

    def to_json(self) -> dict:
        return {"d": self.d, "values": [format_fraction(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ExponentFunction":
        return cls(int(obj["d"]), tuple(as_fraction(v) for v in obj["values"]))


@dataclass(frozen=True)
class GammaMonomial:
    """``(2 pi i)^r * prod_{a=1}^{d-1} Gamma(a/d)^{e(a)}``.

    ``exponents[a - 1]`` holds ``e(a)``.
    """

    d: int
    r: Fraction = Fraction(0)
    exponents: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        exps = tuple(as_fraction(v) for v in self.exponents) or (Fraction(0),) * (self.d - 1)
        if len(exps) != self.d - 1:
            raise InvalidInput(f"monomial mod {self.d} needs {self.d - 1} gamma exponents")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "r", as_fraction(self.r))

    @classmethod
    def identity(cls, d: int) -> "GammaMonomial":
        return cls(d)

    @classmethod
    def from_map(cls, d: int, r=0, exponents: Mapping[int, object] | None = None) -> "GammaMonomial":
        exps = [Fraction(0)] * (d - 1)
        for a, v in (exponents or {}).items():
            if not 1 <= a <= d - 1:
                raise InvalidInput(f"gamma argument index {a} outside 1..{d - 1}")
            exps[a - 1] += as_fraction(v)
        return cls(d, as_fraction(r), tuple(exps))

    def e(self, a: int) -> Fraction:
        return self.exponents[a - 1]

    def is_identity(self) -> bool:
        return self.r == 0 and not any(self.exponents)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "two_pi_i_power": format_fraction(self.r),
            "gamma_exponents": {str(a): format_fraction(v) for a, v in enumerate(self.exponents, 1) if v},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GammaMonomial":
        d = int(obj["d"])
        exps = {int(a): as_fraction(v) for a, v in obj.get("gamma_exponents", {}).items()}
        return cls.from_map(d, as_fraction(obj.get("two_pi_i_power", "0")), exps)

    def __str__(self) -> str:
        parts = []
        if self.r:
            parts.append(f"(2*pi*i)^({self.r})")
        parts += [f"Gamma({a}/{self.d})^({v})" for a, v in enumerate(self.exponents, 1) if v]
        return " * ".join(parts) or "1"


def moment(eps: ExponentFunction, lam: int) -> Fraction:
    """``(1/d) * sum_a eps(a) <a lam>``, exact."""
    d = eps.d
    if gcd(lam, d) != 1:
        raise InvalidUnit(f"{lam} is not a unit modulo {d}")
    return sum((eps.values[a] * rep(a * lam, d) for a in range(1, d)), Fraction(0)) / d


def _moment_system(d: int):
    units = unit_group(d)
    rows = [[Fraction(rep(a * lam, d), d) for a in range(1, d)] for lam in units]
    return units, rows


def epsilon_kernel(d: int) -> list[ExponentFunction]:
    """Basis of exponent functions (with value 0 at 0) whose moments all vanish.

    Adding any combination of these to a solution of the moment equations gives
    another solution; all of them satisfy :func:`koblitz_ogus_trivial`.
    """
    units, rows = _moment_system(d)
    sol = solve_rational_linear(rows, [0] * len(units))
    return [ExponentFunction(d, (Fraction(0),) + v) for v in sol.kernel]


def solve_epsilon(p: HodgeFunction, *, canonical: bool = True) -> ExponentFunction:
    """Find eps with ``(1/d) sum_a eps(a) <a lam> = p(lam)`` for every unit lam.

    The canonical answer is the least-norm solution, obtained by projecting a
    particular solution off the kernel; ``canonical=False`` returns the raw
    pivot solution instead (free variables zero).
    """
    d = p.d
    units, rows = _moment_system(d)
    rhs = [Fraction(p(lam)) for lam in units]
    sol = solve_rational_linear(rows, rhs)
    if not sol.consistent:
        raise NoEpsilon(f"moment equations inconsistent for this p (d={d})",
                        certificate=[format_fraction(c) for c in sol.certificate])
    x = list(sol.solution)
    if canonical and sol.kernel:
        K = sol.kernel
        gram = [[sum((u * v for u, v in zip(ki, kj)), Fraction(0)) for kj in K] for ki in K]
        proj = [sum((u * v for u, v in zip(ki, x)), Fraction(0)) for ki in K]
        coeffs = solve_rational_linear(gram, proj).solution
        for c, k in zip(coeffs, K):
            x = [xi - c * ki for xi, ki in zip(x, k)]
    eps = ExponentFunction(d, (Fraction(0),) + tuple(x))
    for lam in units:
        if moment(eps, lam) != p(lam):
            raise AssertionError("epsilon round trip failed")  # exact; cannot happen
    return eps


def koblitz_ogus_trivial(eps: ExponentFunction) -> bool:
    return all(moment(eps, lam) == 0 for lam in unit_group(eps.d))


def gd_prediction(eps: ExponentFunction, lam: int) -> GammaMonomial:
    """``prod_a Gamma(1 - a/d)^{eps(a / lam)}`` as a monomial in Gamma(a/d)."""
    d = eps.d
    inv = inverse_mod(lam, d)
    exps = [Fraction(0)] * (d - 1)
    for a in range(1, d):
        exps[d - a - 1] += eps(rep(a * inv, d))
    return GammaMonomial(d, Fraction(0), tuple(exps))


def monomial_combine(x: GammaMonomial, y: GammaMonomial, k=1) -> GammaMonomial:
    """``x * y^k``."""
    if x.d != y.d:
        raise IncompatibleModuli(f"monomials mod {x.d} and mod {y.d}")
    k = as_fraction(k)
    return GammaMonomial(
        x.d, x.r + k * y.r, tuple(u + k * v for u, v in zip(x.exponents, y.exponents))
    )


def monomial_inverse(x: GammaMonomial) -> GammaMonomial:
    return monomial_combine(GammaMonomial.identity(x.d), x, -1)


@dataclass(frozen=True)
class Reduction:
    reduced: GammaMonomial
    certificate: tuple[dict, ...]


def reduce_monomial(x: GammaMonomial) -> Reduction:
    """Normalize ``x`` modulo algebraic factors.

    Reflection ``Gamma(s) Gamma(1-s) = pi / sin(pi s)`` moves the exponent of
    every ``Gamma(a/d)`` with ``a > d/2`` onto its partner and one unit of
    ``2 pi i`` per matched pair; at ``a = d/2`` the pair is ``Gamma(1/2)^2``.
    The distribution relation ``prod_a Gamma(a/d) ~ (2 pi)^((d-1)/2)`` needs no
    separate step: a constant exponent vector is cleared by reflection alone.
    """
    d = x.d
    e = list(x.exponents)
    r = x.r
    cert: list[dict] = []
    for a in range(1, d // 2 + 1):
        b = d - a
        if a == b:
            c = e[a - 1] / 2
            if c:
                e[a - 1] = Fraction(0)
        else:
            c = e[b - 1]
            if c:
                e[a - 1] -= c
                e[b - 1] = Fraction(0)
        if c:
            r += c
            cert.append({"relation": "reflection", "a": a, "partner": b,
                         "multiplicity": format_fraction(c)})
    return Reduction(GammaMonomial(d, r, tuple(e)), tuple(cert))


def monomial_pi_weight(x: GammaMonomial) -> Fraction | None:
    """The constant ``c`` with ``prod Gamma(a/d)^e(a) ~ (2 pi)^c``, if the
    Koblitz-Ogus moments ``(1/d) sum_a e(a) <u a>`` agree for every unit ``u``;
    None when they do not."""
    d = x.d
    values = {sum((x.e(a) * rep(u * a, d) for a in range(1, d)), Fraction(0)) / d
              for u in unit_group(d)}
    return values.pop() if len(values) == 1 else None


def monomial_is_algebraic(x: GammaMonomial) -> bool:
    """Sufficient test: constant moments ``c`` (Koblitz-Ogus) and ``r + c = 0``.

    Reflection and distribution relations all have constant moments, so the
    test is invariant under :func:`reduce_monomial`. False means "not
    certified", not "transcendental".
    """
    c = monomial_pi_weight(x)
    return c is not None and x.r + c == 0


def monomial_value(x: GammaMonomial, digits: int, *, with_i: bool = False):
    """Numeric value of the monomial.

    By default ``(2 pi)^r`` replaces ``(2 pi i)^r``: the two differ by a root
    of unity, and the real normalization keeps downstream PSLQ on reals.
    """
    import mpmath

    from .numerics.gamma import gamma_hp

    with mpmath.workdps(digits + 10):
        base = 2 * mpmath.pi * (mpmath.mpc(0, 1) if with_i else 1)
        value = mpmath.power(base, mpmath.mpf(x.r.numerator) / x.r.denominator) if x.r else mpmath.mpf(1)
        for a, ex in enumerate(x.exponents, 1):
            if ex:
                g = gamma_hp(mpmath.mpf(a) / x.d, digits + 5)
                value *= mpmath.power(g, mpmath.mpf(ex.numerator) / ex.denominator)
        return +value


def hodge_function_from_pairs(d: int, half: Iterable[tuple[int, int]], weight: int) -> HodgeFunction:
    """Build p from values on one representative of each pair {lam, -lam}."""
    vals = {}
    for lam, v in half:
        vals[lam % d] = v
        vals[(-lam) % d] = weight - v
    return HodgeFunction(d, vals, weight)
