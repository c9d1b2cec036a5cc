"""Period matrices of rank-one local systems on the punctured line.

Twisted periods integrate ``T(t) * omega_j`` over the bounded intervals
between consecutive finite singular points, with
``T(t) = prod_i |t - x_i|^{res_i}`` taken real-positive on every interval and
``omega_j = (x_b - x_a) dt / ((t - x_a)(t - x_b))`` a logarithmic form with
poles at one pair of points. Analytic continuation from one interval to the
next multiplies by a root of unity; those phases are recorded per row but the
returned determinant uses the real branches, which agree with the continued
ones up to an algebraic factor.

When infinity is not singular the flat section has an apparent (integer)
residue there and the logarithmic pair forms stop being a basis. The rational
chart ``t -> 1/(t - x_last)`` sends the last point to infinity; it is defined
over Q, so the determinant only changes by an algebraic factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from ..errors import DegenerateBasis, InvalidInput, UnsupportedResidue
from ..exact import as_fraction, format_fraction
from .quadrature import integrate_singular

_GUARD = 10


@dataclass
class PeriodMatrix:
    entries: mpmath.matrix
    cycle_labels: list[tuple[str, str]]
    form_labels: list[str]
    digits: int
    row_phase_exponents: list[Fraction] = field(default_factory=list)
    chart: str = "t"
    points: list[Fraction] = field(default_factory=list)
    residues: list[Fraction] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.entries.rows

    def det(self, *, with_phases: bool = False):
        with mpmath.workdps(self.digits + _GUARD):
            value = mpmath.det(self.entries) if self.size else mpmath.mpf(1)
            if with_phases:
                for ph in self.row_phase_exponents:
                    value *= mpmath.expjpi(mpmath.mpf(ph.numerator) / ph.denominator)
            return +value

    def discriminant_factor(self) -> list[tuple[Fraction, Fraction]]:
        """Pairs ``(|x_j - x_i|, res_i + res_j)`` over the chart points.

        Their product is algebraic and carries the dependence of the
        determinant on the point positions, so dividing it out leaves a
        number of small height.
        """
        pts, res = self.points, self.residues
        return [(abs(pts[j] - pts[i]), res[i] + res[j])
                for i in range(len(pts)) for j in range(i + 1, len(pts))]

    def discriminant_value(self):
        with mpmath.workdps(self.digits + _GUARD):
            value = mpmath.mpf(1)
            for base, ex in self.discriminant_factor():
                if base != 1:
                    value *= mpmath.power(mpmath.mpf(base.numerator) / base.denominator,
                                          mpmath.mpf(ex.numerator) / ex.denominator)
            return +value

    def hadamard_bound(self):
        with mpmath.workdps(self.digits + _GUARD):
            bound = mpmath.mpf(1)
            for i in range(self.size):
                bound *= mpmath.sqrt(mpmath.fsum(abs(self.entries[i, j]) ** 2 for j in range(self.size)))
            return bound

    def to_json(self) -> dict:
        from . import to_decimal

        return {
            "size": self.size,
            "cycles": [list(c) for c in self.cycle_labels],
            "forms": list(self.form_labels),
            "row_phase_exponents": [format_fraction(p) for p in self.row_phase_exponents],
            "chart": self.chart,
            "points": [format_fraction(p) for p in self.points],
            "residues": [format_fraction(r) for r in self.residues],
            "entries": [[to_decimal(self.entries[i, j], self.digits) for j in range(self.size)]
                        for i in range(self.size)],
        }


def _label(x: Fraction) -> str:
    return str(x)


def _entry(xs, res, k, pair, digits):
    """Integral over [x_k, x_{k+1}] of T(t) * omega_pair."""
    a, b = pair
    lo_i, hi_i = k, k + 1
    lo, hi = xs[lo_i], xs[hi_i]
    mu_lo = res[lo_i] - (1 if lo_i in pair else 0)
    mu_hi = res[hi_i] - (1 if hi_i in pair else 0)
    sign = -1 if hi_i in pair else 1
    others = [i for i in range(len(xs)) if i not in (lo_i, hi_i)]
    poles = [i for i in pair if i not in (lo_i, hi_i)]
    coeff = sign * (xs[b] - xs[a])

    def g(t):
        val = mpmath.mpf(coeff)
        for i in others:
            val *= mpmath.power(abs(t - xs[i]), res[i])
        for i in poles:
            val /= t - xs[i]
        return val

    return integrate_singular(g, (lo, hi), (mu_lo, mu_hi), digits)


def twisted_period_matrix(
    points: Sequence,
    residues: Sequence,
    include_infinity: bool,
    digits: int,
    *,
    shift: int = 0,
    check_degenerate: bool = True,
) -> PeriodMatrix:
    """Period matrix of the rank-one system with the given finite residues.

    ``include_infinity`` says whether infinity is also a singular point; the
    rank is ``m - 2`` with ``m`` the total number of singular points. Forms
    pair consecutive points ``(x_{j+shift}, x_{j+shift+1})`` with indices
    taken cyclically, so ``shift=1`` gives the alternate basis.
    """
    pts = [as_fraction(p) for p in points]
    res = [as_fraction(r) for r in residues]
    if len(pts) != len(res):
        raise InvalidInput("one residue per finite point is required")
    if any(not (0 < r < 1) for r in res):
        raise UnsupportedResidue("residues must lie strictly between 0 and 1")
    if sorted(pts) != pts or len(set(pts)) != len(pts):
        raise InvalidInput("finite points must be distinct and sorted")
    m = len(pts) + (1 if include_infinity else 0)
    if m < 3:
        raise InvalidInput(f"need at least 3 singular points, got {m}")
    if not include_infinity and sum(res).denominator != 1:
        raise UnsupportedResidue("finite residues must sum to an integer when infinity is regular")
    size = m - 2
    chart = "t"
    if not include_infinity:
        last = pts[-1]
        moved = sorted((1 / (p - last), r) for p, r in zip(pts[:-1], res[:-1]))
        pts, res = [p for p, _ in moved], [r for _, r in moved]
        include_infinity = True
        chart = f"1/(t - {last})"
    nfin = len(pts)
    with mpmath.workdps(digits + _GUARD):
        xs = [mpmath.mpf(p.numerator) / p.denominator for p in pts]
        rs = [mpmath.mpf(r.numerator) / r.denominator for r in res]
        pairs = [((j + shift) % nfin, (j + shift + 1) % nfin) for j in range(size)]
        M = mpmath.matrix(size, size)
        for k in range(size):
            for j, pair in enumerate(pairs):
                M[k, j] = _entry(xs, rs, k, pair, digits + 5)
    phases = []
    acc = Fraction(0)
    for k in range(size):
        phases.append(acc)
        acc -= res[k + 1]
    pm = PeriodMatrix(
        M,
        [(_label(pts[k]), _label(pts[k + 1])) for k in range(size)],
        [f"dlog((t-{pts[b]})/(t-{pts[a]}))" for a, b in pairs],
        digits,
        phases,
        chart,
        list(pts),
        list(res),
    )
    if check_degenerate:
        with mpmath.workdps(digits + _GUARD):
            if abs(pm.det()) < mpmath.mpf(10) ** (-(digits // 2)) * pm.hadamard_bound():
                raise DegenerateBasis(f"period determinant vanishes numerically (shift={shift})")
    return pm


def loop_period_matrix(points: Sequence, digits: int) -> PeriodMatrix:
    """Periods of ``dt/(t-x_i) - dt/(t-x_m)`` over small loops around ``x_i``.

    Uses the trapezoidal rule on circles of radius half the minimal gap,
    whose error decays like ``2**-N`` for this integrand.
    """
    pts = [as_fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise InvalidInput("puncture points must be distinct")
    size = len(pts) - 1
    with mpmath.workdps(digits + _GUARD):
        xs = [mpmath.mpf(p.numerator) / p.denominator for p in pts]
        M = mpmath.matrix(max(size, 0), max(size, 0))
        if size <= 0:
            return PeriodMatrix(M, [], [], digits, [])
        gap = min(abs(a - b) for i, a in enumerate(xs) for b in xs[i + 1:])
        rho = gap / 2
        nodes = int((digits + _GUARD) * 3.33) + 16
        for i in range(size):
            for j in range(size):
                total = mpmath.mpc(0)
                for n in range(nodes):
                    e = mpmath.expjpi(mpmath.mpf(2 * n) / nodes)
                    z = xs[i] + rho * e
                    total += (1 / (z - xs[j]) - 1 / (z - xs[-1])) * rho * e
                M[i, j] = total * 2 * mpmath.pi * mpmath.mpc(0, 1) / nodes
    return PeriodMatrix(
        M,
        [(f"loop({p})", f"loop({p})") for p in pts[:-1]],
        [f"dt/(t-{p}) - dt/(t-{pts[-1]})" for p in pts[:-1]],
        digits,
        [Fraction(0)] * size,
    )
