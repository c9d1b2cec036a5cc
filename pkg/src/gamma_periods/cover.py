"""Cyclic covers of the projective line.

A cover is given by ``d`` and an effective divisor ``D = sum a_i x_i`` on P^1
with ``d | deg D``. All sheaf cohomology reduces to line bundles on P^1, where
``h^0(O(e)) = max(e + 1, 0)`` and ``h^1(O(e)) = max(-e - 1, 0)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence, Union

from .errors import ConfigError, InvalidDivisor, InvalidInput, InvalidUnit, NoLineBundle
from .exact import as_fraction, format_fraction, rep
from .monomials import ExponentFunction, GammaMonomial, moment

INFINITY = "infinity"
Point = Union[Fraction, str]


def h0(e: int) -> int:
    return max(e + 1, 0)


def h1(e: int) -> int:
    return max(-e - 1, 0)


def _point(p) -> Point:
    if isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INFINITY
    return as_fraction(p)


@dataclass(frozen=True)
class BranchData:
    d: int
    points: tuple[Point, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(_point(p) for p in self.points)
        mults = tuple(int(a) for a in self.mults)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "mults", mults)
        if not isinstance(self.d, int) or self.d < 2:
            raise InvalidInput(f"d must be an integer >= 2, got {self.d!r}")
        if len(pts) != len(mults):
            raise InvalidDivisor("one multiplicity per branch point is required")
        if len(set(pts)) != len(pts):
            raise InvalidDivisor("branch points must be pairwise distinct")
        if any(a <= 0 for a in mults):
            raise InvalidDivisor("multiplicities must be positive")

    @property
    def degree(self) -> int:
        return sum(self.mults)

    def to_text(self) -> str:
        pts = ", ".join("inf" if p == INFINITY else str(p) for p in self.points)
        return f"d = {self.d}; points = {pts}; mults = {', '.join(map(str, self.mults))}"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "points": ["inf" if p == INFINITY else format_fraction(p) for p in self.points],
            "mults": list(self.mults),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "BranchData":
        return cls(int(obj["d"]), tuple(obj["points"]), tuple(int(a) for a in obj["mults"]))


_FIELD = re.compile(r"\s*(\w+)\s*=\s*(.*?)\s*$", re.S)


def parse_branch(text: str) -> BranchData:
    """Parse ``d = 3; points = 0, 1, inf; mults = 1, 1, 1``."""
    fields: dict[str, str] = {}
    col = 1
    for chunk in text.split(";"):
        if chunk.strip():
            at = col + len(chunk) - len(chunk.lstrip())
            m = _FIELD.match(chunk)
            if not m:
                raise ConfigError(f"cannot parse branch field {chunk.strip()!r}", column=at)
            key = m.group(1).lower()
            if key not in ("d", "points", "mults"):
                raise ConfigError(f"unknown branch field {key!r}", column=at)
            fields[key] = m.group(2)
        col += len(chunk) + 1
    missing = {"d", "points", "mults"} - fields.keys()
    if missing:
        raise ConfigError(f"branch data missing {', '.join(sorted(missing))}")
    try:
        d = int(fields["d"])
        points = tuple(p.strip() for p in fields["points"].split(",") if p.strip())
        mults = tuple(int(a) for a in fields["mults"].split(",") if a.strip())
        return BranchData(d, points, mults)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidInput | InvalidDivisor):
            raise
        raise ConfigError(f"bad branch data: {exc}") from exc


@dataclass(frozen=True)
class CoverSummary:
    degree: int
    line_bundle_degree: int
    connected: bool
    components: int
    genus: int | None

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "line_bundle_degree": self.line_bundle_degree,
            "connected": self.connected,
            "components": self.components,
            "genus": self.genus,
        }


def validate(b: BranchData) -> CoverSummary:
    """Check ``d | deg D`` and compute the genus of the cover by Riemann-Hurwitz.

    The genus is only reported for connected covers (``gcd(d, a_i...) = 1``).
    """
    N = b.degree
    if N % b.d:
        raise NoLineBundle(f"d = {b.d} does not divide deg D = {N}")
    comps = gcd(b.d, *b.mults)
    if comps != 1:
        return CoverSummary(N, N // b.d, False, comps, None)
    # 2g - 2 = d (2*0 - 2) + sum (d - #preimages)
    chi2 = -2 * b.d + sum(b.d - gcd(a, b.d) for a in b.mults)
    return CoverSummary(N, N // b.d, True, 1, chi2 // 2 + 1)


@dataclass(frozen=True)
class EigenData:
    lam: int
    sheaf_degree: int
    support: tuple[int, ...]
    residues: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.support)


def eigen_data(b: BranchData, lam: int) -> EigenData:
    """Degree, support and residues of the eigensheaf for the character ``lam``."""
    d = b.d
    lam = rep(lam, d)
    deg_num = lam * b.degree
    if deg_num % d:
        raise NoLineBundle(f"d = {d} does not divide deg D = {b.degree}")
    degree = deg_num // d - sum((a * lam) // d for a in b.mults)
    support = tuple(i for i, a in enumerate(b.mults) if (a * lam) % d)
    residues = tuple(Fraction(rep(b.mults[i] * lam, d), d) for i in support)
    if sum(residues) != degree:
        raise AssertionError("eigensheaf degree must equal the sum of residues")
    return EigenData(lam, degree, support, residues)


def hodge_numbers(b: BranchData, lam: int) -> dict[tuple[int, int], int]:
    """``h^{p,q}`` of the ``lam`` eigenspace: cohomology of
    ``L^(lam)^-1 (x) Omega^p(log D^(lam))`` on P^1."""
    ed = eigen_data(b, lam)
    e0 = -ed.sheaf_degree
    e1 = e0 - 2 + ed.m
    return {(0, 0): h0(e0), (0, 1): h1(e0), (1, 0): h0(e1), (1, 1): h1(e1)}


def hodge_table(b: BranchData) -> dict[int, dict[tuple[int, int], int]]:
    return {lam: hodge_numbers(b, lam) for lam in range(b.d)}


def betti_numbers(b: BranchData) -> tuple[int, int, int]:
    """Betti numbers of the cover obtained by summing the Hodge table."""
    table = hodge_table(b)
    b0 = sum(row[(0, 0)] for row in table.values())
    b1 = sum(row[(1, 0)] + row[(0, 1)] for row in table.values())
    b2 = sum(row[(1, 1)] for row in table.values())
    return b0, b1, b2


def _hodge_weighted_sum(h: Mapping[tuple[int, int], int]) -> int:
    # sum_j (-1)^j sum_{p+q=j} p h^{p,q}; only p = 1 contributes on a curve
    return sum((-1) ** (p + q) * p * v for (p, q), v in h.items())


def log_forms_weighted_sum(m: int) -> int:
    """``sum_j (-1)^j sum_{p+q=j} p h^q(P^1, Omega^p(log D))`` for ``|D| = m``."""
    deg = m - 2
    return -h0(deg) + h1(deg)


def curve_point_euler_characteristic() -> int:
    # chi of a branch point minus the other components: a single point on a curve
    return 1


def theorem_b_exponents(b: BranchData) -> ExponentFunction:
    """Exponent function gamma on Z/d attached to the cover.

    ``gamma(a) = 2/(d-1) * S + #{i : <a_i> = a}`` where ``S`` is the weighted
    Hodge sum of the logarithmic forms along the unit-support divisor.
    """
    d = b.d
    m1 = eigen_data(b, 1).m
    base = Fraction(2, d - 1) * log_forms_weighted_sum(m1)
    vals = [base] * d
    for a in b.mults:
        vals[rep(a, d)] += curve_point_euler_characteristic()
    return ExponentFunction(d, tuple(vals))


def _require_unit(lam: int, d: int) -> int:
    if gcd(lam, d) != 1:
        raise InvalidUnit(f"{lam} is not a unit modulo {d}")
    return rep(lam, d)


@dataclass(frozen=True)
class HRRCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": format_fraction(self.lhs), "rhs": format_fraction(self.rhs), "equal": self.equal}


def hrr_check(b: BranchData, lam: int) -> HRRCheck:
    """Both sides of the multiplicativity identity for one unit ``lam``."""
    lam = _require_unit(lam, b.d)
    ed = eigen_data(b, lam)
    lhs = Fraction(_hodge_weighted_sum(hodge_numbers(b, lam)) - log_forms_weighted_sum(ed.m))
    rhs = sum(ed.residues, Fraction(0)) * curve_point_euler_characteristic()
    return HRRCheck(lhs, rhs)


def prim_check(b: BranchData, lam: int) -> HRRCheck:
    """Moment of the cover's exponent function against the eigenspace Hodge sum."""
    lam = _require_unit(lam, b.d)
    lhs = moment(theorem_b_exponents(b), lam)
    rhs = Fraction(_hodge_weighted_sum(hodge_numbers(b, lam)))
    return HRRCheck(lhs, rhs)


def serre_duality_check(b: BranchData, lam: int) -> bool:
    """``h^q(L^(-lam)^-1 (x) Omega^p(log D)) = h^{1-q}(L^(lam)^-1 (x) Omega^{1-p}(log D)(-H))``
    for all p, q, where ``H = D_red - D^(lam)``."""
    lam = _require_unit(lam, b.d)
    M = len(b.points)
    ed_plus = eigen_data(b, lam)
    ed_minus = eigen_data(b, -lam)
    H = M - ed_plus.m
    hs = (h0, h1)
    for p in (0, 1):
        left = -ed_minus.sheaf_degree + p * (M - 2)
        right = -ed_plus.sheaf_degree + (1 - p) * (M - 2) - H
        for q in (0, 1):
            if hs[q](left) != hs[1 - q](right):
                return False
    return True


def unit_period_exponent(m: int) -> Fraction:
    """Exponent E with ``per(1_U) ~ (2 pi i)^E`` for ``U = P^1`` minus ``m`` points.

    Evaluates ``1/2 sum_k (-1)^k (n + k) chi(D(k))`` over the strata
    ``D(0) = P^1`` and ``D(1) = m`` points, with ``n = 1``.
    """
    if not isinstance(m, int) or m < 0:
        raise InvalidInput(f"number of punctures must be a non-negative integer, got {m!r}")
    n = 1
    strata_chi = [2, m]
    total = sum((-1) ** k * (n + k) * chi for k, chi in enumerate(strata_chi))
    return Fraction(total, 2)


def theorem_b_monomial(b: BranchData, lam: int) -> GammaMonomial:
    """Predicted class of the eigen-period: the unit-object power of ``2 pi i``
    times ``prod_i Gamma(1 - <a_i lam>/d)`` over the supported points."""
    lam = _require_unit(lam, b.d)
    d = b.d
    ed = eigen_data(b, lam)
    exps = [Fraction(0)] * (d - 1)
    for res in ed.residues:
        k = d - int(res * d)
        exps[k - 1] += curve_point_euler_characteristic()
    return GammaMonomial(d, unit_period_exponent(ed.m), tuple(exps))


def period_configuration(b: BranchData, lam: int):
    """Sorted finite singular points, their residues, and whether infinity is singular."""
    ed = eigen_data(b, lam)
    finite = []
    include_inf = False
    inf_res = None
    for i, res in zip(ed.support, ed.residues):
        p = b.points[i]
        if p == INFINITY:
            include_inf = True
            inf_res = res
        else:
            finite.append((p, res))
    finite.sort()
    return [p for p, _ in finite], [r for _, r in finite], include_inf, inf_res


def random_branch_data(rng, max_d: int = 30, max_points: int = 8) -> BranchData:
    """Random valid branch data; the last multiplicity is adjusted so ``d | deg D``."""
    while True:
        d = rng.randint(2, max_d)
        k = rng.randint(1, max_points)
        mults = [rng.randint(1, d) for _ in range(k)]
        fix = (-sum(mults[:-1])) % d or d
        mults[-1] = fix
        coords = rng.sample(range(-50, 51), k)
        points: list = [Fraction(c, rng.randint(1, 4)) for c in coords]
        if len(set(points)) != k:
            continue
        if rng.random() < 0.5:
            points[rng.randrange(k)] = INFINITY
        return BranchData(d, tuple(points), tuple(mults))
