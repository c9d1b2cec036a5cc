"""Exact arithmetic substrate.

Residue representatives, unit groups, a fraction-free linear solver over Q
and the Kronecker symbol. Rationals are :class:`fractions.Fraction`, which
already keeps lowest terms with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InvalidModulus, InvalidUnit, ShapeError

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def _check_modulus(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {d!r}")


def rep(x: int, d: int) -> int:
    """Representative of ``x`` modulo ``d`` in ``[0, d-1]``."""
    _check_modulus(d)
    return x % d


def unit_group(d: int) -> list[int]:
    _check_modulus(d)
    return [a for a in range(1, d) if gcd(a, d) == 1]


def inverse_mod(x: int, d: int) -> int:
    _check_modulus(d)
    if gcd(x, d) != 1:
        raise InvalidUnit(f"{x} is not a unit modulo {d}")
    return pow(x, -1, d)


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    value: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, ResidueClass):
            if other.modulus != self.modulus:
                raise InvalidModulus("residue classes with different moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return ResidueClass(self.modulus, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueClass(self.modulus, self.value - self._other(other))

    def __mul__(self, other):
        return ResidueClass(self.modulus, self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueClass(self.modulus, -self.value)

    def inverse(self) -> "ResidueClass":
        return ResidueClass(self.modulus, inverse_mod(self.value, self.modulus))

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def __int__(self):
        return self.value


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def as_matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    m = tuple(tuple(as_fraction(v) for v in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ShapeError("matrix rows have different lengths")
    return m


@dataclass(frozen=True)
class LinearSolution:
    """Result of :func:`solve_rational_linear`.

    When the system is inconsistent ``solution`` is None and ``certificate``
    is a row vector ``y`` with ``y A = 0`` and ``y b != 0``.
    """

    solution: tuple[Fraction, ...] | None
    kernel: tuple[tuple[Fraction, ...], ...]
    certificate: tuple[Fraction, ...] | None = None

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def _integer_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = lcm(*(v.denominator for v in row)) if row else 1
    return [int(v * scale) for v in row], scale


def solve_rational_linear(A: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """Solve ``A x = b`` exactly by fraction-free (Bareiss) elimination.

    Pivots are the first nonzero entry in each column, so the returned
    particular solution (free variables set to 0) and kernel basis (one
    vector per free column) are reproducible.
    """
    A = as_matrix(A)
    b = tuple(as_fraction(v) for v in b)
    n = len(A)
    if len(b) != n:
        raise ShapeError(f"right-hand side has length {len(b)}, expected {n}")
    m = len(A[0]) if n else 0

    # augmented integer rows [A | b | I], the identity part tracks row operations
    work: list[list[int]] = []
    for i in range(n):
        ints, scale = _integer_row(A[i] + (b[i],))
        ident = [0] * n
        ident[i] = scale
        work.append(ints + ident)

    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(m):
        if r >= n:
            break
        p = next((i for i in range(r, n) if work[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            work[r], work[p] = work[p], work[r]
        piv_row = work[r]
        pv = piv_row[c]
        for i in range(r + 1, n):
            row = work[i]
            f = row[c]
            new = []
            for k in range(len(row)):
                num = pv * row[k] - f * piv_row[k]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                new.append(q)
            work[i] = new
        prev = pv
        pivots.append(c)
        r += 1

    rank = len(pivots)
    for i in range(rank, n):
        if work[i][m] != 0:
            cert = tuple(Fraction(v) for v in work[i][m + 1:])
            g = 0
            for v in cert:
                g = gcd(g, v.numerator)
            if g > 1:
                cert = tuple(v / g for v in cert)
            return LinearSolution(None, (), cert)

    # reduced echelon form over Q on the pivot rows
    rref = [[Fraction(v) for v in work[i][: m + 1]] for i in range(rank)]
    for i in reversed(range(rank)):
        c = pivots[i]
        pv = rref[i][c]
        rref[i] = [v / pv for v in rref[i]]
        for j in range(i):
            f = rref[j][c]
            if f:
                rref[j] = [x - f * y for x, y in zip(rref[j], rref[i])]

    solution = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        solution[c] = rref[i][m]

    free = [c for c in range(m) if c not in set(pivots)]
    kernel = []
    for f in free:
        v = [Fraction(0)] * m
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rref[i][f]
        kernel.append(tuple(v))
    return LinearSolution(tuple(solution), tuple(kernel))


def mat_vec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((a * v for a, v in zip(row, x)), Fraction(0)) for row in A)


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n), extended to all integers ``n``."""
    if n == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 == 1 and D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D/n) for odd n > 0
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
