from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gamma_periods.errors import InvalidModulus, ShapeError
from gamma_periods.exact import (
    ResidueClass,
    as_fraction,
    format_fraction,
    inverse_mod,
    kronecker_symbol,
    mat_vec,
    rep,
    solve_rational_linear,
    unit_group,
)


@pytest.mark.parametrize("x, d, expected", [(7, 5, 2), (0, 5, 0), (-1, 4, 3), (10**40 + 3, 10, 3)])
def test_rep_examples(x, d, expected):
    assert rep(x, d) == expected


@pytest.mark.parametrize("d", [1, 0, -3])
def test_rep_rejects_small_modulus(d):
    with pytest.raises(InvalidModulus):
        rep(1, d)


@pytest.mark.parametrize("d, units", [(4, [1, 3]), (5, [1, 2, 3, 4]), (12, [1, 5, 7, 11]), (2, [1])])
def test_unit_group_examples(d, units):
    assert unit_group(d) == units


@given(st.integers(), st.integers(min_value=2, max_value=10**6))
def test_rep_periodic_and_in_range(x, d):
    assert rep(x + d, d) == rep(x, d)
    assert 0 <= rep(x, d) < d


@given(st.integers(min_value=2, max_value=500), st.integers())
def test_inverse_mod(d, x):
    if gcd(x, d) == 1:
        assert rep(x * inverse_mod(x, d), d) == 1 % d


def test_residue_class_arithmetic():
    a = ResidueClass(7, 3)
    assert (a * a.inverse()).value == 1
    assert (a + ResidueClass(7, 5)).value == 1
    assert (-a).value == 4


def test_fraction_io():
    assert as_fraction("-3/6") == Fraction(-1, 2)
    assert as_fraction(4) == Fraction(4)
    assert format_fraction(Fraction(-1, 2)) == "-1/2"
    assert as_fraction(format_fraction(Fraction(22, 7))) == Fraction(22, 7)


def test_solve_unique():
    sol = solve_rational_linear([[1]], [2])
    assert sol.solution == (2,) and sol.kernel == ()


def test_solve_kernel():
    sol = solve_rational_linear([[1, 1]], [0])
    assert sol.solution == (0, 0)
    assert len(sol.kernel) == 1
    k = sol.kernel[0]
    assert k[0] == -k[1] != 0


def test_solve_inconsistent_has_certificate():
    A, b = [[1], [2]], [1, 3]
    sol = solve_rational_linear(A, b)
    assert not sol.consistent
    y = sol.certificate
    assert all(sum(y[i] * A[i][j] for i in range(2)) == 0 for j in range(1))
    assert sum(yi * bi for yi, bi in zip(y, b)) != 0


def test_shape_errors():
    with pytest.raises(ShapeError):
        solve_rational_linear([[1, 2], [3]], [1, 2])
    with pytest.raises(ShapeError):
        solve_rational_linear([[1, 2]], [1, 2])


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(st.integers(1, 5).flatmap(
    lambda cols: st.tuples(
        st.lists(st.lists(fractions, min_size=cols, max_size=cols), min_size=1, max_size=5),
        st.lists(fractions, min_size=cols, max_size=cols),
    )))
def test_solutions_and_kernels_are_exact(data):
    A, x0 = data
    b = mat_vec(A, x0)  # consistent by construction
    sol = solve_rational_linear(A, b)
    assert sol.consistent
    assert mat_vec(A, sol.solution) == b
    for v in sol.kernel:
        assert all(c == 0 for c in mat_vec(A, v))
        assert any(v)


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=1, max_size=5),
       st.lists(fractions, min_size=5, max_size=5))
def test_certificates_are_valid(A, bfull):
    b = bfull[: len(A)]
    sol = solve_rational_linear(A, b)
    if sol.consistent:
        assert mat_vec(A, sol.solution) == tuple(b)
    else:
        y = sol.certificate
        assert all(sum(y[i] * A[i][j] for i in range(len(A))) == 0 for j in range(3))
        assert sum(yi * bi for yi, bi in zip(y, b)) != 0


def test_kernel_is_deterministic():
    A = [[1, 2, 3], [2, 4, 6]]
    assert solve_rational_linear(A, [0, 0]) == solve_rational_linear(A, [0, 0])


@pytest.mark.parametrize("D, n, expected", [(-4, 3, -1), (-3, 2, -1), (-4, 1, 1), (-23, 1, 1),
                                            (-4, 5, 1), (-3, 7, 1), (-4, 2, 0), (-3, 3, 0)])
def test_kronecker_examples(D, n, expected):
    assert kronecker_symbol(D, n) == expected


@given(st.sampled_from([-3, -4, -7, -8, -15, -20, -23, -24]),
       st.integers(1, 400), st.integers(1, 400))
def test_kronecker_multiplicative(D, m, n):
    assert kronecker_symbol(D, m * n) == kronecker_symbol(D, m) * kronecker_symbol(D, n)


@pytest.mark.parametrize("D", [-3, -4, -7, -23])
def test_kronecker_matches_euler_criterion_at_odd_primes(D):
    for p in [5, 11, 13, 17, 19, 29, 31]:
        if D % p:
            assert kronecker_symbol(D, p) == (1 if pow(D % p, (p - 1) // 2, p) == 1 else -1)
