import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import D2_FOUR, D2_TWO, D5_THREE, FERMAT
from gamma_periods.cover import (
    INFINITY,
    BranchData,
    betti_numbers,
    eigen_data,
    hodge_numbers,
    hrr_check,
    parse_branch,
    prim_check,
    random_branch_data,
    serre_duality_check,
    theorem_b_exponents,
    theorem_b_monomial,
    unit_period_exponent,
    validate,
)
from gamma_periods.errors import ConfigError, InvalidDivisor, InvalidInput, InvalidUnit, NoLineBundle
from gamma_periods.exact import unit_group
from gamma_periods.monomials import gd_prediction, monomial_combine, monomial_is_algebraic

F = Fraction


# -- parsing and validation

def test_parse_branch_round_trip():
    b = parse_branch("d = 3; points = 0, 1/2, oo; mults = 1, 1, 1")
    assert b.points == (F(0), F(1, 2), INFINITY)
    assert parse_branch(b.to_text()) == b
    assert BranchData.from_json(json.loads(json.dumps(b.to_json()))) == b


@pytest.mark.parametrize("text, col", [("d=3; points=0,1; bogus=1", 18), ("d=3; 12", 6)])
def test_parse_branch_reports_column(text, col):
    with pytest.raises(ConfigError) as info:
        parse_branch(text)
    assert info.value.column == col


def test_parse_branch_missing_field():
    with pytest.raises(ConfigError):
        parse_branch("d=3; points=0,1")


@pytest.mark.parametrize("points, mults", [((0, 0, 1), (1, 1, 1)), ((0, 1), (1, 0)), ((0,), (1, 2))])
def test_invalid_divisors(points, mults):
    with pytest.raises(InvalidDivisor):
        BranchData(3, points, mults)


def test_modulus_checked():
    with pytest.raises(InvalidInput):
        BranchData(1, (0,), (1,))


@pytest.mark.parametrize("text, degree, ldeg, genus", [
    (FERMAT, 3, 1, 1),
    (D2_TWO, 2, 1, 0),
    (D2_FOUR, 4, 2, 1),
    (D5_THREE, 5, 1, 2),
])
def test_validate_examples(text, degree, ldeg, genus):
    s = validate(parse_branch(text))
    assert (s.degree, s.line_bundle_degree, s.genus, s.connected) == (degree, ldeg, genus, True)


def test_validate_no_line_bundle():
    with pytest.raises(NoLineBundle):
        validate(parse_branch("d=2; points=0; mults=1"))


def test_disconnected_cover_reported():
    s = validate(BranchData(4, (0, 1), (2, 2)))
    assert not s.connected and s.components == 2 and s.genus is None


# -- eigensheaves and Hodge numbers

def test_eigen_data_fermat():
    b = parse_branch(FERMAT)
    e1 = eigen_data(b, 1)
    assert (e1.sheaf_degree, e1.support, e1.residues) == (1, (0, 1, 2), (F(1, 3),) * 3)
    e2 = eigen_data(b, 2)
    assert (e2.sheaf_degree, e2.residues) == (2, (F(2, 3),) * 3)
    e0 = eigen_data(b, 0)
    assert (e0.sheaf_degree, e0.support) == (0, ())


def test_hodge_numbers_fermat():
    b = parse_branch(FERMAT)
    assert hodge_numbers(b, 1) == {(1, 0): 1, (0, 1): 0, (0, 0): 0, (1, 1): 0}
    h2 = hodge_numbers(b, 2)
    assert h2[(0, 1)] == 1 and h2[(1, 0)] == 0


def test_trivial_eigenspace_is_projective_line():
    # the lambda = 0 row reproduces H^*(P^1): h00 = h11 = 1
    for text in (FERMAT, D2_FOUR, D5_THREE):
        assert hodge_numbers(parse_branch(text), 0) == {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1}


@pytest.mark.parametrize("text, gamma", [
    (FERMAT, (-2, 1, -2)),
    (D2_TWO, (-2, 0)),
])
def test_theorem_b_exponents_examples(text, gamma):
    assert theorem_b_exponents(parse_branch(text)).values == tuple(F(g) for g in gamma)


@pytest.mark.parametrize("text, lam, value", [(FERMAT, 1, 1), (FERMAT, 2, 2), (D2_TWO, 1, 1)])
def test_hrr_examples(text, lam, value):
    chk = hrr_check(parse_branch(text), lam)
    assert chk.equal and chk.lhs == value


@pytest.mark.parametrize("text, lam", [(FERMAT, 1), (D2_TWO, 1), ("d=4; points=0,1,inf; mults=1,1,2", 1)])
def test_serre_examples(text, lam):
    assert serre_duality_check(parse_branch(text), lam)


def test_non_unit_rejected():
    with pytest.raises(InvalidUnit):
        hrr_check(BranchData(4, (0, 1, INFINITY), (1, 1, 2)), 2)


@pytest.mark.parametrize("m, exponent", [(0, 1), (1, 0), (3, -2), (4, -3), (8, -7)])
def test_unit_period_exponent(m, exponent):
    assert unit_period_exponent(m) == exponent


def test_unit_period_exponent_invalid():
    with pytest.raises(InvalidInput):
        unit_period_exponent(-1)


def test_theorem_b_monomial_examples():
    b = parse_branch(FERMAT)
    x1 = theorem_b_monomial(b, 1)
    assert (x1.r, x1.e(1), x1.e(2)) == (-2, 0, 3)
    x2 = theorem_b_monomial(b, 2)
    assert (x2.r, x2.e(1), x2.e(2)) == (-2, 3, 0)
    x = theorem_b_monomial(parse_branch(D2_TWO), 1)
    assert (x.r, x.e(1)) == (-1, 2)
    assert monomial_is_algebraic(x)


# -- randomized invariants

branch_seeds = st.integers(0, 2**32 - 1)


@given(branch_seeds)
def test_hrr_and_moment_identities_random(seed):
    b = random_branch_data(random.Random(seed))
    for lam in unit_group(b.d):
        assert hrr_check(b, lam).equal
        assert prim_check(b, lam).equal


@given(branch_seeds)
def test_serre_duality_random(seed):
    b = random_branch_data(random.Random(seed))
    assert all(serre_duality_check(b, lam) for lam in unit_group(b.d))


@given(branch_seeds)
def test_hurwitz_cross_check(seed):
    b = random_branch_data(random.Random(seed))
    s = validate(b)
    b0, b1, b2 = betti_numbers(b)
    if s.connected:
        assert (b0, b1, b2) == (1, 2 * s.genus, 1)


@given(branch_seeds)
def test_support_constant_over_units(seed):
    b = random_branch_data(random.Random(seed))
    supports = {eigen_data(b, lam).support for lam in unit_group(b.d)}
    assert len(supports) == 1


@given(branch_seeds)
def test_exponent_rewrite_consistency(seed):
    b = random_branch_data(random.Random(seed))
    gamma = theorem_b_exponents(b)
    for lam in unit_group(b.d):
        diff = monomial_combine(theorem_b_monomial(b, lam), gd_prediction(gamma, lam), -1)
        assert monomial_is_algebraic(diff)


@given(branch_seeds)
def test_residue_sum_is_sheaf_degree(seed):
    b = random_branch_data(random.Random(seed))
    for lam in range(b.d):
        ed = eigen_data(b, lam)
        assert sum(ed.residues, F(0)) == ed.sheaf_degree
        assert all(0 < r < 1 for r in ed.residues)


def test_random_branch_data_is_valid():
    rng = random.Random(3)
    for _ in range(200):
        b = random_branch_data(rng)
        assert b.d <= 30 and len(b.points) <= 8
        validate(b)
