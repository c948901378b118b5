import random

import pytest
from hypothesis import given, settings, strategies as st

from apolar.exactcore import GF, QQ
from apolar.polyring import (
    DUAL, PRIMAL, LinearParam, MPoly, ParseError, contract_apply, diff_apply, format_poly,
    monomial_basis, parse_poly, poly_eval, power_of_linear, substitute_linear,
)

F = GF(31991)


def rand_form(rng, n, d, ring=PRIMAL, field=F):
    return MPoly(field, n, {e: field.random(rng) for e in monomial_basis(n - 1, d)}, ring)


def test_monomial_order():
    assert monomial_basis(1, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(4, 3)) == 35


def test_diff_examples():
    assert diff_apply(parse_poly("d0*d1", F, 2, ring=DUAL), parse_poly("x0*x1", F, 2)) == MPoly.constant(F, 2, 1)
    assert diff_apply(parse_poly("d0^2", F, 2, ring=DUAL), parse_poly("x0^2*x1", F, 2)) == parse_poly("2*x1", F, 2)


def test_contract_examples():
    assert contract_apply(parse_poly("x0", F, 1), parse_poly("d0^2", F, 1, ring=DUAL)) == parse_poly("2*d0", F, 1, ring=DUAL)


def test_power_of_linear_evaluates():
    rng = random.Random(0)
    for _ in range(50):
        f = rand_form(rng, 5, 3)
        a = [F.random(rng) for _ in range(5)]
        D = power_of_linear(MPoly.linear(F, a, DUAL), 3)
        assert diff_apply(D, f) == MPoly.constant(F, 5, poly_eval(f, a) * 6)


def test_apolarity_symmetry():
    rng = random.Random(1)
    for _ in range(100):
        d = rng.randint(1, 4)
        f = rand_form(rng, 3, d)
        D = rand_form(rng, 3, d, DUAL)
        assert diff_apply(D, f).is_zero() == contract_apply(f, D).is_zero()


def test_module_structure():
    rng = random.Random(2)
    for _ in range(20):
        f = rand_form(rng, 3, 4)
        D1, D2 = rand_form(rng, 3, 1, DUAL), rand_form(rng, 3, 2, DUAL)
        assert diff_apply(D1 * D2, f) == diff_apply(D1, diff_apply(D2, f))


def test_perfect_pairing_diagonal():
    from apolar.polyring import exp_factorial
    for d in range(1, 5):
        basis = monomial_basis(2, d)
        for a in basis:
            for b in basis:
                v = diff_apply(MPoly.monomial(F, a, DUAL), MPoly.monomial(F, b))
                want = exp_factorial(a) if a == b else 0
                assert v == MPoly.constant(F, 3, want)


def test_substitution_examples():
    f = parse_poly("x0^2 + x1^2", QQ, 2)
    phi = LinearParam([[1], [1]], QQ)
    assert substitute_linear(f, phi) == parse_poly("2*x0^2", QQ, 1)
    assert substitute_linear(f, LinearParam.identity(QQ, 2)) == f


def test_substitution_is_ring_map():
    rng = random.Random(3)
    phi = LinearParam([[F.random(rng) for _ in range(2)] for _ in range(3)], F)
    for _ in range(10):
        f, g = rand_form(rng, 3, 2), rand_form(rng, 3, 1)
        assert substitute_linear(f * g, phi) == substitute_linear(f, phi) * substitute_linear(g, phi)


def test_eval_matches_substitution_to_constants():
    rng = random.Random(4)
    for _ in range(100):
        f = rand_form(rng, 3, rng.randint(0, 3))
        a = [F.random(rng) for _ in range(3)]
        phi = LinearParam([[x] for x in a], F)
        g = substitute_linear(f, phi)
        assert g.coeff((f.degree(),) if not f.is_zero() else (0,)) == poly_eval(f, a)


def test_power_of_linear_binomial():
    assert power_of_linear(parse_poly("x0 + x1", QQ), 2) == parse_poly("x0^2 + 2*x0*x1 + x1^2", QQ)
    with pytest.raises(ValueError):
        power_of_linear(parse_poly("x0^2", QQ), 2)


def test_parse_format_round_trip():
    f = parse_poly("3*x0^2*x1 - 1/2*x2^3 + (x0 + x1)^2", QQ, 3)
    assert parse_poly(format_poly(f), QQ, 3) == f


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        parse_poly("x0 + * x1", QQ)
    assert exc.value.line == 1 and exc.value.column == 6


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), min_size=1, max_size=6))
def test_format_parse_inverse(terms):
    f = MPoly(QQ, 2, {(a, b): c for a, b, c in terms if c})
    assert parse_poly(format_poly(f), QQ, 2) == f
