import random
from fractions import Fraction

import pytest

from apolar.apolarity import Form, PointSet, PreconditionError, random_points, sum_of_powers
from apolar.exactcore import GF, QQ
from apolar.polyring import parse_poly
from apolar.sylvester import (
    EXACT, GENERATOR_ONLY, IRREDUCIBLE_FACTOR, REPEATED_ROOT, binary_apolar_generators,
    decompose_binary, decompose_even_binary, waring_upper_bound_search, zeta_decomposition_points,
)

F = GF(31991)


def test_generator_degrees_add_to_d_plus_2():
    rng = random.Random(0)
    for d in range(2, 9):
        pts = random_points(F, 1, rng.randint(1, d // 2 + 1), rng)
        f = sum_of_powers(pts, d)
        da, db, a = binary_apolar_generators(f)
        assert da + db == d + 2
        assert a.degree() == da


def test_three_summand_quintics_round_trip():
    for s in range(20):
        rng = random.Random(s)
        pts = random_points(F, 1, 3, rng)
        f = sum_of_powers(pts, 5, [F.random(rng) or F.one for _ in range(3)])
        dec = decompose_binary(f)
        assert dec.status == EXACT and dec.summands == 3
        assert dec.reconstruct(5) == f.f


def test_rational_roots_over_q():
    f = sum_of_powers(PointSet(QQ, [(1, 2), (1, -3), (2, 5)]), 5, [Fraction(1), Fraction(-2), Fraction(1, 3)])
    dec = decompose_binary(f)
    assert dec.status == EXACT and dec.reconstruct(5) == f.f


def test_irreducible_generator_reported_over_q():
    f = Form(parse_poly("x0^2 - x1^2", QQ, 2))
    dec = decompose_binary(f, generator=parse_poly("d0^2 + d1^2", QQ, 2, ring="T"))
    assert dec.status == GENERATOR_ONLY and dec.obstruction == IRREDUCIBLE_FACTOR


def test_repeated_root_monomials():
    for d in range(3, 7):
        dec = decompose_binary(parse_poly(f"x0*x1^{d - 1}", F, 2))
        assert dec.status == GENERATOR_ONLY and dec.obstruction == REPEATED_ROOT


def test_generator_must_annihilate():
    with pytest.raises(ValueError):
        decompose_binary(parse_poly("x0^3", F, 2), generator=parse_poly("d0", F, 2, ring="T"))


def test_zeta_example_gf19():
    G = GF(19)
    f = Form(parse_poly("9*x0*x1^2", G, 2))
    dec = decompose_binary(f, generator=parse_poly("d0^3 - d1^3", G, 2, ring="T"))
    assert dec.status == EXACT and dec.summands == 3
    assert len(zeta_decomposition_points(G, 3)) == 3
    with pytest.raises(PreconditionError):
        zeta_decomposition_points(GF(23), 3)


def test_even_pencil_x0sq_x1sq():
    G = GF(31)
    f = Form(parse_poly("x0^2*x1^2", G, 2))
    pen = decompose_even_binary(f, samples=3, seed=1)
    assert pen.basis == [parse_poly("d0^3", G, 2, ring="T"), parse_poly("d1^3", G, 2, ring="T")]
    assert [m.obstruction for m in pen.members[:2]] == [REPEATED_ROOT, REPEATED_ROOT]
    assert len(pen.samples) == 3
    for dec in pen.samples:
        assert dec.summands == 3 and dec.reconstruct(4) == f.f


def test_waring_search_monomial():
    f = Form(parse_poly("x0*x1^4", GF(101), 2))
    res = waring_upper_bound_search(f, attempts=500, seed=0)
    assert res.found is not None and res.found.summands <= 5


def test_binary_only_and_char_guard():
    with pytest.raises(PreconditionError):
        decompose_binary(parse_poly("x0*x1*x2", F, 3))
    with pytest.raises(Exception):
        decompose_binary(parse_poly("x0^7", GF(7), 2))
