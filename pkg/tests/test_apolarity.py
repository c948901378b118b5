import random

import pytest

from apolar.apolarity import (
    Form, NotPresentable, PointSet, PreconditionError, apolar_piece, catalecticant,
    dual_socle_generator, expected_general_hf, general_form, hilbert_function, is_apolar,
    powersum_lambda, projection_fiber, quadratic_relation, random_form, random_points, sum_of_powers,
)
from apolar.exactcore import GF, QQ, CharacteristicError, mat_rank
from apolar.polyring import diff_apply, parse_poly
from oracles import bareiss_rank_modp, num_monomials

F = GF(31991)


def test_hf_examples():
    assert hilbert_function(parse_poly("x0*x1*x2", F, 3)) == (1, 3, 3, 1)
    assert hilbert_function(parse_poly("x0^4", F, 3)) == (1, 1, 1, 1, 1)
    assert hilbert_function(parse_poly("x0^2 + x1^2 + x2^2", QQ, 3)) == (1, 3, 1)


def test_hf_symmetric_and_bounded():
    rng = random.Random(0)
    for _ in range(15):
        n, d = rng.randint(1, 3), rng.randint(1, 4)
        f = random_form(F, n, d, rng)
        hf = hilbert_function(f)
        assert hf == hf[::-1]
        assert all(h <= num_monomials(n + 1, e) for e, h in enumerate(hf))
        assert hf == expected_general_hf(n, d)


def test_catalecticant_rank_against_oracle():
    rng = random.Random(1)
    f = random_form(F, 3, 4, rng)
    C = catalecticant(f, 2)
    rows = [[int(C[i, j]) for j in range(C.ncols)] for i in range(C.nrows)]
    assert mat_rank(C) == bareiss_rank_modp(rows, 31991)


def test_apolar_piece_annihilates():
    rng = random.Random(2)
    f = random_form(F, 4, 3, rng)
    piece = apolar_piece(f, 2)
    assert len(piece) == 15 - 5
    for D in piece:
        assert diff_apply(D, f.f).is_zero()


def test_socle_recovers_form_up_to_scalar():
    rng = random.Random(3)
    f = random_form(F, 2, 4, rng)
    g = dual_socle_generator(apolar_piece(f, 2) + apolar_piece(f, 3), 2, 4)
    assert g.f == f.f.normalized()


def test_points_apolar_and_lambda():
    rng = random.Random(4)
    pts = random_points(F, 2, 6, rng)
    lam = [F.random(rng) for _ in range(6)]
    f = sum_of_powers(pts, 4, lam)
    assert is_apolar(f, pts)
    sol = powersum_lambda(f, pts)
    assert sol.solution_dim == 0 and sol.lambdas == lam


def test_not_apolar_and_not_presentable():
    rng = random.Random(5)
    f = random_form(F, 4, 3, rng)
    pts = random_points(F, 4, 7, rng)
    cert = is_apolar(f, pts)
    assert not cert and cert.failing_degree is not None
    with pytest.raises(NotPresentable):
        powersum_lambda(f, pts)


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        PointSet(F, [[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        Form(parse_poly("x0 + x1^2", F, 2))
    with pytest.raises(CharacteristicError):
        hilbert_function(parse_poly("x0^5", GF(5), 1))


def test_three_lines_fiber():
    G = GF(1009)
    f = parse_poly("x0*x1*x2", G, 3)
    fib = projection_fiber(f, 2, [1, 1, 1])
    assert len(fib) == 4
    assert is_apolar(f, fib)


def test_quadratic_relation_general_cubic():
    g = general_form(F, 4, 3, 7)
    qr = quadratic_relation(g.form)
    assert qr.dim == 1 and qr.rank == 10


def test_quadratic_relation_precondition():
    with pytest.raises(PreconditionError):
        quadratic_relation(parse_poly("x0^3", F, 5))
