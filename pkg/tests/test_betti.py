import random

import pytest

from apolar.apolarity import general_form, hilbert_function, random_points
from apolar.betti import (
    Apolar, BettiTable, BudgetExceeded, Generators, Points, Sum, TableInconsistent,
    degree_from_betti, euler_check, hilbert_numerator, koszul_betti, parse_display, quotient_dims,
)
from apolar.exactcore import GF
from apolar.polyring import MPoly, parse_poly
from apolar.spinor import spinor_quadrics
from oracles import twisted_cubic_hf

F = GF(31991)
TC = ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")


def twisted_cubic():
    return Generators([parse_poly(s, F, 4) for s in TC])


def test_twisted_cubic_dims_and_table():
    o = twisted_cubic()
    assert quotient_dims(o, 5) == tuple(twisted_cubic_hf(j) for j in range(6))
    t = koszul_betti(o, r_max=2)
    assert t == parse_display("1 - -; - 3 2")
    assert degree_from_betti(t, 2) == 3


def test_points_dims_saturate():
    pts = random_points(F, 4, 8, random.Random(0))
    assert quotient_dims(Points(pts), 5) == (1, 5, 8, 8, 8, 8)
    t = koszul_betti(Points(pts), r_max=3)
    assert t == parse_display("1 - - - -; - 7 8 - -; - - 3 8 3")
    assert degree_from_betti(t, 4) == 8


def test_gorenstein_tables_are_symmetric():
    for n, d in ((3, 3), (4, 3), (2, 5)):
        f = general_form(F, n, d, 1).form
        t = koszul_betti(Apolar(f), r_max=d)
        rows = t.rows()
        flipped = [row[::-1] for row in rows[::-1]]
        assert rows == flipped
        assert euler_check(t, list(_hf(f)), n + 1, d + n + 1)


def _hf(f):
    return hilbert_function(f) + (0,) * 10


def test_artinian_degree_is_length():
    t = koszul_betti(Apolar(general_form(F, 2, 4, 2).form), r_max=4)
    assert degree_from_betti(t, 3) == sum((1, 3, 6, 3, 1))
    with pytest.raises(TableInconsistent):
        degree_from_betti(t, 4)


def test_sum_with_linear_forms_reduces():
    o = Sum(twisted_cubic(), [parse_poly("x0 + 2*x1 - x3", F, 4)])
    assert quotient_dims(o, 4) == (1, 3, 3, 3, 3)


def test_spinor_sum_is_artinian_reduced():
    rng = random.Random(5)
    Q = spinor_quadrics(F)
    lin = []
    for _ in range(11):
        terms = {tuple(1 if k == i else 0 for k in range(16)): F.random(rng) for i in range(16)}
        lin.append(MPoly(F, 16, terms))
    o = Sum(Generators(Q), lin)
    assert quotient_dims(o, 4) == (1, 5, 5, 1, 0)


def test_budget_refuses_large_strand():
    with pytest.raises(BudgetExceeded):
        koszul_betti(Generators(spinor_quadrics(F)), i_max=2, r_max=2, budget=10**4)


def test_render_and_json():
    t = parse_display("1 - -; - 3 2")
    assert t.render() == "1 - -\n- 3 2"
    assert t.get(1, 2) == 3 and t.get(2, 3) == 2 and t.get(0, 0) == 1
    assert '"rows": [[1, 0, 0], [0, 3, 2]]' in t.to_json()
    assert hilbert_numerator(t) == {0: 1, 2: -3, 3: 2}
    assert BettiTable.from_rows([[1, 0], [0, 3]]) == parse_display("1 -; - 3")


def test_generator_validation():
    with pytest.raises(ValueError):
        Generators([parse_poly("x0 + x1^2", F, 2)])
    with pytest.raises(ValueError):
        Sum(twisted_cubic(), [parse_poly("x0^2", F, 4)])
