import random
from fractions import Fraction

import pytest

from apolar.apolarity import hilbert_function, quadratic_relation
from apolar.exactcore import GF, QQ, CharacteristicError, mat_rank
from apolar.polyring import MPoly, PRIMAL
from apolar.spinor import (
    FIBER_ZERO, INDEX, NAMES, QUADRIC_SHA256, SUBSETS, BasePointError, SectionError, clifford_kernel,
    clifford_matrix, dual_cubic_from_section, exp_point, fiber_p7, hyperbolic_form, jacobian_rank,
    on_spinor, random_section, relation_matches_hyperbolic, section_point, spinor_quadrics, vplus,
)

F = GF(31991)
PIN = "875cbd2310ae85b23a1b5b919fcbe88666d4987d33722ff6338a57221ccf3f6a"


def random_spinor_point(rng, field=F):
    return exp_point(field, [field.random(rng) for _ in range(10)])


def random_point(rng, field=F):
    return [field.random(rng) for _ in range(16)]


def test_coordinates():
    assert len(NAMES) == 16 and NAMES[0] == "0"
    assert all(len(S) % 2 == 0 for S in SUBSETS)
    sizes = [len(S) for S in SUBSETS]
    assert sizes == [0] + [2] * 10 + [4] * 5
    assert all(NAMES[INDEX[n]] == n for n in NAMES)


def test_quadrics_pinned():
    assert QUADRIC_SHA256 == PIN
    Q = spinor_quadrics(QQ)
    assert len(Q) == 10 and all(q.degree() == 2 and q.is_homogeneous() for q in Q)


def test_exp_points_lie_on_variety():
    rng = random.Random(0)
    for _ in range(50):
        assert on_spinor(random_spinor_point(rng))


def test_exp_points_over_rationals():
    rng = random.Random(1)
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(10)]
    assert on_spinor(exp_point(QQ, a), QQ)


def test_jacobian_rank_five_on_variety():
    rng = random.Random(2)
    for _ in range(20):
        assert jacobian_rank(random_spinor_point(rng)) == 5


def test_vplus_is_isotropic():
    rng = random.Random(3)
    for _ in range(20):
        y = vplus(random_point(rng))
        assert hyperbolic_form(y) == 0


def test_vplus_base_point():
    with pytest.raises(BasePointError):
        vplus(random_spinor_point(random.Random(4)))


def test_clifford_kernel_matches_vplus():
    rng = random.Random(5)
    for _ in range(20):
        p = random_point(rng)
        assert mat_rank(clifford_matrix(p)) == 9
        (k,) = clifford_kernel(p)
        y = vplus(p)
        j = next(i for i, c in enumerate(y) if c)
        assert [c * y[j] for c in k] == [c * k[j] for c in y]


def test_clifford_rank_on_variety():
    rng = random.Random(6)
    for _ in range(10):
        assert mat_rank(clifford_matrix(random_spinor_point(rng))) == 5


def test_coordinate_fiber():
    fc = fiber_p7(F)
    assert len(fc.vanishing) == 9 and len(fc.surviving) == 1
    assert fc.surviving_rank == 8


def test_section_pipeline():
    sec = random_section(11, F)
    assert sec.hilbert == (1, 5, 5, 1, 0)
    dc = dual_cubic_from_section(sec)
    assert hilbert_function(dc.form) == (1, 5, 5, 1)
    qr = quadratic_relation(dc.form)
    assert qr.dim == 1 and qr.rank == 10
    assert relation_matches_hyperbolic(dc)
    assert len(section_point(dc, [1, 0, 0, 0, 0])) == 16


def test_adversarial_section_is_rejected():
    def coord(name):
        e = [0] * 16
        e[INDEX[name]] = 1
        return MPoly(F, 16, {tuple(e): 1}, PRIMAL)
    # eleven coordinate hyperplanes: the remaining P^4 meets the variety
    forms = [coord(n) for n in NAMES[:11]]
    with pytest.raises(SectionError):
        dual_cubic_from_section(forms, F)
    sec = random_section(3, F, forms=forms)
    assert sec.retries >= 1 and sec.rejected[0] != (1, 5, 5, 1, 0)


def test_small_characteristic_rejected():
    with pytest.raises(CharacteristicError):
        random_section(0, GF(5))


def test_coordinate_fiber_maps_to_one_point():
    rng = random.Random(7)
    for _ in range(10):
        x = [F.zero if NAMES[k] in FIBER_ZERO else F.random(rng) for k in range(16)]
        y = vplus(x, F)
        assert [i for i, c in enumerate(y) if c] == [0]
