from fractions import Fraction

import pytest

from apolar.intersect import (
    GradedRingPresentation, InhomogeneousError, Integration, bundle_cohomology, chern_lambda2,
    flip_one_sign, grassmann_cohomology, spinor_cohomology, syt_rectangle, vsp_invariants,
    weighted_monomials,
)


def test_weighted_monomials():
    assert weighted_monomials((1, 2), 4) == ((0, 2), (2, 1), (4, 0))
    assert len(weighted_monomials((1, 1, 1), 3)) == 10


def test_syt_counts():
    assert syt_rectangle(2, 2) == 2
    assert syt_rectangle(2, 3) == 5
    assert syt_rectangle(3, 3) == 42


@pytest.mark.parametrize("k,n,total,top", [(1, 2, 2, 1), (2, 4, 6, 2), (3, 5, 10, 5)])
def test_grassmannians(k, n, total, top):
    G = grassmann_cohomology(k, n)
    assert G.total_dim() == total
    d = k * (n - k)
    assert G.integrate(f"(-u1)^{d}") == syt_rectangle(k, n - k)
    assert G.dims(d + 2)[-1] == 0


def test_projective_line():
    P1 = grassmann_cohomology(1, 2)
    assert P1.is_zero("u1^2")
    assert P1.integrate("-u1") == 1


def test_normal_form_idempotent():
    G = grassmann_cohomology(2, 4)
    for c in ("u1^3", "u1*u2 + u1^3", "u2^2", "3*u1^2 - u2"):
        nf = G.normal_form(c)
        assert G.normal_form(nf) == nf


def test_inhomogeneous_rejected():
    G = grassmann_cohomology(2, 4)
    with pytest.raises(InhomogeneousError):
        G.wdeg("u1 + u2")
    with pytest.raises(ValueError):
        G.parse("v7")


def test_chern_lambda2_rank_two():
    R = GradedRingPresentation(["a1", "a2"], [1, 2])
    c = chern_lambda2(R, [R.gen("a1"), R.gen("a2")])
    assert R.class_equal(c[1], "a1")
    assert all(R.is_zero(x) for x in c[2:])


def test_chern_lambda2_rank_three():
    # L^2 of a rank-3 bundle is E* twisted by det: c1 = 2 c1(E)
    R = GradedRingPresentation(["a1", "a2", "a3"], [1, 2, 3])
    c = chern_lambda2(R, [R.gen(n) for n in ("a1", "a2", "a3")])
    assert R.class_equal(c[1], "2*a1")
    assert R.class_equal(c[2], "a1^2 + a2")


def test_integration_requires_top_degree():
    R = GradedRingPresentation(["t"], [1], ["t^3"], Integration((2,), Fraction(1), 2))
    assert R.integrate("t^2") == 1
    with pytest.raises(ValueError):
        R.integrate("t")


def test_spinor_ring_dimensions():
    S = spinor_cohomology(12)
    assert sum(S.dims(10)) == 16
    G = bundle_cohomology(S)
    assert sum(G.dims(16)) == 160


def test_vsp_report():
    rep = vsp_invariants()
    assert rep.passed, rep.text()
    assert rep.values["deg"] == "660" and rep.values["h10"] == "12"
    assert rep.text().splitlines()[-1] == "deg VSP(F,8) = 660"


def test_mutated_relation_fails_early():
    rep = vsp_invariants(12, g_relation=flip_one_sign())
    assert not rep.passed
    assert rep.first_failure == "(a) Ann(u1^14)"
    assert rep.values.get("deg") != "660"


def test_flip_one_sign_changes_one_term():
    r = "a + b - c"
    assert flip_one_sign(r, 1) == "a - b - c"
    assert flip_one_sign(r, 0) == "-a + b - c"
