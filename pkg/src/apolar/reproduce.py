"""End-to-end reproduction checks, shared by the test suite and the command line."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .apolarity import (
    Form,
    NotPresentable,
    PointSet,
    apolar_piece,
    gamma_span_dim,
    general_form,
    hilbert_function,
    ideal_of_points,
    is_apolar,
    powersum_lambda,
    projection_fiber,
    quadratic_relation,
    random_form,
    random_points,
    sum_of_powers,
)
from .betti import Apolar, BettiTable, Generators, Points, Sum, degree_from_betti, koszul_betti, parse_display
from .exactcore import GF, mat_rank
from .intersect import vsp_invariants
from .polyring import MPoly, parse_poly
from .spinor import (
    QUADRIC_SHA256,
    clifford_matrix,
    dual_cubic_from_section,
    exp_point,
    fiber_p7,
    hyperbolic_form,
    on_spinor,
    random_section,
    spinor_quadrics,
    vplus,
)
from .sylvester import EXACT, REPEATED_ROOT, decompose_binary, zeta_decomposition_points

PINNED_QUADRIC_SHA256 = "875cbd2310ae85b23a1b5b919fcbe88666d4987d33722ff6338a57221ccf3f6a"
FIBER_PRIME = 1009


@dataclass
class CheckResult:
    number: int
    key: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.key}: {self.detail} ({self.seconds:.1f}s)"


class Reporter:
    def __init__(self):
        self.lines: list = []
        self.ok = True

    def check(self, cond: bool, msg: str):
        self.ok &= bool(cond)
        self.lines.append(("ok " if cond else "BAD ") + msg)


def _field(prime):
    return GF(prime)


def hilbert_functions(prime: int = 31991, seeds: int = 20) -> Reporter:
    F = _field(prime)
    r = Reporter()
    good = 0
    for s in range(seeds):
        hf = hilbert_function(random_form(F, 4, 3, random.Random(s)))
        good += hf == (1, 5, 5, 1)
    r.check(good == seeds, f"random cubic threefolds with HF (1,5,5,1): {good}/{seeds}")
    r.check(hilbert_function(parse_poly("x0*x1*x2", F, 3)) == (1, 3, 3, 1), "x0*x1*x2 -> (1,3,3,1)")
    for d in range(1, 7):
        r.check(hilbert_function(parse_poly(f"x0^{d}", F, 3)) == (1,) * (d + 1), f"x0^{d} -> all ones")
    return r


BETTI_EXPECTED = {
    "twisted cubic": "1 - -; - 3 2",
    "8 points in P4": "1 - - - -; - 7 8 - -; - - 3 8 3",
    "cubic threefold": "1 - - - - -; - 10 16 - - -; - - - 16 10 -; - - - - - 1",
    "cubic surface": "1 - - - -; - 6 5 - -; - - 5 6 -; - - - - 1",
    "plane quintic": "1 - - -; - - - -; - 4 1 -; - 1 4 -; - - - -; - - - 1",
    "plane septic": "1 - - -; - - - -; - - - -; - 5 - -; - - 5 -; - - - -; - - - -; - - - 1",
}
SEVEN_POWERS_AT_LEAST = "1 - - - - -; - 10 16 3 - -; - - 3 16 10 -; - - - - - 1"


def _plane_even(n: int) -> str:
    rows = [["1", "-", "-", "-"]] + [["-"] * 4 for _ in range(2 * n)]
    rows[n][1] = rows[n][2] = str(2 * n + 3)
    rows[2 * n][3] = "1"
    return "; ".join(" ".join(r) for r in rows)


def betti_tables(prime: int = 31991, seed: int = 1) -> Reporter:
    F = _field(prime)
    r = Reporter()
    rng = random.Random(seed)
    tc = [parse_poly(s, F, 4) for s in ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")]
    got = {
        "twisted cubic": koszul_betti(Generators(tc), r_max=2),
        "8 points in P4": koszul_betti(Points(random_points(F, 4, 8, rng)), r_max=3),
        "cubic threefold": koszul_betti(Apolar(general_form(F, 4, 3, seed).form), r_max=3),
        "cubic surface": koszul_betti(Apolar(general_form(F, 3, 3, seed).form), r_max=3),
        "plane quintic": koszul_betti(Apolar(general_form(F, 2, 5, seed).form), r_max=5),
        "plane septic": koszul_betti(Apolar(general_form(F, 2, 7, seed).form), r_max=7),
    }
    for name, table in got.items():
        r.check(table == parse_display(BETTI_EXPECTED[name]), f"{name}: {table.render()!r}")
    for n in range(1, 5):
        t = koszul_betti(Apolar(general_form(F, 2, 2 * n, seed).form), r_max=2 * n)
        r.check(t == parse_display(_plane_even(n)), f"plane curve of degree {2 * n}: middle row {2 * n + 3}/{2 * n + 3}")
    f7 = sum_of_powers(random_points(F, 4, 7, rng), 3)
    t7 = koszul_betti(Apolar(f7), r_max=3)
    floor = parse_display(SEVEN_POWERS_AT_LEAST)
    at_least = all(t7.get(i, j) >= floor.get(i, j) for i in range(6) for j in range(9))
    r.check(at_least and t7.get(3, 4) >= 3 and t7.get(2, 4) >= 3,
            f"sum of 7 cubes dominates the displayed table: {t7.render()!r}")
    return r


def spinor_geometry(prime: int = 31991, exp_seeds: int = 500, rank_seeds: int = 200) -> Reporter:
    F = _field(prime)
    r = Reporter()
    r.check(QUADRIC_SHA256 == PINNED_QUADRIC_SHA256, f"quadric hash {QUADRIC_SHA256[:16]}...")
    Q = spinor_quadrics(F)
    s = MPoly.zero(F, 16)
    for i in range(5):
        s = s + Q[i + 5] * Q[i]
    r.check(s.is_zero(), "sum of q_i^- q_i^+ is the zero polynomial")
    rng = random.Random(0)
    on = all(on_spinor(exp_point(F, [F.random(rng) for _ in range(10)]), F) for _ in range(exp_seeds))
    r.check(on, f"{exp_seeds} exponential images lie on S")
    off_ranks, on_ranks, on_q = set(), set(), True
    for _ in range(rank_seeds):
        x = [F.random(rng) for _ in range(16)]
        off_ranks.add(mat_rank(clifford_matrix(x, F)))
        on_q &= not hyperbolic_form(vplus(x, F))
        on_ranks.add(mat_rank(clifford_matrix(exp_point(F, [F.random(rng) for _ in range(10)]), F)))
    r.check(off_ranks == {9}, f"Clifford rank off S: {sorted(off_ranks)}")
    r.check(max(on_ranks) <= 8, f"Clifford rank on S: {sorted(on_ranks)}")
    r.check(on_q, "vplus lands on the quadric sum y_i y_-i = 0")
    fib = fiber_p7(F)
    r.check(len(fib.vanishing) == 9 and fib.surviving_rank == 8,
            f"coordinate P7: {len(fib.vanishing)} quadrics vanish, {fib.surviving[0]} has rank {fib.surviving_rank}")
    return r


def spinor_table(prime: int = 31991, seed: int = 1) -> BettiTable:
    F = _field(prime)
    sec = random_section(seed, F)
    return koszul_betti(Sum(Generators(spinor_quadrics(F)), sec.forms), r_max=3)


def spinor_degree(prime: int = 31991, seed: int = 1) -> tuple:
    t = spinor_table(prime, seed)
    deg = degree_from_betti(t, 5)
    r = Reporter()
    r.check(t == parse_display(BETTI_EXPECTED["cubic threefold"]), f"section ring table {t.render()!r}")
    r.check(deg == 12, f"degree from Betti table = {deg}")
    return r, deg


def section_pipeline(prime: int = 31991, seeds: int = 20) -> Reporter:
    F = _field(prime)
    r = Reporter()
    first_try = 0
    for s in range(seeds):
        sec = random_section(s, F)
        first_try += sec.retries == 0
        dc = dual_cubic_from_section(sec)
        hf = hilbert_function(dc.form)
        qr = quadratic_relation(dc.form)
        r.check(sec.hilbert == (1, 5, 5, 1, 0) and hf == (1, 5, 5, 1) and qr.dim == 1 and qr.rank == 10,
                f"seed {s}: section HF {sec.hilbert}, cubic HF {hf}, relation dim {qr.dim} rank {qr.rank}")
    r.lines.append(f"info first-try sections: {first_try}/{seeds}")
    return r


def binary_sylvester(prime: int = 31991, seeds: int = 50) -> Reporter:
    F = _field(prime)
    r = Reporter()
    good = 0
    for s in range(seeds):
        rng = random.Random(s)
        pts = random_points(F, 1, 3, rng)
        lams = [F.random(rng) or F.one for _ in range(3)]
        f = sum_of_powers(pts, 5, lams)
        dec = decompose_binary(f)
        good += dec.status == EXACT and dec.summands == 3 and dec.reconstruct(5) == f.f
    r.check(good == seeds, f"quintics with 3 summands and exact round trip: {good}/{seeds}")
    G19 = GF(19)
    f = Form(parse_poly("9*x0*x1^2", G19, 2))
    dec = decompose_binary(f, generator=parse_poly("d0^3 - d1^3", G19, 2, ring="T"))
    zeta = zeta_decomposition_points(G19, 3)
    zset = {tuple(c / p[0] for c in p) for p in zeta}
    lam = powersum_lambda(f, PointSet(G19, zeta))
    r.check(dec.status == EXACT and set(dec.roots) == zset and [int(x) for x in lam.lambdas] == [1, 1, 1],
            f"9*x0*x1^2 over GF(19): roots {sorted(int(t[1]) for t in dec.roots)}, zeta weights {[int(x) for x in lam.lambdas]}")
    for d in range(3, 8):
        dd = decompose_binary(parse_poly(f"x0*x1^{d - 1}", F, 2))
        r.check(dd.status != EXACT and dd.obstruction == REPEATED_ROOT and dd.generator.degree() < d,
                f"x0*x1^{d - 1}: {dd.obstruction} in degree {dd.generator.degree()}")
    return r


def three_lines(seed: int = 3) -> Reporter:
    F = GF(FIBER_PRIME)
    r = Reporter()
    f = Form(parse_poly("x0*x1*x2", F, 3))
    piece = apolar_piece(f, 2)
    want = [parse_poly(s, F, 3, ring="T") for s in ("d0^2", "d1^2", "d2^2")]
    r.check(piece == want, "degree-2 apolar piece is spanned by the three squares")
    rng = random.Random(seed)
    while True:
        pt = [F.random(rng) for _ in range(3)]
        if all(pt):
            break
    Z = projection_fiber(f, 2, pt)
    cert = is_apolar(f, Z)
    try:
        ps = powersum_lambda(f, Z)
        ok_ps = ps.solution_dim == 0
    except NotPresentable:
        ok_ps = False
    r.check(Z.s == 4 and cert.apolar and ok_ps, f"fiber over a random point has {Z.s} points, apolar {cert.apolar}")
    return r


def power_sums(prime: int = 31991, seeds: int = 20) -> Reporter:
    F = _field(prime)
    r = Reporter()
    rng = random.Random(8)
    pts = random_points(F, 4, 8, rng)
    f = sum_of_powers(pts, 3, [F.random(rng) or F.one for _ in range(8)])
    cert = is_apolar(f, pts)
    dim2 = len(ideal_of_points(pts, 2))
    span = gamma_span_dim(f, 2, pts)
    r.check(cert.apolar and dim2 == 7 and span == 2, f"8 cubes: apolar {cert.apolar}, dim I(2) = {dim2}, span dim {span}")
    fails = 0
    for s in range(seeds):
        rr = random.Random(1000 + s)
        g = general_form(F, 4, 3, 1000 + s).form
        try:
            powersum_lambda(g, random_points(F, 4, 7, rr))
        except NotPresentable:
            fails += 1
    r.check(fails == seeds, f"7 random points never present a general cubic: {fails}/{seeds}")
    return r


def intersection_suite(h10: Fraction | int | None = None) -> Reporter:
    r = Reporter()
    rep = vsp_invariants(h10)
    for c in rep.checks:
        r.check(c.passed, f"{c.key}: {c.detail}")
    r.check(rep.values.get("deg") == "660", f"deg VSP(F,8) = {rep.values.get('deg')}")
    return r


NOT_REPRODUCED = ("smoothness and irreducibility of the variety of 8-term presentations, and the count of 5 "
                  "presentations of a plane septic, rest on proofs; the suites above check the certificates instead")


def run_all(prime: int = 31991, seed: int = 1, quick: bool = False) -> list:
    """Run criteria 1-9; ``quick`` shrinks the seed sweeps."""
    scale = (lambda n: max(2, n // 10)) if quick else (lambda n: n)
    out = []

    def run(num, key, fn: Callable):
        t0 = time.time()
        try:
            rep = fn()
            ok, detail = rep.ok, "; ".join(l for l in rep.lines if l.startswith("BAD")) or f"{len(rep.lines)} checks"
        except Exception as exc:  # reported, not raised: the driver prints every criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(num, key, ok, detail, time.time() - t0))

    run(1, "hilbert-functions", lambda: hilbert_functions(prime, scale(20)))
    run(2, "betti-tables", lambda: betti_tables(prime, seed))
    run(3, "spinor-geometry", lambda: spinor_geometry(prime, scale(500), scale(200)))
    deg_box = {}

    def crit4():
        rep, deg = spinor_degree(prime, seed)
        deg_box["deg"] = deg
        return rep

    run(4, "spinor-degree", crit4)
    run(5, "section-pipeline", lambda: section_pipeline(prime, scale(20)))
    run(6, "binary-sylvester", lambda: binary_sylvester(prime, scale(50)))
    run(7, "three-lines-projection", lambda: three_lines())
    run(8, "power-sum-membership", lambda: power_sums(prime, scale(20)))
    run(9, "intersection-numbers", lambda: intersection_suite(deg_box.get("deg")))
    return out
