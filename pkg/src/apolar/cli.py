"""Command-line front end.

Every command prints a small record (text or JSON) that includes the field,
the seed and a provenance key for each number.  Exit status is 0 only when all
certificates requested by the command pass.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import apolarity as ap
from . import betti as bt
from . import intersect as it
from . import reproduce as rp
from . import spinor as sp
from . import sylvester as sy
from .exactcore import GF, CharacteristicError, Mod, PrimeField, default_prime, parse_field
from .polyring import DUAL, ParseError, format_poly, parse_points, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def _scalar(x):
    if isinstance(x, Mod):
        return int(x.lift())
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


def _read(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def _field(args):
    if args.prime is not None:
        return GF(args.prime)
    return parse_field(args.field) if args.field else GF(default_prime())


def _form(args, field, text=None, n=None, d=None):
    """The input form, or a seeded general one when --random n=..,d=.. is given."""
    if getattr(args, "random", None):
        opts = dict(kv.split("=") for kv in args.random.split(","))
        n, d = int(opts["n"]), int(opts.get("d", 3))
        return ap.general_form(field, n, d, args.seed).form
    if text is None:
        raise UsageError("give a polynomial or --random n=<n>,d=<d>")
    return ap.as_form(parse_poly(_read(text), field))


def _poly_list(text, field, ring=None):
    """';'-separated polynomials, all in the largest variable count that occurs."""
    parts = [t for t in _read(text).split(";") if t.strip()]
    nv = max(parse_poly(t, field, ring=ring).nvars for t in parts)
    return [parse_poly(t, field, nv, ring=ring) for t in parts]


# --- commands -----------------------------------------------------------------

def cmd_apolar_ideal(args, field):
    F = _form(args, field, args.poly)
    degrees = [args.degree] if args.degree is not None else range(1, F.d + 1)
    pieces = {str(e): [format_poly(q) for q in ap.apolar_piece(F, e)] for e in degrees}
    return {"form": format_poly(F.f), "pieces": pieces, "provenance": "derived"}, True


def cmd_hilbert(args, field):
    F = _form(args, field, args.poly)
    hf = ap.hilbert_function(F)
    out = {"form": format_poly(F.f), "hilbert": "(" + ",".join(map(str, hf)) + ")", "provenance": "derived"}
    ok = True
    if args.expect:
        ok = out["hilbert"] == args.expect.replace(" ", "")
        out["expected"] = args.expect
    return out, ok


def cmd_dual_cubic(args, field):
    if args.quadrics:
        J = _poly_list(args.quadrics, field, ring=DUAL)
        F = ap.dual_socle_generator(J, J[0].nvars - 1, args.degree)
        return {"form": format_poly(F.f), "hilbert": list(ap.hilbert_function(F)),
                "provenance": "dual socle generator"}, True
    sec = sp.random_section(args.seed, field)
    dc = sp.dual_cubic_from_section(sec)
    return {"form": format_poly(dc.form.f), "section_hilbert": list(sec.hilbert), "retries": sec.retries,
            "hilbert": list(ap.hilbert_function(dc.form)), "provenance": "section of the spinor variety"}, True


def cmd_decompose_binary(args, field):
    F = ap.as_form(parse_poly(_read(args.poly), field))
    gen = parse_poly(_read(args.generator), field, 2, ring=DUAL) if args.generator else None
    dec = sy.decompose_binary(F, gen)
    out = {"form": format_poly(F.f), "generator": format_poly(dec.generator), "status": dec.status,
           "provenance": "binary apolar generator"}
    if dec.status == sy.EXACT:
        out["summands"] = dec.summands
        out["points"] = [[_scalar(c) for c in p] for p in dec.roots]
        out["lambdas"] = [_scalar(x) for x in dec.lambdas]
        out["round_trip"] = dec.reconstruct(F.d) == F.f
        return out, out["round_trip"]
    out["obstruction"] = dec.obstruction
    return out, bool(args.allow_obstruction)


def cmd_verify_powersum(args, field):
    F = ap.as_form(parse_poly(_read(args.poly), field))
    pts = ap.PointSet(field, parse_points(_read(args.points), field))
    cert = ap.is_apolar(F, pts)
    out = {"form": format_poly(F.f), "points": pts.s, "apolar": cert.apolar,
           "failing_degree": cert.failing_degree,
           "ideal_dims": {str(k): v for k, v in sorted(cert.ideal_dims.items())}, "provenance": "derived"}
    try:
        ps = ap.powersum_lambda(F, pts)
        out["lambdas"] = [_scalar(x) for x in ps.lambdas]
        out["solution_dim"] = ps.solution_dim
        ok = cert.apolar
    except ap.NotPresentable as exc:
        out["lambdas"] = None
        out["reason"] = str(exc)
        ok = False
    return out, ok


EXAMPLES = {
    "twisted-cubic": "twisted cubic",
    "8-points": "8 points in P4",
    "cubic-threefold": "cubic threefold",
    "cubic-surface": "cubic surface",
    "plane-quintic": "plane quintic",
    "plane-septic": "plane septic",
}


def cmd_betti(args, field):
    rng = random.Random(args.seed)
    expected = None
    retries = None
    if args.example:
        name = args.example
        if name == "twisted-cubic":
            o = bt.Generators([parse_poly(s, field, 4) for s in ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")])
        elif name == "8-points":
            o = bt.Points(ap.random_points(field, 4, 8, rng))
        elif name == "spinor":
            sec = sp.random_section(args.seed, field)
            o, retries = bt.Sum(bt.Generators(sp.spinor_quadrics(field)), sec.forms), sec.retries
            expected = rp.BETTI_EXPECTED["cubic threefold"]
        else:
            nd = {"cubic-threefold": (4, 3), "cubic-surface": (3, 3), "plane-quintic": (2, 5),
                  "plane-septic": (2, 7)}[name]
            draw = ap.general_form(field, nd[0], nd[1], args.seed)
            o, retries = bt.Apolar(draw.form), draw.retries
        expected = expected or rp.BETTI_EXPECTED[EXAMPLES[name]]
    elif args.apolar:
        o = bt.Apolar(parse_poly(_read(args.apolar), field))
    elif args.points:
        o = bt.Points(ap.PointSet(field, parse_points(_read(args.points), field)))
    elif args.generators:
        o = bt.Generators(_poly_list(args.generators, field))
    else:
        raise UsageError("give --example, --apolar, --points or --generators")
    r_max = args.r_max if args.r_max is not None else (o.form.d if isinstance(o, bt.Apolar) else 3)
    table = bt.koszul_betti(o, r_max=r_max, budget=args.budget)
    out = {"rows": table.rows(), "display": table.render(),
           "provenance": args.example or "derived"}
    if retries is not None:
        out["retries"] = retries
    if args.codim is not None:
        out["degree"] = _scalar(bt.degree_from_betti(table, args.codim))
    ok = True
    if expected is not None:
        ok = table == bt.parse_display(expected)
        out["matches_expected"] = ok
    return out, ok


def cmd_spinor_check(args, field):
    if not isinstance(field, PrimeField):
        raise UsageError("spinor-check samples random points and needs a prime field")
    n = args.samples
    r = rp.spinor_geometry(field.p, exp_seeds=n, rank_seeds=n)
    return {"checks": r.lines, "quadric_sha256": sp.QUADRIC_SHA256, "provenance": "spinor quadrics"}, r.ok


def cmd_spinor_section(args, field):
    sec = sp.random_section(args.seed, field)
    dc = sp.dual_cubic_from_section(sec)
    qr = ap.quadratic_relation(dc.form)
    ok = qr.dim == 1 and qr.rank == 10 and sp.relation_matches_hyperbolic(dc)
    return {"section_hilbert": list(sec.hilbert), "retries": sec.retries,
            "forms": [format_poly(h) for h in sec.forms], "dual_cubic": format_poly(dc.form.f),
            "relation_dim": qr.dim, "relation_rank": qr.rank,
            "relation_is_pulled_back_hyperbolic_form": ok, "provenance": "section of the spinor variety"}, ok


def cmd_quadratic_relation(args, field):
    F = _form(args, field, args.poly)
    qr = ap.quadratic_relation(F)
    out = {"form": format_poly(F.f), "dim": qr.dim, "ranks": qr.ranks, "provenance": "derived"}
    if qr.dim == 1:
        M = qr.matrix
        out["matrix"] = [[_scalar(M[i, j]) for j in range(M.ncols)] for i in range(M.nrows)]
    return out, qr.dim == 1 and qr.rank == 10


def cmd_vsp_invariants(args, field):
    rep = it.vsp_invariants()
    return {"provenance": "intersection ring", "report": rep}, rep.passed


def cmd_reproduce_paper(args, field):
    if not isinstance(field, PrimeField):
        raise UsageError("reproduce-paper runs over a prime field (default GF(31991))")
    results = rp.run_all(field.p, args.seed, quick=args.quick)
    return {"results": results, "not_reproduced": rp.NOT_REPRODUCED}, all(r.passed for r in results)


# --- output -------------------------------------------------------------------

def _json_default(o):
    if isinstance(o, it.VSPReport):
        return json.loads(o.to_json())
    if isinstance(o, rp.CheckResult):
        return {"criterion": o.number, "key": o.key, "passed": o.passed, "detail": o.detail}
    return _scalar(o) if isinstance(o, (Mod, Fraction)) else str(o)


def render(cmd: str, payload: dict, meta: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"command": cmd, **meta, **payload}, sort_keys=True, default=_json_default) + "\n"
    lines = [f"# {cmd} field={meta['field']} seed={meta['seed']}"]
    for k, v in payload.items():
        if isinstance(v, it.VSPReport):
            lines.append(v.text())
        elif k == "results":
            lines += [f"[{'PASS' if r.passed else 'FAIL'}] {r.number}. {r.key}: {r.detail}" for r in v]
        elif k == "display":
            lines.append(v)
        elif k == "checks":
            lines += v
        else:
            lines.append(f"{k}: {json.dumps(v, default=_json_default, sort_keys=True) if not isinstance(v, str) else v}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "apolar-ideal": cmd_apolar_ideal,
    "hilbert": cmd_hilbert,
    "dual-cubic": cmd_dual_cubic,
    "decompose-binary": cmd_decompose_binary,
    "verify-powersum": cmd_verify_powersum,
    "betti": cmd_betti,
    "spinor-check": cmd_spinor_check,
    "spinor-section": cmd_spinor_section,
    "quadratic-relation": cmd_quadratic_relation,
    "vsp-invariants": cmd_vsp_invariants,
    "reproduce-paper": cmd_reproduce_paper,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or gfp:<prime> (default gfp:$APOLAR_DEFAULT_PRIME or 31991)")
    common.add_argument("--prime", type=int, help="shorthand for --field gfp:<prime>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=bt.DEFAULT_BUDGET, help="max Koszul matrix entries")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="apolar", description="Apolarity, syzygies and power sums.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("apolar-ideal", "graded pieces of the apolar ideal")
    s.add_argument("poly", nargs="?")
    s.add_argument("--degree", type=int)
    s.add_argument("--random", help="n=<n>,d=<d>: seeded general form")

    s = add("hilbert", "Hilbert function of the apolar ring")
    s.add_argument("poly", nargs="?")
    s.add_argument("--random", help="n=<n>,d=<d>: seeded general form")
    s.add_argument("--random-cubic", dest="random_cubic", help="n=<n>: seeded general cubic")
    s.add_argument("--expect", help="expected Hilbert function, e.g. (1,5,5,1)")

    s = add("dual-cubic", "dual socle generator of quadrics, or of a random spinor section")
    s.add_argument("--quadrics", help="';'-separated operators in d0..dn")
    s.add_argument("--degree", type=int, default=3)

    s = add("decompose-binary", "Sylvester decomposition of a binary form")
    s.add_argument("poly")
    s.add_argument("--generator", help="apolar operator in d0, d1 to use instead of the minimal one")
    s.add_argument("--allow-obstruction", action="store_true", help="exit 0 when an obstruction is reported")

    s = add("verify-powersum", "apolarity and power-sum coefficients for given points")
    s.add_argument("poly")
    s.add_argument("--points", required=True, help="'a0,a1,...; b0,b1,...'")

    s = add("betti", "graded Betti table via Koszul strands")
    s.add_argument("--example", choices=sorted(EXAMPLES) + ["spinor"])
    s.add_argument("--apolar")
    s.add_argument("--points")
    s.add_argument("--generators", help="';'-separated homogeneous polynomials")
    s.add_argument("--r-max", dest="r_max", type=int, help="default: the form degree for apolar rings, else 3")
    s.add_argument("--codim", type=int, help="also report the degree for this codimension")

    s = add("spinor-check", "equations, parametrisation and Clifford ranks of the spinor variety")
    s.add_argument("--samples", type=int, default=50)

    add("spinor-section", "random P4 section, its dual cubic and the quadratic relation")

    s = add("quadratic-relation", "quadratic relations among the apolar quadrics of a cubic in 5 variables")
    s.add_argument("poly", nargs="?")
    s.add_argument("--random", help="n=4,d=3")

    add("vsp-invariants", "intersection numbers of the lines on the spinor variety")

    s = add("reproduce-paper", "run every reproduction check")
    s.add_argument("--quick", action="store_true", help="smaller seed sweeps")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "random_cubic", None):
        n = args.random_cubic.split("=")[-1]
        args.random = f"n={n},d=3"
    try:
        field = _field(args)
        payload, ok = COMMANDS[args.command](args, field)
    except (ParseError, UsageError, CharacteristicError, bt.BudgetExceeded, ap.PreconditionError,
            sp.SectionError, ap.SocleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    meta = {"field": str(field), "seed": args.seed, "ok": ok}
    text = render(args.command, payload, meta, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
