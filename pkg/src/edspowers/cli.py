"""Command-line front end.  Every subcommand prints JSON.

Exit codes: 0 success / claim reproduced, 1 claim not reproduced,
2 invalid input or fixture, 3 skipped for lack of newform data.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .arith import format_rational, is_prime, primes_between
from .curves import parse_point

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_SKIPPED = 0, 1, 2, 3


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    try:
        return format_rational(x)
    except Exception:
        return str(x)


def _emit(obj, out=None):
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    print(text)


def parse_primes(spec: str) -> list:
    """'3..47' (odd primes in the range) or a comma list."""
    if ".." in spec:
        lo, hi = (int(s) for s in spec.split(".."))
        return [p for p in primes_between(lo - 1, hi) if p != 2]
    out = [int(s) for s in spec.split(",") if s.strip()]
    bad = [p for p in out if not is_prime(p)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    return out


def _ints(spec):
    return [int(s) for s in spec.split(",") if s.strip()] if spec else []


def _newforms(arg):
    if not arg:
        return None
    from .cases import load_newform_files
    return load_newform_files(arg.split(","))


def _jobs(n):
    return n if n else (os.cpu_count() or 1)


# ---------------------------------------------------------------- subcommands


def cmd_eds_scan(a):
    from .eds import check_divisibility, divisor_constraints, eds_sequence, find_perfect_powers
    P = parse_point(a.point)
    es = eds_sequence(a.D, P, a.max_index)
    wanted = set(_ints(a.powers))
    hits = [(m, r, l) for m, r, l in find_perfect_powers(es, max(wanted) if wanted else 61)
            if not wanted or l in wanted]
    _emit({
        "D": a.D, "point": P,
        "entries": [{"m": e.m, "A": str(e.A), "B": str(e.B), "C": str(e.C)} for e in es],
        "divisibility": check_divisibility(es),
        "perfect_powers": [{"m": m, "root": r, "l": l} for m, r, l in hits],
        "constraints": [{"q": c.q, "n": c.n} for c in divisor_constraints(es)],
    }, a.json)
    return EXIT_OK


def _inv_json(inv, gamma):
    c4, delta = inv.twisted(gamma)
    return {"c4": c4, "delta": delta, "j": inv.j, "gamma": gamma}


def cmd_frey_decompose(a):
    from .frey import coprime_outside, decompose, frey_invariants, has_cm_candidate
    fd = decompose(a.D, parse_point(a.point))
    inv = frey_invariants(fd.a, fd.z, fd.w)
    out = {"a": fd.a, "a_hat": fd.a_hat, "z": fd.z, "w": fd.w, "B": fd.B, "identity": fd.check(),
           "coprime_outside_2a": coprime_outside(inv), "cm_possible": has_cm_candidate(fd)}
    out.update(_inv_json(inv, 1))
    _emit(out, a.json)
    return EXIT_OK


def cmd_frey_invariants(a):
    from fractions import Fraction
    from .frey import frey_invariants
    inv = frey_invariants(a.a, a.z, a.w)
    _emit(_inv_json(inv, Fraction(a.gamma)), a.json)
    return EXIT_OK


def cmd_descent_class(a):
    from .descent2 import descent_summary
    _emit(descent_summary(parse_point(a.point), a.D), a.json)
    return EXIT_OK


def cmd_conductor_classify(a):
    from .conductor import classify_table1, tate_profile
    prof = classify_table1(a.z, a.w)
    tate = tate_profile(a.z, a.w)
    agree = tuple(prof.exponents) == tuple(tate)
    _emit({"z": a.z, "w": a.w, "row": prof.row, "table": prof.exponents, "tate": tate,
           "agree": agree, "gamma": prof.gamma}, a.json)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_conductor_tate(a):
    from .conductor import tate
    from .curves import rational_model
    coeffs = [c.strip() for c in a.model.split(",")]
    if len(coeffs) != 5:
        raise ValueError("--model needs a1,a2,a3,a4,a6")
    r = tate(rational_model(coeffs), a.p)
    _emit({"p": r.p, "exponent": r.f, "kodaira": r.kodaira, "tamagawa": r.tamagawa,
           "disc_valuation": r.disc_val, "minimal_model": list(r.model.a)}, a.json)
    return EXIT_OK


def cmd_cocycle_verify(a):
    from .cocycle import (check_certificate, setup, unit_obstruction_dm17, verify_coboundary,
                          verify_cocycle, verify_gamma_equivalence, verify_twist)
    G = setup(a.case)
    out = {"cocycle_curve": verify_cocycle(G, G.c_curve), "cocycle_split": verify_cocycle(G, G.c_split),
           "twist": verify_twist(G)}
    cob = verify_coboundary(G)
    out["coboundary"] = cob["curve_over_split"] or cob["split_over_curve"]
    if a.case == "dm17":
        cert = unit_obstruction_dm17()
        out["unit_system_inconsistent"] = not cert.consistent and check_certificate(cert)
        out["gamma_equivalence"] = all(verify_gamma_equivalence().values())
    _emit({"case": a.case, "checks": {k: "pass" if v else "fail" for k, v in out.items()}}, a.json)
    return EXIT_OK if all(out.values()) else EXIT_FAIL


def cmd_irred_check(a):
    from .irreducibility import point_irreducible
    P = parse_point(a.point)
    ls = _ints(a.l) or [3, 5, 7, 11, 13, 17]
    res = [point_irreducible(l, a.D, P) for l in ls]
    _emit([{"l": v.l, "verdict": v.verdict, "reason": v.reason} for v in res], a.json)
    return EXIT_OK


def cmd_descent_curves(a):
    from .power_descent import descent_curves_d125, genus_hyper
    _emit([{"i": i, "curve": str(c), "genus": genus_hyper(c)}
           for i, c in enumerate(descent_curves_d125(a.l), 1)], a.json)
    return EXIT_OK


def cmd_descent_local(a):
    from .power_descent import descent_curves_d125, local_points_exist
    curves = descent_curves_d125(a.l)
    idx = [a.i] if a.i else range(1, len(curves) + 1)
    ps = _ints(a.p) or [2, 3, 5]
    out = [{"i": i, "curve": str(curves[i - 1]),
            "local": {str(p): local_points_exist(curves[i - 1], p) for p in ps}} for i in idx]
    _emit(out, a.json)
    return EXIT_OK


def cmd_fetch(a):
    from .newforms import fetch_newforms
    ns = fetch_newforms(a.level, a.char_orbit, a.cache, char_modulus=a.char_modulus, char_order=a.char_order)
    _emit({"level": a.level, "records": len(ns), "source": ns.provenance})
    return EXIT_OK


def cmd_eliminate(a):
    from .cases import CASES, FAMILY_CASES, run_case, run_family_case
    primes = parse_primes(a.primes) if a.primes else None
    nf = _newforms(a.newforms)
    if a.case in CASES:
        res = run_case(a.case, lmax=a.lmax, primes=primes, newforms=nf, jobs=_jobs(a.jobs),
                       full_space=a.full_space)
        _emit(res.to_json(), a.json)
        return res.exit_code
    if a.case not in FAMILY_CASES:
        raise ValueError(f"unknown case {a.case!r}")
    cons = _ints(a.constraints) if a.constraints is not None else None
    run = run_family_case(a.case, constraints=cons, primes=primes, lmax=a.lmax, jobs=_jobs(a.jobs),
                          newforms=nf, full_space=a.full_space)
    _emit(run.to_json(), a.json)
    return run.exit_code


def cmd_run(a):
    from .cases import bound_exponents, run_case
    kw = dict(lmax=a.lmax, max_index=a.max_index, newforms=_newforms(a.newforms), jobs=_jobs(a.jobs),
              primes=parse_primes(a.primes) if a.primes else None)
    if a.case:
        res = run_case(a.case, **kw)
    else:
        if a.D is None or a.point is None:
            raise ValueError("give --case or both --D and --point")
        res = bound_exponents(a.D, parse_point(a.point), **kw)
    _emit(res.to_json(), a.json)
    return res.exit_code


def cmd_report(a):
    """Run a case and write report.json plus figures into --out."""
    from .cases import CASES, FAMILY_CASES, run_case, run_family_case
    from .eds import eds_sequence
    from .plotting import plot_bp, plot_growth, plot_survivors
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    figs = []
    if a.case in CASES:
        c = CASES[a.case]
        res = run_case(a.case, lmax=a.lmax, jobs=_jobs(a.jobs))
        payload = res.to_json()
        figs.append(plot_growth(eds_sequence(c.D, c.point, 12), out / "growth.png", f"{c.name}: D = {c.D}"))
        reports = [(f"{cl.parity}", cl.report) for cl in res.classes if cl.report is not None]
        code = res.exit_code
    elif a.case in FAMILY_CASES:
        run = run_family_case(a.case, lmax=a.lmax, jobs=_jobs(a.jobs))
        payload = run.to_json()
        reports = [(a.case, run.report)] if run.report else []
        code = run.exit_code
    else:
        raise ValueError(f"unknown case {a.case!r}")
    for tag, rep in reports:
        figs.append(plot_survivors(rep, out / f"survivors_{tag}.png"))
        figs.append(plot_bp(rep, out / f"bp_{tag}.png"))
    payload["figures"] = [f.name for f in figs]
    (out / "report.json").write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n",
                                     encoding="utf-8")
    print(json.dumps({"status": payload["status"], "dir": str(out), "figures": payload["figures"]}, indent=2))
    return code


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edspowers", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def group(name, help):
        return sub.add_parser(name, help=help).add_subparsers(dest="action", required=True)

    def leaf(g, name, func, help, point=False, out=True):
        p = g.add_parser(name, help=help)
        if point:
            p.add_argument("--D", type=int, required=True)
            p.add_argument("--point", required=True,
                           help="x,y with rational coordinates; write --point=-4,2 for a negative x")
        if out:
            p.add_argument("--json", help="also write the output here")
        p.set_defaults(func=func)
        return p

    g = group("eds", "denominator sequences")
    p = leaf(g, "scan", cmd_eds_scan, "entries, divisibility, perfect powers and divisor constraints", True)
    p.add_argument("--max-index", type=int, default=12)
    p.add_argument("--powers", help="comma list of exponents to look for (default: primes up to 61)")

    g = group("frey", "decomposition and Frey curves")
    leaf(g, "decompose", cmd_frey_decompose, "(a, a_hat, z, w, B) and invariants of a point", True)
    p = leaf(g, "invariants", cmd_frey_invariants, "c4, discriminant and j of E^gamma_{a,z,w}")
    for k in ("a", "z", "w"):
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("--gamma", default="1")

    g = group("descent", "2-descent classes and the small exponent descent for D = 125")
    leaf(g, "class", cmd_descent_class, "descent images of a point", True)
    p = leaf(g, "curves", cmd_descent_curves, "the four curves C_i for exponent l")
    p.add_argument("--l", type=int, required=True)
    p = leaf(g, "local", cmd_descent_local, "Q_p solubility of the curves C_i")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--i", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--p", help="comma list of primes (default 2,3,5)")

    g = group("conductor", "conductor exponents")
    p = leaf(g, "classify", cmd_conductor_classify, "exponent at 2 of E^gamma_{1,z,w}: table vs Tate")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p = leaf(g, "tate", cmd_conductor_tate, "Tate's algorithm for a rational model")
    p.add_argument("--model", required=True, help="a1,a2,a3,a4,a6")
    p.add_argument("--p", type=int, required=True)

    g = group("cocycle", "Galois cocycle data")
    p = leaf(g, "verify", cmd_cocycle_verify, "check cocycle, coboundary and twist identities")
    p.add_argument("--case", choices=("d125", "dm17"), required=True)

    g = group("irred", "irreducibility of the mod l representation")
    p = leaf(g, "check", cmd_irred_check, "verdicts for a point", True)
    p.add_argument("--l", help="comma list of primes")

    p = sub.add_parser("fetch", help="download newforms of a space into the fixture directory")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--char-orbit", default="a")
    p.add_argument("--char-modulus", type=int, default=1)
    p.add_argument("--char-order", type=int, default=1)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_fetch)

    def with_elim(p):
        p.add_argument("--newforms", help="comma separated fixture files (default: bundled data)")
        p.add_argument("--primes", help="auxiliary primes, 'a..b' or a comma list")
        p.add_argument("--lmax", type=int, default=1000)
        p.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
        p.add_argument("--json")
        return p

    p = with_elim(sub.add_parser("eliminate", help="newform elimination for a named case"))
    p.add_argument("--case", required=True)
    p.add_argument("--constraints", help="primes known to divide B, comma list")
    p.add_argument("--full-space", action="store_true", help="D = 125: use every form at 6400, not only twists")
    p.set_defaults(func=cmd_eliminate)

    p = with_elim(sub.add_parser("run", help="full pipeline for a table case or a point"))
    p.add_argument("--case")
    p.add_argument("--D", type=int)
    p.add_argument("--point")
    p.add_argument("--max-index", type=int, default=12)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="run a case and write JSON plus figures")
    p.add_argument("--case", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lmax", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=0)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    from .newforms import NewformDataError
    try:
        return args.func(args)
    except (NewformDataError, ValueError, ArithmeticError, KeyError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
