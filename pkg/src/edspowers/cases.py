"""Worked cases: from a point on E_D to a statement about excluded exponents.

A run splits the multiples m*P into classes on which a_m is constant (all m,
or odd and even m), and for each class combines

  * divisor constraints: every prime dividing B_{n0} divides B_m for m in the
    class (n0 = 1 for odd or all m, 2 for even m),
  * the lowered levels and the newforms there,
  * irreducibility of the mod l representation,
  * trace elimination at auxiliary primes.

An exponent l is excluded when every class excludes it.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arith import integer_nth_root, padic_val, prime_divisors, primes_between
from .conductor import lowered_level, qcurve_levels
from .curves import ed_curve
from .eds import check_divisibility, eds_sequence
from .elimination import (EliminationReport, FreyFamily, d125_qcurve_family, dm17_qcurve_family,
                          eliminate, rational_family)
from .frey import decompose
from .irreducibility import EXCEPTIONAL_POINTS, a1_irreducible, frey_irreducible
from .newforms import NewformSet, genus_x0, load_level, load_newforms, twists_of

SKIPPED = "skipped: data"
PRIMES_DM17 = (3, 5, 7, 11, 13, 19, 29, 31, 37, 41, 43, 47, 59, 67, 73, 97, 113)

F = Fraction


# ---------------------------------------------------------------- exponent statements


@dataclass(frozen=True)
class ExponentStatement:
    """All primes l > bound except those in `exceptions`."""
    bound: int
    exceptions: frozenset = frozenset()

    def excludes(self, l: int) -> bool:
        return l > self.bound and l not in self.exceptions

    def __str__(self):
        s = f"l > {self.bound}"
        if self.exceptions:
            s += ", " + ", ".join(f"l != {q}" for q in sorted(self.exceptions))
        return s


def parse_statement(text: str) -> ExponentStatement:
    m = re.fullmatch(r"\s*l\s*>\s*(\d+)((?:\s*,\s*l\s*!=\s*\d+)*)\s*", text)
    if not m:
        raise ValueError(f"cannot parse exponent statement {text!r}")
    exc = frozenset(int(x) for x in re.findall(r"\d+", m.group(2)))
    return ExponentStatement(int(m.group(1)), exc)


def statement_from(excluded: set, lmax: int, above: bool) -> Optional[ExponentStatement]:
    """Summarise an excluded set of primes in [3, lmax]; None if nothing large is excluded."""
    if not above:
        return None
    kept = [l for l in exponent_range(lmax) if l not in excluded]
    bound, rest = 2, []
    for l in kept:
        if rest or l != _next_prime_after(bound):
            rest.append(l)
        else:
            bound = l
    return ExponentStatement(bound, frozenset(rest))


def exponent_range(lmax: int) -> list:
    """Odd primes l <= lmax."""
    return primes_between(2, lmax)


def _next_prime_after(n: int) -> int:
    return primes_between(n, 2 * n + 2)[0]


# ---------------------------------------------------------------- case table


@dataclass(frozen=True)
class CaseDescriptor:
    name: str
    D: int
    point: tuple
    expected: str
    note: str = ""


def _pt(x: str, y: str) -> tuple:
    return (F(x), F(y))


CASES = {
    "table3-i": CaseDescriptor("table3-i", 125, _pt("121/4", "1419/8"), "l > 2"),
    "table3-ii": CaseDescriptor("table3-ii", 125, _pt("500/121", "32250/1331"), "l > 5, l != 11",
                                "(121/4, -1419/8) + (0, 0)"),
    "table3-iii": CaseDescriptor("table3-iii", -17, _pt("-153/49", "1632/343"), "l > 17"),
    "table3-iv": CaseDescriptor("table3-iv", 3, _pt("1/4", "7/8"), "l > 2", "2 (3, 6)"),
    "table3-v": CaseDescriptor("table3-v", 3, _pt("27/121", "1098/1331"), "l > 17", "3 (3, -6)"),
    "table3-vi": CaseDescriptor("table3-vi", -2, _pt("9/4", "21/8"), "l > 2", "2 (-1, -1)"),
    "table3-vii": CaseDescriptor("table3-vii", -2, _pt("-1/169", "239/2197"), "l > 2", "3 (-1, 1)"),
    "table3-viii": CaseDescriptor("table3-viii", -2, _pt("4651250/1803649", "8388283850/2422300607"),
                                  "l > 5, l != 79", "5 (-1, -1) + (0, 0)"),
    "table3-ix": CaseDescriptor("table3-ix", -2, _pt("-8/9", "28/27"), "l > 3", "2 (-1, -1) + (0, 0)"),
}


# ---------------------------------------------------------------- per-class analysis


@dataclass
class ClassResult:
    parity: str
    n0: int
    a: int
    constraints: list
    levels: list
    genus: dict
    family: Optional[FreyFamily] = None
    status: str = "ok"
    reason: str = ""
    newform_count: int = 0
    report: Optional[EliminationReport] = None
    excluded: set = field(default_factory=set)
    above: bool = False
    blocked: dict = field(default_factory=dict)     # l -> stage that keeps l alive

    def to_json(self) -> dict:
        return {
            "parity": self.parity, "a": self.a, "constraints": self.constraints, "levels": self.levels,
            "genus": {str(k): v for k, v in sorted(self.genus.items())}, "status": self.status,
            "reason": self.reason, "newforms": self.newform_count,
            "not_excluded": {str(l): s for l, s in sorted(self.blocked.items())},
            "all_above_lmax_excluded": self.above,
            "elimination": self.report.to_json() if self.report else None,
        }


def split_classes(D: int, entries) -> list:
    avals = {e.m: decompose(D, e.point).a for e in entries}
    if len(set(avals.values())) == 1:
        return [("all", 1, list(entries))]
    odd = {v for m, v in avals.items() if m % 2}
    even = {v for m, v in avals.items() if m % 2 == 0}
    if len(odd) != 1 or len(even) != 1:
        raise ArithmeticError(f"a_m is not constant on parity classes: {avals}")
    return [("odd", 1, [e for e in entries if e.m % 2]), ("even", 2, [e for e in entries if e.m % 2 == 0])]


def rational_levels(D: int, members, two_divides: bool) -> list:
    """Lowered levels for a = 1.  If 2 | B, an l-th power (l >= 3) has ord_2 B >= 3,
    so only such samples fix the 2-adic type; a multiplicative 2 may or may not
    be removed by level lowering, so N/2 is kept as well."""
    out = set()
    for e in members:
        if two_divides and padic_val(e.B, 2) < 3:
            continue
        L = lowered_level(decompose(D, e.point))
        out.add(L.N)
        if L.exponents.get(2) == 1:
            out.add(L.N // 2)
    if not out:
        raise ArithmeticError("no sample with ord_2 B >= 3; increase the number of multiples")
    return sorted(out)


def _elimination_levels(D: int, a: int, w: int) -> tuple:
    """Levels whose newforms must be checked.  For D = -17 either GL_2 factor of
    the restriction of scalars gives a newform, so the lower level suffices."""
    levels = qcurve_levels(D, a, w)
    return levels[:1] if D == -17 else levels


def qcurve_family(D: int, a: int) -> Optional[FreyFamily]:
    if (D, a) == (125, 125):
        return d125_qcurve_family()
    if (D, a) == (-17, -17):
        return dm17_qcurve_family()
    return None


def qcurve_newforms(D: int, levels, root=None, full_space: bool = False) -> Optional[NewformSet]:
    """Newforms for the Q-curve levels, or None if a fixture is missing.

    For D = 125 the forms at 1280 carry the order 4 character of conductor 20;
    at 6400 only twists of those by characters of order dividing 4 are kept
    unless `full_space` is set."""
    if D == 125:
        base = load_level(1280, 20, 3, root)
        big = load_level(6400, 20, 3, root) if 6400 in levels else None
        if base is None or (6400 in levels and big is None):
            return None
        if big is None:
            return base
        extra = list(big) if full_space else twists_of(base, big)
        return NewformSet(list(base) + extra, f"{base.provenance}+{big.provenance}")
    sets = [load_level(N, root=root) for N in levels]
    if any(s is None for s in sets):
        return None
    recs = [r for s in sets for r in s]
    return NewformSet(recs, "+".join(s.provenance for s in sets))


def default_aux_primes(fam: FreyFamily, levels) -> list:
    if fam.D == -17 and not fam.rational:
        base = PRIMES_DM17
    else:
        base = primes_between(2, 49)
    bad = set(fam.bad_primes) | set(prime_divisors(abs(fam.a * fam.a_hat)))
    return [p for p in base if p not in bad and all(N % p for N in levels)]


def _irreducibility(cls: ClassResult, sample, members, D: int, l: int) -> Optional[str]:
    """None if irreducible for every hypothetical l-th power in the class, else the reason."""
    if cls.a == 1:
        if l > 7:
            return None
        if l == 7:
            v = a1_irreducible(7, sample.z, sample.w, D)
            return None if v.irreducible else v.reason
        pts = EXCEPTIONAL_POINTS.get(D, {}).get(l)
        if pts is None:
            return f"no exceptional point table for D = {D}"
        for e in members:
            if e.point in pts and integer_nth_root(e.B, l) is not None:
                return f"exceptional point {e.point} with B = {e.B} an l-th power"
        return None
    v = frey_irreducible(l, sample, B_factorization=cls.constraints)
    return None if v.irreducible else v.reason


def analyse_class(D: int, parity: str, n0: int, members, *, lmax: int, primes=None, root=None,
                  newforms=None, jobs: int = 1, full_space: bool = False) -> ClassResult:
    first = next(e for e in members if e.m == n0)
    sample = decompose(D, first.point)
    constraints = prime_divisors(first.B) if first.B > 1 else []
    a = sample.a
    if a == 1:
        levels = rational_levels(D, members, first.B % 2 == 0)
        fam = rational_family(D)
    else:
        fam = qcurve_family(D, a)
        try:
            levels = sorted({N for e in members for N in _elimination_levels(D, a, decompose(D, e.point).w)})
        except NotImplementedError:
            levels = []
    cls = ClassResult(parity, n0, a, constraints, levels, {N: genus_x0(N) for N in levels}, fam)
    if a != 1 and (fam is None or not levels):
        cls.status, cls.reason = SKIPPED, f"no level table or auxiliary data for the Q-curve with a = {a}"
        return cls

    # newforms
    if newforms is not None:
        forms = [f for f in newforms if f.level in levels]
    elif a == 1:
        forms = []
        for N in levels:
            if cls.genus[N] == 0:
                continue
            ns = load_level(N, root=root)
            if ns is None:
                cls.status, cls.reason = SKIPPED, f"no newform fixture for level {N}"
                return cls
            forms += list(ns)
    else:
        ns = qcurve_newforms(D, levels, root, full_space)
        if ns is None:
            cls.status, cls.reason = SKIPPED, f"no newform fixtures for levels {levels}"
            return cls
        forms = list(ns)
    cls.newform_count = len(forms)

    survivors_at: dict = {}
    large_alive = False
    if forms:
        aux = list(primes) if primes else default_aux_primes(fam, levels)
        aux = [p for p in aux if all(N % p for N in levels)]
        cls.report = eliminate(fam, forms, aux, constraints=[q for q in constraints if q in aux],
                               lmax=lmax, jobs=jobs)
        for r in cls.report.forms:
            for l in r.survivors:
                survivors_at.setdefault(l, []).append(r.label)
        large_alive = any(r.survives_above(lmax) for r in cls.report.forms)

    for l in exponent_range(lmax):
        why = _irreducibility(cls, sample, members, D, l)
        if why is not None:
            cls.blocked[l] = f"irreducibility: {why}"
        elif l in survivors_at:
            cls.blocked[l] = f"elimination: {len(survivors_at[l])} newform(s) survive"
        else:
            cls.excluded.add(l)
    big_ok = _irreducibility(cls, sample, members, D, _next_prime_after(max(lmax, 13))) is None
    cls.above = big_ok and not large_alive
    return cls


# ---------------------------------------------------------------- whole case


@dataclass
class CaseResult:
    case: str
    D: int
    point: tuple
    expected: Optional[str]
    classes: list
    lmax: int
    statement: Optional[ExponentStatement]
    status: str
    seconds: float = 0.0
    eds_ok: bool = True

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1}.get(self.status, 3)

    def to_json(self) -> dict:
        return {
            "case": self.case, "D": self.D, "point": [str(c) for c in self.point],
            "expected": self.expected, "computed": str(self.statement) if self.statement else None,
            "status": self.status, "lmax": self.lmax, "eds_divisibility": self.eds_ok,
            "classes": [c.to_json() for c in self.classes],
        }


def bound_exponents(D: int, P, *, max_index: int = 12, lmax: int = 1000, primes=None, root=None,
                    newforms=None, jobs: int = 1, full_space: bool = False, expected: Optional[str] = None,
                    name: str = "custom") -> CaseResult:
    t0 = time.perf_counter()
    P = (F(P[0]), F(P[1]))
    if not ed_curve(D).is_on(P):
        raise ValueError(f"{P} is not on y^2 = x^3 + {D}x")
    entries = eds_sequence(D, P, max_index)
    eds_ok = check_divisibility(entries)
    classes = [analyse_class(D, par, n0, mem, lmax=lmax, primes=primes, root=root, newforms=newforms,
                             jobs=jobs, full_space=full_space)
               for par, n0, mem in split_classes(D, entries)]
    excluded = set(exponent_range(lmax))
    for c in classes:
        excluded &= c.excluded
    skipped = any(c.status == SKIPPED for c in classes)
    stmt = None if skipped else statement_from(excluded, lmax, all(c.above for c in classes))
    if skipped:
        status = SKIPPED
    elif expected is None:
        status = "computed"
    else:
        want = parse_statement(expected)
        same = stmt is not None and all(want.excludes(l) == (l in excluded) for l in exponent_range(lmax))
        status = "pass" if same else "fail"
    return CaseResult(name, D, P, expected, classes, lmax, stmt, status, time.perf_counter() - t0, eds_ok)


def run_case(case, **kw) -> CaseResult:
    c = CASES[case] if isinstance(case, str) else case
    return bound_exponents(c.D, c.point, expected=c.expected, name=c.name, **kw)


def load_newform_files(paths) -> NewformSet:
    sets = [load_newforms(Path(p)) for p in paths]
    return NewformSet([r for s in sets for r in s], "+".join(s.provenance for s in sets))


# ---------------------------------------------------------------- elimination-only cases


@dataclass(frozen=True)
class FamilyCase:
    """One Frey family with fixed levels and divisor constraints.

    The claim is: no exponent l > bound survives, apart from `allowed`."""
    name: str
    D: int
    a: int
    constraints: tuple
    primes: tuple
    bound: int
    allowed: frozenset = frozenset()
    note: str = ""

    def family(self) -> FreyFamily:
        return rational_family(self.D) if self.a == 1 else qcurve_family(self.D, self.a)

    def levels(self, constraints) -> tuple:
        if (self.D, self.a) == (125, 1):
            return (5, 10)
        if (self.D, self.a) == (125, 125):
            return (1280, 6400)
        if (self.D, self.a) == (-17, 1):
            # 2 | B forces ord_2(w^2 - z^4) >= 8, which removes the level 2^8 * 17
            return (17, 34) if 2 in constraints else (17, 34, 2 ** 8 * 17)
        if (self.D, self.a) == (-17, -17):
            return (2 ** 5 * 17 ** 2, 2 ** 8 * 17 ** 2)
        raise KeyError(self.name)


_P50_125 = tuple(p for p in primes_between(2, 49) if p != 5)
_P50_17 = tuple(p for p in primes_between(2, 49) if p != 17)

FAMILY_CASES = {
    "d125": FamilyCase("d125", 125, 1, (2,), _P50_125, 2, note="multiples of P, a = 1"),
    "d125T": FamilyCase("d125T", 125, 125, (11,), _P50_125, 3, frozenset({11}),
                        "odd multiples of P + T, 11 | B"),
    "dm17": FamilyCase("dm17", -17, 1, (2, 3, 7), _P50_17, 3, note="multiples of 2P + 2Q, 2, 3, 7 | B"),
    "dm17T": FamilyCase("dm17T", -17, -17, (7,), PRIMES_DM17, 17, note="multiples of P + Q + T, 7 | B"),
}


@dataclass
class FamilyRun:
    case: FamilyCase
    levels: tuple
    constraints: tuple
    status: str
    missing: list
    report: Optional[EliminationReport]
    newforms: list
    seconds: float = 0.0

    @property
    def surviving(self) -> set:
        if self.report is None:
            return set()
        return self.report.surviving_exponents(self.case.bound)

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1}.get(self.status, 3)

    def to_json(self) -> dict:
        c = self.case
        return {
            "case": c.name, "D": c.D, "a": c.a, "levels": list(self.levels), "constraints": list(self.constraints),
            "claim": str(ExponentStatement(c.bound, c.allowed)), "status": self.status,
            "missing_levels": self.missing,
            "surviving_exponents_above_bound": sorted(self.surviving),
            "unbounded_forms": [r.label for r in self.report.forms if r.survives_above(10 ** 9)] if self.report else [],
            "elimination": self.report.to_json() if self.report else None,
        }


def _family_forms(case: FamilyCase, levels, root, newforms, full_space):
    """(forms, missing levels)."""
    have = {}
    if newforms is not None:
        for f in newforms:
            have.setdefault(f.level, []).append(f)
    if case.a != 1 and case.D == 125:
        if newforms is not None and all(N in have for N in levels):
            base, big = have[1280], have[6400]
        else:
            base, big = load_level(1280, 20, 3, root), load_level(6400, 20, 3, root)
            if base is None or big is None:
                return [], [N for N, s in ((1280, base), (6400, big)) if s is None]
        extra = list(big) if full_space else twists_of(base, big)
        return list(base) + extra, []
    forms, missing = [], []
    for N in levels:
        if N in have:
            forms += have[N]
            continue
        if genus_x0(N) == 0 and case.a == 1:
            continue
        ns = load_level(N, root=root)
        if ns is None:
            missing.append(N)
        else:
            forms += list(ns)
    return forms, missing


def run_family_case(name: str, *, constraints=None, primes=None, lmax: int = 1000, jobs: int = 1, root=None,
                    newforms=None, full_space: bool = False) -> FamilyRun:
    """Eliminate for one family.  Missing fixtures give "skipped: data"; the
    levels that are present are still processed."""
    t0 = time.perf_counter()
    case = FAMILY_CASES[name]
    cons = tuple(case.constraints if constraints is None else constraints)
    levels = case.levels(cons)
    forms, missing = _family_forms(case, levels, root, newforms, full_space)
    fam = case.family()
    aux = [p for p in (primes or case.primes) if all(N % p for N in levels if N not in missing)]
    report = None
    if forms:
        report = eliminate(fam, forms, aux, constraints=[q for q in cons if q in aux], lmax=lmax, jobs=jobs)
    run = FamilyRun(case, levels, cons, "", missing, report, forms)
    if missing:
        run.status = SKIPPED
    else:
        bad = run.surviving - case.allowed
        unbounded = report is not None and any(r.unbounded or r.unfactored > 1 for r in report.forms)
        run.status = "fail" if bad or unbounded else "pass"
    run.seconds = time.perf_counter() - t0
    return run
