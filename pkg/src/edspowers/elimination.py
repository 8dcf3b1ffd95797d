"""Trace-of-Frobenius elimination of newforms for the Frey curves.

For an auxiliary prime p and a newform f, every residual Frey curve mod p gives
a congruence that f must satisfy mod some prime above l.  Taking the product of
the corresponding norms over all residual curves gives an integer B_p(f); if f
arises from a solution then l divides B_p(f) for every p != l.

Rational Frey curves (a = 1) compare a_p(f) with a_p(E) directly.  For Q-curves
defined over a field K, a prime above p has residue degree e = order of Frob_p
in Gal(K/Q) and the comparison is between the trace of Frob_p^e under f and
chi(gamma) * a_{p^e}(E_{a,z,w}), where chi(gamma) is the quadratic character of
the twist parameter in the residue field.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .arith import (FiniteField, _mulmod_poly, char_norm_at, factorint, least_nonresidue, legendre,
                    poly_deriv, poly_gcd_mod, primes_between, primes_up_to, resultant, sqrt_mod)
from .curves import trace_fp, trace_fp2, trace_power


# ---------------------------------------------------------------- Frey families


@dataclass(frozen=True)
class FreyFamily:
    """The data of a Frey curve family E^gamma_{a,z,w} needed at auxiliary primes."""
    name: str
    D: int
    a: int
    a_hat: int
    residue_degree: Callable[[int], int]
    gamma_character: Callable[[int], int]
    bad_primes: tuple = ()

    @property
    def rational(self) -> bool:
        return self.a == 1


def rational_family(D: int) -> FreyFamily:
    return FreyFamily(f"E_1(D={D})", D, 1, D, lambda p: 1, lambda p: 1, tuple(sorted({2} | set(factorint(abs(D))))))


def _order_mod(p: int, n: int, pm: bool = True) -> int:
    """Order of p in (Z/n)^*, or in (Z/n)^*/{+-1} when pm is set."""
    x, k = p % n, 1
    while x != 1 and not (pm and x == n - 1):
        x = x * p % n
        k += 1
    return k


@lru_cache(maxsize=None)
def _d125_gamma_char(p: int) -> int:
    from .cocycle import setup_d125
    gamma = setup_d125().gamma
    k = _order_mod(p, 40, pm=False)
    F = FiniteField(p, k)
    zeta = F.element_of_order(40)
    theta = zeta + zeta.inverse()
    g = F.zero()
    pw = F.one()
    for c in gamma.coeffs():
        g = g + F(c) * pw
        pw = pw * theta
    # gamma lies in the real subfield of Q(zeta20), whose residue field is F_{p^e}
    e = _order_mod(p, 20)
    return g.quadratic_character(e)


def d125_qcurve_family() -> FreyFamily:
    return FreyFamily("E^gamma_125 over Q(zeta20)^+", 125, 125, 1,
                      lambda p: _order_mod(p, 20), _d125_gamma_char, (2, 5))


def _dm17_degree(p: int) -> int:
    return 1 if legendre(2, p) == 1 and legendre(-17, p) == 1 else 2


def _dm17_gamma_char(p: int) -> int:
    # gamma = 1 + 3 sqrt(2)
    if _dm17_degree(p) == 1:
        return legendre(1 + 3 * sqrt_mod(2, p), p)
    if legendre(2, p) == 1:
        return 1
    return legendre(-17, p)   # Norm(1 + 3 sqrt 2) = -17


def dm17_qcurve_family() -> FreyFamily:
    return FreyFamily("E^gamma_-17 over Q(sqrt2, sqrt-17)", -17, -17, 1, _dm17_degree, _dm17_gamma_char, (2, 17))


# ---------------------------------------------------------------- residual curves


def residual_frey_set(p: int, fam: FreyFamily, p_divides_B: bool = False, solutions_only: bool = False):
    """All (z, w) in F_p^2, not both zero, split into good and multiplicative pairs.

    With `p_divides_B` only multiplicative pairs (w^2 = a z^4) are kept.  With
    `solutions_only`, pairs are kept only if (w^2 - a z^4)/a_hat is a fourth power
    mod p, i.e. the pair lifts to a solution of w^2 = a z^4 + a_hat B^4 mod p."""
    if p == 2 or p in fam.bad_primes or fam.a % p == 0 or fam.a_hat % p == 0:
        raise ValueError(f"p = {p} is not a valid auxiliary prime for {fam.name}")
    fourth = {pow(x, 4, p) for x in range(p)}
    inv_hat = pow(fam.a_hat, -1, p)
    good, mult = [], []
    for z in range(p):
        for w in range(p):
            if z == 0 and w == 0:
                continue
            r = (w * w - fam.a * z ** 4) % p
            if r == 0:
                mult.append((z, w))
            elif not p_divides_B and (not solutions_only or r * inv_hat % p in fourth):
                good.append((z, w))
    return good, mult


@dataclass(frozen=True)
class LocalData:
    """Residual information at one auxiliary prime."""
    p: int
    e: int
    traces: tuple          # possible values of chi(gamma) a_{p^e}(E) over good pairs
    multiplicative: bool   # whether p | B is possible for some residual pair

    @property
    def q(self) -> int:
        return self.p ** self.e


def _curve_trace(fam: FreyFamily, p: int, z: int, w: int, f: int) -> int:
    """a_{p^f}(E_{a,z,w}) with sqrt(a) in F_{p^f}."""
    a = fam.a % p
    if f == 1:
        s = sqrt_mod(a, p)
        a2, a4 = 4 * s * z % p, 2 * (a * z * z + s * w) % p
        return trace_fp(4 * a2 % p, 2 * a4 % p, 0, p)
    # s = c t with t^2 = r the non-residue used for F_{p^2}
    c = sqrt_mod(a * pow(least_nonresidue(p), -1, p) % p, p)
    a2 = (0, 4 * c * z % p)
    a4 = (2 * a * z * z % p, 2 * c * w % p)
    return trace_fp2((4 * a2[0] % p, 4 * a2[1] % p), (2 * a4[0] % p, 2 * a4[1] % p), (0, 0), p)


def local_data(fam: FreyFamily, p: int, p_divides_B: bool = False, solutions_only: bool = False) -> LocalData:
    good, mult = residual_frey_set(p, fam, p_divides_B, solutions_only)
    e = fam.residue_degree(p)
    f = 1 if legendre(fam.a, p) == 1 else 2
    if e % f:
        raise ArithmeticError(f"sqrt({fam.a}) does not lie in the residue field at {p}")
    chi = fam.gamma_character(p)
    # (z, w) -> (lz, l^2 w) twists E by l, so one representative per orbit suffices
    keep = set(good)
    reps = [(1, w) for w in range(p) if (1, w) in keep]
    nr = least_nonresidue(p)
    reps += [(0, w) for w in (1, nr) if (0, w) in keep]
    signs = (1, -1) if e % 2 else (1,)
    traces = set()
    for z, w in reps:
        t = trace_power(_curve_trace(fam, p, z, w, f), p ** f, e // f)
        for s in signs:
            traces.add(chi * s * t)
    return LocalData(p, e, tuple(sorted(traces)), bool(mult))


# ---------------------------------------------------------------- newform side


def frobenius_power_trace(ap, eps_p, p: int, e: int):
    """Trace of Frob_p^e for a form with a_p and character value eps(p)."""
    s_prev, s = 2 * ap.field.one(), ap
    for _ in range(e - 1):
        s_prev, s = s, ap * s - eps_p * p * s_prev
    return s if e >= 1 else s_prev


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"norm {x} is not an integer")
    return x.numerator


def bp_value(f, loc: LocalData) -> int:
    """B_p(f): product of the norms of all allowed trace differences (0 = no information)."""
    eps = f.eps(loc.p)
    if eps is None:
        return 0
    T = frobenius_power_trace(f.a(loc.p), eps, loc.p, loc.e)
    cp = T.charpoly()
    out = 1
    for t in loc.traces:
        out *= _as_int(char_norm_at(cp, t))
        if out == 0:
            return 0
    if loc.multiplicative:
        q1 = loc.q + 1
        out *= _as_int(char_norm_at(cp, q1)) * _as_int(char_norm_at(cp, -q1))
    return abs(out)


@lru_cache(maxsize=None)
def _poly_disc(poly: tuple) -> int:
    r = resultant(list(poly), poly_deriv(list(poly)))
    return r.numerator


def _reduce_coeffs(x, l: int) -> Optional[list]:
    out = []
    for c in x.coeffs():
        if c.denominator % l == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, l) % l)
    return out


def prime_ideal_survives(f, locs: list, l: int) -> Optional[bool]:
    """Refinement of the norm test: is there one prime lambda above l dividing every
    non-zero B_p(f) (as an element of the coefficient field), p != l?

    The primes above l correspond to the irreducible factors of the defining
    polynomial mod l when l does not divide its discriminant; the common factor
    of all B_p mod l is a gcd of polynomials over F_l.  Returns None when l
    divides the discriminant (the caller keeps the norm verdict)."""
    poly = tuple(f.field.poly)
    if f.degree == 1 or _poly_disc(poly) % l == 0:
        return None
    g = [int(c) % l for c in poly]
    common = g
    for loc in locs:
        if loc.p == l:
            continue
        eps = f.eps(loc.p)
        if eps is None:
            continue
        T = frobenius_power_trace(f.a(loc.p), eps, loc.p, loc.e)
        t_mod = _reduce_coeffs(T, l)
        if t_mod is None:
            return None
        vals = list(loc.traces)
        if loc.multiplicative:
            vals += [loc.q + 1, -(loc.q + 1)]
        prod = [1]
        exact_zero = False
        for t in vals:
            if T == t:
                exact_zero = True
                break
            diff = list(t_mod) + [0] * max(0, 1 - len(t_mod))
            diff[0] = (diff[0] - t) % l
            prod = _mulmod_poly(prod, diff, g, l)
            if not prod:
                break
        if exact_zero:
            continue          # B_p = 0 carries no information
        common = poly_gcd_mod(common, prod, l) if prod else common
        if len(common) <= 1:
            return False
    return True


def trace_condition(f, l: int, loc: LocalData) -> bool:
    """True iff some residual curve at p is compatible with f modulo a prime above l."""
    return bp_value(f, loc) % l == 0


# ---------------------------------------------------------------- elimination


@dataclass
class FormResult:
    label: str
    level: int
    degree: int
    bp: dict                       # p -> B_p(f)
    survivors: list                # primes l in [lmin, lmax] that survive
    large: list = field(default_factory=list)   # surviving primes above lmax
    unfactored: int = 1            # cofactor above lmax that could not be split
    unbounded: bool = False        # every B_p vanished: no exponent is eliminated
    witnesses: dict = field(default_factory=dict)  # l -> (p, B_p mod l)
    ideal_witnesses: list = field(default_factory=list)  # l killed only by the prime-ideal test

    def survives_above(self, l0: int) -> bool:
        return self.unbounded or self.unfactored > 1 or any(l > l0 for l in self.survivors + self.large)

    def to_json(self) -> dict:
        return {
            "label": self.label, "level": self.level, "degree": self.degree,
            "survivors": self.survivors, "large_survivors": self.large,
            "unfactored_cofactor": str(self.unfactored) if self.unfactored > 1 else None,
            "unbounded": self.unbounded,
            "witnesses": {str(l): {"p": p, "residue": r} for l, (p, r) in sorted(self.witnesses.items())},
            "prime_ideal_eliminated": self.ideal_witnesses,
        }


@dataclass
class EliminationReport:
    family: str
    primes: list
    constraints: list
    lmin: int
    lmax: int
    forms: list

    def survivors(self, l0: Optional[int] = None) -> list:
        """Forms that survive for some l > l0 (default: l >= lmin)."""
        l0 = self.lmin - 1 if l0 is None else l0
        return [r for r in self.forms if r.survives_above(l0)]

    def surviving_exponents(self, l0: Optional[int] = None) -> set:
        l0 = self.lmin - 1 if l0 is None else l0
        out = set()
        for r in self.forms:
            out |= {l for l in r.survivors + r.large if l > l0}
        return out

    def unbounded(self) -> bool:
        return any(r.unbounded or r.unfactored > 1 for r in self.forms)

    def to_json(self) -> dict:
        return {"family": self.family, "primes": self.primes, "constraints": self.constraints,
                "lmin": self.lmin, "lmax": self.lmax, "forms": [r.to_json() for r in self.forms]}


def _split_cofactor(n: int, lmax: int) -> tuple[list, int]:
    for l in primes_up_to(lmax):
        while n % l == 0:
            n //= l
    if n == 1:
        return [], 1
    if n.bit_length() > 200:
        return [], n
    return sorted(q for q in factorint(n) if q > lmax), 1


def analyse_form(f, locs: list, lmin: int, lmax: int, ideal_test: bool = True) -> FormResult:
    bp = {loc.p: bp_value(f, loc) for loc in locs}
    nonzero = [v for v in bp.values() if v]
    res = FormResult(f.label, f.level, f.degree, bp, [])
    if not nonzero:
        res.unbounded = True
        res.survivors = [l for l in primes_between(lmin - 1, lmax)]
        return res
    for l in primes_between(lmin - 1, lmax):
        witness = next(((p, v % l) for p, v in bp.items() if p != l and v and v % l), None)
        if witness is not None:
            res.witnesses[l] = witness
        elif ideal_test and prime_ideal_survives(f, locs, l) is False:
            res.ideal_witnesses.append(l)
        else:
            res.survivors.append(l)
    g = 0
    for v in nonzero:
        g = math.gcd(g, v)
    large, cof = _split_cofactor(g, lmax)
    # a large l must still divide every B_p with p != l; the auxiliary primes are small
    res.large = [l for l in large if all(v % l == 0 for p, v in bp.items() if p != l and v)
                 and not (ideal_test and prime_ideal_survives(f, locs, l) is False)]
    res.unfactored = cof
    return res


def _worker(args):
    return analyse_form(*args)


def _label_key(label: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in label.replace("-", ".").split("."))


def eliminate(fam: FreyFamily, newforms, primes, constraints=(), lmin: int = 3, lmax: int = 1000,
              jobs: int = 1, solutions_only: bool = False, ideal_test: bool = True) -> EliminationReport:
    """Run the elimination for every newform; `constraints` are primes known to divide B.

    With `ideal_test` an exponent that passes the norm test is also checked prime by
    prime above l; without it only integer norms are compared."""
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one auxiliary prime")
    forms = list(newforms)
    for f in forms:
        bad = [p for p in primes if f.level % p == 0]
        if bad:
            raise ValueError(f"auxiliary primes {bad} divide the level {f.level}")
    locs = [local_data(fam, p, p in set(constraints), solutions_only) for p in primes]
    tasks = [(f, locs, lmin, lmax, ideal_test) for f in forms]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_worker, tasks))
    else:
        results = [_worker(t) for t in tasks]
    results.sort(key=lambda r: (r.level, _label_key(r.label)))
    return EliminationReport(fam.name, primes, sorted(constraints), lmin, lmax, results)


def verify_certificates(report: EliminationReport, newforms, fam: FreyFamily, solutions_only: bool = False) -> bool:
    """Recompute every witness: l must not divide the recorded B_p."""
    by_label = {f.label: f for f in newforms}
    cache = {}
    for r in report.forms:
        f = by_label[r.label]
        for l, (p, residue) in r.witnesses.items():
            if p not in cache:
                cache[p] = local_data(fam, p, p in set(report.constraints), solutions_only)
            v = bp_value(f, cache[p])
            if v % l == 0 or v % l != residue:
                return False
        for l in r.ideal_witnesses:
            locs = [local_data(fam, p, p in set(report.constraints), solutions_only) for p in report.primes]
            if prime_ideal_survives(f, locs, l) is not False:
                return False
    return True


def default_primes(bound: int, exclude=()) -> list:
    return [p for p in primes_up_to(bound - 1) if p != 2 and p not in set(exclude)]
