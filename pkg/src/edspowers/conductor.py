"""Conductor exponents: Tate's algorithm over Q, the closed-form classifier for the
exponent at 2 of E^gamma_{1,z,w}, twist minimisation and lowered levels."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import as_fraction, factorint, padic_val, poly_gcd_mod, reduce_rational
from .curves import Weierstrass, rational_model
from .frey import FreyData, rational_frey_model

GAMMAS = (1, -1, 2, -2)


# ---------------------------------------------------------------- Tate's algorithm


@dataclass
class TateResult:
    p: int
    f: int
    kodaira: str
    tamagawa: int
    model: Weierstrass
    disc_val: int


def _v(x, p):
    return padic_val(x, p)


def _mod(x, p) -> int:
    return reduce_rational(x, p)


def _has_root(a, b, c, p) -> bool:
    """Does a T^2 + b T + c have a root mod p (a, b, c p-integral)?"""
    a, b, c = _mod(a, p), _mod(b, p), _mod(c, p)
    if p < 50:
        return any((a * t * t + b * t + c) % p == 0 for t in range(p))
    if a == 0:
        return b != 0 or c == 0
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _cubic_roots(b, c, d, p) -> int:
    """Number of distinct roots mod p of T^3 + bT^2 + cT + d."""
    b, c, d = _mod(b, p), _mod(c, p), _mod(d, p)
    if p < 200:
        return sum(1 for t in range(p) if (t ** 3 + b * t * t + c * t + d) % p == 0)
    f = [d, c, b, 1]
    # gcd with T^p - T counts the distinct roots
    xp = _powmod([0, 1], p, f, p)
    g = poly_gcd_mod(_sub(xp, [0, 1], p), f, p)
    return len(g) - 1


def _powmod(base, e, m, p):
    from .arith import _powmod_poly
    return _powmod_poly(base, e, m, p)


def _sub(f, g, p):
    from .arith import poly_sub_mod
    return poly_sub_mod(f, g, p)


def _integral_at(E: Weierstrass, p: int) -> Weierstrass:
    k = 0
    for i, c in zip((1, 2, 3, 4, 6), E.a):
        v = _v(c, p)
        if v != math.inf and v < 0:
            k = max(k, math.ceil(-v / i))
    if k:
        E = E.change(u=Fraction(1, p ** k))
    return E


def _singular_point_translation(E: Weierstrass, p: int) -> tuple[int, int]:
    """(r, t) moving the singular point of the reduction to (0, 0)."""
    a1, a2, a3, a4, a6 = E.a
    b2, b4, b6 = E.b2, E.b4, E.b6
    if p == 2:
        if _v(b2, 2) > 0:
            r = _mod(a4, 2)
            t = _mod(r * (1 + a2 + a4) + a6, 2)
        else:
            r = _mod(a3, 2)
            t = _mod(r + a4, 2)
    elif p == 3:
        r = _mod(-b6, 3) if _v(b2, 3) > 0 else _mod(-b2 * b4, 3)
        t = _mod(a1 * r + a3, 3)
    else:
        c4, c6 = E.c4, E.c6
        if _v(c4, p) > 0:
            r = _mod(-b2 * Fraction(1, 12), p)
        else:
            r = _mod(-(c6 + b2 * c4) / (12 * c4), p)
        t = _mod(-(a1 * r + a3) * Fraction(1, 2), p)
    F = E.change(r, 0, t)
    if all(_v(c, p) > 0 for c in (F.a3, F.a4, F.a6)):
        return r, t
    for r in range(p):
        for t in range(p):
            F = E.change(r, 0, t)
            if all(_v(c, p) > 0 for c in (F.a3, F.a4, F.a6)):
                return r, t
    raise ArithmeticError("no singular point found on a singular reduction")


def tate(E: Weierstrass, p: int) -> TateResult:
    """Tate's algorithm at the prime p for a model with rational coefficients."""
    E = _integral_at(rational_model(E.a), p)
    while True:
        n = _v(E.discriminant, p)
        if n == 0:
            return TateResult(p, 0, "I0", 1, E, 0)
        r, t = _singular_point_translation(E, p)
        E = E.change(r, 0, t)
        a1, a2, a3, a4, a6 = E.a
        if _v(E.c4, p) == 0:
            split = _has_root(1, a1, -a2, p)
            c = n if split else (2 - n % 2)
            return TateResult(p, 1, f"I{n}", c, E, n)
        if _v(a6, p) < 2:
            return TateResult(p, n, "II", 1, E, n)
        if _v(E.b8, p) < 3:
            return TateResult(p, n - 1, "III", 2, E, n)
        if _v(E.b6, p) < 3:
            c = 3 if _has_root(1, a3 / p, -a6 / p ** 2, p) else 1
            return TateResult(p, n - 2, "IV", c, E, n)
        if p == 2:
            s = _mod(a2, 2)
            t = 2 * _mod(a6 / 4, 2)
        else:
            # exact halves: p^2 | a3 afterwards needs more than a residue
            s = -a1 / 2
            t = -a3 / 2
        E = E.change(0, s, t)
        a1, a2, a3, a4, a6 = E.a
        b, c, d = a2 / p, a4 / p ** 2, a6 / p ** 3
        wdisc = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
        x = 3 * c - b * b
        if _v(wdisc, p) == 0:
            return TateResult(p, n - 4, "I0*", 1 + _cubic_roots(b, c, d, p), E, n)
        if _v(x, p) == 0:
            if p == 2:
                r = _mod(c, 2)
            elif p == 3:
                r = _mod(b * c, 3)
            else:
                r = _mod((b * c - 9 * d) / (2 * x), p)
            E = E.change(p * r, 0, 0)
            ix = iy = 3
            mx = my = p * p
            while True:
                a1, a2, a3, a4, a6 = E.a
                xa2, xa3, xa4, xa6 = a2 / p, a3 / my, a4 / (p * mx), a6 / (mx * my)
                if _v(xa3 * xa3 + 4 * xa6, p) == 0:
                    tam = 4 if _has_root(1, xa3, -xa6, p) else 2
                    break
                t = my * (_mod(xa6, 2) if p == 2 else -xa3 / 2)
                E = E.change(0, 0, t)
                my *= p
                iy += 1
                a1, a2, a3, a4, a6 = E.a
                xa2, xa3, xa4, xa6 = a2 / p, a3 / my, a4 / (p * mx), a6 / (mx * my)
                if _v(xa4 * xa4 - 4 * xa6 * xa2, p) == 0:
                    tam = 4 if _has_root(xa2, xa4, xa6, p) else 2
                    break
                r = mx * (_mod(xa6 * xa2, 2) if p == 2 else -xa4 / (2 * xa2))
                E = E.change(r, 0, 0)
                mx *= p
                ix += 1
            m = ix + iy - 5
            return TateResult(p, n - ix - iy + 1, f"I{m}*", tam, E, n)
        # triple root
        if p == 2:
            r = _mod(b, 2)
        elif p == 3:
            r = _mod(-d, 3)
        else:
            r = _mod(-b / 3, p)
        E = E.change(p * r, 0, 0)
        a1, a2, a3, a4, a6 = E.a
        x3, x6 = a3 / p ** 2, a6 / p ** 4
        if _v(x3 * x3 + 4 * x6, p) == 0:
            c = 3 if _has_root(1, x3, -x6, p) else 1
            return TateResult(p, n - 6, "IV*", c, E, n)
        t = p * p * (_mod(x6, 2) if p == 2 else -x3 / 2)
        E = E.change(0, 0, t)
        a1, a2, a3, a4, a6 = E.a
        if _v(a4, p) < 4:
            return TateResult(p, n - 7, "III*", 2, E, n)
        if _v(a6, p) < 6:
            return TateResult(p, n - 8, "II*", 1, E, n)
        E = E.change(u=p)


def tate_exponent(E: Weierstrass, p: int) -> int:
    return tate(E, p).f


def conductor(E: Weierstrass) -> int:
    N = 1
    disc = as_fraction(E.discriminant)
    for p in factorint(disc.numerator * disc.denominator):
        N *= p ** tate_exponent(E, p)
    return N


# ---------------------------------------------------------------- exponent at 2 of E^gamma_{1,z,w}


@dataclass(frozen=True)
class ConductorProfile:
    """Conductor exponents at 2 for gamma = 1, -1, 2, -2 and the minimising gamma."""
    exponents: tuple
    row: str

    @property
    def gamma(self) -> int:
        m = min(self.exponents)
        return GAMMAS[self.exponents.index(m)]

    @property
    def minimum(self) -> int:
        return min(self.exponents)

    def exponent(self, gamma: int) -> int:
        return self.exponents[GAMMAS.index(gamma)]


def classify_table1(z: int, w: int) -> ConductorProfile:
    """Exponent of 2 in the conductor of E^gamma_{1,z,w} for gamma in (1, -1, 2, -2),
    read from 2-adic data of (z, w).  z and w must not both be even."""
    if z % 2 == 0 and w % 2 == 0:
        raise ValueError("z and w are both even")
    if w * w == z ** 4:
        raise ValueError("singular curve: w = +-z^2")
    n = padic_val(w * w - z ** 4, 2)
    if n == 0:
        return ConductorProfile((8, 8, 8, 8), "ord2(w^2-z^4)=0")
    if n == 3:
        return ConductorProfile((7, 7, 7, 7), "ord2(w^2-z^4)=3")
    zm = z % 4
    vp, vm = padic_val(w + z * z, 2), padic_val(w - z * z, 2)
    one = zm == 1
    if vp >= 3:
        if vp == 3:
            r = (w + z * z) % 32
            if r == 8:
                return ConductorProfile((4, 3, 6, 6) if one else (3, 4, 6, 6), "w+z^2=8 mod 32")
            return ConductorProfile((2, 4, 6, 6) if one else (4, 2, 6, 6), "w+z^2=24 mod 32")
        if vp == 4:
            return ConductorProfile((5, 5, 6, 6), "ord2(w+z^2)=4")
        if vp in (5, 6):
            return ConductorProfile((3, 4, 6, 6) if one else (4, 3, 6, 6), "ord2(w+z^2) in {5,6}")
        if vp == 7:
            return ConductorProfile((0, 4, 6, 6) if one else (4, 0, 6, 6), "ord2(w+z^2)=7")
        return ConductorProfile((1, 4, 6, 6) if one else (4, 1, 6, 6), "ord2(w+z^2)>=8")
    if vm == 3:
        r = (w - z * z) % 32
        if r == 8:
            return ConductorProfile((6, 6, 4, 2) if one else (6, 6, 2, 4), "w-z^2=8 mod 32")
        return ConductorProfile((6, 6, 3, 4) if one else (6, 6, 4, 3), "w-z^2=24 mod 32")
    if vm == 4:
        return ConductorProfile((6, 6, 5, 5), "ord2(w-z^2)=4")
    if vm in (5, 6):
        return ConductorProfile((6, 6, 4, 3) if one else (6, 6, 3, 4), "ord2(w-z^2) in {5,6}")
    if vm == 7:
        return ConductorProfile((6, 6, 4, 0) if one else (6, 6, 0, 4), "ord2(w-z^2)=7")
    return ConductorProfile((6, 6, 4, 1) if one else (6, 6, 1, 4), "ord2(w-z^2)>=8")


def tate_profile(z: int, w: int) -> tuple:
    """Exponents at 2 for the four twists, by Tate's algorithm."""
    return tuple(tate_exponent(rational_frey_model(z, w, g), 2) for g in GAMMAS)


def minimal_twist(z: int, w: int) -> int:
    return classify_table1(z, w).gamma


# ---------------------------------------------------------------- levels


def radical_outside(n: int, S) -> int:
    """Product of the primes dividing n that are not in S."""
    out = 1
    for p in factorint(n) if abs(n) > 1 else []:
        if p not in S:
            out *= p
    return out


def odd_semistable_exponent(E: Weierstrass, p: int) -> int:
    f = tate_exponent(E, p)
    return f


@dataclass(frozen=True)
class LoweredLevel:
    N: int
    S: frozenset
    descriptor: str
    gamma: object = 1
    exponents: dict = field(default_factory=dict)


def lowered_level(fd: FreyData, gamma: Optional[int] = None) -> LoweredLevel:
    """Level after level lowering for the rational Frey curve (a = 1):
    the product of p^{ord_p N} over p | 2D, with gamma chosen to minimise the
    exponent at 2 unless given."""
    if fd.a != 1:
        raise ValueError("rational lowered levels need a = 1; use qcurve_levels for Q-curves")
    prof = classify_table1(fd.z, fd.w)
    g = prof.gamma if gamma is None else gamma
    E = rational_frey_model(fd.z, fd.w, g)
    S = {2} | set(factorint(fd.D))
    exps = {p: tate_exponent(E, p) for p in sorted(S)}
    N = math.prod(p ** e for p, e in exps.items())
    return LoweredLevel(N, frozenset(S), f"a=1, {prof.row}, gamma={g}", g, exps)


def qcurve_levels(D: int, a: int, w: int) -> tuple[int, ...]:
    """Lowered levels for the two Frey Q-curves handled here (tabulated).

    For D = -17 these are the levels of the two GL_2 factors of the restriction
    of scalars (equal when w is even)."""
    if (D, a) == (125, 125):
        return (1280, 6400)
    if (D, a) == (-17, -17):
        return (2 ** 8 * 17 ** 2,) if w % 2 == 0 else (2 ** 5 * 17 ** 2, 2 ** 6 * 17 ** 2)
    raise NotImplementedError(f"no level table for D={D}, a={a}")
