"""The decomposition P -> (a, a_hat, z, w) and the Frey curves E^gamma_{a,z,w}.

With x(P) = A/B^2, y(P) = C/B^3 on y^2 = x^3 + Dx, put a = sign(A) gcd(A, D),
a_hat = D/a, A = a z^2 and C = a z w.  Then w^2 = a z^4 + a_hat B^4 and the curve

    E^gamma_{a,z,w} : Y^2 = X^3 + 4 sqrt(a) z gamma X^2 + 2 (a z^2 + sqrt(a) w) gamma^2 X

has c4, discriminant and j given by closed formulas in sqrt(a), z, w.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadElem, prime_divisors, quad_from_sqrt, quad_valuations
from .curves import Weierstrass, ed_curve
from .eds import split_coordinates


@dataclass(frozen=True)
class FreyData:
    D: int
    a: int
    a_hat: int
    z: int
    w: int
    B: int

    def check(self) -> bool:
        return self.w * self.w == self.a * self.z ** 4 + self.a_hat * self.B ** 4


def decompose(D: int, P) -> FreyData:
    E = ed_curve(D)
    if P is None or not E.is_on(P):
        raise ValueError("need an affine point on the curve")
    if P[0] == 0 and P[1] == 0:
        raise ValueError("the 2-torsion point T has no decomposition")
    A, B, C = split_coordinates(P)
    g = math.gcd(A, D)
    a = g if A > 0 else -g
    zz = A // a
    z = math.isqrt(zz)
    if z * z != zz:
        raise ArithmeticError(f"A/a = {zz} is not a square")
    w, rem = divmod(C, a * z)
    if rem:
        raise ArithmeticError("C is not divisible by a*z")
    fd = FreyData(D, a, D // a, z, w, B)
    assert fd.check()
    return fd


def sqrt_a(a: int):
    return quad_from_sqrt(a)


def frey_model(fd: FreyData, gamma=1) -> Weierstrass:
    """E^gamma_{a,z,w}; coefficients live in Q(sqrt a) (or the field of gamma)."""
    s = sqrt_a(fd.a)
    z, w = fd.z, fd.w
    a2 = 4 * s * z * gamma
    a4 = 2 * (fd.a * z * z + s * w) * gamma * gamma
    zero = 0 * s
    return Weierstrass(zero, a2, zero, a4, zero)


def isogenous_model(z: int, w: int, gamma=1) -> Weierstrass:
    """The 2-isogenous curve Y^2 = X^3 - 8 z gamma X^2 + 8 (z^2 - w) gamma^2 X (a = 1)."""
    return Weierstrass(0, Fraction(-8 * z) * gamma, 0, Fraction(8 * (z * z - w)) * gamma * gamma, 0)


def rational_frey_model(z: int, w: int, gamma: int = 1) -> Weierstrass:
    """E^gamma_{1,z,w} over Q."""
    return Weierstrass(Fraction(0), Fraction(4 * z * gamma), Fraction(0),
                       Fraction(2 * (z * z + w) * gamma * gamma), Fraction(0))


@dataclass(frozen=True)
class FreyInvariants:
    """Invariants of E^1_{a,z,w}; the twist by gamma multiplies c4 by gamma^2 and
    the discriminant by gamma^6 and leaves j unchanged."""
    c4: object
    delta: object
    j: object
    a: int

    def twisted(self, gamma):
        return self.c4 * gamma ** 2, self.delta * gamma ** 6


def frey_invariants(a: int, z: int, w: int) -> FreyInvariants:
    s = sqrt_a(a)
    c4 = -32 * s * (3 * w - 5 * s * z * z)
    delta = -512 * s * s * s * (w - s * z * z) * (w + s * z * z) ** 2
    if delta == 0:
        raise ValueError("singular Frey curve (w = +-sqrt(a) z^2)")
    j = 64 * (3 * w - 5 * s * z * z) ** 3 / ((w + s * z * z) ** 2 * (w - s * z * z))
    return FreyInvariants(c4, delta, j, a)


def _norm_to_q(x) -> Fraction:
    return x.norm() if isinstance(x, QuadElem) else Fraction(x)


def coprime_outside(inv: FreyInvariants, gamma_norm=1) -> bool:
    """Every prime dividing both Norm(c4) and Norm(Delta) divides 2 * Norm(gamma) * a."""
    n4, nd = _norm_to_q(inv.c4), _norm_to_q(inv.delta)
    if n4 == 0:
        return True
    common = set(prime_divisors(n4)) & set(prime_divisors(nd))
    allowed = set(prime_divisors(Fraction(2 * inv.a) * Fraction(gamma_norm)))
    return common <= allowed


def j_nonintegral_at(fd: FreyData, p: int) -> bool:
    """True when j_{a,z,w} has negative valuation at every prime of Q(sqrt a) above p.

    Requires p | B, and 8 | B when p = 2."""
    if fd.B % p or (p == 2 and fd.B % 8):
        raise ValueError(f"precondition fails: p = {p} must divide B (8 | B for p = 2)")
    j = frey_invariants(fd.a, fd.z, fd.w).j
    return all(v < 0 for v in quad_valuations(j, p, fd.a))


def has_cm_candidate(fd: FreyData) -> bool:
    """True if the Frey curve could have complex multiplication.

    When some prime p with p | B (8 | B if p = 2) exists, j is non-integral there,
    so the curve has no CM."""
    for p in prime_divisors(fd.B) if fd.B > 1 else []:
        if p == 2 and fd.B % 8:
            continue
        if j_nonintegral_at(fd, p):
            return False
    return True


def a_value(D: int, P) -> int:
    if P is None:
        return 1
    if P[0] == 0:
        return D
    A = split_coordinates(P)[0]
    g = math.gcd(A, D)
    return g if A > 0 else -g
