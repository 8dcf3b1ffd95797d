"""Irreducibility of the mod l representations attached to the Frey curves.

Two regimes:
  * a not a square (Q-curve case): norm criteria for l = 3, 5; automatic for
    l = 7, 13; a prime p > 3 dividing B for l = 11 and l > 13.
  * a = 1 (curve over Q with a rational 2-torsion point): automatic for l > 7,
    an explicit j-invariant check for l = 7 and a table of exceptional points
    for l = 3, 5.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import (QuadElem, as_fraction, hilbert_symbol, integer_nth_root, is_prime,
                    prime_divisors, quad_from_sqrt)
from .frey import FreyData, frey_invariants

IRREDUCIBLE = "irreducible"
UNKNOWN = "unknown"
EXCLUDED = "excluded-point"


@dataclass(frozen=True)
class IrredVerdict:
    l: int
    verdict: str
    reason: str

    @property
    def irreducible(self) -> bool:
        return self.verdict == IRREDUCIBLE


def is_norm_from(a: int, d: int) -> bool:
    """True iff x^2 - d y^2 = a has a rational solution (Hasse norm theorem)."""
    if a == 0:
        raise ValueError("a must be non-zero")
    places = {-1, 2} | set(prime_divisors(abs(a * d)))
    return all(hilbert_symbol(a, d, v) == 1 for v in places)


# j-invariants of the non-cuspidal points on the relevant modular curves
_S7 = QuadElem(-7, 0, 1)
L7_J = (
    Fraction(-3375),
    (Fraction(-10529) + 16471 * _S7) / 8,
    (Fraction(-10529) - 16471 * _S7) / 8,
    (Fraction(56437681) + 1875341 * _S7) / 32768,
    (Fraction(56437681) - 1875341 * _S7) / 32768,
)
_S13 = QuadElem(13, 0, 1)
L13_J = (3448440000 + 956448000 * _S13, 3448440000 - 956448000 * _S13)

# rational j-invariants of the non-cuspidal rational points of X_0(14)
X0_14_J = (Fraction(-3375), Fraction(16581375))


def _horner2(coeffs, x, y):
    """Homogeneous sum c_i x^(n-i) y^i."""
    n = len(coeffs) - 1
    return sum(c * x ** (n - i) * y ** i for i, c in enumerate(coeffs))


_J3_MAIN = (512, -6016, 78176, 987032, 30371282, 97063160, 226082780, 227965064, 291927773)
_J3_TAIL = (256, -64, 65616, 80372, 187783)
_J5_MAIN = (131072, -1015808, 15802368, 303943680, 8502563840, 41661192832, 122507172512,
            219682233088, 344561617040, 329235309720, 342028231098, 150869431408, 111226255277)
_J5_CUBIC = (4, -84, -37, -122)
_J5_SEXTIC = (4096, 7168, 1058560, 2349440, 4841440, 2594668, 3767779)


def reducibility_locus_j(l: int, x, y, a: int):
    """j-invariant of the Q-curve with reducible mod l image attached to a point
    (x, y) on x^2 + 2y^2 = a (l = 3) or x^2 + y^2 = a (l = 5)."""
    x, y = as_fraction(x), as_fraction(y)
    s = quad_from_sqrt(a)
    if l == 3:
        if x * x + 2 * y * y != a:
            raise ValueError("(x, y) is not on x^2 + 2y^2 = a")
        den = y * y * (4 * x - 7 * y) ** 6
        if den == 0:
            raise ZeroDivisionError("pole of the l = 3 formula")
        body = _horner2(_J3_MAIN, x, y) + 2 * s * (x - 22 * y) * (x + 5 * y) ** 2 * _horner2(_J3_TAIL, x, y)
    elif l == 5:
        if x * x + y * y != a:
            raise ValueError("(x, y) is not on x^2 + y^2 = a")
        den = y * y * (4 * x - 3 * y) ** 10
        if den == 0:
            raise ZeroDivisionError("pole of the l = 5 formula")
        body = (_horner2(_J5_MAIN, x, y)
                + 2 * s * (2 * x + 11 * y) ** 2 * _horner2(_J5_CUBIC, x, y) * _horner2(_J5_SEXTIC, x, y))
    else:
        raise ValueError("only l = 3 and l = 5 have a rational reducibility locus here")
    return 64 * body / den


def _odd_prime(l: int):
    if l < 3 or not is_prime(l):
        raise ValueError(f"l = {l} must be an odd prime")


def frey_irreducible(l: int, fd: FreyData, B_factorization=None) -> IrredVerdict:
    """Verdict for the Q-curve Frey curve E^gamma_{a,z,w} with a not a square."""
    _odd_prime(l)
    if abs(fd.B) == 1:
        raise ValueError("B = +-1 carries no information")
    if integer_nth_root(fd.a, 2) is not None:
        return a1_irreducible(l, fd.z, fd.w, fd.D)
    primes = sorted(B_factorization) if B_factorization is not None else prime_divisors(abs(fd.B))
    if l == 3:
        if is_norm_from(fd.a, -2):
            return IrredVerdict(l, UNKNOWN, f"{fd.a} is a norm from Q(sqrt(-2))")
        return IrredVerdict(l, IRREDUCIBLE, f"{fd.a} is not a norm from Q(sqrt(-2))")
    if l == 5:
        if is_norm_from(fd.a, -1):
            return IrredVerdict(l, UNKNOWN, f"{fd.a} is a norm from Q(sqrt(-1))")
        return IrredVerdict(l, IRREDUCIBLE, f"{fd.a} is not a norm from Q(sqrt(-1))")
    if l in (7, 13):
        return IrredVerdict(l, IRREDUCIBLE, "j is non-integral, so no exceptional j-invariant is possible")
    big = [p for p in primes if p > 3]
    if big:
        return IrredVerdict(l, IRREDUCIBLE, f"B is divisible by {big[0]} > 3")
    return IrredVerdict(l, UNKNOWN, "B has no prime divisor > 3")


# Points whose Frey curve (a = 1) may have reducible mod l image, l = 3, 5.
# The point at infinity is always listed and never arises from a Frey curve.
EXCEPTIONAL_POINTS = {
    -2: {3: [], 5: []},
    3: {3: [], 5: [(Fraction(1), Fraction(2)), (Fraction(1), Fraction(-2)),
                   (Fraction(121, 9), Fraction(1342, 27)), (Fraction(121, 9), Fraction(-1342, 27))]},
    -17: {3: [], 5: []},
    125: {3: [(Fraction(121, 4), Fraction(1419, 8))], 5: []},
}


def _b_from(z: int, w: int, D: int) -> int:
    q, r = divmod(w * w - z ** 4, D)
    B = integer_nth_root(q, 4) if not r and q > 0 else None
    if B is None:
        raise ValueError(f"(z, w) = ({z}, {w}) gives no integer B with w^2 = z^4 + D B^4")
    return B


def a1_irreducible(l: int, z: int, w: int, D: int) -> IrredVerdict:
    """Verdict for E^gamma_{1,z,w} over Q."""
    _odd_prime(l)
    if w * w == z ** 4:
        raise ValueError("degenerate input: w = +-z^2 forces B = 0")
    if l > 7:
        return IrredVerdict(l, IRREDUCIBLE, "X_0(2l) has no non-cuspidal rational points for l > 7")
    if l == 7:
        j = frey_invariants(1, z, w).j
        if j in X0_14_J:
            return IrredVerdict(l, EXCLUDED, f"j = {j} comes from X_0(14)")
        # j hits those values only at t = w/z^2 in {+-1, +-65/63}; 63 is not a square
        return IrredVerdict(l, IRREDUCIBLE, "w/z^2 is not in {+-1, +-65/63}")
    table = EXCEPTIONAL_POINTS.get(D)
    if table is None:
        return IrredVerdict(l, UNKNOWN, f"no exceptional point table for D = {D}")
    B = _b_from(z, w, D)
    x, y = Fraction(z * z, B * B), Fraction(z * w, B ** 3)
    if (x, y) in table[l]:
        return IrredVerdict(l, EXCLUDED, f"(z, w) comes from the point ({x}, {y})")
    return IrredVerdict(l, IRREDUCIBLE, f"not one of the exceptional points for D = {D}")


def point_irreducible(l: int, D: int, P) -> IrredVerdict:
    """Dispatch on a_P for a rational point P of y^2 = x^3 + Dx."""
    from .frey import decompose
    fd = decompose(D, P)
    if fd.a == 1:
        return a1_irreducible(l, fd.z, fd.w, D)
    return frey_irreducible(l, fd)


def phi2(X, Y):
    """Classical modular polynomial of level 2."""
    return (X ** 3 + Y ** 3 - X ** 2 * Y ** 2 + 1488 * (X ** 2 * Y + X * Y ** 2)
            - 162000 * (X ** 2 + Y ** 2) + 40773375 * X * Y + 8748000000 * (X + Y)
            - 157464000000000)
