"""Weierstrass models, the chord-tangent group law, and Frobenius traces."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import FiniteField, as_fraction, least_nonresidue, factorint


class Weierstrass:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over any field whose elements
    support + - * / (Fraction, QuadElem, NFElem, FFElem)."""

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.a = (a1, a2, a3, a4, a6)

    @classmethod
    def from_list(cls, coeffs) -> "Weierstrass":
        return cls(*[as_fraction(c) if isinstance(c, (int, str)) else c for c in coeffs])

    a1 = property(lambda s: s.a[0])
    a2 = property(lambda s: s.a[1])
    a3 = property(lambda s: s.a[2])
    a4 = property(lambda s: s.a[3])
    a6 = property(lambda s: s.a[4])

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        b2, b4, b6 = self.b2, self.b4, self.b6
        return -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self):
        d = self.discriminant
        if d == 0:
            raise ZeroDivisionError("singular model has no j-invariant")
        c4 = self.c4
        return c4 * c4 * c4 / d

    def change(self, r=0, s=0, t=0, u=1) -> "Weierstrass":
        """Model after x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        a1, a2, a3, a4, a6 = self.a
        a1n = a1 + 2 * s
        a2n = a2 - s * a1 + 3 * r - s * s
        a3n = a3 + r * a1 + 2 * t
        a4n = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        a6n = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1
        if u == 1:
            return Weierstrass(a1n, a2n, a3n, a4n, a6n)
        return Weierstrass(a1n / u, a2n / u ** 2, a3n / u ** 3, a4n / u ** 4, a6n / u ** 6)

    def is_on(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.a
        return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6

    def neg(self, P):
        if P is None:
            return None
        x, y = P
        return (x, -y - self.a1 * x - self.a3)

    def add(self, P, Q):
        """Chord-tangent addition; None is the point at infinity."""
        if P is None:
            return Q
        if Q is None:
            return P
        a1, a2, a3, a4, a6 = self.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
            nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, base = None, P
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def __repr__(self):
        return f"Weierstrass{tuple(self.a)}"


def rational_model(coeffs) -> Weierstrass:
    return Weierstrass(*[as_fraction(c) for c in coeffs])


def ed_curve(D: int) -> Weierstrass:
    """E_D : y^2 = x^3 + D x, with D non-zero and fourth-power free."""
    if D == 0:
        raise ValueError("D must be non-zero")
    for p, e in factorint(D).items():
        if e >= 4:
            raise ValueError(f"D = {D} is divisible by {p}^4")
    return Weierstrass(Fraction(0), Fraction(0), Fraction(0), Fraction(D), Fraction(0))


def point(x, y) -> tuple[Fraction, Fraction]:
    return (as_fraction(x), as_fraction(y))


def parse_point(s: str) -> tuple[Fraction, Fraction]:
    x, y = s.split(",")
    return point(x, y)


def torsion_order(E: Weierstrass, P) -> Optional[int]:
    """Order of P if it is at most 12 (Mazur's bound over Q), otherwise None."""
    Q = P
    for n in range(1, 13):
        if Q is None:
            return n
        Q = E.add(Q, P)
    return None


# ---------------------------------------------------------------- point counting


def _square_table(p: int) -> np.ndarray:
    """chi[v] = quadratic character of v mod p."""
    chi = -np.ones(p, dtype=np.int64)
    sq = (np.arange(p, dtype=np.int64) ** 2) % p
    chi[sq] = 1
    chi[0] = 0
    return chi


_CHI_CACHE: dict[int, np.ndarray] = {}


def quadratic_table(p: int) -> np.ndarray:
    if p not in _CHI_CACHE:
        _CHI_CACHE[p] = _square_table(p)
    return _CHI_CACHE[p]


def _fp2_elements(p: int) -> tuple[np.ndarray, np.ndarray]:
    x0, x1 = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    return x0.ravel(), x1.ravel()


def trace_fp(b2: int, b4: int, b6: int, p: int) -> int:
    """a_p of (2y + a1x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 over F_p, p odd."""
    chi = quadratic_table(p)
    x = np.arange(p, dtype=np.int64)
    f = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p
    return -int(chi[f].sum())


def trace_fp2(b2, b4, b6, p: int) -> int:
    """Trace of Frobenius over F_{p^2} = F_p[t]/(t^2 - r).

    b2, b4, b6 are pairs (c0, c1) meaning c0 + c1 t.
    """
    r = least_nonresidue(p)
    chi = quadratic_table(p)
    x0, x1 = _fp2_elements(p)

    def mul(a0, a1, b0, b1):
        return (a0 * b0 + r * a1 * b1) % p, (a0 * b1 + a1 * b0) % p

    # f(x) = ((4x + b2) x + 2 b4) x + b6
    f0, f1 = (4 * x0 + b2[0]) % p, (4 * x1 + b2[1]) % p
    f0, f1 = mul(f0, f1, x0, x1)
    f0, f1 = (f0 + 2 * b4[0]) % p, (f1 + 2 * b4[1]) % p
    f0, f1 = mul(f0, f1, x0, x1)
    f0, f1 = (f0 + b6[0]) % p, (f1 + b6[1]) % p
    # quadratic character over F_{p^2} is the Legendre symbol of the norm
    norm = (f0 * f0 - r * (f1 * f1 % p)) % p
    return -int(chi[norm].sum())


def frobenius_trace(E: Weierstrass, p: int, k: int = 1) -> int:
    """q + 1 - #E(F_q) for q = p^k (k = 1 or 2) and p odd; the model must have
    p-integral coefficients and good reduction.  Coefficients may be integers,
    rationals, or FFElem of FiniteField(p, k)."""
    if p == 2:
        raise ValueError("point counting is implemented for odd p only")
    if k not in (1, 2):
        raise ValueError("only q = p or p^2 supported")
    F = FiniteField(p, k)
    b = [F(c) if not hasattr(c, "F") else c for c in (E.b2, E.b4, E.b6)]
    disc = F(E.discriminant) if not hasattr(E.discriminant, "F") else E.discriminant
    if disc.is_zero():
        raise ValueError(f"model has bad reduction at {p}")
    if k == 1:
        t = trace_fp(b[0].to_int(), b[1].to_int(), b[2].to_int(), p)
    else:
        pad = lambda e: (e.c + (0, 0))[:2]
        t = trace_fp2(pad(b[0]), pad(b[1]), pad(b[2]), p)
    q = p ** k
    if t * t > 4 * q:
        raise AssertionError(f"Hasse bound violated: a = {t}, q = {q}")
    return t


def trace_power(t, q, m: int):
    """Trace of Frob^m given trace t of Frob and determinant q: s_{k+1} = t s_k - q s_{k-1}."""
    s_prev, s = 2, t
    if m == 0:
        return 2
    for _ in range(m - 1):
        s_prev, s = s, t * s - q * s_prev
    return s


def naive_count(E: Weierstrass, p: int) -> int:
    """#E(F_p) by testing every affine pair; for cross-checking small p."""
    a = [int(as_fraction(c).numerator * pow(as_fraction(c).denominator, -1, p)) % p for c in E.a]
    a1, a2, a3, a4, a6 = a
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n
