"""Small exponents for D = 125: descent to z^2 = F(alpha, beta) and local solubility.

For a = 1 and 2 | B = v^l we have (w + z^2)(w - z^2) = 5^3 v^(4l) with
gcd(w + z^2, w - z^2) = 2, so w + z^2 = 2 c2 c5 alpha^(4l) and
w - z^2 = 2 c2' c5' beta^(4l), leading to the four curves

    C_i : z^2 = c2 c5 alpha^(4l) - c2' c5' beta^(4l).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import as_fraction, padic_val, poly_eval, sqrt_mod


@dataclass(frozen=True)
class DescentCurve:
    l: int
    c2: int
    c5: int
    c2p: int
    c5p: int

    @property
    def u(self) -> int:
        return self.c2 * self.c5

    @property
    def v(self) -> int:
        return self.c2p * self.c5p

    def form(self, alpha, beta):
        n = 4 * self.l
        return self.u * alpha ** n - self.v * beta ** n

    def coefficients(self) -> list:
        """F(t, 1) as a coefficient list (low degree first)."""
        n = 4 * self.l
        return [-self.v] + [0] * (n - 1) + [self.u]

    def __str__(self):
        n = 4 * self.l
        return f"z^2 = {self.u}*alpha^{n} - {self.v}*beta^{n}"


def descent_curves_d125(l: int) -> list:
    if l < 2:
        raise ValueError("l must be > 1")
    big = 2 ** (4 * l - 2)
    out = []
    for c2 in (1, big):
        for c5 in (1, 125):
            c2p = big if c2 == 1 else 1
            c5p = 125 if c5 == 1 else 1
            out.append(DescentCurve(l, c2, c5, c2p, c5p))
    return out


def genus_hyper(c: DescentCurve) -> int:
    """Genus of z^2 = u a^(4l) - v b^(4l); separable iff u v != 0."""
    if c.u == 0 or c.v == 0:
        raise ValueError("inseparable binary form")
    return 2 * c.l - 1


# ---------------------------------------------------------------- p-adic solubility


def _taylor_shift(coeffs: list, t0: int, scale: int) -> list:
    """Coefficients of g(t0 + scale * u) in u."""
    out = [0] * len(coeffs)
    # Horner on polynomials in u
    for c in reversed(coeffs):
        # out = out * (t0 + scale u) + c
        nxt = [0] * len(coeffs)
        for i, a in enumerate(out):
            if a:
                nxt[i] += a * t0
                if i + 1 < len(nxt):
                    nxt[i + 1] += a * scale
        nxt[0] += c
        out = nxt
    return out


def _is_padic_square(x: int, p: int) -> bool:
    if x == 0:
        return True
    v = padic_val(x, p)
    if v % 2:
        return False
    u = x // p ** v
    if p == 2:
        return u % 8 == 1
    return sqrt_mod(u % p, p) is not None


def _disk_status(coeffs: list, t0: int, k: int, p: int):
    """True / False if the disk t0 + p^k Z_p decides solubility of z^2 = g(t), else None."""
    c = _taylor_shift(coeffs, t0, p ** k)
    c0 = c[0]
    if c0 == 0:
        return True
    v0 = padic_val(c0, p)
    rest = [padic_val(x, p) for x in c[1:] if x]
    margin = 3 if p == 2 else 1
    if all(v >= v0 + margin for v in rest):
        return _is_padic_square(c0, p)
    # Hensel: a root of g exists near t0 when v(g) > 2 v(g')
    if c[1] and v0 > 2 * padic_val(c[1], p):
        return True
    return None


def _search(coeffs: list, p: int, t0: int, k: int, depth: int, cap: int):
    st = _disk_status(coeffs, t0, k, p)
    if st is not None:
        return st
    if depth >= cap:
        return None
    undecided = False
    for r in range(p):
        sub = _search(coeffs, p, t0 + r * p ** k, k + 1, depth + 1, cap)
        if sub:
            return True
        if sub is None:
            undecided = True
    return None if undecided else False


def local_solubility(coeffs: list, p: int, cap: int = 40) -> Optional[bool]:
    """Does z^2 = G(alpha, beta) have a primitive solution over Z_p?

    `coeffs` are those of G(t, 1), low degree first; the binary form has even
    degree len(coeffs) - 1.  Returns None if the depth cap is reached."""
    coeffs = [int(as_fraction(c)) for c in coeffs]
    n = len(coeffs) - 1
    # chart beta = 1, alpha = t in Z_p
    res = _search(coeffs, p, 0, 0, 0, cap)
    if res:
        return True
    # chart alpha = 1, beta = p s: G(1, p s) = sum c_i p^(n-i) s^(n-i)
    rev = [coeffs[n - j] * p ** j for j in range(n + 1)]
    res2 = _search(rev, p, 0, 0, 0, cap)
    if res2:
        return True
    if res is None or res2 is None:
        return None
    return False


def local_points_exist(c: DescentCurve, p: int, cap: int = 40) -> Optional[bool]:
    return local_solubility(c.coefficients(), p, cap)


def hasse_weil_guaranteed(c: DescentCurve, p: int) -> bool:
    """p is odd, of good reduction, and large enough that the Weil bound forces a smooth F_p point."""
    g = genus_hyper(c)
    if p == 2 or (c.u * c.v * 4 * c.l) % p == 0:
        return False
    # the smooth model has at most 2 points at infinity; affine count >= p + 1 - 2g sqrt(p) - 2
    return p + 1 - 2 * g * p ** 0.5 - 2 > 0


def affine_points_mod_p(c: DescentCurve, p: int) -> int:
    """Number of (alpha, z) in F_p^2 with z^2 = F(alpha, 1) and F(alpha, 1) != 0."""
    count = 0
    coeffs = c.coefficients()
    for a in range(p):
        val = int(poly_eval(coeffs, a)) % p
        if val and sqrt_mod(val, p) is not None:
            count += 2
    return count


# ---------------------------------------------------------------- quartic quotient


def quartic_to_elliptic(A: int, B: int, C: int, pt):
    """Image of [x:y:z] on A X^4 + B Y^4 + C Z^4 = 0 on Y^2 Z = X^3 + (BC/A^2) X Z^2."""
    x, y, z = (as_fraction(t) for t in pt)
    if A * x ** 4 + B * y ** 4 + C * z ** 4 != 0:
        raise ValueError("point is not on the quartic")
    img = (B * y * y * z, B * x * x * y, -A * z ** 3)
    if all(t == 0 for t in img):
        raise ValueError("map undefined at this point")
    return img


def on_quotient_curve(A: int, B: int, C: int, img) -> bool:
    X, Y, Z = (as_fraction(t) for t in img)
    return Y * Y * Z == X ** 3 + Fraction(B * C, A * A) * X * Z * Z


def permuted_quotients(A: int, B: int, C: int, pt) -> list:
    """The three quotient maps obtained by cycling the roles of X, Y and Z."""
    x, y, z = pt
    out = []
    for (a, b, c), q in (((A, B, C), (x, y, z)), ((B, C, A), (y, z, x)), ((C, A, B), (z, x, y))):
        try:
            img = quartic_to_elliptic(a, b, c, q)
        except ValueError:
            continue
        out.append(((a, b, c), img))
    return out
