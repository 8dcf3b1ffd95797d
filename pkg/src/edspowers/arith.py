"""Exact arithmetic: rationals, integer factorisation, quadratic towers,
number fields given by a monic polynomial, and finite fields F_{p^k}."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional, Sequence

# ---------------------------------------------------------------- integers


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot make a rational out of {x!r}")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 and overwhelmingly safe above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < 3317044064679887385961981 else _MR_BASES + tuple(
        random.Random(n).randrange(2, n - 1) for _ in range(8))
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi."""
    return [p for p in primes_up_to(hi) if p > lo]


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as {p: e}. Trial division, then Pollard rho."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 41
    while p * p <= n and p < 10000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def prime_divisors(n) -> list[int]:
    n = as_fraction(n)
    ps = set()
    for part in (n.numerator, n.denominator):
        if abs(part) > 1:
            ps.update(factorint(part))
    return sorted(ps)


def padic_val(x, p: int) -> float | int:
    """p-adic valuation of a rational; math.inf for 0."""
    x = as_fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def integer_nth_root(n: int, k: int) -> Optional[int]:
    """r with r**k == n, or None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_nth_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton iteration to the floor root
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


def perfect_power(n: int) -> Optional[tuple[int, int]]:
    """(r, l) with n = r**l, l prime and maximal among primes, for n > 1."""
    if n < 2:
        return None
    for l in sorted(primes_up_to(n.bit_length()), reverse=True):
        r = integer_nth_root(n, l)
        if r is not None:
            return r, l
    return None


def squarefree_part(n: int) -> int:
    """The squarefree integer d with n = d * s^2 (sign kept)."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    d = 1
    for p, e in factorint(n).items():
        if e % 2:
            d *= p
    return sign * d


def rational_sqrt(q) -> Optional[Fraction]:
    q = as_fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    for p, e in factorint(n).items() if n > 1 else []:
        if p == 2:
            if a % 2 == 0:
                s = 0
            else:
                s = 1 if a % 8 in (1, 7) else -1
        else:
            s = legendre(a, p)
        result *= s ** e
    return result


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Tonelli-Shanks square root modulo an odd prime (or p=2)."""
    a %= p
    if a == 0 or p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def least_nonresidue(p: int) -> int:
    r = 2
    while legendre(r, p) != -1:
        r += 1
    return r


def sqrt_padic(a: int, p: int, k: int) -> Optional[int]:
    """A square root of the p-adic unit a modulo p^k, or None."""
    if p == 2:
        if a % 8 != 1:
            return None
        r = 1
        for j in range(3, k):
            if (r * r - a) % (1 << (j + 1)):
                r += 1 << (j - 1)
        return r % (1 << k)
    r = sqrt_mod(a, p)
    if r is None or r == 0:
        return None
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol (a,b)_p for non-zero rationals; p a prime or -1 for R."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs non-zero arguments")
    # clear denominators by squares
    a = a.numerator * a.denominator
    b = b.numerator * b.denominator
    if p == -1 or p == math.inf:
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2
        return -1 if e else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2) % 2)
    return s * legendre(u, p) ** beta * legendre(v, p) ** alpha


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = math.gcd(m, n)
        if (r - x) % g:
            raise ValueError("incompatible congruences")
        l = m // g * n
        x = (x + (r - x) // g * pow(m // g, -1, n // g) % (n // g) * m) % l
        m = l
    return x, m


# ---------------------------------------------------------------- quadratic towers


class QuadElem:
    """u + v*sqrt(d) with u, v in a base field (rationals, or another QuadElem).

    Nesting QuadElems gives towers such as Q(sqrt2)(sqrt(-17)); the outer radicand d
    must not be a square in the base.  Base scalars mix freely in arithmetic.
    """

    __slots__ = ("d", "u", "v")

    def __init__(self, d, u=0, v=0):
        self.d = d if isinstance(d, QuadElem) else as_fraction(d)
        self.u = _norm_base(u)
        self.v = _norm_base(v)

    @property
    def depth(self) -> int:
        return 1 + max(_depth(self.u), _depth(self.v), _depth(self.d))

    @classmethod
    def sqrt(cls, d, base_zero=0) -> "QuadElem":
        return cls(d, base_zero, 1)

    def _lift(self, other):
        """Coerce other into this field; None when other lives in a deeper tower."""
        if isinstance(other, QuadElem):
            od = other.depth
            if od > self.depth:
                return None
            if od == self.depth:
                if other.d != self.d:
                    raise ValueError(f"incompatible quadratic fields {self.d} and {other.d}")
                return other
            if other.d == self.d:
                # same outer radicand written with shallower coefficients
                return QuadElem(self.d, other.u, other.v)
            return QuadElem(self.d, other, 0)
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, other, 0)
        raise TypeError(f"cannot combine QuadElem with {type(other).__name__}")

    def _pair(self, other):
        o = self._lift(other)
        if o is None:
            return other._lift(self), other
        return self, o

    def __add__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.d, a.u + b.u, a.v + b.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.u, -self.v)

    def __sub__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.d, a.u - b.u, a.v - b.v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        return QuadElem(a.d, a.u * b.u + a.d * a.v * b.v, a.u * b.v + a.v * b.u)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.d, self.u, -self.v)

    def norm(self):
        """Relative norm down to the base field."""
        return (self.u * self.u - self.d * self.v * self.v)

    def trace(self):
        return (2 * self.u)

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        ninv = _base_inverse(n)
        return QuadElem(self.d, self.u * ninv, -self.v * ninv)

    def __truediv__(self, other):
        if isinstance(other, QuadElem):
            return self * other.inverse()
        return self * _base_inverse(as_fraction(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElem(self.d, 1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (QuadElem, int, Fraction)):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except ValueError:
            return False
        return a.u == b.u and a.v == b.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.d, self.u, self.v))

    def is_rational(self) -> bool:
        return self.v == 0 and (not isinstance(self.u, QuadElem) or self.u.is_rational())

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.u.to_rational() if isinstance(self.u, QuadElem) else self.u

    def __repr__(self):
        if isinstance(self.v, Fraction) and self.v < 0:
            return f"({self.u} - {-self.v}*sqrt({self.d}))"
        return f"({self.u} + {self.v}*sqrt({self.d}))"


def _depth(x) -> int:
    return x.depth if isinstance(x, QuadElem) else 0


def _norm_base(x):
    if isinstance(x, QuadElem):
        return x
    return as_fraction(x)


def _base_inverse(x):
    if isinstance(x, QuadElem):
        return x.inverse()
    x = as_fraction(x)
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def sqrt_exact(x):
    """Square root inside the field of x (rational or quadratic tower), or None."""
    if isinstance(x, QuadElem):
        return is_square_quad(x)
    return rational_sqrt(x)


def is_square_quad(x: QuadElem):
    """A square root of x in its own field, or None."""
    if x == 0:
        return QuadElem(x.d, 0, 0)
    if x.v == 0:
        s = sqrt_exact(x.u)
        if s is not None:
            return QuadElem(x.d, s, 0)
        t = sqrt_exact(x.u / x.d if not isinstance(x.d, QuadElem) else x.u * _base_inverse(x.d))
        if t is not None:
            return QuadElem(x.d, 0, t)
        return None
    n = sqrt_exact(x.norm())
    if n is None:
        return None
    for sign in (1, -1):
        b2 = (x.u + sign * n) * Fraction(1, 2)
        b = sqrt_exact(b2)
        if b is None or b == 0:
            continue
        c = x.v * _base_inverse(2 * b)
        cand = QuadElem(x.d, b, c)
        if cand * cand == x:
            return cand
    return None


def quad_from_sqrt(a: int):
    """sqrt(a) as an element: an integer when a is a square, else s*sqrt(d)."""
    r = rational_sqrt(a)
    if r is not None:
        return r
    d = squarefree_part(a)
    s = math.isqrt(a // d)
    return QuadElem(d, 0, s)


def quad_valuations(x, p: int, a: int) -> list:
    """Valuations of x in Q(sqrt(a)) at the primes above p, normalised so v(p) = e.

    x is rational or a QuadElem over Q whose radicand is the squarefree part of a.
    One entry per prime above p.
    """
    if rational_sqrt(a) is not None:
        return [padic_val(x.to_rational() if isinstance(x, QuadElem) else x, p)]
    d = squarefree_part(a)
    kind = quad_splitting(d, p)
    if not isinstance(x, QuadElem) or x.v == 0:
        v = padic_val(x.u if isinstance(x, QuadElem) else x, p)
        return {"split": [v, v], "inert": [v], "ramified": [2 * v]}[kind]
    if int(x.d) != d:
        raise ValueError(f"element of Q(sqrt({x.d})) is not in Q(sqrt({a}))")
    n = x.norm()
    if kind == "inert":
        return [padic_val(n, p) // 2]
    if kind == "ramified":
        return [padic_val(n, p)]
    # split: embed sqrt(d) into Z_p with enough precision to see both valuations
    den = math.lcm(x.u.denominator, x.v.denominator)
    U, V = int(x.u * den), int(x.v * den)
    vd = padic_val(den, p)
    k = padic_val(U * U - d * V * V, p) + 6
    mod = p ** k
    r = sqrt_padic(d % mod, p, k)
    out = []
    for rr in (r, -r):
        val = (U + V * rr) % mod
        out.append((padic_val(val, p) if val else k) - vd)
    return out


def quad_splitting(d: int, p: int) -> str:
    """'split', 'inert' or 'ramified' for p in Q(sqrt(d)), d squarefree != 1."""
    if p == 2:
        if d % 4 != 1:
            return "ramified"
        return "split" if d % 8 == 1 else "inert"
    if d % p == 0:
        return "ramified"
    return "split" if legendre(d, p) == 1 else "inert"


# ---------------------------------------------------------------- polynomials over Q
# dense coefficient lists, lowest degree first


def poly_trim(f: list) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f, g):
    n = max(len(f), len(g))
    return poly_trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_sub(f, g):
    return poly_add(f, [-c for c in g])


def poly_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(f, c):
    return poly_trim([a * c for a in f])


def poly_divmod(f, g):
    f = [as_fraction(c) if not isinstance(c, QuadElem) else c for c in poly_trim(f)]
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] / lc
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] -= c * b
        f = poly_trim(f)
    return poly_trim(q), f


def poly_eval(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_deriv(f):
    return poly_trim([i * c for i, c in enumerate(f)][1:])


def poly_compose_mod(f, g, m):
    """f(g(x)) mod m."""
    acc: list = []
    for c in reversed(f):
        acc = poly_add(poly_mul(acc, g), [c])
        acc = poly_divmod(acc, m)[1]
    return acc


def resultant(f, g) -> Fraction:
    """Resultant of two polynomials over Q (Euclidean algorithm)."""
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return Fraction(0)
    df, dg = len(f) - 1, len(g) - 1
    if dg == 0:
        return as_fraction(g[0]) ** df
    if df == 0:
        return as_fraction(f[0]) ** dg
    _, r = poly_divmod(f, g)
    if not r:
        return Fraction(0)
    dr = len(r) - 1
    sign = -1 if (df * dg) % 2 else 1
    return sign * as_fraction(g[-1]) ** (df - dr) * resultant(g, r)


def poly_gcd_mod(f: list[int], g: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    g = [c % p for c in g]
    f, g = _trim_mod(f), _trim_mod(g)
    while g:
        f, g = g, _polymod_rem(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _trim_mod(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod_rem(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        k = len(f) - len(g)
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        f = _trim_mod(f)
    return f


def charpoly_matrix(M: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier, low degree first.

    Runs on the integer matrix d*M (d a common denominator), where every step is
    exact in Z, then rescales: c_k(M) = c_k(dM) / d^(n-k)."""
    n = len(M)
    M = [[as_fraction(x) for x in row] for row in M]
    d = 1
    for row in M:
        for x in row:
            d = d * x.denominator // math.gcd(d, x.denominator)
    A = [[int(x * d) for x in row] for row in M]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    cols = None
    c = 1
    for k in range(1, n + 1):
        # Mk = A (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        cols = list(zip(*prev))
        Mk = [[sum(x * y for x, y in zip(A[i], cols[j])) for j in range(n)] for i in range(n)]
        tr = sum(Mk[i][i] for i in range(n))
        c, r = divmod(-tr, k)
        assert r == 0
        coeffs[n - k] = c
    return [Fraction(coeffs[k], d ** (n - k)) for k in range(n + 1)]


# ---------------------------------------------------------------- number fields


class NumberField:
    """Q[x]/(m(x)) for a monic irreducible m with rational coefficients."""

    def __init__(self, poly: Sequence, name: str = "x"):
        poly = [as_fraction(c) for c in poly]
        if not poly or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.poly = poly
        self.degree = len(poly) - 1
        self.name = name
        self._powers = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(tuple(self.poly))

    def __repr__(self):
        return f"NumberField({[format_rational(c) for c in self.poly]})"

    def __call__(self, coeffs) -> "NFElem":
        if isinstance(coeffs, NFElem):
            return coeffs
        if isinstance(coeffs, (int, Fraction)):
            return NFElem(self, [coeffs])
        return NFElem(self, list(coeffs))

    def gen(self) -> "NFElem":
        return NFElem(self, [0, 1]) if self.degree > 1 else NFElem(self, [-self.poly[0]])

    def one(self) -> "NFElem":
        return NFElem(self, [1])

    def zero(self) -> "NFElem":
        return NFElem(self, [])

    def complex_roots(self):
        import numpy as np
        return np.roots([float(c) for c in reversed(self.poly)])


class NFElem:
    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        c = [as_fraction(x) for x in coeffs]
        if len(c) > field.degree:
            c = poly_divmod(c, field.poly)[1]
        self.c = tuple(poly_trim(c))

    def _co(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        return NFElem(self.field, [as_fraction(other)])

    def __add__(self, other):
        o = self._co(other)
        return NFElem(self.field, poly_add(list(self.c), list(o.c)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return NFElem(self.field, poly_mul(list(self.c), list(o.c)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "NFElem":
        """Inverse through the extended Euclidean algorithm against the modulus."""
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(self.field.poly), list(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible (reducible modulus?)")
        return NFElem(self.field, poly_scale(s1, 1 / r1[0]))

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c == tuple(poly_trim([as_fraction(other)]))
        if isinstance(other, NFElem):
            return self.field == other.field and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c) if len(self.c) > 1 else hash(self.c[0] if self.c else 0)

    def coeffs(self) -> list[Fraction]:
        return list(self.c) + [Fraction(0)] * (self.field.degree - len(self.c))

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (columns are images)."""
        n = self.field.degree
        cols = []
        basis = self.field.one()
        xgen = NFElem(self.field, [0, 1]) if n > 1 else None
        for i in range(n):
            cols.append((self * basis).coeffs())
            if xgen is not None:
                basis = basis * xgen
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly(self) -> list[Fraction]:
        return charpoly_matrix(self.mult_matrix())

    def norm(self) -> Fraction:
        return resultant(self.field.poly, list(self.c)) if self.c else Fraction(0)

    def trace(self) -> Fraction:
        return sum(self.mult_matrix()[i][i] for i in range(self.field.degree))

    def apply_hom(self, image: "NFElem") -> "NFElem":
        """Image under the field map sending the generator to `image`."""
        return NFElem(image.field, poly_compose_mod(list(self.c), list(image.c), image.field.poly))

    def embeddings(self):
        import numpy as np
        roots = self.field.complex_roots()
        return np.array([complex(sum(float(c) * r ** i for i, c in enumerate(self.c))) for r in roots])

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            terms.append(format_rational(a) + ("" if i == 0 else f"*{self.field.name}^{i}"))
        return " + ".join(terms)


def char_norm_at(charpoly: Sequence[Fraction], x) -> Fraction:
    """Norm(alpha - x) from the characteristic polynomial of alpha."""
    n = len(charpoly) - 1
    val = poly_eval(charpoly, as_fraction(x))
    return val if n % 2 == 0 else -val


# ---------------------------------------------------------------- finite fields


def _is_irreducible_mod(f: list[int], p: int) -> bool:
    """Rabin-style test: gcd(f, x^{p^i} - x) = 1 for i <= deg/2 (f monic)."""
    n = len(f) - 1
    xpow = [0, 1]
    for i in range(1, n // 2 + 1):
        xpow = _powmod_poly(xpow, p, f, p)
        g = poly_gcd_mod(poly_sub_mod(xpow, [0, 1], p), f, p)
        if len(g) > 1:
            return False
    return True


def poly_sub_mod(f, g, p):
    n = max(len(f), len(g))
    return _trim_mod([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _mulmod_poly(f, g, m, p):
    out = [0] * max(len(f) + len(g) - 1, 0)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _polymod_rem(_trim_mod(out), m, p) if out else []


def _powmod_poly(f, e, m, p):
    result, base = [1], list(f)
    while e:
        if e & 1:
            result = _mulmod_poly(result, base, m, p)
        base = _mulmod_poly(base, base, m, p)
        e >>= 1
    return result


class FiniteField:
    """F_{p^k} as F_p[t]/(m(t)).  For k = 2 the modulus is t^2 - r with r the least
    positive non-residue; otherwise the lexicographically first monic irreducible."""

    _cache: dict = {}

    def __new__(cls, p: int, k: int = 1):
        key = (p, k)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._setup(p, k)
            cls._cache[key] = obj
        return cls._cache[key]

    def _setup(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p ** k
        if k == 1:
            self.modulus = [0, 1]
        elif k == 2 and p != 2:
            self.modulus = [(-least_nonresidue(p)) % p, 0, 1]
        else:
            self.modulus = self._first_irreducible(p, k)

    @staticmethod
    def _first_irreducible(p, k):
        for n in range(p ** k):
            coeffs = []
            m = n
            for _ in range(k):
                coeffs.append(m % p)
                m //= p
            f = coeffs + [1]
            if f[0] and _is_irreducible_mod(f, p):
                return f
        raise RuntimeError("no irreducible polynomial found")

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __call__(self, x) -> "FFElem":
        if isinstance(x, FFElem):
            return x
        if isinstance(x, (list, tuple)):
            return FFElem(self, x)
        x = as_fraction(x)
        return FFElem(self, [x.numerator * pow(x.denominator, -1, self.p) % self.p])

    def gen(self) -> "FFElem":
        return FFElem(self, [0, 1]) if self.k > 1 else FFElem(self, [1])

    def element_of_order(self, n: int) -> "FFElem":
        if (self.q - 1) % n:
            raise ValueError(f"no element of order {n} in {self}")
        rng = random.Random(self.q * 1000003 + n)
        primes = list(factorint(n)) if n > 1 else []
        while True:
            g = FFElem(self, [rng.randrange(self.p) for _ in range(self.k)])
            if g.is_zero():
                continue
            z = g ** ((self.q - 1) // n)
            if all(z ** (n // r) != self.one() for r in primes):
                return z

    def one(self):
        return FFElem(self, [1])

    def zero(self):
        return FFElem(self, [])


class FFElem:
    __slots__ = ("F", "c")

    def __init__(self, F: FiniteField, coeffs):
        self.F = F
        c = [int(x) % F.p for x in coeffs]
        c = _trim_mod(c)
        if len(c) > F.k:
            c = _polymod_rem(c, F.modulus, F.p)
        self.c = tuple(c)

    def _co(self, other):
        if isinstance(other, FFElem):
            return other
        return self.F(other)

    def __add__(self, other):
        o = self._co(other)
        n = max(len(self.c), len(o.c))
        return FFElem(self.F, [(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0)
                               for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.F, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        if self.F.k == 1:
            return FFElem(self.F, [(self.c[0] if self.c else 0) * (o.c[0] if o.c else 0)])
        return FFElem(self.F, _mulmod_poly(list(self.c), list(o.c), self.F.modulus, self.F.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.F.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.F.q - 2)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.F(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.F is other.F and self.c == other.c

    def __hash__(self):
        return hash((self.F.p, self.F.k, self.c))

    def is_zero(self) -> bool:
        return not self.c

    def in_prime_field(self) -> bool:
        return len(self.c) <= 1

    def to_int(self) -> int:
        if not self.in_prime_field():
            raise ValueError("element is not in the prime field")
        return self.c[0] if self.c else 0

    def quadratic_character(self, degree: Optional[int] = None) -> int:
        """Quadratic character of self in the subfield F_{p^degree} containing it."""
        if self.is_zero():
            return 0
        q = self.F.p ** (degree or self.F.k)
        z = self ** ((q - 1) // 2)
        if z == self.F.one():
            return 1
        if z == -self.F.one():
            return -1
        raise ValueError("element does not lie in the requested subfield")

    def __repr__(self):
        return f"{list(self.c)} in {self.F}"


def sqrt_in_fp2(a: int, p: int) -> FFElem:
    """A square root of a in F_{p^2} = F_p[t]/(t^2 - r)."""
    F = FiniteField(p, 2)
    a %= p
    s = sqrt_mod(a, p)
    if s is not None:
        return F([s])
    r = least_nonresidue(p)
    s = sqrt_mod(a * pow(r, -1, p) % p, p)
    return F([0, s])


def reduce_rational(x, p: int) -> int:
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"{x} is not p-integral at {p}")
    return x.numerator * pow(x.denominator, -1, p) % p
