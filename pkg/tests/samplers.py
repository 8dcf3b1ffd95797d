"""Random inputs shared by the unit and acceptance tests."""
import math
import random

from edspowers.conductor import classify_table1


def table1_samples(n_per_cell=20, seed=5):
    """(z, w) pairs hitting every 2-adic case of the exponent-at-2 table, both z mod 4 classes."""
    rng = random.Random(seed)
    out = []

    def push(z, w):
        if w * w != z ** 4 and math.gcd(z, w) == 1:
            out.append((z, w))
            return True
        return False

    for _ in range(n_per_cell):
        while not push(2 * rng.randrange(1, 200), rng.randrange(-399, 400) | 1):
            pass
        while not push(rng.randrange(1, 400) | 1, 2 * rng.randrange(-200, 200)):
            pass
    for sign in (1, -1):
        for k in range(2, 13):
            for zmod in (1, 3):
                for _ in range(n_per_cell // 2):
                    while True:
                        z = 4 * rng.randrange(0, 100) + zmod
                        u = rng.randrange(1, 400) | 1
                        if push(z, -sign * z * z + 2 ** k * u):
                            break
    return out


def covered_cells(samples):
    return {(classify_table1(z, w).row, z % 4 if z % 2 else "even") for z, w in samples}


# ---------------------------------------------------------------- synthetic Q-curve newforms

from fractions import Fraction  # noqa: E402

from edspowers.arith import FiniteField, NumberField, legendre, sqrt_in_fp2, sqrt_mod  # noqa: E402
from edspowers.curves import Weierstrass, frobenius_trace  # noqa: E402
from edspowers.newforms import NewformRecord  # noqa: E402


def _sqrt_in(F, a):
    p = F.p
    if F.k == 1:
        return F(sqrt_mod(a % p, p))
    return sqrt_in_fp2(a, p)


def dm17_residue_degree(p):
    return 1 if legendre(2, p) == 1 and legendre(-17, p) == 1 else 2


def dm17_twisted_trace(z, w, p):
    """a_{p^e}(E^gamma_{-17,z,w}) over the residue field F_{p^e} of Q(sqrt2, sqrt-17),
    gamma = 1 + 3 sqrt2, by counting points on the reduced model."""
    e = dm17_residue_degree(p)
    F = FiniteField(p, e)
    s, r2 = _sqrt_in(F, -17), _sqrt_in(F, 2)
    g = F(1) + F(3) * r2
    a2 = F(4) * s * F(z) * g
    a4 = F(2) * (F(-17 * z * z) + s * F(w)) * g * g
    E = Weierstrass(F(0), a2, F(0), a4, F(0))
    return e, frobenius_trace(E, p, e)


def naive_trace_fq(a2, a4, F):
    """q + 1 - #E(F_q) for y^2 = x^3 + a2 x^2 + a4 x by listing F_q."""
    q = F.q
    elems = [F([i % F.p, i // F.p][:F.k]) for i in range(q)]
    half = (q - 1) // 2
    count = 1
    for x in elems:
        v = x * x * x + a2 * x * x + a4 * x
        if v.is_zero():
            count += 1
        elif v ** half == F.one():
            count += 2
    return q + 1 - count


def synthetic_dm17_form(z, w, p, shift=0):
    """A weight 2 'newform' with trivial character whose trace of Frob_p^e matches the
    twisted Frey Q-curve at p (plus `shift`)."""
    e, t = dm17_twisted_trace(z, w, p)
    t += shift
    if e == 1:
        K, ap = NumberField([Fraction(0), Fraction(1)]), t
    else:
        # a_p^2 - 2p = t
        c = t + 2 * p
        root = math.isqrt(c) if c >= 0 else None
        if root is not None and root * root == c:
            K, ap = NumberField([Fraction(0), Fraction(1)]), root
        else:
            K, ap = NumberField([Fraction(-c), Fraction(0), Fraction(1)]), [0, 1]
    value = K(ap if isinstance(ap, list) else [ap])
    return NewformRecord(2 ** 5 * 17 ** 2, K, {p: value}, label=f"synthetic-{p}{'+' if shift else ''}")
