"""Elliptic divisibility sequences on E_D : y^2 = x^3 + Dx.

For a point P of infinite order write x(mP) = A_m / B_m^2 and y(mP) = C_m / B_m^3
in lowest terms with B_m > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .arith import integer_nth_root, primes_up_to, factorint
from .curves import ed_curve, torsion_order


@dataclass(frozen=True)
class EdsEntry:
    m: int
    A: int
    B: int
    C: int
    point: tuple


@dataclass(frozen=True)
class DivisorConstraint:
    """q | B_m for every m divisible by n."""
    q: int
    n: int

    def applies(self, m: int) -> bool:
        return m % self.n == 0


def split_coordinates(P) -> tuple[int, int, int]:
    """(A, B, C) with x = A/B^2, y = C/B^3, B > 0."""
    x, y = P
    den = x.denominator
    B = math.isqrt(den)
    if B * B != den:
        raise ValueError(f"x-denominator {den} is not a square; not an integral model point")
    if y.denominator != B ** 3:
        raise ValueError("y-denominator is not B^3")
    return x.numerator, B, y.numerator


def eds_sequence(D: int, P, M: int) -> list[EdsEntry]:
    """Entries for m = 1..M.  Raises if P is torsion."""
    E = ed_curve(D)
    if not E.is_on(P):
        raise ValueError(f"{P} is not on y^2 = x^3 + {D}x")
    if torsion_order(E, P) is not None:
        raise ValueError(f"{P} is a torsion point")
    out = []
    Q = None
    for m in range(1, M + 1):
        Q = E.add(Q, P)
        A, B, C = split_coordinates(Q)
        out.append(EdsEntry(m, A, B, C, Q))
    return out


def check_entry(D: int, e: EdsEntry) -> bool:
    return e.C * e.C == e.A ** 3 + D * e.A * e.B ** 4 and math.gcd(e.A, e.B) == 1 and e.B > 0


def check_divisibility(entries: list[EdsEntry]) -> bool:
    """n | m implies B_n | B_m, over the supplied range."""
    by_m = {e.m: e.B for e in entries}
    for n, Bn in by_m.items():
        for m in range(2 * n, max(by_m) + 1, n):
            if m in by_m and by_m[m] % Bn:
                return False
    return True


def find_perfect_powers(entries: Iterable[EdsEntry], lmax: int = 61) -> list[tuple[int, int, int]]:
    """(m, r, l) with B_m = r^l for primes l <= lmax and B_m > 1."""
    out = []
    for e in entries:
        if e.B <= 1:
            continue
        for l in primes_up_to(min(lmax, e.B.bit_length())):
            r = integer_nth_root(e.B, l)
            if r is not None:
                out.append((e.m, r, l))
    return out


def divisor_constraints(entries: list[EdsEntry], bound: int = 10**6) -> list[DivisorConstraint]:
    """For each small prime q | B_n, the constraint q | B_m whenever n | m.
    Only the least n for each q is kept; primes above `bound` are skipped."""
    seen: dict[int, int] = {}
    for e in entries:
        if e.B <= 1:
            continue
        B = e.B
        for q in primes_up_to(100):
            if B % q == 0 and q not in seen:
                seen[q] = e.m
        if B < bound ** 2:
            for q in factorint(B):
                if q <= bound and q not in seen:
                    seen[q] = e.m
    return [DivisorConstraint(q, n) for q, n in sorted(seen.items())]


def growth_profile(entries: list[EdsEntry]) -> list[tuple[int, float]]:
    """(m, log B_m / m^2); the ratio tends to the canonical height (up to normalisation)."""
    return [(e.m, math.log(e.B) / e.m ** 2 if e.B > 1 else 0.0) for e in entries]
