"""2-descent maps alpha_delta : E_D(Q) -> Q(sqrt(-D))^* / squares, delta = +-1.

alpha_delta(P) = [x + delta sqrt(-D)]; the pair (alpha_+1, alpha_-1) has kernel 2E_D(Q),
and a_P is read off from these classes, so a_P only depends on P mod 2E_D(Q).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadElem, is_square_quad, quad_from_sqrt, rational_sqrt, squarefree_part
from .curves import ed_curve


def _elem_sqrt_exact(x):
    if isinstance(x, QuadElem):
        return is_square_quad(x)
    return rational_sqrt(x) if x > 0 else None


@dataclass(frozen=True)
class SquareClass:
    """An element of K^*/K^*2 for K = Q or a quadratic field, kept by a representative."""
    rep: object

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.rep * other.rep)

    def is_trivial(self) -> bool:
        return _elem_sqrt_exact(self.rep) is not None

    def __eq__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        return SquareClass(self.rep * other.rep).is_trivial()

    def __hash__(self):
        n = self.rep.norm() if isinstance(self.rep, QuadElem) else Fraction(self.rep)
        return hash(squarefree_part(n.numerator * n.denominator))

    def norm_class(self) -> int:
        """Squarefree representative of the norm down to Q."""
        n = self.rep.norm() if isinstance(self.rep, QuadElem) else Fraction(self.rep) ** 2
        return squarefree_part(n.numerator * n.denominator)


def alpha_delta(P, delta: int, D: int) -> SquareClass:
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if P is None:
        return SquareClass(Fraction(1))
    E = ed_curve(D)
    if not E.is_on(P):
        raise ValueError("point not on curve")
    s = quad_from_sqrt(-D)
    x = P[0]
    val = x + delta * s
    if val == 0:
        # P is the 2-torsion point (e, 0) with e = -delta sqrt(-D) rational;
        # use the product of e minus the other two roots 0 and -e
        e = -delta * s
        val = e * (2 * e)
    return SquareClass(val)


def minus_d_is_square(D: int) -> bool:
    return rational_sqrt(-D) is not None if D < 0 else False


def in_double_image(P, D: int) -> bool:
    """True iff P lies in 2E_D(Q)."""
    return alpha_delta(P, 1, D).is_trivial() and alpha_delta(P, -1, D).is_trivial()


def a_class_from_descent(P, D: int) -> int:
    """Squarefree class of a_P in Q^*/Q^*2 computed from the descent maps."""
    ap, am = alpha_delta(P, 1, D), alpha_delta(P, -1, D)
    if minus_d_is_square(D):
        v = Fraction(ap.rep) * Fraction(am.rep)
        return squarefree_part(v.numerator * v.denominator)
    return ap.norm_class()


def same_a_class(P, Q, D: int) -> bool:
    """P and Q agree modulo 2E_D(Q), hence give the same a."""
    E = ed_curve(D)
    return in_double_image(E.sub(P, Q), D)


def descent_summary(P, D: int) -> dict:
    ap, am = alpha_delta(P, 1, D), alpha_delta(P, -1, D)
    return {
        "alpha_plus": str(ap.rep),
        "alpha_minus": str(am.rep),
        "in_2E": ap.is_trivial() and am.is_trivial(),
        "a_class": a_class_from_descent(P, D),
    }
