import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from edspowers.arith import QuadElem
from edspowers.frey import FreyData, decompose, frey_invariants
from edspowers.irreducibility import (EXCLUDED, L13_J, L7_J, UNKNOWN, a1_irreducible,
                                      frey_irreducible, is_norm_from, phi2, point_irreducible,
                                      reducibility_locus_j)


def _norm_brute(a, d, bound=40):
    """x^2 - d y^2 = a Z^2 with Z != 0 in a box (d < 0, so the form is definite)."""
    for Z in range(1, bound):
        target = a * Z * Z
        if target < 0:
            return False
        for y in range(0, math.isqrt(target // -d) + 1):
            r = target + d * y * y
            if math.isqrt(r) ** 2 == r:
                return True
    return False


@pytest.mark.parametrize("d", [-1, -2])
def test_is_norm_from_brute_force(d):
    for a in range(-50, 51):
        if a:
            assert is_norm_from(a, d) == _norm_brute(a, d), (a, d)


def test_norm_examples():
    assert is_norm_from(125, -1)
    assert not is_norm_from(-1, -2)
    with pytest.raises(ValueError):
        is_norm_from(0, -1)


def test_qcurve_verdicts():
    fd = decompose(125, (F(500, 121), F(-32250, 1331)))
    assert frey_irreducible(5, fd).verdict == UNKNOWN
    assert frey_irreducible(13, fd).irreducible
    assert frey_irreducible(19, fd).irreducible          # 11 | B
    fd17 = FreyData(-17, -17, 1, 1, 4, 7)
    assert frey_irreducible(19, fd17, B_factorization=[7]).irreducible
    assert frey_irreducible(19, fd17, B_factorization=[2, 3]).verdict == UNKNOWN
    assert frey_irreducible(3, fd17).irreducible          # -17 is not a norm from Q(sqrt -2)


def test_rational_verdicts():
    assert point_irreducible(3, 125, (F(121, 4), F(1419, 8))).verdict == EXCLUDED
    assert a1_irreducible(5, 1, 2, 3).verdict == EXCLUDED
    assert point_irreducible(5, 3, (F(1), F(2))).verdict == EXCLUDED
    assert point_irreducible(5, 3, (F(1), F(-2))).verdict == EXCLUDED
    assert a1_irreducible(11, 11, 129, 125).irreducible
    assert a1_irreducible(7, 11, 129, 125).irreducible
    with pytest.raises(ValueError):
        a1_irreducible(7, 3, 9, 125)


@given(st.integers(1, 200), st.integers(-2000, 2000))
def test_l7_check_never_hits_exceptional_j(z, w):
    if w * w == z ** 4:
        return
    j = frey_invariants(1, z, w).j
    assert j not in (F(-3375), F(16581375)) or abs(F(w, z * z)) in (1, F(65, 63))


def test_constant_tables():
    assert F(-3375) in L7_J
    s = QuadElem(13, 0, 1)
    assert set(L13_J) == {3448440000 + 956448000 * s, 3448440000 - 956448000 * s}


def test_locus_values_are_qcurve_j_invariants():
    # a Q-curve of degree 2 is 2-isogenous to its conjugate: Phi_2(j, j^sigma) = 0
    for l, (x, y), a in [(5, (11, 2), 125), (5, (1, 2), 5), (3, (3, 1), 11), (3, (1, 1), 3)]:
        j = reducibility_locus_j(l, x, y, a)
        assert phi2(j, j.conj()) == 0


@given(st.sampled_from([(5, 11, 2, 125), (5, 2, 1, 5), (3, 3, 1, 11), (3, 1, 1, 3)]), st.integers(1, 9))
def test_locus_negation_gives_conjugate(case, k):
    # the rational part has even degree in (x, y) and the sqrt(a) part odd degree
    l, x, y, a = case
    j = reducibility_locus_j(l, k * x, k * y, a * k * k)
    assert reducibility_locus_j(l, -k * x, -k * y, a * k * k) == j.conj()


def test_locus_rejects_off_conic():
    with pytest.raises(ValueError):
        reducibility_locus_j(5, 1, 1, 3)


@given(st.integers(1, 30), st.integers(-300, 300))
def test_frey_qcurves_are_2_isogenous_to_conjugates(z, w):
    if w * w == 125 * z ** 4:
        return
    j = frey_invariants(125, z, w).j
    assert phi2(j, j.conj()) == 0
