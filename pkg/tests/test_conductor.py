from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from edspowers.arith import padic_val
from edspowers.conductor import (classify_table1, conductor, lowered_level, qcurve_levels, radical_outside,
                                 tate, tate_exponent, tate_profile)
from edspowers.curves import rational_model
from edspowers.eds import eds_sequence
from edspowers.frey import FreyData, decompose, rational_frey_model
from samplers import table1_samples


@pytest.mark.parametrize("coeffs,N", [
    ([0, -1, 1, -10, -20], 11),
    ([1, -1, 1, -1, -14], 17),
    ([0, 0, 0, -1, 0], 32),
    ([0, 0, 0, 1, 0], 64),
])
def test_known_conductors(coeffs, N):
    assert conductor(rational_model(coeffs)) == N


def test_table_rows_from_examples():
    # w + z^2 = 8 mod 32 and z = 1 mod 4
    z, w = 1, 7
    assert classify_table1(z, w).exponents == (4, 3, 6, 6) and classify_table1(z, w).gamma == -1
    assert classify_table1(2, 1).exponents == (8, 8, 8, 8)
    z = 1
    w = z * z + 2 ** 9
    p = classify_table1(z, w)
    assert p.exponents == (6, 6, 4, 1) and p.gamma == -2
    w = -1 + 2 ** 7 * 3
    assert classify_table1(1, w).exponent(1) == 0
    assert tate_exponent(rational_frey_model(1, w, 1), 2) == 0


def test_classifier_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_table1(2, 4)
    with pytest.raises(ValueError):
        classify_table1(3, 9)


def test_classifier_matches_tate_on_samples():
    for z, w in table1_samples(6, seed=11):
        assert classify_table1(z, w).exponents == tate_profile(z, w), (z, w)


def test_frey_exponent_at_5_is_one():
    seq = eds_sequence(125, (F(121, 4), F(1419, 8)), 6)
    for e in seq:
        fd = decompose(125, e.point)
        assert tate_exponent(rational_frey_model(fd.z, fd.w, 1), 5) == 1


@given(st.integers(1, 60), st.integers(-300, 300))
def test_semistable_away_from_2(z, w):
    if w * w == z ** 4 or (z % 2 == 0 and w % 2 == 0):
        return
    E = rational_frey_model(z, w, 1)
    for p in (3, 5, 7, 11, 13):
        if z % p == 0 and w % p == 0:
            continue
        assert tate_exponent(E, p) <= 1


def test_lowered_levels_d125():
    for e in eds_sequence(125, (F(121, 4), F(1419, 8)), 12):
        if e.m % 2:
            continue
        fd = decompose(125, e.point)
        n = padic_val(fd.w ** 2 - fd.z ** 4, 2)
        L = lowered_level(fd)
        if n == 8:
            assert L.N == 5
        elif n > 8:
            assert L.N == 10


def test_lowered_level_requires_a1():
    with pytest.raises(ValueError):
        lowered_level(FreyData(125, 125, 1, 2, -129, 11))


def test_qcurve_levels():
    assert qcurve_levels(125, 125, -129) == (1280, 6400)
    assert qcurve_levels(-17, -17, 1) == (2 ** 5 * 17 ** 2, 2 ** 6 * 17 ** 2)
    assert qcurve_levels(-17, -17, 2) == (2 ** 8 * 17 ** 2,)
    with pytest.raises(NotImplementedError):
        qcurve_levels(3, 3, 1)


def test_radical_outside():
    assert radical_outside(2 ** 5 * 3 * 17 ** 2 * 7, {2, 17}) == 21
    assert radical_outside(1, {2}) == 1


def test_tate_kodaira_multiplicative():
    r = tate(rational_model([0, -1, 1, -10, -20]), 11)
    assert r.f == 1 and r.kodaira.startswith("I")
