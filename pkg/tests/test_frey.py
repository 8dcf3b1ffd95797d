from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from edspowers.cases import CASES
from edspowers.eds import eds_sequence
from edspowers.frey import (FreyData, coprime_outside, decompose, frey_invariants, frey_model,
                            has_cm_candidate, j_nonintegral_at, rational_frey_model)

P125 = (F(121, 4), F(1419, 8))


def test_decompose_examples():
    assert decompose(125, P125) == FreyData(125, 1, 125, 11, 129, 2)
    assert decompose(125, (F(500, 121), F(-32250, 1331))) == FreyData(125, 125, 1, 2, -129, 11)
    assert decompose(-17, (F(-4), F(2))) == FreyData(-17, -1, 17, 2, -1, 1)
    assert 129 ** 2 == 11 ** 4 + 125 * 2 ** 4


def test_decompose_rejects_torsion():
    with pytest.raises(ValueError):
        decompose(-17, (F(0), F(0)))
    with pytest.raises(ValueError):
        decompose(-17, None)


@pytest.mark.parametrize("name", sorted(CASES))
def test_frey_identity_and_even_multiples(name):
    c = CASES[name]
    for e in eds_sequence(c.D, c.point, 12):
        fd = decompose(c.D, e.point)
        assert fd.check() and fd.a * fd.a_hat == c.D
        if e.m % 2 == 0:
            assert fd.a == 1


def test_rational_model():
    E = rational_frey_model(11, 129, 1)
    assert E.a == (0, 44, 0, 2 * (121 + 129), 0)


@pytest.mark.parametrize("a,z,w", [(1, 11, 129), (125, 2, -129), (-17, 3, 8)])
def test_invariant_relations(a, z, w):
    inv = frey_invariants(a, z, w)
    assert inv.c4 ** 3 == inv.j * inv.delta
    fd = FreyData(0, a, 0, z, w, 0)
    E = frey_model(fd)
    assert E.c4 == inv.c4 and E.discriminant == inv.delta


def test_coprime_outside():
    assert coprime_outside(frey_invariants(1, 11, 129))
    assert coprime_outside(frey_invariants(125, 2, -129), gamma_norm=1)


def test_j_nonintegral():
    c = CASES["table3-iii"]
    seq = eds_sequence(c.D, c.point, 4)
    fd = decompose(c.D, seq[0].point)
    assert fd.B == 7 and j_nonintegral_at(fd, 7)
    with pytest.raises(ValueError):
        j_nonintegral_at(decompose(125, P125), 2)
    checked = 0
    for e in eds_sequence(125, P125, 4):
        fd = decompose(125, e.point)
        if fd.B % 8 == 0:
            assert j_nonintegral_at(fd, 2)
            assert not has_cm_candidate(fd)
            checked += 1
    assert checked


@given(st.integers(1, 40), st.integers(-200, 200))
def test_j_relation_sampled(z, w):
    if w * w == z ** 4:
        return
    inv = frey_invariants(1, z, w)
    assert inv.c4 ** 3 == inv.j * inv.delta
