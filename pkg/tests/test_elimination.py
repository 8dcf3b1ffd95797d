from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from edspowers.arith import FiniteField, NumberField
from edspowers.conductor import conductor
from edspowers.curves import ed_curve, frobenius_trace, trace_power
from edspowers.elimination import (bp_value, d125_qcurve_family, dm17_qcurve_family, eliminate,
                                   frobenius_power_trace, local_data, rational_family, residual_frey_set,
                                   verify_certificates)
from edspowers.frey import decompose, rational_frey_model
from edspowers.newforms import NewformRecord, load_level
from samplers import (dm17_twisted_trace, naive_trace_fq, synthetic_dm17_form, _sqrt_in)

FAM17 = rational_family(-17)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_residual_set_partitions_plane(p):
    good, mult = residual_frey_set(p, FAM17)
    assert len(good) + len(mult) == p * p - 1
    assert all((w * w - z ** 4) % p == 0 for z, w in mult)


def test_constraint_keeps_multiplicative_pairs_only():
    good, mult = residual_frey_set(7, FAM17, p_divides_B=True)
    assert good == [] and mult
    assert local_data(FAM17, 7, p_divides_B=True).traces == ()


def test_invalid_aux_prime():
    with pytest.raises(ValueError):
        residual_frey_set(17, FAM17)
    with pytest.raises(ValueError):
        residual_frey_set(2, FAM17)


def test_local_traces_match_point_counts():
    # every good pair's curve trace (up to the twist sign) is in the local list
    for p in (3, 5, 7, 11, 13):
        loc = local_data(FAM17, p)
        for z in range(p):
            for w in range(p):
                if (w * w - z ** 4) % p == 0:
                    continue
                t = frobenius_trace(rational_frey_model(z, w, 1), p)
                assert t in loc.traces and -t in loc.traces


@given(st.integers(-20, 20), st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 5))
def test_power_trace_rational(ap, p, e):
    K = NumberField([F(0), F(1)])
    got = frobenius_power_trace(K([ap]), K.one(), p, e)
    assert got == trace_power(ap, p, e)


def test_power_trace_matches_curve_over_fp2():
    E = ed_curve(-17)
    for p in (3, 5, 7, 11):
        K = NumberField([F(0), F(1)])
        t = frobenius_trace(E, p)
        assert frobenius_power_trace(K([t]), K.one(), p, 2) == frobenius_trace(E, p, 2)


@pytest.mark.parametrize("p", [3, 5, 11, 13])
def test_fp2_point_count_against_listing(p):
    e, t = dm17_twisted_trace(3, 32, p)
    Fq = FiniteField(p, e)
    s, r2 = _sqrt_in(Fq, -17), _sqrt_in(Fq, 2)
    g = Fq(1) + Fq(3) * r2
    a2 = Fq(4) * s * Fq(3) * g
    a4 = Fq(2) * (Fq(-17 * 9) + s * Fq(32)) * g * g
    assert naive_trace_fq(a2, a4, Fq) == t


@pytest.mark.parametrize("p", [3, 5, 11, 13, 19, 29, 31, 37, 41, 43, 47])
def test_synthetic_qcurve_form_is_never_eliminated(p):
    fam = dm17_qcurve_family()
    f = synthetic_dm17_form(3, 32, p)
    loc = local_data(fam, p)
    assert bp_value(f, loc) == 0
    rep = eliminate(fam, [f], [p], lmax=200)
    assert rep.forms[0].unbounded


def test_synthetic_shift_is_detected():
    fam = dm17_qcurve_family()
    hits = [bp_value(synthetic_dm17_form(3, 32, p, shift=1), local_data(fam, p)) for p in (3, 5, 11, 13)]
    assert all(hits)


def _curve_form(E, N, primes, label):
    K = NumberField([F(0), F(1)])
    return NewformRecord(N, K, {p: K([frobenius_trace(E, p)]) for p in primes}, label=label)


def test_frey_curve_of_a_point_survives():
    # the Frey curve of an actual point is modular of its own level; it must never be eliminated
    E17 = ed_curve(-17)
    R = E17.add(E17.mul(2, (F(-4), F(2))), E17.mul(2, (F(-1), F(4))))
    fd = decompose(-17, R)
    assert fd.a == 1
    E = rational_frey_model(fd.z, fd.w, -1)
    N = conductor(E)
    primes = [p for p in (3, 5, 7, 11, 13, 19, 23, 29, 31) if N % p and fd.B % p]
    rep = eliminate(FAM17, [_curve_form(E, N, primes, "frey")], primes, lmax=100)
    assert rep.forms[0].unbounded


def test_level_4352_counts():
    ns = load_level(4352)
    primes = [p for p in range(3, 50) if p not in (2, 17) and all(p % q for q in range(2, p))]
    rep = eliminate(FAM17, ns, primes, lmin=3, lmax=1000)
    assert verify_certificates(rep, ns, FAM17)
    # 25 forms are gone for every l > 7; six more survive only at l = 7
    assert len(ns) - len(rep.survivors(7)) == 25
    assert len(ns) - len(rep.survivors(5)) == 19
    # monotone: adding constraints never revives a form
    rep2 = eliminate(FAM17, ns, primes, constraints=[3, 7], lmax=1000)
    assert {r.label for r in rep2.survivors(3)} <= {r.label for r in rep.survivors(3)}


def test_d125_family_rejects_bad_prime():
    with pytest.raises(ValueError):
        residual_frey_set(5, d125_qcurve_family())


def test_aux_prime_dividing_level_rejected():
    with pytest.raises(ValueError):
        eliminate(FAM17, load_level(34), [3, 17])
