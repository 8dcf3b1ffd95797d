import sympy as sp
import pytest

from edspowers.power_descent import (affine_points_mod_p, descent_curves_d125, genus_hyper,
                                     hasse_weil_guaranteed, local_points_exist, local_solubility,
                                     on_quotient_curve, permuted_quotients, quartic_to_elliptic)


def _primitive_solution_mod(coeffs, p, k):
    """Brute force: z^2 = G(alpha, beta) mod p^k with alpha or beta a unit."""
    m = p ** k
    n = len(coeffs) - 1
    squares = {z * z % m for z in range(m)}
    for a in range(m):
        for b in range(m):
            if a % p == 0 and b % p == 0:
                continue
            val = sum(c * pow(a, i, m) * pow(b, n - i, m) for i, c in enumerate(coeffs)) % m
            if val in squares:
                return True
    return False


def test_curves_for_l2():
    cs = descent_curves_d125(2)
    assert len(cs) == 4
    assert all(genus_hyper(c) == 3 for c in cs)
    assert str(cs[1]) == "z^2 = 125*alpha^8 - 64*beta^8"
    assert local_points_exist(cs[1], 2) is False
    assert not _primitive_solution_mod(cs[1].coefficients(), 2, 8)
    for c in (cs[0], cs[2], cs[3]):
        assert local_points_exist(c, 2) is True


def test_genus_grows():
    assert genus_hyper(descent_curves_d125(5)[0]) == 9


@pytest.mark.parametrize("l", [2, 3])
def test_odd_primes_agree_with_residue_count(l):
    for c in descent_curves_d125(l):
        for p in (3, 7, 11, 13, 29, 31):
            if c.u % p and c.v % p and affine_points_mod_p(c, p) > 0:
                assert local_points_exist(c, p) is True


def test_weil_bound_helper():
    c = descent_curves_d125(2)[0]
    assert not hasse_weil_guaranteed(c, 5)
    assert hasse_weil_guaranteed(c, 97)


@pytest.mark.parametrize("coeffs,p", [([-3, 0, 1], 7), ([2, 0, 0, 0, 5], 3), ([-1, 0, 0, 0, 3], 2)])
def test_solubility_against_brute_force(coeffs, p):
    want = _primitive_solution_mod(coeffs, p, 6 if p == 2 else 3)
    got = local_solubility(coeffs, p)
    if got is False:
        assert not want
    if not want:
        assert got is not True


def test_quartic_map_symbolic():
    A, B, C, x, y, z = sp.symbols("A B C x y z")
    X, Y, Z = B * y ** 2 * z, B * x ** 2 * y, -A * z ** 3
    cubic = Y ** 2 * Z - X ** 3 - B * C / A ** 2 * X * Z ** 2
    # eliminate C using the quartic A x^4 + B y^4 + C z^4 = 0
    on_quartic = cubic.subs(C, -(A * x ** 4 + B * y ** 4) / z ** 4)
    assert sp.simplify(on_quartic) == 0


def test_quartic_map_examples():
    pt = (1, 1, 1)
    img = quartic_to_elliptic(1, 1, -2, pt)
    assert on_quotient_curve(1, 1, -2, img)
    assert len(permuted_quotients(1, 1, -2, pt)) == 3
    with pytest.raises(ValueError):
        quartic_to_elliptic(1, 1, 1, pt)
