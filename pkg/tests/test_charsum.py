import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from nhdiff import charsum
from nhdiff.errors import (
    InternalConsistencyError,
    NotInU1,
    NotQuadratic,
    PerfectSquareInput,
    RepeatedRoots,
)
from nhdiff.field import make_field
from nhdiff.poly import PolySpec


def legendre(x, p):
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def brute_prime_sum(p, coeffs):
    return sum(legendre(sum(c * x**i for i, c in enumerate(coeffs)), p) for x in range(p))


@pytest.mark.parametrize("p,coeffs", [(7, [1, 0, 1]), (7, [0, 4, 5, 1]), (11, [0, 4, 5, 1]),
                                      (7, [0, -1, 0, 1])])
def test_char_sum_against_legendre(p, coeffs):
    ctx = make_field(p)
    f = PolySpec.from_ints(ctx, coeffs)
    assert charsum.char_sum(ctx, f).value == brute_prime_sum(p, coeffs)


def test_char_sum_examples():
    f7, f11 = make_field(7), make_field(11)
    assert brute_prime_sum(7, [1, 0, 1]) == -1
    assert charsum.char_sum(f7, [1, 0, 1]).value == -1
    assert charsum.gamma_pn(f7) == brute_prime_sum(7, [0, 4, 5, 1]) == 0
    assert charsum.gamma_pn(f11) == brute_prime_sum(11, [0, 4, 5, 1]) == -4


def test_quadratic_closed_form_examples():
    f7, f11 = make_field(7), make_field(11)
    assert charsum.quadratic_sum_closed(f7, 1, 0, 1).value == -1
    assert charsum.quadratic_sum_closed(f7, 1, 2, 1).value == 6
    assert charsum.quadratic_sum_closed(f11, 3, 0, 0).value == 10
    with pytest.raises(NotQuadratic):
        charsum.quadratic_sum_closed(f7, 0, 1, 1)


@pytest.mark.parametrize("p", [7, 11])
def test_quadratic_closed_form_exhaustive(p):
    ctx = make_field(p)
    for a2 in range(1, p):
        for a1 in range(p):
            for a0 in range(p):
                closed = charsum.quadratic_sum_closed(ctx, a2, a1, a0).value
                assert closed == charsum.char_sum(ctx, [a0, a1, a2]).value


def test_quadratic_closed_form_random_f343(f343):
    rng = random.Random(7)
    for _ in range(200):
        a2 = rng.randrange(1, 343)
        a1, a0 = rng.randrange(343), rng.randrange(343)
        assert (charsum.quadratic_sum_closed(f343, a2, a1, a0).value
                == charsum.char_sum(f343, [a0, a1, a2]).value)


@pytest.mark.parametrize("p,coeffs,expected", [
    (7, [0, 4, 5, 1], 8), (11, [0, 4, 5, 1], 8), (7, [0, 6, 0, 1], 8)])
def test_ec_point_count(p, coeffs, expected):
    ctx = make_field(p)
    brute = 1 + sum(1 for x in range(p) for y in range(p)
                    if (y * y - sum(c * x**i for i, c in enumerate(coeffs))) % p == 0)
    assert brute == expected
    assert charsum.ec_point_count(ctx, coeffs) == expected
    assert charsum.count_curve_points(ctx, coeffs) == expected


def test_ec_point_count_repeated_root():
    with pytest.raises(RepeatedRoots):
        charsum.ec_point_count(make_field(7), [0, 1, 2, 1])


def test_cyclotomic_examples():
    assert charsum.cyclotomic_numbers(make_field(7)) == charsum.CyclotomicNumbers(1, 2, 1, 1)
    assert charsum.cyclotomic_numbers(make_field(11)) == charsum.CyclotomicNumbers(2, 3, 2, 2)
    assert charsum.cyclotomic_numbers(make_field(13)) == charsum.CyclotomicNumbers(2, 3, 3, 3)
    assert charsum.cyclotomic_numbers(make_field(3, 3)) == charsum.cyclotomic_closed_form(27)


def test_cyclotomic_brute_f13():
    p = 13
    counts = {(i, j): 0 for i in (0, 1) for j in (0, 1)}
    for x in range(p):
        a, b = legendre(x, p), legendre(x + 1, p)
        if a and b:
            counts[(0 if a == 1 else 1, 0 if b == 1 else 1)] += 1
    assert counts == {(0, 0): 2, (0, 1): 3, (1, 0): 3, (1, 1): 3}


def test_cyclotomic_mismatch_is_internal_error(monkeypatch):
    monkeypatch.setattr(charsum, "cyclotomic_closed_form", lambda q: charsum.CyclotomicNumbers(0, 0, 0, 0))
    with pytest.raises(InternalConsistencyError):
        charsum.cyclotomic_numbers(make_field(7))


def test_gamma_pn_characteristic_three():
    ctx = make_field(3, 3)
    assert charsum.gamma_pn(ctx) == 1
    rep = charsum.certified_sum(ctx, charsum.gamma_pn_poly(ctx))
    assert rep.within_weil and rep.weil_interval[1] == pytest.approx(math.sqrt(27))


def test_gammas_at_minus_one(small_field):
    ctx = small_field
    g0, g1, _ = charsum.gammas(ctx, ctx.neg(1))
    assert g0 == 0
    assert g1 == ctx.q - 1


def test_gamma_f11_u2_brute():
    p, u = 11, 2
    g0 = brute_prime_sum(p, [0, 4 * u * u * (u + 1), -4 * (u + 1), u + 1])
    g1 = brute_prime_sum(p, [0, 1 - u * u, u * u - 2 * u - 2, (u + 1) ** 2])
    g2 = brute_prime_sum(p, [-16 * u * u * (u + 1) ** 2, 4 * (u + 2) ** 2 * (u + 1),
                             -4 * (u + 2) * (u + 1), u + 1])
    ctx = make_field(p)
    assert charsum.gammas(ctx, u) == (g0, g1, g2)
    for g in (g0, g1, g2):
        assert g * g <= 4 * p


def brute_t(p, u):
    t1 = t2 = 0
    for z in range(1, p):
        common = legendre(z * z - 4 * z + 4 * u * u, p) == 1
        if legendre((u + 1) * z, p) == -1 and legendre(z * z - 4 * (u + 1) * z, p) == 1 and common:
            t1 += 1
        if legendre((u + 1) * z, p) == 1 and legendre(z * z + 4 * (u - 1) * z, p) == 1 and common:
            t2 += 1
    return t1, t2


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_t_counts_against_brute(p):
    ctx = make_field(p)
    for u in range(p):
        if legendre(u + 1, p) != legendre(u - 1, p):
            with pytest.raises(NotInU1):
                charsum.t_counts(ctx, u)
            continue
        tc = charsum.t_counts(ctx, u)
        assert (tc.t1, tc.t2) == brute_t(p, u)
        assert tc.t1_formula_ok and tc.t_formula_ok and tc.symmetry_ok
        assert tc.t1 == charsum.t_counts(ctx, ctx.neg(u)).t2


def test_t_counts_f7_u3():
    ctx = make_field(7)
    tc = charsum.t_counts(ctx, 3)
    assert tc.t == tc.t1 + tc.t2
    assert 8 * tc.t1 == 7 - 7 - tc.gamma0 + tc.gamma1 - tc.gamma2


def test_t_counts_f11_u2_gamma_identity():
    ctx = make_field(11)
    tc = charsum.t_counts(ctx, 2)
    assert 8 * tc.t == 2 * 11 - 14 + tc.gamma1 - tc.gamma2 + tc.gamma1_neg - tc.gamma2_neg


def test_constant_gamma0_variant_breaks_identity():
    ctx = make_field(11)
    for u in range(11):
        if charsum._in_u1(ctx, u):
            tc = charsum.t_counts(ctx, u)
            alt = 11 - 7 - tc.gamma0_constant_variant + tc.gamma1 - tc.gamma2
            assert alt != 8 * tc.t1


def test_weil_certify():
    f11 = make_field(11)
    assert charsum.weil_certify(f11, [0, 4, 5, 1], 3)
    with pytest.raises(PerfectSquareInput):
        charsum.weil_certify(make_field(7), [0, 0, 1], 1)
    with pytest.raises(PerfectSquareInput):
        charsum.weil_certify(make_field(7), [3], 1)
    assert charsum.weil_certify(make_field(3, 3), [0, 1, 2, 1], 2)


def test_certified_sum_skips_squares():
    rep = charsum.certified_sum(make_field(7), [1, 2, 1])
    assert rep.weil_interval is None and rep.value == 6


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 22), min_size=2, max_size=5))
def test_weil_bound_random_polys_f23(coeffs):
    ctx = make_field(23)
    rep = charsum.certified_sum(ctx, coeffs)
    if rep.within_weil is not None:
        assert rep.within_weil
    assert abs(rep.value) <= ctx.q
