import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nhdiff import nh, oracle
from nhdiff.errors import (
    BudgetExceeded,
    Unsupported,
    UnsupportedCharacteristic,
    UnsupportedFieldShape,
    WrongUClass,
    ZeroDirection,
)
from nhdiff.field import make_field
from nhdiff.nh import NHParams


def legendre(x, p):
    x %= p
    return 0 if x == 0 else (1 if pow(x, (p - 1) // 2, p) == 1 else -1)


def direct_row(p, u, a):
    f = [(u * pow(x, (p - 1) // 2 - 1, p) + pow(x, p - 2, p)) % p for x in range(p)]
    return Counter((f[(x + a) % p] - f[x]) % p for x in range(p))


def test_params_shape():
    with pytest.raises(UnsupportedFieldShape):
        NHParams(make_field(5), 1)
    with pytest.raises(UnsupportedFieldShape):
        NHParams(make_field(3), 1)
    pr = NHParams(make_field(11), 2)
    assert (pr.d1, pr.d2) == (4, 9)
    assert pr.d1 % 2 == 0 and pr.d2 % 2 == 1


def test_f_eval_f7_u1():
    expected = [(x**2 + x**5) % 7 for x in range(7)]
    assert expected == [0, 2, 1, 0, 4, 0, 0]
    pr = NHParams(make_field(7), 1)
    assert [int(nh.f_eval(pr, x)) for x in range(7)] == expected
    assert [int(nh.f_eval_direct(pr, x)) for x in range(7)] == expected
    assert list(nh.f_table(pr).values) == expected


def test_fast_and_direct_paths_agree(small_field):
    ctx = small_field
    for u in range(ctx.q):
        pr = NHParams(ctx, u)
        assert np.array_equal(nh.f_table(pr).values, nh.f_table_direct(pr).values)
        assert int(nh.f_eval(pr, 0)) == 0


def test_odd_symmetry(small_field):
    ctx = small_field
    for u in range(ctx.q):
        fu = nh.f_table(NHParams(ctx, u)).values
        fm = nh.f_table(NHParams(ctx, ctx.neg(u))).values
        for x in range(ctx.q):
            assert fu[ctx.neg(x)] == ctx.neg(int(fm[x]))


def test_classify_examples():
    f7 = make_field(7)
    fl = nh.classify_u(f7, 3)
    assert fl.in_u1 and fl.in_u11 and not fl.in_u10 and not fl.in_u12
    assert nh.classify_u(f7, 5).in_u0 and nh.classify_u(f7, 5).special == "plus_4_5"
    f11 = make_field(11)
    assert nh.classify_u(f11, 5).in_table_a and nh.classify_u(f11, 6).in_table_a
    both = nh.classify_u(f11, 2)
    assert both.in_u10 and both.in_u11
    with pytest.raises(UnsupportedFieldShape):
        nh.classify_u(make_field(13), 1)


def test_classify_against_legendre():
    for p in (7, 11, 19, 23, 31):
        ctx = make_field(p)
        for u in range(p):
            fl = nh.classify_u(ctx, u)
            c = legendre(u + 1, p)
            in_u1 = c == legendre(u - 1, p)
            assert fl.in_u1 == in_u1
            assert fl.in_u10 == (in_u1 and c == -legendre(5 * u + 3, p))
            assert fl.in_u11 == (in_u1 and c == -legendre(5 * u - 3, p))
            assert fl.in_u12 == (in_u1 and c == legendre(5 * u + 3, p) == legendre(5 * u - 3, p))


def test_classify_invariants(small_field):
    ctx = small_field
    fixed = {0, 1, ctx.neg(1)}
    if ctx.p != 5:
        fixed |= {ctx.from_ratio(3, 5), ctx.from_ratio(-3, 5)}
    for u in range(ctx.q):
        fl = nh.classify_u(ctx, u)
        assert fl.in_u0 != fl.in_u1
        if fl.in_u12:
            assert fl.in_u1 and not (fl.in_u10 or fl.in_u11)
        if u in fixed:
            assert fl.in_u0


def test_table_a_resource():
    assert len(nh.TABLE_A) == 22
    assert (11, 1, 5) in nh.TABLE_A and (11, 1, 6) in nh.TABLE_A


def test_solve_examples_f7_u1():
    pr = NHParams(make_field(7), 1)
    assert dict(direct_row(7, 1, 1)) == {0: 2, 2: 1, 3: 1, 4: 1, 6: 2}
    assert nh.solve_derivative(pr, 1, 6).n_total == 2
    with pytest.raises(ZeroDirection):
        nh.solve_derivative(pr, 0, 1)


def test_solve_b_zero_counts(small_field):
    ctx = small_field
    for u in range(ctx.q):
        fl = nh.classify_u(ctx, u)
        for a in range(1, ctx.q):
            rep = nh.solve_derivative(NHParams(ctx, u), a, 0)
            if fl.in_u1:
                assert rep.n_generic == 1
            if fl.special in ("plus_one", "minus_one"):
                assert rep.n_generic == (ctx.q - 3) // 4


@pytest.mark.parametrize("p", [7, 11, 19])
def test_solver_matches_direct_scan(p):
    ctx = make_field(p)
    for u in range(p):
        pr = NHParams(ctx, u)
        for a in range(1, p):
            row = direct_row(p, u, a)
            for b in range(p):
                rep = nh.solve_derivative(pr, a, b)
                assert rep.n_total == row.get(b, 0) == len(rep.solutions)
                assert rep.n_total == rep.n_special + rep.n_generic


def test_case_trace_tau_consistency():
    ctx = make_field(23)
    for u in (2, 5, 11):
        pr = NHParams(ctx, u)
        for a in range(1, 23, 5):
            for b in range(23):
                rep = nh.solve_derivative(pr, a, b)
                for t in rep.case_trace:
                    if t.status == "desired":
                        x = int(t.x)
                        assert (ctx.chi(ctx.add(x, a)), ctx.chi(x)) == t.tau
                        assert t.x in rep.solutions


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 342), st.integers(1, 342), st.integers(0, 342))
def test_solver_random_f343(u, a, b):
    ctx = make_field(7, 3)
    pr = NHParams(ctx, u)
    f = nh.f_table(pr).values
    xs = np.arange(ctx.q)
    direct = int(np.count_nonzero(ctx.vsub(f[ctx.vadd(xs, a)], f) == b))
    assert nh.solve_derivative(pr, a, b).n_total == direct


def test_spectrum_formula_u0_f7():
    spec = nh.spectrum_formula(NHParams(make_field(7), 0))
    assert spec.omegas == [6 * w for w in (4, 1, 1, 0, 1)]


def test_spectrum_formula_pm1_f7():
    ctx = make_field(7)
    spec = nh.spectrum_formula(NHParams(ctx, 1))
    orc = oracle.spectrum_oracle(ctx, nh.f_table(NHParams(ctx, 1)))
    assert orc.omegas == [12, 18, 12]
    assert spec.omegas[1] == 18 and spec.omegas[2] == 12
    assert spec.variants["identity_completing"] == orc.omegas
    assert any("merged" in s for s in spec.notes)
    assert not spec.identities_hold(7) and spec.identities_hold(7, spec.variants["identity_completing"])


def test_spectrum_formula_p3_pm1_gated():
    with pytest.raises(Unsupported):
        nh.spectrum_formula(NHParams(make_field(3, 3), 1))


def test_spectrum_formula_u0_unsupported():
    ctx = make_field(23)
    u = next(u for u in range(23) if nh.classify_u(ctx, u).label == "U0_other")
    with pytest.raises(Unsupported):
        nh.spectrum_formula(NHParams(ctx, u))


def test_spectrum_formula_f7_u3_oracle_wins():
    # u = 3 lies in U_11 only; the printed U_10 u U_11 form misses the special lines
    ctx = make_field(7)
    pr = NHParams(ctx, 3)
    orc = oracle.spectrum_oracle(ctx, nh.f_table(pr))
    spec = nh.spectrum_formula(pr)
    assert orc.omegas == [12, 18, 12]
    assert spec.omegas != orc.omegas
    assert spec.variants["special_line_corrected"] == orc.omegas


def test_spectrum_formula_both_classes_exact():
    ctx = make_field(11)
    pr = NHParams(ctx, 2)
    assert nh.spectrum_formula(pr).omegas == oracle.spectrum_oracle(ctx, nh.f_table(pr)).omegas


def test_uniformity_examples():
    f7, f11 = make_field(7), make_field(11)
    assert nh.uniformity_formula(f7, 1) == nh.uniformity_formula(f7, 6) == 2
    assert nh.uniformity_formula(f11, 5) == 3
    assert nh.uniformity_formula(f7, 5) == 3
    with pytest.raises(UnsupportedFieldShape):
        nh.uniformity_formula(make_field(13), 0)


def test_apn_examples():
    assert nh.apn_predicate(make_field(11), 0)
    assert nh.apn_predicate(make_field(7), 3)
    assert not nh.apn_predicate(make_field(7), 0)
    assert nh.apn_predicate(make_field(7), 1) and nh.apn_predicate(make_field(7), 6)
    assert not nh.apn_predicate(make_field(11), 1)


def test_four_solution_condition_against_ddt():
    ctx = make_field(23)
    hits = 0
    for u in nh.admissible_u0(ctx) + [ctx.from_ratio(4, 5), ctx.from_ratio(-4, 5)]:
        pr = NHParams(ctx, u)
        ddt = oracle.ddt_matrix(ctx, nh.f_table(pr))
        for a in range(1, 23):
            assert not nh.four_solution_condition(pr, a, 0)
            for b in range(23):
                cond = nh.four_solution_condition(pr, a, b)
                assert cond == (ddt[a - 1, b] == 4)
                if cond:
                    hits += 1
                    assert nh.classify_u(ctx, u).special is None
    assert hits > 0
    with pytest.raises(WrongUClass):
        nh.four_solution_condition(NHParams(ctx, 1), 1, 1)


def test_m_count_examples():
    assert nh.m_count(NHParams(make_field(11), 5)).m_count == 0
    ctx = make_field(23)
    with pytest.raises(WrongUClass):
        nh.m_count(NHParams(ctx, 2))
    assert nh.classify_u(ctx, 2).in_u1
    assert oracle.uniformity_oracle(ctx, nh.f_table(NHParams(ctx, 2))) == 2
    with pytest.raises(WrongUClass):
        nh.m_count(NHParams(ctx, ctx.from_ratio(4, 5)))


def test_m_count_equals_pair_count():
    ctx = make_field(31)
    for u in nh.admissible_u0(ctx):
        pr = NHParams(ctx, u)
        m = nh.m_count(pr).m_count
        ddt = oracle.ddt_matrix(ctx, nh.f_table(pr))
        assert int((ddt == 4).sum()) == (ctx.q - 1) * m


def test_n45_count():
    with pytest.raises(UnsupportedCharacteristic):
        nh.n45_count(make_field(3, 3))
    f7 = make_field(7)
    brute = sum(1 for z in range(7) if legendre(z, 7) == -1 and legendre(z * z - 36 * z, 7) == 1
                and legendre(z * z - 20 * z + 64, 7) == 1 and legendre(z - 4, 7) == 1)
    assert nh.n45_count(f7).n45_count == brute
    assert oracle.uniformity_oracle(f7, nh.f_table(NHParams(f7, 5))) == 3
    f11 = make_field(11)
    u = f11.from_ratio(4, 5)
    assert u == 3 and nh.classify_u(f11, u).in_u0
    assert oracle.uniformity_oracle(f11, nh.f_table(NHParams(f11, u))) == 3
    assert nh.n45_count(make_field(127)).n45_count > 0


def test_reproduce_table_a_small():
    assert nh.reproduce_table_a(11) == [5, 6]
    assert nh.reproduce_table_a(19) == [2, 17]
    assert nh.reproduce_table_a(7) == []
    with pytest.raises(BudgetExceeded):
        nh.reproduce_table_a(151, budget=100)


@pytest.mark.parametrize("p", [11, 19, 23])
def test_branch_condition_equivalence(p):
    ctx = make_field(p)
    checked = 0
    for u in range(p):
        fl = nh.classify_u(ctx, u)
        if not fl.in_u0 or fl.special in ("zero", "plus_one", "minus_one"):
            continue
        pr = NHParams(ctx, u)
        for z in range(1, p):
            sides = nh.branch_equivalence_sides(pr, z)
            if sides is not None:
                assert sides[0] == sides[1]
                checked += 1
    assert checked > 0


def test_pm1_row_structure(small_field):
    ctx = small_field
    if ctx.q == 7:
        pytest.skip("delta collides with the generic bucket at q = 7")
    for u in (1, ctx.neg(1)):
        ddt = oracle.ddt_matrix(ctx, nh.f_table(NHParams(ctx, u)))
        heavy = (ddt == (ctx.q + 1) // 4)
        assert np.all(heavy.sum(axis=1) == 1)
        assert np.all(heavy[:, 0])


def test_u_set_cardinalities_f7():
    card = nh.u_set_cardinalities(make_field(7))
    assert (card["U1"], card["U10"], card["U11"], card["U10_or_U11"]) == (2, 1, 1, 2)
    assert card["U1_ok"] and card["U10_ok"] and not card["union_matches_formula"]
