"""Quadratic character sums over F_q.

Every sum here is computed by enumerating the field; closed forms
(quadratic sums, cyclotomic numbers, the T-count identities) are evaluated
alongside and compared against the enumeration, never used in its place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import poly
from .errors import (
    InternalConsistencyError,
    NotInU1,
    NotQuadratic,
    PerfectSquareInput,
    RepeatedRoots,
)
from .field import FieldCtx, FieldElement
from .poly import PolySpec


@dataclass
class CharSumReport:
    value: int
    method: str  # "direct" | "closed_form"
    weil_interval: Optional[tuple[float, float]] = None
    within_weil: Optional[bool] = None

    def to_dict(self):
        return {
            "value": self.value,
            "method": self.method,
            "weil_interval": list(self.weil_interval) if self.weil_interval else None,
            "within_weil": self.within_weil,
        }


@dataclass(frozen=True)
class CyclotomicNumbers:
    n00: int
    n01: int
    n10: int
    n11: int


@dataclass
class TCounts:
    u: FieldElement
    t1: int
    t2: int
    t: int
    gamma0: int
    gamma1: int
    gamma2: int
    gamma0_neg: int
    gamma1_neg: int
    gamma2_neg: int
    # Gamma_0 built with a constant instead of a linear last term
    gamma0_constant_variant: int = 0
    # 8*T_1 from the Gamma identity, and whether it equals 8*t1
    t1_formula_times8: int = 0
    t1_formula_ok: bool = False
    # 8*T from the u/-u Gamma identity
    t_formula_times8: int = 0
    t_formula_ok: bool = False
    # T_1(-u) counted directly, compared with t2
    t1_of_neg: int = 0
    symmetry_ok: bool = False

    def to_dict(self):
        d = dict(self.__dict__)
        d["u"] = str(self.u)
        return d


def _raw(f) -> list[int]:
    return f.raw if isinstance(f, PolySpec) else [int(c) for c in f]


def weil_radius(q: int, d: int) -> float:
    return (d - 1) * math.sqrt(q)


def _within(value: int, q: int, d: int) -> bool:
    # |value| <= (d-1) sqrt(q), compared in exact integers
    return d >= 1 and value * value <= (d - 1) ** 2 * q


def sum_raw(ctx: FieldCtx, coeffs: Sequence[int]) -> int:
    return int(ctx.vchi(poly.evaluate_all(ctx, coeffs)).sum())


def char_sum(ctx: FieldCtx, f, d: Optional[int] = None) -> CharSumReport:
    """sum_x chi(f(x)) by enumeration; Weil interval attached when ``d`` is given."""
    value = sum_raw(ctx, _raw(f))
    rep = CharSumReport(value, "direct")
    if d is not None:
        r = weil_radius(ctx.q, d)
        rep.weil_interval = (-r, r)
        rep.within_weil = _within(value, ctx.q, d)
    return rep


def quadratic_sum_closed(ctx: FieldCtx, a2, a1, a0) -> CharSumReport:
    a2, a1, a0 = int(a2), int(a1), int(a0)
    if a2 == 0:
        raise NotQuadratic("leading coefficient is zero")
    disc = ctx.sub(ctx.mul(a1, a1), ctx.mul(ctx.from_int(4), ctx.mul(a0, a2)))
    c = ctx.chi(a2)
    value = -c if disc else (ctx.q - 1) * c
    return CharSumReport(value, "closed_form")


def ec_point_count(ctx: FieldCtx, cubic) -> int:
    """Rational points (with infinity) on y^2 = cubic(x)."""
    raw = poly.trim(_raw(cubic))
    if len(raw) != 4:
        raise ValueError("expected a cubic")
    g = poly.gcd(ctx, raw, poly.derivative(ctx, raw))
    if len(g) > 1:
        raise RepeatedRoots("cubic has a repeated root")
    return ctx.q + 1 + sum_raw(ctx, raw)


def count_curve_points(ctx: FieldCtx, cubic) -> int:
    """Direct count of pairs (x, y) with y^2 = cubic(x), plus the point at infinity."""
    values = poly.evaluate_all(ctx, _raw(cubic))
    ys = ctx.all_indices()
    squares = np.bincount(ctx.vmul(ys, ys), minlength=ctx.q)
    return int(squares[values].sum()) + 1


def cyclotomic_closed_form(q: int) -> CyclotomicNumbers:
    if q % 4 == 1:
        a = (q - 1) // 4
        return CyclotomicNumbers((q - 5) // 4, a, a, a)
    a = (q - 3) // 4
    return CyclotomicNumbers(a, (q + 1) // 4, a, a)


def cyclotomic_numbers(ctx: FieldCtx) -> CyclotomicNumbers:
    xs = ctx.all_indices()
    cx = ctx.vchi(xs)
    cx1 = ctx.vchi(ctx.vadd(xs, np.ones_like(xs)))

    def count(i, j):
        return int(np.count_nonzero((cx == (-1) ** i) & (cx1 == (-1) ** j)))

    got = CyclotomicNumbers(count(0, 0), count(0, 1), count(1, 0), count(1, 1))
    expected = cyclotomic_closed_form(ctx.q)
    if got != expected:
        raise InternalConsistencyError(f"cyclotomic numbers {got} != {expected}")
    return got


def gamma_pn_poly(ctx: FieldCtx) -> list[int]:
    # x(x+1)(x+4) = x^3 + 5x^2 + 4x
    e = ctx.from_int
    return [0, e(4), e(5), 1]


def gamma_pn(ctx: FieldCtx) -> int:
    return sum_raw(ctx, gamma_pn_poly(ctx))


def gamma_polys(ctx: FieldCtx, u) -> tuple[list[int], list[int], list[int]]:
    """The three cubics behind Gamma_0(u), Gamma_1(u), Gamma_2(u).

    Gamma_0 is (u+1)x^3 - 4(u+1)x^2 + 4u^2(u+1)x.  The variant with a
    constant last term instead of a linear one is :func:`gamma0_constant_poly`;
    only the linear form satisfies 8*T_1 = q - 7 - G0 + G1 - G2.
    """
    u = int(u)
    e = ctx.from_int
    add, mul, sub = ctx.add, ctx.mul, ctx.sub
    up1 = add(u, 1)
    u2 = mul(u, u)
    g0 = [0, mul(mul(e(4), u2), up1), ctx.neg(mul(e(4), up1)), up1]
    g1 = [0, sub(1, u2), sub(sub(u2, mul(e(2), u)), e(2)), mul(up1, up1)]
    up2 = add(u, e(2))
    g2 = [
        ctx.neg(mul(mul(e(16), u2), mul(up1, up1))),
        mul(mul(e(4), mul(up2, up2)), up1),
        ctx.neg(mul(mul(e(4), up2), up1)),
        up1,
    ]
    return g0, g1, g2


def gamma0_constant_poly(ctx: FieldCtx, u) -> list[int]:
    """(u+1)x^3 - 4(u+1)x^2 + 4u^2(u+1), constant last term."""
    g0 = gamma_polys(ctx, u)[0]
    return [g0[1], 0, g0[2], g0[3]]


def gammas(ctx: FieldCtx, u) -> tuple[int, int, int]:
    g0, g1, g2 = gamma_polys(ctx, u)
    return sum_raw(ctx, g0), sum_raw(ctx, g1), sum_raw(ctx, g2)


def _in_u1(ctx: FieldCtx, u: int) -> bool:
    return ctx.chi(ctx.add(u, 1)) == ctx.chi(ctx.sub(u, 1))


def _t_pair(ctx: FieldCtx, u: int) -> tuple[int, int]:
    z = ctx.all_indices()[1:]
    e = ctx.from_int
    up1 = ctx.add(u, 1)
    um1 = ctx.sub(u, 1)
    z2 = ctx.vmul(z, z)
    lin = ctx.vchi(ctx.vmul(z, up1))
    quad1 = ctx.vchi(ctx.vsub(z2, ctx.vmul(z, ctx.mul(e(4), up1))))
    quad2 = ctx.vchi(ctx.vadd(z2, ctx.vmul(z, ctx.mul(e(4), um1))))
    common = ctx.vchi(ctx.vadd(ctx.vsub(z2, ctx.vmul(z, e(4))), ctx.mul(e(4), ctx.mul(u, u))))
    t1 = int(np.count_nonzero((lin == -1) & (quad1 == 1) & (common == 1)))
    t2 = int(np.count_nonzero((lin == 1) & (quad2 == 1) & (common == 1)))
    return t1, t2


def t_counts(ctx: FieldCtx, u) -> TCounts:
    """T_1(u), T_2(u) by direct count, with the Gamma identities evaluated beside them."""
    ue = u if isinstance(u, FieldElement) else FieldElement(ctx, int(u))
    u = int(ue)
    if not _in_u1(ctx, u):
        raise NotInU1(f"u={ue} has chi(u+1) != chi(u-1)")
    t1, t2 = _t_pair(ctx, u)
    t1_neg, _ = _t_pair(ctx, ctx.neg(u))
    g0, g1, g2 = gammas(ctx, u)
    n0, n1, n2 = gammas(ctx, ctx.neg(u))
    q = ctx.q
    rhs1 = q - 7 - g0 + g1 - g2
    rhs = 2 * q - 14 + g1 - g2 + n1 - n2
    return TCounts(
        u=ue, t1=t1, t2=t2, t=t1 + t2,
        gamma0=g0, gamma1=g1, gamma2=g2,
        gamma0_neg=n0, gamma1_neg=n1, gamma2_neg=n2,
        gamma0_constant_variant=sum_raw(ctx, gamma0_constant_poly(ctx, u)),
        t1_formula_times8=rhs1, t1_formula_ok=(8 * t1 == rhs1),
        t_formula_times8=rhs, t_formula_ok=(8 * (t1 + t2) == rhs),
        t1_of_neg=t1_neg, symmetry_ok=(t1_neg == t2),
    )


def weil_certify(ctx: FieldCtx, f, d: int) -> bool:
    """True iff |sum_x chi(f(x))| <= (d-1) sqrt(q)."""
    raw = poly.trim(_raw(f))
    if len(raw) <= 1 or poly.is_constant_times_square(ctx, raw):
        raise PerfectSquareInput("Weil bound needs f not a constant times a square")
    return _within(sum_raw(ctx, raw), ctx.q, d)


def certified_sum(ctx: FieldCtx, f) -> CharSumReport:
    """Direct sum plus automatic Weil check when the bound applies.

    The distinct-root count comes from the square-free decomposition; for
    constants and constant multiples of squares no interval is attached.
    """
    raw = poly.trim(_raw(f))
    rep = char_sum(ctx, raw)
    if len(raw) > 1 and not poly.is_constant_times_square(ctx, raw):
        d = poly.distinct_root_count(ctx, raw)
        r = weil_radius(ctx.q, d)
        rep.weil_interval = (-r, r)
        rep.within_weil = _within(rep.value, ctx.q, d)
    return rep
