"""The Ness-Helleseth family f_u(x) = u x^{(q-1)/2 - 1} + x^{q-2}, q = 3 (mod 4).

For x != 0 we have x^{(q-1)/2 - 1} = chi(x)/x and x^{q-2} = 1/x, so
f_u(x) = (u chi(x) + 1)/x, and f_u(0) = 0.  Everything below is built on
that identity: the derivative equation D_a f_u(x) = b splits into the two
points {0, -a} and, elsewhere, four quadratics indexed by
(chi(x+a), chi(x)).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from . import charsum, oracle
from .errors import (
    BranchAsymmetry,
    BudgetExceeded,
    InternalConsistencyError,
    Unsupported,
    UnsupportedCharacteristic,
    UnsupportedFieldShape,
    WrongUClass,
    ZeroDirection,
)
from .field import FieldCtx, FieldElement, make_field
from .oracle import Spectrum

DEFAULT_BUDGET = 4096
M_THRESHOLD = 1533
N45_THRESHOLD = 124

# (label, chi(x+a), chi(x))
CASES = (("I", 1, 1), ("II", 1, -1), ("III", -1, 1), ("IV", -1, -1))


def check_shape(ctx: FieldCtx):
    if ctx.q % 4 != 3 or ctx.q < 7:
        raise UnsupportedFieldShape(f"need q = 3 (mod 4) and q >= 7, got q = {ctx.q}")


def _as_elem(ctx: FieldCtx, u) -> FieldElement:
    """Plain ints in [0, q) are element indices; other ints are embedded integers."""
    if isinstance(u, FieldElement):
        return u
    u = int(u)
    return FieldElement(ctx, u if 0 <= u < ctx.q else ctx.from_int(u))


@dataclass(frozen=True)
class NHParams:
    ctx: FieldCtx
    u: FieldElement

    def __init__(self, ctx: FieldCtx, u):
        check_shape(ctx)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "u", _as_elem(ctx, u))

    @property
    def d1(self) -> int:
        return (self.ctx.q - 1) // 2 - 1

    @property
    def d2(self) -> int:
        return self.ctx.q - 2


# -- evaluation ---------------------------------------------------------------

def _f(ctx: FieldCtx, u: int, x: int) -> int:
    if x == 0:
        return 0
    return ctx.mul(ctx.add(ctx.mul(u, ctx.from_int(ctx.chi(x))), 1), ctx.inv(x))


def f_eval(params: NHParams, x) -> FieldElement:
    ctx = params.ctx
    return FieldElement(ctx, _f(ctx, int(params.u), int(x)))


def f_eval_direct(params: NHParams, x) -> FieldElement:
    """u x^{d1} + x^{d2} by exponentiation."""
    ctx = params.ctx
    x = int(x)
    v = ctx.add(ctx.mul(int(params.u), ctx.pow(x, params.d1)), ctx.pow(x, params.d2))
    return FieldElement(ctx, v)


def f_table(params: NHParams) -> oracle.FunctionTable:
    ctx = params.ctx
    xs = ctx.all_indices()
    ch = ctx.vchi(xs)
    ch_idx = np.where(ch < 0, ctx.p - 1, ch)
    num = ctx.vadd(ctx.vmul(np.full_like(xs, int(params.u)), ch_idx), np.ones_like(xs))
    return oracle.FunctionTable(ctx, ctx.vmul(num, ctx.vinv(xs)))


def f_table_direct(params: NHParams) -> oracle.FunctionTable:
    ctx = params.ctx
    xs = ctx.all_indices()
    q1 = ctx.q - 1

    def vpow(e):
        return np.where(xs == 0, 0, ctx.exp_arr[(ctx.log_arr[xs] * e) % q1])

    vals = ctx.vadd(ctx.vmul(np.full_like(xs, int(params.u)), vpow(params.d1)), vpow(params.d2))
    return oracle.FunctionTable(ctx, vals)


# -- coefficient classes --------------------------------------------------------

@dataclass(frozen=True)
class ULabelFlags:
    in_u0: bool
    in_u1: bool
    in_u10: bool
    in_u11: bool
    in_u12: bool
    special: Optional[str]
    in_table_a: bool

    @property
    def label(self) -> str:
        """Coarse class used in reports."""
        if self.special == "zero":
            return "zero"
        if self.special in ("plus_one", "minus_one"):
            return "pm1"
        if self.in_u1:
            return "U12" if self.in_u12 else "U10uU11"
        if self.special in ("plus_4_5", "minus_4_5"):
            return "pm4_5"
        if self.in_table_a:
            return "table_a"
        return "U0_other"

    def to_dict(self):
        d = dict(self.__dict__)
        d["label"] = self.label
        return d


def load_table_a(path=None) -> frozenset[tuple[int, int, int]]:
    """(p, n, u) triples, u as its canonical integer residue."""
    if path is None:
        text = resources.files("nhdiff.data").joinpath("table_a.csv").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    rows = set()
    for rec in csv.DictReader(lines):
        p, n = int(rec["p"]), int(rec["n"])
        rows.add((p, n, int(rec["u"]) % p))
    return frozenset(rows)


TABLE_A = load_table_a()


def special_tag(ctx: FieldCtx, u: int) -> Optional[str]:
    tags = (
        ("zero", 0),
        ("plus_one", 1),
        ("minus_one", ctx.neg(1)),
        ("plus_4_5", ctx.from_ratio(4, 5)),
        ("minus_4_5", ctx.from_ratio(-4, 5)),
    )
    for name, v in tags:
        if u == v:
            return name
    return None


def classify_u(ctx: FieldCtx, u, table_a=None) -> ULabelFlags:
    check_shape(ctx)
    u = int(_as_elem(ctx, u))
    chi, e = ctx.chi, ctx.from_int
    cp, cm = chi(ctx.add(u, 1)), chi(ctx.sub(u, 1))
    five_u = ctx.mul(e(5), u)
    c53p, c53m = chi(ctx.add(five_u, e(3))), chi(ctx.sub(five_u, e(3)))
    in_u1 = cp == cm
    in_u10 = in_u1 and cp == -c53p
    in_u11 = in_u1 and cp == -c53m
    in_u12 = in_u1 and cp == c53p == c53m
    table = TABLE_A if table_a is None else table_a
    flags = ULabelFlags(
        in_u0=not in_u1, in_u1=in_u1, in_u10=in_u10, in_u11=in_u11, in_u12=in_u12,
        special=special_tag(ctx, u),
        in_table_a=ctx.n == 1 and (ctx.p, ctx.n, u) in table,
    )
    if in_u12 and (in_u10 or in_u11):
        raise InternalConsistencyError(f"u={u} lies in U_12 and U_10/U_11")
    if in_u1 and not (in_u10 or in_u11 or in_u12):
        raise InternalConsistencyError(f"u={u} in U_1 outside U_10, U_11, U_12")
    return flags


def u_set_cardinalities(ctx: FieldCtx) -> dict:
    """Sizes of the u-classes beside the closed-form counts they are compared to."""
    check_shape(ctx)
    flags = [classify_u(ctx, u) for u in range(ctx.q)]
    q = ctx.q
    u1 = sum(f.in_u1 for f in flags)
    u10 = sum(f.in_u10 for f in flags)
    u11 = sum(f.in_u11 for f in flags)
    u12 = sum(f.in_u12 for f in flags)
    union = sum(f.in_u10 or f.in_u11 for f in flags)
    num = q - 1 + 2 * ctx.chi(ctx.from_int(5))
    formula_u10 = num // 4 if num % 4 == 0 else num / 4
    return {
        "U0": q - u1, "U1": u1, "U10": u10, "U11": u11, "U12": u12, "U10_or_U11": union,
        "U1_formula": (q - 3) // 2,
        "U10_formula": formula_u10,
        "U1_ok": u1 == (q - 3) // 2,
        "U10_ok": u10 == formula_u10,
        "U11_ok": u11 == formula_u10,
        "union_matches_formula": union == formula_u10,
        "U12_nonempty": u12 > 0,
    }


# -- derivative equation ------------------------------------------------------------

@dataclass(frozen=True)
class CaseTrace:
    case: str  # "I".."IV"
    tau: tuple[int, int]  # (chi(x+a), chi(x)) the case assumes
    x: Optional[FieldElement]
    status: str  # desired | extraneous | identity | no_root

    def to_dict(self):
        return {"case": self.case, "tau": list(self.tau),
                "x": None if self.x is None else str(self.x), "status": self.status}


@dataclass
class SolveReport:
    a: FieldElement
    b: FieldElement
    n_total: int
    n_special: int
    n_generic: int
    solutions: list[FieldElement]
    case_trace: list[CaseTrace] = field(default_factory=list)

    def to_dict(self):
        return {
            "a": str(self.a), "b": str(self.b), "n_total": self.n_total,
            "n_special": self.n_special, "n_generic": self.n_generic,
            "solutions": [str(x) for x in self.solutions],
            "case_trace": [t.to_dict() for t in self.case_trace],
        }


_ALL = object()


def _linear_or_quadratic_roots(ctx: FieldCtx, c2: int, c1: int, c0: int):
    if c2:
        disc = ctx.sub(ctx.mul(c1, c1), ctx.mul(ctx.from_int(4), ctx.mul(c2, c0)))
        roots = ctx.sqrt(disc)
        if roots is None:
            return []
        den = ctx.inv(ctx.mul(ctx.from_int(2), c2))
        xs = [ctx.mul(ctx.sub(r, c1), den) for r in roots]
        return xs[:1] if disc == 0 else xs
    if c1:
        return [ctx.neg(ctx.div(c0, c1))]
    return _ALL if c0 == 0 else []


def solve_derivative(params: NHParams, a, b, check: bool = True) -> SolveReport:
    """Solve f_u(x+a) - f_u(x) = b through the reduced equations.

    x in {0, -a} is tested against b = a^{-1}(1 + u chi(a)) and
    b = a^{-1}(1 - u chi(a)).  For every other x the equation becomes
        b x^2 + (ab + u tau_0 - u tau_a) x + a(u tau_0 + 1) = 0
    under the case assumption (tau_a, tau_0) = (chi(x+a), chi(x)); a root is
    kept only when its actual characters match the case it came from.  With
    b = 0 and an identically vanishing case equation, every x of the right
    character pattern is a solution and is found by enumeration.
    """
    ctx = params.ctx
    u, a, b = int(params.u), int(a), int(b)
    if a == 0:
        raise ZeroDirection("a must be nonzero")
    add, sub, mul, chi, e = ctx.add, ctx.sub, ctx.mul, ctx.chi, ctx.from_int
    ainv = ctx.inv(a)
    uc = mul(u, e(chi(a)))
    minus_a = ctx.neg(a)

    special = []
    if b == mul(ainv, add(1, uc)):
        special.append(0)
    if b == mul(ainv, sub(1, uc)):
        special.append(minus_a)

    generic: list[int] = []
    trace: list[CaseTrace] = []
    ab = mul(a, b)
    for label, ta, t0 in CASES:
        c1 = add(ab, mul(u, e(t0 - ta)))
        c0 = mul(a, add(mul(u, e(t0)), 1))
        roots = _linear_or_quadratic_roots(ctx, b, c1, c0)
        if roots is _ALL:
            for x in range(ctx.q):
                if x != 0 and x != minus_a and chi(add(x, a)) == ta and chi(x) == t0:
                    generic.append(x)
            trace.append(CaseTrace(label, (ta, t0), None, "identity"))
            continue
        if not roots:
            trace.append(CaseTrace(label, (ta, t0), None, "no_root"))
        for x in roots:
            ok = x != 0 and x != minus_a and chi(add(x, a)) == ta and chi(x) == t0
            if ok:
                generic.append(x)
            trace.append(CaseTrace(label, (ta, t0), FieldElement(ctx, x),
                                   "desired" if ok else "extraneous"))

    sols = sorted(set(special) | set(generic))
    if len(sols) != len(special) + len(generic):
        raise InternalConsistencyError("a solution was produced twice")
    if check:
        for x in sols:
            if sub(_f(ctx, u, add(x, a)), _f(ctx, u, x)) != b:
                raise InternalConsistencyError(f"x={x} does not solve the equation")
    return SolveReport(
        a=FieldElement(ctx, a), b=FieldElement(ctx, b),
        n_total=len(sols), n_special=len(special), n_generic=len(generic),
        solutions=[FieldElement(ctx, x) for x in sols], case_trace=trace,
    )


# -- closed-form spectra and uniformity ------------------------------------------------

def inverse_power_spectrum_per_b(ctx: FieldCtx) -> list[int]:
    """Per-b spectrum of x^{q-2} (b counted for a = 1)."""
    p, q = ctx.p, ctx.q
    if p == 3:
        return [(q - 1) // 2, 0, (q - 3) // 2, 1]
    if q % 3 == 2:
        return [(q - 1) // 2, 1, (q - 1) // 2]
    return [(q + 1) // 2, 1, (q - 5) // 2, 0, 1]


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den:
        raise Unsupported(f"{what} = {num}/{den} is not an integer")
    return num // den


def _pm1_spectrum(ctx: FieldCtx) -> Spectrum:
    q = ctx.q
    if ctx.p == 3:
        raise Unsupported("u = +-1 closed form gated to p > 3 (x+4 = x+1 in characteristic 3)")
    g = charsum.gamma_pn(ctx)
    delta = (q + 1) // 4
    w1 = _exact_div((q - 1) * (2 * q - 2 + g), 4, "omega_1")
    w2 = _exact_div((q - 1) * (q + 1 - g), 8, "omega_2")
    w0_printed = _exact_div((q - 1) * (q + 1 - g), 8, "omega_0")
    w0_completed = _exact_div((q - 1) * (3 * q - 5 - g), 8, "identity-completing omega_0")
    notes = [f"Gamma_pn = {g}"]

    def build(w0):
        om = [0] * (delta + 1)
        om[0] += w0
        om[1] += w1
        om[2] += w2
        om[delta] += q - 1
        return om

    if delta == 2:
        notes.append("delta = 2 coincides with the generic omega_2 bucket; counts merged")
    printed, completed = build(w0_printed), build(w0_completed)
    spec = Spectrum(delta, printed, "formula", notes,
                    variants={"identity_completing": completed})
    tot = q * (q - 1)
    for name, om in (("printed omega_0", printed), ("identity-completing omega_0", completed)):
        ok = spec.identities_hold(q, om)
        notes.append(f"{name} = {om[0]}: pair-count identities {'hold' if ok else 'fail'}"
                     + ("" if ok else f" (sum = {sum(om)}, expected {tot})"))
    return spec


def _strip(om: list[int]) -> list[int]:
    om = list(om)
    while len(om) > 1 and om[-1] == 0:
        om.pop()
    return om


def spectrum_formula(params: NHParams) -> Spectrum:
    """Closed-form spectrum; raises Unsupported for u in U_0 outside {0, +-1}."""
    ctx, u = params.ctx, int(params.u)
    q = ctx.q
    flags = classify_u(ctx, u)
    if u == 0:
        per_b = inverse_power_spectrum_per_b(ctx)
        spec = Spectrum(len(per_b) - 1, [(q - 1) * w for w in per_b], "formula",
                        ["inverse power function, per-b spectrum scaled by q-1"])
        if ctx.p == 3:
            # the printed omega_0 = (q-1)/2 leaves the per-b counts summing to q-1
            completed = [(q - 1) * w for w in [(q + 1) // 2] + per_b[1:]]
            spec.variants["identity_completing"] = completed
            for name, om in (("printed", spec.omegas), ("identity-completing", completed)):
                ok = spec.identities_hold(q, om)
                spec.notes.append(f"{name} omega_0 = {om[0]}: pair-count identities "
                                  f"{'hold' if ok else 'fail'}")
        return spec
    if flags.special in ("plus_one", "minus_one"):
        return _pm1_spectrum(ctx)
    if flags.in_u1:
        tc = charsum.t_counts(ctx, u)
        t = tc.t
        notes = [f"T(u) = {t} by direct count",
                 f"T(u) from Gamma sums {'agrees' if tc.t_formula_ok else 'DISAGREES'}"]
        variants = {}
        if flags.in_u12:
            om = [(q - 1) * (t + 2), (q - 1) * (q - 2 - 2 * t), (q - 1) * (t - 2), 2 * (q - 1)]
        else:
            om = [(q - 1) * t, (q - 1) * (q - 2 * t), (q - 1) * t]
            if flags.in_u10 != flags.in_u11:
                # on one of the lines b = a^{-1}(1 +- u) the generic part has a
                # root besides the special one, so those 2(q-1) pairs reach N = 2
                variants["special_line_corrected"] = [
                    (q - 1) * (t + 2), (q - 1) * (q - 2 * t - 4), (q - 1) * (t + 2)]
                notes.append("u in exactly one of U_10, U_11: lines b = a^{-1}(1 +- u) "
                             "add 2(q-1) pairs with two solutions")
        om = _strip(om)
        variants = {k: _strip(v) for k, v in variants.items()}
        return Spectrum(len(om) - 1, om, "formula", notes, variants)
    raise Unsupported("no closed-form spectrum for u in U_0 outside {0, +-1}")


def uniformity_formula(ctx: FieldCtx, u) -> int:
    check_shape(ctx)
    u = int(_as_elem(ctx, u))
    q, p = ctx.q, ctx.p
    flags = classify_u(ctx, u)
    if u == 0:
        return len(inverse_power_spectrum_per_b(ctx)) - 1
    if flags.special in ("plus_one", "minus_one"):
        return (q + 1) // 4
    if flags.in_u1:
        return 3 if flags.in_u12 else 2
    if p > 3 and flags.special in ("plus_4_5", "minus_4_5"):
        return 3
    if flags.in_table_a:
        return 3
    return 4


def apn_reason(ctx: FieldCtx, u) -> Optional[str]:
    """Which APN condition u meets, or None."""
    check_shape(ctx)
    u = int(_as_elem(ctx, u))
    flags = classify_u(ctx, u)
    if u == 0 and ctx.q % 3 == 2:
        return "i:u=0,q=2mod3"
    if flags.in_u10 or flags.in_u11:
        return "ii:U10uU11"
    if (ctx.p, ctx.n) == (7, 1) and flags.special in ("plus_one", "minus_one"):
        return "iii:p=7,n=1,u=+-1"
    return None


def apn_predicate(ctx: FieldCtx, u) -> bool:
    return apn_reason(ctx, u) is not None


# -- four-solution conditions and counters -----------------------------------------

def _require_u0_generic(ctx: FieldCtx, u: int, exclude_45: bool = False) -> ULabelFlags:
    flags = classify_u(ctx, u)
    bad = not flags.in_u0 or flags.special in ("zero", "plus_one", "minus_one")
    if exclude_45 and flags.special in ("plus_4_5", "minus_4_5"):
        bad = True
    if bad:
        raise WrongUClass(f"u={u} outside the admissible part of U_0")
    return flags


def _branch_values(ctx: FieldCtx, u: int, z: int) -> list[int]:
    # chi(-4u^2 + 2z + 2z*r) for both square roots r of 1 - u^2
    roots = ctx.sqrt(ctx.sub(1, ctx.mul(u, u)))
    if roots is None:
        raise InternalConsistencyError("1 - u^2 is a nonsquare for u in U_0")
    e = ctx.from_int
    base = ctx.sub(ctx.mul(e(2), z), ctx.mul(e(4), ctx.mul(u, u)))
    return [ctx.chi(ctx.add(base, ctx.mul(ctx.mul(e(2), z), r))) for r in roots]


def four_solution_condition(params: NHParams, a, b) -> bool:
    """The five character conditions for N_u(a, b) = 4, principal root of 1-u^2."""
    ctx = params.ctx
    u, a, b = int(params.u), int(a), int(b)
    _require_u0_generic(ctx, u)
    if a == 0:
        raise ZeroDirection("a must be nonzero")
    if b == 0:
        return False
    chi, e, mul, add, sub = ctx.chi, ctx.from_int, ctx.mul, ctx.add, ctx.sub
    z = mul(a, b)
    z2 = mul(z, z)
    c1 = chi(ctx.div(mul(a, add(u, 1)), b)) == -1
    c2 = chi(sub(z2, mul(mul(e(4), add(u, 1)), z))) == 1
    c3 = chi(add(z2, mul(mul(e(4), sub(u, 1)), z))) == 1
    c4 = chi(sub(add(mul(e(4), mul(u, u)), z2), mul(e(4), z))) == 1
    principal, other = _branch_values(ctx, u, z)
    if c4 and principal != other:
        raise BranchAsymmetry(f"branch values {principal}, {other} at ab = {z}")
    return c1 and c2 and c3 and c4 and principal == 1


def branch_equivalence_sides(params: NHParams, z) -> Optional[tuple[bool, bool]]:
    """Both sides of the equivalence for ab = z, or None when chi(z^2-4z+4u^2) != 1.

    Left: chi(2u^2 - z + u*s) = chi(2u^2 - z - u*s) = -1 where s^2 = z^2-4z+4u^2.
    Right: chi(2z(1 + sqrt(1-u^2)) - 4u^2) = 1.
    """
    ctx = params.ctx
    u, z = int(params.u), int(z)
    _require_u0_generic(ctx, u)
    e, mul, add, sub, chi = ctx.from_int, ctx.mul, ctx.add, ctx.sub, ctx.chi
    disc = add(sub(mul(z, z), mul(e(4), z)), mul(e(4), mul(u, u)))
    if chi(disc) != 1:
        return None
    s, _ = ctx.sqrt(disc)
    base = sub(mul(e(2), mul(u, u)), z)
    left = chi(add(base, mul(u, s))) == -1 and chi(sub(base, mul(u, s))) == -1
    principal, other = _branch_values(ctx, u, z)
    if principal != other:
        raise BranchAsymmetry(f"branch values {principal}, {other} at ab = {z}")
    return left, principal == 1


@dataclass
class SearchCounts:
    m_count: Optional[int] = None
    n45_count: Optional[int] = None
    lower_bound: float = 0.0
    threshold: int = 0
    claim_ok: Optional[bool] = None  # None below the threshold

    def to_dict(self):
        return dict(self.__dict__)


def _m_count_with_root(ctx: FieldCtx, u: int, r: int) -> int:
    e = ctx.from_int
    z = ctx.all_indices()
    z2 = ctx.vmul(z, z)
    up1, um1, u2 = ctx.add(u, 1), ctx.sub(u, 1), ctx.mul(u, u)
    phi = ctx.add(e(2), ctx.mul(e(2), r))
    g1 = ctx.vmul(z, ctx.neg(up1))
    g2 = ctx.vsub(z2, ctx.vmul(z, ctx.mul(e(4), up1)))
    g3 = ctx.vadd(z2, ctx.vmul(z, ctx.mul(e(4), um1)))
    g4 = ctx.vadd(ctx.vsub(z2, ctx.vmul(z, e(4))), ctx.mul(e(4), u2))
    g5 = ctx.vsub(ctx.vmul(z, phi), ctx.mul(e(4), u2))
    ok = np.ones(ctx.q, dtype=bool)
    for g in (g1, g2, g3, g4, g5):
        ok &= ctx.vchi(g) == 1
    return int(np.count_nonzero(ok))


def m_count(params: NHParams) -> SearchCounts:
    """Number of z = ab meeting all five four-solution conditions."""
    ctx, u = params.ctx, int(params.u)
    _require_u0_generic(ctx, u, exclude_45=True)
    roots = ctx.sqrt(ctx.sub(1, ctx.mul(u, u)))
    counts = [_m_count_with_root(ctx, u, r) for r in roots]
    if counts[0] != counts[1]:
        raise BranchAsymmetry(f"M = {counts[0]} vs {counts[1]} for the two roots of 1-u^2")
    q = ctx.q
    m = counts[0]
    return SearchCounts(
        m_count=m, lower_bound=(q - 6 - 39 * math.sqrt(q)) / 32, threshold=M_THRESHOLD,
        claim_ok=(m > 0) if q > M_THRESHOLD else None,
    )


def n45_count(ctx: FieldCtx) -> SearchCounts:
    check_shape(ctx)
    if ctx.p == 3:
        raise UnsupportedCharacteristic("u = +-4/5 coincides with -+1 when p = 3")
    e = ctx.from_int
    z = ctx.all_indices()
    z2 = ctx.vmul(z, z)
    h1 = ctx.vchi(z) == -1
    h2 = ctx.vchi(ctx.vsub(z2, ctx.vmul(z, e(36)))) == 1
    h3 = ctx.vchi(ctx.vadd(ctx.vsub(z2, ctx.vmul(z, e(20))), e(64))) == 1
    h4 = ctx.vchi(ctx.vsub(z, e(4))) == 1
    n = int(np.count_nonzero(h1 & h2 & h3 & h4))
    q = ctx.q
    res = SearchCounts(n45_count=n, lower_bound=(q - 2 - 11 * math.sqrt(q)) / 16,
                       threshold=N45_THRESHOLD,
                       claim_ok=(n > 0) if q > N45_THRESHOLD else None)
    if res.claim_ok is False:
        raise InternalConsistencyError(f"N = 0 at q = {q} > {N45_THRESHOLD}")
    return res


def admissible_u0(ctx: FieldCtx) -> list[int]:
    """U_0 without 0, +-1 and +-4/5."""
    out = []
    for u in range(ctx.q):
        f = classify_u(ctx, u)
        if f.in_u0 and f.special is None:
            out.append(u)
    return out


def reproduce_table_a(p: int, n: int = 1, budget: int = DEFAULT_BUDGET,
                      threads: int = 1) -> list[int]:
    """Admissible u in U_0 whose oracle uniformity is 3."""
    if p**n > budget:
        raise BudgetExceeded(f"q = {p**n} exceeds the oracle budget {budget}")
    ctx = make_field(p, n)
    check_shape(ctx)
    found = []
    for u in admissible_u0(ctx):
        delta = oracle.uniformity_oracle(ctx, f_table(NHParams(ctx, u)), threads)
        if delta == 3:
            found.append(u)
    return found
