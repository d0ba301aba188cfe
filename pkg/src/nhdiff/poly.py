"""Univariate polynomials over F_q, small-degree toolkit.

Only what the character-sum layer needs: evaluation over the whole field,
gcd, and a square-free decomposition (Yun's algorithm adapted to
characteristic p) from which the number of distinct roots in the
splitting field and the "constant times a square" test are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldCtx, FieldElement


@dataclass(frozen=True)
class PolySpec:
    """Polynomial with FieldElement coefficients, constant term first."""

    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1].value == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, coeffs: Sequence[int]) -> PolySpec:
        return cls(tuple(FieldElement(ctx, ctx.from_int(c)) for c in coeffs))

    @classmethod
    def from_elements(cls, coeffs: Sequence[FieldElement]) -> PolySpec:
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def raw(self) -> list[int]:
        return [c.value for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.value:
                terms.append(f"{c}" + ("" if i == 0 else "x" if i == 1 else f"x^{i}"))
        return " + ".join(reversed(terms))


# The helpers below work on raw index lists (constant term first, trimmed).

def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def evaluate_all(ctx: FieldCtx, coeffs: Sequence[int], xs=None) -> np.ndarray:
    """Horner evaluation at every field element (or at ``xs``)."""
    if xs is None:
        xs = ctx.all_indices()
    acc = np.zeros_like(xs)
    for c in reversed(list(coeffs)):
        acc = ctx.vadd(ctx.vmul(acc, xs), np.full_like(xs, c))
    return acc


def evaluate(ctx: FieldCtx, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def derivative(ctx: FieldCtx, a: Sequence[int]) -> list[int]:
    return trim([ctx.mul(ctx.from_int(i), c) for i, c in enumerate(a)][1:])


def monic(ctx: FieldCtx, a: list[int]) -> list[int]:
    if not a:
        return a
    li = ctx.inv(a[-1])
    return [ctx.mul(c, li) for c in a]


def divmod_poly(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]):
    a = trim(list(a))
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(len(a) - len(b) + 1, 0)
    li = ctx.inv(b[-1])
    while len(a) >= len(b):
        c = ctx.mul(a[-1], li)
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = ctx.sub(a[shift + i], ctx.mul(c, bc))
        trim(a)
    return trim(quot), a


def gcd(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_poly(ctx, a, b)[1]
    return monic(ctx, a)


def _pth_root(ctx: FieldCtx, a: Sequence[int]) -> list[int]:
    # a(x) = h(x)^p with h(x) = sum c_i^{1/p} x^i; the p-th root map is x -> x^{q/p}
    e = ctx.q // ctx.p
    return trim([ctx.pow(a[i], e) for i in range(0, len(a), ctx.p)])


def squarefree_decomposition(ctx: FieldCtx, a: Sequence[int]) -> list[tuple[list[int], int]]:
    """Pairs (g, m): a = lc * prod g^m with the g squarefree and pairwise coprime."""
    f = monic(ctx, trim(list(a)))
    if len(f) <= 1:
        return []
    out: list[tuple[list[int], int]] = []
    df = derivative(ctx, f)
    if not df:
        return [(g, m * ctx.p) for g, m in squarefree_decomposition(ctx, _pth_root(ctx, f))]
    c = gcd(ctx, f, df)
    w = divmod_poly(ctx, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(ctx, w, c)
        fac = divmod_poly(ctx, w, y)[0]
        if len(fac) > 1:
            out.append((monic(ctx, fac), i))
        i += 1
        w = y
        c = divmod_poly(ctx, c, y)[0]
    if len(c) > 1:
        out.extend((g, m * ctx.p) for g, m in squarefree_decomposition(ctx, _pth_root(ctx, c)))
    return out


def distinct_root_count(ctx: FieldCtx, f: PolySpec | Sequence[int]) -> int:
    """Number of distinct roots of f in its splitting field."""
    raw = f.raw if isinstance(f, PolySpec) else list(f)
    return sum(len(g) - 1 for g, _ in squarefree_decomposition(ctx, raw))


def is_constant_times_square(ctx: FieldCtx, f: PolySpec | Sequence[int]) -> bool:
    raw = f.raw if isinstance(f, PolySpec) else list(f)
    return all(m % 2 == 0 for _, m in squarefree_decomposition(ctx, raw))
