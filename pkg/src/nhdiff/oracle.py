"""Exhaustive differential analysis: DDT rows, spectra, uniformity.

The function under test is materialised as a table of length q (indices in
canonical element order).  DDT rows are computed in blocks of directions
``a`` with numpy; each block contributes an exact integer histogram, so the
aggregate does not depend on block size or on the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import IdentityViolation, ZeroDirection
from .field import FieldCtx

BLOCK_CELLS = 1 << 20


@dataclass
class Spectrum:
    """Differential spectrum [w_0, ..., w_delta] over pairs (a, b), a != 0."""

    delta: int
    omegas: list[int]
    method: str  # "oracle" | "formula"
    notes: list[str] = field(default_factory=list)
    # alternative omega lists computed under other readings of a closed form
    variants: dict[str, list[int]] = field(default_factory=dict)

    def identities_hold(self, q: int, omegas: Optional[list[int]] = None) -> bool:
        om = self.omegas if omegas is None else omegas
        total = q * (q - 1)
        return sum(om) == total and sum(i * w for i, w in enumerate(om)) == total

    def to_dict(self):
        d = {"delta": self.delta, "omegas": list(self.omegas), "method": self.method,
             "notes": list(self.notes)}
        if self.variants:
            d["variants"] = {k: list(v) for k, v in self.variants.items()}
        return d


@dataclass
class FunctionTable:
    ctx: FieldCtx
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        if self.values.shape != (self.ctx.q,):
            raise ValueError(f"table must have length {self.ctx.q}")

    @classmethod
    def from_callable(cls, ctx: FieldCtx, fn: Callable[[int], int]) -> FunctionTable:
        return cls(ctx, np.array([fn(x) for x in range(ctx.q)], dtype=np.int64))


@dataclass
class DiffReport:
    u: object
    spectrum_oracle: Spectrum
    spectrum_formula: Optional[Spectrum]
    agree: bool
    mismatches: list[tuple[int, int, int]]
    variant_agree: dict[str, bool] = field(default_factory=dict)
    unsupported_reason: Optional[str] = None

    def to_dict(self):
        return {
            "u": str(self.u),
            "oracle": self.spectrum_oracle.to_dict(),
            "formula": self.spectrum_formula.to_dict() if self.spectrum_formula else None,
            "agree": self.agree,
            "mismatches": [list(m) for m in self.mismatches],
            "variant_agree": dict(self.variant_agree),
            "unsupported_reason": self.unsupported_reason,
        }


def _table(f) -> np.ndarray:
    return f.values if isinstance(f, FunctionTable) else np.asarray(f, dtype=np.int64)


def ddt_row(ctx: FieldCtx, f, a) -> np.ndarray:
    """delta_F(a, b) for every b, in one pass over x."""
    a = int(a)
    if a == 0:
        raise ZeroDirection("a must be nonzero")
    F = _table(f)
    xs = ctx.all_indices()
    d = ctx.vsub(F[ctx.vadd(xs, a)], F)
    return np.bincount(d, minlength=ctx.q)


def ddt_block(ctx: FieldCtx, F: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """DDT rows for the directions in ``dirs``; shape (len(dirs), q)."""
    q = ctx.q
    xs = ctx.all_indices()
    shifted = ctx.vadd(dirs[:, None], xs[None, :])
    d = ctx.vsub(F[shifted], F[None, :])
    keys = d + (np.arange(len(dirs), dtype=np.int64) * q)[:, None]
    return np.bincount(keys.ravel(), minlength=len(dirs) * q).reshape(len(dirs), q)


def ddt_matrix(ctx: FieldCtx, f) -> np.ndarray:
    """Full DDT, row a-1 holds direction a.  Memory q^2; meant for small fields."""
    return ddt_block(ctx, _table(f), np.arange(1, ctx.q, dtype=np.int64))


def _blocks(q: int):
    step = max(1, BLOCK_CELLS // q)
    return [np.arange(s, min(s + step, q), dtype=np.int64) for s in range(1, q, step)]


def count_histogram(ctx: FieldCtx, f, threads: int = 1) -> np.ndarray:
    """hist[i] = number of (a, b), a != 0, with delta_F(a, b) = i."""
    F = _table(f)

    def work(dirs):
        return np.bincount(ddt_block(ctx, F, dirs).ravel(), minlength=ctx.q + 1)

    blocks = _blocks(ctx.q)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    return np.sum(parts, axis=0)


def spectrum_from_histogram(q: int, hist: np.ndarray, method: str = "oracle") -> Spectrum:
    nz = np.nonzero(hist)[0]
    delta = int(nz.max()) if len(nz) else 0
    spec = Spectrum(delta, [int(v) for v in hist[: delta + 1]], method)
    if not spec.identities_hold(q):
        raise IdentityViolation(f"spectrum {spec.omegas} breaks the pair-count identities")
    return spec


def spectrum_oracle(ctx: FieldCtx, f, threads: int = 1) -> Spectrum:
    return spectrum_from_histogram(ctx.q, count_histogram(ctx, f, threads))


def uniformity_oracle(ctx: FieldCtx, f, threads: int = 1) -> int:
    # full scan on purpose, no early exit
    return spectrum_oracle(ctx, f, threads).delta


def compare_omegas(oracle: list[int], formula: list[int]) -> list[tuple[int, int, int]]:
    n = max(len(oracle), len(formula))
    o = list(oracle) + [0] * (n - len(oracle))
    f = list(formula) + [0] * (n - len(formula))
    return [(i, a, b) for i, (a, b) in enumerate(zip(o, f)) if a != b]


def differ(ctx: FieldCtx, u, threads: int = 1) -> DiffReport:
    """Oracle spectrum of f_u next to the closed form, when one exists."""
    from . import nh
    from .errors import Unsupported

    params = nh.NHParams(ctx, u)
    orc = spectrum_oracle(ctx, nh.f_table(params), threads)
    try:
        form = nh.spectrum_formula(params)
    except Unsupported as exc:
        return DiffReport(params.u, orc, None, False, [], unsupported_reason=str(exc))
    mismatches = compare_omegas(orc.omegas, form.omegas)
    variant_agree = {k: not compare_omegas(orc.omegas, v) for k, v in form.variants.items()}
    return DiffReport(params.u, orc, form, not mismatches, mismatches, variant_agree)
