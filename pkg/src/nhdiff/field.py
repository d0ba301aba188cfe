"""Arithmetic in F_p and F_{p^n} for odd p.

Elements are identified by their index ``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``
where ``c_i`` are the coefficients of the residue modulo the defining
polynomial (constant term first).  Index 0 is zero and index 1 is one, and
enumeration in index order is the canonical element order.

When ``q <= 2**20`` a context carries discrete-log, antilog and Zech tables
so that every scalar operation is a couple of list lookups; the numpy
``v*`` methods use the same tables on whole arrays of indices.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
    UnsupportedFieldShape,
    ZeroDenominator,
)

TABLE_LIMIT = 2**20


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- polynomials over F_p as int lists, constant term first ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(list(a), m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test: gcd with x^{p^k} - x for each maximal proper divisor."""
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob(k):
        # x^{p^k} mod f by repeated p-th powering
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, f, p)
        return r

    if _psub(frob(n), x, p):
        return False
    for r in prime_factors(n):
        g = _pgcd(f, _psub(frob(n // r), x, p), p)
        if len(g) > 1:
            return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, reading coefficients from x^{n-1} down."""
    for k in range(p**n):
        low = [(k // p**i) % p for i in range(n)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible of degree {n} over F_{p}")  # unreachable


def parse_modulus(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")


def format_modulus(modulus: Sequence[int]) -> str:
    return ",".join(str(c) for c in modulus)


class FieldCtx:
    """Immutable description of F_{p^n}; scalar methods work on element indices."""

    def __init__(self, p: int, n: int, modulus: Sequence[int]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._pows = [p**i for i in range(n)]
        self.has_tables = self.q <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()

    # construction helpers
    def _digits(self, x: int) -> list[int]:
        return [(x // w) % self.p for w in self._pows]

    def _index(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pows))

    def _poly_mul(self, x: int, y: int) -> int:
        return self._index(_pmulmod(self._digits(x), self._digits(y), self.modulus, self.p))

    def _poly_pow(self, x: int, e: int) -> int:
        return self._index(_ppowmod(self._digits(x), e, self.modulus, self.p))

    def _find_generator(self) -> int:
        q = self.q
        factors = prime_factors(q - 1)
        pw = (lambda g, e: pow(g, e, self.p)) if self.n == 1 else self._poly_pow
        for g in range(2, q) if q > 2 else ():
            if all(pw(g, (q - 1) // r) != 1 for r in factors):
                return g
        return 1

    def _build_tables(self):
        p, q, n = self.p, self.q, self.n
        g = self._find_generator() if q > 2 else 1
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        if n == 1:
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = x * g % p
        else:
            gd = self._digits(g)
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = self._index(_pmulmod(self._digits(x), gd, self.modulus, p))
        if x != 1 or -1 in log[1:]:
            raise ReducibleModulus("modulus does not define a field")  # pragma: no cover
        self.generator = g
        self._exp = exp
        self._log = log
        # Zech logs: 1 + g^k = g^{zech[k]}, -1 where 1 + g^k = 0
        zech = [-1] * (q - 1)
        for k in range(q - 1):
            v = exp[k]
            c0 = v % p
            w = v - c0 + (c0 + 1) % p
            zech[k] = log[w] if w else -1
        self._zech = zech
        neg = [0] * q
        for x in range(q):
            neg[x] = self._index([-c for c in self._digits(x)])
        self._neg = neg
        self.exp_arr = np.array(exp, dtype=np.int64)
        self.log_arr = np.array(log, dtype=np.int64)
        self.neg_arr = np.array(neg, dtype=np.int64)
        self.zech_arr = np.array(zech, dtype=np.int64)
        if n > 1:
            idx = np.arange(q, dtype=np.int64)
            self.digit_arr = np.stack([(idx // w) % p for w in self._pows], axis=-1)
            self.pow_arr = np.array(self._pows, dtype=np.int64)
        chi = np.zeros(q, dtype=np.int64)
        chi[1:] = np.where(self.log_arr[1:] % 2 == 0, 1, -1)
        self.chi_arr = chi

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={format_modulus(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # scalar arithmetic on indices
    def add(self, x: int, y: int) -> int:
        if self.n == 1:
            return (x + y) % self.p
        if not self.has_tables:
            return self._index([a + b for a, b in zip(self._digits(x), self._digits(y))])
        if x == 0:
            return y
        if y == 0:
            return x
        lx, ly = self._log[x], self._log[y]
        z = self._zech[(ly - lx) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[(lx + z) % (self.q - 1)]

    def neg(self, x: int) -> int:
        if self.n == 1:
            return -x % self.p
        if self.has_tables:
            return self._neg[x]
        return self._index([-c for c in self._digits(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.n == 1:
            return x * y % self.p
        if self.has_tables:
            return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]
        return self._poly_mul(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return pow(x, -1, self.p)
        if self.has_tables:
            return self._exp[-self._log[x] % (self.q - 1)]
        return self._poly_pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self.n == 1:
            return pow(x, e, self.p)
        if self.has_tables:
            return self._exp[self._log[x] * e % (self.q - 1)]
        return self._poly_pow(x, e)

    def chi(self, x: int) -> int:
        if x == 0:
            return 0
        if self.has_tables:
            return 1 if self._log[x] % 2 == 0 else -1
        return 1 if self.pow(x, (self.q - 1) // 2) == 1 else -1

    def sqrt(self, s: int):
        """Both square roots ``(r, -r)`` with ``r = s^{(q+1)/4}``, or None."""
        if self.q % 4 != 3:
            raise UnsupportedFieldShape("square roots need q = 3 (mod 4)")
        if s == 0:
            return (0, 0)
        if self.chi(s) != 1:
            return None
        r = self.pow(s, (self.q + 1) // 4)
        return (r, self.neg(r))

    def from_int(self, k: int) -> int:
        return k % self.p

    def from_ratio(self, num: int, den: int) -> int:
        if den % self.p == 0:
            raise ZeroDenominator(f"{den} vanishes in characteristic {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(self._digits(x))

    def index(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            raise DegreeMismatch(f"{len(coeffs)} coefficients for degree {self.n}")
        return self._index(coeffs)

    # vectorised arithmetic on arrays of indices (table-backed contexts only)
    def vadd(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.n == 1:
            return (x + y) % self.p
        return ((self.digit_arr[x] + self.digit_arr[y]) % self.p) @ self.pow_arr

    def vneg(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.n == 1:
            return (-x) % self.p
        return self.neg_arr[x]

    def vsub(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.n == 1:
            return (x - y) % self.p
        return ((self.digit_arr[x] - self.digit_arr[y]) % self.p) @ self.pow_arr

    def vmul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.n == 1:
            return (x * y) % self.p
        k = (self.log_arr[x] + self.log_arr[y]) % (self.q - 1)
        return np.where((x == 0) | (y == 0), 0, self.exp_arr[k])

    def vinv(self, x):
        """Inverse with the convention 0 -> 0."""
        x = np.asarray(x, dtype=np.int64)
        k = (-self.log_arr[x]) % (self.q - 1)
        return np.where(x == 0, 0, self.exp_arr[k])

    def vchi(self, x):
        return self.chi_arr[np.asarray(x, dtype=np.int64)]

    def all_indices(self):
        return np.arange(self.q, dtype=np.int64)

    # public element constructors
    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        return FieldElement(self, self.from_int(int(value)))

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)


class FieldElement:
    """An element of F_{p^n}; equality is coefficient-wise."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.ctx, self.ctx.pow(self.ctx.inv(self.value), -e))
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.ctx.n == 1:
            return f"F{self.ctx.q}({self.value})"
        return f"F{self.ctx.q}({list(self.coeffs)})"

    def __str__(self):
        if self.ctx.n == 1:
            return str(self.value)
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


@functools.lru_cache(maxsize=64)
def _cached_field(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldCtx:
    if not is_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")
    if n < 1:
        raise DegreeMismatch("extension degree must be positive")
    if modulus is None:
        modulus = default_modulus(p, n)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1:
            raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {n}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{format_modulus(modulus)} is reducible over F_{p}")
    return FieldCtx(p, n, modulus)


def make_field(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build (or fetch the cached) context for F_{p^n}.

    Without ``modulus`` the smallest monic irreducible polynomial is used,
    ordering candidates by their coefficients from x^{n-1} down to the
    constant term.
    """
    return _cached_field(p, n, None if modulus is None else tuple(modulus))


def arith(ctx: FieldCtx, lhs: FieldElement, rhs: FieldElement, op: str) -> FieldElement:
    fn = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul, "div": ctx.div}[op]
    return FieldElement(ctx, fn(int(lhs), int(rhs)))


def inv(ctx: FieldCtx, x: FieldElement) -> FieldElement:
    return FieldElement(ctx, ctx.inv(int(x)))


def neg(ctx: FieldCtx, x: FieldElement) -> FieldElement:
    return FieldElement(ctx, ctx.neg(int(x)))


def power(ctx: FieldCtx, x: FieldElement, e: int) -> FieldElement:
    return FieldElement(ctx, ctx.pow(int(x), e))


def quad_char(ctx: FieldCtx, x: FieldElement) -> int:
    return ctx.chi(int(x))


def sqrt(ctx: FieldCtx, s: FieldElement):
    roots = ctx.sqrt(int(s))
    if roots is None:
        return None
    return FieldElement(ctx, roots[0]), FieldElement(ctx, roots[1])


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElement]:
    for i in range(ctx.q):
        yield FieldElement(ctx, i)


def embed_int(ctx: FieldCtx, k: int) -> FieldElement:
    return FieldElement(ctx, ctx.from_int(k))


def embed_ratio(ctx: FieldCtx, num: int, den: int) -> FieldElement:
    return FieldElement(ctx, ctx.from_ratio(num, den))


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Parse ``"k"``, ``"num/den"`` or a bracketed coefficient list ``"[c0,c1,...]"``."""
    text = text.strip()
    if text.startswith("["):
        coeffs = [int(t) for t in text.strip("[]").split(",") if t.strip()]
        return FieldElement(ctx, ctx.index(coeffs))
    if "/" in text:
        num, den = text.split("/", 1)
        return embed_ratio(ctx, int(num), int(den))
    return embed_int(ctx, int(text))
