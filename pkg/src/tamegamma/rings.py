"""Exact coefficient rings.

A ring is described by a hashable descriptor tree (``Rationals``,
``Cyclotomic``, ``FiniteField``, ``ModularCyclotomic``, ``IntegersMod`` at the
leaves; ``PolyExt``, ``Quotient``, ``Product`` inside).  ``make_ring`` turns a
descriptor into a cached ring object, so two rings are the same object iff
their descriptors are equal.

Ring objects work on raw canonical data (``mpq``, ``int``, tuples); users
handle ``RingValue`` wrappers, which carry the ring and support the usual
operators.

Cyclotomics are stored modulo the cyclotomic polynomial, so ``Cyclotomic(m)``
is the field Q(z_m) and ``ModularCyclotomic(m, l, n)`` is
(Z[x]/Phi_m)/l^n, which generally has nilpotents and zero divisors.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction

from gmpy2 import mpq

from .errors import (
    CompositeModulusPrime,
    DescriptorMismatch,
    NonMonicModulus,
    NotAUnit,
    RootsUnavailable,
)

# ---------------------------------------------------------------------------
# integer helpers


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/m)^x; m >= 1 and gcd(a, m) = 1."""
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def normalize_cyclotomic_index(m: int) -> int:
    # Q(z_2k) = Q(z_k) for odd k
    return m // 2 if m % 4 == 2 else m


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return q


def _primitive_root_mod_prime(p: int) -> int:
    if p == 2:
        return 1
    primes = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // s, p) != 1 for s in primes):
            return g
    raise AssertionError("no primitive root")


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Rationals:
    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class IntegersMod:
    modulus: int

    def __str__(self) -> str:
        return f"IntegersMod({self.modulus})"


@dataclass(frozen=True)
class Cyclotomic:
    m: int

    def __str__(self) -> str:
        return f"Cyclotomic({self.m})"


@dataclass(frozen=True)
class FiniteField:
    ell: int
    r: int = 1

    def __str__(self) -> str:
        return f"FiniteField({self.ell},{self.r})"


@dataclass(frozen=True)
class ModularCyclotomic:
    m: int
    ell: int
    n: int = 1

    def __str__(self) -> str:
        return f"ModularCyclotomic({self.m},{self.ell},{self.n})"


@dataclass(frozen=True)
class PolyExt:
    """base[var], or base[var, 1/var] when ``laurent``."""

    base: object
    var: str
    laurent: bool = False

    def __str__(self) -> str:
        kind = "LaurentExt" if self.laurent else "PolyExt"
        return f"{kind}({self.base}, {self.var})"


@dataclass(frozen=True)
class Quotient:
    """base[var] / (modulus); modulus holds canonical base data, lowest first."""

    base: object
    var: str
    modulus: tuple = field(default=())

    def __str__(self) -> str:
        base = make_ring(self.base)
        return f"Quotient({self.base}, {self.var}, {fmt_poly(base, self.modulus, self.var)})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self) -> str:
        return "Product(" + ", ".join(str(f) for f in self.factors) + ")"


_ROOT_NAME = re.compile(r"^z(\d+)$")


# ---------------------------------------------------------------------------
# values


class RingValue:
    __slots__ = ("ring", "data")

    def __init__(self, ring: "Ring", data):
        self.ring = ring
        self.data = data

    def _coerce(self, other) -> "RingValue":
        if isinstance(other, RingValue):
            if other.ring is not self.ring:
                raise DescriptorMismatch(f"{self.ring.descriptor} vs {other.ring.descriptor}")
            return other
        return self.ring(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RingValue(self.ring, self.ring.add(self.data, o.data))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return RingValue(self.ring, self.ring.sub(self.data, o.data))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.data))

    def __mul__(self, other):
        o = self._coerce(other)
        return RingValue(self.ring, self.ring.mul(self.data, o.data))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        return RingValue(self.ring, self.ring.pow(self.data, k))

    def __eq__(self, other):
        if isinstance(other, RingValue):
            return other.ring is self.ring and other.data == self.data
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            try:
                return self.data == self.ring(other).data
            except NotAUnit:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.data))

    def __bool__(self):
        return not self.ring.is_zero(self.data)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.data)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.data)

    def inverse(self) -> "RingValue":
        return RingValue(self.ring, self.ring.inverse(self.data))

    def is_nilpotent(self) -> bool:
        return self.ring.is_nilpotent(self.data)

    def __str__(self):
        return self.ring.fmt(self.data)

    def __repr__(self):
        return f"RingValue({self.ring.fmt(self.data)!r} in {self.ring.descriptor})"


def is_unit(a: RingValue) -> bool:
    return a.is_unit()


def inverse(a: RingValue) -> RingValue:
    return a.inverse()


# ---------------------------------------------------------------------------
# rings


class Ring:
    descriptor: object
    is_field = False
    characteristic = 0
    nil_bound = 1

    # -- wrappers --------------------------------------------------------
    def __call__(self, x) -> RingValue:
        if isinstance(x, RingValue):
            if x.ring is not self:
                raise DescriptorMismatch(f"{x.ring.descriptor} is not {self.descriptor}")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return RingValue(self, self.from_int(x))
        if isinstance(x, Fraction) or type(x).__name__ == "mpq":
            return RingValue(self, self.from_rational(mpq(x.numerator, x.denominator)))
        if isinstance(x, str):
            from .syntax import parse_element

            return parse_element(x, self)
        raise TypeError(f"cannot coerce {x!r} into {self.descriptor}")

    def wrap(self, data) -> RingValue:
        return RingValue(self, data)

    @property
    def zero(self) -> RingValue:
        return RingValue(self, self.zero_d)

    @property
    def one(self) -> RingValue:
        return RingValue(self, self.one_d)

    def root_of_unity(self, m: int) -> RingValue:
        """The distinguished primitive m-th root of unity."""
        return RingValue(self, self.root_of_unity_d(m))

    def has_roots(self, m: int) -> bool:
        try:
            self.root_of_unity_d(m)
            return True
        except RootsUnavailable:
            return False

    def lookup(self, name: str) -> RingValue | None:
        d = self.lookup_d(name)
        return None if d is None else RingValue(self, d)

    def lookup_d(self, name: str):
        return None

    def __repr__(self):
        return f"<ring {self.descriptor}>"

    # -- generic raw ops -------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero_d

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inverse(a), -k
        out = self.one_d
        while k:
            if k & 1:
                out = self.mul(out, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return out

    def is_nilpotent(self, a) -> bool:
        return self.is_zero(self.pow(a, self.nil_bound))

    def residue_chars(self) -> set[int]:
        return set()


class RationalField(Ring):
    is_field = True

    def __init__(self):
        self.descriptor = Rationals()
        self.zero_d = mpq(0)
        self.one_d = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return mpq(n)

    def from_rational(self, r):
        return mpq(r)

    def is_unit(self, a):
        return a != 0

    def inverse(self, a):
        if a == 0:
            raise NotAUnit("0 in Q")
        return 1 / a

    def root_of_unity_d(self, m):
        if m == 1:
            return self.one_d
        if m == 2:
            return mpq(-1)
        raise RootsUnavailable(f"Q has no primitive {m}-th root of unity")

    def fmt(self, a):
        return str(a)


class IntegersModRing(Ring):
    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.descriptor = IntegersMod(modulus)
        self.N = modulus
        self.characteristic = modulus
        fac = factorize(modulus)
        self._primes = set(fac)
        self.nil_bound = max(fac.values())
        self.is_field = len(fac) == 1 and self.nil_bound == 1
        self.zero_d = 0
        self.one_d = 1

    def add(self, a, b):
        return (a + b) % self.N

    def sub(self, a, b):
        return (a - b) % self.N

    def neg(self, a):
        return -a % self.N

    def mul(self, a, b):
        return a * b % self.N

    def from_int(self, n):
        return n % self.N

    def from_rational(self, r):
        num, den = int(r.numerator), int(r.denominator)
        if math.gcd(den, self.N) != 1:
            raise NotAUnit(f"denominator {den} is not invertible mod {self.N}")
        return num * pow(den, -1, self.N) % self.N

    def is_unit(self, a):
        return math.gcd(a, self.N) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} mod {self.N}")
        return pow(a, -1, self.N)

    def residue_chars(self):
        return set(self._primes)

    def root_of_unity_d(self, m):
        if m == 1:
            return 1
        if len(self._primes) == 1:
            (ell,) = self._primes
            if (ell - 1) % m == 0:
                g = _primitive_root_mod_prime(ell)
                omega = pow(g, ell ** (self.nil_bound - 1), self.N)  # Teichmuller lift
                return pow(omega, (ell - 1) // m, self.N)
        if m == 2 and self.N > 2:
            return self.N - 1
        raise RootsUnavailable(f"no distinguished primitive {m}-th root mod {self.N}")

    def fmt(self, a):
        return str(a)


def _is_atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return " + " not in body and " - " not in body


def _fmt_term(coef: str, mono: str) -> str:
    if not mono:
        return coef
    if coef == "1":
        return mono
    if coef == "-1":
        return "-" + mono
    if not _is_atomic(coef):
        coef = f"({coef})"
    return f"{coef}*{mono}"


def _join_terms(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-") and not t.startswith("-("):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def fmt_poly(b: "Ring", coeffs, var: str, shift: int = 0) -> str:
    """Format a coefficient sequence over ring b as a polynomial in var."""
    terms = []
    for i, c in enumerate(coeffs):
        if b.is_zero(c):
            continue
        e = i + shift
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        terms.append(_fmt_term(b.fmt(c), mono))
    return _join_terms(terms)


class PolyQuotientRing(Ring):
    """base[var] / (monic modulus)."""

    def __init__(self, descriptor, base: Ring, modulus: list, var: str, *,
                 is_field=False, cyc_order=None, ff_order=None):
        b = base
        if not modulus or b.is_zero(modulus[-1]) or modulus[-1] != b.one_d:
            raise NonMonicModulus(f"modulus over {b.descriptor} must be monic")
        self.descriptor = descriptor
        self.base = b
        self.var = var
        self.mod = tuple(modulus)
        self.deg = len(modulus) - 1
        if self.deg < 1:
            raise NonMonicModulus("modulus must have positive degree")
        self.is_field = is_field
        self.cyc_order = cyc_order
        self.ff_order = ff_order
        self.characteristic = b.characteristic
        self.nil_bound = self.deg * b.nil_bound
        self._lazy = isinstance(b, (RationalField, IntegersModRing))
        self._N = b.N if isinstance(b, IntegersModRing) else None
        self.zero_d = (b.zero_d,) * self.deg
        self.one_d = (b.one_d,) + (b.zero_d,) * (self.deg - 1)
        self._gen = self._reduce([b.zero_d, b.one_d])

    # -- arithmetic ----------------------------------------------------
    def _norm(self, coeffs):
        if self._N is not None:
            N = self._N
            return tuple(c % N for c in coeffs)
        return tuple(coeffs)

    def _reduce(self, coeffs: list):
        d, f, b = self.deg, self.mod, self.base
        c = list(coeffs)
        if self._lazy:
            for i in range(len(c) - 1, d - 1, -1):
                top = c[i]
                if top:
                    for j in range(d):
                        if f[j]:
                            c[i - d + j] -= top * f[j]
            c = c[:d] + [b.zero_d] * (d - len(c))
            return self._norm(c)
        for i in range(len(c) - 1, d - 1, -1):
            top = c[i]
            if not b.is_zero(top):
                for j in range(d):
                    if not b.is_zero(f[j]):
                        c[i - d + j] = b.sub(c[i - d + j], b.mul(top, f[j]))
        c = c[:d] + [b.zero_d] * (d - len(c))
        return tuple(c)

    def add(self, a, c):
        if self._lazy:
            return self._norm([x + y for x, y in zip(a, c)])
        b = self.base
        return tuple(b.add(x, y) for x, y in zip(a, c))

    def sub(self, a, c):
        if self._lazy:
            return self._norm([x - y for x, y in zip(a, c)])
        b = self.base
        return tuple(b.sub(x, y) for x, y in zip(a, c))

    def neg(self, a):
        if self._lazy:
            return self._norm([-x for x in a])
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, c):
        d = self.deg
        if self._lazy:
            out = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(c):
                        if y:
                            out[i + j] += x * y
            if self._N is None:
                out = [mpq(v) for v in out]
            return self._reduce(out)
        b = self.base
        out = [b.zero_d] * (2 * d - 1)
        for i, x in enumerate(a):
            if b.is_zero(x):
                continue
            for j, y in enumerate(c):
                if not b.is_zero(y):
                    out[i + j] = b.add(out[i + j], b.mul(x, y))
        return self._reduce(out)

    def scale(self, s, a):
        b = self.base
        return self._norm([b.mul(s, x) for x in a]) if self._lazy else tuple(b.mul(s, x) for x in a)

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero_d[1:]

    def from_rational(self, r):
        return (self.base.from_rational(r),) + self.zero_d[1:]

    def embed_base(self, c):
        return (c,) + self.zero_d[1:]

    def residue_chars(self):
        return self.base.residue_chars()

    # -- units ---------------------------------------------------------
    def _mult_matrix(self, a):
        cols, x = [], a
        for _ in range(self.deg):
            cols.append(x)
            x = self.mul(x, self._gen)
        return [[cols[j][i] for j in range(self.deg)] for i in range(self.deg)]

    def norm(self, a):
        """Determinant of multiplication by a, in the base ring."""
        cp = charpoly_raw(self.base, self._mult_matrix(a))
        n = cp[-1]
        return n if self.deg % 2 == 0 else self.base.neg(n)

    def is_unit(self, a):
        if self.base.is_field:
            return self._field_xgcd(a) is not None
        return self.base.is_unit(self.norm(a))

    def inverse(self, a):
        if self.base.is_field:
            inv = self._field_xgcd(a)
            if inv is None:
                raise NotAUnit(f"{self.fmt(a)} in {self.descriptor}")
            return inv
        # Cayley-Hamilton on multiplication by a: a^-1 = -(a^(d-1) + c1 a^(d-2) + ... + c_{d-1}) / c_d
        b = self.base
        cp = charpoly_raw(b, self._mult_matrix(a))
        cd = cp[-1]
        if not b.is_unit(cd):
            raise NotAUnit(f"{self.fmt(a)} in {self.descriptor}")
        acc = self.embed_base(cp[0])
        for c in cp[1:-1]:
            acc = self.add(self.mul(acc, a), self.embed_base(c))
        return self.scale(b.neg(b.inverse(cd)), acc)

    def _field_xgcd(self, a):
        """Inverse of a modulo the modulus over a field base, or None."""
        b = self.base
        r0, r1 = list(self.mod), _ptrim(b, list(a))
        s0, s1 = [], [b.one_d]
        if not r1:
            return None
        while r1:
            q, r = _pdivmod(b, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(b, s0, _pmul(b, q, s1))
        if len(r0) != 1:
            return None
        lead_inv = b.inverse(r0[0])
        s = [b.mul(lead_inv, c) for c in s0]
        return self._reduce(s + [b.zero_d] * max(0, self.deg - len(s)))

    # -- names -----------------------------------------------------------
    def lookup_d(self, name):
        if name == self.var:
            return self._gen
        inner = self.base.lookup_d(name)
        return None if inner is None else self.embed_base(inner)

    def root_of_unity_d(self, m):
        if m == 1:
            return self.one_d
        k = self.cyc_order
        if k is not None and not (self.characteristic and math.gcd(m, self._char_prime()) != 1):
            if k % m == 0:
                return self.pow(self._gen, k // m)
            if k % 2 == 1 and m % 2 == 0 and (2 * k) % m == 0:
                return self.neg(self.pow(self._gen, (2 * k) // m))
        Q = self.ff_order
        if Q is not None and (Q - 1) % m == 0:
            return self.pow(self._gen, (Q - 1) // m)
        try:
            return self.embed_base(self.base.root_of_unity_d(m))
        except RootsUnavailable:
            raise RootsUnavailable(f"{self.descriptor} has no distinguished primitive {m}-th root") from None

    def _char_prime(self):
        return min(factorize(self.characteristic))

    def fmt(self, a):
        return fmt_poly(self.base, a, self.var)



# dense polynomial helpers over a base ring (lists, lowest first, trimmed)

def _ptrim(b: Ring, p: list) -> list:
    p = list(p)
    while p and b.is_zero(p[-1]):
        p.pop()
    return p


def _psub(b, p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        x = p[i] if i < len(p) else b.zero_d
        y = q[i] if i < len(q) else b.zero_d
        out.append(b.sub(x, y))
    return _ptrim(b, out)


def _pmul(b, p, q):
    if not p or not q:
        return []
    out = [b.zero_d] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = b.add(out[i + j], b.mul(x, y))
    return _ptrim(b, out)


def _pdivmod(b, p, q):
    """Division with remainder over a field base."""
    p = _ptrim(b, p)
    q = _ptrim(b, q)
    inv = b.inverse(q[-1])
    quo = [b.zero_d] * max(0, len(p) - len(q) + 1)
    r = list(p)
    while len(r) >= len(q) and r:
        c = b.mul(r[-1], inv)
        k = len(r) - len(q)
        quo[k] = c
        for j, y in enumerate(q):
            r[k + j] = b.sub(r[k + j], b.mul(c, y))
        r = _ptrim(b, r)
    return _ptrim(b, quo), r


def charpoly_raw(b: Ring, A: list[list]) -> list:
    """Berkowitz: [1, c1, ..., cn] with det(tI - A) = t^n + c1 t^(n-1) + ... + cn.

    Division free, so valid over any commutative ring.
    """
    n = len(A)
    p = [b.one_d]
    for i in range(n - 1, -1, -1):
        s = n - i
        a = A[i][i]
        row = A[i][i + 1:]
        col = [A[k][i] for k in range(i + 1, n)]
        sub = [r[i + 1:] for r in A[i + 1:]]
        t = [b.one_d, b.neg(a)]
        v = col
        for _ in range(s - 1):
            acc = b.zero_d
            for x, y in zip(row, v):
                acc = b.add(acc, b.mul(x, y))
            t.append(b.neg(acc))
            v = [_dot(b, r, v) for r in sub]
        new = []
        for j in range(s + 1):
            acc = b.zero_d
            for k in range(max(0, j - len(t) + 1), min(j, s - 1) + 1):
                acc = b.add(acc, b.mul(t[j - k], p[k]))
            new.append(acc)
        p = new
    return p


def _dot(b, r, v):
    acc = b.zero_d
    for x, y in zip(r, v):
        acc = b.add(acc, b.mul(x, y))
    return acc


class PolynomialRing(Ring):
    """base[var] or base[var, var^-1].  Data: (shift, coefficient tuple)."""

    def __init__(self, descriptor, base: Ring, var: str, laurent: bool):
        self.descriptor = descriptor
        self.base = base
        self.var = var
        self.laurent = laurent
        self.characteristic = base.characteristic
        self.nil_bound = base.nil_bound
        self.zero_d = (0, ())
        self.one_d = (0, (base.one_d,))

    def _mk(self, shift, coeffs):
        b = self.base
        c = list(coeffs)
        while c and b.is_zero(c[-1]):
            c.pop()
        if not c:
            return self.zero_d
        if self.laurent:
            k = 0
            while b.is_zero(c[k]):
                k += 1
            return (shift + k, tuple(c[k:]))
        if shift:
            if shift < 0:
                raise ValueError("negative power in a polynomial ring")
            c = [b.zero_d] * shift + c
        return (0, tuple(c))

    def add(self, a, c):
        (sa, ca), (sc, cc) = a, c
        if not ca:
            return c
        if not cc:
            return a
        b = self.base
        lo = min(sa, sc)
        hi = max(sa + len(ca), sc + len(cc))
        out = [b.zero_d] * (hi - lo)
        for i, x in enumerate(ca):
            out[sa - lo + i] = x
        for i, y in enumerate(cc):
            out[sc - lo + i] = b.add(out[sc - lo + i], y)
        return self._mk(lo, out)

    def neg(self, a):
        return (a[0], tuple(self.base.neg(x) for x in a[1]))

    def mul(self, a, c):
        (sa, ca), (sc, cc) = a, c
        if not ca or not cc:
            return self.zero_d
        b = self.base
        out = [b.zero_d] * (len(ca) + len(cc) - 1)
        for i, x in enumerate(ca):
            if b.is_zero(x):
                continue
            for j, y in enumerate(cc):
                if not b.is_zero(y):
                    out[i + j] = b.add(out[i + j], b.mul(x, y))
        return self._mk(sa + sc, out)

    def from_int(self, n):
        return self._mk(0, [self.base.from_int(n)])

    def from_rational(self, r):
        return self._mk(0, [self.base.from_rational(r)])

    def embed_base(self, c):
        return self._mk(0, [c])

    def coefficients(self, a) -> dict[int, object]:
        s, c = a
        return {s + i: x for i, x in enumerate(c) if not self.base.is_zero(x)}

    def is_zero(self, a):
        return not a[1]

    def is_nilpotent(self, a):
        return all(self.base.is_nilpotent(x) for x in a[1])

    def _unit_index(self, a):
        s, c = a
        b = self.base
        if not c:
            return None
        cands = [0] if not self.laurent else range(len(c))
        if not self.laurent and s != 0:
            return None
        for i in cands:
            if b.is_unit(c[i]) and all(b.is_nilpotent(x) for j, x in enumerate(c) if j != i):
                return i
        return None

    def is_unit(self, a):
        # constant (or single monomial, for Laurent) unit part plus nilpotent rest;
        # exact when the base has connected spectrum
        return self._unit_index(a) is not None

    def inverse(self, a):
        i = self._unit_index(a)
        if i is None:
            raise NotAUnit(f"{self.fmt(a)} in {self.descriptor}")
        s, c = a
        b = self.base
        lead_inv = b.inverse(c[i])
        lead_inv_mono = self._mk(-(s + i), [lead_inv])
        # a = lead * (1 + n) with n nilpotent
        n = self.sub(self.mul(a, lead_inv_mono), self.one_d)
        term, acc = self.one_d, self.one_d
        while True:
            term = self.neg(self.mul(term, n))
            if self.is_zero(term):
                break
            acc = self.add(acc, term)
        return self.mul(acc, lead_inv_mono)

    def residue_chars(self):
        return self.base.residue_chars()

    def lookup_d(self, name):
        if name == self.var:
            return self._mk(1, [self.base.one_d])
        inner = self.base.lookup_d(name)
        return None if inner is None else self.embed_base(inner)

    def root_of_unity_d(self, m):
        return self.embed_base(self.base.root_of_unity_d(m))

    def pow(self, a, k):
        if k < 0 and self.laurent and len(a[1]) == 1 and a[1][0] == self.base.one_d:
            return (a[0] * k, a[1])
        return Ring.pow(self, a, k)

    def fmt(self, a):
        s, c = a
        return fmt_poly(self.base, c, self.var, s)


class ProductRing(Ring):
    def __init__(self, descriptor, factors: list[Ring]):
        self.descriptor = descriptor
        self.factors = factors
        self.characteristic = math.lcm(*[f.characteristic for f in factors]) if all(
            f.characteristic for f in factors) else 0
        self.nil_bound = max(f.nil_bound for f in factors)
        self.zero_d = tuple(f.zero_d for f in factors)
        self.one_d = tuple(f.one_d for f in factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def from_int(self, n):
        return tuple(f.from_int(n) for f in self.factors)

    def from_rational(self, r):
        return tuple(f.from_rational(r) for f in self.factors)

    def is_zero(self, a):
        return all(f.is_zero(x) for f, x in zip(self.factors, a))

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def is_nilpotent(self, a):
        return all(f.is_nilpotent(x) for f, x in zip(self.factors, a))

    def residue_chars(self):
        return set().union(*[f.residue_chars() for f in self.factors])

    def lookup_d(self, name):
        parts = [f.lookup_d(name) for f in self.factors]
        return None if any(p is None for p in parts) else tuple(parts)

    def root_of_unity_d(self, m):
        return tuple(f.root_of_unity_d(m) for f in self.factors)

    def component(self, a: RingValue, i: int) -> RingValue:
        return RingValue(self.factors[i], a.data[i])

    def from_components(self, parts: list[RingValue]) -> RingValue:
        return RingValue(self, tuple(p.data for p in parts))

    def fmt(self, a):
        return "(" + "; ".join(f.fmt(x) for f, x in zip(self.factors, a)) + ")"


# ---------------------------------------------------------------------------
# construction


@lru_cache(maxsize=None)
def _primitive_poly(ell: int, r: int) -> tuple[int, ...]:
    """Smallest monic primitive degree-r polynomial over F_ell that is
    norm-compatible with the choices for every proper subfield: the norm of
    its root to F_{ell^s} is a root of the degree-s choice (Conway style)."""
    if r == 1:
        return ((-_primitive_root_mod_prime(ell)) % ell, 1)
    Q = ell ** r
    primes = list(factorize(Q - 1))
    subs = [(s, _primitive_poly(ell, s)) for s in range(1, r) if r % s == 0]
    base = make_ring(IntegersMod(ell))
    for idx in range(ell ** r):
        coeffs, k = [], idx
        for _ in range(r):
            coeffs.append(k % ell)
            k //= ell
        if coeffs[0] == 0:
            continue
        cand = PolyQuotientRing(None, base, coeffs + [1], "g")
        x = cand._gen
        if cand.pow(x, Q - 1) != cand.one_d:
            continue
        if any(cand.pow(x, (Q - 1) // s) == cand.one_d for s in primes):
            continue
        if all(_vanishes(cand, Ps, cand.pow(x, (Q - 1) // (ell ** s - 1))) for s, Ps in subs):
            return tuple(coeffs) + (1,)
    raise AssertionError("no compatible primitive polynomial found")


def _vanishes(ring, coeffs, y) -> bool:
    acc = ring.zero_d
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, y), ring.from_int(c))
    return ring.is_zero(acc)


@lru_cache(maxsize=None)
def make_ring(descriptor) -> Ring:
    d = descriptor
    if isinstance(d, Rationals):
        return RationalField()
    if isinstance(d, IntegersMod):
        return IntegersModRing(d.modulus)
    if isinstance(d, Cyclotomic):
        if d.m < 1:
            raise ValueError("m must be positive")
        return PolyQuotientRing(d, make_ring(Rationals()), [mpq(c) for c in cyclotomic_poly(d.m)],
                                f"z{d.m}", is_field=True, cyc_order=d.m)
    if isinstance(d, FiniteField):
        if not is_prime(d.ell):
            raise CompositeModulusPrime(f"{d.ell} is not prime")
        if d.r < 1:
            raise ValueError("r must be positive")
        base = make_ring(IntegersMod(d.ell))
        return PolyQuotientRing(d, base, _primitive_poly(d.ell, d.r), "g",
                                is_field=True, ff_order=d.ell ** d.r)
    if isinstance(d, ModularCyclotomic):
        if not is_prime(d.ell):
            raise CompositeModulusPrime(f"{d.ell} is not prime")
        if d.m < 1 or d.n < 1:
            raise ValueError("m and n must be positive")
        base = make_ring(IntegersMod(d.ell ** d.n))
        field_ = (d.n == 1 and math.gcd(d.m, d.ell) == 1
                  and multiplicative_order(d.ell, d.m) == euler_phi(d.m))
        return PolyQuotientRing(d, base, [c % d.ell ** d.n for c in cyclotomic_poly(d.m)],
                                f"z{d.m}", is_field=field_, cyc_order=d.m)
    if isinstance(d, PolyExt):
        return PolynomialRing(d, make_ring(d.base), d.var, d.laurent)
    if isinstance(d, Quotient):
        return PolyQuotientRing(d, make_ring(d.base), list(d.modulus), d.var)
    if isinstance(d, Product):
        return ProductRing(d, [make_ring(f) for f in d.factors])
    raise TypeError(f"unknown descriptor {d!r}")


def quotient(base, var: str, modulus) -> Quotient:
    """Quotient descriptor from a modulus given as a string or list of base values."""
    b = make_ring(base)
    if isinstance(modulus, str):
        from .syntax import parse_poly_in

        coeffs = parse_poly_in(modulus, b, var)
    else:
        coeffs = [b(c) for c in modulus]
    return Quotient(base, var, tuple(c.data for c in coeffs))


def integer_ring_root(ring: Ring) -> bool:
    return isinstance(ring, RationalField)


def is_char_zero_field(ring: Ring) -> bool:
    return ring.is_field and ring.characteristic == 0


def is_reduced_char_zero(ring: Ring) -> bool:
    """Descriptor inspection: characteristic zero with no nonzero nilpotents."""
    d = ring.descriptor
    if isinstance(d, (Rationals, Cyclotomic)):
        return True
    if isinstance(d, PolyExt):
        return is_reduced_char_zero(ring.base)
    if isinstance(d, Quotient):
        # reduced iff the modulus is squarefree over a char-0 field base
        b = ring.base
        if not (b.is_field and b.characteristic == 0):
            return False
        f = list(ring.mod)
        df = [b.mul(b.from_int(i), c) for i, c in enumerate(f)][1:]
        r0, r1 = _ptrim(b, f), _ptrim(b, df)
        while r1:
            r0, r1 = r1, _pdivmod(b, r0, r1)[1]
        return len(r0) == 1
    if isinstance(d, Product):
        return all(is_reduced_char_zero(f) for f in ring.factors)
    return False
