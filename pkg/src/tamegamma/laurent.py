"""Laurent polynomials R[X, 1/X] and the fraction ring S^-1 R[X, 1/X].

S is the set of Laurent polynomials whose lowest and highest nonzero
coefficients are units.  Elements of S are nonzerodivisors, so fractions are
kept unreduced and compared by cross multiplication.
"""
from __future__ import annotations

from .errors import DenominatorNotInS, DescriptorMismatch, NumeratorNotInS
from .homs import RingHom
from .rings import PolyExt, Ring, RingValue, make_ring

VAR = "X"


def laurent_ring(base: Ring) -> Ring:
    return make_ring(PolyExt(base.descriptor, VAR, True))


def laurent_poly(base: Ring, coeffs: dict[int, object] | list) -> RingValue:
    """Laurent polynomial from {exponent: coefficient} or a list (lowest first, from X^0)."""
    L = laurent_ring(base)
    if isinstance(coeffs, dict):
        items = coeffs.items()
    else:
        items = enumerate(coeffs)
    out = L.zero
    X = L.lookup(VAR)
    for e, c in items:
        out = out + L.wrap(L.embed_base(base(c).data)) * X ** e
    return out


def coefficients(p: RingValue) -> dict[int, RingValue]:
    b = p.ring.base
    return {e: b.wrap(c) for e, c in p.ring.coefficients(p.data).items()}


def extreme_coefficients(p: RingValue) -> tuple[RingValue, RingValue] | None:
    s, c = p.data
    if not c:
        return None
    b = p.ring.base
    return b.wrap(c[0]), b.wrap(c[-1])


def in_S(p: RingValue) -> bool:
    ext = extreme_coefficients(p)
    return ext is not None and ext[0].is_unit() and ext[1].is_unit()


def substitute(p: RingValue, scale: RingValue, power: int) -> RingValue:
    """p(scale * X^power); power may be any nonzero integer."""
    L = p.ring
    X = L.lookup(VAR)
    out = L.zero
    for e, c in coefficients(p).items():
        out = out + L.wrap(L.embed_base((c * scale ** e).data)) * X ** (power * e)
    return out


class SFraction:
    """num / den with den in S."""

    __slots__ = ("num", "den")

    def __init__(self, num: RingValue, den: RingValue | None = None):
        if den is None:
            den = num.ring.one
        if num.ring is not den.ring:
            raise DescriptorMismatch("numerator and denominator over different rings")
        if not in_S(den):
            raise DenominatorNotInS(f"extreme coefficients of {den} are not units")
        self.num = num
        self.den = den

    # -- construction ----------------------------------------------------
    @classmethod
    def const(cls, a: RingValue) -> "SFraction":
        L = laurent_ring(a.ring)
        return cls(L.wrap(L.embed_base(a.data)))

    @classmethod
    def x_power(cls, base: Ring, k: int = 1) -> "SFraction":
        L = laurent_ring(base)
        return cls(L.lookup(VAR) ** k)

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @property
    def base(self) -> Ring:
        return self.num.ring.base

    def _coerce(self, other) -> "SFraction":
        if isinstance(other, SFraction):
            if other.ring is not self.ring:
                raise DescriptorMismatch("fractions over different rings")
            return other
        if isinstance(other, RingValue):
            if other.ring is self.ring:
                return SFraction(other)
            return SFraction.const(self.base(other))
        return SFraction.const(self.base(other))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return SFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return SFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return SFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def invert(self) -> "SFraction":
        if not in_S(self.num):
            raise NumeratorNotInS(f"extreme coefficients of {self.num} are not units")
        return SFraction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if not in_S(o.num):
            raise DenominatorNotInS(f"extreme coefficients of {o.num} are not units")
        return self * o.invert()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.invert()
        out = SFraction(self.ring.one)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, (SFraction, RingValue, int)):
            return NotImplemented
        return frac_equal(self, self._coerce(other))

    __hash__ = None

    def normalized(self) -> "SFraction":
        """Same fraction with denominator 1 + (higher powers of X)."""
        coeffs = coefficients(self.den)
        low = min(coeffs)
        scale = laurent_ring(self.base).lookup(VAR) ** (-low) * SFraction.const(coeffs[low].inverse()).num
        return SFraction(self.num * scale, self.den * scale)

    def __str__(self):
        n = self.normalized()
        if n.den == n.den.ring.one:
            return str(n.num)
        return f"{fmt_laurent(n.num)} / {fmt_laurent(n.den)}"

    def __repr__(self):
        return f"SFraction({self})"


def fmt_laurent(p: RingValue) -> str:
    s = str(p)
    return s if (" + " not in s and " - " not in s[1:]) else f"({s})"


def mk_fraction(num: RingValue, den: RingValue) -> SFraction:
    return SFraction(num, den)


def frac_equal(a: SFraction, b: SFraction) -> bool:
    if a.ring is not b.ring:
        raise DescriptorMismatch("fractions over different rings")
    return a.num * b.den == b.num * a.den


def frac_specialize(f: RingHom, a: SFraction) -> SFraction:
    if a.base is not f.source:
        raise DescriptorMismatch(f"fraction is over {a.base.descriptor}, hom from {f.source.descriptor}")
    L2 = laurent_ring(f.target)

    def push(p):
        out = L2.zero
        X = L2.lookup(VAR)
        for e, c in coefficients(p).items():
            out = out + L2.wrap(L2.embed_base(f(c).data)) * X ** e
        return out

    return SFraction(push(a.num), push(a.den))


def parse_fraction(text: str, base: Ring) -> SFraction:
    """Parse ``num / den`` style text in element syntax with X the Laurent variable."""
    from .syntax import _Parser, resolve_name

    def resolve(name):
        if name == VAR:
            return SFraction.x_power(base)
        return SFraction.const(resolve_name(base, name))

    return _Parser(text, resolve, lambda n: SFraction.const(base(n))).parse()
