"""Ring homomorphisms between tower rings, and root-of-unity adjunction.

A hom is fixed by the images of the source's generators (each adjoined root
of unity or polynomial variable); leaves map canonically (Q coerces its
values, Z/N reduces).  Maps out of Q are partial when the target has positive
characteristic: rationals whose denominator is not invertible raise
``NotAUnit``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DescriptorMismatch, HomRelationViolated, RootsUnavailable
from .rings import (
    Cyclotomic,
    FiniteField,
    IntegersModRing,
    ModularCyclotomic,
    PolyExt,
    PolynomialRing,
    PolyQuotientRing,
    Product,
    ProductRing,
    Quotient,
    RationalField,
    Ring,
    RingValue,
    make_ring,
    normalize_cyclotomic_index,
)


@dataclass(frozen=True, eq=False)
class RingHom:
    source: Ring
    target: Ring
    _apply: Callable
    label: str = ""

    def __call__(self, a):
        return apply_hom(self, a)

    def __repr__(self):
        return f"RingHom({self.source.descriptor} -> {self.target.descriptor}{': ' + self.label if self.label else ''})"


def apply_hom(f: RingHom, a: RingValue) -> RingValue:
    if not isinstance(a, RingValue):
        a = f.source(a)
    if a.ring is not f.source:
        raise DescriptorMismatch(f"{a.ring.descriptor} is not the source {f.source.descriptor}")
    return RingValue(f.target, f._apply(a.data))


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, lambda d: d, "id")


def compose(g: RingHom, f: RingHom) -> RingHom:
    """g after f."""
    if f.target is not g.source:
        raise DescriptorMismatch("homs are not composable")
    fa, ga = f._apply, g._apply
    return RingHom(f.source, g.target, lambda d: ga(fa(d)), f"{g.label} o {f.label}")


def _horner(target: Ring, coeffs, base_apply, x, shift=0):
    acc = target.zero_d
    for c in reversed(coeffs):
        acc = target.add(target.mul(acc, x), base_apply(c))
    if shift:
        acc = target.mul(acc, target.pow(x, shift))
    return acc


def _find_root(target: Ring, src: PolyQuotientRing, base_apply):
    """A root in the target of the source modulus, searched among roots of unity."""
    Q = src.ff_order
    for k in range(1, Q):
        if math.gcd(k, Q - 1) != 1:
            continue
        cand = target.pow(target.root_of_unity_d(Q - 1), k)
        if target.is_zero(_horner(target, src.mod, base_apply, cand)):
            return cand
    raise HomRelationViolated(f"no root of the {src.descriptor} modulus in {target.descriptor}")


def make_hom(source: Ring, target: Ring, images: dict | None = None, label: str = "") -> RingHom:
    """Hom determined by generator images (values or element-syntax strings).

    Missing cyclotomic generators default to the target's distinguished
    root of the same order; missing finite-field generators to the first
    root of the modulus found among the target's roots of unity.
    """
    images = dict(images or {})
    imgs = {k: (v.data if isinstance(v, RingValue) else target(v).data) for k, v in images.items()}
    for k, v in images.items():
        if isinstance(v, RingValue) and v.ring is not target:
            raise DescriptorMismatch(f"image of {k} is not in {target.descriptor}")
    if source is target and not imgs:
        return identity_hom(source)
    return RingHom(source, target, _build(source, target, imgs), label)


def _build(src: Ring, tgt: Ring, imgs: dict):
    if src is tgt and not any(_mentions(src, k) for k in imgs):
        return lambda d: d
    if isinstance(src, RationalField):
        return tgt.from_rational
    if isinstance(src, IntegersModRing):
        if not tgt.is_zero(tgt.from_int(src.N)):
            raise HomRelationViolated(f"{src.N} is not zero in {tgt.descriptor}")
        return tgt.from_int
    if isinstance(src, PolyQuotientRing):
        base_apply = _build(src.base, tgt, imgs)
        if src.var in imgs:
            x = imgs[src.var]
        elif src.cyc_order is not None:
            x = tgt.root_of_unity_d(src.cyc_order)
        elif src.ff_order is not None:
            x = _find_root(tgt, src, base_apply)
        else:
            raise HomRelationViolated(f"no image given for {src.var}")
        if not tgt.is_zero(_horner(tgt, src.mod, base_apply, x)):
            raise HomRelationViolated(
                f"image {tgt.fmt(x)} of {src.var} does not satisfy the {src.descriptor} relation")
        return lambda d: _horner(tgt, d, base_apply, x)
    if isinstance(src, PolynomialRing):
        base_apply = _build(src.base, tgt, imgs)
        if src.var not in imgs:
            raise HomRelationViolated(f"no image given for {src.var}")
        x = imgs[src.var]
        if src.laurent and not tgt.is_unit(x):
            raise HomRelationViolated(f"image of {src.var} must be a unit")
        return lambda d: _horner(tgt, d[1], base_apply, x, d[0])
    if isinstance(src, ProductRing):
        raise HomRelationViolated("use projection() for homs out of a product")
    raise TypeError(f"unsupported source {src.descriptor}")


def _mentions(ring: Ring, name: str) -> bool:
    while ring is not None:
        if getattr(ring, "var", None) == name:
            return True
        ring = getattr(ring, "base", None)
    return False


def projection(ring: ProductRing, i: int) -> RingHom:
    return RingHom(ring, ring.factors[i], lambda d: d[i], f"pr{i}")


def product_hom(source: Ring, target: ProductRing, parts: list[RingHom]) -> RingHom:
    applies = [p._apply for p in parts]
    return RingHom(source, target, lambda d: tuple(f(d) for f in applies), "prod")


# ---------------------------------------------------------------------------
# adjoining roots of unity


def adjoin_roots(ring: Ring, m: int) -> tuple[Ring, RingHom]:
    """A ring containing a primitive m-th root of unity, with the canonical embedding."""
    for ell in ring.residue_chars():
        if m % ell == 0:
            raise RootsUnavailable(f"{m} shares a factor with residue characteristic {ell}")
    if ring.has_roots(m):
        return ring, identity_hom(ring)
    d = ring.descriptor
    if isinstance(d, ModularCyclotomic) or (isinstance(ring, IntegersModRing) and len(ring.residue_chars()) == 1):
        if isinstance(ring, IntegersModRing):
            (ell,) = ring.residue_chars()
            k, n = 1, ring.nil_bound
        else:
            k, ell, n = d.m, d.ell, d.n
        big = make_ring(ModularCyclotomic(math.lcm(k, m), ell, n))
        return big, make_hom(ring, big)
    if isinstance(ring, RationalField) or isinstance(d, Cyclotomic):
        k = 1 if isinstance(ring, RationalField) else d.m
        big = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(k, m))))
        return big, make_hom(ring, big)
    if isinstance(d, FiniteField):
        s = d.r
        while (d.ell ** s - 1) % m:
            s += d.r
        big = make_ring(FiniteField(d.ell, s))
        return big, make_hom(ring, big)
    if isinstance(d, PolyExt):
        base2, emb = adjoin_roots(ring.base, m)
        big = make_ring(PolyExt(base2.descriptor, d.var, d.laurent))
        return big, make_hom(ring, big, {d.var: big.lookup(d.var)})
    if isinstance(d, Quotient):
        base2, emb = adjoin_roots(ring.base, m)
        mod2 = tuple(emb(ring.base.wrap(c)).data for c in d.modulus)
        big = make_ring(Quotient(base2.descriptor, d.var, mod2))
        return big, make_hom(ring, big, {d.var: big.lookup(d.var)})
    if isinstance(d, Product):
        parts = [adjoin_roots(f, m) for f in ring.factors]
        big = make_ring(Product(tuple(p[0].descriptor for p in parts)))
        homs = [compose(p[1], projection(ring, i)) for i, p in enumerate(parts)]
        return big, product_hom(ring, big, homs)
    raise RootsUnavailable(f"cannot adjoin roots of unity to {d}")


def map_matrix(f: RingHom, M):
    return [[f(x) for x in row] for row in M]
