"""Gamma factors of tame families over rings.

For a tame representation (phi, sigma) over R, with T = 1 + sigma + ... +
sigma^(q-1),

    gamma_R = eps0 * X^(Sw + n(n(psi) + 1)) * det(T) * Char(phi) / Char(T phi),

where Char(M) = det(I - M X).  epsilon_0 is computed on a characteristic-zero
chart R0 -> R by eigen-projectors of sigma (no kernels, no division by
anything but differences of roots of unity) and pushed forward.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from . import matrices as mx
from .errors import (
    DescriptorMismatch,
    DetTNotUnit,
    HomRelationViolated,
    InvalidFamily,
    LevelUnsupported,
    NotAUnit,
)
from .factors import (
    AdditiveCharacter,
    epsilon0_reduce_mod_ell,
    gamma_field,
    gauss_sum_value,
    level_twist,
)
from .homs import RingHom, adjoin_roots, compose, identity_hom, make_hom
from .laurent import SFraction, frac_specialize, laurent_poly, laurent_ring, substitute
from .rings import PolyQuotientRing, PolynomialRing, ProductRing, Ring, RingValue, is_reduced_char_zero
from .weil import TameRep, inertia_invariants, rank_of_idempotent, underlying


# ---------------------------------------------------------------------------
# the closed formula


def t_operator(a) -> list:
    r = underlying(a)
    R = r.ring
    acc = mx.identity(R, r.dim)
    P = acc
    for _ in range(1, r.q):
        P = mx.mat_mul(P, r.sigma)
        acc = mx.mat_add(acc, P)
    return acc


def char_rev(M) -> RingValue:
    """det(I - M X) as a polynomial in X over the entry ring."""
    return laurent_poly(mx.ring_of(M), mx.charpoly(M))


def det_t(a) -> RingValue:
    r = underlying(a)
    d = mx.det(t_operator(r))
    if not d.is_unit():
        raise DetTNotUnit(f"det(T) = {d} is not a unit")
    R = r.ring
    if R.is_field and R.characteristic == 0:
        expected = R(r.q) ** inertia_invariants(r)[1]
        if d != expected:
            raise AssertionError(f"det(T) = {d}, expected {expected}")
    return d


@dataclass
class GammaResult:
    gamma: SFraction
    epsilon0: RingValue      # constant at the level of psi
    swan: int
    exponent: int
    det_t: RingValue
    descent: bool | None = None   # None when no enlargement was needed

    @property
    def ring(self) -> Ring:
        return self.gamma.base


def gamma_family(a, psi: AdditiveCharacter, eps0: RingValue, wild: tuple | None = None) -> GammaResult:
    """Assemble gamma_R from the level-zero epsilon_0 value ``eps0``.

    ``wild`` is an optional precomputed wild (constant, exponent) monomial
    multiplied in; its exponent is the Swan conductor of the wild part.
    """
    r = underlying(a)
    if eps0.ring is not r.ring:
        R2, emb = adjoin_roots(r.ring, math.lcm(r.order, r.field.p))
        if R2 is not eps0.ring:
            raise DescriptorMismatch(f"epsilon_0 over {eps0.ring.descriptor}, rep over {r.ring.descriptor}")
        r = r.base_change(emb)
    R = r.ring
    T = t_operator(r)
    dT = mx.det(T)
    if not dT.is_unit():
        raise DetTNotUnit(f"det(T) = {dT} is not a unit")
    const = eps0 * level_twist(r, psi)
    swan = 0
    if wild is not None:
        const = const * wild[0]
        swan = wild[1]
    exponent = swan + r.dim * (psi.level + 1)
    num = char_rev(r.phi) * laurent_ring(R).wrap(laurent_ring(R).embed_base((const * dT).data))
    num = num * laurent_ring(R).lookup("X") ** exponent
    den = char_rev(mx.mat_mul(T, r.phi))
    return GammaResult(SFraction(num, den), const, swan, exponent, dT)


def thm61_check(a) -> bool:
    """Char(phi)/Char(T phi) against L(rho, qX)/L(rho, X), and det(T) = q^dim(rho^I)."""
    r = underlying(a)
    R = r.ring
    basis, k = inertia_invariants(r)
    T = t_operator(r)
    if mx.det(T) != R(r.q) ** k:
        return False
    lhs = SFraction(char_rev(r.phi), char_rev(mx.mat_mul(T, r.phi)))
    P = laurent_poly(R, mx.charpoly(mx.restrict(r.phi, basis))) if basis else laurent_ring(R).one
    rhs = SFraction(P, substitute(P, R(r.q), 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# families


def generators(ring: Ring) -> list[tuple[str, RingValue]]:
    """Named generators of each layer of a tower ring, top first."""
    out = []
    R = ring
    while isinstance(R, (PolyQuotientRing, PolynomialRing)):
        out.append(R.var)
        R = R.base
    if isinstance(R, ProductRing):
        raise InvalidFamily("product rings have no single generator list")
    return [(name, ring.lookup(name)) for name in out]


def _cyclotomic_var(ring: Ring) -> tuple[str, int] | None:
    R = ring
    while isinstance(R, (PolyQuotientRing, PolynomialRing)):
        if isinstance(R, PolyQuotientRing) and R.cyc_order is not None:
            return R.var, R.cyc_order
        R = R.base
    return None


def extend_hom(f: RingHom, emb_src: RingHom, emb_tgt: RingHom) -> RingHom:
    """f' with f' o emb_src = emb_tgt o f, for root-of-unity enlargements."""
    S2, T2 = emb_src.target, emb_tgt.target
    if emb_src.source is emb_src.target:
        return compose(emb_tgt, f)
    old = generators(f.source)
    cv = _cyclotomic_var(S2)
    fixed = {}
    for name, _ in generators(S2):
        g = f.source.lookup(name)
        if g is not None and (cv is None or name != cv[0]):
            fixed[name] = emb_tgt(f(g))
    candidates = [None]
    if cv is not None:
        name, L = cv
        w = T2.root_of_unity(L)
        candidates = [w ** j for j in range(1, L) if math.gcd(j, L) == 1]
    for c in candidates:
        images = dict(fixed)
        if c is not None:
            images[cv[0]] = c
        try:
            h = make_hom(S2, T2, images)
        except HomRelationViolated:
            continue
        if all(h(emb_src(g)) == emb_tgt(f(g)) for _, g in old):
            return h
    raise HomRelationViolated("no extension of the hom to the enlarged rings")


def galois_fixers(emb: RingHom, also_fix=()) -> list[RingHom]:
    """Automorphisms z_L -> z_L^j of emb.target fixing the image of emb and ``also_fix``."""
    R2 = emb.target
    cv = _cyclotomic_var(R2)
    if cv is None or emb.source is R2:
        return []
    name, L = cv
    z = R2.lookup(name)
    others = {n: g for n, g in generators(R2) if n != name}
    gens = generators(emb.source)
    out = []
    for j in range(2, L):
        if math.gcd(j, L) != 1:
            continue
        try:
            s = make_hom(R2, R2, {**others, name: z ** j})
        except HomRelationViolated:
            continue
        if all(s(emb(g)) == emb(g) for _, g in gens) and all(s(v) == v for v in also_fix):
            out.append(s)
    return out


@dataclass(frozen=True, eq=False)
class FamilyPresentation:
    """A tame representation rho0 over a reduced characteristic-zero R0 and a hom f: R0 -> R."""

    rep0: TameRep
    f: RingHom

    def __post_init__(self):
        if self.f.source is not self.rep0.ring:
            raise DescriptorMismatch("chart hom must start at the ring of rho0")
        if not is_reduced_char_zero(self.rep0.ring):
            raise InvalidFamily(f"{self.rep0.ring.descriptor} is not a reduced characteristic-zero ring")

    @property
    def source(self) -> Ring:
        return self.rep0.ring

    @property
    def target(self) -> Ring:
        return self.f.target

    @property
    def rep(self) -> TameRep:
        return self.rep0.base_change(self.f)

    def enlarge(self) -> tuple["FamilyPresentation", RingHom, RingHom]:
        """Presentation over rings holding z_N and z_p, with both embeddings."""
        m = math.lcm(self.rep0.order, self.rep0.field.p)
        R0 = self.source
        if R0.has_roots(m):
            return self, identity_hom(R0), identity_hom(self.target)
        R0b, e0 = adjoin_roots(R0, m)
        Rb, e1 = adjoin_roots(self.target, m) if not self.target.has_roots(m) else (self.target, identity_hom(self.target))
        fb = extend_hom(self.f, e0, e1)
        return FamilyPresentation(self.rep0.base_change(e0), fb), e0, e1


def _lagrange_projector(S, zeta, others):
    R = zeta.ring
    n = len(S)
    I = mx.identity(R, n)
    e = I
    for eta in others:
        e = mx.mat_mul(e, mx.scale((zeta - eta).inverse(), mx.mat_sub(S, mx.scale(eta, I))))
    return e


def _det_on_image(M, e):
    """det of M restricted to the image of the idempotent e (M commutes with e)."""
    I = mx.identity(mx.ring_of(M), len(M))
    return mx.det(mx.mat_add(mx.mat_mul(M, e), mx.mat_sub(I, e)))


def epsilon0_chart(rep0: TameRep, psi: AdditiveCharacter) -> RingValue:
    """epsilon_0 over a ring holding z_N and psi's z_p, by eigen-projectors."""
    if psi.level != 0:
        raise LevelUnsupported("epsilon_0 on a chart is computed at level 0")
    R = rep0.ring
    N, q, n = rep0.order, rep0.q, rep0.dim
    p, f = rep0.field.p, rep0.field.f
    z = R.root_of_unity(N)
    cp = mx.charpoly(rep0.sigma)

    def cp_at(x):
        acc = R.zero
        for c in cp:
            acc = acc * x + c
        return acc

    present = [k for k in range(N) if not cp_at(z ** k).is_unit()]
    roots = {k: z ** k for k in present}
    seen, out, total = set(), R.one, 0
    for k in present:
        if k in seen:
            continue
        orbit = [k]
        while (orbit[-1] * q) % N != k:
            orbit.append((orbit[-1] * q) % N)
        seen.update(orbit)
        zeta = roots[k]
        e = _lagrange_projector(rep0.sigma, zeta, [roots[j] for j in present if j != k])
        rank = rank_of_idempotent(e)
        if rank == 0:
            continue
        total += rank * len(orbit)
        if k == 0:
            out = out * _det_on_image(mx.mat_neg(rep0.phi), e)
            continue
        d = len(orbit)
        g = gauss_sum_value(zeta, N // math.gcd(N, k), psi.zeta_p, p, f * d)
        out = out * _det_on_image(mx.mat_pow(rep0.phi, d), e) * g ** rank
    if total != n:
        raise AssertionError(f"eigen-projector ranks add to {total}, expected {n}")
    return out


def epsilon0_family(pres: FamilyPresentation, psi: AdditiveCharacter | None = None):
    """f(epsilon_0(rho0)) over R, or over its cyclotomic enlargement.

    Returns (value, enlarged presentation, psi on the enlarged source).
    """
    big, e0, _ = pres.enlarge()
    if psi is None:
        psi = AdditiveCharacter.standard(big.source, pres.rep0.field.p)
    elif psi.ring is pres.source and e0.source is not e0.target:
        psi = psi.transport(e0)
    if psi.ring is not big.source:
        raise DescriptorMismatch("psi must live over the chart ring")
    value = big.f(epsilon0_chart(big.rep0, psi.at_level_zero()))
    if not value.is_unit():
        raise NotAUnit(f"epsilon_0 = {value} is not a unit")
    return value, big, psi


def _descends(value, fixers) -> bool:
    if isinstance(value, SFraction):
        return all(frac_specialize(s, value) == value for s in fixers)
    return all(s(value) == value for s in fixers)


def gamma_of_family(pres: FamilyPresentation, psi: AdditiveCharacter | None = None,
                    wild: tuple | None = None) -> tuple[GammaResult, FamilyPresentation, AdditiveCharacter]:
    eps0, big, psi0 = epsilon0_family(pres, psi)
    psi_R = psi0.transport(big.f)
    res = gamma_family(big.rep, AdditiveCharacter(psi_R.zeta_p, psi_R.p, psi0.level), eps0, wild)
    if big is not pres:
        _, _, e1 = pres.enlarge()
        # psi takes values in R, so descent is to R[z_p]
        res.descent = _descends(res.gamma, galois_fixers(e1, [psi_R.zeta_p]))
    return res, big, psi0


# ---------------------------------------------------------------------------
# fibers and interpolation


@dataclass(frozen=True, eq=False)
class Fiber:
    """A hom R -> kappa into a field.  Characteristic-ell fibers carry a lift:
    h: R0 -> K (characteristic zero) and red: K -> kappa with red o h = hom o f."""

    hom: RingHom
    lift: RingHom | None = None
    red: RingHom | None = None
    label: str = ""


def check_lift(pres: FamilyPresentation, fb: Fiber):
    if fb.lift is None or fb.red is None:
        raise InvalidFamily("characteristic-ell fibers need a lift and a reduction")
    if fb.lift.source is not pres.source or fb.red.source is not fb.lift.target:
        raise DescriptorMismatch("lift homs do not compose with the chart")
    if fb.red.target is not fb.hom.target or fb.hom.source is not pres.target:
        raise DescriptorMismatch("reduction must land in the fiber field")
    for _, g in generators(pres.source):
        if fb.red(fb.lift(g)) != fb.hom(pres.f(g)):
            raise HomRelationViolated(f"lift is not compatible with the fiber on {g}")


def _matching_root(K: Ring, red: RingHom, target: RingValue, p: int) -> RingValue:
    w = K.root_of_unity(p)
    for j in range(1, p):
        if red(w ** j) == target:
            return w ** j
    raise HomRelationViolated("no p-th root of unity in the lift reduces to the fiber's zeta_p")


def reduction_gamma(pres: FamilyPresentation, fb: Fiber, psi_fiber: AdditiveCharacter) -> SFraction:
    """gamma at a characteristic-ell fiber: epsilon_0 by reduction from the lift,
    the rest from char_rev over the residue field."""
    check_lift(pres, fb)
    rep_k = pres.rep.base_change(fb.hom)
    lift_rep = pres.rep0.base_change(fb.lift)
    K = fb.lift.target
    psi_K = AdditiveCharacter(_matching_root(K, fb.red, psi_fiber.zeta_p, psi_fiber.p), psi_fiber.p)
    eps0 = epsilon0_reduce_mod_ell(lift_rep, fb.red, psi_K)
    return gamma_family(rep_k, psi_fiber, eps0).gamma


def fiber_reference(pres: FamilyPresentation, fb: Fiber, psi_fiber: AdditiveCharacter) -> SFraction:
    kappa = fb.hom.target
    if kappa.characteristic == 0:
        return gamma_field(pres.rep.base_change(fb.hom), psi_fiber)
    return reduction_gamma(pres, fb, psi_fiber)


def _digest(pres: FamilyPresentation) -> str:
    text = repr((str(pres.source.descriptor), [[str(x) for x in r] for r in pres.rep0.phi],
                 [[str(x) for x in r] for r in pres.rep0.sigma]))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def verify_interpolation(pres: FamilyPresentation, fibers: list[Fiber],
                         psi: AdditiveCharacter | None = None, case: str = "") -> list[dict]:
    """One record per fiber: specialized gamma_R against the fiber's own gamma."""
    res, big, psi0 = gamma_of_family(pres, psi)
    out = []
    _, _, e1 = pres.enlarge()
    for i, fb in enumerate(fibers):
        hom = fb.hom
        if big is not pres:
            if fb.lift is not None:
                raise InvalidFamily("characteristic-ell fibers need a chart that already holds the roots of unity")
            _, ek = adjoin_roots(hom.target, math.lcm(pres.rep0.order, pres.rep0.field.p))
            hom = extend_hom(fb.hom, e1, ek)
            fb = Fiber(hom, label=fb.label)
        psi_k = psi0.transport(compose(hom, big.f))
        lhs = frac_specialize(hom, res.gamma)
        rhs = fiber_reference(big, fb, psi_k)
        out.append({
            "case": case or _digest(pres),
            "fiber": fb.label or f"fiber{i}",
            "kind": "char0" if hom.target.characteristic == 0 else f"char{hom.target.characteristic}",
            "pass": lhs == rhs,
            "specialized": str(lhs),
            "fiber_gamma": str(rhs),
            "descent": res.descent,
        })
    return out

