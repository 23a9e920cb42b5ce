"""Local factors over fields: Gauss sums, epsilon, epsilon_0, L and gamma.

Conventions (used consistently by the family code as well):

* Residue characters.  F_{p^r}^x is generated by the class g of x in
  F_p[x]/(P) for the smallest primitive P of degree r.  A root of unity zeta
  of order dividing p^r - 1 names the character g^k -> zeta^k.
* A tame character of W_E (E/F unramified of degree d) with value zeta on
  sigma and u on Fr_E has epsilon u * sum_x chi(x)^-1 psi(Tr x) at level 0,
  where chi is the residue character named by zeta.
* At additive level n != 0 constants are twisted by det(Phi)^-n q^(n dim).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import matrices as mx
from .errors import BadPrimeChoice, DescriptorMismatch, LevelUnsupported, NotAUnit, RingNotField
from .homs import RingHom, adjoin_roots, identity_hom
from .laurent import SFraction, laurent_poly, laurent_ring, substitute
from .rings import Cyclotomic, Ring, RingValue, _primitive_poly, make_ring, normalize_cyclotomic_index
from .weil import (
    LocalFieldData,
    TameCharacter,
    TameRep,
    WDRep,
    artin_conductor,
    as_wd,
    dual,
    inertia_invariants,
    underlying,
)


# ---------------------------------------------------------------------------
# additive characters


@dataclass(frozen=True, eq=False)
class AdditiveCharacter:
    """psi on F with level n(psi) and residue character x -> zeta_p^Tr(x)."""

    zeta_p: RingValue
    p: int
    level: int = 0

    def __post_init__(self):
        if self.zeta_p == 1 or not (self.zeta_p ** self.p == 1):
            raise ValueError("zeta_p must be a primitive p-th root of unity")

    @property
    def ring(self) -> Ring:
        return self.zeta_p.ring

    @classmethod
    def standard(cls, ring: Ring, p: int, level: int = 0) -> "AdditiveCharacter":
        return cls(ring.root_of_unity(p), p, level)

    def transport(self, f: RingHom) -> "AdditiveCharacter":
        return AdditiveCharacter(f(self.zeta_p), self.p, self.level)

    def at_level_zero(self) -> "AdditiveCharacter":
        return AdditiveCharacter(self.zeta_p, self.p, 0)


# ---------------------------------------------------------------------------
# finite fields and Gauss sums


@lru_cache(maxsize=None)
def trace_table(p: int, r: int) -> tuple[int, ...]:
    """Tr_{F_{p^r}/F_p}(g^k) for k = 0 .. p^r - 2, g the distinguished generator."""
    P = _primitive_poly(p, r)
    # multiplication-by-x matrix on the basis 1, x, ..., x^(r-1)
    C = [[0] * r for _ in range(r)]
    for j in range(r):
        if j + 1 < r:
            C[j + 1][j] = 1
        else:
            for i in range(r):
                C[i][j] = (-P[i]) % p
    basis_tr = []
    M = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(r):
        basis_tr.append(sum(M[i][i] for i in range(r)) % p)
        M = [[sum(M[i][k] * C[k][j] for k in range(r)) % p for j in range(r)] for i in range(r)]
    out = []
    y = [1] + [0] * (r - 1)
    for _ in range(p ** r - 1):
        out.append(sum(a * t for a, t in zip(y, basis_tr)) % p)
        top = y[-1]
        y = [0] + y[:-1]
        if top:
            y = [(a - top * c) % p for a, c in zip(y, P)]
    return tuple(out)


@lru_cache(maxsize=None)
def _histogram(p: int, r: int, m: int) -> tuple:
    tr = trace_table(p, r)
    return tuple(sorted(Counter((k % m, t) for k, t in enumerate(tr)).items()))


def gauss_sum_value(zeta: RingValue, order: int, zeta_p: RingValue, p: int, r: int) -> RingValue:
    """sum over x in F_{p^r}^x of chi(x)^-1 zeta_p^Tr(x), chi(g^k) = zeta^k.

    ``order`` is a multiple of the order of zeta dividing p^r - 1.
    """
    if (p ** r - 1) % order:
        raise ValueError(f"order {order} does not divide {p}^{r} - 1")
    R = zeta_p.ring
    zinv = zeta.inverse()
    zpow = [R.one]
    for _ in range(1, order):
        zpow.append(zpow[-1] * zinv)
    ppow = [R.one]
    for _ in range(1, p):
        ppow.append(ppow[-1] * zeta_p)
    acc = R.zero
    for (k, t), c in _histogram(p, r, order):
        acc = acc + zpow[k] * ppow[t] * c
    return acc


def gauss_sum(j: int, field: LocalFieldData, d: int = 1, ring: Ring | None = None) -> RingValue:
    """Gauss sum of the residue character g^k -> z^(jk) of F_{q^d}, z = z_{q^d - 1}.

    The value lies in a cyclotomic field containing z_p and z_{q^d - 1}.
    """
    p, r = field.p, field.f * d
    Q = p ** r
    if ring is None:
        ring = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(p, Q - 1))))
    z = ring.root_of_unity(Q - 1) ** (j % (Q - 1))
    return gauss_sum_value(z, Q - 1, ring.root_of_unity(p), p, r)


# ---------------------------------------------------------------------------
# preparing inputs


def _require_level_zero(psi: AdditiveCharacter):
    if psi.level != 0:
        raise LevelUnsupported(f"epsilon constants are computed at level 0, got n(psi) = {psi.level}")


def with_roots(a, psi: AdditiveCharacter | None = None, extra: int = 1):
    """Base-change a so its ring holds z_{N_sigma}, z_p (and z_extra); transport psi."""
    r = underlying(a)
    p = r.field.p
    m = math.lcm(r.order, p, extra)
    R = r.ring
    R2, emb = adjoin_roots(R, m) if not R.has_roots(m) else (R, identity_hom(R))
    a2 = a if R2 is R else a.base_change(emb)
    if psi is None:
        psi2 = AdditiveCharacter.standard(R2, p)
    elif psi.ring is R2:
        psi2 = psi
    elif psi.ring is R:
        psi2 = psi.transport(emb)
    else:
        raise DescriptorMismatch(f"psi lives over {psi.ring.descriptor}, rep over {R.descriptor}")
    if psi2.p != p:
        raise DescriptorMismatch("psi has the wrong residue characteristic")
    return a2, psi2


def level_twist(a, psi: AdditiveCharacter) -> RingValue:
    """det(Phi)^-n q^(n dim): the change of the epsilon constant at level n."""
    r = underlying(a)
    n = psi.level
    if n == 0:
        return r.ring.one
    return mx.det(r.phi) ** (-n) * r.ring(r.q) ** (n * r.dim)


# ---------------------------------------------------------------------------
# epsilon of characters and epsilon_0 of tame representations


def epsilon_character(chi: TameCharacter, psi: AdditiveCharacter, field: LocalFieldData) -> RingValue:
    if chi.d != 1:
        raise ValueError("epsilon_character takes characters of W_F (d = 1)")
    _require_level_zero(psi)
    chi.check(field)
    R = psi.ring
    if chi.zeta == 1:
        return R.one
    if chi.ring is not R:
        _, emb = adjoin_roots(chi.ring, psi.p)
        if emb.target is not R:
            raise DescriptorMismatch("character and psi live over incompatible rings")
        u, zeta = emb(chi.u), emb(chi.zeta)
    else:
        u, zeta = chi.u, chi.zeta
    return u * gauss_sum_value(zeta, field.q - 1, psi.zeta_p, field.p, field.f)


@dataclass
class OrbitBlock:
    exponent: int          # zeta = z_N^exponent
    N: int
    zeta: RingValue
    orbit: tuple           # exponents k, kq, kq^2, ... mod N
    basis: list            # basis of the zeta-eigenspace of sigma
    operator: list         # phi^d restricted to that eigenspace

    @property
    def d(self) -> int:
        return len(self.orbit)

    @property
    def dim(self) -> int:
        return len(self.basis)


def tame_spectral_data(a) -> list[OrbitBlock]:
    """Frobenius orbits of sigma-eigenvalues with phi^d on a representative eigenspace.

    The ring of ``a`` must already contain z_N (see ``with_roots``).
    """
    r = underlying(a)
    R = r.ring
    if not (R.is_field and R.characteristic == 0):
        raise RingNotField("spectral data needs a characteristic-zero field")
    N, q, n = r.order, r.q, r.dim
    z = R.root_of_unity(N)
    I = mx.identity(R, n)
    seen, blocks = set(), []
    for k in range(N):
        if k in seen:
            continue
        orbit = [k]
        while (orbit[-1] * q) % N != k:
            orbit.append((orbit[-1] * q) % N)
        seen.update(orbit)
        zeta = z ** k
        basis = mx.kernel(mx.mat_sub(r.sigma, mx.scale(zeta, I)))
        if not basis:
            continue
        op = mx.restrict(mx.mat_pow(r.phi, len(orbit)), basis)
        blocks.append(OrbitBlock(k, N, zeta, tuple(orbit), basis, op))
    total = sum(b.dim * b.d for b in blocks)
    if total != n:
        raise AssertionError(f"eigenspaces have total dimension {total}, expected {n}")
    return blocks


def epsilon0_field(a, psi: AdditiveCharacter | None = None) -> RingValue:
    """epsilon_0 of a tame representation over a characteristic-zero field, at level 0."""
    a, psi = with_roots(a, psi)
    _require_level_zero(psi)
    r = underlying(a)
    p, f = r.field.p, r.field.f
    out = r.ring.one
    for b in tame_spectral_data(r):
        if b.exponent == 0:
            out = out * mx.det(mx.mat_neg(b.operator))
            continue
        order = b.N // math.gcd(b.N, b.exponent)
        g = gauss_sum_value(b.zeta, order, psi.zeta_p, p, f * b.d)
        out = out * mx.det(b.operator) * g ** b.dim
    return out


# ---------------------------------------------------------------------------
# L-factors and gamma


def _invariant_space(a, with_N: bool) -> list:
    w = as_wd(a)
    basis, _ = inertia_invariants(w.rep)
    if with_N and basis:
        R = w.ring
        basis = mx.intersect(basis, mx.kernel(w.N), w.dim, R)
    return basis


def char_rev_on(phi, basis) -> RingValue:
    """det(I - phi X) on span(basis) as a polynomial in X."""
    R = mx.ring_of(phi)
    if not basis:
        return laurent_ring(R).one
    return laurent_poly(R, mx.charpoly(mx.restrict(phi, basis)))


def l_factor(a) -> SFraction:
    basis = _invariant_space(a, with_N=isinstance(a, WDRep))
    return SFraction(laurent_ring(a.ring).one, char_rev_on(underlying(a).phi, basis))


def l_factor_dual_shifted(a) -> SFraction:
    """L(a^dual, 1/(qX)) in S^-1 R[X, 1/X]."""
    d = dual(a)
    basis = _invariant_space(d, with_N=isinstance(d, WDRep))
    P = char_rev_on(underlying(d).phi, basis)
    R = a.ring
    return SFraction(laurent_ring(R).one, substitute(P, R(a.q).inverse(), -1))


def _det_neg_on(phi, basis) -> RingValue:
    R = mx.ring_of(phi)
    if not basis:
        return R.one
    return mx.det(mx.mat_neg(mx.restrict(phi, basis)))


def epsilon_monomial(a, psi: AdditiveCharacter | None = None) -> tuple[RingValue, int]:
    """(epsilon(r, psi), a(r) + dim n(psi)) for a tame representation r."""
    a, psi = with_roots(underlying(a), psi)
    e0 = epsilon0_field(a, psi.at_level_zero())
    basis, _ = inertia_invariants(a)
    const = e0 * _det_neg_on(a.phi, basis).inverse() * level_twist(a, psi)
    return const, artin_conductor(a) + a.dim * psi.level


def epsilon0_monomial(a, psi: AdditiveCharacter | None = None, wild_swan: int = 0) -> tuple[RingValue, int]:
    a, psi = with_roots(underlying(a), psi)
    const = epsilon0_field(a, psi.at_level_zero()) * level_twist(a, psi)
    return const, wild_swan + a.dim * (psi.level + 1)


def _quotient_space_op(w: WDRep):
    """phi on r^I / r_N^I."""
    inv, _ = inertia_invariants(w.rep)
    if not inv:
        return []
    inv_N = mx.intersect(inv, mx.kernel(w.N), w.dim, w.ring)
    M = mx.restrict(w.phi, inv)
    if not inv_N:
        return M
    # coordinates of inv_N inside inv
    sub = [_coords(v, inv) for v in inv_N]
    return mx.quotient_operator(M, sub, len(inv))


def _coords(v, basis):
    R = v[0].ring
    n, k = len(v), len(basis)
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    M, piv = mx.rref(aug)
    if k in piv:
        raise ValueError("vector not in span")
    out = [R.zero] * k
    for row, c in enumerate(piv):
        out[c] = M[row][k]
    return out


def wd_det_factor(w: WDRep) -> tuple[RingValue, int]:
    """det(-phi X | r^I / r_N^I) as (constant, exponent)."""
    Q = _quotient_space_op(w)
    if not Q:
        return w.ring.one, 0
    return mx.det(mx.mat_neg(Q)), len(Q)


def epsilon_wd(a, psi: AdditiveCharacter | None = None) -> tuple[RingValue, int]:
    a, psi = with_roots(as_wd(a), psi)
    c, e = epsilon_monomial(a.rep, psi)
    c2, e2 = wd_det_factor(a)
    return c * c2, e + e2


def monomial(c: RingValue, e: int) -> SFraction:
    return SFraction.const(c) * SFraction.x_power(c.ring, e)


def gamma_field(a, psi: AdditiveCharacter | None = None) -> SFraction:
    """gamma(a, X, psi) = epsilon(a, X, psi) L(a^dual, 1/(qX)) / L(a, X)."""
    a, psi = with_roots(a, psi)
    if isinstance(a, WDRep):
        eps = monomial(*epsilon_wd(a, psi))
    else:
        eps = monomial(*epsilon_monomial(a, psi))
    return eps * l_factor_dual_shifted(a) / l_factor(a)


@dataclass
class LocalFactors:
    L: SFraction
    epsilon: tuple
    epsilon0: tuple
    gamma: SFraction


def local_factors(a, psi: AdditiveCharacter | None = None) -> LocalFactors:
    a, psi = with_roots(a, psi)
    eps = epsilon_wd(a, psi) if isinstance(a, WDRep) else epsilon_monomial(a, psi)
    L = l_factor(a)
    g = gamma_field(a, psi)
    if not (monomial(*eps) * l_factor_dual_shifted(a) / L == g):
        raise AssertionError("gamma does not match epsilon and L")
    return LocalFactors(L, eps, epsilon0_monomial(a, psi), g)


def lemma45_check(a: WDRep) -> bool:
    """det(-phi X | r^I / r_N^I) against the ratio of the four L-factors."""
    w = as_wd(a)
    c, e = wd_det_factor(w)
    lhs = monomial(c, e)
    r, rd = w.rep, dual(w).rep
    ratio_tame = l_factor_dual_shifted(r) / l_factor(r)
    ratio_wd = l_factor(w) / l_factor_dual_shifted(w)
    return lhs == ratio_tame * ratio_wd


# ---------------------------------------------------------------------------
# reduction mod ell


def epsilon0_reduce_mod_ell(a, red: RingHom, psi: AdditiveCharacter | None = None) -> RingValue:
    """Reduce the characteristic-zero epsilon_0 along ``red`` (a prime above ell).

    ``red`` must be defined on a ring holding z_{N_sigma} and z_p.
    """
    r = underlying(a)
    if red.target.characteristic == 0:
        raise BadPrimeChoice("reduction target has characteristic zero")
    if red.target.characteristic % r.field.p == 0:
        raise BadPrimeChoice("reduction target has characteristic p")
    if red.source is not r.ring or not r.ring.has_roots(math.lcm(r.order, r.field.p)):
        raise BadPrimeChoice(
            f"reduction must start at a ring containing z_{math.lcm(r.order, r.field.p)}; "
            f"rep is over {r.ring.descriptor}")
    if psi is not None and psi.ring is not r.ring:
        raise DescriptorMismatch("psi must live over the representation's ring")
    try:
        return red(epsilon0_field(r, psi))
    except NotAUnit as exc:
        raise BadPrimeChoice(f"epsilon_0 is not integral at the chosen prime: {exc}") from None
