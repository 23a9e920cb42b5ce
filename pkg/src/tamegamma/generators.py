"""Seeded random tame and Weil-Deligne representations, valid by construction.

Sigma-eigenvalue orbits are sampled first; each orbit becomes an induced block
(diagonal sigma, cyclic phi), and the direct sum is conjugated by a random
unimodular integer matrix so that nothing stays diagonal.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import matrices as mx
from .rings import Cyclotomic, Ring, euler_phi, make_ring, multiplicative_order, normalize_cyclotomic_index
from .weil import (
    LocalFieldData,
    TameRep,
    WDRep,
    direct_sum,
    induct_unramified,
    mk_tame,
    mk_wd,
    sp,
    tensor,
    twist_unramified,
)

Q_CHOICES = (3, 5, 7, 9)
MAX_CYCLOTOMIC_DEGREE = 16


@dataclass
class GenConfig:
    qmax: int = 9
    dimmax: int = 6
    max_degree: int = MAX_CYCLOTOMIC_DEGREE
    conjugate: bool = True


@dataclass
class OrbitSpec:
    d: int            # orbit length
    m: int            # order of zeta (divides q^d - 1)
    k: int            # zeta = z_m^k, k prime to m
    mult: int = 1     # number of copies (phi^d eigenvalues)


@dataclass
class RepPlan:
    field: LocalFieldData
    orbits: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return sum(o.d * o.mult for o in self.orbits)

    @property
    def modulus(self) -> int:
        """Cyclotomic index of the coefficient field (holds z_m and z_p)."""
        return normalize_cyclotomic_index(math.lcm(self.field.p, *[o.m for o in self.orbits]))


def field_for(q: int) -> LocalFieldData:
    for p in (2, 3, 5, 7):
        f = round(math.log(q, p))
        if p ** f == q:
            return LocalFieldData(p, f)
    raise ValueError(f"{q} is not a small prime power")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def orbit_orders(q: int, d: int, p: int, max_degree: int) -> list[int]:
    """Orders m | q^d - 1 whose Frobenius orbit has length exactly d and whose
    field Q(z_m, z_p) stays small."""
    out = []
    for m in _divisors(q ** d - 1):
        if multiplicative_order(q, m) != d:
            continue
        if euler_phi(normalize_cyclotomic_index(math.lcm(m, p))) <= max_degree:
            out.append(m)
    return out


def random_plan(rng: random.Random, cfg: GenConfig, dim: int | None = None,
                q: int | None = None) -> RepPlan:
    q = q or rng.choice([x for x in Q_CHOICES if x <= cfg.qmax])
    F = field_for(q)
    dim = dim or rng.randint(1, cfg.dimmax)
    plan = RepPlan(F)
    left = dim
    while left:
        d = rng.randint(1, min(left, 4))
        ms = orbit_orders(q, d, F.p, cfg.max_degree)
        if not ms:
            continue
        m = rng.choice(ms)
        trial = RepPlan(F, plan.orbits + [OrbitSpec(d, m, 1)])
        if euler_phi(trial.modulus) > cfg.max_degree:
            continue
        k = rng.choice([k for k in range(1, m + 1) if math.gcd(k, m) == 1]) % m
        mult = rng.randint(1, left // d)
        plan.orbits.append(OrbitSpec(d, m, k, mult))
        left -= d * mult
    return plan


def random_unit(rng: random.Random, K: Ring, M: int):
    """A small nonzero element: a rational times a root of unity, plus sometimes 1."""
    num = rng.choice([1, 2, 3, 4, 5, -1, -2, -3])
    den = rng.choice([1, 1, 1, 2, 3])
    z = K.root_of_unity(M) ** rng.randrange(M)
    return K(num) * z / K(den)


def unimodular(rng: random.Random, K: Ring, n: int, steps: int | None = None):
    P = mx.identity(K, n)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = K(rng.choice([-2, -1, 1, 2]))
        P = [list(r) for r in P]
        P[i] = [x + c * y for x, y in zip(P[i], P[j])]
    return P


def conjugate(a, P):
    Pi = mx.inverse(P)
    r = a.rep if isinstance(a, WDRep) else a
    rep = TameRep(r.ring, mx.mat_mul(P, mx.mat_mul(r.phi, Pi)), mx.mat_mul(P, mx.mat_mul(r.sigma, Pi)),
                  r.field, r.order)
    if isinstance(a, WDRep):
        return WDRep(rep, mx.mat_mul(P, mx.mat_mul(a.N, Pi)))
    return rep


def realize(plan: RepPlan, rng: random.Random, conjugate_by: bool = True) -> TameRep:
    """Semisimple tame representation over Q(z_M) following the plan."""
    rep = _realize_over(plan, plan.modulus, rng)
    if conjugate_by:
        rep = conjugate(rep, unimodular(rng, rep.ring, rep.dim))
    return mk_tame(rep.ring, rep.phi, rep.sigma, plan.field, order=rep.order)


def random_tame(rng: random.Random, cfg: GenConfig | None = None, **kw) -> TameRep:
    cfg = cfg or GenConfig()
    return realize(random_plan(rng, cfg, **kw), rng, cfg.conjugate)


def random_character_data(rng: random.Random, q: int, d: int, max_degree: int = MAX_CYCLOTOMIC_DEGREE):
    """(field, m, k) for a tame character of the degree-d unramified extension."""
    F = field_for(q)
    ms = [m for m in _divisors(q ** d - 1)
          if euler_phi(normalize_cyclotomic_index(math.lcm(m, F.p))) <= max_degree]
    m = rng.choice(ms)
    k = rng.randrange(m)
    return F, m, k


def random_extension(rng: random.Random, cfg: GenConfig | None = None):
    """(ext, sub, quot): a block upper triangular tame representation with its
    diagonal blocks, often non-split."""
    cfg = cfg or GenConfig()
    q = rng.choice([x for x in Q_CHOICES if x <= cfg.qmax])
    dim = rng.randint(2, cfg.dimmax)
    d1 = rng.randint(1, dim - 1)
    while True:
        p1 = random_plan(rng, cfg, dim=d1, q=q)
        p2 = random_plan(rng, cfg, dim=dim - d1, q=q)
        both = RepPlan(p1.field, p1.orbits + p2.orbits)
        if euler_phi(both.modulus) <= cfg.max_degree:
            break
    M = both.modulus
    a = _realize_over(p1, M, rng)
    b = _realize_over(p2, M, rng)
    K = a.ring
    n1, n2 = a.dim, b.dim
    q = a.q
    C = [[K.zero] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            # C sigma_b = sigma_a^q C entrywise for diagonal sigmas
            if a.sigma[i][i] ** q == b.sigma[j][j] and rng.random() < 0.7:
                C[i][j] = K(rng.choice([-2, -1, 1, 2, 3]))
    phi = mx.block_diag(a.phi, b.phi)
    for i in range(n1):
        for j in range(n2):
            phi[i][n1 + j] = C[i][j]
    sigma = mx.block_diag(a.sigma, b.sigma)
    ext = mk_tame(K, phi, sigma, a.field, order=math.lcm(a.order, b.order))
    return ext, a, b


def _realize_over(plan: RepPlan, M: int, rng: random.Random) -> TameRep:
    K = make_ring(Cyclotomic(M))
    rep = None
    for o in plan.orbits:
        zeta = K.root_of_unity(o.m) ** o.k if o.m > 1 else K.one
        for _ in range(o.mult):
            block = induct_unramified([[random_unit(rng, K, M)]], [[zeta]], o.d, plan.field)
            rep = block if rep is None else direct_sum(rep, block)
    return rep


def random_wd(rng: random.Random, cfg: GenConfig | None = None, dimmax: int | None = None) -> WDRep:
    """Frobenius-semisimple WD representation: sum of (small tame) x Sp(n) pieces."""
    cfg = cfg or GenConfig()
    dimmax = dimmax or cfg.dimmax
    q = rng.choice([x for x in Q_CHOICES if x <= cfg.qmax])
    while True:
        pieces, left = [], dimmax
        while left > 0 and (not pieces or rng.random() < 0.6):
            n = rng.randint(1, min(4, left))
            rest = left // n
            k = rng.randint(1, min(2, rest))
            pieces.append((n, k))
            left -= n * k
        plans = [random_plan(rng, GenConfig(cfg.qmax, k, cfg.max_degree), dim=k, q=q) for _, k in pieces]
        M = normalize_cyclotomic_index(math.lcm(*[pl.modulus for pl in plans]))
        if euler_phi(M) <= cfg.max_degree and any(n > 1 for n, _ in pieces):
            break
    K = make_ring(Cyclotomic(M))
    out = None
    for (n, _), pl in zip(pieces, plans):
        r = _realize_over(pl, M, rng)
        piece = tensor(r, sp(n, K, r.field))
        out = piece if out is None else direct_sum(out, piece)
    out = conjugate(out, unimodular(rng, K, out.dim))
    rep = mk_tame(K, out.phi, out.sigma, out.rep.field, order=out.rep.order)
    return mk_wd(rep, out.N)


def sp_twist(n: int, q: int, alpha) -> WDRep:
    F = field_for(q)
    K = make_ring(Cyclotomic(normalize_cyclotomic_index(F.p)))
    return twist_unramified(sp(n, K, F), K(alpha))
