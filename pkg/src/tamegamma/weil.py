"""Tame Weil and Weil-Deligne representations as matrix data.

A tame representation is a pair (phi, sigma) of invertible matrices: phi is
the image of a geometric Frobenius, sigma the image of the chosen generator of
tame inertia, with phi sigma phi^-1 = sigma^q and sigma of finite order prime
to p.  A Weil-Deligne representation adds a nilpotent N with
sigma N = N sigma and phi N phi^-1 = N / q.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import matrices as mx
from .errors import (
    InvalidFiltration,
    NegativeBreakRank,
    NonIntegerTrace,
    NonIntegralSwan,
    NotAUnit,
    NotFiniteOrder,
    OrderDivisibleByP,
    QNotInvertible,
    RelationViolated,
    RingNotField,
)
from .homs import RingHom, adjoin_roots
from .rings import Ring, RingValue, factorize, is_prime

DEFAULT_ORDER_BOUND = 10 ** 6


def order_bound() -> int:
    return int(os.environ.get("TAMEGAMMA_ROOT_BOUND", DEFAULT_ORDER_BOUND))


@dataclass(frozen=True)
class LocalFieldData:
    p: int
    f: int = 1
    ell: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.f < 1:
            raise ValueError("f must be positive")
        if self.ell and (not is_prime(self.ell) or self.ell == self.p):
            raise ValueError(f"ell = {self.ell} must be a prime different from p")

    @property
    def q(self) -> int:
        return self.p ** self.f


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True, eq=False)
class TameRep:
    ring: Ring
    phi: list
    sigma: list
    field: LocalFieldData
    order: int

    @property
    def dim(self) -> int:
        return len(self.phi)

    @property
    def q(self) -> int:
        return self.field.q

    def base_change(self, f: RingHom) -> "TameRep":
        return mk_tame(f.target, mx.map_entries(f, self.phi), mx.map_entries(f, self.sigma),
                       self.field, order=self.order)


@dataclass(frozen=True, eq=False)
class WDRep:
    rep: TameRep
    N: list

    @property
    def ring(self) -> Ring:
        return self.rep.ring

    @property
    def phi(self):
        return self.rep.phi

    @property
    def sigma(self):
        return self.rep.sigma

    @property
    def field(self) -> LocalFieldData:
        return self.rep.field

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def q(self) -> int:
        return self.rep.q

    def base_change(self, f: RingHom) -> "WDRep":
        return mk_wd(self.rep.base_change(f), mx.map_entries(f, self.N))


def _check_square(R: Ring, *Ms):
    n = len(Ms[0])
    for M in Ms:
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("matrices must be square of the same size")
        if any(x.ring is not R for r in M for x in r):
            raise ValueError(f"matrix entries are not in {R.descriptor}")


def _order_from_hint(S, hint: int) -> int:
    if not mx.is_identity(mx.mat_pow(S, hint)):
        raise NotFiniteOrder(f"sigma^{hint} is not the identity")
    k = hint
    for s in factorize(hint):
        while k % s == 0 and mx.is_identity(mx.mat_pow(S, k // s)):
            k //= s
    return k


def matrix_order(S, bound: int | None = None) -> int:
    bound = order_bound() if bound is None else bound
    P = S
    for k in range(1, bound + 1):
        if mx.is_identity(P):
            return k
        P = mx.mat_mul(P, S)
    raise NotFiniteOrder(f"sigma has no order <= {bound}")


def mk_tame(R: Ring, phi, sigma, field: LocalFieldData, order: int | None = None) -> TameRep:
    """Validated tame representation.  ``order`` is an optional multiple of the
    order of sigma; it is verified and reduced to the exact order."""
    _check_square(R, phi, sigma)
    if not mx.det(phi).is_unit() or not mx.det(sigma).is_unit():
        raise NotAUnit("phi and sigma must be invertible")
    q = field.q
    if not mx.mat_eq(mx.mat_mul(phi, sigma), mx.mat_mul(mx.mat_pow(sigma, q), phi)):
        raise RelationViolated("phi sigma phi^-1 != sigma^q")
    N = _order_from_hint(sigma, order) if order else matrix_order(sigma)
    if N % field.p == 0:
        raise OrderDivisibleByP(f"order {N} of sigma is divisible by p = {field.p}")
    return TameRep(R, [list(r) for r in phi], [list(r) for r in sigma], field, N)


def mk_wd(rep: TameRep, N) -> WDRep:
    R = rep.ring
    _check_square(R, rep.phi, N)
    q = rep.q
    if not mx.mat_eq(mx.mat_mul(rep.sigma, N), mx.mat_mul(N, rep.sigma)):
        raise RelationViolated("sigma N != N sigma")
    if not mx.mat_eq(mx.scale(R(q), mx.mat_mul(rep.phi, N)), mx.mat_mul(N, rep.phi)):
        raise RelationViolated("phi N phi^-1 != N / q")
    if not mx.is_zero_matrix(mx.mat_pow(N, rep.dim)):
        raise RelationViolated("N is not nilpotent")
    return WDRep(rep, [list(r) for r in N])


def as_wd(a: TameRep | WDRep) -> WDRep:
    if isinstance(a, WDRep):
        return a
    return WDRep(a, mx.zeros(a.ring, a.dim))


def underlying(a: TameRep | WDRep) -> TameRep:
    return a.rep if isinstance(a, WDRep) else a


def unramified_character(R: Ring, alpha, field: LocalFieldData) -> TameRep:
    return mk_tame(R, [[R(alpha)]], [[R.one]], field, order=1)


# ---------------------------------------------------------------------------
# constructions


def direct_sum(a, b):
    if a.ring is not b.ring or a.field != b.field:
        raise ValueError("direct sum needs the same ring and local field")
    ra, rb = underlying(a), underlying(b)
    rep = TameRep(ra.ring, mx.block_diag(ra.phi, rb.phi), mx.block_diag(ra.sigma, rb.sigma),
                  ra.field, math.lcm(ra.order, rb.order))
    if isinstance(a, WDRep) or isinstance(b, WDRep):
        return WDRep(rep, mx.block_diag(as_wd(a).N, as_wd(b).N))
    return rep


def twist_unramified(a, u):
    r = underlying(a)
    u = r.ring(u)
    if not u.is_unit():
        raise NotAUnit("twisting character value must be a unit")
    rep = TameRep(r.ring, mx.scale(u, r.phi), r.sigma, r.field, r.order)
    return WDRep(rep, a.N) if isinstance(a, WDRep) else rep


def dual(a):
    r = underlying(a)
    rep = TameRep(r.ring, mx.transpose(mx.inverse(r.phi)), mx.transpose(mx.inverse(r.sigma)),
                  r.field, r.order)
    if isinstance(a, WDRep):
        return WDRep(rep, mx.mat_neg(mx.transpose(a.N)))
    return rep


def _kron(A, B):
    return [[x * y for x in ra for y in rb] for ra in A for rb in B]


def tensor(a, b):
    ra, rb = underlying(a), underlying(b)
    rep = TameRep(ra.ring, _kron(ra.phi, rb.phi), _kron(ra.sigma, rb.sigma), ra.field,
                  math.lcm(ra.order, rb.order))
    if not (isinstance(a, WDRep) or isinstance(b, WDRep)):
        return rep
    Na, Nb = as_wd(a).N, as_wd(b).N
    Ia, Ib = mx.identity(ra.ring, ra.dim), mx.identity(rb.ring, rb.dim)
    return WDRep(rep, mx.mat_add(_kron(Na, Ib), _kron(Ia, Nb)))


def sp(n: int, R: Ring, field: LocalFieldData) -> WDRep:
    q = R(field.q)
    if not q.is_unit():
        raise QNotInvertible(f"q = {field.q} is not invertible in {R.descriptor}")
    qi = q.inverse()
    phi = [[qi ** i if i == j else R.zero for j in range(n)] for i in range(n)]
    N = [[R.one if i == j + 1 else R.zero for j in range(n)] for i in range(n)]
    rep = mk_tame(R, phi, mx.identity(R, n), field, order=1)
    return mk_wd(rep, N)


def induct_unramified(phi_E, sigma_E, d: int, field: LocalFieldData) -> TameRep:
    """Induction from the unramified extension of degree d.

    Input: (phi_E, sigma_E) with phi_E sigma_E phi_E^-1 = sigma_E^(q^d), the
    images of Fr^d and sigma.  Output blocks V_0..V_{d-1} with sigma acting on
    V_i by sigma_E^(q^i) and Fr mapping V_i to V_{i-1}.  For a character the
    value phi_E sits on V_1 -> V_0 and the wrap V_0 -> V_{d-1} is the
    identity; for larger blocks phi_E sits on the wrap instead, since it need
    not commute with sigma_E^q.
    """
    R = phi_E[0][0].ring
    k = len(phi_E)
    qd = field.q ** d
    if not mx.mat_eq(mx.mat_mul(phi_E, sigma_E), mx.mat_mul(mx.mat_pow(sigma_E, qd), phi_E)):
        raise RelationViolated("input does not satisfy phi_E sigma_E phi_E^-1 = sigma_E^(q^d)")
    if d == 1:
        return mk_tame(R, phi_E, sigma_E, field)
    blocks = [mx.mat_pow(sigma_E, field.q ** i) for i in range(d)]
    sigma = mx.block_diag(*blocks)
    n = k * d
    phi = mx.zeros(R, n)
    I = mx.identity(R, k)

    def put(bi, bj, M):
        for a in range(k):
            for b in range(k):
                phi[bi * k + a][bj * k + b] = M[a][b]

    for i in range(1, d):
        put(i - 1, i, I)
    put(d - 1, 0, I)
    if k == 1:
        put(0, 1, phi_E)
    else:
        put(d - 1, 0, phi_E)
    return mk_tame(R, phi, sigma, field)


@dataclass(frozen=True)
class TameCharacter:
    """A tame character of W_E, E/F unramified of degree d: u = value on Fr_E
    (the uniformizer), zeta = value on sigma."""

    ring: Ring
    d: int
    u: RingValue
    zeta: RingValue

    def check(self, field: LocalFieldData):
        if not self.u.is_unit():
            raise NotAUnit("u must be a unit")
        if self.zeta ** (field.q ** self.d - 1) != 1:
            raise RelationViolated("zeta^(q^d - 1) != 1")

    def induced(self, field: LocalFieldData) -> TameRep:
        self.check(field)
        return induct_unramified([[self.u]], [[self.zeta]], self.d, field)


# ---------------------------------------------------------------------------
# invariants and decompositions


def inertia_invariants(a) -> tuple[list, int]:
    r = underlying(a)
    if not r.ring.is_field:
        raise RingNotField(f"{r.ring.descriptor} is not a field")
    I = mx.identity(r.ring, r.dim)
    basis = mx.kernel(mx.mat_sub(r.sigma, I))
    if basis:
        mx.restrict(r.phi, basis)  # raises if not phi-stable
    return basis, len(basis)


def frobenius_semisimplify(a):
    """Replace phi by the semisimple part of its Jordan-Chevalley decomposition."""
    r = underlying(a)
    R = r.ring
    if not (R.is_field and R.characteristic == 0):
        raise RingNotField("Frobenius semisimplification needs a characteristic-zero field")
    S = semisimple_part(r.phi)
    rep = mk_tame(R, S, r.sigma, r.field, order=r.order)
    return mk_wd(rep, a.N) if isinstance(a, WDRep) else rep


def _poly_eval_matrix(coeffs, A):
    R = mx.ring_of(A)
    n = len(A)
    out = mx.zeros(R, n)
    for c in reversed(coeffs):
        out = mx.mat_add(mx.mat_mul(out, A), mx.scale(c, mx.identity(R, n)))
    return out


def _pd(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:]


def _ptrim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pdivmod(a, b):
    a, b = _ptrim(a), _ptrim(b)
    R = b[0].ring
    q = [R.zero] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        a = _ptrim([x - (c * b[i - k] if 0 <= i - k < len(b) else 0) for i, x in enumerate(a)])
    return _ptrim(q), a


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def semisimple_part(A):
    """Semisimple part of A over a perfect field, by Newton iteration on the
    squarefree part of its characteristic polynomial."""
    cp = mx.charpoly(A)
    P = list(reversed(cp))  # lowest degree first
    g = _pgcd(P, _pd(P))
    s, _ = _pdivmod(P, g)
    ds = _pd(s)
    S = A
    for _ in range(len(A) + 1):
        sS = _poly_eval_matrix(s, S)
        if mx.is_zero_matrix(sS):
            return S
        S = mx.mat_sub(S, mx.mat_mul(sS, mx.inverse(_poly_eval_matrix(ds, S))))
    raise AssertionError("Jordan-Chevalley iteration did not converge")


def rank_of_idempotent(e) -> int:
    R = mx.ring_of(e)
    n = len(e)
    t = mx.trace(e)
    hits = [r for r in range(n + 1) if t == R(r)]
    if len(hits) != 1:
        raise NonIntegerTrace(f"trace {t} does not determine a rank in [0, {n}]")
    return hits[0]


def isotypic_decompose(a, h, m: int | None = None):
    """Idempotents of the cyclic group generated by h acting on the representation.

    Returns [(j, projector, rank)] for the nonzero isotypic parts, where part j
    is where h acts by z_m^j.  The ring is enlarged if it lacks z_m; projectors
    then live over the enlargement.
    """
    r = underlying(a)
    R = r.ring
    m = matrix_order(h) if m is None else m
    if not R(m).is_unit():
        raise NotAUnit(f"|H| = {m} is not invertible in {R.descriptor}")
    if not R.has_roots(m):
        R2, emb = adjoin_roots(R, m)
        h = mx.map_entries(emb, h)
        R = R2
    z = R.root_of_unity(m)
    powers = [mx.identity(R, len(h))]
    for _ in range(1, m):
        powers.append(mx.mat_mul(powers[-1], h))
    inv_m = R(m).inverse()
    out = []
    for j in range(m):
        e = mx.zeros(R, len(h))
        for i, P in enumerate(powers):
            e = mx.mat_add(e, mx.scale(z ** (-(i * j) % m), P))
        e = mx.scale(inv_m, e)
        if mx.is_zero_matrix(e):
            continue
        out.append((j, e, rank_of_idempotent(e)))
    return out


@dataclass(frozen=True)
class FiltrationData:
    """Jumps v_1 < ... < v_k with finite matrix groups G_1 ⊇ ... ⊇ G_k."""

    jumps: tuple  # ((Fraction v, tuple of group elements), ...)

    @classmethod
    def from_generators(cls, steps, bound: int = 10_000) -> "FiltrationData":
        out = []
        for v, gens in steps:
            out.append((Fraction(v), tuple(map(_freeze, generate_group(gens, bound)))))
        return cls(tuple(out))

    def groups(self):
        return [[_thaw(g) for g in G] for _, G in self.jumps]


def _freeze(M):
    return tuple(tuple(r) for r in M)


def _thaw(M):
    return [list(r) for r in M]


def generate_group(gens, bound: int = 10_000):
    if not gens:
        raise InvalidFiltration("a filtration group needs generators")
    R = mx.ring_of(gens[0])
    I = mx.identity(R, len(gens[0]))
    seen = {_freeze(I): I}
    frontier = [I]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mx.mat_mul(g, s)
                k = _freeze(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
                    if len(seen) > bound:
                        raise InvalidFiltration("generated group exceeds the size bound")
        frontier = nxt
    return list(seen.values())


def _validate_filtration(filt: FiltrationData):
    vs = [v for v, _ in filt.jumps]
    if any(v <= 0 for v in vs) or vs != sorted(vs) or len(set(vs)) != len(vs):
        raise InvalidFiltration("jumps must be positive and strictly increasing")
    sets = [set(G) for _, G in filt.jumps]
    for A, B in zip(sets, sets[1:]):
        if not B <= A:
            raise InvalidFiltration("filtration groups must be decreasing")
    for G in sets:
        for g in G:
            for h in G:
                if _freeze(mx.mat_mul(_thaw(g), _thaw(h))) not in G:
                    raise InvalidFiltration("filtration group is not closed under products")


def _averaging_idempotent(G, R, n):
    size = R(len(G))
    if not size.is_unit():
        raise NotAUnit(f"group order {len(G)} is not invertible in {R.descriptor}")
    e = mx.zeros(R, n)
    for g in G:
        e = mx.mat_add(e, _thaw(g))
    return mx.scale(size.inverse(), e)


def break_decomposition(filt: FiltrationData, n: int | None = None) -> list[tuple[Fraction, int]]:
    """[(break v, rank)] from the fixed spaces of the filtration groups."""
    _validate_filtration(filt)
    G0 = filt.jumps[0][1]
    g0 = _thaw(next(iter(G0)))
    R = mx.ring_of(g0)
    n = len(g0) if n is None else n
    ranks = [rank_of_idempotent(_averaging_idempotent(G, R, n)) for _, G in filt.jumps] + [n]
    out = []
    for i, (v, _) in enumerate(filt.jumps):
        rk = ranks[i + 1] - ranks[i]
        if rk < 0:
            raise NegativeBreakRank(f"break {v} has rank {rk}")
        out.append((v, rk))
    return out


def swan(filt: FiltrationData | None, n: int | None = None) -> int:
    if filt is None or not filt.jumps:
        return 0
    total = sum((v * rk for v, rk in break_decomposition(filt, n)), Fraction(0))
    if total.denominator != 1:
        raise NonIntegralSwan(f"Swan conductor {total} is not an integer")
    if total < 0:
        raise NonIntegralSwan(f"Swan conductor {total} is negative")
    return int(total)


def artin_conductor(a, wild_swan: int = 0) -> int:
    r = underlying(a)
    return wild_swan + r.dim - inertia_invariants(r)[1]
