import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamegamma import matrices as mx
from tamegamma.errors import (
    NonIntegerTrace,
    NonIntegralSwan,
    NotFiniteOrder,
    RelationViolated,
)
from tamegamma.generators import GenConfig, random_tame, random_wd
from tamegamma.syntax import parse_matrix, parse_ring
from tamegamma.weil import (
    FiltrationData,
    LocalFieldData,
    TameCharacter,
    artin_conductor,
    break_decomposition,
    direct_sum,
    dual,
    frobenius_semisimplify,
    induct_unramified,
    inertia_invariants,
    isotypic_decompose,
    mk_tame,
    mk_wd,
    rank_of_idempotent,
    sp,
    swan,
    tensor,
    twist_unramified,
    unramified_character,
)

Q = parse_ring("Q")
F3 = LocalFieldData(3)
K8 = parse_ring("Cyclotomic(8)")


def M(rows, R):
    return parse_matrix(rows, R)


def induced_example(w="z8"):
    return mk_tame(K8, M([["0", w], ["1", "0"]], K8), M([["z8", "0"], ["0", "z8^3"]], K8), F3)


# -- validation ---------------------------------------------------------------------


def test_unramified_and_quadratic_characters_are_valid():
    unramified_character(Q, 5, F3)
    K = parse_ring("Cyclotomic(3)")
    mk_tame(K, [[K(7)]], [[K(-1)]], F3)


def test_relation_violation_detected():
    with pytest.raises(RelationViolated):
        mk_tame(K8, M([["0", "z8"], ["2", "1"]], K8), M([["z8", "0"], ["0", "z8^3"]], K8), F3)


def test_infinite_order_rejected():
    with pytest.raises((NotFiniteOrder, RelationViolated)):
        mk_tame(Q, [[Q(1)]], [[Q(2)]], F3)


def test_induced_shape_matches_block_formula():
    K = parse_ring("Cyclotomic(24)")
    w = K("1 + z24")
    a = induct_unramified([[w]], [[K.root_of_unity(8)]], 2, F3)
    assert mx.mat_eq(a.sigma, M([["z8", "0"], ["0", "z8^3"]], K))
    assert mx.mat_eq(a.phi, [[K.zero, w], [K.one, K.zero]])


def test_induced_d1_is_identity_construction():
    a = induct_unramified([[Q(2)]], [[Q(1)]], 1, F3)
    assert a.phi == [[Q(2)]]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_induced_trivial_is_a_cycle(d):
    a = induct_unramified([[Q.one]], [[Q.one]], d, F3)
    assert mx.is_identity(a.sigma)
    cp = mx.charpoly(a.phi)
    # det(x - P) = x^d - 1, coefficients from the leading one down
    assert cp == [Q(1)] + [Q(0)] * (d - 1) + [Q(-1)]


def test_tame_character_induced():
    K = parse_ring("Cyclotomic(8)")
    chi = TameCharacter(K, 2, K(3), K.root_of_unity(8))
    a = chi.induced(F3)
    assert mx.mat_eq(a.sigma, M([["z8", "0"], ["0", "z8^3"]], K))


# -- constructions ---------------------------------------------------------------------------


def test_dual_of_unramified():
    a = unramified_character(Q, 2, F3)
    assert dual(a).phi == [[Q("1/2")]]


def test_dual_is_an_involution():
    w = random_wd(random.Random(5), GenConfig(dimmax=3), dimmax=3)
    dd = dual(dual(w))
    assert mx.mat_eq(dd.phi, w.phi) and mx.mat_eq(dd.sigma, w.sigma) and mx.mat_eq(dd.N, w.N)


def test_twist_scales_phi_only():
    s = sp(2, Q, F3)
    t = twist_unramified(s, 5)
    assert mx.mat_eq(t.phi, mx.scale(Q(5), s.phi)) and mx.mat_eq(t.N, s.N)
    mk_wd(t.rep, t.N)


def test_sp_examples():
    s1 = sp(1, Q, F3)
    assert s1.phi == [[Q.one]] and mx.is_zero_matrix(s1.N)
    s2 = sp(2, Q, F3)
    assert mx.mat_eq(s2.phi, M([["1", "0"], ["0", "1/3"]], Q))
    assert mx.mat_eq(s2.N, M([["0", "0"], ["1", "0"]], Q))
    lhs = mx.mat_mul(mx.mat_mul(s2.phi, s2.N), mx.inverse(s2.phi))
    assert mx.mat_eq(lhs, mx.scale(Q("1/3"), s2.N))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sp_is_nilpotent(n):
    s = sp(n, Q, F3)
    assert mx.is_zero_matrix(mx.mat_pow(s.N, n))


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_constructions_preserve_relations(s1, s2):
    cfg = GenConfig(qmax=5, dimmax=3)
    a = random_tame(random.Random(s1), cfg, q=3)
    b = random_tame(random.Random(s2), cfg, q=3)
    if a.ring is not b.ring:
        return
    for r in (direct_sum(a, b), dual(a), tensor(a, b), twist_unramified(a, 2)):
        mk_tame(r.ring, r.phi, r.sigma, r.field)


# -- invariants -----------------------------------------------------------------------------------


def test_inertia_invariants_examples():
    a = mk_tame(Q, M([["2", "1"], ["0", "3"]], Q), mx.identity(Q, 2), F3)
    assert inertia_invariants(a)[1] == 2
    K = parse_ring("Cyclotomic(8)")
    b = mk_tame(K, mx.identity(K, 2), M([["1", "0"], ["0", "-1"]], K), F3)
    basis, k = inertia_invariants(b)
    assert k == 1 and basis[0][1] == 0
    assert inertia_invariants(induced_example())[1] == 0


def test_frobenius_semisimplification():
    d = mk_tame(Q, M([["2", "0"], ["0", "3"]], Q), mx.identity(Q, 2), F3)
    assert mx.mat_eq(frobenius_semisimplify(d).phi, d.phi)
    u = mk_tame(Q, M([["1", "1"], ["0", "1"]], Q), mx.identity(Q, 2), F3)
    assert mx.is_identity(frobenius_semisimplify(u).phi)
    j = mk_tame(Q, M([["2", "1"], ["0", "2"]], Q), mx.identity(Q, 2), F3)
    assert mx.mat_eq(frobenius_semisimplify(j).phi, mx.scale(Q(2), mx.identity(Q, 2)))


def test_isotypic_examples():
    a = unramified_character(Q, 1, F3)
    parts = isotypic_decompose(a, mx.identity(Q, 1), 1)
    assert [(j, r) for j, _, r in parts] == [(0, 1)]
    b = mk_tame(Q, mx.identity(Q, 2), mx.identity(Q, 2), F3)
    parts = isotypic_decompose(b, M([["1", "0"], ["0", "-1"]], Q), 2)
    assert [(j, r) for j, _, r in parts] == [(0, 1), (1, 1)]
    K = parse_ring("Cyclotomic(3)")
    c = mk_tame(K, mx.identity(K, 2), mx.identity(K, 2), F3)
    rot = M([["0", "-1"], ["1", "-1"]], K)  # order 3, eigenvalues z3, z3^2
    parts = isotypic_decompose(c, rot, 3)
    assert sorted((j, r) for j, _, r in parts) == [(1, 1), (2, 1)]
    total = mx.zeros(K, 2)
    for _, e, _ in parts:
        total = mx.mat_add(total, e)
    assert mx.is_identity(total)


def test_isotypic_decomposition_of_induced():
    a = induced_example()
    parts = isotypic_decompose(a, a.sigma, 8)
    assert sorted(j for j, _, _ in parts) == [1, 3]


def test_rank_of_idempotent():
    assert rank_of_idempotent(mx.identity(Q, 3)) == 3
    assert rank_of_idempotent(mx.zeros(Q, 3)) == 0
    R = parse_ring("IntegersMod(25)")
    e = [[R(1), R(0), R(0)], [R(0), R(1), R(0)], [R(0), R(0), R(0)]]
    assert rank_of_idempotent(e) == 2


def test_rank_of_idempotent_needs_integer_trace():
    with pytest.raises(NonIntegerTrace):
        rank_of_idempotent([[Q("1/2")]])


# -- conductors -------------------------------------------------------------------------------------

K3 = parse_ring("Cyclotomic(3)")


def test_swan_tame_is_zero():
    assert swan(None) == 0
    assert swan(FiltrationData(())) == 0


def test_swan_half_jump():
    g = M([["z3", "0"], ["0", "z3^2"]], K3)
    filt = FiltrationData.from_generators([(Fraction(1, 2), [g])])
    assert break_decomposition(filt, 2) == [(Fraction(1, 2), 2)]
    assert swan(filt, 2) == 1


def test_swan_third_jump_is_not_integral():
    g = M([["z3", "0"], ["0", "z3^2"]], K3)
    filt = FiltrationData.from_generators([(Fraction(1, 3), [g])])
    with pytest.raises(NonIntegralSwan):
        swan(filt, 2)


def test_swan_two_jumps():
    # e1 is moved by the deeper group (break 1), e2 and e3 only by the upper one (break 1/2)
    g1 = M([["1", "0", "0", "0"], ["0", "z3", "0", "0"], ["0", "0", "z3", "0"], ["0", "0", "0", "1"]], K3)
    g2 = M([["z3", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]], K3)
    filt = FiltrationData.from_generators([(Fraction(1, 2), [g1, g2]), (Fraction(1), [g2])])
    assert sorted(break_decomposition(filt, 4)) == [(Fraction(1, 2), 2), (Fraction(1), 1)]
    assert swan(filt, 4) == 2


def test_artin_conductor_examples():
    assert artin_conductor(unramified_character(Q, 2, F3)) == 0
    chi = mk_tame(K3, [[K3(1)]], [[K3(-1)]], F3)
    assert artin_conductor(chi) == 1
    assert artin_conductor(induced_example()) == 2
    assert artin_conductor(unramified_character(Q, 2, F3), wild_swan=3) == 3
