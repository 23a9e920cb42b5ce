import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamegamma import matrices as mx
from tamegamma.errors import BadPrimeChoice, LevelUnsupported
from tamegamma.factors import (
    AdditiveCharacter,
    epsilon0_field,
    epsilon0_monomial,
    epsilon0_reduce_mod_ell,
    epsilon_character,
    epsilon_monomial,
    epsilon_wd,
    gamma_field,
    gauss_sum,
    l_factor,
    lemma45_check,
    local_factors,
    monomial,
    tame_spectral_data,
)
from tamegamma.generators import GenConfig, random_extension
from tamegamma.homs import make_hom
from tamegamma.laurent import SFraction, laurent_poly
from tamegamma.rings import Cyclotomic, make_ring, normalize_cyclotomic_index
from tamegamma.syntax import parse_matrix, parse_ring
from tamegamma.weil import (
    LocalFieldData,
    TameCharacter,
    direct_sum,
    frobenius_semisimplify,
    mk_tame,
    mk_wd,
    sp,
    tensor,
    twist_unramified,
    unramified_character,
)

Q = parse_ring("Q")
K3 = parse_ring("Cyclotomic(3)")
K24 = parse_ring("Cyclotomic(24)")
F3 = LocalFieldData(3)


def frac(R, num, den):
    return SFraction(laurent_poly(R, num), laurent_poly(R, den))


def psi3(R=K3, level=0):
    return AdditiveCharacter.standard(R, 3, level)


def quadratic(u=1, R=K3):
    return mk_tame(R, [[R(u)]], [[R(-1)]], F3)


def induced(R=K24, w="z8"):
    return mk_tame(R, parse_matrix([["0", w], ["1", "0"]], R), parse_matrix([["z8", "0"], ["0", "z8^3"]], R), F3)


def unramified_gamma(R, q, alpha):
    """-q alpha X (1 - alpha X) / (1 - q alpha X)"""
    a = R(alpha)
    return frac(R, [0, -q * a, q * a * a], [1, -q * a])


# -- Gauss sums -------------------------------------------------------------------------


def brute_gauss_prime(p: int, j: int):
    """sum over F_p^x of chi^-1(x) z_p^x with chi(g) = z_{p-1}^j, g the package's generator of F_p^x."""
    Fp = parse_ring(f"FiniteField({p})")
    g = int(Fp.root_of_unity(p - 1).data[0])
    K = make_ring(Cyclotomic(normalize_cyclotomic_index(math.lcm(p, p - 1))))
    zq, zp = K.root_of_unity(p - 1), K.root_of_unity(p)
    total, x = K.zero, 1
    for k in range(p - 1):
        total = total + zq ** (-k * j % (p - 1)) * zp ** x
        x = x * g % p
    return total


def test_trivial_gauss_sum():
    assert gauss_sum(0, F3) == -1


def test_quadratic_gauss_sum_q3():
    g = gauss_sum(1, F3)
    z = g.ring.root_of_unity(3)
    assert g == z - z ** 2
    assert g * g == -3


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_gauss_sums_of_prime_fields_match_brute_force(p):
    for j in range(1, p - 1):
        assert gauss_sum(j, LocalFieldData(p)) == brute_gauss_prime(p, j)


@pytest.mark.parametrize("q,d", [(3, 1), (3, 2), (5, 2), (2, 3), (4, 2), (9, 1), (7, 2)])
def test_gauss_sum_norm(q, d):
    F = LocalFieldData(*{3: (3, 1), 5: (5, 1), 7: (7, 1), 2: (2, 1), 4: (2, 2), 9: (3, 2)}[q])
    Qd = q ** d
    for j in range(1, Qd - 1):
        g = gauss_sum(j, F, d)
        K = g.ring
        conj = make_hom(K, K, {f"z{K.descriptor.m}": K.root_of_unity(K.descriptor.m) ** -1})
        assert g * conj(g) == Qd


# -- epsilon of characters ---------------------------------------------------------------


def test_epsilon_of_unramified_character():
    chi = TameCharacter(K3, 1, K3(5), K3.one)
    assert epsilon_character(chi, psi3(), F3) == 1


def test_epsilon_of_quadratic_character():
    z = K3.root_of_unity(3)
    chi = TameCharacter(K3, 1, K3(1), K3(-1))
    assert epsilon_character(chi, psi3(), F3) == z - z ** 2
    chi5 = TameCharacter(K3, 1, K3(5), K3(-1))
    assert epsilon_character(chi5, psi3(), F3) == 5 * (z - z ** 2)


def test_epsilon_character_rejects_level():
    chi = TameCharacter(K3, 1, K3(1), K3(-1))
    with pytest.raises(LevelUnsupported):
        epsilon_character(chi, psi3(level=1), F3)


# -- spectral data and epsilon_0 --------------------------------------------------------------


def test_spectral_data_of_unramified():
    a = mk_tame(K3, parse_matrix([["2", "1"], ["0", "3"]], K3), mx.identity(K3, 2), F3)
    (b,) = tame_spectral_data(a)
    assert b.orbit == (0,) and b.dim == 2 and mx.mat_eq(b.operator, a.phi)


def test_spectral_data_of_induced():
    a = induced()
    (b,) = tame_spectral_data(a)
    assert b.d == 2 and b.dim == 1
    assert b.operator == [[K24.root_of_unity(8)]]


def test_spectral_data_of_sum():
    u = mk_tame(K24, [[K24(2)]], [[K24.one]], F3)
    blocks = tame_spectral_data(direct_sum(u, induced()))
    assert sorted((b.d, b.dim) for b in blocks) == [(1, 1), (2, 1)]


@pytest.mark.parametrize("alpha", [1, 2, -3, "1/2"])
def test_epsilon0_of_unramified(alpha):
    e = epsilon0_field(unramified_character(Q, alpha, F3))
    assert e == -e.ring(alpha)


def test_epsilon0_of_ramified_character_is_epsilon():
    a = quadratic(5)
    chi = TameCharacter(K3, 1, K3(5), K3(-1))
    assert epsilon0_field(a, psi3()) == epsilon_character(chi, psi3(), F3)


@given(st.integers(0, 5000))
def test_epsilon0_is_multiplicative(seed):
    _, a, b = random_extension(random.Random(seed), GenConfig(qmax=9, dimmax=4))
    assert epsilon0_field(direct_sum(a, b)) == epsilon0_field(a) * epsilon0_field(b)


# -- L, epsilon and gamma -----------------------------------------------------------------------


def test_l_factor_examples():
    assert l_factor(unramified_character(Q, 2, F3)) == frac(Q, [1], [1, -2])
    assert l_factor(quadratic()) == 1
    assert l_factor(sp(2, Q, F3)) == frac(Q, [1], [1, Q("-1/3")])


def test_epsilon_monomials():
    a = unramified_character(Q, 2, F3)
    assert epsilon_monomial(a) == (1, 0)
    assert epsilon0_monomial(a) == (-2, 1)
    assert epsilon_monomial(quadratic())[1] == 1
    assert epsilon0_monomial(quadratic())[1] == 1
    ind = induced()
    assert epsilon_monomial(ind, psi3(K24, 1))[1] == 4
    assert epsilon0_monomial(ind, psi3(K24, 1))[1] == 4


def test_level_changes_the_constant_by_the_determinant_twist():
    # epsilon(r, psi_n) = det(phi)^-n q^(n dim) epsilon(r, psi_0) for tame r
    ind = induced()
    c0, _ = epsilon_monomial(ind, psi3(K24, 0))
    c1, _ = epsilon_monomial(ind, psi3(K24, 1))
    assert c1 == c0 * mx.det(ind.phi).inverse() * 9


@pytest.mark.parametrize("q,alpha", [(3, 2), (3, -1), (5, 3), (9, "1/2"), (7, 1)])
def test_gamma_of_unramified(q, alpha):
    F = {3: LocalFieldData(3), 5: LocalFieldData(5), 7: LocalFieldData(7), 9: LocalFieldData(3, 2)}[q]
    a = unramified_character(Q, alpha, F)
    g = gamma_field(a)
    assert g == unramified_gamma(g.base, q, alpha)


def test_gamma_of_ramified_character_is_epsilon_times_x():
    z = K3.root_of_unity(3)
    assert gamma_field(quadratic(5), psi3()) == monomial(5 * (z - z ** 2), 1)


def test_gamma_of_special_equals_gamma_of_underlying():
    for alpha in (1, 2, "1/3"):
        w = twist_unramified(sp(2, Q, F3), alpha)
        assert gamma_field(w) == gamma_field(w.rep)
        c, e = epsilon_wd(w)
        assert e == 1


def test_local_factors_bundle_is_consistent():
    lf = local_factors(sp(3, Q, F3))
    assert lf.gamma == gamma_field(sp(3, Q, F3))


def test_lemma45_examples():
    a = mk_wd(unramified_character(Q, 2, F3), [[Q.zero]])
    assert lemma45_check(a)
    assert lemma45_check(sp(2, Q, F3))
    assert lemma45_check(twist_unramified(sp(3, Q, F3), 7))
    K = K24
    w = tensor(induced(), sp(2, K, F3))
    assert lemma45_check(frobenius_semisimplify(w))


# -- reduction mod ell --------------------------------------------------------------------------


def test_reduce_unramified():
    F7 = parse_ring("FiniteField(7)")
    a = unramified_character(K3, 4, F3)
    red = make_hom(K3, F7, {"z3": F7(2)})
    assert epsilon0_reduce_mod_ell(a, red) == F7(-4)


def test_reduce_quadratic_mod_seven():
    F7 = parse_ring("FiniteField(7)")
    red = make_hom(K3, F7, {"z3": F7(2)})
    assert epsilon0_reduce_mod_ell(quadratic(), red) == F7(5)


def test_reduction_is_multiplicative():
    F73 = parse_ring("FiniteField(73)")
    red = make_hom(K24, F73)
    a, b = induced(), mk_tame(K24, [[K24(-1)]], [[K24(-1)]], F3)
    lhs = epsilon0_reduce_mod_ell(direct_sum(a, b), red)
    assert lhs == epsilon0_reduce_mod_ell(a, red) * epsilon0_reduce_mod_ell(b, red)


def test_reduce_needs_roots_and_good_prime():
    F7 = parse_ring("FiniteField(7)")
    with pytest.raises(BadPrimeChoice):
        epsilon0_reduce_mod_ell(unramified_character(Q, 2, F3), make_hom(Q, F7))
    F3f = parse_ring("FiniteField(3,2)")
    with pytest.raises(Exception):
        epsilon0_reduce_mod_ell(quadratic(), make_hom(K3, F3f))
