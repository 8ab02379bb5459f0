import random

import pytest
from hypothesis import given, strategies as st

from qhopf.ncalg import StarUndefined, algebra
from qhopf.ncalg.confluence import (
    check_coefficient_compatibility,
    check_overlaps,
    check_strategies,
    classical_pbw,
    pbw_counts,
    with_rule,
)
from qhopf.sampling import random_letters_element


def test_alpha_gamma(Acore):
    A = Acore
    alpha, gamma = A.x(1, 1), A.x(2, 1)
    assert alpha * gamma == (gamma * alpha).scale(A.F.q)


def test_alpha_alphastar(A):
    q = A.F.q
    alpha, gamma = A.x(1, 1), A.x(2, 1)
    astar, gstar = A.star(alpha), A.star(gamma)
    assert alpha * astar - astar * alpha == (gamma * gstar).scale(1 - q * q)


def test_det_is_U(A):
    det = A.x(1, 1) * A.x(2, 2) - (A.x(1, 2) * A.x(2, 1)).scale(A.F.q)
    assert det == A.U()
    assert A.U() * A.Uinv() == A.one
    assert A.absx() * A.absx() == A.U()


def test_det_central_in_core(Acore):
    det = Acore.det_words()
    for a in (1, 2):
        for b in (1, 2):
            assert det * Acore.x(a, b) == Acore.x(a, b) * det


def test_U_xi_and_lambda(A):
    q = A.F.q
    assert A.U() * A.xi(1, 1) == (A.xi(1, 1) * A.U()).scale(q * q)
    assert A.lam() * A.x(1, 1) == (A.x(1, 1) * A.lam()).scale(A.F.qinv)


def test_radial_coefficients_move_with_sigma(A):
    F = A.F
    f = F.u / (F.u + F.p)
    assert A.scalar(f) * A.xi(1, 2) == A.xi(1, 2) * A.scalar(f.shift(1))


def test_xi_square_zero_and_quadratic_dims(Acore):
    assert (Acore.xi(1, 1) * Acore.xi(1, 1)).is_zero()
    assert 16 - Acore.report["xixi"]["rank"] == 6
    assert 16 - Acore.report["pdpd"]["rank"] == 10


def test_star(A):
    assert A.star(A.x(1, 1)) == A.x(2, 2)
    g = A.x(2, 1)
    assert A.star(A.star(g)) == g
    det = A.x(1, 1) * A.x(2, 2) - (A.x(1, 2) * A.x(2, 1)).scale(A.F.q)
    assert A.star(det) == det
    with pytest.raises(StarUndefined):
        A.star(A.xi(1, 1))


def test_act(A):
    assert A.act(A.pd(1, 1), A.x(1, 1)) == A.one
    assert A.act(A.pd(1, 1), A.one).is_zero()
    assert A.act(A.box(), A.Uinv()).is_zero()
    assert A.check_uinv_rule()


@pytest.mark.parametrize("variant,level,n", [("standard", "core", 0), ("standard", "localized", 0),
                                             ("hat", "localized", 0), ("standard", "braided", 2)])
def test_overlaps_resolve(variant, level, n):
    alg = algebra(variant, level, n)
    r = check_overlaps(alg, 3)
    assert r["checked"] > 0
    assert not r["failures"]


def test_coefficients_compatible(A):
    assert not check_coefficient_compatibility(A)["failures"]


def test_strategies_agree(A):
    r = check_strategies(A, 150, 4, seed=11)
    assert not r["failures"]


def test_pbw_matches_classical(Acore):
    got = pbw_counts(Acore, 4)
    assert got == {d: classical_pbw(d, False) for d in got}


def test_misoriented_rule_detected(Acore):
    # replace x21 x11 -> q^-1 x11 x21 by a rule with the wrong coefficient
    al = Acore.al
    lhs = next(k for k in Acore.rules if set(k) == {al.x(0), al.x(2)})
    (c, w), = Acore.rules[lhs]
    bad = with_rule(Acore, lhs, [(c * Acore.F.q, w)])
    assert check_overlaps(bad, 3)["failures"]


def test_rho_braided():
    B = algebra("standard", "braided", 2)
    q = B.F.q
    r1, r2 = B.rho(1), B.rho(2)
    assert r1 * r2 == (r2 * r1).scale(q * q)
    assert r1 * B.x(1, 1) == B.x(1, 1) * r1
    assert r1 * B.xi(1, 1) == B.xi(1, 1) * r1


@given(st.integers(0, 10 ** 6))
def test_star_antimultiplicative(seed):
    A = algebra("standard", "localized")
    rng = random.Random(seed)
    xs = [A.al.x(k) for k in range(4)]
    a = random_letters_element(A, rng, xs, 3)
    b = random_letters_element(A, rng, xs, 3)
    assert A.star(a * b) == A.star(b) * A.star(a)
    assert A.star(A.star(a)) == a


@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    A = algebra("standard", "localized")
    rng = random.Random(seed)
    letters = A.letters
    a, b, c = (random_letters_element(A, rng, letters, 2) for _ in range(3))
    assert (a * b) * c == a * (b * c)
