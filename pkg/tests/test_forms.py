import random

import pytest
from hypothesis import given, strategies as st

from qhopf import forms
from qhopf.coeff import PoleAtPoint, qfield
from qhopf.forms import MatForm, WrongDegree
from qhopf.ncalg import algebra
from qhopf.sampling import random_form

seeds = st.integers(0, 10 ** 6)


def test_d_generators(A):
    assert forms.d(A.x(1, 2)) == A.xi(1, 2)
    assert forms.d(forms.d(A.x(1, 1) * A.x(2, 1))).is_zero()


def test_d_U(A):
    q = A.F.q
    th = forms.theta(A)
    assert forms.d(A.U()) == (A.U() * th).scale(1 - q ** -2)


def test_theta(A):
    th = forms.theta(A)
    assert (th * th).is_zero()
    assert forms.d(th).is_zero()
    assert th == forms.theta_explicit(A)
    assert forms.d_via_theta(A.x(1, 1)) == A.xi(1, 1)
    assert forms.d_via_theta(th).is_zero()
    assert forms.d_via_theta(A.Uinv()) == forms.d(A.Uinv())


def test_theta_has_a_pole_at_one():
    A1 = algebra("standard", "localized", F=qfield(1))
    with pytest.raises(PoleAtPoint):
        forms.theta(A1)


@pytest.mark.parametrize("variant", ["standard", "hat"])
def test_xblu(variant):
    alg = algebra(variant, "localized")
    assert forms.check_xblu(alg)["ok"]
    assert not forms.check_xblu(alg, sign=-1)["ok"]


def test_hodge_on_self_dual_basis(A):
    f, fp = forms.build_f(A), forms.build_fprime(A)
    assert (f.map(forms.hodge2) - f).is_zero()
    assert (fp.map(forms.hodge2) + fp).is_zero()
    sd, asd = forms.decompose2(f[0, 0])
    assert sd == f[0, 0] and asd.is_zero()


def test_hodge_involution_example(A):
    w = A.xi(1, 1) * A.xi(1, 2)
    assert forms.hodge2(forms.hodge2(w)) == w
    assert all(x.is_zero() for x in forms.decompose2(A.zero))


def test_hodge_wrong_degree(A):
    with pytest.raises(WrongDegree):
        forms.hodge2(A.xi(1, 1))


def test_potential(A):
    assert (forms.d(forms.build_a(A)) - forms.build_f(A)).is_zero()


def test_blu(A):
    x = forms.xmat(A)
    I = MatForm.identity(A, A.U())
    assert (x @ x.bar() - I).is_zero()
    assert (x.bar() @ x - I).is_zero()


@given(seeds, st.integers(0, 2))
def test_d_squared(seed, deg):
    A = algebra("standard", "localized")
    w = random_form(A, random.Random(seed), deg)
    assert forms.d(forms.d(w)).is_zero()


@given(seeds, st.integers(0, 2))
def test_d_via_theta_agrees(seed, deg):
    A = algebra("standard", "localized")
    w = random_form(A, random.Random(seed), deg)
    assert forms.d(w) == forms.d_via_theta(w)


@given(seeds, st.integers(0, 1), st.integers(0, 1))
def test_graded_leibniz(seed, p, r):
    A = algebra("hat", "localized")
    rng = random.Random(seed)
    a, b = random_form(A, rng, p), random_form(A, rng, r)
    sign = 1 if p % 2 == 0 else -1
    assert forms.d(a * b) == forms.d(a) * b + (a * forms.d(b)).scale(sign)


@given(seeds)
def test_hodge_decomposition(seed):
    A = algebra("standard", "localized")
    w = random_form(A, random.Random(seed), 2)
    sd, asd = forms.decompose2(w)
    assert forms.hodge2(forms.hodge2(w)) == w
    assert sd + asd == w
    assert forms.hodge2(sd) == sd and forms.hodge2(asd) == -asd
