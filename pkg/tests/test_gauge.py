import pytest

from qhopf import gauge
from qhopf.forms import MatForm, hodge2


def test_pure_gauge_is_flat(A):
    assert gauge.check_field_strength(A)["ok"]
    z = MatForm(A, [[0, 0], [0, 0]])
    assert gauge.field_strength(z).is_zero()


def test_instanton_closed_form_and_self_duality(A):
    Fs = gauge.field_strength(gauge.instanton_A(A))
    assert (Fs - gauge.instanton_F_closed(A)).is_zero()
    assert (Fs.map(hodge2) - Fs).is_zero()


def test_instanton_wrong_coefficient_detected(A):
    Fs = gauge.field_strength(gauge.instanton_A(A))
    wrong = gauge.instanton_F_closed(A).rmul(A.scalar(A.F.q))
    assert not (Fs - wrong).is_zero()


def test_rho_zero_is_flat(A):
    assert gauge.field_strength(gauge.instanton_A(A, 0)).is_zero()


def test_antiinstanton(A):
    assert gauge.check_antiinstanton(A)["ok"]


def test_singular_gauge(A):
    assert gauge.check_singular_identities(A)["ok"]


def test_phi_harmonic(A):
    assert gauge.check_phi(A)["ok"]


def test_projector(A):
    r = gauge.projector_module(A)
    assert r["ok"]


def test_braided_shift():
    assert gauge.check_braided_shift(2)["ok"]


def test_multi_harmonic():
    assert gauge.check_multi_harmonic(2)["ok"]
    assert len(gauge.multi_phi(2)["terms"]) == 2


def test_u2():
    assert gauge.check_u2_unitary()["ok"]


def test_unsupported_n():
    with pytest.raises(gauge.UnsupportedN):
        gauge.check_multi_harmonic(3)
