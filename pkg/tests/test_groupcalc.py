import pytest

from qhopf import groupcalc
from qhopf.coeff import specialize
from qhopf.forms import MatForm
from qhopf.ncalg import algebra


@pytest.fixture(scope="module", params=["standard", "hat"])
def alg(request):
    return algebra(request.param, "localized")


def test_T_unitary(alg):
    T = groupcalc.tmat(alg)
    assert (T.bar() @ T - MatForm.identity(alg)).is_zero()
    assert groupcalc.det_q(T) == alg.one


def test_T_relations_report(alg):
    assert groupcalc.check_T_relations(alg)["ok"]


def test_Txi(alg):
    assert groupcalc.check_Txi(alg)["ok"]


def test_maurer_cartan(alg):
    assert groupcalc.check_maurer_cartan(alg)["ok"]


def test_theta_trace(alg):
    assert groupcalc.check_theta_trace(alg)["ok"]
    assert specialize(groupcalc.theta_trace_coefficient(alg), 1) == 0


def test_v_duality(alg):
    assert groupcalc.check_v_duality(alg)["ok"]


def test_sphere(alg):
    assert groupcalc.sphere_map(alg)["ok"]
