import pytest

from qhopf import regression as R
from qhopf.gauge import field_strength


@pytest.mark.parametrize("variant,level,n", [("standard", "core", 0), ("standard", "localized", 0),
                                             ("hat", "localized", 0), ("standard", "braided", 2)])
def test_rules_and_commutators_at_one(variant, level, n):
    assert R.check_rules_q1(variant, level, n)["ok"]
    assert R.check_commutators_q1(variant, level, n)["ok"]


@pytest.mark.parametrize("fn", [R.check_pushes_q1, R.check_tensors_q1, R.check_instanton_q1,
                                R.check_forms_q1, R.check_group_q1])
def test_classical_limits(fn):
    assert fn()["ok"]


def test_classical_instanton_negative_control():
    # without the 1/(1 + rho^2/|x|^2) profile the potential is pure gauge
    cl = R.classical_algebra()
    F = cl.F
    A_cl = R.classical_instanton_A(cl)
    F_cl = R.classical_instanton_F(cl)
    bare = A_cl.rmul(cl.scalar((F.u + F.p) / F.u))
    assert (field_strength(A_cl) - F_cl).is_zero()
    assert field_strength(bare).is_zero()
    assert not F_cl.is_zero()
