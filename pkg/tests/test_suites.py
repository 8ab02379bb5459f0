from fractions import Fraction

import pytest

from qhopf.report import RESIDUAL_LIMIT, _summary, run_check
from qhopf.suites import Context, UnknownSuite, build_suite, expand, suite_names


def test_expand():
    assert expand(["forms"]) == ["forms.theta", "forms.d", "forms.hodge"]
    assert expand(["all"]) == suite_names()
    assert expand(["tensors", "tensors", "all"])[:2] == ["tensors", "ncalg.core"]
    with pytest.raises(UnknownSuite):
        expand(["form"])
    with pytest.raises(UnknownSuite):
        build_suite("nosuch", Context())


def test_context_json():
    j = Context(qvalue=Fraction(7, 5), variant="hat").to_json()
    assert j["qvalue"] == "7/5" and j["variant"] == "hat" and j["order"] == [0, 3, 1, 2]


def test_run_check_never_raises():
    r = run_check("tensors", "no such check", Context())
    assert r["status"] == "error"


def test_summary_truncation():
    s = _summary({"ok": False, "residual": "x" * (2 * RESIDUAL_LIMIT)})
    assert len(s) <= RESIDUAL_LIMIT + 20 and s.endswith("[truncated]")


@pytest.mark.parametrize("name", ["sun.T", "forms.theta", "gauge.fs"])
def test_numeric_field_suites(name):
    ctx = Context(qvalue=Fraction(3, 2))
    for check, _ in build_suite(name, ctx):
        assert run_check(name, check, ctx)["status"] == "pass"
