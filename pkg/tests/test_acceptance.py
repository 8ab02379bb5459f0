"""The fourteen acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the pytest terminal summary.  Run this file
directly with ``python tests/test_acceptance.py`` for the bare listing.
"""

from fractions import Fraction

import pytest

from qhopf.report import verify
from qhopf.suites import Context, expand
from qhopf.tensors import tensors

RESULTS: dict = {}


def _checks(rep, wanted=None):
    out = {}
    for s in rep["suites"]:
        for c in s["checks"]:
            if wanted is None or c["name"] in wanted.get(s["suite"], ()):
                out[f"{s['suite']}/{c['name']}"] = c["status"]
    for suite, names in (wanted or {}).items():
        for name in names:
            out.setdefault(f"{suite}/{name}", "missing")
    return out


def _verdict(num, title, checks: dict, extra: dict | None = None):
    items = dict(checks)
    items.update({k: ("pass" if v else "fail") for k, v in (extra or {}).items()})
    bad = [k for k, v in items.items() if v != "pass"]
    ok = bool(items) and not bad
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title}" + (f"  failing: {', '.join(bad)}" if bad else "")
    RESULTS[num] = line
    print(line)
    return ok


def _run(suites, ctx=None, wanted=None, **kw):
    rep = verify(suites, ctx or Context(), **kw)
    return rep, _checks(rep, wanted)


def criterion_1():
    _, c = _run(["tensors"], wanted={"tensors": ["braid4", "spectral", "rhat2"]})
    return _verdict(1, "braid equation for R4 and spectral decomposition", c)


def criterion_2():
    _, c = _run(["tensors"], wanted={"tensors": ["ranks", "orthogonality", "metric"]})
    return _verdict(2, "projector ranks (9,3,3,6,1), orthogonality, completeness, metric trace", c)


def criterion_3():
    _, c = _run(["tensors"], wanted={"tensors": ["hodge_k", "eps4"]})
    t = tensors()
    return _verdict(3, "unique k in Q(q) for the Hodge identity, k(1) = 0", c,
                    {"k = q - 1/q": t.resolve_k() == t.F.q - t.F.qinv})


def criterion_4():
    ctx = Context(n=2, max_overlap=3, strategy_cases=1000)
    _, c = _run(["ncalg.core", "ncalg.localized", "ncalg.braided"], ctx,
                wanted={"ncalg.core": ["overlaps", "strategies"],
                        "ncalg.localized": ["overlaps", "strategies", "coefficients"],
                        "ncalg.braided": ["overlaps", "strategies"]})
    return _verdict(4, "confluence to length 3 (core, localized, braided(2)); 1000 strategy cases", c)


def criterion_5():
    _, c = _run(["ncalg.core", "ncalg.localized", "sun.T"],
                wanted={"ncalg.core": ["det_central"], "ncalg.localized": ["x_xbar", "examples", "star"],
                        "sun.T": ["standard"]})
    return _verdict(5, "xbar x = x xbar = |x|^2 I, det_q central, T^dag T = I, det_q T = 1", c)


def criterion_6():
    _, c = _run(["forms.d", "forms.theta"], wanted={"forms.d": ["d_via_theta", "d_squared"],
                                                    "forms.theta": ["basics", "x_xi_bar"]})
    return _verdict(6, "d by Leibniz = d by theta commutator (100 cases), theta^2 = 0, x xi-bar identities", c)


def criterion_7():
    _, c = _run(["forms.hodge"])
    return _verdict(7, "Hodge involution, *f = f, *f' = -f', d a = f", c)


def criterion_8():
    c = {}
    for v in ("standard", "hat"):
        _, cv = _run(["sun.txi", "sun.mc", "sun.trace", "sun.v"], Context(variant=v))
        c.update({f"{k}[{v}]": s for k, s in cv.items()})
    return _verdict(8, "T-xi relations, left invariant forms, theta traces, v/v' duality (both variants)", c)


def criterion_9():
    _, c = _run(["gauge.inst", "gauge.anti", "gauge.singular"])
    return _verdict(9, "instanton F closed form, self-dual; anti-instanton antiself-dual; rho^2 = 0 flat; singular gauge", c)


def criterion_10():
    _, c = _run(["gauge.phi", "gauge.multiphi"], Context(n=2))
    return _verdict(10, "Box phi = 0 for one instanton and term by term for n = 2", c)


def criterion_11():
    _, c = _run(["gauge.proj"])
    return _verdict(11, "projector module: u^dag u = I, P^2 = P, P^dag = P", c)


def criterion_12():
    _, c = _run(["gauge.moduli", "ncalg.braided"], Context(n=2),
                wanted={"gauge.moduli": ["n=2"], "ncalg.braided": ["rho_relations"]})
    return _verdict(12, "braided shift z = x - y: P_A z z = 0 and x-like relations in braided(2)", c)


def criterion_13():
    _, c = _run(["sun.sphere"])
    return _verdict(13, "sphere relation alpha' alpha'* + beta' beta'* + z^2 = 1", c)


def criterion_14():
    rep, c = _run(["regression.q1"])
    extra = {}
    for v in ("standard", "hat"):
        r = verify(expand(["all"]), Context(variant=v), qnumeric=Fraction(7, 5))
        extra[f"q=7/5 verdicts agree [{v}]"] = r["numeric_agrees"]
        extra[f"all suites pass [{v}]"] = r["ok"]
    return _verdict(14, "q = 1 regression; numeric q = 7/5 agrees with exact verdicts on every suite", c, extra)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13, criterion_14]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 15)])
def test_criterion(crit):
    assert crit()


if __name__ == "__main__":
    results = [crit() for crit in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
