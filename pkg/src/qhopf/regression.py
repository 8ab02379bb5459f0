"""Classical limit checks.

Symbolic objects are specialized at q = 1 with :meth:`Rat.at_q` and compared
with constructions made directly in an algebra over Q(|x|, rho) with q = 1,
where x, pd, y, rho commute, the xi anticommute and pd_A x^B = delta + x^B pd_A.
"""

from __future__ import annotations

import itertools

import numpy as np

from .coeff import qfield
from .forms import MatForm, build_a, build_f, d, d_det, hodge2, theta, xmat, ximat
from .gauge import (
    antiinstanton_A,
    antiinstanton_F_closed,
    field_strength,
    instanton_A,
    instanton_F_closed,
)
from .groupcalc import check_T_relations, check_Txi, sphere_map
from .ncalg import Algebra, NCElem, algebra
from .tensors import VECTOR_LABELS, tensors

__all__ = [
    "specialize_elem",
    "specialize_mat",
    "classical_algebra",
    "check_rules_q1",
    "check_commutators_q1",
    "check_pushes_q1",
    "check_tensors_q1",
    "classical_instanton_A",
    "classical_instanton_F",
    "check_instanton_q1",
    "check_forms_q1",
    "check_group_q1",
]


def classical_algebra(variant="standard", level="localized", n=0) -> Algebra:
    return algebra(variant, level, n, F=qfield(1))


def specialize_elem(e: NCElem, target: Algebra) -> NCElem:
    F1 = target.F
    return NCElem(target, {w: c.at_q(F1) for w, c in e.terms.items()})


def specialize_mat(M: MatForm, target: Algebra) -> MatForm:
    return MatForm(target, [[specialize_elem(M[i, j], target) for j in range(2)] for i in range(2)])


def _report(name, residuals: dict) -> dict:
    return {"check": name, "residuals": residuals, "ok": all(v == "0" for v in residuals.values())}


# ----------------------------------------------------------------------
# rewrite rules
def check_rules_q1(variant="standard", level="localized", n=0) -> dict:
    """Every rule of the symbolic system, specialized at q = 1, holds in the
    q = 1 algebra, and both systems have the same left sides."""
    sym = algebra(variant, level, n)
    cl = classical_algebra(variant, level, n)
    F1 = cl.F
    failures = []
    for lhs, rhs in sorted(sym.rules.items()):
        raw: dict = {}
        for c, w in rhs:
            raw[w] = raw.get(w, F1.zero) + c.at_q(F1)
        got = cl.nf_terms({w: c for w, c in raw.items() if not c.is_zero()})
        ref = cl.nf_word(lhs)
        if got.keys() != ref.keys() or any(got[w] != ref[w] for w in got):
            failures.append(cl.al.word_str(lhs))
    same_lhs = set(sym.rules) == set(cl.rules)
    return {
        "check": f"rules.{variant}.{level}",
        "rules": len(sym.rules),
        "same_left_sides": same_lhs,
        "failures": failures,
        "ok": same_lhs and not failures,
    }


def _classical_bracket(al, a: int, b: int) -> int:
    """Expected value of a b - (+-) b a in the Weyl / Grassmann algebra."""
    ka, kb = al.kind(a), al.kind(b)
    if ka == "pd" and kb == "x" and al.pair(a) == al.pair(b):
        return 1
    if ka == "x" and kb == "pd" and al.pair(a) == al.pair(b):
        return -1
    return 0


def check_commutators_q1(variant="standard", level="localized", n=0) -> dict:
    """All generator pairs (anti)commute at q = 1 up to the Weyl term."""
    cl = classical_algebra(variant, level, n)
    al = cl.al
    bad = []
    pairs = 0
    for a, b in itertools.product(cl.letters, repeat=2):
        sign = -1 if al.kind(a) == "xi" and al.kind(b) == "xi" else 1
        ab = cl.gen(a) * cl.gen(b)
        ba = cl.gen(b) * cl.gen(a)
        res = ab - ba.scale(cl.F(sign)) - _classical_bracket(al, a, b)
        pairs += 1
        if not res.is_zero():
            bad.append(f"{al.name(a)} {al.name(b)}: {res}")
    return {"check": f"commutators.{variant}.{level}", "pairs": pairs, "failures": bad, "ok": not bad}


def check_pushes_q1(variant="standard") -> dict:
    """Radial coefficients: xi f = f xi, and pd_A f(U) = f pd_A + f'(U) pd_A(det)
    with pd_A(det) the classical gradient of x11 x22 - x12 x21."""
    cl = classical_algebra(variant)
    core = classical_algebra(variant, "core")
    F1 = cl.F
    f = (F1.u + F1.p).inv() * F1.w
    res = {}
    for A in range(4):
        xi = cl.gen(cl.al.xi(A))
        res[f"xi{A} f - f xi{A}"] = str(xi * cl.scalar(f) - cl.scalar(f) * xi)
        grad = core.act(core.gen(core.al.pd(A)), core.det_words())
        grad = NCElem(cl, dict(grad.terms))
        pdA = cl.gen(cl.al.pd(A))
        lhs = pdA * cl.scalar(f)
        rhs = cl.scalar(f) * pdA + cl.scalar(f.du()) * grad
        res[f"pd{A} f - classical"] = str(lhs - rhs)
    return _report(f"pushes.{variant}", res)


# ----------------------------------------------------------------------
# tensors
def _flip16():
    m = np.zeros((16, 16), dtype=int)
    for i in range(4):
        for j in range(4):
            m[4 * i + j, 4 * j + i] = 1
    return m


def check_tensors_q1() -> dict:
    T = tensors()
    F1 = qfield(1)

    def at1(t):
        return np.vectorize(lambda c: int(c.at_q(F1).to_fraction()), otypes=[object])(t.m)

    R2 = at1(T.rhat2)
    R4 = at1(T.rhat4)
    out = {}
    out["rhat2^2 = 1"] = bool((R2.dot(R2) == np.eye(4, dtype=int)).all())
    out["rhat4 = flip"] = bool((R4 == _flip16()).all())
    out["k(1) = 0"] = T.k.at_q(F1).is_zero()
    e = T.build_eps4()
    E = np.vectorize(lambda c: int(c.at_q(F1).to_fraction()), otypes=[object])(e.m)
    nz = [idx for idx in np.ndindex(4, 4, 4, 4) if E[idx] != 0]
    antisym = len(nz) == 24 and all(
        E[idx[:i] + (idx[i + 1], idx[i]) + idx[i + 2 :]] == -E[idx] for idx in nz for i in range(3)
    )
    out["eps4 totally antisymmetric"] = bool(antisym)
    g = at1(T.metric)
    anti = all((g[i, j] != 0) == (i + j == 3) for i in range(4) for j in range(4))
    out["metric antidiagonal"] = bool(anti)
    out["labels"] = list(VECTOR_LABELS) == [-2, -1, 1, 2]
    return {"check": "tensors.q1", "results": out, "ok": all(out.values())}


# ----------------------------------------------------------------------
# instantons
def _dU_over_U(alg: Algebra) -> NCElem:
    return alg.Uinv() * d_det(alg)


def classical_instanton_A(alg: Algebra, anti: bool = False) -> MatForm:
    """-(xi xbar |x|^-2 - I d|x|^2 / (2 |x|^2)) / (1 + rho^2 / |x|^2)
    (bars swapped for the anti-instanton), in a q = 1 algebra."""
    F = alg.F
    xi, x = ximat(alg), xmat(alg)
    m = xi.bar() @ x if anti else xi @ x.bar()
    half = MatForm.identity(alg, _dU_over_U(alg).scale(F(1) / 2))
    g = alg.scalar(F.u / (F.u + F.p))
    return -((m.rmul(alg.Uinv()) - half).rmul(g))


def classical_instanton_F(alg: Algebra, anti: bool = False) -> MatForm:
    """xi xibar rho^2 / (rho^2 + |x|^2)^2 (xibar xi for the anti-instanton)."""
    F = alg.F
    xi = ximat(alg)
    m = xi.bar() @ xi if anti else xi @ xi.bar()
    return m.rmul(alg.scalar(F.p / (F.u + F.p) ** 2))


def check_instanton_q1() -> dict:
    sym = algebra()
    cl = classical_algebra()
    res = {}
    A_cl, Ab_cl = classical_instanton_A(cl), classical_instanton_A(cl, anti=True)
    F_cl, Fb_cl = classical_instanton_F(cl), classical_instanton_F(cl, anti=True)
    res["A(q=1) - classical"] = (specialize_mat(instanton_A(sym), cl) - A_cl).to_json()
    res["A'(q=1) - classical"] = (specialize_mat(antiinstanton_A(sym), cl) - Ab_cl).to_json()
    res["F closed(q=1) - classical"] = (specialize_mat(instanton_F_closed(sym), cl) - F_cl).to_json()
    res["F' closed(q=1) - classical"] = (specialize_mat(antiinstanton_F_closed(sym), cl) - Fb_cl).to_json()
    # the classical potentials solve the classical equations on their own
    res["F(A_cl) - F_cl"] = (field_strength(A_cl) - F_cl).to_json()
    res["F(A'_cl) - F'_cl"] = (field_strength(Ab_cl) - Fb_cl).to_json()
    res["*F_cl - F_cl"] = (F_cl.map(hodge2) - F_cl).to_json()
    res["*F'_cl + F'_cl"] = (Fb_cl.map(hodge2) + Fb_cl).to_json()
    z = [["0", "0"], ["0", "0"]]
    return {"check": "instanton.q1", "residuals": res, "ok": all(v == z for v in res.values())}


# ----------------------------------------------------------------------
# forms
def check_forms_q1() -> dict:
    sym = algebra()
    cl = classical_algebra()
    F1 = cl.F
    z = [["0", "0"], ["0", "0"]]
    res = {}
    # (q^2 - 1) theta has no pole and tends to d|x|^2 / |x|^2
    qt = theta(sym).scale(sym.F.q ** 2 - 1)
    res["(q^2-1) theta at q=1 - d|x|^2/|x|^2"] = str(specialize_elem(qt, cl) - _dU_over_U(cl))
    x, xi = xmat(cl), ximat(cl)
    dU = MatForm.identity(cl, d_det(cl))
    res["x xibar + xi xbar - d|x|^2 I"] = (x @ xi.bar() + xi @ x.bar() - dU).to_json()
    res["xbar xi + xibar x - d|x|^2 I"] = (x.bar() @ xi + xi.bar() @ x - dU).to_json()
    res["a(q=1) - a classical"] = (specialize_mat(build_a(sym), cl) - build_a(cl)).to_json()
    res["f(q=1) - f classical"] = (specialize_mat(build_f(sym), cl) - build_f(cl)).to_json()
    res["d a - f classical"] = (d(build_a(cl)) - build_f(cl)).to_json()
    res["*f - f classical"] = (build_f(cl).map(hodge2) - build_f(cl)).to_json()
    u = cl.U()
    res["d|x|^2 at q=1"] = str(d(u) - d_det(cl))
    res["x x xi at q=1 commute"] = str(cl.x(1, 1) * cl.xi(2, 1) - cl.xi(2, 1) * cl.x(1, 1))
    ok = all(v in ("0", z) for v in res.values())
    return {"check": "forms.q1", "residuals": res, "ok": ok, "field": repr(F1)}


def check_group_q1() -> dict:
    cl = classical_algebra()
    reps = [check_T_relations(cl), check_Txi(cl), sphere_map(cl)]
    return {"check": "group.q1", "parts": reps, "ok": all(r["ok"] for r in reps)}

