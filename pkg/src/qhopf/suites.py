"""Named verification suites.

A suite is a list of ``(check_name, thunk)`` built from a :class:`Context`;
each thunk returns a dict with at least ``ok``.  Suites are rebuilt by name
inside worker processes, so everything here must be importable and cheap to
construct.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import forms, gauge, groupcalc, regression
from .coeff import Field, qfield
from .ncalg import algebra
from .ncalg.confluence import (
    check_coefficient_compatibility,
    check_overlaps,
    check_strategies,
    classical_pbw,
    pbw_counts,
)
from .ncalg.letters import DEFAULT_ORDER
from .sampling import random_coeff, random_form, random_letters_element
from .tensors import braid_residual, check_eps_rhat_identity, identity, matmul, rank, tensors


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class Context:
    qvalue: Fraction | None = None
    variant: str = "standard"
    n: int = 2
    order: tuple = DEFAULT_ORDER
    max_overlap: int = 3
    strategy_cases: int = 1000
    seed: int = 0
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def F(self) -> Field:
        return qfield(self.qvalue)

    def alg(self, variant=None, level="localized", n=0):
        return algebra(variant or self.variant, level, n, self.order, self.F)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        d["qvalue"] = "symbolic" if self.qvalue is None else str(self.qvalue)
        d["order"] = list(self.order)
        return d


def _zero(x) -> bool:
    return all(v.is_zero() for v in x) if isinstance(x, (list, tuple)) else x.is_zero()


def _res(pairs: dict) -> dict:
    """{label: element-or-list} -> report with string residuals."""
    out = {}
    for k, v in pairs.items():
        if isinstance(v, (list, tuple)):
            out[k] = [str(e) for e in v if not e.is_zero()] or "0"
        elif hasattr(v, "to_json"):
            out[k] = "0" if v.is_zero() else v.to_json()
        else:
            out[k] = str(v)
    return {"residuals": out, "ok": all(_zero(v) for v in pairs.values())}


def _flag(values: dict) -> dict:
    return {"results": {k: (v if isinstance(v, (bool, int, str, list)) else str(v)) for k, v in values.items()},
            "ok": all(bool(v) for v in values.values() if isinstance(v, bool))}


# ----------------------------------------------------------------------
# tensors
def _tensor_checks(ctx: Context):
    F = ctx.F

    def T():
        return tensors(F)

    def eps():
        t = T()
        return _flag({"eps12 = 1": t.eps[0, 1] == 1, "eps21 = -q": t.eps[1, 0] == -F.q,
                      "eps11 = eps22 = 0": t.eps[0, 0].is_zero() and t.eps[1, 1].is_zero(),
                      "eps = -q eps^-1": (t.eps - t.eps_inv.scale(-F.q)).is_zero()})

    def rhat2():
        t = T()
        R = t.rhat2
        I = identity(F, 4)
        hecke = matmul(F, R.m, R.m) - R.m * (F.q - F.qinv) - I
        return _flag({"R^T = R": R.T() == R, "Hecke": all(c.is_zero() for c in hecke.flat),
                      "braid (4x4)": braid_residual(F, R, 2).is_zero()})

    def braid4():
        t = T()
        r = braid_residual(F, t.rhat4, 4)
        return {"entries": int(r.m.size), "nonzero": r.nonzero_count(), "ok": r.is_zero()}

    def spectral():
        t = T()
        P = t.projectors()
        R = t.rhat4
        q = F.q
        res = {
            "R Ps - q Ps": R @ P["Ps"] - P["Ps"].scale(q),
            "R PA + q^-1 PA": R @ P["PA"] + P["PA"].scale(F.qinv),
            "R Pt - q^-3 Pt": R @ P["Pt"] - P["Pt"].scale(q ** -3),
            "R - (q Ps - q^-1 PA + q^-3 Pt)": R - (P["Ps"].scale(q) - P["PA"].scale(F.qinv) + P["Pt"].scale(q ** -3)),
        }
        return {"residuals": {k: v.nonzero_count() for k, v in res.items()}, "ok": all(v.is_zero() for v in res.values())}

    def ranks():
        P = T().projectors()
        got = {k: rank(F, P[k].m) for k in ("Ps", "Pa", "Pa'", "PA", "Pt")}
        want = {"Ps": 9, "Pa": 3, "Pa'": 3, "PA": 6, "Pt": 1}
        return {"ranks": got, "ok": got == want}

    def orthogonality():
        P = T().projectors()
        names = ["Ps", "Pa", "Pa'", "Pt"]
        bad = []
        for a in names:
            for b in names:
                prod = P[a] @ P[b]
                want = P[a] if a == b else P[a].scale(F.zero)
                if not (prod - want).is_zero():
                    bad.append(f"{a}{b}")
        total = P["Ps"] + P["Pa"] + P["Pa'"] + P["Pt"]
        complete = (total.m == identity(F, 16)).all()
        return {"failures": bad, "complete": bool(complete), "ok": not bad and bool(complete)}

    def metric():
        t = T()
        q2 = t.q2
        return _flag({"g^sm g_sm = [2]^2": t.trace_norm() == q2 * q2,
                      "Pt from g": (t.pt_from_metric() - t.projectors()["Pt"]).is_zero()})

    def eps4():
        t = T()
        k = t.resolve_k()
        e = t.build_eps4()
        return {"k": str(k), "nonzero": e.nonzero_count(),
                "antisymmetry_defects": t.antisymmetry_defects(k),
                "eps^{-2,-1,1,2}": str(e[0, 1, 2, 3]), "eps^{2,-1,1,-2}": str(e[3, 1, 2, 0]),
                "ok": e.nonzero_count() == 26 and t.antisymmetry_defects(k) == 0
                and e[0, 1, 2, 3] == F.q ** -2 and e[3, 1, 2, 0] == -F.q ** 2}

    def hodge_k():
        t = T()
        k = t.resolve_k()
        res = t.lowered_hodge_matrix(k) - t.hodge_projector_matrix()
        # the classical limit of k is taken in the symbolic field
        k1 = tensors().k.at_q(qfield(1))
        return {"k": str(k), "residual_nonzero": res.nonzero_count(), "k(q=1)": str(k1),
                "ok": res.is_zero() and k1.is_zero()}

    def eps_rhat():
        return check_eps_rhat_identity(F)

    def Q():
        t = T()
        Qm = t.Q
        diag = Qm[0, 1].is_zero() and Qm[1, 0].is_zero() and not Qm[0, 0].is_zero() and not Qm[1, 1].is_zero()
        return {"Q": Qm.to_json(), "ok": diag}

    return [("eps", eps), ("rhat2", rhat2), ("braid4", braid4), ("spectral", spectral), ("ranks", ranks),
            ("orthogonality", orthogonality), ("metric", metric), ("eps4", eps4), ("hodge_k", hodge_k),
            ("eps_rhat", eps_rhat), ("Q", Q)]


# ----------------------------------------------------------------------
# ncalg
def _confluence_checks(ctx: Context, variant, level, n):
    def overlaps():
        r = check_overlaps(ctx.alg(variant, level, n), ctx.max_overlap)
        return {"checked": r["checked"], "failures": r["failures"][:20], "ok": not r["failures"]}

    def strategies():
        alg = ctx.alg(variant, level, n)
        r = check_strategies(alg, ctx.strategy_cases, 4, ctx.seed)
        return {"checked": r["checked"], "failures": r["failures"][:20], "ok": not r["failures"]}

    out = [("overlaps", overlaps), ("strategies", strategies)]
    if level == "localized":
        def coefficients():
            r = check_coefficient_compatibility(ctx.alg(variant, level, n))
            return {"checked": r["checked"], "failures": r["failures"][:20], "ok": not r["failures"]}

        out.append(("coefficients", coefficients))
    return out


def _pbw(ctx, variant, level, n, det_eliminated):
    def run():
        got = pbw_counts(ctx.alg(variant, level, n), 5)
        want = {dd: classical_pbw(dd, det_eliminated) for dd in got}
        return {"counts": got, "expected": want, "ok": got == want}

    return run


def _ncalg_core(ctx: Context):
    def det_central():
        A = ctx.alg(level="core")
        det = A.det_words()
        return _res({f"[det, x{a}{b}]": det * A.x(a, b) - A.x(a, b) * det for a in (1, 2) for b in (1, 2)})

    def examples():
        A = ctx.alg(level="core")
        q = A.F.q
        x = A.x
        gstar = x(1, 2).scale(-A.F.qinv)
        return _res({
            "alpha gamma - q gamma alpha": x(1, 1) * x(2, 1) - (x(2, 1) * x(1, 1)).scale(q),
            "[alpha, alpha*] - (1-q^2) gamma gamma*": x(1, 1) * x(2, 2) - x(2, 2) * x(1, 1)
            - (x(2, 1) * gstar).scale(1 - q * q),
            "xi11 xi11": A.xi(1, 1) * A.xi(1, 1),
        })

    def quadratic_dims():
        A = ctx.alg(level="core")
        xi = 16 - A.report["xixi"]["rank"]
        pd = 16 - A.report["pdpd"]["rank"]
        return {"xi xi basis": xi, "pd pd basis": pd, "ok": xi == 6 and pd == 10}

    return _confluence_checks(ctx, ctx.variant, "core", 0) + [
        ("pbw", _pbw(ctx, ctx.variant, "core", 0, False)),
        ("det_central", det_central),
        ("examples", examples),
        ("quadratic_dims", quadratic_dims),
    ]


def _ncalg_localized(ctx: Context):
    def examples():
        A = ctx.alg()
        q = A.F.q
        x = A.x
        lam = q ** (-2 * A.xi_shift)
        return _res({
            "x11 x22 - q x12 x21 - U": A.det_words() - A.U(),
            "U xi11 - lam xi11 U": A.U() * A.xi(1, 1) - (A.xi(1, 1) * A.U()).scale(lam),
            "Lam x11 - q^-1 x11 Lam": A.lam() * x(1, 1) - (x(1, 1) * A.lam()).scale(A.F.qinv),
            "U Uinv - 1": A.U() * A.Uinv() - 1,
            "|x| |x| - U": A.absx() * A.absx() - A.U(),
        })

    def x_xbar():
        A = ctx.alg()
        x = forms.xmat(A)
        I = forms.MatForm.identity(A, A.U())
        return _res({"x xbar - U I": x @ x.bar() - I, "xbar x - U I": x.bar() @ x - I})

    def star():
        A = ctx.alg()
        rng = random.Random(ctx.seed)
        xs = [A.al.x(k) for k in range(4)]
        bad_inv = bad_anti = 0
        for _ in range(500):
            a = random_letters_element(A, rng, xs, 3)
            b = random_letters_element(A, rng, xs, 3)
            a = a * A.scalar(rng.choice([A.F.one, A.F.u.inv(), (A.F.u + A.F.p).inv()]))
            if A.star(A.star(a)) != a:
                bad_inv += 1
            if A.star(a * b) != A.star(b) * A.star(a):
                bad_anti += 1
        det = A.x(1, 1) * A.x(2, 2) - (A.x(1, 2) * A.x(2, 1)).scale(A.F.q)
        fixed = {"star(x11) - x22": A.star(A.x(1, 1)) - A.x(2, 2), "star(det) - det": A.star(det) - det}
        r = _res(fixed)
        r.update({"involution_failures": bad_inv, "antimultiplicative_failures": bad_anti})
        r["ok"] = r["ok"] and bad_inv == 0 and bad_anti == 0
        return r

    def act():
        A = ctx.alg()
        items = {}
        for a in range(4):
            for b in range(4):
                pa = A.pd(a // 2 + 1, a % 2 + 1)
                xb = A.x(b // 2 + 1, b % 2 + 1)
                items[f"act(pd{a}, x{b}) - delta"] = A.act(pa, xb) - (1 if a == b else 0)
        items["act(pd11, 1)"] = A.act(A.pd(1, 1), A.one)
        items["act(Box, Uinv)"] = A.act(A.box(), A.Uinv())
        items["pd11 (U Uinv) - pd11"] = A.pd(1, 1) * A.U() * A.Uinv() - A.pd(1, 1)
        r = _res(items)
        r["uinv_rule"] = A.check_uinv_rule()
        r["push"] = A.report.get("push")
        r["ok"] = r["ok"] and r["uinv_rule"]
        return r

    v = ctx.variant
    return _confluence_checks(ctx, v, "localized", 0) + [
        ("pbw", _pbw(ctx, v, "localized", 0, True)),
        ("examples", examples),
        ("x_xbar", x_xbar),
        ("star", star),
        ("act", act),
    ]


def _ncalg_braided(ctx: Context):
    n = max(ctx.n, 1)

    def rho_relations():
        # the letter rho[mu] is the generator rho_mu^2
        A = ctx.alg("standard", "braided", n)
        q = A.F.q
        items = {}
        for nu in range(1, n + 1):
            r = A.rho(nu)
            for mu in range(nu + 1, n + 1):
                items[f"rho{nu} rho{mu} - q^2 rho{mu} rho{nu}"] = r * A.rho(mu) - (A.rho(mu) * r).scale(q * q)
            for mu in range(0, n + 1):
                c = q ** -2 if nu < mu else A.F.one
                y = A.y(mu, 1, 2)
                items[f"rho{nu} y{mu}_12 - c y{mu}_12 rho{nu}"] = r * y - (y * r).scale(c)
            items[f"rho{nu} xi11 - xi11 rho{nu}"] = r * A.xi(1, 1) - A.xi(1, 1) * r
            items[f"pd11 rho{nu} - rho{nu} pd11"] = A.pd(1, 1) * r - r * A.pd(1, 1)
        return _res(items)

    return _confluence_checks(ctx, "standard", "braided", n) + [
        ("pbw", _pbw(ctx, "standard", "braided", n, False)),
        ("rho_relations", rho_relations),
    ]


# ----------------------------------------------------------------------
# forms
def _forms_theta(ctx: Context):
    def basics():
        A = ctx.alg()
        F = A.F
        th = forms.theta(A)
        lam = F.q ** (2 * A.xi_shift)
        items = {
            "theta^2": th * th,
            "d theta": forms.d(th),
            "d U - (1 - lam) U theta": forms.d(A.U()) - (A.U() * th).scale(1 - lam),
            "|x| theta - q^-xs theta |x|": A.absx() * th - (th * A.absx()).scale(F.q ** (-A.xi_shift)),
            "d_via_theta(x11) - xi11": forms.d_via_theta(A.x(1, 1)) - A.xi(1, 1),
            "d_via_theta(theta)": forms.d_via_theta(th),
            "d_via_theta(Uinv) - d(Uinv)": forms.d_via_theta(A.Uinv()) - forms.d(A.Uinv()),
            "d(x12) - xi12": forms.d(A.x(1, 2)) - A.xi(1, 2),
            "d d(x11 x21)": forms.d(forms.d(A.x(1, 1) * A.x(2, 1))),
        }
        if A.variant == "standard":
            items["theta - explicit form"] = th - forms.theta_explicit(A)
        return _res(items)

    def xixi_trace():
        A = ctx.alg()
        g = A.T.metric_pair()
        acc = A.zero
        for C in range(4):
            for D in range(4):
                if not g[C, D].is_zero():
                    acc = acc + (A.xi(C // 2 + 1, C % 2 + 1) * A.xi(D // 2 + 1, D % 2 + 1)).scale(g[C, D])
        return _res({"(xi eps xi^T) . eps": acc})

    def x_xi_bar():
        r = forms.check_xblu(ctx.alg())
        neg = forms.check_xblu(ctx.alg(), sign=-1)
        r["negative_control_detected"] = not neg["ok"]
        r["ok"] = r["ok"] and not neg["ok"]
        return r

    return [("basics", basics), ("xixi_trace", xixi_trace), ("x_xi_bar", x_xi_bar)]


def _forms_d(ctx: Context):
    def dd():
        A = ctx.alg()
        rng = random.Random(ctx.seed + 1)
        bad = sum(1 for _ in range(200) if not forms.d(forms.d(random_form(A, rng, rng.randint(0, 2)))).is_zero())
        return {"cases": 200, "failures": bad, "ok": bad == 0}

    def via_theta():
        A = ctx.alg()
        rng = random.Random(ctx.seed + 2)
        bad = 0
        for _ in range(100):
            e = random_form(A, rng, rng.randint(0, 2))
            if forms.d(e) != forms.d_via_theta(e):
                bad += 1
        return {"cases": 100, "failures": bad, "ok": bad == 0}

    def leibniz():
        A = ctx.alg()
        rng = random.Random(ctx.seed + 3)
        bad = 0
        for _ in range(50):
            p = rng.randint(0, 1)
            a, b = random_form(A, rng, p), random_form(A, rng, rng.randint(0, 1))
            lhs = forms.d(a * b)
            rhs = forms.d(a) * b + (a * forms.d(b) if p % 2 == 0 else -(a * forms.d(b)))
            if lhs != rhs:
                bad += 1
        return {"cases": 50, "failures": bad, "ok": bad == 0}

    return [("d_squared", dd), ("d_via_theta", via_theta), ("leibniz", leibniz)]


def _forms_hodge(ctx: Context):
    def involution():
        A = ctx.alg()
        rng = random.Random(ctx.seed + 4)
        bad_inv = bad_bil = bad_dec = 0
        for _ in range(100):
            w = random_form(A, rng, 2)
            f, g = A.scalar(random_coeff(A, rng)), A.scalar(random_coeff(A, rng))
            if forms.hodge2(forms.hodge2(w)) != w:
                bad_inv += 1
            if forms.hodge2(f * w * g) != f * forms.hodge2(w) * g:
                bad_bil += 1
            sd, asd = forms.decompose2(w)
            if sd + asd != w or forms.hodge2(sd) != sd or forms.hodge2(asd) != -asd:
                bad_dec += 1
        return {"cases": 100, "involution_failures": bad_inv, "bilinearity_failures": bad_bil,
                "decomposition_failures": bad_dec, "ok": bad_inv == bad_bil == bad_dec == 0}

    def f_basis():
        A = ctx.alg()
        f, fp = forms.build_f(A), forms.build_fprime(A)
        sd, asd = forms.decompose2(f[0, 0])
        return _res({"*f - f": f.map(forms.hodge2) - f, "*f' + f'": fp.map(forms.hodge2) + fp,
                     "decompose2(f11) antiself-dual part": asd, "decompose2(f11) - f11": sd - f[0, 0],
                     "decompose2(0)": forms.decompose2(A.zero)[0] + forms.decompose2(A.zero)[1]})

    def potentials():
        A = ctx.alg()
        r = _res({"d a - f": forms.d(forms.build_a(A)) - forms.build_f(A),
                  "d a_printed + f": forms.d(forms.build_a(A, printed=True)) + forms.build_f(A)})
        return r

    return [("involution", involution), ("f_basis", f_basis), ("potentials", potentials)]


# ----------------------------------------------------------------------
def _wrap(fn, *args):
    return lambda: fn(*args)


def _sun(fn):
    def build(ctx: Context):
        return [(ctx.variant, lambda: fn(ctx.alg()))]

    return build


def _gauge(fn, *, takes_field=False, **kw):
    def build(ctx: Context):
        if takes_field:
            return [("check", lambda: fn(F=ctx.F, **kw))]
        return [("check", lambda: fn(ctx.alg("standard"), **kw))]

    return build


def _gauge_moduli(ctx: Context):
    return [(f"n={ctx.n}", lambda: gauge.check_braided_shift(ctx.n, ctx.F))]


def _gauge_multiphi(ctx: Context):
    return [(f"n={min(ctx.n, 2)}", lambda: gauge.check_multi_harmonic(min(ctx.n, 2), ctx.F))]


def _gauge_proj(ctx: Context):
    return [("check", lambda: gauge.projector_module(ctx.alg("standard")))]


def _gauge_inst(ctx: Context):
    A = lambda: ctx.alg("standard")  # noqa: E731
    return [
        ("instanton", lambda: gauge.check_instanton(A())),
        ("rho2_zero", lambda: gauge.check_instanton(A(), rho2=0)),
    ]


def _regression(ctx: Context):
    R = regression
    out = []
    for v, lvl, n in (("standard", "core", 0), ("standard", "localized", 0), ("hat", "localized", 0),
                      ("standard", "braided", 2)):
        out.append((f"rules.{v}.{lvl}", _wrap(R.check_rules_q1, v, lvl, n)))
        out.append((f"commutators.{v}.{lvl}", _wrap(R.check_commutators_q1, v, lvl, n)))
    out += [
        ("pushes", R.check_pushes_q1),
        ("tensors", R.check_tensors_q1),
        ("instanton", R.check_instanton_q1),
        ("forms", R.check_forms_q1),
        ("group", R.check_group_q1),
    ]
    return out


SUITES = {
    "tensors": _tensor_checks,
    "ncalg.core": _ncalg_core,
    "ncalg.localized": _ncalg_localized,
    "ncalg.braided": _ncalg_braided,
    "forms.theta": _forms_theta,
    "forms.d": _forms_d,
    "forms.hodge": _forms_hodge,
    "sun.T": _sun(groupcalc.check_T_relations),
    "sun.txi": _sun(groupcalc.check_Txi),
    "sun.mc": _sun(groupcalc.check_maurer_cartan),
    "sun.trace": _sun(groupcalc.check_theta_trace),
    "sun.v": _sun(groupcalc.check_v_duality),
    "sun.sphere": _sun(groupcalc.sphere_map),
    "gauge.fs": _gauge(gauge.check_field_strength),
    "gauge.inst": _gauge_inst,
    "gauge.anti": _gauge(gauge.check_antiinstanton),
    "gauge.singular": _gauge(gauge.check_singular_identities),
    "gauge.phi": _gauge(gauge.check_phi),
    "gauge.proj": _gauge_proj,
    "gauge.moduli": _gauge_moduli,
    "gauge.multiphi": _gauge_multiphi,
    "gauge.u2": _gauge(gauge.check_u2_unitary, takes_field=True),
    "regression.q1": _regression,
}

# suites whose checks do not depend on the variant flag
VARIANT_FREE = {"tensors", "ncalg.braided", "gauge.fs", "gauge.inst", "gauge.anti", "gauge.singular",
                "gauge.phi", "gauge.proj", "gauge.moduli", "gauge.multiphi", "gauge.u2", "regression.q1"}


def suite_names() -> list[str]:
    return list(SUITES)


def build_suite(name: str, ctx: Context):
    try:
        builder = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return builder(ctx)


def expand(names) -> list[str]:
    """Suite names with prefix selection: ``forms`` selects every forms.* suite,
    ``all`` everything.  Duplicates are dropped, first occurrence wins."""
    out: list[str] = []
    for nm in names:
        if nm == "all":
            sel = list(SUITES)
        elif nm in SUITES:
            sel = [nm]
        else:
            sel = [s for s in SUITES if s.startswith(nm + ".")]
            if not sel:
                raise UnknownSuite(nm)
        out += [s for s in sel if s not in out]
    return out
