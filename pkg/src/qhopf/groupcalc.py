"""SU_q(2) side of the calculus: T = x/|x|, Maurer-Cartan matrices, the
trace identity for theta, the v 2-forms and the map onto the 4-sphere."""

from __future__ import annotations

from .forms import MatForm, d, hodge2, theta, xmat, ximat
from .ncalg import Algebra, NCElem

__all__ = [
    "tmat",
    "omega",
    "check_T_relations",
    "check_Txi",
    "check_maurer_cartan",
    "check_theta_trace",
    "build_v",
    "check_v_duality",
    "sphere_map",
]


def _hat(alg: Algebra) -> bool:
    return alg.variant == "hat"


def _zero_report(name: str, residuals: dict) -> dict:
    ok = all(v == "0" or v == [["0", "0"], ["0", "0"]] for v in residuals.values())
    return {"check": name, "residuals": residuals, "ok": ok}


def tmat(alg: Algebra) -> MatForm:
    """T = x |x|^-1."""
    wi = alg.scalar(alg.F.w.inv())
    return xmat(alg).rmul(wi)


def omega(alg: Algebra) -> MatForm:
    """omega = xi xbar |x|^-2 (xi the hat generators in the hat calculus)."""
    return (ximat(alg) @ xmat(alg).bar()).rmul(alg.Uinv())


def det_q(M: MatForm) -> NCElem:
    q = M.alg.F.q
    return M[0, 0] * M[1, 1] - (M[0, 1] * M[1, 0]).scale(q)


def check_T_relations(alg: Algebra) -> dict:
    T = tmat(alg)
    I = MatForm.identity(alg)
    Td = T.dagger()
    res = {
        "Tdag T - I": (Td @ T - I).to_json(),
        "T Tdag - I": (T @ Td - I).to_json(),
        "Tbar - Tdag": (T.bar() - Td).to_json(),
        "det_q(T) - 1": str(det_q(T) - 1),
    }
    return _zero_report("sun.T", res)


def check_Txi(alg: Algebra) -> dict:
    """T^{aa'} w^{bb'} = c R^{ab}_{ld} R^{md}_{gb'} w^{lm} T^{ga'}, with
    c = q^-1, R = Rhat (standard) or c = q, R = Rhat^-1 (hat)."""
    F, Tn = alg.F, alg.T
    R = Tn.rhat2_inv if _hat(alg) else Tn.rhat2
    c = F.q if _hat(alg) else F.qinv
    T, w = tmat(alg), omega(alg)
    res = {}
    for a in range(2):
        for a1 in range(2):
            for b in range(2):
                for b1 in range(2):
                    lhs = T[a, a1] * w[b, b1]
                    rhs = alg.zero
                    for l in range(2):
                        for dd in range(2):
                            r1 = R[2 * a + b, 2 * l + dd]
                            if r1.is_zero():
                                continue
                            for m in range(2):
                                for g in range(2):
                                    r2 = R[2 * m + dd, 2 * g + b1]
                                    if r2.is_zero():
                                        continue
                                    rhs = rhs + (w[l, m] * T[g, a1]).scale(c * r1 * r2)
                    res[f"{a + 1}{a1 + 1},{b + 1}{b1 + 1}"] = str(lhs - rhs)
    return _zero_report("sun.txi", res)


def dT(alg: Algebra) -> MatForm:
    return d(tmat(alg))


def check_maurer_cartan(alg: Algebra) -> dict:
    """(dT) Tbar = q^-1 omega + (q^-1 - 1) theta I  (hat: q omega + (q - 1) theta I)."""
    F = alg.F
    c = F.q if _hat(alg) else F.qinv
    lhs = dT(alg) @ tmat(alg).bar()
    rhs = omega(alg).map(lambda e: e.scale(c)) + MatForm.identity(alg, theta(alg).scale(c - 1))
    res = {"(dT)Tbar - rhs": (lhs - rhs).to_json()}
    # the explicit entrywise formula for dT
    T = tmat(alg)
    wi = alg.scalar(F.w.inv())
    xi = ximat(alg)
    dT_formula = xi.rmul(wi).map(lambda e: e.scale(c)) + T.lmul(theta(alg).scale(c - 1))
    res["dT - formula"] = (dT(alg) - dT_formula).to_json()
    return _zero_report("sun.mc", res)


def _trace(M: MatForm) -> NCElem:
    return M[0, 0] + M[1, 1]


def theta_trace_coefficient(alg: Algebra):
    q = alg.F.q
    return (q - 1) * (q - q ** -2)


def check_theta_trace(alg: Algebra) -> dict:
    """tr[Q (dT) Tbar] = tr[Q^-1 (dTbar) T] = (q-1)(q-q^-2) theta."""
    Tn = alg.T
    Q = MatForm.scalar_matrix(alg, Tn.Q)
    from .tensors import inverse

    Qi = MatForm.scalar_matrix(alg, inverse(alg.F, Tn.Q.m))
    T = tmat(alg)
    Tb = T.bar()
    th = theta(alg)
    k = theta_trace_coefficient(alg)
    t1 = _trace(Q @ d(T) @ Tb)
    t2 = _trace(Qi @ d(Tb) @ T)
    res = {
        "tr[Q dT Tbar] - k theta": str(t1 - th.scale(k)),
        "tr[Q^-1 dTbar T] - k theta": str(t2 - th.scale(k)),
    }
    # theta recovered from the Maurer-Cartan entries alone
    res["theta - tr[Q dT Tbar]/k"] = str(th - t1.scale(k.inv()))
    return _zero_report("sun.trace", res)


def build_v(alg: Algebra):
    """v = xi xibar q^-1 |x|^-2 and v' = xibar xi q^-1 |x|^-2."""
    xi = ximat(alg)
    qi = alg.F.qinv
    s = alg.Uinv().scale(qi)
    return (xi @ xi.bar()).rmul(s), (xi.bar() @ xi).rmul(s)


def check_v_duality(alg: Algebra) -> dict:
    """The theta- and dT-forms of v, v' and their Hodge eigenvalues.

    In the hat calculus the displayed forms are taken with q -> q^-1."""
    F = alg.F
    q = F.qinv if _hat(alg) else F.q
    v, vp = build_v(alg)
    if _hat(alg):
        v = v.map(lambda e: e.scale(F.q * F.q))
        vp = vp.map(lambda e: e.scale(F.q * F.q))
    T = tmat(alg)
    Tb = T.bar()
    th = theta(alg)

    def tm(M):  # M theta (entrywise right product)
        return M.rmul(th)

    def sc(M, c):
        return M.map(lambda e: e.scale(c))

    q2 = q * q
    v_theta = sc(tm(tm(T) @ Tb), q2) + (tm(T.lmul(th)) @ Tb)
    vp_theta = sc(tm(tm(Tb) @ T), q2) + (tm(Tb.lmul(th)) @ T)
    dTm, dTb = d(T), d(Tb)
    v_d = sc(dTm @ dTb, q2) + sc(tm(dTm) @ Tb, q2 - 1)
    vp_d = sc(dTb @ dTm, q2) + sc(tm(dTb) @ T, q2 - 1)
    res = {
        "v - theta form": (v - v_theta).to_json(),
        "v - dT form": (v - v_d).to_json(),
        "v' - theta form": (vp - vp_theta).to_json(),
        "v' - dT form": (vp - vp_d).to_json(),
        "*v - v": v.map(hodge2).__sub__(v).to_json(),
        "*v' + v'": (vp.map(hodge2) + vp).to_json(),
    }
    return _zero_report("sun.v", res)


def sphere_map(alg: Algebra) -> dict:
    """alpha' = sqrt2 alpha* 2/(1+2U), beta' = sqrt2 gamma* 2/(1+2U),
    z = (1-2U)/(1+2U), phases 1; alpha = x11, gamma = x21.

    The sqrt2 factors only enter through products alpha' alpha'*, where
    they pair to 2, so the elements are built without them."""
    F = alg.F
    u = F.u
    den = (1 + 2 * u).inv()
    h = alg.scalar(2 * den)
    alpha, gamma = alg.x(1, 1), alg.x(2, 1)
    a1 = alg.star(alpha) * h  # alpha' / sqrt2
    a1s = alpha * h  # alpha'* / sqrt2
    b1 = alg.star(gamma) * h
    b1s = gamma * h
    zc = (1 - 2 * u) * den
    z = alg.scalar(zc)
    total = (a1 * a1s).scale(2) + (b1 * b1s).scale(2) + z * z
    res = {
        "alpha' alpha'* + beta' beta'* + z^2 - 1": str(total - 1),
        "star(alpha'/sqrt2) - alpha'*/sqrt2": str(alg.star(a1) - a1s),
    }
    # boundary values of z(U): U = 0, and U -> infinity through U = 1/t,
    # z(1/t) = (t - 2)/(t + 2) at t = 0 (t stored in the U slot)
    z0 = zc.evaluate(3, 0, 0)
    zinf = ((u - 2) / (u + 2)).evaluate(3, 0, 0)
    out = _zero_report("sun.sphere", res)
    out["z(0)"] = str(z0)
    out["z(inf)"] = str(zinf)
    out["ok"] = out["ok"] and z0 == 1 and zinf == -1
    return out
