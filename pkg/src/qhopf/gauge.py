"""Gauge potentials, field strengths and the (anti)instanton family.

Potentials and field strengths are 2x2 :class:`MatForm` values over a
localized algebra; rho^2 is the radial coefficient p = r^2.  The braided
multi-instanton checks live on the braided configuration, which has no
radial inverses: harmonicity there is transported from the one-copy
computation, and U_2 unitarity is reduced to per-factor identities.
"""

from __future__ import annotations

from .forms import MatForm, decompose2, d, hodge2, theta, xmat, ximat
from .groupcalc import tmat
from .ncalg import Algebra, NCElem, algebra
from .ncalg.algebra import NCError
from .tensors import inverse

__all__ = [
    "NotInvertible",
    "UnsupportedN",
    "field_strength",
    "gauge_transform",
    "instanton_A",
    "instanton_F_closed",
    "antiinstanton_A",
    "antiinstanton_F_closed",
    "singular_gauge",
    "check_singular_identities",
    "dhat",
    "phi",
    "check_phi",
    "projector",
    "projector_module",
    "moduli_algebra",
    "check_braided_shift",
    "multi_phi",
    "check_multi_harmonic",
    "u2_transform",
    "check_u2_unitary",
]


class NotInvertible(NCError):
    pass


class UnsupportedN(NCError):
    pass


def _zero(v) -> bool:
    if isinstance(v, MatForm):
        return v.is_zero()
    if isinstance(v, NCElem):
        return v.is_zero()
    if isinstance(v, Mat):
        return v.is_zero()
    return all(_zero(x) for x in v)


def _dump(v):
    if isinstance(v, (MatForm, Mat)):
        return v.to_json()
    return str(v)


def _report(name: str, items: dict, **extra) -> dict:
    res = {k: _dump(v) for k, v in items.items()}
    ok = all(_zero(v) for v in items.values())
    out = {"check": name, "residuals": res, "ok": ok}
    out.update(extra)
    return out


def _rho2(alg: Algebra, rho2=None):
    return alg.F.p if rho2 is None else (rho2 if hasattr(rho2, "radial") else alg.F(rho2))


# ----------------------------------------------------------------------
def field_strength(A: MatForm) -> MatForm:
    """F = dA + AA."""
    return d(A) + A @ A


def gauge_transform(A: MatForm, V: MatForm, Vinv: MatForm | None = None) -> MatForm:
    """A^V = V^-1 (A V + dV); V^-1 defaults to Vbar |det|^-1 for T-like V."""
    if Vinv is None:
        Vinv = V.bar()
        if not (Vinv @ V - MatForm.identity(V.alg)).is_zero():
            raise NotInvertible("Vbar is not an inverse of V")
    return Vinv @ (A @ V + d(V))


def instanton_A(alg: Algebra, rho2=None) -> MatForm:
    """A = -(dT) Tbar (1 + rho^2 |x|^-2)^-1."""
    F = alg.F
    p = _rho2(alg, rho2)
    c = F.u / (F.u + p)
    T = tmat(alg)
    return -(d(T) @ T.bar()).rmul(alg.scalar(c))


def instanton_F_closed(alg: Algebra, rho2=None) -> MatForm:
    """F = q^-1 xi xibar (|x|^2 + rho^2)^-1 rho^2 (q^2 |x|^2 + rho^2)^-1."""
    F = alg.F
    p = _rho2(alg, rho2)
    xi = ximat(alg)
    c = F.qinv * p / ((F.u + p) * (F.q * F.q * F.u + p))
    return (xi @ xi.bar()).rmul(alg.scalar(c))


def antiinstanton_A(alg: Algebra, rho2=None) -> MatForm:
    """A' = -(dTbar) T (1 + rho^2 |x|^-2)^-1."""
    F = alg.F
    p = _rho2(alg, rho2)
    T = tmat(alg)
    return -(d(T.bar()) @ T).rmul(alg.scalar(F.u / (F.u + p)))


def antiinstanton_F_closed(alg: Algebra, rho2=None) -> MatForm:
    F = alg.F
    p = _rho2(alg, rho2)
    xi = ximat(alg)
    c = F.qinv * p / ((F.u + p) * (F.q * F.q * F.u + p))
    return (xi.bar() @ xi).rmul(alg.scalar(c))


def check_instanton(alg: Algebra, rho2=None) -> dict:
    A = instanton_A(alg, rho2)
    Fs = field_strength(A)
    Fc = instanton_F_closed(alg, rho2)
    items = {
        "F(A) - closed form": Fs - Fc,
        "*F - F": Fs.map(hodge2) - Fs,
        "antiself-dual part of F": Fs.map(lambda e: decompose2(e)[1]),
        "Bianchi dF + AF - FA": d(Fs) + A @ Fs - Fs @ A,
    }
    T = tmat(alg)
    AV = gauge_transform(A, T, T.bar())
    FV = T.bar() @ Fs @ T
    items["F(A^T) - Tbar F T"] = field_strength(AV) - FV
    items["antiself-dual part of Tbar F T"] = FV.map(lambda e: decompose2(e)[1])
    items["F at rho^2 = 0"] = field_strength(instanton_A(alg, 0))
    return _report("gauge.inst", items)


def check_antiinstanton(alg: Algebra, rho2=None) -> dict:
    A = antiinstanton_A(alg, rho2)
    Fs = field_strength(A)
    Fc = antiinstanton_F_closed(alg, rho2)
    items = {
        "F(A') - closed form": Fs - Fc,
        "*F' + F'": Fs.map(hodge2) + Fs,
        "self-dual part of F'": Fs.map(lambda e: decompose2(e)[0]),
    }
    return _report("gauge.anti", items)


def check_field_strength(alg: Algebra) -> dict:
    z = MatForm(alg, [[0, 0], [0, 0]])
    T = tmat(alg)
    pure = T.bar() @ d(T)
    items = {
        "F(0)": field_strength(z),
        "F(Tbar dT)": field_strength(pure),
        "A^I - A": gauge_transform(instanton_A(alg), MatForm.identity(alg), MatForm.identity(alg)) - instanton_A(alg),
    }
    return _report("gauge.fs", items)


# ----------------------------------------------------------------------
# singular gauge
def singular_gauge(alg: Algebra, rho2=None) -> MatForm:
    """Ahat = Tbar dT (1 + |x|^2 rho^-2)^-1."""
    F = alg.F
    p = _rho2(alg, rho2)
    T = tmat(alg)
    return (T.bar() @ d(T)).rmul(alg.scalar(p / (p + F.u)))


def _eps_contraction(alg: Algebra) -> NCElem:
    """xi^{aa'} x^{bb'} |x|^-2 eps_ab eps_a'b'."""
    e = alg.T.eps
    out = alg.zero
    for A in range(4):
        a, a1 = divmod(A, 2)
        for B in range(4):
            b, b1 = divmod(B, 2)
            c = e[a, b] * e[a1, b1]
            if not c.is_zero():
                out = out + (alg.xi(a + 1, a1 + 1) * alg.x(b + 1, b1 + 1)).scale(c)
    return out * alg.Uinv()


def check_singular_identities(alg: Algebra, rho2=None) -> dict:
    F = alg.F
    q = F.q
    p = _rho2(alg, rho2)
    T = tmat(alg)
    Ahat = singular_gauge(alg, p)
    left = alg.scalar(q * q * p / (q * q * p + F.u))
    second = -(d(T.bar()) @ T).lmul(left)
    xi = ximat(alg)
    bracket = (xi.bar() @ xmat(alg)).rmul(alg.Uinv()).map(lambda e: e.scale(F.qinv)) - MatForm.identity(
        alg, _eps_contraction(alg).scale(q ** -3 / (1 + q))
    )
    third = -bracket.lmul(left)
    recon = T @ (Ahat @ T.bar() + d(T.bar()))
    items = {
        "Ahat - second form": Ahat - second,
        "Ahat - explicit xibar x form": Ahat - third,
        "T(Ahat Tbar + dTbar) - A": recon - instanton_A(alg, p),
    }
    return _report("gauge.singular", items)


def dhat(alg: Algebra) -> MatForm:
    """q xibar pd^up - q^-1/(q+1) I xi^A pd_A, pd^up = (eps x eps)^-1 pd."""
    F, Tn = alg.F, alg.T
    q = F.q
    e = Tn.eps
    import numpy as np

    E = np.empty((4, 4), dtype=object)
    for A in range(4):
        a, a1 = divmod(A, 2)
        for B in range(4):
            b, b1 = divmod(B, 2)
            E[A, B] = e[a, b] * e[a1, b1]
    Ei = inverse(F, E)
    pd_low = [alg.pd(A // 2 + 1, A % 2 + 1) for A in range(4)]
    pd_up = []
    for B in range(4):
        acc = alg.zero
        for A in range(4):
            if not Ei[B, A].is_zero():
                acc = acc + pd_low[A].scale(Ei[B, A])
        pd_up.append(acc)
    P = MatForm(alg, [[pd_up[0], pd_up[1]], [pd_up[2], pd_up[3]]])
    dop = alg.zero
    for A in range(4):
        dop = dop + alg.xi(A // 2 + 1, A % 2 + 1) * pd_low[A]
    first = (ximat(alg).bar() @ P).map(lambda v: v.scale(q))
    return first - MatForm.identity(alg, dop.scale(F.qinv / (q + 1)))


def phi(alg: Algebra, rho2=None) -> NCElem:
    """phi = 1 + q^2 rho^2 |x|^-2."""
    F = alg.F
    p = _rho2(alg, rho2)
    return alg.scalar(1 + F.q * F.q * p * F.u.inv())


def check_phi(alg: Algebra, rho2=None) -> dict:
    F = alg.F
    p = _rho2(alg, rho2)
    ph = phi(alg, p)
    D = dhat(alg)
    acted = D.map(lambda op: alg.act(op, ph))
    phinv = alg.scalar((1 + F.q * F.q * p * F.u.inv()).inv())
    dop = alg.zero
    for A in range(4):
        dop = dop + alg.xi(A // 2 + 1, A % 2 + 1) * alg.pd(A // 2 + 1, A % 2 + 1)
    items = {
        "act(Box, phi)": alg.act(alg.box(), ph),
        "phi^-1 act(Dhat, phi) - Ahat": acted.lmul(phinv) - singular_gauge(alg, p),
        "act(xi^A pd_A, U) - dU": alg.act(dop, alg.U()) - d(alg.U()),
        "act(Dhat, 1) at rho^2 = 0": D.map(lambda op: alg.act(op, alg.one)),
    }
    return _report("gauge.phi", items)


# ----------------------------------------------------------------------
# projector module
class Mat:
    """Small rectangular matrix of algebra elements."""

    def __init__(self, alg: Algebra, rows):
        self.alg = alg
        self.rows = [[v if isinstance(v, NCElem) else alg.scalar(v) for v in r] for r in rows]

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __matmul__(self, o: "Mat") -> "Mat":
        n, k = self.shape
        k2, m = o.shape
        assert k == k2
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.alg.zero
                for t in range(k):
                    acc = acc + self.rows[i][t] * o.rows[t][j]
                row.append(acc)
            out.append(row)
        return Mat(self.alg, out)

    def __sub__(self, o: "Mat") -> "Mat":
        return Mat(self.alg, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, o.rows)])

    def dagger(self) -> "Mat":
        n, m = self.shape
        return Mat(self.alg, [[self.alg.star(self.rows[i][j]) for i in range(n)] for j in range(m)])

    @classmethod
    def identity(cls, alg: Algebra, n: int) -> "Mat":
        return cls(alg, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def is_zero(self) -> bool:
        return all(v.is_zero() for r in self.rows for v in r)

    def to_json(self):
        return [[str(v) for v in r] for r in self.rows]


def projector(alg: Algebra):
    """u = (I ; rho x |x|^-2) (1 + rho^2 |x|^-2)^-1/2 and P = u u^dagger."""
    from .coeff import RadialFn

    F = alg.F
    s = RadialFn.s(F, 0)  # s^2 = U / (U + rho^2)
    S = alg.scalar(s)
    rx = alg.scalar(F.r * F.u.inv())
    x = xmat(alg)
    rows = [[S, alg.zero], [alg.zero, S]]
    for i in range(2):
        rows.append([x[i, j] * rx * S for j in range(2)])
    u = Mat(alg, rows)
    return u, u @ u.dagger()


def projector_module(alg: Algebra) -> dict:
    """u^dagger u = I, P^2 = P, P^dagger = P, and the rho^2 = 1/2 blocks."""
    u, P = projector(alg)
    ud = u.dagger()
    items = {
        "u^dagger u - I": ud @ u - Mat.identity(alg, 2),
        "P^2 - P": P @ P - P,
        "P^dagger - P": P.dagger() - P,
    }
    out = _report("gauge.proj", items)
    out["half_size_check"] = _projector_half_size(alg, P)
    out["ok"] = out["ok"] and out["half_size_check"]["ok"]
    return out


def _projector_half_size(alg: Algebra, P: Mat) -> dict:
    """At rho^2 = 1/2 the blocks of P match (1-z)/2, (1+z)/2 and the
    sphere generators: checked by evaluating coefficients (divided by rho
    in the off-diagonal blocks) at sample points with p = 1/2."""
    from fractions import Fraction

    F = alg.F
    u = F.u
    zc = (1 - 2 * u) / (1 + 2 * u)
    h = 2 / (1 + 2 * u)  # alpha' / (sqrt2 alpha*) etc.
    alpha, gamma = alg.x(1, 1), alg.x(2, 1)
    astar, gstar = alg.star(alpha), alg.star(gamma)
    q = F.q
    # bottom-left block of P divided by rho at rho = 1/sqrt2:
    # rho x / (U + rho^2) / rho ... compared with sqrt2 * (1/2) [[alpha'*, -q beta'], [beta'*, alpha']] / rho
    expected_bl = [[alpha * alg.scalar(h), -(gstar * alg.scalar(h)).scale(q)], [gamma * alg.scalar(h), astar * alg.scalar(h)]]
    expected_diag = [(1 - zc) / 2, (1 + zc) / 2]
    rinv = F.r.inv()
    bad = []
    samples = [(Fraction(3), Fraction(u0)) for u0 in (1, 2, Fraction(1, 3))] if F.symbolic else [
        (None, Fraction(u0)) for u0 in (1, 2, Fraction(1, 3))
    ]
    pv = Fraction(1, 2)

    def val(c, qv, uv):
        if hasattr(c, "rat") and not c.odd():
            c = c.rat()
        return c.evaluate(qv, uv, pv)

    for qv, uv in samples:
        for blk in range(2):
            for i in range(2):
                for j in range(2):
                    e = P.rows[2 * blk + i][2 * blk + j]
                    want = expected_diag[blk] if i == j else F.zero
                    got = e.scalar_part() if e.is_scalar() else None
                    if got is None or val(got, qv, uv) != val(want, qv, uv):
                        bad.append(f"diag block {blk} entry {i}{j}")
        for i in range(2):
            for j in range(2):
                e = P.rows[2 + i][j] * alg.scalar(rinv)
                w = expected_bl[i][j]
                for word in set(e.terms) | set(w.terms):
                    a = val(e.terms.get(word, F.zero), qv, uv)
                    b = val(w.terms.get(word, F.zero), qv, uv)
                    if a != b:
                        bad.append(f"off-diagonal entry {i}{j}")
    return {"mismatches": sorted(set(bad)), "ok": not bad}


# ----------------------------------------------------------------------
# braided copies
def zmat(alg: Algebra, mu: int) -> MatForm:
    """z_mu = x - y_1 - ... - y_mu."""
    z = xmat(alg)
    for nu in range(1, mu + 1):
        z = z - xmat(alg, nu)
    return z


def _zvec(z: MatForm):
    return [z[A // 2, A % 2] for A in range(4)]


def moduli_algebra(n: int, F=None) -> Algebra:
    """x plus n braided copies y_mu, rho_mu."""
    return algebra(level="braided", n=n, F=F) if n else algebra(level="core", F=F)


def check_braided_shift(n: int = 2, F=None) -> dict:
    alg = moduli_algebra(n, F)
    Tn = alg.T
    PP = Tn.pair_projectors()
    PA = PP["PA"]
    Mdx = Tn.pair_tensor(Tn.rhat2, Tn.rhat2)
    Mxxi = Mdx
    items = {}
    for mu in range(0, n + 1):
        z = _zvec(zmat(alg, mu))
        rel = []
        for A in range(4):
            for B in range(4):
                acc = alg.zero
                for C in range(4):
                    for D in range(4):
                        v = PA[4 * A + B, 4 * C + D]
                        if not v.is_zero():
                            acc = acc + (z[C] * z[D]).scale(v)
                rel.append(acc)
        items[f"P_A z{mu} z{mu}"] = rel
        dz, xz = [], []
        for A in range(4):
            pdA = alg.pd(A // 2 + 1, A % 2 + 1)
            for B in range(4):
                lhs = pdA * z[B]
                rhs = alg.one if A == B else alg.zero
                for C in range(4):
                    for D in range(4):
                        v = Mdx[4 * B + D, 4 * A + C]
                        if not v.is_zero():
                            rhs = rhs + (z[C] * alg.pd(D // 2 + 1, D % 2 + 1)).scale(v)
                dz.append(lhs - rhs)
                lhs = z[A] * alg.xi(B // 2 + 1, B % 2 + 1)
                rhs = alg.zero
                for C in range(4):
                    for D in range(4):
                        v = Mxxi[4 * A + B, 4 * C + D]
                        if not v.is_zero():
                            rhs = rhs + (alg.xi(C // 2 + 1, C % 2 + 1) * z[D]).scale(v)
                xz.append(lhs - rhs)
        items[f"pd z{mu} relation"] = dz
        items[f"z{mu} xi relation"] = xz
    out = _report("gauge.moduli", {k: v for k, v in items.items()})
    out["residuals"] = {k: [str(e) for e in v] for k, v in items.items()}
    return out


def multi_phi(n: int) -> dict:
    """phi_n = 1 + q^2 sum_mu rho_mu^2 |z_mu|^-2, kept as a formal sum
    (the braided configuration has no radial inverses)."""
    terms = [{"rho2": f"rho[{mu}]", "z": "x" + "".join(f" - y[{nu}]" for nu in range(1, mu + 1))} for mu in range(1, n + 1)]
    return {"constant": "1", "coefficient": "q^2", "terms": terms}


def check_multi_harmonic(n: int = 2, F=None) -> dict:
    """Box phi_n = 0 term by term: each <z_mu, pd> obeys the x, pd
    relations (checked), rho_mu commutes with pd (checked), and
    Box |x|^-2 = 0 in the one-copy localized algebra (checked)."""
    if n > 2:
        raise UnsupportedN("harmonicity is checked for n <= 2")
    shift = check_braided_shift(n, F)
    alg = algebra(level="braided", n=n, F=F) if n else None
    items = {}
    if alg is not None:
        comm = []
        for mu in range(1, n + 1):
            for A in range(4):
                pdA = alg.pd(A // 2 + 1, A % 2 + 1)
                r = alg.rho(mu)
                comm.append(pdA * r - r * pdA)
                comm.append(pdA * r * r - r * r * pdA)
        items["pd rho_mu - rho_mu pd"] = comm
    loc = algebra(F=F)
    items["act(Box, |x|^-2)"] = loc.act(loc.box(), loc.Uinv())
    items["act(Box, phi) single copy"] = loc.act(loc.box(), phi(loc))
    out = _report("gauge.multiphi", items)
    out["residuals"] = {k: ([str(e) for e in v] if isinstance(v, list) else str(v)) for k, v in items.items()}
    out["transport"] = {"ok": shift["ok"]}
    out["phi"] = multi_phi(n)
    out["ok"] = out["ok"] and shift["ok"]
    return out


def _det_q(M: MatForm) -> NCElem:
    q = M.alg.F.q
    return M[0, 0] * M[1, 1] - (M[0, 1] * M[1, 0]).scale(q)


def star_defects(alg: Algebra) -> list:
    """Generator pairs (a, b) with star(a b) != star(b) star(a)."""
    gens = []
    for mu in range(0, alg.n + 1):
        gens += [alg.y(mu, A // 2 + 1, A % 2 + 1) for A in range(4)]
    gens += [alg.rho(mu) for mu in range(1, alg.n + 1)]
    bad = []
    for a in gens:
        for b in gens:
            if not (alg.star(a * b) - alg.star(b) * alg.star(a)).is_zero():
                bad.append(f"{a} {b}")
    return bad


def u2_transform(F=None) -> dict:
    """U_2 = (z1bar/|z1|)(y2/|y2|)(z2bar/|z2|) as (numerator, |.|^2) factors;
    the braided configuration has no radial inverses, so the norms stay
    unevaluated q-determinants."""
    alg = moduli_algebra(2, F)
    z1, z2 = zmat(alg, 1), zmat(alg, 2)
    y2 = xmat(alg, 2)
    return {"z1": (z1.bar(), _det_q(z1)), "y2": (y2, _det_q(y2)), "z2": (z2.bar(), _det_q(z2))}


def check_u2_unitary(F=None) -> dict:
    """U_2 = (z1bar/|z1|)(y2/|y2|)(z2bar/|z2|).

    With U_2^dagger taken factorwise, (V1 V2 V3)^dagger = V3^dagger V2^dagger
    V1^dagger, the product U_2^dagger U_2 collapses from the middle, so
    unitarity reduces to: z zbar = |z|^2 I and zbar^dagger = z per copy, and
    |z|^2 commuting with the entries of its own copy.  All of these are
    checked.  Whether copy-wise star is an anti-automorphism of the whole
    braided algebra is reported separately (flag StarInconsistency)."""
    alg = algebra(level="braided", n=2, F=F)
    z1, z2 = zmat(alg, 1), zmat(alg, 2)
    y2 = xmat(alg, 2)
    factors = {"z1": (z1.bar(), _det_q(z1), z1), "y2": (y2, _det_q(y2), y2), "z2": (z2.bar(), _det_q(z2), z2)}
    items = {}
    for name, (V, D, base) in factors.items():
        I = MatForm.identity(alg, D)
        items[f"{name}: V^dagger V - |.|^2 I"] = V.dagger() @ V - I
        items[f"{name}: V V^dagger - |.|^2 I"] = V @ V.dagger() - I
        items[f"{name}: |.|^2 central in its copy"] = [
            D * base[i, j] - base[i, j] * D for i in range(2) for j in range(2)
        ]
    out = _report("gauge.u2", items)
    out["residuals"] = {k: _dump(v) if not isinstance(v, list) else [str(e) for e in v] for k, v in items.items()}
    bad = star_defects(alg)
    out["star_defects"] = len(bad)
    out["flags"] = ["StarInconsistency"] if bad else []
    N = z1.bar() @ y2 @ z2.bar()
    out["N^dagger N is |z2|^2 |y2|^2 |z1|^2 I (entrywise star)"] = (
        N.dagger() @ N - MatForm.identity(alg, _det_q(z2) * _det_q(y2) * _det_q(z1))
    ).is_zero()
    out["dN"] = d(N).to_json()
    return out
