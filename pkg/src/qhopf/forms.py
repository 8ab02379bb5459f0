"""Exterior derivative, the 1-form theta, the Hodge map on 2-forms and
2x2 matrices of forms.

Forms are :class:`NCElem` values of a localized (or braided) algebra.  A
normal word carries its xi letters first, so a term of degree p is
``c * xi..xi * rest`` and the xi degree is read off the word.
"""

from __future__ import annotations

from .coeff import PoleAtPoint, RadialFn, Rat
from .ncalg import Algebra, NCElem, algebra
from .ncalg.algebra import NCError

__all__ = [
    "WrongDegree",
    "SectorViolation",
    "MatForm",
    "theta",
    "theta_explicit",
    "d_det",
    "d",
    "d_via_theta",
    "hodge2",
    "decompose2",
    "build_f",
    "build_fprime",
    "build_a",
    "build_ahat",
    "check_xblu",
    "xmat",
    "ximat",
]


class WrongDegree(NCError):
    pass


class SectorViolation(NCError):
    pass


def _kinds(alg: Algebra, e: NCElem) -> set:
    return {alg.al.kind(l) for w in e.terms for l in w}


def _theta_cache(alg: Algebra) -> dict:
    c = getattr(alg, "_forms_cache", None)
    if c is None:
        c = alg._forms_cache = {}
    return c


# ----------------------------------------------------------------------
# exterior derivative
def _radial_sigma(alg: Algebra, c):
    """xi f = sigma(f) xi."""
    return c.shift(alg.xi_shift)


def theta(alg: Algebra) -> NCElem:
    """theta := |x|^-2 d|x|^2 / (1 - lam), lam the xi scaling of |x|^2
    (q^-2 in the standard calculus, q^2 in the hat one)."""
    cache = _theta_cache(alg)
    if "theta" not in cache:
        lam = alg.F.q ** (2 * alg.xi_shift)
        if lam == 1:
            raise PoleAtPoint("theta has a pole at q = 1; use d|x|^2 / |x|^2 instead")
        cache["theta"] = (alg.Uinv() * d_det(alg)).scale((1 - lam).inv())
    return cache["theta"]


def d_det(alg: Algebra) -> NCElem:
    """d|x|^2, differentiated letter by letter on x11 x22 - q x12 x21."""
    cache = _theta_cache(alg)
    if "dU" not in cache:
        F = alg.F
        x = alg.al.x
        det = {(x(0), x(3)): F.one, (x(1), x(2)): -F.q}
        cache["dU"] = _d_words(alg, det)
    return cache["dU"]


def theta_explicit(alg: Algebra) -> NCElem:
    """Closed form q^-2/(q^2-1) xi^{aa'} x^{bb'} |x|^-2 eps_ab eps_a'b'
    (standard calculus only)."""
    F = alg.F
    e = alg.T.eps
    q = F.q
    out = alg.zero
    for A in range(4):
        a, a1 = divmod(A, 2)
        for B in range(4):
            b, b1 = divmod(B, 2)
            c = e[a, b] * e[a1, b1]
            if c.is_zero():
                continue
            out = out + alg.xi(a + 1, a1 + 1) * alg.x(b + 1, b1 + 1) * alg.scalar(c)
    return (out * alg.Uinv()).scale(q ** -2 / (q * q - 1))


def _d_words(alg: Algebra, e) -> NCElem:
    """Leibniz part on the letters only (coefficients held fixed).

    ``e`` may be an element or a raw {word: coefficient} dict."""
    al = alg.al
    out: dict = {}
    terms = e.terms if isinstance(e, NCElem) else e
    for w, c in terms.items():
        sign = 1
        for i, l in enumerate(w):
            k = al.kind(l)
            if k == "xi":
                sign = -sign
                continue
            if k in ("y", "rho"):
                continue
            if k != "x":
                raise SectorViolation(f"d is not defined on {al.name(l)}")
            nw = w[:i] + (al.xi(al.pair(l)),) + w[i + 1 :]
            v = c if sign > 0 else -c
            out[nw] = out[nw] + v if nw in out else v
    return NCElem(alg, {w: c for w, c in out.items() if not c.is_zero()})


def d(e):
    """Exterior derivative: d x = xi, d xi = d y = d rho = 0, graded
    Leibniz, and on radial coefficients d f = (f - sigma f) theta.

    At q = 1 the radial rule is the classical d f = f'(|x|^2) d|x|^2."""
    if isinstance(e, MatForm):
        return e.map(d)
    alg = e.alg
    out = _d_words(alg, e)
    radial = {}
    classical = alg.F.q ** (2 * alg.xi_shift) == 1
    for w, c in e.terms.items():
        if c.radial:
            if classical:
                df = _classical_du(c)
                if not df.is_zero():
                    out = out + alg.scalar(df) * d_det(alg) * NCElem(alg, {w: alg.F.one}, normal=True)
                continue
            df = c - _radial_sigma(alg, c)
            if isinstance(df, RadialFn) and not df.odd():
                df = df.rat()
            if not df.is_zero():
                radial[w] = df
    if radial:
        th = theta(alg)
        for w, df in radial.items():
            out = out + alg.scalar(df) * th * NCElem(alg, {w: alg.F.one}, normal=True)
    return out


def _classical_du(c):
    if isinstance(c, RadialFn):
        if c.odd():
            raise SectorViolation("d of the square-root extension at q = 1")
        c = c.rat()
    return c.du()


def d_via_theta(e: NCElem) -> NCElem:
    """-theta e + (-1)^p e theta on the x, xi, radial sector."""
    alg = e.alg
    bad = _kinds(alg, e) - {"x", "xi"}
    if bad:
        raise SectorViolation(f"theta commutator not asserted with {sorted(bad)} present")
    p = e.xi_degree()
    if p is None:
        raise WrongDegree("d_via_theta needs a homogeneous form")
    th = theta(alg)
    out = -(th * e)
    return out + (e * th if p % 2 == 0 else -(e * th))


# ----------------------------------------------------------------------
# Hodge map on 2-forms
def _xi_block_map(alg: Algebra, w2: NCElem, M) -> NCElem:
    al = alg.al
    if w2.is_zero():
        return w2
    if w2.xi_degree() != 2:
        raise WrongDegree("expected a homogeneous 2-form")
    out = alg.zero
    for w, c in w2.terms.items():
        i, j = (k for k, l in enumerate(w) if al.kind(l) == "xi")
        if (i, j) != (0, 1):
            raise SectorViolation("xi letters are not leading in a normal word")
        A, B = al.pair(w[0]), al.pair(w[1])
        rest = NCElem(alg, {w[2:]: alg.F.one}, normal=True)
        img = {}
        for C in range(4):
            for D in range(4):
                v = M[4 * A + B, 4 * C + D]
                if not v.is_zero():
                    img[(al.xi(C), al.xi(D))] = v
        out = out + alg.scalar(c) * NCElem(alg, img) * rest
    return out


def _pp(alg: Algebra) -> dict:
    cache = _theta_cache(alg)
    if "pp" not in cache:
        cache["pp"] = alg.T.pair_projectors()
    return cache["pp"]


def hodge2(w: NCElem) -> NCElem:
    """*xi^A xi^B = (P_a - P_a')[(A,B),(C,D)] xi^C xi^D, extended bilinearly."""
    alg = w.alg
    pp = _pp(alg)
    return _xi_block_map(alg, w, pp["Pa"] - pp["Pa'"])


def decompose2(w: NCElem):
    """(self-dual part, antiself-dual part) via P_a and P_a'."""
    alg = w.alg
    pp = _pp(alg)
    return _xi_block_map(alg, w, pp["Pa"]), _xi_block_map(alg, w, pp["Pa'"])


# ----------------------------------------------------------------------
# 2x2 matrices of forms
class MatForm:
    """2x2 matrix of algebra elements (row index first)."""

    def __init__(self, alg: Algebra, rows):
        self.alg = alg
        self.m = [[self._c(rows[i][j]) for j in range(2)] for i in range(2)]

    def _c(self, v):
        if isinstance(v, NCElem):
            return v
        return self.alg.scalar(v)

    @classmethod
    def scalar_matrix(cls, alg: Algebra, M) -> "MatForm":
        return cls(alg, [[alg.scalar(M[i, j]) for j in range(2)] for i in range(2)])

    @classmethod
    def identity(cls, alg: Algebra, c=1) -> "MatForm":
        z = alg.zero
        s = alg.scalar(c) if not isinstance(c, NCElem) else c
        return cls(alg, [[s, z], [z, s]])

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def map(self, fn) -> "MatForm":
        return MatForm(self.alg, [[fn(self.m[i][j]) for j in range(2)] for i in range(2)])

    def __add__(self, o: "MatForm") -> "MatForm":
        return MatForm(self.alg, [[self.m[i][j] + o.m[i][j] for j in range(2)] for i in range(2)])

    def __sub__(self, o: "MatForm") -> "MatForm":
        return MatForm(self.alg, [[self.m[i][j] - o.m[i][j] for j in range(2)] for i in range(2)])

    def __neg__(self) -> "MatForm":
        return self.map(lambda e: -e)

    def __matmul__(self, o: "MatForm") -> "MatForm":
        return MatForm(
            self.alg,
            [[self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j] for j in range(2)] for i in range(2)],
        )

    def lmul(self, e: NCElem) -> "MatForm":
        return self.map(lambda v: e * v)

    def rmul(self, e: NCElem) -> "MatForm":
        return self.map(lambda v: v * e)

    def T(self) -> "MatForm":
        return MatForm(self.alg, [[self.m[j][i] for j in range(2)] for i in range(2)])

    def bar(self) -> "MatForm":
        """eps^-1 a^T eps."""
        alg = self.alg
        E = MatForm.scalar_matrix(alg, alg.T.eps)
        Ei = MatForm.scalar_matrix(alg, alg.T.eps_inv)
        return Ei @ self.T() @ E

    def dagger(self) -> "MatForm":
        return self.map(self.alg.star).T()

    def is_zero(self) -> bool:
        return all(self.m[i][j].is_zero() for i in range(2) for j in range(2))

    def __eq__(self, o) -> bool:
        return isinstance(o, MatForm) and (self - o).is_zero()

    def to_json(self) -> list:
        return [[str(self.m[i][j]) for j in range(2)] for i in range(2)]

    def __repr__(self):
        return f"MatForm({self.to_json()})"


def xmat(alg: Algebra, mu: int = 0) -> MatForm:
    return MatForm(alg, [[alg.y(mu, i + 1, j + 1) for j in range(2)] for i in range(2)])


def ximat(alg: Algebra) -> MatForm:
    return MatForm(alg, [[alg.xi(i + 1, j + 1) for j in range(2)] for i in range(2)])


def _eps(alg: Algebra) -> MatForm:
    return MatForm.scalar_matrix(alg, alg.T.eps)


def build_f(alg: Algebra) -> MatForm:
    """f = xi xibar eps."""
    xi = ximat(alg)
    return xi @ xi.bar() @ _eps(alg)


def build_fprime(alg: Algebra) -> MatForm:
    """f' = xibar xi eps."""
    xi = ximat(alg)
    return xi.bar() @ xi @ _eps(alg)


def build_a(alg: Algebra, printed: bool = False) -> MatForm:
    """Potential with d a = f in the (3,1) representation: a = -P_s (xi eps x^T).

    ``printed=True`` drops the minus sign; that matrix satisfies d a = -f
    because d(xi x) = -xi xi under graded Leibniz."""
    b = ximat(alg) @ _eps(alg) @ xmat(alg).T()
    Ps = alg.T.Ps2
    sign = 1 if printed else -1
    rows = [[alg.zero, alg.zero], [alg.zero, alg.zero]]
    for a in range(2):
        for bb in range(2):
            acc = alg.zero
            for g in range(2):
                for dd in range(2):
                    c = Ps[2 * a + bb, 2 * g + dd]
                    if not c.is_zero():
                        acc = acc + b[g, dd].scale(sign * c)
            rows[a][bb] = acc
    return MatForm(alg, rows)


def build_ahat(alg: Algebra) -> MatForm:
    """ahat = -xi xbar."""
    return -(ximat(alg) @ xmat(alg).bar())


def check_xblu(alg: Algebra, sign: int = 1) -> dict:
    """x xibar + xi xbar and xbar xi + xibar x against (q^2-1) theta |x|^2 I
    ((q^-2-1) in the hat calculus).

    ``sign=-1`` flips the sign of the right-hand side (negative control)."""
    x, xi = xmat(alg), ximat(alg)
    F = alg.F
    lam = F.q ** (2 * alg.xi_shift)
    c = (1 - lam) / lam
    rhs = MatForm.identity(alg, (theta(alg) * alg.U()).scale(sign * c))
    r1 = x @ xi.bar() + xi @ x.bar() - rhs
    r2 = x.bar() @ xi + xi.bar() @ x - rhs
    return {
        "first": r1.to_json(),
        "second": r2.to_json(),
        "ok": r1.is_zero() and r2.is_zero(),
    }
