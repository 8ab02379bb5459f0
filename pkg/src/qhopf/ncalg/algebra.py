"""Rewrite systems, normal forms and the element type.

Terms are ``coefficient * word`` with the coefficient on the left and the word
a tuple of letter codes.  A word is normal iff no adjacent letter pair is the
left side of a rule (all rules have length-2 left sides), so normal forms are
computed by inserting letters one at a time from the right:

    nf(l * n) for a normal word n only ever rewrites at the left end,

which keeps coefficient bookkeeping to a single-letter "push":
``l * c = sum c' * l'`` (the partial derivative contributes a term with an
x-letter, the q-difference part).
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..coeff import Field, RadialFn, Rat, qfield
from ..tensors import Tensors, rref, tensors, zeros
from .letters import (
    DEFAULT_ORDER,
    LAM,
    LAMINV,
    MAX_COPIES,
    Alphabet,
    UnknownGenerator,
)

VARIANTS = ("standard", "hat")
LEVELS = ("core", "localized", "braided")


class NCError(Exception):
    pass


class NonTerminating(NCError):
    pass


class MixedConfiguration(NCError):
    pass


class RankMismatch(NCError):
    pass


class StarUndefined(NCError):
    pass


class OperandContainsPartial(NCError):
    pass


class InconsistentDerivation(NCError):
    pass


def max_steps() -> int:
    return int(os.environ.get("QHOPF_MAX_STEPS", "1000000"))


@dataclass(frozen=True)
class Config:
    variant: str = "standard"
    level: str = "localized"
    n: int = 0
    order: tuple = DEFAULT_ORDER

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.level not in LEVELS:
            raise ValueError(f"unknown level {self.level!r}")
        if self.level == "braided" and not 1 <= self.n <= MAX_COPIES:
            raise ValueError(f"braided level needs 1 <= n <= {MAX_COPIES}")
        if self.level != "braided" and self.n:
            raise ValueError("copies only exist at the braided level")

    def to_json(self) -> dict:
        return {"variant": self.variant, "level": self.level, "n": self.n, "order": list(self.order)}


def _is_radial(c) -> bool:
    return c.radial


def _norm_coeff(c):
    if isinstance(c, RadialFn) and not c.odd():
        return c.parts.get((), None) or c.F.zero
    return c


class Algebra:
    """A rewrite system plus memoized normal forms for one configuration."""

    def __init__(self, config: Config | None = None, F: Field | None = None, **kw):
        if config is None:
            config = Config(**kw)
        self.config = config
        self.F = F or qfield()
        self.T: Tensors = tensors(self.F)
        self.al = Alphabet(config.order)
        self.variant = config.variant
        self.level = config.level
        self.n = config.n
        self._lmul_cache: dict = {}
        self._word_cache: dict = {}
        self._push_cache: dict = {}
        self._in_progress: set = set()
        self._steps = 0
        self.rules: dict[tuple[int, int], list] = {}
        self.report: dict = {}
        self._build_rules()
        self.xi_shift = 0
        self.pd_shift = 0
        self.lam_shift = -1
        self.pd_linear: dict[int, list] = {}
        self.pd_c = None
        if self.level == "localized":
            self._derive_push_data()
        self.one = NCElem(self, {(): self.F.one})
        self.zero = NCElem(self, {})

    # ------------------------------------------------------------------
    # letters
    @property
    def letters(self) -> list[int]:
        al = self.al
        out = [al.xi(A) for A in range(4)] + [al.x(A) for A in range(4)]
        if self.level == "braided":
            for mu in range(1, self.n + 1):
                out += [al.y(mu, A) for A in range(4)]
            out += [al.rho(mu) for mu in range(1, self.n + 1)]
        out += [al.pd(A) for A in range(4)]
        if self.level != "braided":
            out += [LAM, LAMINV]
        return sorted(out)

    def check_letter(self, code: int):
        if code not in self._letter_set:
            raise UnknownGenerator(f"{self.al.name(code)} not in configuration {self.config}")

    # ------------------------------------------------------------------
    # rule construction
    def _orient(self, rows: list[dict], tag: str):
        """Turn homogeneous quadratic relations into rules via RREF.

        Columns are sorted with the largest monomial first so that each pivot
        is the leading monomial of its row.
        """
        F = self.F
        monos = sorted({m for r in rows for m in r}, key=self.mono_key, reverse=True)
        col = {m: i for i, m in enumerate(monos)}
        mat = zeros(F, (len(rows), len(monos)))
        for i, r in enumerate(rows):
            for m, c in r.items():
                mat[i, col[m]] = mat[i, col[m]] + c
        red, piv = rref(F, mat)
        for i, pc in enumerate(piv):
            lead = monos[pc]
            rhs = []
            for j, m in enumerate(monos):
                if j != pc and not red[i, j].is_zero():
                    rhs.append((-red[i, j], m))
            self._add_rule(lead, rhs)
        self.report[tag] = {"rank": len(piv), "monomials": len(monos)}
        return len(piv), [monos[p] for p in piv]

    def mono_key(self, word):
        """Monomial order: degree, then the number of diagonal x/y/pd letters
        (index 11 or 22), then lexicographic.  The weight makes the
        q-determinant word x11 x22 larger than x12 x21, so det elimination
        decreases; without it the pd pd rules do not close."""
        al = self.al
        w = sum(1 for l in word if al.kind(l) in ("x", "y", "pd") and al.pair(l) in (0, 3))
        return (len(word), w, word)

    def _add_rule(self, lhs, rhs):
        if lhs in self.rules:
            raise InconsistentDerivation(f"duplicate rule for {self.al.word_str(lhs)}")
        self.rules[lhs] = [(c, tuple(w)) for c, w in rhs if not c.is_zero()]

    def _pair_rows(self, M, letter_a, letter_b, transpose=False, identity=False):
        """Rows sum_{C,D} M[(A,B),(C,D)] a^C b^D (optionally minus a^A b^B)."""
        F = self.F
        rows = []
        for A in range(4):
            for B in range(4):
                r = {}
                if identity:
                    r[(letter_a(A), letter_b(B))] = F.one
                for C in range(4):
                    for D in range(4):
                        v = M[4 * A + B, 4 * C + D]
                        if v.is_zero():
                            continue
                        key = (letter_a(C), letter_b(D))
                        r[key] = r.get(key, F.zero) - v if identity else r.get(key, F.zero) + v
                rows.append({k: v for k, v in r.items() if not v.is_zero()})
        return [r for r in rows if r]

    def _row_space_equal(self, rows1, rows2) -> bool:
        F = self.F
        monos = sorted({m for r in rows1 + rows2 for m in r})
        col = {m: i for i, m in enumerate(monos)}

        def mat(rows):
            m = zeros(F, (len(rows), len(monos)))
            for i, r in enumerate(rows):
                for k, v in r.items():
                    m[i, col[k]] = v
            return m

        import numpy as np

        r1 = len(rref(F, mat(rows1))[1])
        r2 = len(rref(F, mat(rows2))[1])
        r12 = len(rref(F, np.concatenate([mat(rows1), mat(rows2)]))[1])
        return r1 == r2 == r12

    def _build_rules(self):
        F, T, al = self.F, self.T, self.al
        q, qi = F.q, F.qinv
        R, Ri = T.rhat2, T.rhat2_inv
        PP = T.pair_projectors()
        hat = self.variant == "hat"

        # xi xi: (P_s + P_t) xi xi = 0, i.e. Ps(x)Ps and the eps-trace row.
        rows = self._pair_rows(PP["Ps"], al.xi, al.xi)
        g = T.metric_pair()
        rows.append({(al.xi(C), al.xi(D)): g[C, D] for C in range(4) for D in range(4) if not g[C, D].is_zero()})
        alt = self._pair_rows(PP["Ps"] + PP["Pt"], al.xi, al.xi)
        if not self._row_space_equal(rows, alt):
            raise RankMismatch("xi xi relation forms disagree")
        rk, _ = self._orient(rows, "xixi")
        if rk != 10:
            raise RankMismatch(f"xi xi relations have rank {rk}, expected 10")

        # x x: x x = (R (x) R^-1) x x, cross-checked with P_A x x = 0.
        xx_pair = T.pair_tensor(R, Ri)
        copies = [0] + (list(range(1, self.n + 1)) if self.level == "braided" else [])
        for mu in copies:
            ya = (lambda A, mu=mu: al.y(mu, A))
            rows = self._pair_rows(xx_pair, ya, ya, identity=True)
            if mu == 0:
                alt = self._pair_rows(PP["PA"], ya, ya)
                if not self._row_space_equal(rows, alt):
                    raise RankMismatch("x x relation forms disagree")
            rk, _ = self._orient(rows, "xx" if mu == 0 else f"yy{mu}")
            if rk != 6:
                raise RankMismatch(f"x x relations have rank {rk}, expected 6")

        # pd pd: pd_A pd_B = R^{dc}_{ba} R^-1^{d'c'}_{b'a'} pd_C pd_D
        rows = []
        for A in range(4):
            a0, a1 = divmod(A, 2)
            for B in range(4):
                b0, b1 = divmod(B, 2)
                r = {(al.pd(A), al.pd(B)): F.one}
                for C in range(4):
                    c0, c1 = divmod(C, 2)
                    for D in range(4):
                        d0, d1 = divmod(D, 2)
                        v = R[2 * d0 + c0, 2 * b0 + a0] * Ri[2 * d1 + c1, 2 * b1 + a1]
                        if v.is_zero():
                            continue
                        key = (al.pd(C), al.pd(D))
                        r[key] = r.get(key, F.zero) - v
                rows.append({k: v for k, v in r.items() if not v.is_zero()})
        rows = [r for r in rows if r]
        alt = []
        PA = PP["PA"]
        for H in range(4):
            for K in range(4):
                r = {}
                for I in range(4):
                    for J in range(4):
                        v = PA[4 * I + J, 4 * H + K]
                        if not v.is_zero():
                            key = (al.pd(J), al.pd(I))
                            r[key] = r.get(key, F.zero) + v
                r = {k: v for k, v in r.items() if not v.is_zero()}
                if r:
                    alt.append(r)
        if not self._row_space_equal(rows, alt):
            raise RankMismatch("pd pd relation forms disagree")
        rk, _ = self._orient(rows, "pdpd")
        if rk != 6:
            raise RankMismatch(f"pd pd relations have rank {rk}, expected 6")

        # x xi -> (R (x) R) xi x ; hat: R^-1 (x) R^-1
        Mxxi = T.pair_tensor(Ri, Ri) if hat else T.pair_tensor(R, R)
        Mdx = T.pair_tensor(Ri, Ri) if hat else T.pair_tensor(R, R)
        Mdxi = T.pair_tensor(R, R) if hat else T.pair_tensor(Ri, Ri)
        for mu in copies:
            for A in range(4):
                for B in range(4):
                    rhs = []
                    for C in range(4):
                        for D in range(4):
                            v = Mxxi[4 * A + B, 4 * C + D]
                            if not v.is_zero():
                                rhs.append((v, (al.xi(C), al.y(mu, D))))
                    self._add_rule((al.y(mu, A), al.xi(B)), rhs)
        # pd x -> delta + N[(B,D),(A,C)] x^C pd_D ; copies get no delta term
        for mu in copies:
            for A in range(4):
                for B in range(4):
                    rhs = [(F.one, ())] if (A == B and mu == 0) else []
                    for C in range(4):
                        for D in range(4):
                            v = Mdx[4 * B + D, 4 * A + C]
                            if not v.is_zero():
                                rhs.append((v, (al.y(mu, C), al.pd(D))))
                    self._add_rule((al.pd(A), al.y(mu, B)), rhs)
        # pd xi -> K[(B,D),(A,C)] xi^C pd_D
        for A in range(4):
            for B in range(4):
                rhs = []
                for C in range(4):
                    for D in range(4):
                        v = Mdxi[4 * B + D, 4 * A + C]
                        if not v.is_zero():
                            rhs.append((v, (al.xi(C), al.pd(D))))
                self._add_rule((al.pd(A), al.xi(B)), rhs)

        if self.level == "braided":
            Myy = T.pair_tensor(R, R)
            for mu in range(1, self.n + 1):
                for nu in range(0, mu):
                    for A in range(4):
                        for B in range(4):
                            rhs = []
                            for C in range(4):
                                for D in range(4):
                                    v = Myy[4 * A + B, 4 * C + D]
                                    if not v.is_zero():
                                        rhs.append((v, (al.y(nu, C), al.y(mu, D))))
                            self._add_rule((al.y(mu, A), al.y(nu, B)), rhs)
            for nu in range(1, self.n + 1):
                for mu in range(1, self.n + 1):
                    if nu > mu:
                        # rho_mu rho_nu = q^2 rho_nu rho_mu for mu < nu
                        self._add_rule((al.rho(nu), al.rho(mu)), [(qi * qi, (al.rho(mu), al.rho(nu)))])
                for mu in range(0, self.n + 1):
                    c = qi * qi if nu < mu else F.one
                    for A in range(4):
                        self._add_rule((al.rho(nu), al.y(mu, A)), [(c, (al.y(mu, A), al.rho(nu)))])
                for A in range(4):
                    self._add_rule((al.rho(nu), al.xi(A)), [(F.one, (al.xi(A), al.rho(nu)))])
                    self._add_rule((al.pd(A), al.rho(nu)), [(F.one, (al.rho(nu), al.pd(A)))])
        else:
            for A in range(4):
                self._add_rule((LAM, al.x(A)), [(qi, (al.x(A), LAM))])
                self._add_rule((LAMINV, al.x(A)), [(q, (al.x(A), LAMINV))])
                self._add_rule((LAM, al.xi(A)), [(F.one, (al.xi(A), LAM))])
                self._add_rule((LAMINV, al.xi(A)), [(F.one, (al.xi(A), LAMINV))])
                # Lam pd = q pd Lam ; pd sits before Lam in the block order
                self._add_rule((LAM, al.pd(A)), [(q, (al.pd(A), LAM))])
                self._add_rule((LAMINV, al.pd(A)), [(qi, (al.pd(A), LAMINV))])
            self._add_rule((LAM, LAMINV), [(F.one, ())])
            self._add_rule((LAMINV, LAM), [(F.one, ())])

        if self.level == "localized":
            x11, x22, x12, x21 = (al.x(A) for A in (0, 3, 1, 2))
            if (x11, x22) in self.rules:
                raise InconsistentDerivation("det word is already reducible under this order")
            self._add_rule((x11, x22), [(F.u, ()), (q, (x12, x21))])
        self._letter_set = set(self.letters)

    # ------------------------------------------------------------------
    # derived coefficient push rules
    def _derive_push_data(self):
        F = self.F
        core = Algebra(Config(self.variant, "core", 0, self.config.order), F)
        al = core.al
        det = core.det_words()

        def ratio(lhs: NCElem, rhs: NCElem):
            lam = None
            for w, c in rhs.terms.items():
                v = lhs.terms.get(w)
                if v is None:
                    return None
                r = v / c
                if lam is None:
                    lam = r
                elif lam != r:
                    return None
            if lam is None or len(lhs.terms) != len(rhs.terms):
                return None
            return lam

        def as_shift(lam) -> int:
            for k in (1, -1, 2, -2):
                if lam == F.q ** (2 * k):
                    return k
            raise InconsistentDerivation(f"scaling {lam} is not an even power of q")

        lams = set()
        for A in range(4):
            xi = core.gen(al.xi(A))
            lam = ratio(det * xi, xi * det)
            if lam is None:
                raise InconsistentDerivation("det does not q-commute with xi")
            lams.add(lam)
        if len(lams) != 1:
            raise InconsistentDerivation("xi scaling depends on the index")
        lam_xi = lams.pop()
        # U xi = lam xi U  =>  xi f(U) = f(U / lam) xi
        self.xi_shift = -as_shift(lam_xi)

        lam = core.gen(LAM)
        lam_L = ratio(lam * det, det * lam)
        self.lam_shift = as_shift(lam_L)

        lin = {}
        lams = set()
        for A in range(4):
            pd = core.gen(al.pd(A))
            full = pd * det
            quad = NCElem(core, {w: c for w, c in full.terms.items() if len(w) == 3})
            rest = {w: c for w, c in full.terms.items() if len(w) != 3}
            lam_d = ratio(quad, det * pd)
            if lam_d is None:
                raise InconsistentDerivation("pd does not q-commute with det")
            lams.add(lam_d)
            if any(len(w) != 1 or core.al.kind(w[0]) != "x" for w in rest):
                raise InconsistentDerivation("inhomogeneous part is not linear in x")
            lin[A] = [(c, w[0]) for w, c in sorted(rest.items())]
        if len(lams) != 1:
            raise InconsistentDerivation("pd scaling depends on the index")
        lam_d = lams.pop()
        self.pd_shift = as_shift(lam_d)
        self.pd_scale = lam_d
        self.pd_linear = {A: [(c, self.al.x(core.al.pair(code))) for c, code in terms] for A, terms in lin.items()}
        # L_A = c eps_{ab} eps_{a'b'} x^{bb'}: read off c and check the shape
        eps = self.T.eps
        cs = set()
        for A in range(4):
            a0, a1 = divmod(A, 2)
            got = {self.al.pair(code): c for c, code in self.pd_linear[A]}
            for B in range(4):
                e = eps[a0, B // 2] * eps[a1, B % 2]
                v = got.get(B, F.zero)
                if e.is_zero():
                    if not v.is_zero():
                        raise InconsistentDerivation("linear part is not eps-shaped")
                else:
                    cs.add(v / e)
        if len(cs) != 1:
            raise InconsistentDerivation("linear part has index-dependent normalization")
        self.pd_c = cs.pop()
        self.report["push"] = {
            "xi_scale": str(lam_xi),
            "pd_scale": str(lam_d),
            "lam_scale": str(lam_L),
            "pd_c": str(self.pd_c),
        }

    def qdiff(self, f: Rat) -> Rat:
        """D(f) = (sigma_pd f - f) / ((lam - 1) U); at lam = 1 its limit df/dU."""
        if isinstance(f, RadialFn):
            f = f.rat()
        if self.pd_scale == 1:
            return f.du()
        return (f.shift(self.pd_shift) - f) / ((self.pd_scale - 1) * self.F.u)

    def check_uinv_rule(self) -> bool:
        """Solve 0 = pd(U U^-1) for the U^-1 push and compare with D."""
        F = self.F
        U = F.u
        ok = True
        for A in range(4):
            # pd U^-1 = sigma(U^-1) pd + X L_A ; pd U = lam U pd + L_A
            # pd = pd U U^-1 = lam U (sigma(U^-1) pd + X L) + L U^-1
            X = -(self.pd_scale * U).inv() * U.inv()
            ok = ok and X == self.qdiff(U.inv())
        return ok

    # ------------------------------------------------------------------
    # coefficient push through one letter
    def push(self, l: int, c):
        """Return [(c', l')] with l * c = sum c' * l'."""
        if not c.radial:
            return [(c, l)]
        key = (l, c)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        kind = self.al.kind(l)
        if self.level != "localized":
            raise MixedConfiguration("radial coefficients need the localized level")
        if kind == "x":
            out = [(c, l)]
        elif kind == "xi":
            out = [(c.shift(self.xi_shift), l)]
        elif kind == "lam":
            out = [(c.shift(self.lam_shift if l == LAM else -self.lam_shift), l)]
        elif kind == "pd":
            out = [(c.shift(self.pd_shift), l)]
            if isinstance(c, RadialFn) and c.odd():
                raise MixedConfiguration("pd acting on the square-root extension")
            Dc = self.qdiff(c)
            if not Dc.is_zero():
                for k, xl in self.pd_linear[self.al.pair(l)]:
                    out.append((Dc * k, xl))
        else:
            raise MixedConfiguration(f"radial coefficient next to {self.al.name(l)}")
        self._push_cache[key] = out
        return out

    def push_prefix(self, word, c):
        """u * c = sum c' * u' for a word u."""
        terms = [(c, ())]
        for l in reversed(word):
            new = []
            for c1, s in terms:
                for c2, l2 in self.push(l, c1):
                    new.append((c2, (l2,) + s))
            terms = new
        return terms

    # ------------------------------------------------------------------
    # normal forms
    def _tick(self):
        self._steps += 1
        if self._steps > self._budget:
            raise NonTerminating(f"rewrite budget of {self._budget} steps exceeded")

    def lmul_word(self, l: int, n: tuple) -> dict:
        """nf(l * n) for a normal word n."""
        key = (l, n)
        hit = self._lmul_cache.get(key)
        if hit is not None:
            return hit
        if not n or (l, n[0]) not in self.rules:
            res = {(l,) + n: self.F.one}
            self._lmul_cache[key] = res
            return res
        if key in self._in_progress:
            raise NonTerminating(f"cyclic rewriting at {self.al.word_str((l,) + n)}")
        self._in_progress.add(key)
        try:
            self._tick()
            tail = n[1:]
            acc: dict = {}
            for c, m in self.rules[(l, n[0])]:
                part = {tail: self.F.one}
                for letter in reversed(m):
                    part = self.lmul_letter(letter, part)
                for w, d in part.items():
                    v = c * d
                    if w in acc:
                        v = acc[w] + v
                    acc[w] = v
            res = {w: v for w, v in acc.items() if not v.is_zero()}
        finally:
            self._in_progress.discard(key)
        self._lmul_cache[key] = res
        return res

    def lmul_letter(self, l: int, terms: dict) -> dict:
        """nf(l * sum c n) for normal words n."""
        acc: dict = {}
        for n, c in terms.items():
            for c1, l1 in self.push(l, c):
                for w, d in self.lmul_word(l1, n).items():
                    v = c1 * d
                    if w in acc:
                        v = acc[w] + v
                    acc[w] = v
        return {w: _norm_coeff(v) for w, v in acc.items() if not v.is_zero()}

    def nf_word(self, word: tuple) -> dict:
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        part = {(): self.F.one}
        for l in reversed(word):
            part = self.lmul_letter(l, part)
        self._word_cache[word] = part
        return part

    def _start(self):
        self._steps = 0
        self._budget = max_steps()

    def nf_terms(self, raw: dict) -> dict:
        """Normal form of sum c * w (coefficients on the left)."""
        self._start()
        try:
            acc: dict = {}
            for w, c in raw.items():
                if c.is_zero():
                    continue
                for l in w:
                    self.check_letter(l)
                if self.level != "localized" and c.radial:
                    raise MixedConfiguration("radial coefficients need the localized level")
                for w2, d in self.nf_word(tuple(w)).items():
                    v = c * d
                    if w2 in acc:
                        v = acc[w2] + v
                    acc[w2] = v
        except RecursionError as e:
            raise NonTerminating("rewriting recursion too deep") from e
        return {w: _norm_coeff(v) for w, v in acc.items() if not v.is_zero()}

    def mul_terms(self, a: dict, b: dict) -> dict:
        self._start()
        acc: dict = {}
        try:
            for w, c in a.items():
                part = b
                for l in reversed(w):
                    part = self.lmul_letter(l, part)
                for w2, d in part.items():
                    v = c * d
                    if w2 in acc:
                        v = acc[w2] + v
                    acc[w2] = v
        except RecursionError as e:
            raise NonTerminating("rewriting recursion too deep") from e
        return {w: _norm_coeff(v) for w, v in acc.items() if not v.is_zero()}

    def is_normal(self, word) -> bool:
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    # ------------------------------------------------------------------
    # generic rewriting with a chosen strategy (independent of the memo)
    def rewrite(self, raw: dict, strategy: str = "leftmost", seed: int = 0, budget: int | None = None) -> dict:
        rng = random.Random(seed)
        terms = {tuple(w): c for w, c in raw.items() if not c.is_zero()}
        steps = 0
        budget = budget or max_steps()
        while True:
            redex = None
            for w in sorted(terms) if strategy != "random" else rng.sample(sorted(terms), len(terms)):
                pos = [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules]
                if pos:
                    if strategy == "leftmost":
                        i = pos[0]
                    elif strategy == "rightmost":
                        i = pos[-1]
                    else:
                        i = rng.choice(pos)
                    redex = (w, i)
                    break
            if redex is None:
                return {w: _norm_coeff(c) for w, c in terms.items() if not c.is_zero()}
            steps += 1
            if steps > budget:
                raise NonTerminating("generic rewriting budget exceeded")
            w, i = redex
            c = terms.pop(w)
            u, v = w[:i], w[i + 2:]
            for k, m in self.rules[(w[i], w[i + 1])]:
                for c2, u2 in self.push_prefix(u, k):
                    nw = u2 + m + v
                    val = c * c2
                    if nw in terms:
                        val = terms[nw] + val
                    if val.is_zero():
                        terms.pop(nw, None)
                    else:
                        terms[nw] = val

    def rewrite_at(self, word, i) -> dict:
        """One rewrite step of 1 * word at position i."""
        u, v = word[:i], word[i + 2:]
        out: dict = {}
        for k, m in self.rules[(word[i], word[i + 1])]:
            for c2, u2 in self.push_prefix(u, k):
                nw = u2 + m + v
                out[nw] = out[nw] + c2 if nw in out else c2
        return {w: c for w, c in out.items() if not c.is_zero()}

    # ------------------------------------------------------------------
    # element constructors
    def gen(self, code: int) -> "NCElem":
        self.check_letter(code)
        return NCElem(self, {(code,): self.F.one}, normal=True)

    def x(self, a, b):
        return self.gen(self.al.x(2 * (a - 1) + (b - 1)))

    def xi(self, a, b):
        return self.gen(self.al.xi(2 * (a - 1) + (b - 1)))

    def pd(self, a, b):
        return self.gen(self.al.pd(2 * (a - 1) + (b - 1)))

    def y(self, mu, a, b):
        if mu == 0:
            return self.x(a, b)
        if self.level != "braided" or mu > self.n:
            raise UnknownGenerator(f"y[{mu}] not in configuration")
        return self.gen(self.al.y(mu, 2 * (a - 1) + (b - 1)))

    def rho(self, mu):
        """The generator rho_mu^2 (a single letter)."""
        if self.level != "braided" or not 1 <= mu <= self.n:
            raise UnknownGenerator(f"rho[{mu}] not in configuration")
        return self.gen(self.al.rho(mu))

    def lam(self, e=1):
        if self.level == "braided":
            raise MixedConfiguration("Lambda is not part of the braided configuration")
        return self.gen(LAM if e > 0 else LAMINV)

    def scalar(self, c) -> "NCElem":
        if not isinstance(c, (Rat, RadialFn)):
            c = self.F(c)
        return NCElem(self, {(): c})

    def U(self):
        self._need_localized()
        return self.scalar(self.F.u)

    def Uinv(self):
        self._need_localized()
        return self.scalar(self.F.u.inv())

    def absx(self):
        self._need_localized()
        return self.scalar(self.F.w)

    def _need_localized(self):
        if self.level != "localized":
            raise MixedConfiguration("radial generators need the localized level")

    def det_words(self) -> "NCElem":
        """x11 x22 - q x12 x21 built letter by letter."""
        x = self.x
        return x(1, 1) * x(2, 2) - self.scalar(self.F.q) * x(1, 2) * x(2, 1)

    def xvec(self, mu=0):
        """x^A (or y_mu^A) as a list indexed by flat pair A."""
        return [self.y(mu, A // 2 + 1, A % 2 + 1) for A in range(4)]

    # ------------------------------------------------------------------
    # star, action
    def star_letter(self, code: int) -> "NCElem":
        kind = self.al.kind(code)
        if kind == "rho":
            return self.gen(code)
        if kind not in ("x", "y"):
            raise StarUndefined(f"no star on {self.al.name(code)}")
        mu = self.al.copy(code)
        A = self.al.pair(code)
        a, b = divmod(A, 2)
        ei, e = self.T.eps_inv, self.T.eps
        out = self.zero
        for g in range(2):
            for d in range(2):
                c = ei[b, g] * e[d, a]
                if not c.is_zero():
                    out = out + self.scalar(c) * self.gen(self.al.y(mu, 2 * d + g))
        return out

    def star(self, e: "NCElem") -> "NCElem":
        out = self.zero
        for w, c in e.terms.items():
            if isinstance(c, RadialFn) and c.odd():
                # s is real, so it is fixed as well
                pass
            part = self.one
            for l in w:
                part = self.star_letter(l) * part
            out = out + part * self.scalar(c)
        return out

    def act(self, D: "NCElem", f: "NCElem") -> "NCElem":
        for w in f.terms:
            if any(self.al.kind(l) == "pd" for l in w):
                raise OperandContainsPartial("the operand of act must be pd-free")
        prod = D * f
        return NCElem(
            self,
            {w: c for w, c in prod.terms.items() if not any(self.al.kind(l) == "pd" for l in w)},
            normal=True,
        )

    def box(self) -> "NCElem":
        """pd_k g^{hk} pd_h with vector partials pd_a = pd_A / B_A."""
        T = self.T
        gi = T.metric_inv
        out = self.zero
        for h in range(4):
            for k in range(4):
                c = gi[h, k]
                if c.is_zero():
                    continue
                c = c / (T.B[h] * T.B[k])
                out = out + self.scalar(c) * self.gen(self.al.pd(k)) * self.gen(self.al.pd(h))
        return out

    def fingerprint(self) -> dict:
        d = self.config.to_json()
        d["q"] = "symbolic" if self.F.symbolic else str(self.F.qvalue)
        return d

    def __repr__(self):
        return f"Algebra({self.config.variant}, {self.config.level}, n={self.config.n})"


class NCElem:
    """Normal-formed finite sum of coefficient * word."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict, normal: bool = False):
        self.alg = alg
        self.terms = terms if normal else alg.nf_terms(terms)

    def _coerce(self, other):
        if isinstance(other, NCElem):
            if other.alg is not self.alg:
                raise MixedConfiguration("elements from different algebra configurations")
            return other
        if isinstance(other, (int, Fraction, Rat, RadialFn)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for w, c in o.terms.items():
            v = acc[w] + c if w in acc else c
            v = _norm_coeff(v)
            if v.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = v
        return NCElem(self.alg, acc, normal=True)

    __radd__ = __add__

    def __neg__(self):
        return NCElem(self.alg, {w: -c for w, c in self.terms.items()}, normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NCElem(self.alg, self.alg.mul_terms(self.terms, o.terms), normal=True)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        out = self.alg.one
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "NCElem":
        """Left multiplication by a scalar (no push needed)."""
        if not isinstance(c, (Rat, RadialFn)):
            c = self.alg.F(c)
        out = {}
        for w, v in self.terms.items():
            x = _norm_coeff(c * v)
            if not x.is_zero():
                out[w] = x
        return NCElem(self.alg, out, normal=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((w, hash(c)) for w, c in self.terms.items())))

    def scalar_part(self):
        return self.terms.get((), self.alg.F.zero)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def xi_degree(self):
        degs = {sum(1 for l in w if self.alg.al.kind(l) == "xi") for w in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def map_coeffs(self, fn) -> "NCElem":
        return NCElem(self.alg, {w: fn(c) for w, c in self.terms.items()})

    def coeff_list(self):
        return list(self.terms.values())

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"NCElem({self})"


def _coef_str(c) -> str:
    s = str(c)
    if any(ch in s for ch in " /") or s.startswith("-"):
        return f"({s})"
    return s


def format_elem(e: NCElem) -> str:
    if not e.terms:
        return "0"
    al = e.alg.al
    parts = []
    for w in sorted(e.terms, key=lambda w: (len(w), w)):
        c = e.terms[w]
        if not w:
            parts.append(_coef_str(c))
        elif isinstance(c, Rat) and c.is_one():
            parts.append(al.word_str(w))
        else:
            parts.append(f"{_coef_str(c)} * {al.word_str(w)}")
    return " + ".join(parts)


_ALGEBRAS: dict = {}


def algebra(variant="standard", level="localized", n=0, order=DEFAULT_ORDER, F: Field | None = None) -> Algebra:
    """Shared algebra instance per configuration and field."""
    F = F or qfield()
    key = (variant, level, n, tuple(order), id(F))
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = Algebra(Config(variant, level, n, tuple(order)), F)
        _ALGEBRAS[key] = alg
    return alg


def config_json(alg: Algebra) -> str:
    return json.dumps(alg.fingerprint(), sort_keys=True)
