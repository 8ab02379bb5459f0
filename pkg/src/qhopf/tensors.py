"""Constant tensors of the q-quaternion calculus.

Conventions used throughout the package:

* quaternionic indices alpha in {1, 2}; pairs (alpha, alpha') are flattened as
  ``A = 2*(alpha-1) + (alpha'-1)``, i.e. the order 11, 12, 21, 22;
* the vector alphabet is (-2, -1, 1, 2), identified positionally with the pair
  order above (and with the labels 1..4 of the linear map B);
* an operator M on V (x) V is a square matrix with rows (i, j) and columns
  (k, l) flattened as ``i*n + j``; it acts on a product by
  ``(M y y)^{ij} = M^{ij}_{kl} y^k y^l``.

``pair_tensor(R1, R2)`` lifts two 2-index-space operators to the 4-dim space,
R1 acting on the unprimed indices and R2 on the primed ones.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coeff import Field, Rat, qfield

VECTOR_LABELS = (-2, -1, 1, 2)
PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


# Entry of the printed q-epsilon table replaced by its q-antisymmetric value.
EPS4_CORRECTIONS = {(1, -1, 2, -2): 1}


class TensorError(Exception):
    pass


class UnresolvedConstant(TensorError):
    pass


class NoSolution(TensorError):
    pass


class NonUnique(TensorError):
    pass


def pidx(a: int, b: int) -> int:
    """Flat position of the quaternionic pair (a, b), 1-based labels."""
    return 2 * (a - 1) + (b - 1)


def vidx(label: int) -> int:
    return VECTOR_LABELS.index(label)


class TensorTable:
    """Dense exact array with Rat entries."""

    def __init__(self, F: Field, entries, name: str = ""):
        self.F = F
        arr = np.empty(np.shape(entries), dtype=object)
        flat = np.asarray(entries, dtype=object).reshape(-1)
        out = arr.reshape(-1)
        for i, v in enumerate(flat):
            out[i] = v if isinstance(v, Rat) else F(v)
        self.m = arr
        self.name = name

    @property
    def shape(self):
        return self.m.shape

    def __getitem__(self, key):
        return self.m[key]

    def __eq__(self, other):
        if not isinstance(other, TensorTable) or other.shape != self.shape:
            return NotImplemented
        return all(a == b for a, b in zip(self.m.flat, other.m.flat))

    def __add__(self, other):
        return TensorTable(self.F, self.m + other.m)

    def __sub__(self, other):
        return TensorTable(self.F, self.m - other.m)

    def __neg__(self):
        return TensorTable(self.F, -self.m)

    def scale(self, c) -> "TensorTable":
        c = self.F(c) if not isinstance(c, Rat) else c
        return TensorTable(self.F, [c * v for v in self.m.flat]).reshape(self.shape)

    def reshape(self, shape):
        t = TensorTable.__new__(TensorTable)
        t.F, t.m, t.name = self.F, self.m.reshape(shape), self.name
        return t

    def __matmul__(self, other):
        return TensorTable(self.F, matmul(self.F, self.m, other.m))

    def T(self):
        return TensorTable(self.F, self.m.T)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.m.flat)

    def nonzero_count(self) -> int:
        return sum(1 for v in self.m.flat if not v.is_zero())

    def map(self, fn) -> "TensorTable":
        return TensorTable(self.F, [fn(v) for v in self.m.flat]).reshape(self.shape)

    def to_json(self) -> str:
        """Nested JSON array of canonical scalar strings."""
        return json.dumps(np.vectorize(str, otypes=[object])(self.m).tolist())

    def __repr__(self):
        return f"TensorTable({self.name or '?'}, shape={self.shape})"


# -- exact linear algebra helpers ------------------------------------------------

def identity(F: Field, n: int):
    m = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            m[i, j] = F.one if i == j else F.zero
    return m


def zeros(F: Field, shape):
    m = np.empty(shape, dtype=object)
    m.reshape(-1)[:] = [F.zero] * m.size
    return m


def matmul(F: Field, a, b):
    """Product of object arrays skipping zero entries."""
    n, k = a.shape
    k2, p = b.shape
    assert k == k2
    brows = [[(j, b[i, j]) for j in range(p) if not b[i, j].is_zero()] for i in range(k)]
    out = zeros(F, (n, p))
    for i in range(n):
        acc: dict[int, Rat] = {}
        for l in range(k):
            x = a[i, l]
            if x.is_zero():
                continue
            for j, y in brows[l]:
                v = x * y
                acc[j] = acc[j] + v if j in acc else v
        for j, v in acc.items():
            out[i, j] = v
    return out


def kron(F: Field, a, b):
    n, m = a.shape
    p, r = b.shape
    out = zeros(F, (n * p, m * r))
    for i in range(n):
        for j in range(m):
            if a[i, j].is_zero():
                continue
            for k in range(p):
                for l in range(r):
                    out[i * p + k, j * r + l] = a[i, j] * b[k, l]
    return out


def rref(F: Field, m):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = m.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not a[i, c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = a[r, c].inv()
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and not a[i, c].is_zero():
                f = a[i, c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(F: Field, m) -> int:
    return len(rref(F, m)[1])


def inverse(F: Field, m):
    n = m.shape[0]
    aug = np.concatenate([m, identity(F, n)], axis=1)
    red, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise TensorError("singular matrix")
    return red[:, n:]


# -- builders -------------------------------------------------------------------

class Tensors:
    """All constant tables for one coefficient field."""

    def __init__(self, F: Field | None = None):
        self.F = F = F or qfield()
        q, qi = F.q, F.qinv
        self.q2 = F.q2
        self.eps = TensorTable(F, [[F.zero, F.one], [-q, F.zero]], "eps")
        self.eps_inv = TensorTable(F, inverse(F, self.eps.m), "eps_inv")
        self.rhat2 = self._rhat2(1)
        self.rhat2_inv = TensorTable(F, inverse(F, self.rhat2.m), "rhat2_inv")
        ps = identity(F, 4)
        pa = zeros(F, (4, 4))
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    for d in range(2):
                        t = self.eps_inv[a, b] * self.eps[c, d] / self.q2
                        pa[2 * a + b, 2 * c + d] = -t
                        ps[2 * a + b, 2 * c + d] = ps[2 * a + b, 2 * c + d] + t
        self.Ps2 = TensorTable(F, ps, "Ps2")
        self.Pa2 = TensorTable(F, pa, "Pa2")
        self.B = [q, F.one, -q, F.one]
        self.Bvec = [self.B[A] * self.B[C] for A in range(4) for C in range(4)]
        self.Q = TensorTable(F, -matmul(F, self.eps_inv.m, self.eps.m.T), "Q")
        self._k = None

    def _rhat2(self, sign):
        F = self.F
        m = zeros(F, (4, 4))
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    for d in range(2):
                        v = self.eps_inv[a, b] * self.eps[c, d]
                        if a == c and b == d:
                            v = v + F.q
                        m[2 * a + b, 2 * c + d] = v
        return TensorTable(F, m, "rhat2")

    # 2x2 and pair-space data
    def pair_tensor(self, R1: TensorTable, R2: TensorTable) -> TensorTable:
        F = self.F
        out = zeros(F, (16, 16))
        for A in range(4):
            a0, a1 = divmod(A, 2)
            for Bq in range(4):
                b0, b1 = divmod(Bq, 2)
                for C in range(4):
                    c0, c1 = divmod(C, 2)
                    for D in range(4):
                        d0, d1 = divmod(D, 2)
                        x = R1[2 * a0 + b0, 2 * c0 + d0]
                        if x.is_zero():
                            continue
                        y = R2[2 * a1 + b1, 2 * c1 + d1]
                        if y.is_zero():
                            continue
                        out[4 * A + Bq, 4 * C + D] = x * y
        return TensorTable(F, out)

    def to_vector(self, M: TensorTable) -> TensorTable:
        """Conjugate a pair-basis 16x16 operator by B (x) B."""
        F = self.F
        out = zeros(F, (16, 16))
        for i in range(16):
            for j in range(16):
                v = M[i, j]
                if not v.is_zero():
                    out[i, j] = v * self.Bvec[i] / self.Bvec[j]
        return TensorTable(F, out)

    @property
    def rhat4(self) -> TensorTable:
        t = self.to_vector(self.pair_tensor(self.rhat2, self.rhat2)).scale(self.F.qinv)
        t.name = "rhat4"
        return t

    def projectors(self) -> dict[str, TensorTable]:
        """P_s, P_a, P_a', P_A, P_t in the vector basis."""
        Ps, Pa = self.Ps2, self.Pa2
        out = {
            "Ps": self.to_vector(self.pair_tensor(Ps, Ps)),
            "Pa": self.to_vector(self.pair_tensor(Ps, Pa)),
            "Pa'": self.to_vector(self.pair_tensor(Pa, Ps)),
            "Pt": self.to_vector(self.pair_tensor(Pa, Pa)),
        }
        out["PA"] = out["Pa"] + out["Pa'"]
        for k, v in out.items():
            v.name = k
        return out

    def pair_projectors(self) -> dict[str, TensorTable]:
        """The same projectors in the quaternionic pair basis."""
        Ps, Pa = self.Ps2, self.Pa2
        out = {
            "Ps": self.pair_tensor(Ps, Ps),
            "Pa": self.pair_tensor(Ps, Pa),
            "Pa'": self.pair_tensor(Pa, Ps),
            "Pt": self.pair_tensor(Pa, Pa),
        }
        out["PA"] = out["Pa"] + out["Pa'"]
        return out

    @property
    def metric(self) -> TensorTable:
        F = self.F
        g = zeros(F, (4, 4))
        for A in range(4):
            a0, a1 = divmod(A, 2)
            for C in range(4):
                c0, c1 = divmod(C, 2)
                v = self.eps[a0, c0] * self.eps[a1, c1]
                if not v.is_zero():
                    g[A, C] = v / (self.B[A] * self.B[C])
        return TensorTable(F, g, "g")

    @property
    def metric_inv(self) -> TensorTable:
        return TensorTable(self.F, inverse(self.F, self.metric.m), "g_inv")

    def metric_pair(self) -> TensorTable:
        """g in the pair basis: g_{AB} = eps_{ab} eps_{a'b'}."""
        F = self.F
        g = zeros(F, (4, 4))
        for A in range(4):
            for C in range(4):
                g[A, C] = self.eps[A // 2, C // 2] * self.eps[A % 2, C % 2]
        return TensorTable(F, g, "g_pair")

    def trace_norm(self) -> Rat:
        """g^{sm} g_{sm}."""
        g, gi = self.metric, self.metric_inv
        tot = self.F.zero
        for s in range(4):
            for m in range(4):
                tot = tot + gi[s, m] * g[s, m]
        return tot

    def pt_from_metric(self) -> TensorTable:
        F = self.F
        g, gi = self.metric, self.metric_inv
        out = zeros(F, (16, 16))
        norm = self.q2 * self.q2
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    for l in range(4):
                        out[4 * i + j, 4 * k + l] = gi[i, j] * g[k, l] / norm
        return TensorTable(F, out, "Pt(g)")

    # q-epsilon table
    def eps4_entries(self, k=None, corrected=True):
        """The listed nonzero components, keyed by vector labels.

        The published table prints eps^{1,-1,2,-2} = q.  That value breaks
        the q-antisymmetry (P_s + P_t) eps = 0 in the first slot pair, while
        the value 1 satisfies it in all three slot pairs; ``corrected`` swaps
        in the consistent value (see :meth:`antisymmetry_defects`).
        """
        F = self.F
        q, qi = F.q, F.qinv
        one = F.one
        listed = {
            (-2, -1, 1, 2): qi * qi, (-2, 1, -1, 2): -qi * qi,
            (-2, -1, 2, 1): -qi, (-2, 1, 2, -1): qi,
            (-2, 2, -1, 1): one, (-2, 2, 1, -1): -one,
            (-1, -2, 1, 2): -qi, (-1, 1, -2, 2): one,
            (-1, -2, 2, 1): one, (-1, 2, -2, 1): -one,
            (-1, 2, 1, -2): q, (-1, 1, 2, -2): -one,
            (1, -1, -2, 2): -one, (1, -2, -1, 2): qi,
            (1, -1, 2, -2): q, (1, 2, -1, -2): -q,
            (1, 2, -2, -1): one, (1, -2, 2, -1): -one,
            (2, -2, -1, 1): -one, (2, -1, -2, 1): q,
            (2, 1, -2, -1): -q, (2, -2, 1, -1): one,
            (2, -1, 1, -2): -q * q, (2, 1, -1, -2): q * q,
        }
        if corrected:
            listed.update({lab: F(v) for lab, v in EPS4_CORRECTIONS.items()})
        if k is not None:
            listed[(-1, 1, -1, 1)] = k
            listed[(1, -1, 1, -1)] = -k
        return listed

    def _eps4_table(self, k, corrected=True) -> TensorTable:
        F = self.F
        t = zeros(F, (4, 4, 4, 4))
        for lab, v in self.eps4_entries(k, corrected).items():
            t[tuple(vidx(x) for x in lab)] = v
        return TensorTable(F, t, "eps4")

    def build_eps4(self) -> TensorTable:
        if self._k is None:
            raise UnresolvedConstant("call resolve_k() first")
        return self._eps4_table(self._k)

    def antisymmetry_defects(self, k, corrected=True) -> int:
        """Count components where (P_s + P_t) on an adjacent slot pair fails to kill eps."""
        F = self.F
        P = self.projectors()
        S = P["Ps"] + P["Pt"]
        e = self._eps4_table(k, corrected)
        bad = 0
        for pos in range(3):
            for idx in np.ndindex(4, 4, 4, 4):
                tot = F.zero
                row = 4 * idx[pos] + idx[pos + 1]
                for col in range(16):
                    s = S[row, col]
                    if s.is_zero():
                        continue
                    j = list(idx)
                    j[pos], j[pos + 1] = divmod(col, 4)
                    v = e[tuple(j)]
                    if not v.is_zero():
                        tot = tot + s * v
                if not tot.is_zero():
                    bad += 1
        return bad

    def lowered_hodge_matrix(self, k, corrected=True) -> TensorTable:
        """16x16 matrix M[(i,j),(h,k)] = eps_{kh}^{ij} / [2]_q, lowered with g."""
        F = self.F
        e = self._eps4_table(k, corrected)
        g = self.metric
        out = zeros(F, (16, 16))
        for i in range(4):
            for j in range(4):
                for h in range(4):
                    for kk in range(4):
                        tot = F.zero
                        for a in range(4):
                            gka = g[kk, a]
                            if gka.is_zero():
                                continue
                            for b in range(4):
                                ghb = g[h, b]
                                if ghb.is_zero():
                                    continue
                                v = e[a, b, i, j]
                                if not v.is_zero():
                                    tot = tot + gka * ghb * v
                        out[4 * i + j, 4 * h + kk] = tot / self.q2
        return TensorTable(F, out)

    def hodge_projector_matrix(self) -> TensorTable:
        P = self.projectors()
        return P["Pa"] - P["Pa'"]

    def resolve_k(self, corrected=True) -> Rat:
        """Solve the affine equations in k making both Hodge matrices agree."""
        F = self.F
        m0 = self.lowered_hodge_matrix(F.zero, corrected)
        m1 = self.lowered_hodge_matrix(F.one, corrected) - m0
        target = self.hodge_projector_matrix()
        sol = None
        for c0, c1, t in zip(m0.m.flat, m1.m.flat, target.m.flat):
            rhs = t - c0
            if c1.is_zero():
                if not rhs.is_zero():
                    raise NoSolution("k-independent entry disagrees")
                continue
            cand = rhs / c1
            if sol is None:
                sol = cand
            elif sol != cand:
                raise NoSolution(f"inconsistent values {sol} and {cand}")
        if sol is None:
            raise NonUnique("k does not enter the identity")
        if corrected:
            self._k = sol
        return sol

    @property
    def k(self) -> Rat:
        if self._k is None:
            self.resolve_k()
        return self._k

    # identity checks
    def eps_rhat_residuals(self, sign: int):
        """eps_{a l} R^{+-1 l m}_{b c} - q^{+-1} R^{-+1 m l}_{a b} eps_{l c}."""
        F = self.F
        R = self.rhat2 if sign > 0 else self.rhat2_inv
        Rm = self.rhat2_inv if sign > 0 else self.rhat2
        qs = F.q if sign > 0 else F.qinv
        out = {}
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    for m in range(2):
                        lhs = F.zero
                        rhs = F.zero
                        for l in range(2):
                            lhs = lhs + self.eps[a, l] * R[2 * l + m, 2 * b + c]
                            rhs = rhs + Rm[2 * m + l, 2 * a + b] * self.eps[l, c]
                        out[(a + 1, b + 1, c + 1, m + 1)] = lhs - qs * rhs
        return out


def braid_residual(F: Field, R: TensorTable, n: int) -> TensorTable:
    """(R (x) 1)(1 (x) R)(R (x) 1) - (1 (x) R)(R (x) 1)(1 (x) R) on V^3, dim V = n."""
    I = identity(F, n)
    R1 = kron(F, R.m, I)
    R2 = kron(F, I, R.m)
    lhs = matmul(F, matmul(F, R1, R2), R1)
    rhs = matmul(F, matmul(F, R2, R1), R2)
    return TensorTable(F, lhs - rhs)


@lru_cache(maxsize=None)
def _tensors_for(F: Field) -> Tensors:
    return Tensors(F)


def tensors(F: Field | None = None) -> Tensors:
    """Cached tables for a field (the shared symbolic one by default)."""
    return _tensors_for(F or qfield())


# Module-level builders mirroring the public operation names.
def build_eps(F=None):
    return tensors(F).eps


def build_rhat2(F=None):
    return tensors(F).rhat2


def build_rhat4(F=None):
    return tensors(F).rhat4


def build_projectors(F=None):
    return tensors(F).projectors()


def build_metric(F=None):
    return tensors(F).metric


def build_eps4(F=None):
    t = tensors(F)
    t.k
    return t.build_eps4()


def resolve_k(F=None):
    return tensors(F).resolve_k()


def check_eps_rhat_identity(F=None) -> dict:
    t = tensors(F)
    res = {}
    for sign in (1, -1):
        r = t.eps_rhat_residuals(sign)
        res[sign] = [k for k, v in r.items() if not v.is_zero()]
    return {"ok": not res[1] and not res[-1], "failures": res}


def specialize_table(t: TensorTable, qv) -> list:
    return [[v.evaluate(qv, 1, 1) for v in row] for row in t.m]


def frac(x) -> Fraction:
    return Fraction(x)
