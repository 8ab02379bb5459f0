"""Exact scalar coefficients.

A :class:`Field` is the rational function field Q(q)(w, r), where ``w`` is the
radial generator ``|x|`` (so ``u = |x|^2 = w^2``) and ``r`` is the instanton
size ``rho`` (so ``p = rho^2 = r^2``).  The deformation parameter ``q`` is
either a free variable or a fixed rational number; the latter gives the cheap
numeric falsifier used by ``qhopf verify --q-numeric``.

Elements (:class:`Rat`) keep a factored denominator: a numerator polynomial
with rational coefficients over a tuple of ``(factor_id, exponent)`` pairs,
each factor a monic irreducible polynomial interned in the field.  The form
is canonical, so equality is structural and no gcd runs on the hot path.

:class:`RadialFn` adjoins the square roots ``s_k = sqrt(q^{2k} u / (q^{2k} u + p))``
(``s = s_0``) needed by the instanton projector; the shift ``sigma`` maps
``s_k`` to ``s_{k+1}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable

import flint

__all__ = [
    "CoefficientError",
    "DivisionByZero",
    "PoleAtPoint",
    "IrrationalSquareRoot",
    "Field",
    "Rat",
    "RadialFn",
    "qfield",
    "qr_arith",
    "sigma_shift",
    "specialize",
]


class CoefficientError(ArithmeticError):
    pass


class DivisionByZero(CoefficientError, ZeroDivisionError):
    pass


class PoleAtPoint(CoefficientError):
    pass


class IrrationalSquareRoot(CoefficientError):
    pass


def _exact_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise IrrationalSquareRoot(f"negative radicand {x}")
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise IrrationalSquareRoot(f"{x} is not the square of a rational")
    return Fraction(rn, rd)


def _fmpq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _items(poly):
    return [(tuple(int(k) for k in mono), c) for mono, c in poly.to_dict().items()]


class Field:
    """Q(q)(w, r) with ``q`` symbolic (``qvalue=None``) or a fixed rational."""

    VAR_NAMES = {"q": "q", "w": "absx", "r": "rho"}

    def __init__(self, qvalue=None):
        self.qvalue = None if qvalue is None else Fraction(qvalue)
        if self.qvalue == 0:
            raise ValueError("q must be nonzero")
        self.symbolic = self.qvalue is None
        names = ("q", "w", "r") if self.symbolic else ("w", "r")
        self.names = names
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        gens = self.ctx.gens()
        if self.symbolic:
            self._qp, self._wp, self._rp = gens
        else:
            self._qp = self.ctx.from_dict({(0, 0): _fmpq(self.qvalue)})
            self._wp, self._rp = gens
        self._w_slot = names.index("w")
        self._r_slot = names.index("r")
        self._factors: list = []
        self._factor_ids: dict[str, int] = {}
        self._factor_radial: list[bool] = []
        self._factor_cache: dict[str, tuple] = {}
        self._shift_cache: dict[tuple[int, int], tuple] = {}
        self._pzero = self.ctx.from_dict({})
        self._pone = self.ctx.from_dict({(0,) * len(names): 1})
        self.zero = Rat(self, self._pzero, ())
        self.one = Rat(self, self._pone, ())
        self.q = self.from_poly(self._qp)
        self.w = Rat(self, self._wp, ())
        self.r = Rat(self, self._rp, ())
        self.u = self.w * self.w
        self.p = self.r * self.r
        self.qinv = self.q.inv()

    def __repr__(self):
        return "Field(q)" if self.symbolic else f"Field(q={self.qvalue})"

    # -- construction -------------------------------------------------------
    def __call__(self, x) -> "Rat":
        if isinstance(x, Rat):
            if x.F is not self:
                raise TypeError("element of a different field")
            return x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            if x == 0:
                return self.zero
            return Rat(self, self._pone * _fmpq(x), ())
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def from_poly(self, poly) -> "Rat":
        return Rat(self, poly, ())

    def fraction(self, num, den) -> "Rat":
        return self.from_poly(num) / self.from_poly(den)

    def qpow(self, k: int) -> "Rat":
        return self.q ** k

    @property
    def q2(self) -> "Rat":
        """The q-number [2]_q = q + 1/q."""
        return self.q + self.qinv

    # -- factor table -------------------------------------------------------
    def _intern(self, poly) -> int:
        key = str(poly)
        fid = self._factor_ids.get(key)
        if fid is None:
            fid = len(self._factors)
            self._factors.append(poly)
            self._factor_ids[key] = fid
            degs = poly.degrees()
            self._factor_radial.append(degs[self._w_slot] > 0 or degs[self._r_slot] > 0)
        return fid

    def _factorize(self, poly):
        """Return (constant, ((fid, e), ...)) with monic irreducible factors."""
        key = str(poly)
        hit = self._factor_cache.get(key)
        if hit is not None:
            return hit
        c, facs = poly.factor()
        out = {}
        for f, e in facs:
            lc = f.leading_coefficient()
            if lc != 1:
                f = f / lc
                c = c * lc ** e
            fid = self._intern(f)
            out[fid] = out.get(fid, 0) + e
        res = (c, tuple(sorted(out.items())))
        self._factor_cache[key] = res
        return res

    def _scale_poly(self, poly, k: int):
        """poly(w -> q^k w)."""
        if k == 0:
            return poly
        if self.symbolic:
            if k < 0:
                raise ValueError("negative symbolic shift needs _scale_poly_neg")
            return poly.compose(self._qp, self._qp ** k * self._wp, self._rp)
        c = _fmpq(self.qvalue ** k)
        return poly.compose(c * self._wp, self._rp)

    def _scale_poly_neg(self, poly, k: int):
        # w -> q^-k w is not polynomial in q; clear by q^(k*deg_w) and let the caller divide.
        d = {}
        for mono, c in _items(poly):
            a, b, e = mono
            d[(a, b, e)] = d.get((a, b, e), 0) + c
        # q^{-k b} w^b  ->  multiply all by q^{k*D}
        D = max((m[1] for m in d), default=0)
        out = {}
        for (a, b, e), c in d.items():
            key = (a + k * (D - b), b, e)
            out[key] = out.get(key, 0) + c
        return self.ctx.from_dict(out), D * k

    def _shift_factor(self, fid: int, k: int):
        """sigma^k of a stored factor: (Rat numerator-constant, den factors)."""
        key = (fid, k)
        hit = self._shift_cache.get(key)
        if hit is not None:
            return hit
        f = self._factors[fid]
        if self.symbolic and k < 0:
            g, qexp = self._scale_poly_neg(f, -k)
            val = Rat(self, g, ()) / Rat(self, self._qp ** qexp, ()) if qexp else Rat(self, g, ())
        else:
            val = Rat(self, self._scale_poly(f, k), ())
        self._shift_cache[key] = val
        return val

    # -- specialization -----------------------------------------------------
    def eval_poly(self, poly, qv, uv, pv, wv=None, rv=None) -> Fraction:
        total = Fraction(0)
        for mono, c in _items(poly):
            if self.symbolic:
                a, b, e = mono
            else:
                a, (b, e) = 0, mono
            term = _frac(c)
            if a:
                if qv is None:
                    raise PoleAtPoint("q value required")
                term *= Fraction(qv) ** a
            if b:
                if uv is None:
                    raise PoleAtPoint("u value required")
                term *= Fraction(uv) ** (b // 2)
                if b % 2:
                    if wv is None:
                        wv = _exact_sqrt(Fraction(uv))
                    term *= wv
            if e:
                if pv is None:
                    raise PoleAtPoint("p value required")
                term *= Fraction(pv) ** (e // 2)
                if e % 2:
                    if rv is None:
                        rv = _exact_sqrt(Fraction(pv))
                    term *= rv
            total += term
        return total


class Rat:
    """Canonical element num / prod(factor_i ** e_i) of a :class:`Field`."""

    __slots__ = ("F", "num", "den", "_radial", "_hash")

    def __init__(self, F: Field, num, den: tuple):
        self.F = F
        self.num = num
        self.den = den
        self._radial = None
        self._hash = None

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return not self.den and self.num.is_one()

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    @property
    def radial(self) -> bool:
        """True when the element depends on |x| or rho."""
        if self._radial is None:
            F = self.F
            degs = self.num.degrees()
            rad = degs[F._w_slot] > 0 or degs[F._r_slot] > 0
            if not rad:
                rad = any(F._factor_radial[fid] for fid, _ in self.den)
            self._radial = rad
        return self._radial

    def depends_on_q(self) -> bool:
        if not self.F.symbolic:
            return False
        if self.num.degrees()[0] > 0:
            return True
        return any(self.F._factors[fid].degrees()[0] > 0 for fid, _ in self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.F(other)
        if isinstance(other, RadialFn):
            return other == self
        if not isinstance(other, Rat):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), self.den))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Rat):
            return other
        if isinstance(other, (int, Fraction)):
            return self.F(other)
        return None

    def _cancel(self, num, den):
        """Divide num by den factors as far as possible."""
        if not den or num.is_zero() or num.is_constant():
            return num, den
        factors = self.F._factors
        out = []
        for fid, e in den:
            f = factors[fid]
            while e:
                quo, rem = divmod(num, f)
                if not rem.is_zero():
                    break
                num = quo
                e -= 1
            if e:
                out.append((fid, e))
        return num, tuple(out)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            num = self.num + o.num
            if num.is_zero():
                return self.F.zero
            num, den = self._cancel(num, self.den)
            return Rat(self.F, num, den)
        da, db = dict(self.den), dict(o.den)
        factors = self.F._factors
        ma = self.F._pone
        mb = self.F._pone
        den = {}
        for fid in set(da) | set(db):
            ea, eb = da.get(fid, 0), db.get(fid, 0)
            e = max(ea, eb)
            den[fid] = e
            if e > ea:
                ma = ma * factors[fid] ** (e - ea)
            if e > eb:
                mb = mb * factors[fid] ** (e - eb)
        num = self.num * ma + o.num * mb
        if num.is_zero():
            return self.F.zero
        num, dent = self._cancel(num, tuple(sorted(den.items())))
        return Rat(self.F, num, dent)

    __radd__ = __add__

    def __neg__(self):
        return Rat(self.F, -self.num, self.den)

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
        if self.num.is_zero() or o.num.is_zero():
            return self.F.zero
        if not self.den and not o.den:
            return Rat(self.F, self.num * o.num, ())
        na, db = self._cancel(self.num, o.den)
        nb, da = self._cancel(o.num, self.den)
        if not da:
            den = db
        elif not db:
            den = da
        else:
            d = dict(da)
            for fid, e in db:
                d[fid] = d.get(fid, 0) + e
            den = tuple(sorted(d.items()))
        return Rat(self.F, na * nb, den)

    __rmul__ = __mul__

    def inv(self) -> "Rat":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        F = self.F
        num = F._pone
        for fid, e in self.den:
            num = num * F._factors[fid] ** e
        c, facs = F._factorize(self.num)
        return Rat(F, num / c, facs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return self.F.one
        if not self.den:
            return Rat(self.F, self.num ** k, ())
        return Rat(self.F, self.num ** k, tuple((fid, e * k) for fid, e in self.den))

    # -- the |x| scaling automorphism ---------------------------------------
    def shift(self, k: int) -> "Rat":
        """Apply w -> q^k w (so u -> q^{2k} u); q and rho are fixed."""
        if k == 0 or not self.radial:
            return self
        F = self.F
        if F.symbolic and k < 0:
            g, qexp = F._scale_poly_neg(self.num, -k)
            res = Rat(F, g, ())
            if qexp:
                res = res / Rat(F, F._qp ** qexp, ())
        else:
            res = Rat(F, F._scale_poly(self.num, k), ())
        for fid, e in self.den:
            if F._factor_radial[fid]:
                res = res / F._shift_factor(fid, k) ** e
            else:
                res = res * Rat(F, F._pone, ((fid, e),))
        return res

    def sigma(self, k: int = 1) -> "Rat":
        return self.shift(k)

    def du(self) -> "Rat":
        """d/du with u = w^2, i.e. (1/(2w)) d/dw at fixed q and rho."""
        F = self.F
        s = F._w_slot
        dn = self.num.derivative(s)
        dw = F.zero if dn.is_zero() else Rat(F, *self._cancel(dn, self.den))
        for fid, e in self.den:
            dp = F._factors[fid].derivative(s)
            if not dp.is_zero():
                dw = dw - self * Rat(F, dp, ()) * e / Rat(F, F._factors[fid], ())
        return dw / (2 * F.w)

    # -- specialization -----------------------------------------------------
    def evaluate(self, qv=None, uv=None, pv=None) -> Fraction:
        F = self.F
        if not F.symbolic:
            qv = None
        wv = rv = None
        num = F.eval_poly(self.num, qv, uv, pv, wv, rv)
        den = Fraction(1)
        for fid, e in self.den:
            val = F.eval_poly(F._factors[fid], qv, uv, pv, wv, rv)
            if val == 0:
                raise PoleAtPoint(f"denominator factor {F._factors[fid]} vanishes")
            den *= val ** e
        return num / den

    def at_q(self, target: Field) -> "Rat":
        """Map into a field with fixed q (partial specialization)."""
        F = self.F
        if not F.symbolic:
            raise ValueError("q is already numeric")
        qv = _fmpq(target.qvalue)

        def conv(poly):
            out = {}
            for (a, b, e), c in _items(poly):
                key = (b, e)
                out[key] = out.get(key, 0) + c * qv ** a
            return target.ctx.from_dict({k: v for k, v in out.items() if v != 0})

        res = Rat(target, conv(self.num), ())
        for fid, e in self.den:
            d = conv(F._factors[fid])
            if d.is_zero():
                raise PoleAtPoint(f"factor {F._factors[fid]} vanishes at q={target.qvalue}")
            res = res / Rat(target, d, ()) ** e
        return res

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a rational constant")
        return _frac(self.num.leading_coefficient()) if not self.num.is_zero() else Fraction(0)

    # -- canonical printing -------------------------------------------------
    def numerator_denominator(self):
        """(N, D) integer-coefficient polynomials, gcd 1, D with positive lead."""
        F = self.F
        den = F._pone
        for fid, e in self.den:
            den = den * F._factors[fid] ** e
        num = self.num
        from math import lcm
        dens = [int(c.q) for c in list(num.coeffs()) + list(den.coeffs())]
        L = lcm(*dens) if dens else 1
        num = num * L
        den = den * L
        from math import gcd
        g = 0
        for c in list(num.coeffs()) + list(den.coeffs()):
            g = gcd(g, int(c.p))
        if g > 1:
            num = num / g
            den = den / g
        return num, den

    def __str__(self):
        return format_rat(self)

    def __repr__(self):
        return f"Rat({self})"


def _poly_terms(F: Field, poly, qshift: int = 0):
    terms = []
    for mono, c in _items(poly):
        if F.symbolic:
            a, b, e = mono
        else:
            a, (b, e) = 0, mono
        terms.append(((a - qshift, b, e), _frac(c)))
    terms.sort(key=lambda t: (t[0][1], t[0][2], t[0][0]))
    return terms


def _mono_str(a, b, e) -> str:
    parts = []
    for name, k in (("q", a), ("absx", b), ("rho", e)):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _terms_str(terms) -> str:
    out = []
    for (a, b, e), c in terms:
        mono = _mono_str(a, b, e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        out.append((sign, body))
    if not out:
        return "0"
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def format_rat(x: Rat) -> str:
    F = x.F
    if x.is_zero():
        return "0"
    num, den = x.numerator_denominator()
    dterms = dict(_items(den))
    if len(dterms) == 1:
        (mono, c), = dterms.items()
        qexp = mono[0] if F.symbolic else 0
        other = mono[1:] if F.symbolic else mono
        if not any(other):
            terms = [((a, b, e), cc / _frac(c)) for (a, b, e), cc in _poly_terms(F, num, qexp)]
            return _terms_str(terms)
    n = _terms_str(_poly_terms(F, num))
    d = _terms_str(_poly_terms(F, den))
    return f"({n})/({d})"


class RadialFn:
    """Element of Rat[s_k : k in Z] with s_k^2 = q^{2k} u / (q^{2k} u + p).

    Stored as ``{monomial: Rat}`` where a monomial is a sorted tuple of
    distinct shift indices; the empty tuple is the s-free part.
    """

    __slots__ = ("F", "parts")

    def __init__(self, F: Field, parts: dict):
        self.F = F
        self.parts = {m: c for m, c in parts.items() if not c.is_zero()}

    @classmethod
    def of(cls, x) -> "RadialFn":
        if isinstance(x, RadialFn):
            return x
        return cls(x.F, {(): x})

    @classmethod
    def s(cls, F: Field, k: int = 0) -> "RadialFn":
        return cls(F, {(k,): F.one})

    @staticmethod
    def s_square(F: Field, k: int) -> Rat:
        u = F.u.shift(k)
        return u / (u + F.p)

    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    @property
    def radial(self):
        return bool(self.parts) and (any(m for m in self.parts) or any(c.radial for c in self.parts.values()))

    def is_constant(self):
        return all(not m for m in self.parts) and all(c.is_constant() for c in self.parts.values())

    def is_one(self):
        return list(self.parts) == [()] and self.parts[()].is_one()

    def odd(self) -> bool:
        return any(m for m in self.parts)

    def rat(self) -> Rat:
        """The s-free value; raises if the element involves some s_k."""
        if self.odd():
            raise ValueError("element involves a square root s_k")
        return self.parts.get((), self.F.zero)

    def _coerce(self, o):
        if isinstance(o, RadialFn):
            return o
        if isinstance(o, Rat):
            return RadialFn.of(o)
        if isinstance(o, (int, Fraction)):
            return RadialFn.of(self.F(o))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.parts.keys() == o.parts.keys() and all(self.parts[m] == o.parts[m] for m in self.parts)

    def __hash__(self):
        return hash(tuple(sorted((m, hash(c)) for m, c in self.parts.items())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        parts = dict(self.parts)
        for m, c in o.parts.items():
            parts[m] = parts[m] + c if m in parts else c
        return RadialFn(self.F, parts)

    __radd__ = __add__

    def __neg__(self):
        return RadialFn(self.F, {m: -c for m, c in self.parts.items()})

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
        F = self.F
        parts: dict = {}
        for m1, c1 in self.parts.items():
            for m2, c2 in o.parts.items():
                s1, s2 = set(m1), set(m2)
                c = c1 * c2
                for k in s1 & s2:
                    c = c * RadialFn.s_square(F, k)
                m = tuple(sorted(s1 ^ s2))
                parts[m] = parts[m] + c if m in parts else c
        return RadialFn(F, parts)

    __rmul__ = __mul__

    def _conjugate(self, k: int) -> "RadialFn":
        return RadialFn(self.F, {m: (-c if k in m else c) for m, c in self.parts.items()})

    def inv(self) -> "RadialFn":
        if not self.parts:
            raise DivisionByZero("inverse of zero")
        num = RadialFn.of(self.F.one)
        den = self
        while True:
            ks = sorted({k for m in den.parts for k in m})
            if not ks:
                break
            conj = den._conjugate(ks[0])
            num = num * conj
            den = den * conj
        return num * RadialFn.of(den.rat().inv())

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = RadialFn.of(self.F.one)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "RadialFn":
        if k == 0:
            return self
        return RadialFn(
            self.F, {tuple(sorted(j + k for j in m)): c.shift(k) for m, c in self.parts.items()}
        )

    sigma = shift

    def evaluate(self, qv=None, uv=None, pv=None) -> Fraction:
        total = Fraction(0)
        for m, c in self.parts.items():
            term = c.evaluate(qv, uv, pv)
            for k in m:
                term *= _exact_sqrt(RadialFn.s_square(self.F, k).evaluate(qv, uv, pv))
            total += term
        return total

    def at_q(self, target: Field) -> "RadialFn":
        return RadialFn(target, {m: c.at_q(target) for m, c in self.parts.items()})

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for m in sorted(self.parts):
            c = self.parts[m]
            if not m:
                chunks.append(str(c))
            else:
                sname = "*".join("s" if k == 0 else f"s[{k}]" for k in m)
                chunks.append(f"({c})*{sname}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"RadialFn({self})"


_QFIELD: Field | None = None
_NUMERIC: dict = {}


def qfield(qvalue=None) -> Field:
    """The shared field: symbolic Q(q)(|x|, rho), or one per fixed rational q."""
    global _QFIELD
    if qvalue is not None:
        key = Fraction(qvalue)
        F = _NUMERIC.get(key)
        if F is None:
            F = _NUMERIC[key] = Field(key)
        return F
    if _QFIELD is None:
        _QFIELD = Field()
    return _QFIELD


def qr_arith(a, b, op: str):
    """Field operation on QRat/RadialFn values: add, mul, neg (of a), inv (of a)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


def sigma_shift(f, k: int):
    """sigma^k with sigma(u) = q^2 u."""
    return f.shift(k)


def specialize(f, qv=None, uv=None, pv=None) -> Fraction:
    """Exact rational value at q=qv, u=|x|^2=uv, p=rho^2=pv."""
    if qv is not None and Fraction(qv) == 0:
        raise PoleAtPoint("q = 0")
    return f.evaluate(qv, uv, pv)


def as_coefficient(F: Field, x):
    if isinstance(x, (Rat, RadialFn)):
        return x
    return F(x)


def sum_rats(F: Field, items: Iterable[Rat]) -> Rat:
    total = F.zero
    for it in items:
        total = total + it
    return total
