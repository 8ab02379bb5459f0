"""Expression language for the command line.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*`` and ``/``; all binary operators are left associative)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT | NAME | NAME "[" INT ("," INT)* "]" | NAME "(" args ")" | "(" expr ")"

``/`` divides by a scalar.  Names: q, absx, rho (instanton size), U, Uinv,
Lam, theta, T, Tbar, x[a,b], xi[a,b], pd[a,b], y[m,a,b], rho[m] (the
generator rho_m^2); calls d, star, hodge, act, nf, A, Ahat, F, P.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import RadialFn, Rat, qfield
from .forms import MatForm, d, hodge2, theta
from .groupcalc import tmat
from .ncalg import NCElem, algebra
from .ncalg.algebra import NCError

__all__ = [
    "ExprSyntaxError",
    "UnknownSymbol",
    "NotSpecializable",
    "parse",
    "to_text",
    "Evaluator",
    "evaluate",
    "canonical",
    "specialize_value",
]


class ExprSyntaxError(SyntaxError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


class UnknownSymbol(NameError):
    pass


class NotSpecializable(ValueError):
    pass


# ----------------------------------------------------------------------
# AST
@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Gen:
    name: str
    index: tuple


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


SCALARS = {"q", "absx", "rho"}
ELEMENTS = {"U", "Uinv", "Lam", "theta"}
MATRICES = {"T", "Tbar"}
INDEXED = {"x": 2, "xi": 2, "pd": 2, "y": 3, "rho": 1}
CALLS = {"d": 1, "star": 1, "hodge": 1, "act": 2, "nf": 1, "A": 1, "Ahat": 1, "F": 1, "P": 1}

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\S)")


def _tokens(text):
    out = [(m.lastgroup, m.group(), m.start()) for m in _TOKEN.finditer(text) if m.lastgroup != "ws"]
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok, what=None):
        kind, val, pos = tok
        desc = "end of input" if kind == "end" else repr(val)
        msg = f"unexpected {desc}" + (f", expected {what}" if what else "")
        raise ExprSyntaxError(msg, self.text, pos)

    def expect(self, val):
        t = self.next()
        if t[1] != val or t[0] == "end":
            self.fail(t, repr(val))
        return t

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(self.peek(), "operator")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            e = Bin(op, e, self.term())
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.next()[1]
            e = Bin(op, e, self.unary())
        return e

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.next()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.next()
                sign = -1
            t = self.next()
            if t[0] != "int":
                self.fail(t, "integer exponent")
            return Pow(base, sign * int(t[1]))
        return base

    def ints(self, n):
        vals = []
        for k in range(n):
            if k:
                self.expect(",")
            t = self.next()
            if t[0] != "int":
                self.fail(t, "integer index")
            vals.append(int(t[1]))
        self.expect("]")
        return tuple(vals)

    def atom(self):
        t = self.next()
        kind, val, pos = t
        if kind == "int":
            return Num(int(val))
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "name":
            nxt = self.peek()
            if nxt[1] == "[" and nxt[0] == "op":
                if val not in INDEXED:
                    raise UnknownSymbol(f"{val!r} takes no index (column {pos + 1})")
                self.next()
                return Gen(val, self.ints(INDEXED[val]))
            if nxt[1] == "(" and nxt[0] == "op":
                if val not in CALLS:
                    raise UnknownSymbol(f"unknown function {val!r} (column {pos + 1})")
                self.next()
                args = [self.expr()]
                while self.peek()[1] == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != CALLS[val]:
                    raise ExprSyntaxError(f"{val} takes {CALLS[val]} argument(s)", self.text, pos)
                return Call(val, tuple(args))
            if val in SCALARS or val in ELEMENTS or val in MATRICES:
                return Name(val)
            raise UnknownSymbol(f"unknown symbol {val!r} (column {pos + 1})")
        self.fail(t, "an operand")


def parse(text: str):
    return _Parser(text).parse()


# ----------------------------------------------------------------------
# printing
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e) -> int:
    if isinstance(e, Bin):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def to_text(e) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Gen):
        return f"{e.name}[{','.join(map(str, e.index))}]"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(to_text(a) for a in e.args)})"
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        return f"-{inner}" if _prec(e.arg) >= 3 else f"-({inner})"
    if isinstance(e, Pow):
        b = to_text(e.base)
        if _prec(e.base) < 5:
            b = f"({b})"
        return f"{b}^{e.exp}"
    p = _PREC[e.op]
    left = to_text(e.left)
    if _prec(e.left) < p:
        left = f"({left})"
    right = to_text(e.right)
    if _prec(e.right) <= p:
        right = f"({right})"
    sep = " " if p == 1 else ""
    return f"{left}{sep}{e.op}{sep}{right}"


# ----------------------------------------------------------------------
# evaluation
def _uses(e, pred) -> bool:
    if pred(e):
        return True
    if isinstance(e, (Neg,)):
        return _uses(e.arg, pred)
    if isinstance(e, Pow):
        return _uses(e.base, pred)
    if isinstance(e, Bin):
        return _uses(e.left, pred) or _uses(e.right, pred)
    if isinstance(e, Call):
        return any(_uses(a, pred) for a in e.args)
    return False


def _copies(e) -> int:
    found = []

    def pred(x):
        if isinstance(x, Gen) and x.name in ("y", "rho"):
            found.append(x.index[0])
        return False

    _uses(e, pred)
    return max(found, default=0)


class Evaluator:
    """Evaluate an AST to a scalar (Rat), an algebra element or a 2x2 matrix."""

    def __init__(self, variant="standard", qvalue=None, order=None, n=None):
        self.variant = variant
        self.F = qfield(qvalue)
        self.order = order
        self.n = n

    def algebra_for(self, e):
        n = _copies(e) if self.n is None else self.n
        kw = {"F": self.F}
        if self.order is not None:
            kw["order"] = self.order
        if n:
            return algebra(self.variant, "braided", n, **kw)
        return algebra(self.variant, "localized", 0, **kw)

    def run(self, e):
        self.alg = self.algebra_for(e)
        return self.ev(e)

    # scalars are Rat until they meet an element
    def lift(self, v):
        if isinstance(v, (Rat, RadialFn)):
            return self.alg.scalar(v)
        return v

    def ev(self, e):
        A, F = self.alg, self.F
        if isinstance(e, Num):
            return F(e.value)
        if isinstance(e, Name):
            nm = e.name
            if nm == "q":
                return F.q
            if nm == "absx":
                return F.w
            if nm == "rho":
                return F.r
            if nm == "U":
                return A.U()
            if nm == "Uinv":
                return A.Uinv()
            if nm == "Lam":
                return A.lam()
            if nm == "theta":
                return theta(A)
            if nm == "T":
                return tmat(A)
            if nm == "Tbar":
                return tmat(A).bar()
        if isinstance(e, Gen):
            i = e.index
            if e.name == "x":
                return A.x(*i)
            if e.name == "xi":
                return A.xi(*i)
            if e.name == "pd":
                return A.pd(*i)
            if e.name == "y":
                return A.y(*i)
            if e.name == "rho":
                return A.rho(*i)
        if isinstance(e, Neg):
            v = self.ev(e.arg)
            return v.map(lambda t: -t) if isinstance(v, MatForm) else -v
        if isinstance(e, Pow):
            v = self.ev(e.base)
            if isinstance(v, MatForm):
                raise NotSpecializable("matrix powers are not supported")
            if e.exp < 0:
                if isinstance(v, (Rat, RadialFn)):
                    return v ** e.exp
                raise NotSpecializable("negative powers only of scalars")
            out = F.one if isinstance(v, (Rat, RadialFn)) else A.one
            for _ in range(e.exp):
                out = out * v
            return out
        if isinstance(e, Bin):
            return self.binop(e.op, self.ev(e.left), self.ev(e.right))
        if isinstance(e, Call):
            return self.call(e)
        raise TypeError(f"cannot evaluate {e!r}")

    def binop(self, op, a, b):
        scal = (Rat, RadialFn)
        if op == "/":
            if not isinstance(b, scal):
                b = _as_scalar(b)
            inv = b.inv()
            if isinstance(a, MatForm):
                return a.map(lambda t: t.scale(inv))
            return a * inv if isinstance(a, scal) else a.scale(inv)
        if isinstance(a, scal) and isinstance(b, scal):
            return {"+": a + b, "-": a - b, "*": a * b}[op]
        if isinstance(a, MatForm) or isinstance(b, MatForm):
            if op == "*":
                if isinstance(a, MatForm) and isinstance(b, MatForm):
                    return a @ b
                if isinstance(a, MatForm):
                    return a.rmul(self.lift(b))
                return b.lmul(self.lift(a))
            if not (isinstance(a, MatForm) and isinstance(b, MatForm)):
                a = a if isinstance(a, MatForm) else MatForm.identity(self.alg, self.lift(a))
                b = b if isinstance(b, MatForm) else MatForm.identity(self.alg, self.lift(b))
            return a + b if op == "+" else a - b
        a, b = self.lift(a), self.lift(b)
        return {"+": a + b, "-": a - b, "*": a * b}[op]

    def call(self, e: Call):
        from . import gauge

        A = self.alg
        nm = e.name
        if nm in ("A", "Ahat", "F", "P"):
            r = self.ev(e.args[0])
            if not isinstance(r, (Rat, RadialFn)):
                raise NotSpecializable(f"{nm}(rho) needs a scalar size")
            rho2 = r * r
            if nm == "A":
                return gauge.instanton_A(A, rho2)
            if nm == "Ahat":
                return gauge.singular_gauge(A, rho2)
            if nm == "F":
                return gauge.field_strength(gauge.instanton_A(A, rho2))
            if rho2 != self.F.p:
                raise NotSpecializable("the projector module is built for the symbolic size rho")
            return gauge.projector(A)[1]
        vals = [self.ev(a) for a in e.args]
        v = self.lift(vals[0])
        if nm == "nf":
            return v
        if nm == "d":
            return d(v)
        if nm == "star":
            return v.map(A.star).T() if isinstance(v, MatForm) else A.star(v)
        if nm == "hodge":
            return v.map(hodge2) if isinstance(v, MatForm) else hodge2(v)
        if nm == "act":
            return A.act(v, self.lift(vals[1]))
        raise UnknownSymbol(nm)


def _as_scalar(v):
    if isinstance(v, NCElem):
        if v.is_scalar():
            return v.scalar_part()
        raise NotSpecializable("division by a non-scalar element")
    if isinstance(v, (Rat, RadialFn)):
        return v
    raise NotSpecializable("division by a matrix")


def evaluate(text: str, variant="standard", qvalue=None, **kw):
    return Evaluator(variant, qvalue, **kw).run(parse(text))


def canonical(value) -> str:
    """Elements print as in the normal form; matrices as JSON arrays."""
    if hasattr(value, "to_json") and not isinstance(value, (NCElem, Rat)):
        j = value.to_json()
        return j if isinstance(j, str) else json.dumps(j)
    return str(value)


def specialize_value(value, qv, uv=None, pv=None) -> Fraction:
    """Exact rational value of a scalar result."""
    if isinstance(value, MatForm):
        raise NotSpecializable("matrix-valued expression")
    if isinstance(value, NCElem):
        if not value.is_scalar():
            raise NotSpecializable("noncommutative words remain after normal ordering")
        value = value.scalar_part()
    try:
        return value.evaluate(qv, uv, pv)
    except NCError as exc:  # pragma: no cover
        raise NotSpecializable(str(exc)) from exc
