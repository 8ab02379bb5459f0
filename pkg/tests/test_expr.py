from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qhopf.coeff import PoleAtPoint
from qhopf.expr import (
    Bin,
    Call,
    ExprSyntaxError,
    Gen,
    Name,
    Neg,
    NotSpecializable,
    Num,
    Pow,
    UnknownSymbol,
    canonical,
    evaluate,
    parse,
    specialize_value,
    to_text,
)

idx = st.integers(1, 2)
leaves = st.one_of(
    st.integers(0, 9).map(Num),
    st.sampled_from(["q", "absx", "U", "Uinv", "theta", "T"]).map(Name),
    st.tuples(idx, idx).map(lambda t: Gen("x", t)),
    st.tuples(idx, idx).map(lambda t: Gen("xi", t)),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(children, st.integers(-3, 3)).map(lambda t: Pow(*t)),
        st.tuples(st.sampled_from("+-*/"), children, children).map(lambda t: Bin(*t)),
        children.map(lambda c: Call("d", (c,))),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


@given(asts)
def test_print_parse_roundtrip(e):
    assert parse(to_text(e)) == e


def test_det_ast():
    e = parse("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]")
    assert e == Bin("-", Bin("*", Gen("x", (1, 1)), Gen("x", (2, 2))),
                    Bin("*", Bin("*", Name("q"), Gen("x", (1, 2))), Gen("x", (2, 1))))


def test_maurer_cartan_ast():
    assert parse("d(T)*Tbar") == Bin("*", Call("d", (Name("T"),)), Name("Tbar"))


def test_precedence():
    assert parse("q+q*q^2") == Bin("+", Name("q"), Bin("*", Name("q"), Pow(Name("q"), 2)))
    assert parse("q*q*q") == Bin("*", Bin("*", Name("q"), Name("q")), Name("q"))


def test_syntax_error_location():
    with pytest.raises(ExprSyntaxError) as ei:
        parse("x[1,1]**")
    assert (ei.value.line, ei.value.col) == (1, 8)


@pytest.mark.parametrize("text", ["foo", "bar(q)", "q[1]"])
def test_unknown_symbol(text):
    with pytest.raises(UnknownSymbol):
        parse(text)


@pytest.mark.parametrize("text", ["x[1]", "d(q, q)", "(q", "q^x", ""])
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


def test_nf_examples():
    assert canonical(evaluate("x[2,1]*x[1,1]")) == "q^-1 * x[1,1]*x[2,1]"
    assert canonical(evaluate("theta*theta")) == "0"
    assert canonical(evaluate("U*Uinv")) == "1"
    assert canonical(evaluate("x[1,1]*x[2,2] - q*x[1,2]*x[2,1] - U")) == "0"


def test_nf_is_stable():
    # printing a normal form and reading it back gives the same element
    v = evaluate("d(x[1,1]*x[2,1]) + q*x[1,2]*xi[2,2]")
    assert evaluate(canonical(v)) == v


def test_eval_examples():
    assert specialize_value(evaluate("(q-1)*(q-q^-2)"), 1) == 0
    assert specialize_value(evaluate("q + q^-1"), 2) == Fraction(5, 2)
    v = evaluate("absx^2*rho^2/((absx^2 + rho^2)*(q^2*absx^2 + rho^2))")
    assert specialize_value(v, 2, 1, 1) == Fraction(1, 10)


def test_eval_not_specializable():
    with pytest.raises(NotSpecializable):
        specialize_value(evaluate("x[1,1]*x[2,2] - q*x[1,2]*x[2,1] + x[1,1]"), 1, 1, 1)
    with pytest.raises(NotSpecializable):
        specialize_value(evaluate("T"), 1)


def test_eval_pole():
    with pytest.raises(PoleAtPoint):
        specialize_value(evaluate("Uinv"), 2, 0, 1)


def test_numeric_q_matches_symbolic():
    a = evaluate("(q*x[2,1]*x[1,1] + x[1,2]*x[1,1])*Uinv", qvalue=Fraction(7, 5))
    b = evaluate("(q*x[2,1]*x[1,1] + x[1,2]*x[1,1])*Uinv")
    assert canonical(a) == canonical(evaluate(canonical(b).replace("q", "(7/5)"), qvalue=Fraction(7, 5)))


def test_braided_expression():
    assert canonical(evaluate("rho[1]*rho[2] - q^2*rho[2]*rho[1]")) == "0"
    assert canonical(evaluate("rho[1]*x[1,1] - x[1,1]*rho[1]")) == "0"


def test_matrix_builders():
    assert canonical(evaluate("F(rho) - F(rho)")) == '[["0", "0"], ["0", "0"]]'
    with pytest.raises(NotSpecializable):
        specialize_value(evaluate("A(rho)"), 2, 1, 1)
