from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetcheck.exprs import (
    Add,
    Apply,
    Const,
    Div,
    Mul,
    Neg,
    PowInt,
    PowReal,
    Sub,
    Var,
    contains_float,
    to_text,
)
from jetcheck.numeric import Scalar
from jetcheck.parsing import ParseError, parse


def C(p, q=1):
    return Const(Scalar(Fraction(p, q)))


def test_documented_grammar_trees():
    assert parse("x^2 - 3/4*x") == Sub(PowInt(Var(), 2), Mul(C(3, 4), Var()))
    assert parse("exp(2*x)") == Apply("exp", Mul(C(2), Var()))


def test_double_caret_position():
    with pytest.raises(ParseError) as err:
        parse("x^^2")
    assert err.value.offset == 2


def test_precedence_and_associativity():
    assert parse("1+2*x") == Add(C(1), Mul(C(2), Var()))
    assert parse("-x^2") == Neg(PowInt(Var(), 2))
    assert parse("(-x)^2") == PowInt(Neg(Var()), 2)
    assert parse("1-2-3") == Sub(Sub(C(1), C(2)), C(3))
    assert parse("x*2/x") == Div(Mul(Var(), C(2)), Var())
    # the exponent is parsed as a unary expression and folded, so power
    # towers collapse right-associatively
    assert parse("x^2^3") == PowInt(Var(), 8)


def test_rational_literals_are_lexical():
    assert parse("3/4") == C(3, 4)
    assert parse("3 / 4") == Div(C(3), C(4))
    assert parse("x/4") == Div(Var(), C(4))
    assert parse("6/2/3") == Div(C(3), C(3))
    with pytest.raises(ParseError):
        parse("3/0")


def test_decimals_force_float():
    e = parse("0.5*x")
    assert e == Mul(Const(Scalar.inexact(0.5)), Var())
    assert contains_float(e)
    assert not contains_float(parse("1/2*x"))


def test_exponent_classification():
    assert parse("x^2") == PowInt(Var(), 2)
    assert parse("x^-2") == PowInt(Var(), -2)
    assert parse("x^(1+1)") == PowInt(Var(), 2)
    assert parse("x^(3/2)") == PowReal(Var(), Scalar(Fraction(3, 2)))
    assert parse("x^0.5") == PowReal(Var(), Scalar.inexact(0.5))
    with pytest.raises(ParseError) as err:
        parse("2^x")
    assert err.value.offset == 2


def test_unknown_identifiers():
    for text, offset in (("y", 0), ("xx", 0), ("2*foo", 2)):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.offset == offset


def test_function_call_syntax():
    assert parse("sqrt(x)") == Apply("sqrt", Var())
    with pytest.raises(ParseError):
        parse("sin x")
    with pytest.raises(ParseError):
        parse("sin(x")


def test_end_of_input_errors():
    for text in ("", "2*", "(1+x"):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.offset <= len(text)


def test_trailing_garbage():
    with pytest.raises(ParseError) as err:
        parse("x 1")
    assert err.value.offset == 2


def test_unknown_character():
    with pytest.raises(ParseError) as err:
        parse("x + $")
    assert err.value.offset == 4


# Round-trip: printing a canonical tree and reparsing gives the same tree.
# Canonical means constants are non-negative (negation is an explicit node)
# and float constants have plain decimal reprs.

_nonneg_fractions = st.fractions(min_value=0, max_value=100, max_denominator=20)
_nice_floats = st.sampled_from((0.5, 0.25, 1.75, 3.125, 2.0, 0.1))


def _leaves():
    return st.one_of(
        st.just(Var()),
        _nonneg_fractions.map(lambda q: Const(Scalar(q))),
        _nice_floats.map(lambda v: Const(Scalar.inexact(v))),
    )


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(children, children).map(lambda ab: Add(*ab)),
        st.tuples(children, children).map(lambda ab: Sub(*ab)),
        st.tuples(children, children).map(lambda ab: Mul(*ab)),
        st.tuples(children, children).map(lambda ab: Div(*ab)),
        st.tuples(children, st.integers(min_value=-3, max_value=4)).map(
            lambda em: PowInt(em[0], em[1])
        ),
        st.tuples(children, st.sampled_from((Fraction(3, 2), Fraction(-1, 2), Fraction(5, 3)))).map(
            lambda ea: PowReal(ea[0], Scalar(ea[1]))
        ),
        st.tuples(st.sampled_from(("exp", "log", "sin", "cos", "sqrt")), children).map(
            lambda fe: Apply(*fe)
        ),
    )


canonical_exprs = st.recursive(_leaves(), _extend, max_leaves=12)


@settings(deadline=None, max_examples=200)
@given(canonical_exprs)
def test_roundtrip_parse_print(e):
    assert parse(to_text(e)) == e
