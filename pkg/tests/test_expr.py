import math

import pytest
from hypothesis import given, strategies as st

from bertrand_curves import expr as E
from bertrand_curves.errors import CurveError, ExprSyntaxError, NonIntegerExponent, UnknownIdentifier


def test_grammar_examples():
    assert E.parse_expression("cos(t)/sqrt(2)") == E.Div(E.Cos(E.Param()), E.Sqrt(E.Const(2.0)))
    assert E.parse_expression("t^2 - 3*t") == E.Sub(E.Pow(E.Param(), 2), E.Mul(E.Const(3.0), E.Param()))


def test_precedence_and_associativity():
    assert E.evaluate(E.parse_expression("2 - 3 - 4"), 0) == -5
    assert E.evaluate(E.parse_expression("8 / 4 / 2"), 0) == 1
    assert E.evaluate(E.parse_expression("-t^2"), 3.0) == -9
    assert E.evaluate(E.parse_expression("2*t^-1"), 4.0) == 0.5
    assert E.evaluate(E.parse_expression("exp(0) + 1.5e1"), 0) == 16


@pytest.mark.parametrize("src, exc, offset", [
    ("cos(", ExprSyntaxError, 4),
    ("", ExprSyntaxError, 0),
    ("t +* 2", ExprSyntaxError, 3),
    ("(t", ExprSyntaxError, 2),
    ("t 2", ExprSyntaxError, 2),
    ("tan(t)", UnknownIdentifier, 0),
    ("2*s", UnknownIdentifier, 2),
    ("t^2.5", NonIntegerExponent, 2),
    ("t^t", NonIntegerExponent, 2),
])
def test_errors_carry_offsets(src, exc, offset):
    with pytest.raises(exc) as info:
        E.parse_expression(src)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


leaf = st.one_of(st.just(E.Param()), st.floats(0, 100, allow_nan=False).map(E.Const))
trees = st.recursive(
    leaf,
    lambda kids: st.one_of(
        st.builds(E.Neg, kids),
        st.builds(E.Add, kids, kids), st.builds(E.Sub, kids, kids),
        st.builds(E.Mul, kids, kids), st.builds(E.Div, kids, kids),
        st.builds(E.Pow, kids, st.integers(-3, 4)),
        st.builds(E.Sin, kids), st.builds(E.Cos, kids),
        st.builds(E.Sqrt, kids), st.builds(E.Exp, kids),
    ),
    max_leaves=12,
)


@given(trees)
def test_print_parse_round_trip(tree):
    assert E.parse_expression(E.to_source(tree)) == tree


@given(trees, st.floats(-2, 2, allow_nan=False))
def test_order_zero_jet_equals_float_evaluation(tree, t):
    try:
        want = E.evaluate(tree, t)
    except (ArithmeticError, ValueError, CurveError):
        return
    if not math.isfinite(want) or abs(want) > 1e12:
        return
    try:
        got = E.evaluate_jet(tree, t, 0)[0]
    except CurveError:  # the jet guards are stricter than float arithmetic
        return
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_cos_over_sqrt2_taylor_coefficients():
    j = E.evaluate_jet(E.parse_expression("cos(t)/sqrt(2)"), 0.0, 4)
    r = 1 / math.sqrt(2)
    assert list(j.d) == pytest.approx([r, 0, -r, 0, r], abs=1e-15)
