from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcslab.symexpr import (
    Expr,
    ExprDivisionError,
    ExprError,
    ExprSyntaxError,
    PoleError,
    UnknownVariableError,
    Var,
    arith,
    diff,
    eval_at,
    is_zero,
    parse,
    print_expr,
)

X, Y, Z = Var("x"), Var("y"), Var("z")
VS = (X, Y, Z)


def e(text: str) -> Expr:
    return parse(text, VS)


class TestParse:
    def test_simple_reciprocal(self):
        assert e("-1/z") == Expr.constant(VS, -1) / Expr.variable(VS, Z)

    def test_common_denominator(self):
        assert e("z^2 - 1/z^2") == e("(z^4 - 1)/z^2")

    def test_cancellation_to_zero(self):
        assert e("z*(x+y) - z*x - z*y").is_zero

    def test_negative_exponent(self):
        assert e("z^-2") == e("1/z^2")

    def test_whitespace_and_nesting(self):
        assert e(" ( x + y ) * ( x - y ) ") == e("x^2 - y^2")

    def test_power_binds_before_product(self):
        assert e("2*z^3") == 2 * e("z") ** 3

    def test_syntax_error_reports_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            e("x + * y")
        assert err.value.position == 4

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as err:
            e("x + w")
        assert err.value.name == "w"

    def test_division_by_zero_literal(self):
        with pytest.raises(ExprDivisionError):
            e("1/0")

    def test_division_by_vanishing_expression(self):
        with pytest.raises(ExprDivisionError):
            e("1/(x - x)")

    def test_exponent_must_be_integer(self):
        with pytest.raises(ExprSyntaxError):
            e("x^y")

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError):
            e("x + 1)")


class TestArith:
    def test_add_cancels(self):
        assert arith("add", e("-1/z"), e("1/z")).is_zero

    def test_mul_squares_alpha(self):
        assert arith("mul", e("-1/z"), e("-1/z")) == e("1/z^2")

    def test_sub_gives_two_over_z2(self):
        assert arith("sub", e("1/z^2"), e("-1/z^2")) == e("2/z^2")

    def test_neg_and_pow(self):
        assert arith("neg", e("x")) == e("-x")
        assert arith("pow", e("z"), -2) == e("1/z^2")

    def test_pow_zero_exponent(self):
        assert arith("pow", e("x + 1"), 0) == e("1")

    def test_pow_negative_of_zero(self):
        with pytest.raises(ExprDivisionError):
            arith("pow", e("0"), -1)

    def test_divide_by_zero(self):
        with pytest.raises(ExprDivisionError):
            arith("div", e("1"), e("x - x"))

    def test_int_coercion(self):
        assert 2 * e("z") + 1 == e("2*z + 1")

    def test_mixed_contexts_rejected(self):
        other = parse("t", (Var("t"),))
        with pytest.raises(ExprError):
            e("x") + other


class TestDiff:
    def test_reciprocal(self):
        assert diff(e("-1/z"), Z) == e("1/z^2")

    def test_reciprocal_square(self):
        assert diff(e("-1/z^2"), Z) == e("2/z^3")

    def test_product(self):
        assert diff(e("x*y"), X) == e("y")

    def test_quotient_rule(self):
        assert diff(e("x/(z + 1)"), Z) == e("-x/(z^2 + 2*z + 1)")

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            diff(e("x"), Var("w"))


class TestIsZero:
    def test_zero(self):
        assert is_zero(e("0"))

    def test_nonzero(self):
        assert not is_zero(e("(z^4 - 1)/z^2"))

    def test_exact_cancellation(self):
        assert is_zero(e("z*(1/z) - 1"))


class TestEval:
    def test_reciprocal(self):
        assert eval_at(e("-1/z"), {"z": 3, "x": 0, "y": 0}) == Fraction(-1, 3)

    def test_rational_value(self):
        assert eval_at(e("(z^4 - 1)/z^2"), {X: 1, Y: 1, Z: 2}) == Fraction(15, 4)

    def test_pole(self):
        with pytest.raises(PoleError):
            eval_at(e("1/z"), {"x": 1, "y": 1, "z": 0})

    def test_fraction_points(self):
        assert eval_at(e("x + y/2"), {"x": Fraction(1, 3), "y": 1, "z": 5}) == Fraction(5, 6)

    def test_missing_variable(self):
        with pytest.raises(ExprError):
            eval_at(e("x"), {"x": 1, "y": 2})


class TestCanonicalForm:
    def test_integer_content_reduced(self):
        assert e("(2*x + 2)/2") == e("x + 1")

    def test_polynomial_gcd_reduced(self):
        assert e("(x^2 - 1)/(x - 1)") == e("x + 1")

    def test_denominator_sign_normalized(self):
        assert str(e("1/-z")) == "-1/z"
        assert str(e("x/(1 - z) + 0")) == str(e("x/(1 - z)"))

    def test_equality_is_structural(self):
        a = e("(z^4 - 1)/z^2")
        b = e("z^2 - 1/z^2")
        assert a == b and hash(a) == hash(b)

    def test_rebuild_is_idempotent(self):
        a = e("(x + y)^3/(x*z - z^2)")
        again = Expr(a.vars, dict(a.num), dict(a.den))
        assert again == a and again.num == a.num and again.den == a.den


# -- property tests ----------------------------------------------------------

coeffs = st.integers(min_value=-6, max_value=6).filter(lambda c: c != 0)
exponents = st.tuples(*(st.integers(min_value=0, max_value=2) for _ in range(3)))
polys = st.dictionaries(exponents, coeffs, max_size=4)
nonzero_polys = polys.filter(lambda p: any(p.values()))


@st.composite
def expressions(draw):
    num = draw(polys)
    den = draw(nonzero_polys)
    return Expr(VS, {k: v for k, v in num.items() if v}, {k: v for k, v in den.items() if v})


points = st.tuples(
    *(st.fractions(min_value=-4, max_value=4).filter(lambda q: q != 0) for _ in range(3))
)


def try_eval(expr, pt):
    try:
        return expr.eval({"x": pt[0], "y": pt[1], "z": pt[2]})
    except PoleError:
        return None


@given(expressions(), expressions(), points)
@settings(max_examples=120)
def test_ring_laws_at_rational_points(a, b, pt):
    va, vb = try_eval(a, pt), try_eval(b, pt)
    if va is None or vb is None:
        return
    assert try_eval(a + b, pt) == va + vb
    assert try_eval(a - b, pt) == va - vb
    assert try_eval(a * b, pt) == va * vb
    if not b.is_zero and vb != 0:
        q = a / b
        assert try_eval(q, pt) == va / vb


@given(expressions(), expressions())
@settings(max_examples=80)
def test_leibniz_rule(a, b):
    for v in VS:
        assert diff(a * b, v) == a * diff(b, v) + b * diff(a, v)


@given(expressions())
@settings(max_examples=150)
def test_parse_print_roundtrip(a):
    assert parse(print_expr(a), VS) == a


@given(expressions(), expressions(), expressions())
@settings(max_examples=60)
def test_field_laws_symbolically(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a - a == Expr.zero(VS)


def test_sympy_cross_check_random_sample():
    sympy = pytest.importorskip("sympy")
    sx, sy, sz = sympy.symbols("x y z")
    samples = [
        "(x + y)^2/(z^3 - z)",
        "x/(y + 1) - y/(x*z) + 3/2",
        "(z^2 - 1/z^2)*(x - y)",
        "1 - x*y*z + x^2*y^2/(2*z)",
    ]
    for text in samples:
        ours = e(text)
        theirs = sympy.cancel(sympy.sympify(text.replace("^", "**")))
        rebuilt = sympy.cancel(sympy.sympify(str(ours).replace("^", "**")))
        assert sympy.simplify(theirs - rebuilt) == 0

    for v, sv in ((X, sx), (Y, sy), (Z, sz)):
        ours = diff(e("(x^2 + y)/(z - 2*y)"), v)
        theirs = sympy.cancel(sympy.diff(sympy.sympify("(x**2 + y)/(z - 2*y)"), sv))
        rebuilt = sympy.cancel(sympy.sympify(str(ours).replace("^", "**")))
        assert sympy.simplify(theirs - rebuilt) == 0
