import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracgeo.errors import (
    ArityError,
    EvalDomainError,
    ExprSyntaxError,
    UnknownIdentifierError,
)
from fracgeo.expr import (
    Binary,
    Call,
    Const,
    RealFunction,
    Unary,
    Var,
    evaluate,
    function_from_source,
    parse,
    to_source,
)
from fracgeo.verify import PRECEDENCE_GOLDENS, SYNTAX_ERROR_CORPUS, random_ast


class TestParse:
    def test_exponent_binds_tighter_than_product(self):
        assert parse("2*t^3") == Binary("*", Const(2.0), Binary("^", Var(), Const(3.0)))

    def test_power_right_associative(self):
        assert parse("2^3^2") == Binary("^", Const(2.0), Binary("^", Const(3.0), Const(2.0)))

    def test_unary_minus_below_power(self):
        assert parse("-t^2") == Unary("-", Binary("^", Var(), Const(2.0)))

    def test_negative_exponent(self):
        assert parse("2^-3") == Binary("^", Const(2.0), Unary("-", Const(3.0)))

    def test_call_with_two_arguments(self):
        assert parse("pow(t,2)") == Call("pow", (Var(), Const(2.0)))

    def test_scientific_literals(self):
        assert parse("1e3") == Const(1000.0)
        assert parse("2.5e-2") == Const(0.025)

    def test_whitespace_is_insignificant(self):
        assert parse("1 + 2 * t") == parse("1+2*t")

    def test_double_caret_offset(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("t^^2")
        assert info.value.offset == 2
        assert info.value.expected

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as info:
            parse("foo(1)")
        assert info.value.offset == 0

    def test_arity_errors(self):
        with pytest.raises(ArityError):
            parse("pow(1)")
        with pytest.raises(ArityError):
            parse("sin(1,2)")

    def test_no_implicit_multiplication(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("2t")
        assert info.value.offset == 1

    def test_error_corpus_offsets(self):
        for source, offset in SYNTAX_ERROR_CORPUS:
            with pytest.raises(ExprSyntaxError) as info:
                parse(source)
            assert info.value.offset == offset, source


class TestGoldenPrecedence:
    @pytest.mark.parametrize("source,expected", PRECEDENCE_GOLDENS)
    def test_fully_parenthesized_form(self, source, expected):
        assert to_source(parse(source)) == expected


class TestEvaluate:
    def test_polynomial(self):
        assert evaluate(parse("t^2 + 1"), 3.0) == 10.0

    def test_sine_at_zero(self):
        assert evaluate(parse("sin(t)"), 0.0) == 0.0

    def test_gamma_builtin(self):
        assert evaluate(parse("gamma(0.5)"), 123.0) == pytest.approx(
            math.sqrt(math.pi), rel=1e-12
        )

    def test_zero_to_the_zero_is_one(self):
        assert evaluate(parse("t^0"), 0.0) == 1.0
        assert evaluate(parse("0^0"), 5.0) == 1.0

    def test_sqrt_of_negative_raises(self):
        with pytest.raises(EvalDomainError) as info:
            evaluate(parse("sqrt(t)"), -1.0)
        assert "sqrt" in info.value.subexpression

    def test_log_of_negative_names_subexpression(self):
        with pytest.raises(EvalDomainError) as info:
            evaluate(parse("1 + log(t-2)"), 0.0)
        assert "log" in info.value.subexpression

    def test_division_by_zero_raises(self):
        with pytest.raises(EvalDomainError):
            evaluate(parse("1/t"), 0.0)

    def test_overflow_raises_not_inf(self):
        with pytest.raises(EvalDomainError):
            evaluate(parse("exp(t)"), 1e6)


def _reference_eval(node, t):
    """Independent recursive evaluator used as the bit-equality oracle."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Unary):
        return -_reference_eval(node.operand, t)
    if isinstance(node, Binary):
        left = _reference_eval(node.left, t)
        right = _reference_eval(node.right, t)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        return math.pow(left, right)
    table = {
        "sin": math.sin,
        "cos": math.cos,
        "exp": math.exp,
        "log": math.log,
        "sqrt": math.sqrt,
        "abs": math.fabs,
        "pow": math.pow,
    }
    return table[node.name](*[_reference_eval(arg, t) for arg in node.args])


class TestEvalAgainstReference:
    def test_bit_equality_on_random_trees(self):
        rng = random.Random(99)
        checked = 0
        for _ in range(400):
            tree = random_ast(rng, max_depth=5)
            t = rng.uniform(-3.0, 3.0)
            try:
                expected = _reference_eval(tree, t)
            except (ValueError, OverflowError, ZeroDivisionError):
                with pytest.raises(EvalDomainError):
                    evaluate(tree, t)
                continue
            if not math.isfinite(expected):
                with pytest.raises(EvalDomainError):
                    evaluate(tree, t)
                continue
            assert evaluate(tree, t) == expected
            checked += 1
        assert checked > 100


class TestRoundTrip:
    def test_thousand_random_trees(self):
        rng = random.Random(20240713)
        for _ in range(1000):
            tree = random_ast(rng)
            assert parse(to_source(tree)) == tree

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_hypothesis_trees(self, data):
        seed = data.draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
        depth = data.draw(st.integers(min_value=0, max_value=6))
        tree = random_ast(random.Random(seed), max_depth=depth)
        assert parse(to_source(tree)) == tree


class TestRealFunction:
    def test_expression_provenance(self):
        f = function_from_source("t^2")
        assert f.kind == "expression"
        assert f.source == "t^2"
        assert f.deriv is None
        assert f(3.0) == 9.0

    def test_evaluation_is_deterministic(self):
        f = function_from_source("sin(t) + t^0.5")
        assert f(1.37) == f(1.37)

    def test_builtin_carries_derivative(self):
        g = RealFunction(lambda t: t * t, "t^2", deriv=lambda t: 2 * t)
        assert g.kind == "builtin"
        assert g.deriv(4.0) == 8.0
