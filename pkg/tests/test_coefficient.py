import math

import numpy as np
import pytest

from hadamard_bvp import (
    Constant,
    DomainInvalid,
    EvalError,
    Expression,
    OutOfTableRange,
    Table,
    UnknownIdentifier,
    eval_coefficient,
    load_table,
    parse_expr,
    pretty,
)
from hadamard_bvp.coefficient import BinOp, Call, Neg, Num, Var


def ev(src, t=1.0):
    return eval_coefficient(Expression(parse_expr(src)), t)


def test_precedence_examples():
    assert ev("1+2*3") == 7.0
    assert ev("2*t^2 - 1", 2.0) == 7.0
    assert ev("ln(t)", math.e) == 1.0


def test_structure_of_simple_parse():
    assert parse_expr("ln(t)") == Call("ln", Var())
    assert parse_expr("-t") == Neg(Var())
    assert parse_expr("1+2*3") == BinOp("+", Num(1.0), BinOp("*", Num(2.0), Num(3.0)))


def test_unary_minus_and_power_binding():
    # ^ binds tighter than unary minus, and is right-associative.
    assert ev("-2^2") == -4.0
    assert ev("(0-2)^2") == 4.0
    assert ev("2^-3") == 0.125
    assert ev("2^3^2") == 512.0
    assert ev("--2") == 2.0
    assert ev("2-3-4") == -5.0
    assert ev("2/4/8") == 0.0625
    assert ev("-(2+3)") == -5.0


def test_whitespace_insensitive():
    assert parse_expr(" 2 * t ^ 2\t-\n1 ") == parse_expr("2*t^2-1")


def test_number_forms():
    assert ev("1e3") == 1000.0
    assert ev(".5") == 0.5
    assert ev("2.") == 2.0
    assert ev("1.5e-2") == 0.015
    assert ev("3E+2") == 300.0


def test_no_implicit_multiplication():
    for src in ("2t", "2(3)", "t t", "(1)(2)"):
        with pytest.raises(SyntaxError):
            parse_expr(src)


def test_unknown_identifiers_with_offsets():
    with pytest.raises(UnknownIdentifier) as info:
        parse_expr("2*y")
    assert info.value.offset == 2
    with pytest.raises(UnknownIdentifier):
        parse_expr("log(t)")  # only ln is defined
    with pytest.raises(UnknownIdentifier):
        parse_expr("e")  # the constant name is not a value


def test_syntax_errors_report_offset_and_expectations():
    with pytest.raises(SyntaxError) as info:
        parse_expr("1+*2")
    assert info.value.offset == 2
    assert len(info.value.expected) > 0
    with pytest.raises(SyntaxError) as info:
        parse_expr("(1+2")
    assert "')'" in info.value.expected
    with pytest.raises(SyntaxError):
        parse_expr("")
    with pytest.raises(SyntaxError):
        parse_expr("1+2)")


def _random_expr(rng, depth):
    """Random AST matching the grammar, for round-trip fuzzing."""
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(
            [Num(float(rng.integers(0, 50)) / 4.0), Var(), Num(float(rng.random()))]
        )
    kind = rng.random()
    if kind < 0.55:
        op = rng.choice(["+", "-", "*", "/", "^"])
        return BinOp(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind < 0.75:
        return Neg(_random_expr(rng, depth - 1))
    fn = rng.choice(["ln", "exp", "sin", "cos", "abs", "sqrt"])
    return Call(fn, _random_expr(rng, depth - 1))


def test_round_trip_corpus():
    hand_written = [
        "t", "-t", "1+2*3", "2*t^2-1", "ln(t)", "ln(t)*exp(-t/2)",
        "sqrt(abs(t-2))", "sin(t)^2+cos(t)^2", "-(t+1)/(t-1)", "2^-3^2",
        "1/(1+exp(-t))", "t^2^0.5", "abs(-t)", "((t))", "-t^2",
        "t*-2", "1--1", "exp(ln(t))", "t/2/3*4", "0.25*t^0.5",
    ]
    for src in hand_written:
        ast = parse_expr(src)
        assert parse_expr(pretty(ast)) == ast, src
    rng = np.random.default_rng(20260815)
    for _ in range(30):
        ast = _random_expr(rng, 4)
        assert parse_expr(pretty(ast)) == ast, pretty(ast)


def test_eval_determinism():
    q = Expression(parse_expr("sin(t)^2 + ln(t)/t"))
    a = eval_coefficient(q, 1.7)
    b = eval_coefficient(q, 1.7)
    assert a == b  # identical bits


def test_eval_errors():
    with pytest.raises(EvalError):
        ev("ln(t)", 0.0)
    with pytest.raises(EvalError):
        ev("1/(t-1)", 1.0)
    with pytest.raises(EvalError):
        ev("(0-2)^0.5")
    with pytest.raises(EvalError):
        ev("sqrt(0-t)", 4.0)
    with pytest.raises(EvalError):
        eval_coefficient(Constant(math.inf), 1.0)


def test_constant_and_table():
    assert eval_coefficient(Constant(3.5), 123.0) == 3.5
    tbl = Table(points=((1.0, 0.0), (math.e, 1.0)))
    assert eval_coefficient(tbl, 1.0) == 0.0
    assert eval_coefficient(tbl, math.e) == 1.0
    assert abs(eval_coefficient(tbl, math.exp(0.5)) - 0.5) <= 1e-15


def test_table_monotone_between_knots():
    tbl = Table(points=((1.0, 2.0), (2.0, 5.0), (4.0, 3.0)))
    ts = np.exp(np.linspace(0.0, math.log(2.0), 40))
    vals = [eval_coefficient(tbl, t) for t in ts]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    ts2 = np.exp(np.linspace(math.log(2.0), math.log(4.0), 40))
    vals2 = [eval_coefficient(tbl, t) for t in ts2]
    assert all(b <= a for a, b in zip(vals2, vals2[1:]))


def test_table_validation_and_range():
    with pytest.raises(DomainInvalid):
        Table(points=((1.0, 0.0),))
    with pytest.raises(DomainInvalid):
        Table(points=((2.0, 0.0), (1.0, 1.0)))
    with pytest.raises(DomainInvalid):
        Table(points=((-1.0, 0.0), (2.0, 1.0)))
    tbl = Table(points=((1.0, 0.0), (2.0, 1.0)))
    with pytest.raises(OutOfTableRange):
        eval_coefficient(tbl, 0.5)
    with pytest.raises(OutOfTableRange):
        eval_coefficient(tbl, 2.5)


def test_load_table(tmp_path):
    path = tmp_path / "q.csv"
    path.write_text("t,q\n1.0,0.5\n2.0,1.5\n4.0,-1.0\n")
    tbl = load_table(str(path))
    assert eval_coefficient(tbl, 2.0) == 1.5
    bad = tmp_path / "bad.csv"
    bad.write_text("time,value\n1,2\n")
    with pytest.raises(DomainInvalid):
        load_table(str(bad))
    bad.write_text("t,q\n1.0,hello\n2.0,1\n")
    with pytest.raises(DomainInvalid):
        load_table(str(bad))


def test_eval_coefficient_rejects_non_coefficients():
    with pytest.raises(DomainInvalid):
        eval_coefficient(lambda t: t, 1.0)
