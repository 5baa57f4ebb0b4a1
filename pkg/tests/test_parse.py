import random

import pytest

from pfdkit.parse import (
    ParseError,
    parse_polynomial,
    parse_problem,
    render_polynomial,
    render_problem,
)
from pfdkit.poly import Polynomial
from pfdkit import fixtures

from conftest import random_polynomial

XY = ("x", "y")


def test_intro_numerator():
    f = parse_polynomial("13*y - 6*x", XY)
    assert f.coefficient((0, 1)) == 13 and f.coefficient((1, 0)) == -6
    assert render_polynomial(f) == "-6*x + 13*y"


def test_square_difference():
    assert parse_polynomial("(x+y)^2 - (x-y)^2", XY) == parse_polynomial("4*x*y", XY)


def test_scaled_affine_form():
    f = parse_polynomial("8*(1+4*eps)", ("eps",))
    assert f == parse_polynomial("32*eps + 8", ("eps",))


def test_rational_literals_and_division():
    f = parse_polynomial("x/2 + 1/3", XY)
    assert f.coefficient((1, 0)) * 2 == 1
    assert f.coefficient((0, 0)) * 3 == 1
    with pytest.raises(ParseError):
        parse_polynomial("x/y", XY)
    with pytest.raises(ParseError):
        parse_polynomial("x/0", XY)
    # parenthesized constants are still constants
    assert parse_polynomial("x/(2 - 1 + 1)", XY) == parse_polynomial("x/2", XY)


def test_power_binds_tightest_and_unary_minus():
    assert parse_polynomial("-x^2", XY) == -parse_polynomial("x^2", XY)
    assert parse_polynomial("2*x^3", XY).coefficient((3, 0)) == 2


def test_unknown_variable_has_position():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + q", XY)
    assert "unknown variable 'q'" in str(err.value)
    assert "column 5" in str(err.value)


def test_syntax_error_positions():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + ", XY)
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        parse_polynomial("x ^ y", XY)
    with pytest.raises(ParseError):
        parse_polynomial("2x", XY)  # implicit multiplication rejected


def test_render_zero_and_round_trip():
    assert render_polynomial(Polynomial.zero(XY)) == "0"
    rng = random.Random(5)
    for _ in range(60):
        f = random_polynomial(rng, XY, zero_ok=True)
        assert parse_polynomial(render_polynomial(f), XY) == f


def test_parse_problem_intro_fixture():
    problem = fixtures.fixture_problem("intro.problem")
    assert problem.mode == "projective"
    assert len(problem.denominators) == 3
    assert problem.numerator.total_degree() == 1
    assert all(f.total_degree() == 1 for f in problem.denominators)


def test_parse_problem_rejects_bad_denominator_with_index():
    text = "mode: affine\nvars: x y\nnumerator: x\ndenominators:\n  x\n  x^2\n"
    with pytest.raises(ParseError) as err:
        parse_problem(text)
    assert "denominator 2" in str(err.value)


def test_parse_problem_zero_form_policy():
    text = "mode: projective\nvars: x y\nnumerator: x\ndenominators:\n  0\n  x\n"
    with pytest.raises(ParseError):
        parse_problem(text)
    allowed = "mode: projective\nvars: x y\nallow-zero-forms: true\nnumerator: x\ndenominators:\n  0\n  x\n"
    problem = parse_problem(allowed)
    assert problem.denominators[0].is_zero()


def test_parse_problem_wavefunction_shape():
    problem = fixtures.fixture_problem("wavefunction.problem")
    assert len(problem.variables) == 7
    assert len(problem.denominators) == 11


def test_problem_render_round_trip():
    problem = fixtures.fixture_problem("sec23_affine.problem")
    again = parse_problem(render_problem(problem))
    assert again == problem


def test_comments_and_blank_lines_ignored():
    text = "# heading\nmode: affine\n\nvars: x y  # inline\nnumerator: x\ndenominators:\n  # c\n  x - 1\n"
    problem = parse_problem(text)
    assert len(problem.denominators) == 1
