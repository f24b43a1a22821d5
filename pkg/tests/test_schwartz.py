import json
import random

import pytest
from hypothesis import given, strategies as st

from bks.checks import random_function
from bks.exact_algebra import ParseError, q_power, scalar, u_monomial
from bks.plucker_geometry import make
from bks.schwartz_nonarch import (
    CoefficientFunction,
    SchemaError,
    basic_function,
    basic_function_direct,
    evaluate,
    fourier,
    indicator,
    inverse_mellin,
)

q = q_power(1)
ranks = st.integers(1, 4)


@st.composite
def functions(draw, n=None):
    n = draw(ranks) if n is None else n
    return random_function(random.Random(draw(st.integers(0, 10 ** 6))), n)


# -- basic function ---------------------------------------------------------

def test_basic_coefficients_n2():
    got = [c for _, c in basic_function(2).coefficients(4)]
    assert got == [1, 1, 1 + q ** 2, 1 + q ** 2, 1 + q ** 2 + q ** 4]


@pytest.mark.parametrize("n", range(1, 6))
def test_basic_matches_direct_sum(n):
    assert basic_function(n, upto=10) == basic_function_direct(n, 10)


@pytest.mark.parametrize("n", range(1, 5))
def test_basic_is_fixed(n):
    b = basic_function(n)
    assert fourier(b) == b


def test_basic_coefficients_are_positive_and_increasing():
    for n in range(1, 5):
        values = [c.evaluate(3) for _, c in basic_function(n).coefficients(20)]
        assert all(x >= 1 for x in values)
        assert values == sorted(values)


# -- Fourier transform ------------------------------------------------------

def test_transform_of_indicator_n1():
    ft = fourier(indicator(1, 0))
    assert ft.floor == -1
    assert ft.coefficient(-1) == -q ** -2
    assert ft.to_json() == {"n": 1, "kind": "rational", "floor": -1,
                            "num": "-1+q^2*U", "den": "q^2*U-q^2*U^2"}


@pytest.mark.parametrize("n,floor", [(1, -1), (2, -3), (3, -3), (4, -5), (5, -5), (6, -7)])
def test_transform_of_indicator_floor(n, floor):
    assert fourier(indicator(n, 0)).floor == floor


@given(functions())
def test_involution(f):
    assert fourier(fourier(f)) == f


@given(st.integers(1, 4), st.data())
def test_linearity(n, data):
    f, g = data.draw(functions(n)), data.draw(functions(n))
    a = scalar(data.draw(st.integers(-5, 5))) * q_power(data.draw(st.integers(-2, 2)))
    assert fourier(f + g.scale(a)) == fourier(f) + fourier(g).scale(a)


@given(functions())
def test_finite_truncation_agrees_with_rational_form(f):
    top = f.floor + 6
    def nonzero(g):
        return {m: c for m, c in g.coefficients(top) if not c.is_zero()}
    assert nonzero(f.truncate(top)) == nonzero(f)


@given(st.integers(1, 4), st.integers(-6, 6))
def test_transform_of_indicators_is_bounded_below(n, c):
    # the support floor moves with the shift by exactly -c
    base = fourier(indicator(n, 0)).floor
    assert fourier(indicator(n, c)).floor == base - c


def test_shift():
    f = indicator(2, 0) + indicator(2, 3)
    assert f.shift(-2) == indicator(2, -2) + indicator(2, 1)
    assert f.as_rational().shift(-2) == f.shift(-2)


def test_inverse_mellin():
    f = inverse_mellin(u_monomial(2) / (1 - u_monomial(1)), 1)
    assert f.floor == 2 and f.coefficient(5) == 1


# -- evaluation -------------------------------------------------------------

def test_evaluate_on_torus():
    b = basic_function(2)
    for c in range(0, 4):
        g = make("siegel_torus", 2, 3, c)
        assert evaluate(b, g, 3) == b.coefficient(c)
    assert evaluate(b, make("siegel_torus", 2, 3, -1), 3) == 0


def test_evaluate_is_right_integral_invariant():
    f = indicator(1, 2)
    g = make("siegel_torus", 1, 5, 2)
    k = make("weyl", 1) @ make("unipotent", 1, [[3]])
    assert evaluate(f, g @ k, 5) == 1


# -- interchange ------------------------------------------------------------

@given(functions())
def test_json_roundtrip(f):
    doc = json.loads(json.dumps(f.to_json()))
    assert CoefficientFunction.from_json(doc) == f
    assert CoefficientFunction.from_json(doc).to_json() == doc


def test_json_finite_form():
    f = CoefficientFunction.from_json({"n": 1, "kind": "finite", "floor": 0, "coeffs": ["1", "1"]})
    assert f == indicator(1, 0) + indicator(1, 1)


def test_json_basic_n2():
    doc = {"n": 2, "kind": "rational", "floor": 0, "num": "1", "den": "(1-U)*(1-q^2*U^2)"}
    assert CoefficientFunction.from_json(doc) == basic_function(2)


@pytest.mark.parametrize("doc,err", [
    ({"n": 1, "kind": "finite", "floor": 0, "coeffs": ["1+/q"]}, ParseError),
    ({"n": 1, "kind": "finite", "floor": 0}, SchemaError),
    ({"n": 0, "kind": "finite", "floor": 0, "coeffs": []}, SchemaError),
    ({"n": 1, "kind": "other", "floor": 0}, SchemaError),
    ({"n": 1, "kind": "rational", "floor": 1, "num": "1", "den": "1-U"}, SchemaError),
    ({"n": 1, "kind": "rational", "floor": 0, "num": "1", "den": "0"}, SchemaError),
    ({"n": 1, "kind": "rational", "floor": 0, "num": "1", "den": "1-U", "x": 1}, SchemaError),
])
def test_json_rejects(doc, err):
    with pytest.raises(err):
        CoefficientFunction.from_json(doc)
