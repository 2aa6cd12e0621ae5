from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from infcones.errors import ContextMismatch, InputError, ParseError
from infcones.poly import (
    GREVLEX,
    LEX,
    GaussianRational,
    MonomialOrder,
    Polynomial,
    VariableContext,
    parse_polynomial,
    parse_scalar,
    poly_ring,
)

CTX, X, Y, Z = poly_ring("x,y,z")


def P(text, ctx=CTX):
    return parse_polynomial(text, ctx)


# -- strategies

small = st.integers(-5, 5)
coeffs = st.builds(GaussianRational, st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6)), small)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: Polynomial(CTX, d))


# -- coefficients

def test_gaussian_rational_reduced_and_exact():
    a = GaussianRational(2, 4) / 2
    assert a == GaussianRational(1, 2)
    b = GaussianRational("3/4", -1)
    assert (a * b) / b == a
    assert (a + b) - b == a
    assert str(parse_scalar("1/2+3*i")) == "1/2+3*i"


def test_real_results_collapse_to_rationals():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert not isinstance(i * i, GaussianRational)


def test_float_coefficients_rejected():
    with pytest.raises(InputError):
        Polynomial.constant(CTX, 0.5)


# -- parsing and printing

def test_parse_examples():
    ctx = VariableContext(["x", "y"])
    p = P("y - x^2", ctx)
    assert p.terms == {(0, 1): 1, (2, 0): -1}
    assert P("0").is_zero()
    q = P("(1/2 + 3i)*x*y^2")
    assert q.terms == {(1, 2, 0): GaussianRational("1/2", 3)}


@pytest.mark.parametrize("text", ["x y", "2x", "x^", "x^2^3", "(x", "1/0", "x + + ", "w", "x^-1", ""])
def test_parse_errors(text):
    with pytest.raises(InputError):
        P(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        P("x + * y")
    assert info.value.position == 4


@given(polys)
def test_print_parse_roundtrip(p):
    assert P(str(p)) == p


# -- arithmetic

def test_arith_examples():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2
    assert X + 0 == X
    assert (Y - X ** 2) ** 2 == P("y^2 - 2*x^2*y + x^4")
    a, b = P("x^2*y + 3"), P("z - 1/2")
    assert (a * b).degree() == a.degree() + b.degree()


def test_context_mismatch():
    other = VariableContext(["x", "w"])
    with pytest.raises(ContextMismatch):
        X + Polynomial.variable(other, "w")


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == Polynomial.zero(CTX)
    assert a * b == b * a


def test_derivatives():
    ctx, x, y = poly_ring("x,y")
    assert (y ** 2 - x ** 3).diff("x") == -3 * x ** 2
    assert Polynomial.constant(ctx, 7).diff(0).is_zero()
    assert (x * y).diff("y") == x
    with pytest.raises(InputError):
        x.diff(5)


# -- orders

ORDERS = [LEX, GREVLEX, MonomialOrder("block", first=[0]),
          MonomialOrder("weighted", weights=[[1, 2, 0]])]


@pytest.mark.parametrize("order", ORDERS, ids=["lex", "grevlex", "block", "weighted"])
@given(monos, monos, monos)
def test_order_axioms(order, u, v, w):
    ku, kv = order.key(u), order.key(v)
    assert (ku == kv) == (u == v)
    add = lambda a, b: tuple(i + j for i, j in zip(a, b))
    if ku < kv:
        assert order.key(add(u, w)) < order.key(add(v, w))
    assert order.key(add(u, w)) >= order.key(u)


def test_negative_leading_weight_rejected():
    with pytest.raises(InputError):
        MonomialOrder("weighted", weights=[[-1, 0, 0]])


def test_leading_terms():
    f = P("x*y^2 + x^2*z + z")
    assert f.leading_monomial(LEX) == (2, 0, 1)
    assert f.leading_monomial(GREVLEX) == (1, 2, 0)


# -- homogenization and evaluation

def test_homogenize_examples():
    ctx = VariableContext(["x", "y", "w"], {"b": ["x", "y", "w"]})
    assert P("y - x^2", ctx).homogenize("b", "w") == P("y*w - x^2", ctx)
    assert P("y^2 - x^3", ctx).homogenize("b", "w") == P("y^2*w - x^3", ctx)
    h = P("x*y + y^2", ctx)
    assert h.homogenize("b", "w") == h
    with pytest.raises(InputError):
        P("w*x", ctx).homogenize("b", "w")


HCTX = VariableContext(["x", "y", "z", "w"], {"a": ["x", "y", "w"], "b": ["z"]})
hpolys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2), st.just(0)),
                         coeffs, max_size=5).map(lambda d: Polynomial(HCTX, d))


@given(hpolys)
def test_homogenize_roundtrip(f):
    h = f.homogenize("a", "w")
    assert h.is_homogeneous(HCTX.indices(["x", "y", "w"]))
    assert h.specialize({"w": 1}) == f


def test_evaluation():
    ctx, x, y = poly_ring("x,y")
    assert (y - x ** 2).evaluate([2, 4]) == 0
    assert x.evaluate_complex([3 + 4j, 0]) == 3 + 4j
    assert abs((x * y - 1).evaluate_complex([10, 0.1])) < 1e-15
    assert P("(1/3)*x + i*y", ctx).evaluate_complex([3, 1]) == 1 + 1j
