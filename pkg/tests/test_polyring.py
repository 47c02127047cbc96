import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kosvar.errors import (
    InhomogeneousRelation,
    NonPrimeModulus,
    ParseError,
    UnknownVariable,
)
from kosvar.polyring import GradedRing, Polynomial, PrimeField, make_graded_ring


def test_make_graded_ring_polynomial():
    q = make_graded_ring(32003, ["x", "y"], [1, 1], [])
    assert q.prime == 32003
    assert q.variables == ("x", "y")
    assert q.relations == ()


def test_make_graded_ring_quotient():
    r = make_graded_ring(2, ["x"], [1], ["x^2"])
    assert len(r.relations) == 1
    assert r.relations[0].terms == {(2,): 1}


def test_make_graded_ring_composite_modulus():
    with pytest.raises(NonPrimeModulus):
        make_graded_ring(6, ["x"], [1], [])


def test_inhomogeneous_relation_names_offender():
    with pytest.raises(InhomogeneousRelation) as exc:
        make_graded_ring(32003, ["x", "y"], [1, 1], ["x^2+y"])
    assert "x^2+y" in str(exc.value)


def test_field_axioms():
    f = PrimeField(32003)
    for a in [1, 2, 17, 32002, 12345]:
        assert f.mul(a, f.inv(a)) == 1
    assert f.add(32002, 1) == 0
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@given(st.integers(1, 32002), st.integers(1, 32002))
@settings(max_examples=50, deadline=None)
def test_field_inverse_property(a, b):
    f = PrimeField(32003)
    assert f.mul(f.mul(a, b), f.mul(f.inv(a), f.inv(b))) == 1


def test_polynomial_arithmetic():
    p = 32003
    q = make_graded_ring(p, ["x", "y"], [1, 1], [])
    x = q.variable(0)
    y = q.variable(1)
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert (f - f).is_zero()
    assert q.is_homogeneous(f)
    assert q.degree(f) == 2
    assert not q.is_homogeneous(f + q.one())


def test_degrevlex_order():
    q = make_graded_ring(32003, ["x", "y", "z"], [1, 1, 1], [])
    # classic: x*y^3 > x^2*y*z in degrevlex
    a = (2, 1, 1)
    b = (1, 3, 0)
    assert q.order_key(b) > q.order_key(a)
    # degree dominates
    assert q.order_key((3, 0, 0)) > q.order_key((2, 0, 0))


def test_weighted_degrees():
    a = make_graded_ring(32003, ["chi1", "chi2"], [2, 2], [])
    assert a.wdeg((1, 1)) == 4
    assert a.monomials_of_degree(3) == []
    assert len(a.monomials_of_degree(4)) == 3


def test_format_and_parse_round_trip():
    q = make_graded_ring(32003, ["x", "y"], [1, 1], [])
    f = q.parse_polynomial("3*x^2*y+x*y+31999")
    assert q.format_polynomial(f) == "3*x^2*y+x*y+31999"
    g = q.parse_polynomial(q.format_polynomial(f))
    assert f == g


def test_parse_minus_and_implicit_one():
    q = make_graded_ring(32003, ["x", "y"], [1, 1], [])
    f = q.parse_polynomial("x^2-y^2")
    assert f.terms == {(2, 0): 1, (0, 2): 32002}
    assert q.format_polynomial(f) == "x^2+32002*y^2"


def test_parse_unknown_variable_position():
    q = make_graded_ring(32003, ["x", "y"], [1, 1], [])
    with pytest.raises(UnknownVariable) as exc:
        q.parse_polynomial("x*z")
    assert "z" in str(exc.value)
    assert "column 3" in str(exc.value)


def test_parse_errors():
    q = make_graded_ring(32003, ["x"], [1], [])
    for bad in ["", "x+", "x 2", "^2", "x^y"]:
        with pytest.raises(ParseError):
            q.parse_polynomial(bad)


@st.composite
def small_polys(draw):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 3), st.integers(0, 3)),
            st.integers(0, 32002),
            max_size=5,
        )
    )
    return Polynomial(32003, terms)


@given(small_polys(), small_polys())
@settings(max_examples=50, deadline=None)
def test_ring_axioms_random(f, g):
    assert f + g == g + f
    assert f * g == g * f
    assert (f - g) + g == f


@given(small_polys())
@settings(max_examples=30, deadline=None)
def test_print_parse_round_trip_random(f):
    q = make_graded_ring(32003, ["x", "y"], [1, 1], [])
    if f.is_zero():
        return
    assert q.parse_polynomial(q.format_polynomial(f)) == f
